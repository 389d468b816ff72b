#pragma once

// JSON documents and command dispatch behind the kvsp CLI.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "kvsp/covers.hpp"
#include "kvsp/varieties.hpp"

namespace kvsp {

inline constexpr int kSchemaVersion = 1;

enum class Command { Decompose, Verify, Sample, Discriminant, Covers, Orbits, Chart, ProbeFiber };

std::string command_name(Command c);

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitNumericalFailure = 2,
  kExitInvariantViolation = 3,
};

struct RunConfig {
  Command command = Command::Orbits;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int count = 1;
  std::optional<DualPoint> l;
  std::optional<DualPoint> m;
  std::optional<DualPoint> l0;
  std::optional<std::array<Complex, 3>> params;
  std::string input_path;
  std::string output_path;
};

// Throws InvalidArgument when tol <= 0, count < 1 or a required field is missing.
void validate(const RunConfig& config);

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json point_to_json(const DualPoint& p);
DualPoint point_from_json(const nlohmann::json& j);
nlohmann::json form_to_json(const CForm& f);
CForm form_from_json(const nlohmann::json& j);
nlohmann::json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const nlohmann::json& j);

// "a,b,c" with each entry either "re" or "re:im".
DualPoint parse_triple(const std::string& text);

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json document;
};

RunResult run(const RunConfig& config);

// Serialized form written by the CLI (two-space indent, trailing newline).
std::string render(const nlohmann::json& document);

}  // namespace kvsp
