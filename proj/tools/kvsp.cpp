// kvsp: command-line front end. Every command prints one JSON document.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kvsp/reports.hpp"

namespace {

struct Flags {
  std::string l, m, l0, params;
};

void add_common(CLI::App* sub, kvsp::RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "Random seed (all randomness derives from it)");
  sub->add_option("--tol", cfg.tol, "Numerical tolerance");
  sub->add_option("--out", cfg.output_path, "Write JSON here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Apolarity, decompositions and symplectic data for the Klein quartic"};
  app.require_subcommand(1);
  kvsp::RunConfig cfg;
  Flags flags;

  auto* decompose = app.add_subcommand("decompose", "Reconstruct a decomposition from an apolar pair");
  decompose->add_option("--L", flags.l, "First linear form a,b,c (entries re or re:im)")->required();
  decompose->add_option("--M", flags.m, "Second linear form a,b,c")->required();
  add_common(decompose, cfg);

  auto* verify = app.add_subcommand("verify", "Re-check a decomposition JSON file");
  verify->add_option("--in", cfg.input_path, "Decomposition JSON")->required();
  add_common(verify, cfg);

  auto* sample = app.add_subcommand("sample", "Sample points of P2 and P3");
  sample->add_option("--count", cfg.count, "Number of samples");
  add_common(sample, cfg);

  auto* disc = app.add_subcommand("discriminant", "Discriminant sextic of the conic bundle");
  add_common(disc, cfg);

  auto* covers = app.add_subcommand("covers", "Cover-degree table");
  add_common(covers, cfg);

  auto* orbits = app.add_subcommand("orbits", "Sp4(F2) orbit and stabilizer report");
  add_common(orbits, cfg);

  auto* chart = app.add_subcommand("chart", "Unirational chart of VSP_6");
  chart->add_option("--params", flags.params, "p1,p2,p3 (entries re or re:im)")->required();
  add_common(chart, cfg);

  auto* probe = app.add_subcommand("probe-fiber", "Smoothness probe of a g3 fiber");
  probe->add_option("--L0", flags.l0, "Base point a,b,c")->required();
  probe->add_option("--count", cfg.count, "Number of fiber points");
  add_common(probe, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kvsp::kExitInputError;
  }

  const std::pair<CLI::App*, kvsp::Command> table[] = {
      {decompose, kvsp::Command::Decompose}, {verify, kvsp::Command::Verify},
      {sample, kvsp::Command::Sample},       {disc, kvsp::Command::Discriminant},
      {covers, kvsp::Command::Covers},       {orbits, kvsp::Command::Orbits},
      {chart, kvsp::Command::Chart},         {probe, kvsp::Command::ProbeFiber}};
  for (const auto& [sub, command] : table)
    if (sub->parsed()) cfg.command = command;

  kvsp::RunResult result;
  try {
    if (!flags.l.empty()) cfg.l = kvsp::parse_triple(flags.l);
    if (!flags.m.empty()) cfg.m = kvsp::parse_triple(flags.m);
    if (!flags.l0.empty()) cfg.l0 = kvsp::parse_triple(flags.l0);
    if (!flags.params.empty()) cfg.params = kvsp::parse_triple(flags.params);
    result = kvsp::run(cfg);
  } catch (const kvsp::Error& e) {
    result.exit_code = kvsp::kExitInputError;
    result.document = {{"schema_version", kvsp::kSchemaVersion},
                       {"command", kvsp::command_name(cfg.command)},
                       {"error", std::string(e.name())},
                       {"message", e.what()}};
  }

  const std::string text = kvsp::render(result.document);
  if (cfg.output_path.empty()) {
    std::cout << text;
  } else {
    std::filesystem::path out(cfg.output_path);
    if (const char* dir = std::getenv("KVSP_OUTPUT_DIR"); dir && out.is_relative()) out = std::filesystem::path(dir) / out;
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write " << out << "\n";
      return kvsp::kExitInputError;
    }
    f << text;
  }
  return result.exit_code;
}
