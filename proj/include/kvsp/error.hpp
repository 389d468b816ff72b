#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kvsp {

enum class ErrorKind {
  InvalidArgument,
  DegeneratePoint,
  NotApolarPair,
  RankUnexpected,
  NotDegenerate,
  NonTransverse,
  DegenerateIntersection,
  ResidualTooLarge,
  EntryCount,
  IllConditioned,
  DegenerateFiber,
  RetriesExhausted,
  DuplicatePoints,
  IndexError,
};

std::string_view error_name(ErrorKind kind);

// Every failure the library reports carries one of the kinds above; the CLI
// writes error_name() into its JSON "error" field.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace kvsp
