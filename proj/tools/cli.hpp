#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cuc/ast.hpp"
#include "cuc/op.hpp"

namespace cuc::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,   // I/O, parse, validation, evaluation or usage errors
  kNotExhaustive = 3,
};

struct RunConfig {
  std::string program_path;
  /// Per-variable value lists; the initial set is their cross product.
  std::vector<std::pair<std::string, std::vector<Value>>> store;
  std::optional<Label> pc;
  Bounds bounds;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

/// One Config per combination of the listed values, with the empty trace.
StateSet initial_states(const std::vector<std::pair<std::string, std::vector<Value>>>& store,
                        Label pc);

/// Parses `name=v1,v2,...` as given to --store.
std::pair<std::string, std::vector<Value>> parse_store_binding(const std::string& text);

/// Entry point of the `cuc` tool; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cuc::cli
