#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsavoid/scenario_io.hpp"

namespace dsavoid::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kRuntimeError = 3,
};

struct Invocation {
  std::string command;
  std::optional<std::filesystem::path> scenario;
  std::filesystem::path out = ".";
  std::vector<Override> overrides;
  std::uint64_t seed = 1;
};

/// Parses argv and dispatches. Never throws; every failure maps to an exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_simulate(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_sweep(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_verify(const Invocation& inv, std::ostream& out, std::ostream& err);
int cmd_demo(const Invocation& inv, std::ostream& out, std::ostream& err);

/// `<stem>_<index>_<sign>.csv`, the per-start trajectory file name.
std::string trajectory_filename(const std::string& stem, std::size_t index, SignPref sign);

}  // namespace dsavoid::cli
