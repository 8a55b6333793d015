#pragma once

// The `weakgibbs` command-line pipeline, as a library so tests can drive it
// without spawning processes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace weakgibbs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

const std::vector<std::string>& commands();

struct Options {
  std::filesystem::path config;
  std::filesystem::path out = ".";
  std::optional<int> n_max;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

/// Runs `command` and writes result.json plus CSV tables into `opts.out`.
/// Returns 0 when every check passes, 1 when a check fails (the report is
/// still written), 2 on input errors. Diagnostics go to `err`.
int run(const std::string& command, const Options& opts, std::ostream& err);

/// Maps two-word spellings ("psi verify", "map check", "certify", ...) onto
/// the hyphenated command names; leaves other argument lists unchanged.
std::vector<std::string> normalize_arguments(std::vector<std::string> args);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

}  // namespace weakgibbs::cli
