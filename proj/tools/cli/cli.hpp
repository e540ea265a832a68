#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "erglab/cube/cube.hpp"
#include "erglab/systems/systems.hpp"

namespace erglab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;
inline constexpr int kExitIo = 4;

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Unset fields fall back to per-subcommand defaults.
struct RunConfig {
  std::string subcommand;
  std::optional<std::uint64_t> n_max;
  std::optional<int> k;
  std::optional<std::string> weight;
  std::vector<std::string> systems;
  std::vector<std::string> observables;
  std::optional<std::uint64_t> W;
  std::optional<std::uint64_t> residue;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<bool> plot;
  std::optional<std::string> base;
  std::vector<std::uint64_t> n_list;
  std::optional<int> s;
  std::optional<std::uint64_t> p_max;
  std::optional<std::uint64_t> p_min;
  std::optional<std::uint64_t> h_max;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> a_max;
  std::optional<double> c_abs;
  std::optional<std::string> dump;
  std::optional<std::uint64_t> threads;
  std::optional<std::string> path;       // cube: auto, direct, fft or both
  std::optional<bool> cyclic;            // gowers: cyclic U^2, FFT against the recursive formula
  std::optional<std::uint64_t> modulus;  // gowers --cyclic modulus (power of two)
};

const std::vector<std::string>& subcommands();
std::string list_components();

systems::SystemSpec parse_system(const std::string& tag);
systems::Observable parse_observable(const std::string& tag);
/// W-tricked weights need params; `residue` is the residue r itself.
cube::Weight parse_weight(const std::string& tag, std::uint64_t W, std::optional<std::uint64_t> residue);

/// Fields present in `json` overwrite those of `cfg`. Unknown keys are rejected.
void merge_json(RunConfig& cfg, const std::string& json_text);

/// Runs a validated configuration; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (flags > --config file > defaults) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erglab::cli
