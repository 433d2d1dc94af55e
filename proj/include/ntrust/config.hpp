#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ntrust/driver.hpp"
#include "ntrust/noise.hpp"

namespace ntrust {

/// Thrown for any malformed, unknown, or out-of-range configuration input.
/// The message names the offending field as "section.key" where applicable.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Minimal strict INI document: "[section]" headers, "key = value" pairs,
/// '#' or ';' comments, whitespace-trimmed.  Duplicate keys are rejected.
struct IniFile {
  std::map<std::string, std::map<std::string, std::string>> sections;

  static IniFile parse_string(const std::string& text, const std::string& origin);
  static IniFile parse_file(const std::filesystem::path& path);
};

enum class StartPolicy { kProblemDefault, kBox, kExplicit };
enum class VariantSelection { kClassical, kNoisy, kBoth };

std::string to_string(StartPolicy p);
std::string to_string(VariantSelection v);

/// Comma-separated seeds; each token is an integer or an inclusive "lo..hi"
/// range. `field` names the source in error messages.
std::vector<std::uint64_t> parse_seed_list(const std::string& text, const std::string& field);
VariantSelection parse_variant_selection(const std::string& text, const std::string& field);

/// Everything needed to reproduce one experiment: the objective, how the
/// start point is chosen, the noise injection, the trust-region controls,
/// and the sweep over seeds and ratio variants.
struct ExperimentConfig {
  std::string problem_id = "quadratic8";

  StartPolicy start = StartPolicy::kProblemDefault;
  Vector explicit_start;  // used when start == kExplicit
  double box_low = -50.0;
  double box_high = 50.0;  // used when start == kBox

  NoiseSpec noise;  // seed field is the base; per-run seeds come from `seeds`
  TrustRegionConfig tr;

  std::vector<std::uint64_t> seeds = {1};
  VariantSelection variants = VariantSelection::kBoth;
  std::string out_dir = "out";
  bool plots = false;

  /// Grid of noise magnitudes for the sensitivity table (used by the rtable
  /// entry point only).  Each value serves as both a function-noise level and
  /// a gradient-noise level, giving a |grid| x |grid| table.
  std::vector<double> rtable_eps = {1e-2, 1e-1, 1.0, 1e1, 1e2};

  void validate() const;
};

/// Parses and validates a full experiment description.  Unknown sections or
/// keys are errors, so typos cannot silently fall back to defaults.
ExperimentConfig parse_experiment_config(const IniFile& ini);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Named, ready-to-run configurations covering the standard experiments.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace ntrust
