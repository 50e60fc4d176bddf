#pragma once

#include "bmir/io.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bmir {

struct ModelSpec {
  IntMatrix matrix;
  std::vector<Rational> omega;
  std::vector<unsigned> base;
  std::vector<std::string> lambda;
  std::vector<unsigned> alpha;  // 0-based
  BlowupMode mode = BlowupMode::None;
  std::vector<std::string> L;
  std::optional<std::vector<unsigned>> im_caps;
};

struct HtSpec {
  std::vector<unsigned> base;
  std::vector<std::string> L;
  std::vector<long> Dmax;
  long step = 1;
  PoleSource source = PoleSource::C;
  std::optional<std::vector<unsigned>> im_caps;
};

struct BlowupSpec {
  IntMatrix matrix;
  std::vector<Rational> omega;
  std::vector<unsigned> center;  // 0-based
  std::optional<IntMatrix> expected;
};

struct RunConfig {
  std::string name;
  std::optional<ModelSpec> model;
  std::vector<long> Dmax;
  long dmax = 1, dtmax = 1, kmax = 1;
  std::optional<HtSpec> ht;
  std::optional<std::filesystem::path> gamma_path;
  std::vector<std::string> tasks;
  bool specialize_lambda = false;
  std::vector<std::pair<unsigned, long>> ht_cases;
  long ht_case_Dmax = 8;
  PoleSource ht_case_source = PoleSource::C;
  std::vector<std::vector<unsigned>> divisor_bases;
  long divisor_Dmax = 4;
  std::optional<BlowupSpec> blowup;
  int gamma_hat_order = 3;
  std::optional<std::string> corrupt_support;  // negative control: stratum that receives an out-of-cone term
};

// Diagnostics name the offending key as a JSON path.
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

RunConfig demo_quintic_config();
RunConfig demo_blowup_matrix_config();

FibrationModel build_model(const ModelSpec& spec);

struct RunOptions {
  std::filesystem::path out_dir;
  unsigned jobs = 1;
  bool specialize_lambda = false;
};

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 a verification failed
  std::vector<std::filesystem::path> artifacts;
  std::vector<std::string> failures;
};

// Config errors surface as ConfigError, unwritable outputs as IoError.
RunResult run(const RunConfig& cfg, const RunOptions& opts, std::ostream& table);

}  // namespace bmir
