#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tweetarx/config.hpp"
#include "tweetarx/synth.hpp"

namespace tweetarx {

class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& message);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Each command writes its artifacts under config.output_dir and returns the
/// paths written. Failures throw StageError tagged with the stage name.
std::vector<std::string> cmd_ingest_tweets(const RunConfig& config);
std::vector<std::string> cmd_ingest_prices(const RunConfig& config);
std::vector<std::string> cmd_build(const RunConfig& config);
std::vector<std::string> cmd_fit(const RunConfig& config);
std::vector<std::string> cmd_robustness(const RunConfig& config);
std::vector<std::string> cmd_report(const RunConfig& config);
std::vector<std::string> cmd_synth(const RunConfig& config);

/// Baseline synthetic truth for `index` (DJIA, SP500, or NASDAQ): AR-X
/// coefficients at the scale of the baseline table2 report, over the
/// ten-year trading calendar, seeded from the config.
GeneratorSpec default_synth_spec(const RunConfig& config, const std::string& index);

}  // namespace tweetarx
