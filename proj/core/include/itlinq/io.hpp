#pragma once

#include <string>

#include <json.hpp>

#include "itlinq/harness.hpp"

namespace itlinq {

// Raised for filesystem failures (unreadable input, failed write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);

// Write-to-temp then rename, so readers never observe a truncated file.
void write_file_atomic(const std::string& path, const std::string& content);

// Column contract: experiment,n,scheme,statistic,value,stderr.
std::string results_csv(const std::vector<ResultRow>& rows);

// Column contract: trial,scheme,link,active,sinr_db,rate_bits_s_hz.
std::string rates_csv(const std::vector<RateRow>& rows);

// Column contract: value,fraction.
std::string cdf_csv(const CdfSeries& series);

// Debug dump of a gain table; row = destination, column = source.
std::string gain_table_csv(const GainTable& table);

// {config_hash, git_rev, config, rows}.
nlohmann::json summary_json(const nlohmann::json& canonical_config,
                            const std::string& hash,
                            const ExperimentResult& result);

}  // namespace itlinq
