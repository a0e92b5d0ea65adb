#include "itlinq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "itlinq/version.hpp"

namespace itlinq {

namespace {

// %.10g keeps CSVs compact while exceeding the tolerance of every
// downstream comparison in the test suite.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for write: " + tmp);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw IoError("rename failed: " + path);
  }
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::string out = "experiment,n,scheme,statistic,value,stderr\n";
  for (const auto& r : rows) {
    out += r.experiment;
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += r.scheme;
    out += ',';
    out += r.statistic;
    out += ',';
    out += fmt(r.value);
    out += ',';
    out += fmt(r.stderr_);
    out += '\n';
  }
  return out;
}

std::string rates_csv(const std::vector<RateRow>& rows) {
  std::string out = "trial,scheme,link,active,sinr_db,rate_bits_s_hz\n";
  for (const auto& r : rows) {
    out += std::to_string(r.trial);
    out += ',';
    out += r.scheme;
    out += ',';
    out += std::to_string(r.link);
    out += ',';
    out += r.active ? '1' : '0';
    out += ',';
    out += fmt(r.sinr_db);
    out += ',';
    out += fmt(r.rate_bits_s_hz);
    out += '\n';
  }
  return out;
}

std::string cdf_csv(const CdfSeries& series) {
  std::string out = "value,fraction\n";
  for (const auto& [value, fraction] : series.points) {
    out += fmt(value);
    out += ',';
    out += fmt(fraction);
    out += '\n';
  }
  return out;
}

std::string gain_table_csv(const GainTable& table) {
  std::string out;
  for (int i = 0; i < table.n; ++i) {
    for (int j = 0; j < table.n; ++j) {
      if (j) out += ',';
      out += fmt(table.at(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json summary_json(const nlohmann::json& canonical_config,
                            const std::string& hash,
                            const ExperimentResult& result) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"experiment", r.experiment},
                    {"n", r.n},
                    {"scheme", r.scheme},
                    {"statistic", r.statistic},
                    {"value", r.value},
                    {"stderr", r.stderr_}});
  }
  return nlohmann::json{{"config_hash", hash},
                        {"git_rev", kGitRev},
                        {"config", canonical_config},
                        {"rows", rows}};
}

}  // namespace itlinq
