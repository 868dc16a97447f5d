#include "tweetarx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tweetarx {

bool RegressionSample::has_column(const std::string& name) const {
  return std::find(column_names.begin(), column_names.end(), name) != column_names.end();
}

const std::vector<double>& RegressionSample::column(const std::string& name) const {
  auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) throw std::out_of_range("no column named " + name);
  return columns[static_cast<std::size_t>(it - column_names.begin())];
}

void RegressionSample::add_column(std::string name, std::vector<double> values) {
  if (values.size() != y.size())
    throw std::invalid_argument("column " + name + " length mismatch");
  if (has_column(name)) throw std::invalid_argument("duplicate column " + name);
  column_names.push_back(std::move(name));
  columns.push_back(std::move(values));
}

RegressionSample build_sample(const ReturnSeries& returns, std::span<const DailySignal> signal,
                              DateRange window, Date regime_date, bool weekdays,
                              std::string response_name) {
  if (window.end < window.start) throw std::invalid_argument("window end before window start");
  if (returns.empty()) throw std::invalid_argument("empty return series");

  std::map<Date, double> shares;
  for (const DailySignal& s : signal) shares.emplace(s.date, s.share);

  RegressionSample sample;
  sample.response_name = std::move(response_name);
  sample.window = window;
  sample.regime_date = regime_date;
  std::vector<double> share_col;
  std::vector<double> regime_col;
  for (const ReturnPoint& p : returns) {
    double share = 0.0;
    if (window.contains(p.date)) {
      auto it = shares.find(p.date);
      if (it == shares.end()) {
        sample.dropped_days.push_back(p.date);
        continue;
      }
      share = it->second;
    }
    sample.dates.push_back(p.date);
    sample.y.push_back(p.log_return);
    share_col.push_back(share);
    regime_col.push_back(p.date >= regime_date ? 1.0 : 0.0);
  }
  sample.column_names = {"share", "regime"};
  sample.columns = {std::move(share_col), std::move(regime_col)};
  if (weekdays) add_weekday_columns(sample);
  return sample;
}

void add_weekday_columns(RegressionSample& sample) {
  static const std::pair<const char*, std::chrono::weekday> kDays[] = {
      {"mon", std::chrono::Monday},
      {"tue", std::chrono::Tuesday},
      {"wed", std::chrono::Wednesday},
      {"thu", std::chrono::Thursday},
  };
  for (const auto& [name, day] : kDays) {
    std::vector<double> col(sample.rows(), 0.0);
    for (std::size_t i = 0; i < sample.rows(); ++i) {
      if (weekday_of(sample.dates[i]) == day) col[i] = 1.0;
    }
    sample.add_column(name, std::move(col));
  }
}

VariableStats describe_vector(std::string name, std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("describe: empty vector");
  if (values.size() == 1)
    throw std::invalid_argument("describe: standard deviation undefined for n = 1");
  VariableStats stats;
  stats.name = std::move(name);
  stats.count = values.size();
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -std::numeric_limits<double>::infinity();
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t n = 0;
  for (double v : values) {
    ++n;
    double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
    stats.min = std::min(stats.min, v);
    stats.max = std::max(stats.max, v);
  }
  stats.mean = mean;
  stats.std_dev = std::sqrt(m2 / static_cast<double>(n - 1));
  return stats;
}

DescriptiveStats describe(const RegressionSample& sample) {
  if (sample.rows() == 0) throw std::invalid_argument("describe: empty sample");
  DescriptiveStats stats;
  stats.push_back(describe_vector(sample.response_name, sample.y));
  for (std::size_t c = 0; c < sample.columns.size(); ++c) {
    stats.push_back(describe_vector(sample.column_names[c], sample.columns[c]));
  }
  return stats;
}

std::string format_stats_table(const DescriptiveStats& stats) {
  std::size_t name_width = 8;
  for (const VariableStats& s : stats) name_width = std::max(name_width, s.name.size());
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-*s %10s %12s %12s %12s %12s\n",
                static_cast<int>(name_width), "Variable", "Obs", "Mean", "Std. Dev.", "Min",
                "Max");
  out << buf;
  for (const VariableStats& s : stats) {
    std::snprintf(buf, sizeof(buf), "%-*s %10zu %12.7f %12.7f %12.7f %12.7f\n",
                  static_cast<int>(name_width), s.name.c_str(), s.count, s.mean, s.std_dev, s.min,
                  s.max);
    out << buf;
  }
  return out.str();
}

void emit_figure_data(std::ostream& out, const RegressionSample& sample) {
  out << "date,log_return,share\n";
  const std::vector<double>& share = sample.column("share");
  char buf[96];
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", sample.y[i], share[i]);
    out << format_date(sample.dates[i]) << ',' << buf << '\n';
  }
}

void write_sample_csv(std::ostream& out, const RegressionSample& sample) {
  out << "date," << sample.response_name;
  for (const std::string& name : sample.column_names) out << ',' << name;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    out << format_date(sample.dates[i]);
    std::snprintf(buf, sizeof(buf), "%.17g", sample.y[i]);
    out << ',' << buf;
    for (const std::vector<double>& col : sample.columns) {
      std::snprintf(buf, sizeof(buf), "%.17g", col[i]);
      out << ',' << buf;
    }
    out << '\n';
  }
}

RegressionSample read_sample_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sample CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) header.push_back(f);
  }
  if (header.size() < 2 || header[0] != "date")
    throw std::runtime_error("unexpected sample header: " + line);

  RegressionSample sample;
  sample.response_name = header[1];
  sample.column_names.assign(header.begin() + 2, header.end());
  sample.columns.assign(sample.column_names.size(), {});

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string f;
    if (!std::getline(fields, f, ','))
      throw std::runtime_error("bad sample row at line " + std::to_string(lineno));
    sample.dates.push_back(parse_date(f));
    if (!std::getline(fields, f, ','))
      throw std::runtime_error("bad sample row at line " + std::to_string(lineno));
    sample.y.push_back(std::stod(f));
    for (std::vector<double>& col : sample.columns) {
      if (!std::getline(fields, f, ','))
        throw std::runtime_error("bad sample row at line " + std::to_string(lineno));
      col.push_back(std::stod(f));
    }
  }
  return sample;
}

std::string sample_metadata_json(const RegressionSample& sample) {
  nlohmann::json j;
  j["response"] = sample.response_name;
  j["rows"] = sample.rows();
  j["columns"] = sample.column_names;
  j["window"] = {{"start", format_date(sample.window.start)},
                 {"end", format_date(sample.window.end)}};
  j["regime_date"] = format_date(sample.regime_date);
  nlohmann::json dropped = nlohmann::json::array();
  for (Date d : sample.dropped_days) dropped.push_back(format_date(d));
  j["dropped_days"] = std::move(dropped);
  return j.dump(2) + "\n";
}

}  // namespace tweetarx
