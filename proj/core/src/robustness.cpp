#include "tweetarx/robustness.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "json.hpp"

namespace tweetarx {

namespace {

RegressionSample keep_rows(const RegressionSample& sample,
                           const std::vector<std::size_t>& rows) {
  RegressionSample out;
  out.response_name = sample.response_name;
  out.window = sample.window;
  out.regime_date = sample.regime_date;
  out.dropped_days = sample.dropped_days;
  out.column_names = sample.column_names;
  out.dates.reserve(rows.size());
  out.y.reserve(rows.size());
  out.columns.assign(sample.columns.size(), {});
  for (std::size_t c = 0; c < sample.columns.size(); ++c) out.columns[c].reserve(rows.size());
  for (std::size_t i : rows) {
    out.dates.push_back(sample.dates[i]);
    out.y.push_back(sample.y[i]);
    for (std::size_t c = 0; c < sample.columns.size(); ++c)
      out.columns[c].push_back(sample.columns[c][i]);
  }
  return out;
}

bool is_constant(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [&](double v) { return v == values.front(); });
}

constexpr const char* kBaselineExog[] = {"share", "regime"};

// Fits every index concurrently; `prepare` maps an IndexData to the
// (restricted sample, spec, omitted terms) triple to estimate.
template <typename Prepare>
RobustnessReport run_spec(std::string spec_name, std::span<const IndexData> samples,
                          Prepare prepare) {
  RobustnessReport report;
  report.spec_name = std::move(spec_name);
  std::vector<std::future<IndexFit>> futures;
  futures.reserve(samples.size());
  for (const IndexData& data : samples) {
    futures.push_back(std::async(std::launch::async, [&prepare, &data] {
      IndexFit result;
      result.index = data.index;
      auto [sample, spec, omitted] = prepare(data);
      result.sample_rows = sample.rows();
      result.omitted_terms = std::move(omitted);
      result.fit = fit_arx(sample, spec);
      return result;
    }));
  }
  for (auto& f : futures) report.fits.push_back(f.get());
  return report;
}

}  // namespace

RegressionSample truncate_trailing_years(const RegressionSample& sample, int years) {
  if (years < 1) throw std::invalid_argument("truncate_trailing_years: years must be >= 1");
  if (sample.rows() == 0) return sample;
  const Date cutoff = sample.dates.back() - std::chrono::days{365 * years};
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    if (sample.dates[i] > cutoff) rows.push_back(i);
  }
  return keep_rows(sample, rows);
}

RegressionSample restrict_to_window(const RegressionSample& sample) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < sample.rows(); ++i) {
    if (sample.window.contains(sample.dates[i])) rows.push_back(i);
  }
  return keep_rows(sample, rows);
}

RobustnessReport run_weekday_spec(std::span<const IndexData> samples) {
  return run_spec("weekday", samples, [](const IndexData& data) {
    ModelSpec spec;
    spec.lag_set = data.lags;
    spec.exog_names = {"share", "regime", "mon", "tue", "wed", "thu"};
    return std::tuple{data.sample, spec, std::vector<std::string>{}};
  });
}

RobustnessReport run_window_spec(std::span<const IndexData> samples, int years) {
  if (years < 1) throw std::invalid_argument("run_window_spec: years must be >= 1");
  for (const IndexData& data : samples) {
    if (data.sample.rows() == 0) throw std::invalid_argument("run_window_spec: empty sample");
    const auto span_days =
        (data.sample.dates.back() - data.sample.dates.front()).count() + 1;
    if (span_days < static_cast<long>(365) * years)
      throw std::invalid_argument("run_window_spec: window longer than sample for " + data.index);
  }
  return run_spec("window" + std::to_string(years), samples, [years](const IndexData& data) {
    ModelSpec spec;
    spec.lag_set = data.lags;
    spec.exog_names = {kBaselineExog[0], kBaselineExog[1]};
    return std::tuple{truncate_trailing_years(data.sample, years), spec,
                      std::vector<std::string>{}};
  });
}

RobustnessReport run_nonzero_subsample(std::span<const IndexData> samples) {
  return run_spec("subsample", samples, [](const IndexData& data) {
    RegressionSample restricted = restrict_to_window(data.sample);
    if (restricted.rows() == 0)
      throw SampleSizeError("run_nonzero_subsample: no in-window observations for " + data.index);
    ModelSpec spec;
    spec.lag_set = data.lags;
    std::vector<std::string> omitted;
    for (const char* name : kBaselineExog) {
      if (restricted.has_column(name) && is_constant(restricted.column(name))) {
        omitted.emplace_back(name);
      } else {
        spec.exog_names.emplace_back(name);
      }
    }
    return std::tuple{std::move(restricted), spec, std::move(omitted)};
  });
}

std::string report_table(const RobustnessReport& report) {
  std::vector<FitResult> fits;
  std::vector<std::string> titles;
  for (const IndexFit& f : report.fits) {
    fits.push_back(f.fit);
    titles.push_back(f.index);
  }
  std::ostringstream out;
  out << fit_table(fits, titles);
  for (const IndexFit& f : report.fits) {
    if (!f.omitted_terms.empty()) {
      out << "Omitted (constant within subsample) for " << f.index << ":";
      for (const std::string& term : f.omitted_terms) out << ' ' << term_label(term);
      out << '\n';
    }
  }
  return out.str();
}

std::string report_json(const RobustnessReport& report) {
  nlohmann::json j;
  j["spec"] = report.spec_name;
  nlohmann::json fits = nlohmann::json::array();
  for (const IndexFit& f : report.fits) {
    nlohmann::json entry;
    entry["index"] = f.index;
    entry["rows"] = f.sample_rows;
    entry["omitted"] = f.omitted_terms;
    entry["fit"] = nlohmann::json::parse(fit_json(f.fit));
    fits.push_back(std::move(entry));
  }
  j["fits"] = std::move(fits);
  return j.dump(2) + "\n";
}

}  // namespace tweetarx
