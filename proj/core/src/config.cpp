#include "tweetarx/config.hpp"

#include <glob.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace tweetarx {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Removes a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

struct Value {
  enum class Kind { string, integer, boolean, date, string_array, int_array } kind;
  std::string string_value;
  std::int64_t int_value = 0;
  bool bool_value = false;
  Date date_value{};
  std::vector<std::string> strings;
  std::vector<std::int64_t> ints;
};

Value parse_value(const std::string& raw, std::size_t lineno) {
  auto fail = [lineno](const std::string& what) -> Value {
    throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
  };
  Value v;
  if (raw.empty()) return fail("missing value");
  if (raw.front() == '"') {
    if (raw.size() < 2 || raw.back() != '"') return fail("unterminated string");
    v.kind = Value::Kind::string;
    v.string_value = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true" || raw == "false") {
    v.kind = Value::Kind::boolean;
    v.bool_value = raw == "true";
    return v;
  }
  if (raw.front() == '[') {
    if (raw.back() != ']') return fail("unterminated array");
    std::string body = raw.substr(1, raw.size() - 2);
    std::vector<std::string> items;
    std::string current;
    bool in_string = false;
    for (char c : body) {
      if (c == '"') in_string = !in_string;
      if (c == ',' && !in_string) {
        items.push_back(trim(current));
        current.clear();
      } else {
        current += c;
      }
    }
    if (!trim(current).empty()) items.push_back(trim(current));
    bool all_strings = !items.empty();
    for (const std::string& item : items) {
      if (item.empty() || item.front() != '"') all_strings = false;
    }
    if (all_strings || items.empty()) {
      v.kind = Value::Kind::string_array;
      for (const std::string& item : items) {
        if (item.size() < 2 || item.front() != '"' || item.back() != '"')
          return fail("bad string array element: " + item);
        v.strings.push_back(item.substr(1, item.size() - 2));
      }
      return v;
    }
    v.kind = Value::Kind::int_array;
    for (const std::string& item : items) {
      try {
        std::size_t pos = 0;
        v.ints.push_back(std::stoll(item, &pos));
        if (pos != item.size()) return fail("bad integer array element: " + item);
      } catch (const std::exception&) {
        return fail("bad integer array element: " + item);
      }
    }
    return v;
  }
  if (auto date = try_parse_date(raw)) {
    v.kind = Value::Kind::date;
    v.date_value = *date;
    return v;
  }
  try {
    std::size_t pos = 0;
    v.int_value = std::stoll(raw, &pos);
    if (pos != raw.size()) return fail("bad value: " + raw);
    v.kind = Value::Kind::integer;
    return v;
  } catch (const std::exception&) {
    return fail("bad value: " + raw);
  }
}

void require(bool ok, std::size_t lineno, const std::string& what) {
  if (!ok) throw ConfigError("config line " + std::to_string(lineno) + ": " + what);
}

template <typename K, typename V>
void upsert(std::vector<std::pair<K, V>>& entries, const K& key, V value) {
  for (auto& [k, v] : entries) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries.emplace_back(key, std::move(value));
}

}  // namespace

const std::vector<int>& RunConfig::lags_for(const std::string& index) const {
  static const std::vector<int> kDefault = {1};
  for (const auto& [name, lags] : lag_sets) {
    if (name == index) return lags;
  }
  return kDefault;
}

std::string RunConfig::signal_path() const {
  if (!signal_file.empty()) return signal_file;
  return output_dir + "/daily_signal.csv";
}

RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string section;
  std::string line;
  std::size_t lineno = 0;
  bool lags_cleared = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string content = trim(strip_comment(line));
    if (content.empty()) continue;
    if (content.front() == '[') {
      require(content.back() == ']', lineno, "unterminated section header");
      section = trim(content.substr(1, content.size() - 2));
      require(section == "prices" || section == "lags", lineno,
              "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = content.find('=');
    require(eq != std::string::npos, lineno, "expected key = value");
    std::string key = trim(content.substr(0, eq));
    Value value = parse_value(trim(content.substr(eq + 1)), lineno);

    if (section == "prices") {
      require(value.kind == Value::Kind::string, lineno, "price path must be a string");
      upsert(config.price_files, key, value.string_value);
      continue;
    }
    if (section == "lags") {
      require(value.kind == Value::Kind::int_array, lineno, "lags must be an integer array");
      std::vector<int> lags;
      for (std::int64_t lag : value.ints) {
        require(lag >= 1, lineno, "lags must be >= 1");
        lags.push_back(static_cast<int>(lag));
      }
      require(std::is_sorted(lags.begin(), lags.end()) &&
                  std::adjacent_find(lags.begin(), lags.end()) == lags.end(),
              lineno, "lags must be strictly increasing");
      if (!lags_cleared) {
        config.lag_sets.clear();  // an explicit [lags] section replaces the defaults
        lags_cleared = true;
      }
      upsert(config.lag_sets, key, std::move(lags));
      continue;
    }

    if (key == "keyword") {
      require(value.kind == Value::Kind::string, lineno, "keyword must be a string");
      config.keyword = value.string_value;
    } else if (key == "match_mode") {
      require(value.kind == Value::Kind::string, lineno, "match_mode must be a string");
      config.match_mode = parse_match_mode(value.string_value);
    } else if (key == "terms") {
      require(value.kind == Value::Kind::string_array, lineno, "terms must be a string array");
      config.terms = value.strings;
    } else if (key == "tweet_files") {
      require(value.kind == Value::Kind::string_array, lineno,
              "tweet_files must be a string array");
      config.tweet_globs = value.strings;
    } else if (key == "window_start") {
      require(value.kind == Value::Kind::date, lineno, "window_start must be a date");
      config.window.start = value.date_value;
    } else if (key == "window_end") {
      require(value.kind == Value::Kind::date, lineno, "window_end must be a date");
      config.window.end = value.date_value;
    } else if (key == "regime_date") {
      require(value.kind == Value::Kind::date, lineno, "regime_date must be a date");
      config.regime_date = value.date_value;
    } else if (key == "pacf_maxlag") {
      require(value.kind == Value::Kind::integer && value.int_value >= 1, lineno,
              "pacf_maxlag must be a positive integer");
      config.pacf_maxlag = static_cast<int>(value.int_value);
    } else if (key == "seed") {
      require(value.kind == Value::Kind::integer, lineno, "seed must be an integer");
      config.seed = static_cast<std::uint64_t>(value.int_value);
    } else if (key == "output_dir") {
      require(value.kind == Value::Kind::string, lineno, "output_dir must be a string");
      config.output_dir = value.string_value;
    } else if (key == "signal_file") {
      require(value.kind == Value::Kind::string, lineno, "signal_file must be a string");
      config.signal_file = value.string_value;
    } else if (key == "workers") {
      require(value.kind == Value::Kind::integer && value.int_value >= 0, lineno,
              "workers must be a nonnegative integer");
      config.workers = static_cast<unsigned>(value.int_value);
    } else if (key == "utc_offset_minutes") {
      require(value.kind == Value::Kind::integer, lineno,
              "utc_offset_minutes must be an integer");
      config.utc_offset_minutes = static_cast<int>(value.int_value);
    } else if (key == "originals_only") {
      require(value.kind == Value::Kind::boolean, lineno, "originals_only must be a boolean");
      config.originals_only = value.bool_value;
    } else if (key == "strict") {
      require(value.kind == Value::Kind::boolean, lineno, "strict must be a boolean");
      config.strict = value.bool_value;
    } else if (key == "weekdays") {
      require(value.kind == Value::Kind::boolean, lineno, "weekdays must be a boolean");
      config.weekdays = value.bool_value;
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (config.window.end < config.window.start)
    throw ConfigError("config: window_end before window_start");
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in);
}

std::pair<std::string, std::vector<int>> parse_lags_flag(const std::string& value) {
  std::size_t eq = value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("--lags expects INDEX=1,7 (got " + value + ")");
  std::string index = value.substr(0, eq);
  std::vector<int> lags;
  std::istringstream rest(value.substr(eq + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    try {
      std::size_t pos = 0;
      int lag = std::stoi(item, &pos);
      if (pos != item.size() || lag < 1) throw std::invalid_argument(item);
      lags.push_back(lag);
    } catch (const std::exception&) {
      throw ConfigError("--lags: bad lag value " + item);
    }
  }
  if (lags.empty() || !std::is_sorted(lags.begin(), lags.end()) ||
      std::adjacent_find(lags.begin(), lags.end()) != lags.end())
    throw ConfigError("--lags: lags must be strictly increasing");
  return {std::move(index), std::move(lags)};
}

std::string canonical_config(const RunConfig& config) {
  std::ostringstream out;
  out << "keyword=" << config.keyword << '\n';
  out << "match_mode=" << to_string(config.match_mode) << '\n';
  out << "terms=";
  for (std::size_t i = 0; i < config.terms.size(); ++i)
    out << (i ? "," : "") << config.terms[i];
  out << '\n';
  out << "tweet_files=";
  for (std::size_t i = 0; i < config.tweet_globs.size(); ++i)
    out << (i ? "," : "") << config.tweet_globs[i];
  out << '\n';
  out << "window=" << format_date(config.window.start) << ".."
      << format_date(config.window.end) << '\n';
  out << "regime_date=" << format_date(config.regime_date) << '\n';
  out << "pacf_maxlag=" << config.pacf_maxlag << '\n';
  out << "seed=" << config.seed << '\n';
  out << "output_dir=" << config.output_dir << '\n';
  out << "signal_file=" << config.signal_path() << '\n';
  out << "workers=" << config.workers << '\n';
  out << "utc_offset_minutes=" << config.utc_offset_minutes << '\n';
  out << "originals_only=" << (config.originals_only ? "true" : "false") << '\n';
  out << "strict=" << (config.strict ? "true" : "false") << '\n';
  out << "weekdays=" << (config.weekdays ? "true" : "false") << '\n';
  for (const auto& [index, path] : config.price_files)
    out << "price." << index << '=' << path << '\n';
  for (const auto& [index, lags] : config.lag_sets) {
    out << "lags." << index << '=';
    for (std::size_t i = 0; i < lags.size(); ++i) out << (i ? "," : "") << lags[i];
    out << '\n';
  }
  return out.str();
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(config))));
  return buf;
}

std::vector<std::string> expand_globs(std::span<const std::string> patterns) {
  std::set<std::string> matches;
  for (const std::string& pattern : patterns) {
    glob_t results{};
    int rc = glob(pattern.c_str(), 0, nullptr, &results);
    if (rc == 0) {
      for (std::size_t i = 0; i < results.gl_pathc; ++i) matches.insert(results.gl_pathv[i]);
    } else if (rc != GLOB_NOMATCH) {
      globfree(&results);
      throw std::runtime_error("glob failed for pattern " + pattern);
    }
    globfree(&results);
  }
  return {matches.begin(), matches.end()};
}

}  // namespace tweetarx
