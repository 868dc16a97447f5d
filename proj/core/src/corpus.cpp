#include "tweetarx/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace tweetarx {

namespace {

using nlohmann::json;

bool is_token_char(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

bool parse_record(const std::string& line, TweetRecord& out, std::string& error) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    error = "not a JSON object";
    return false;
  }
  auto created = j.find("created_at");
  auto text = j.find("text");
  if (created == j.end() || !created->is_string()) {
    error = "missing created_at";
    return false;
  }
  if (text == j.end() || !text->is_string()) {
    error = "missing text";
    return false;
  }
  auto ts = try_parse_timestamp(created->get_ref<const std::string&>());
  if (!ts) {
    error = "bad created_at";
    return false;
  }
  out.timestamp = *ts;
  out.text = text->get<std::string>();
  out.is_retweet = false;
  if (auto rt = j.find("is_retweet"); rt != j.end() && rt->is_boolean()) {
    out.is_retweet = rt->get<bool>();
  }
  out.user_id.clear();
  if (auto uid = j.find("user_id"); uid != j.end()) {
    if (uid->is_string()) {
      out.user_id = uid->get<std::string>();
    } else if (uid->is_number_integer()) {
      out.user_id = std::to_string(uid->get<std::int64_t>());
    }
  }
  return true;
}

}  // namespace

MatchMode parse_match_mode(std::string_view name) {
  if (name == "exact") return MatchMode::exact;
  if (name == "prefix") return MatchMode::prefix;
  if (name == "substring") return MatchMode::substring;
  throw std::invalid_argument("unknown match mode: " + std::string(name));
}

std::string_view to_string(MatchMode mode) {
  switch (mode) {
    case MatchMode::exact: return "exact";
    case MatchMode::prefix: return "prefix";
    case MatchMode::substring: return "substring";
  }
  return "exact";
}

TweetParseError::TweetParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

ParseStats parse_tweet_stream(std::istream& in, ParseMode mode,
                              const std::function<void(TweetRecord&&)>& sink) {
  ParseStats stats;
  std::string line;
  std::size_t lineno = 0;
  TweetRecord record;
  std::string error;
  while (std::getline(in, line)) {
    ++lineno;
    stats.bytes += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!parse_record(line, record, error)) {
      if (mode == ParseMode::strict) throw TweetParseError(lineno, error);
      ++stats.malformed;
      continue;
    }
    ++stats.records;
    sink(std::move(record));
  }
  return stats;
}

std::pair<std::vector<TweetRecord>, std::uint64_t> parse_tweet_records(std::istream& in,
                                                                       ParseMode mode) {
  std::vector<TweetRecord> records;
  ParseStats stats =
      parse_tweet_stream(in, mode, [&](TweetRecord&& r) { records.push_back(std::move(r)); });
  return {std::move(records), stats.malformed};
}

std::string lowercase_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace detail {

bool contains_any_lowered(std::string_view lowered, std::span<const std::string> terms) {
  for (const std::string& term : terms) {
    if (!term.empty() && lowered.find(term) != std::string_view::npos) return true;
  }
  return false;
}

std::uint64_t count_keyword_lowered(std::string_view lowered, std::string_view keyword,
                                    MatchMode mode) {
  if (keyword.empty()) return 0;
  if (mode == MatchMode::substring) {
    std::uint64_t hits = 0;
    std::size_t pos = 0;
    while ((pos = lowered.find(keyword, pos)) != std::string_view::npos) {
      ++hits;
      pos += keyword.size();
    }
    return hits;
  }
  std::uint64_t hits = 0;
  std::size_t i = 0;
  const std::size_t n = lowered.size();
  while (i < n) {
    if (!is_token_char(static_cast<unsigned char>(lowered[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < n && is_token_char(static_cast<unsigned char>(lowered[i]))) ++i;
    std::string_view token = lowered.substr(start, i - start);
    if (mode == MatchMode::exact) {
      if (token == keyword) ++hits;
    } else {
      if (token.size() >= keyword.size() && token.substr(0, keyword.size()) == keyword) ++hits;
    }
  }
  return hits;
}

}  // namespace detail

bool contains_any_term(std::string_view text, std::span<const std::string> terms) {
  return detail::contains_any_lowered(lowercase_ascii(text), terms);
}

std::vector<TweetRecord> filter_by_terms(std::vector<TweetRecord> records,
                                         std::span<const std::string> terms) {
  if (terms.empty()) return records;
  std::erase_if(records,
                [&](const TweetRecord& r) { return !contains_any_term(r.text, terms); });
  return records;
}

std::uint64_t count_keyword(std::string_view text, std::string_view keyword, MatchMode mode) {
  return detail::count_keyword_lowered(lowercase_ascii(text), keyword, mode);
}

void accumulate(DailyCounts& counts, const TweetRecord& record, const AggregateOptions& opts) {
  if (opts.originals_only && record.is_retweet) return;
  Date day = std::chrono::floor<std::chrono::days>(record.timestamp + opts.day_offset);
  auto& [mentions, tweets] = counts[day];
  mentions += count_keyword(record.text, opts.keyword, opts.mode);
  tweets += 1;
}

void merge_counts(DailyCounts& into, const DailyCounts& from) {
  for (const auto& [day, pair] : from) {
    auto& slot = into[day];
    slot.first += pair.first;
    slot.second += pair.second;
  }
}

std::vector<DailySignal> to_signals(const DailyCounts& counts) {
  std::vector<DailySignal> out;
  out.reserve(counts.size());
  for (const auto& [day, pair] : counts) {
    DailySignal s;
    s.date = day;
    s.mention_count = pair.first;
    s.tweet_count = pair.second;
    s.share = pair.second == 0 ? 0.0
                               : static_cast<double>(pair.first) / static_cast<double>(pair.second);
    out.push_back(s);
  }
  return out;
}

std::vector<DailySignal> aggregate_daily(std::span<const TweetRecord> records,
                                         const AggregateOptions& opts) {
  DailyCounts counts;
  for (const TweetRecord& r : records) accumulate(counts, r, opts);
  return to_signals(counts);
}

IngestResult ingest_files(std::span<const std::string> paths,
                          std::span<const std::string> terms, const AggregateOptions& opts,
                          ParseMode mode, unsigned workers) {
  auto t0 = std::chrono::steady_clock::now();
  if (workers == 0) workers = 1;
  workers = std::min<unsigned>(workers, std::max<std::size_t>(paths.size(), 1));

  std::vector<std::string> lowered_terms;
  lowered_terms.reserve(terms.size());
  for (const std::string& t : terms) lowered_terms.push_back(lowercase_ascii(t));
  const std::string keyword = lowercase_ascii(opts.keyword);

  std::vector<DailyCounts> partials(workers);
  std::vector<ParseStats> stats(workers);
  std::vector<std::uint64_t> kept(workers, 0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker_fn = [&](unsigned wi) {
    DailyCounts& counts = partials[wi];
    std::string lowered;
    for (;;) {
      std::size_t idx = next.fetch_add(1);
      if (idx >= paths.size()) break;
      std::ifstream in(paths[idx], std::ios::binary);
      if (!in) throw std::runtime_error("cannot open " + paths[idx]);
      ParseStats s = parse_tweet_stream(in, mode, [&](TweetRecord&& r) {
        if (opts.originals_only && r.is_retweet) return;
        lowered = lowercase_ascii(r.text);
        if (!lowered_terms.empty() && !detail::contains_any_lowered(lowered, lowered_terms))
          return;
        ++kept[wi];
        Date day = std::chrono::floor<std::chrono::days>(r.timestamp + opts.day_offset);
        auto& slot = counts[day];
        slot.first += detail::count_keyword_lowered(lowered, keyword, opts.mode);
        slot.second += 1;
      });
      stats[wi].records += s.records;
      stats[wi].malformed += s.malformed;
      stats[wi].bytes += s.bytes;
    }
  };

  if (workers == 1) {
    worker_fn(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned wi = 0; wi < workers; ++wi) {
      threads.emplace_back([&, wi] {
        try {
          worker_fn(wi);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          next.store(paths.size());  // drain the queue so peers stop
        }
      });
    }
    for (std::thread& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  DailyCounts total;
  for (const DailyCounts& p : partials) merge_counts(total, p);

  IngestResult result;
  result.signals = to_signals(total);
  result.files = paths.size();
  for (unsigned wi = 0; wi < workers; ++wi) {
    result.records += stats[wi].records;
    result.malformed += stats[wi].malformed;
    result.bytes += stats[wi].bytes;
    result.kept += kept[wi];
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

void write_daily_csv(std::ostream& out, std::span<const DailySignal> signals) {
  out << "date,mention_count,tweet_count,share\n";
  char buf[64];
  for (const DailySignal& s : signals) {
    std::snprintf(buf, sizeof(buf), "%.10g", s.share);
    out << format_date(s.date) << ',' << s.mention_count << ',' << s.tweet_count << ',' << buf
        << '\n';
  }
}

std::vector<DailySignal> read_daily_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty daily signal CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "date,mention_count,tweet_count,share")
    throw std::runtime_error("unexpected daily signal header: " + line);
  std::vector<DailySignal> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string date_s, mention_s, tweet_s, share_s;
    if (!std::getline(fields, date_s, ',') || !std::getline(fields, mention_s, ',') ||
        !std::getline(fields, tweet_s, ',') || !std::getline(fields, share_s)) {
      throw std::runtime_error("bad daily signal row at line " + std::to_string(lineno));
    }
    DailySignal s;
    s.date = parse_date(date_s);
    s.mention_count = std::stoull(mention_s);
    s.tweet_count = std::stoull(tweet_s);
    s.share = s.tweet_count == 0 ? 0.0
                                 : static_cast<double>(s.mention_count) /
                                       static_cast<double>(s.tweet_count);
    out.push_back(s);
  }
  return out;
}

}  // namespace tweetarx
