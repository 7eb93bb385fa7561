// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include <fmt/format.h>

#include "leomarket/error.hpp"

namespace leomarket::harness {

namespace {

constexpr std::string_view kAgentHeader = "iteration,agent_id,reward,price,revenue,rep";
constexpr std::string_view kAggregateHeader =
    "iteration,mean_reward,mean_price,mean_revenue,min_revenue,max_revenue";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string());
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class T>
T parse_field(std::string_view s) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::parse, "bad CSV field '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, std::size_t expected) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected) throw Error(Errc::parse, "wrong CSV column count");
  return out;
}

// Header-checked LF lines after the header.
std::vector<std::string_view> body_lines(std::string_view text, std::string_view header) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) throw Error(Errc::parse, "CSV not LF terminated");
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty() || lines.front() != header) throw Error(Errc::parse, "unexpected CSV header");
  lines.erase(lines.begin());
  return lines;
}

}  // namespace

AggregateRow MetricsRecord::aggregate() const {
  AggregateRow row;
  row.iteration = iteration;
  if (agents.empty()) return row;
  row.min_revenue = agents.front().revenue;
  row.max_revenue = agents.front().revenue;
  for (const auto& a : agents) {
    row.mean_reward += a.reward;
    row.mean_price += a.price;
    row.mean_revenue += a.revenue;
    row.min_revenue = std::min(row.min_revenue, a.revenue);
    row.max_revenue = std::max(row.max_revenue, a.revenue);
  }
  const double n = static_cast<double>(agents.size());
  row.mean_reward /= n;
  row.mean_price /= n;
  row.mean_revenue /= n;
  // Rounding in the mean must not push it outside the envelope.
  row.mean_revenue = std::clamp(row.mean_revenue, row.min_revenue, row.max_revenue);
  return row;
}

std::vector<AggregateRow> aggregate(std::span<const MetricsRecord> series) {
  std::vector<AggregateRow> rows;
  rows.reserve(series.size());
  for (const auto& r : series) rows.push_back(r.aggregate());
  return rows;
}

std::vector<AggregateRow> mean_rows(std::span<const std::vector<AggregateRow>> runs) {
  if (runs.empty()) return {};
  const std::size_t len = runs.front().size();
  for (const auto& r : runs) {
    if (r.size() != len) throw std::invalid_argument("aggregate series differ in length");
  }
  std::vector<AggregateRow> out(len);
  const double n = static_cast<double>(runs.size());
  for (std::size_t i = 0; i < len; ++i) {
    AggregateRow& o = out[i];
    o.iteration = runs.front()[i].iteration;
    for (const auto& r : runs) {
      o.mean_reward += r[i].mean_reward / n;
      o.mean_price += r[i].mean_price / n;
      o.mean_revenue += r[i].mean_revenue / n;
      o.min_revenue += r[i].min_revenue / n;
      o.max_revenue += r[i].max_revenue / n;
    }
  }
  return out;
}

void write_agent_csv(const std::filesystem::path& path, std::span<const MetricsRecord> series) {
  auto out = open_out(path);
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kAgentHeader);
  for (const auto& r : series) {
    for (const auto& a : r.agents) {
      fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{}\n", r.iteration, a.agent_id,
                     a.reward, a.price, a.revenue, a.rep);
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

Series read_agent_csv(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  Series series;
  for (auto line : body_lines(text, kAgentHeader)) {
    const auto f = split(line, 6);
    const auto iteration = parse_field<std::int64_t>(f[0]);
    if (series.empty() || series.back().iteration != iteration) {
      series.push_back({iteration, {}});
    }
    series.back().agents.push_back({parse_field<int>(f[1]), parse_field<double>(f[2]),
                                    parse_field<double>(f[3]), parse_field<double>(f[4]),
                                    parse_field<double>(f[5])});
  }
  return series;
}

void write_aggregate_csv(const std::filesystem::path& path, std::span<const AggregateRow> rows) {
  auto out = open_out(path);
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "{}\n", kAggregateHeader);
  for (const auto& r : rows) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{}\n", r.iteration, r.mean_reward,
                   r.mean_price, r.mean_revenue, r.min_revenue, r.max_revenue);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path) {
  const std::string text = slurp(path);
  std::vector<AggregateRow> rows;
  for (auto line : body_lines(text, kAggregateHeader)) {
    const auto f = split(line, 6);
    rows.push_back({parse_field<std::int64_t>(f[0]), parse_field<double>(f[1]),
                    parse_field<double>(f[2]), parse_field<double>(f[3]),
                    parse_field<double>(f[4]), parse_field<double>(f[5])});
  }
  return rows;
}

}  // namespace leomarket::harness
