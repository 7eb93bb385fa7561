// SPDX-License-Identifier: Apache-2.0
#include "leomarket/fedchain/jsonl.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"
#include "leomarket/error.hpp"

namespace leomarket::fedchain {

using nlohmann::json;

namespace {

constexpr const char* kFormatKey = "format";

json to_json(const Block& b) {
  json j;
  j[kFormatKey] = kBlockFormat;
  j["height"] = b.height;
  j["prev_digest"] = to_hex(b.prev_digest);
  j["round"] = b.round;
  j["aggregator"] = b.aggregator;
  j["reputation_coefficient"] = b.reputation_coefficient;
  j["global_params_digest"] = to_hex(b.global_params_digest);
  j["global_params"] = {{"shape", b.global_params.shape}, {"values", b.global_params.values}};
  json updates = json::array();
  for (const auto& u : b.updates) {
    updates.push_back({{"satellite", u.satellite}, {"params_digest", to_hex(u.params_digest)}});
  }
  j["updates"] = std::move(updates);
  json snapshot = json::array();
  for (const auto& [id, tokens] : b.reputation_snapshot) {
    snapshot.push_back({{"satellite", id}, {"tokens", tokens}});
  }
  j["reputation_snapshot"] = std::move(snapshot);
  json txs = json::array();
  for (const auto& t : b.transactions) {
    txs.push_back({{"iteration", t.iteration},
                   {"satellite", t.satellite},
                   {"accepted", t.accepted},
                   {"malicious", t.malicious},
                   {"power_level", t.power_level},
                   {"revenue", t.revenue}});
  }
  j["transactions"] = std::move(txs);
  j["timestamp"] = b.timestamp;
  j["digest"] = to_hex(b.digest);
  return j;
}

const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw Error(Errc::parse, "expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::parse, std::string("missing field ") + key);
  return *it;
}

template <class T>
T get(const json& obj, const char* key) {
  const json& v = field(obj, key);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::parse, std::string("bad type for field ") + key);
  }
}

Digest get_digest(const json& obj, const char* key) {
  return digest_from_hex(get<std::string>(obj, key));
}

const json& get_array(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array()) throw Error(Errc::parse, std::string("expected array for ") + key);
  return v;
}

Block from_json(const json& j) {
  if (get<std::uint32_t>(j, kFormatKey) != kBlockFormat) {
    throw Error(Errc::parse, "unknown block format");
  }
  Block b;
  b.height = get<std::uint64_t>(j, "height");
  b.prev_digest = get_digest(j, "prev_digest");
  b.round = get<std::int64_t>(j, "round");
  b.aggregator = get<int>(j, "aggregator");
  b.reputation_coefficient = get<double>(j, "reputation_coefficient");
  b.global_params_digest = get_digest(j, "global_params_digest");
  const json& params = field(j, "global_params");
  b.global_params.shape = get<std::vector<std::uint32_t>>(params, "shape");
  b.global_params.values = get<std::vector<double>>(params, "values");
  for (const auto& u : get_array(j, "updates")) {
    b.updates.push_back({get<int>(u, "satellite"), get_digest(u, "params_digest")});
  }
  for (const auto& s : get_array(j, "reputation_snapshot")) {
    if (!b.reputation_snapshot.emplace(get<int>(s, "satellite"), get<double>(s, "tokens")).second) {
      throw Error(Errc::parse, "duplicate satellite in reputation snapshot");
    }
  }
  for (const auto& t : get_array(j, "transactions")) {
    TransactionRecord r;
    r.iteration = get<std::int64_t>(t, "iteration");
    r.satellite = get<int>(t, "satellite");
    r.accepted = get<int>(t, "accepted");
    r.malicious = get<int>(t, "malicious");
    r.power_level = get<int>(t, "power_level");
    r.revenue = get<double>(t, "revenue");
    b.transactions.push_back(r);
  }
  b.timestamp = get<std::int64_t>(j, "timestamp");
  b.digest = get_digest(j, "digest");
  return b;
}

}  // namespace

std::string block_to_json_line(const Block& b) { return to_json(b).dump(); }

Block block_from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line.begin(), line.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, e.what());
  }
  return from_json(j);
}

void write_jsonl(const std::filesystem::path& path, std::span<const Block> blocks) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path.string());
  for (const auto& b : blocks) out << block_to_json_line(b) << '\n';
  if (!out) throw Error(Errc::io, "write failed for " + path.string());
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string_view> split_lines(std::string_view contents) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < contents.size()) {
    const std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) {
      throw Error(Errc::parse, "last line is not LF terminated");
    }
    lines.push_back(contents.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

std::vector<Block> read_jsonl(const std::filesystem::path& path) {
  const std::string contents = slurp(path);
  std::vector<Block> blocks;
  for (auto line : split_lines(contents)) blocks.push_back(block_from_json_line(line));
  return blocks;
}

VerifyResult verify_jsonl(std::string_view contents) {
  std::vector<std::string_view> lines;
  try {
    lines = split_lines(contents);
  } catch (const Error& e) {
    return VerifyResult::failure(0, e.what());
  }
  std::vector<Block> blocks;
  blocks.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      blocks.push_back(block_from_json_line(lines[i]));
    } catch (const Error& e) {
      return VerifyResult::failure(i, e.what());
    }
    if (block_to_json_line(blocks.back()) != lines[i]) {
      return VerifyResult::failure(i, "line is not in canonical form");
    }
  }
  return verify_chain(blocks);
}

VerifyResult verify_jsonl_file(const std::filesystem::path& path) {
  std::string contents;
  try {
    contents = slurp(path);
  } catch (const Error& e) {
    return VerifyResult::failure(0, e.what());
  }
  return verify_jsonl(contents);
}

}  // namespace leomarket::fedchain
