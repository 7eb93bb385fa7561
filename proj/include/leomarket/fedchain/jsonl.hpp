// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leomarket/fedchain/block.hpp"
#include "leomarket/fedchain/chain.hpp"

namespace leomarket::fedchain {

/// One block as a single line of JSON: sorted keys, hex digests, no trailing newline.
std::string block_to_json_line(const Block& b);
/// Throws Errc::parse on malformed or incomplete input.
Block block_from_json_line(std::string_view line);

/// Writes one block per line, LF terminated. Throws Errc::io.
void write_jsonl(const std::filesystem::path& path, std::span<const Block> blocks);
/// Throws Errc::io or Errc::parse.
std::vector<Block> read_jsonl(const std::filesystem::path& path);

/// Parses every line, requires it to re-dump to identical bytes, then runs
/// verify_chain. Never throws for bad content; reports it in the result.
VerifyResult verify_jsonl(std::string_view contents);
VerifyResult verify_jsonl_file(const std::filesystem::path& path);

}  // namespace leomarket::fedchain
