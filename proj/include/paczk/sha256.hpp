#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace paczk {

using Digest256 = std::array<std::uint8_t, 32>;

Digest256 sha256(std::span<const std::uint8_t> data);

// Number of 64-byte compression blocks SHA-256 consumes for a message of
// `len` bytes (includes the mandatory 0x80/length padding block).
inline std::uint64_t sha256_block_count(std::size_t len) { return (len + 9 + 63) / 64; }

std::string hex_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> hex_decode(std::string_view hex);  // throws DataError

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(std::string_view text);  // throws DataError

}  // namespace paczk
