#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cascade_ner {

/// FNV-1a 64-bit. The fixed feature hash for this build: bit-stable across
/// platforms, so feature ids and model files are reproducible everywhere.
constexpr std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string to_hex(std::uint64_t value);

}  // namespace cascade_ner
