#pragma once

#include <cstdint>
#include <string>

#include "lbd/sensing.hpp"

namespace lbd {

// FNV-1a over the bytes of a string, 64-bit variant.
std::uint64_t fnv1a64(const std::string& bytes);

// Canonical JSON form of a pattern. Fixed key order, no whitespace except a
// single space after ':' and ',', every coordinate printed with exactly six
// decimals. The pattern id is FNV-1a of this string, so any reformatting
// would silently change identities; keep the writer byte-stable.
std::string pattern_to_json(const Pattern& pattern);

// Parses a pattern from JSON (any formatting). Coordinates are re-quantized
// and the id is recomputed, so a hand-edited file gets a consistent id.
Pattern pattern_from_json(const std::string& text);

void save_pattern(const Pattern& pattern, const std::string& path);
Pattern load_pattern(const std::string& path);

} // namespace lbd
