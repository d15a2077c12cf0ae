#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lbd/pipeline.hpp"

namespace lbd {

// On-disk descriptor container, magic "LBD1". Little-endian header:
//   magic[4] version:u16 flags:u8 (bit0 = binary) reserved:u8
//   pattern_id:u64 patch_side:u32 m:u32 record_count:u32
// then per record: x:u32 y:u32 payload. Binary payloads pack M bits
// LSB-first (set bit = +1), padded to a byte boundary; real payloads are M
// little-endian doubles.
struct DescriptorSet {
    std::uint64_t pattern_id = 0;
    int patch_side = 0;
    int m = 0;
    bool binary = true;
    std::vector<PlacedDescriptor> records;
};

void save_descriptors(const DescriptorSet& set, const std::string& path);
DescriptorSet load_descriptors(const std::string& path);

// Payload packing, exposed for tests.
std::vector<std::uint8_t> pack_signs(const std::vector<std::int8_t>& signs);
std::vector<std::int8_t> unpack_signs(const std::vector<std::uint8_t>& bytes, int m);

} // namespace lbd
