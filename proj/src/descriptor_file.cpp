#include "lbd/descriptor_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "lbd/errors.hpp"

namespace lbd {

namespace {

constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    static_assert(sizeof(double) == 8 && std::endian::native == std::endian::little);
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

struct Reader {
    std::ifstream f;
    std::string path;

    void read(void* dst, std::size_t n) {
        f.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
        if (f.gcount() != static_cast<std::streamsize>(n))
            throw IoError("truncated descriptor file: " + path);
    }
    std::uint16_t u16() {
        std::uint8_t b[2];
        read(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        std::uint8_t b[4];
        read(b, 4);
        return b[0] | (b[1] << 8) | (std::uint32_t{b[2]} << 16) | (std::uint32_t{b[3]} << 24);
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        std::uint8_t b[8];
        read(b, 8);
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    double f64() {
        char b[8];
        read(b, 8);
        double v;
        std::memcpy(&v, b, 8);
        return v;
    }
};

} // namespace

std::vector<std::uint8_t> pack_signs(const std::vector<std::int8_t>& signs) {
    std::vector<std::uint8_t> out((signs.size() + 7) / 8, 0);
    for (std::size_t j = 0; j < signs.size(); ++j)
        if (signs[j] > 0) out[j / 8] |= static_cast<std::uint8_t>(1u << (j % 8));
    return out;
}

std::vector<std::int8_t> unpack_signs(const std::vector<std::uint8_t>& bytes, int m) {
    if (bytes.size() != static_cast<std::size_t>((m + 7) / 8))
        throw ShapeError("packed payload has wrong size");
    std::vector<std::int8_t> out(m);
    for (int j = 0; j < m; ++j)
        out[j] = (bytes[j / 8] >> (j % 8)) & 1 ? 1 : -1;
    return out;
}

void save_descriptors(const DescriptorSet& set, const std::string& path) {
    if (set.patch_side < 1 || set.m < 1) throw ParameterError("descriptor set has empty geometry");
    std::string out;
    out += "LBD1";
    put_u16(out, kVersion);
    out.push_back(static_cast<char>(set.binary ? 1 : 0));
    out.push_back(0);
    put_u64(out, set.pattern_id);
    put_u32(out, static_cast<std::uint32_t>(set.patch_side));
    put_u32(out, static_cast<std::uint32_t>(set.m));
    put_u32(out, static_cast<std::uint32_t>(set.records.size()));
    for (const auto& rec : set.records) {
        const auto& d = rec.descriptor;
        if (d.binary != set.binary || d.size() != set.m || d.pattern_id != set.pattern_id)
            throw MismatchError("record does not match descriptor set header");
        put_u32(out, rec.x);
        put_u32(out, rec.y);
        if (set.binary) {
            const auto packed = pack_signs(d.signs);
            out.append(reinterpret_cast<const char*>(packed.data()), packed.size());
        } else {
            for (double v : d.values) put_f64(out, v);
        }
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failure: " + path);
}

DescriptorSet load_descriptors(const std::string& path) {
    Reader r;
    r.path = path;
    r.f.open(path, std::ios::binary);
    if (!r.f) throw IoError("cannot open: " + path);

    char magic[4];
    r.read(magic, 4);
    if (std::memcmp(magic, "LBD1", 4) != 0) throw MismatchError("bad descriptor file magic: " + path);
    const std::uint16_t version = r.u16();
    if (version != kVersion) throw MismatchError("unsupported descriptor file version: " + path);
    std::uint8_t flags, reserved;
    r.read(&flags, 1);
    r.read(&reserved, 1);

    DescriptorSet set;
    set.binary = flags & 1;
    set.pattern_id = r.u64();
    set.patch_side = static_cast<int>(r.u32());
    set.m = static_cast<int>(r.u32());
    const std::uint32_t count = r.u32();
    if (set.patch_side < 1 || set.m < 1) throw MismatchError("corrupt descriptor file header: " + path);

    set.records.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        PlacedDescriptor rec;
        rec.x = r.u32();
        rec.y = r.u32();
        rec.descriptor.pattern_id = set.pattern_id;
        rec.descriptor.binary = set.binary;
        if (set.binary) {
            std::vector<std::uint8_t> packed((set.m + 7) / 8);
            r.read(packed.data(), packed.size());
            rec.descriptor.signs = unpack_signs(packed, set.m);
        } else {
            rec.descriptor.values.resize(set.m);
            for (int j = 0; j < set.m; ++j) rec.descriptor.values[j] = r.f64();
        }
        set.records.push_back(std::move(rec));
    }
    return set;
}

} // namespace lbd
