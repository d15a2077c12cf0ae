#include "lbd/pattern_json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lbd/errors.hpp"

namespace lbd {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void append_f6(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out += buf;
}

void append_cell(std::string& out, const MeasurementCell& c) {
    out += "{\"x\": ";
    append_f6(out, c.x);
    out += ", \"y\": ";
    append_f6(out, c.y);
    out += ", \"r\": ";
    append_f6(out, c.r);
    out += "}";
}

MeasurementCell cell_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j.contains("r"))
        throw ParameterError("pattern cell needs x, y, r");
    return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("r").get<double>()};
}

} // namespace

std::string pattern_to_json(const Pattern& pattern) {
    std::string out;
    out.reserve(64 + pattern.pairs.size() * 128);
    out += "{\"kind\": \"";
    out += to_string(pattern.kind);
    out += "\", \"patch_side\": ";
    out += std::to_string(pattern.patch_side);
    out += ", \"seed\": ";
    out += std::to_string(pattern.seed);
    out += ", \"pairs\": [";
    for (std::size_t i = 0; i < pattern.pairs.size(); ++i) {
        if (i) out += ", ";
        out += "{\"pos\": ";
        append_cell(out, pattern.pairs[i].pos);
        out += ", \"neg\": ";
        append_cell(out, pattern.pairs[i].neg);
        out += "}";
    }
    out += "]}";
    return out;
}

Pattern pattern_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError(std::string("pattern JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw ParameterError("pattern JSON must be an object");
    Pattern pat;
    try {
        pat.kind = pattern_kind_from_string(j.at("kind").get<std::string>());
        pat.patch_side = j.at("patch_side").get<int>();
        pat.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& jp : j.at("pairs")) {
            MeasurementPair pair;
            pair.pos = cell_from_json(jp.at("pos"));
            pair.neg = cell_from_json(jp.at("neg"));
            pat.pairs.push_back(pair);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("pattern JSON malformed: ") + e.what());
    }
    finalize_pattern(pat);
    return pat;
}

void save_pattern(const Pattern& pattern, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << pattern_to_json(pattern) << "\n";
    if (!f) throw IoError("write failure: " + path);
}

Pattern load_pattern(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return pattern_from_json(ss.str());
}

} // namespace lbd
