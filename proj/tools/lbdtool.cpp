// Command-line front end: pattern generation, image description, descriptor
// inversion, and metric reporting.
//
// Exit codes: 0 success, 2 parameter/usage, 3 data mismatch, 4 I/O.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "lbd/descriptor_file.hpp"
#include "lbd/errors.hpp"
#include "lbd/image_io.hpp"
#include "lbd/pattern_json.hpp"
#include "lbd/pipeline.hpp"

namespace {

int env_threads() {
    const char* raw = std::getenv("LBD_THREADS");
    if (!raw || !*raw) return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end || v < 0) throw lbd::ParameterError("LBD_THREADS must be a non-negative integer");
    return static_cast<int>(v);
}

lbd::Pattern make_pattern(const std::string& kind, int side, int m, std::uint64_t seed) {
    const auto k = lbd::pattern_kind_from_string(kind);
    switch (k) {
        case lbd::PatternKind::Brief:
            return lbd::build_brief(side, m, seed);
        case lbd::PatternKind::Freak:
        case lbd::PatternKind::RaFreak:
        case lbd::PatternKind::ExFreak:
            return lbd::build_freak(side, m, k, seed);
        case lbd::PatternKind::Custom:
            throw lbd::ParameterError("custom patterns come from JSON files, not generators");
    }
    throw lbd::ParameterError("unknown pattern kind");
}

struct PatternArgs {
    std::string kind = "brief";
    int side = 32;
    int m = 512;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_pattern(const PatternArgs& a) {
    const auto pat = make_pattern(a.kind, a.side, a.m, a.seed);
    lbd::save_pattern(pat, a.out);
    std::printf("pattern_id=%016llx m=%d\n", static_cast<unsigned long long>(pat.id), pat.m());
    return 0;
}

struct DescribeArgs {
    std::string image;
    std::string pattern;
    std::string mode = "grid";
    int offset = 32;
    bool binary = true;
    double fast_threshold = 0.08;
    std::string out;
};

int cmd_describe(const DescribeArgs& a) {
    const auto pat = lbd::load_pattern(a.pattern);
    const auto image = lbd::load_image(a.image);

    std::vector<lbd::PlacedPatch> patches;
    if (a.mode == "grid") {
        patches = lbd::extract_grid(image, pat.patch_side, a.offset);
    } else if (a.mode == "fast") {
        const auto kps = lbd::detect_fast(image, a.fast_threshold, 9, pat.patch_side / 2);
        patches = lbd::extract_keypoints(image, pat.patch_side, kps);
    } else {
        throw lbd::ParameterError("mode must be grid or fast");
    }

    lbd::DescriptorSet set;
    set.pattern_id = pat.id;
    set.patch_side = pat.patch_side;
    set.m = pat.m();
    set.binary = a.binary;
    set.records.reserve(patches.size());
    for (const auto& pp : patches) {
        lbd::PlacedDescriptor rec;
        rec.x = static_cast<std::uint32_t>(pp.x);
        rec.y = static_cast<std::uint32_t>(pp.y);
        rec.descriptor = lbd::describe(pat, pp.patch, a.binary);
        set.records.push_back(std::move(rec));
    }
    lbd::save_descriptors(set, a.out);
    std::printf("records=%zu binary=%d\n", set.records.size(), set.binary ? 1 : 0);
    return 0;
}

struct InvertArgs {
    std::string descriptors;
    std::string pattern;
    std::string solver = "biht";
    double lambda = 0.1;
    int iters = 0; // 0 = solver default
    double k_frac = 0.4;
    bool force_real = false;
    std::string out;
};

int cmd_invert(const InvertArgs& a) {
    const auto pat = lbd::load_pattern(a.pattern);
    const auto set = lbd::load_descriptors(a.descriptors);
    if (set.pattern_id != pat.id)
        throw lbd::MismatchError("descriptor file was made with a different pattern");
    if (set.patch_side != pat.patch_side || set.m != pat.m())
        throw lbd::MismatchError("descriptor file geometry disagrees with pattern");

    lbd::InvertConfig cfg;
    cfg.threads = env_threads();
    if (a.solver == "pd") {
        cfg.solver = lbd::SolverKind::Pd;
        cfg.pd.lambda = a.lambda;
        cfg.pd.force_real = a.force_real;
        if (a.iters > 0) cfg.pd.iterations = a.iters;
    } else if (a.solver == "biht") {
        cfg.solver = lbd::SolverKind::Biht;
        const int n = pat.patch_side * pat.patch_side;
        cfg.biht.k = static_cast<int>(std::lround(a.k_frac * n));
        if (a.iters > 0) cfg.biht.iterations = a.iters;
    } else {
        throw lbd::ParameterError("solver must be pd or biht");
    }

    lbd::InvertStats stats;
    const auto image = lbd::reconstruct_from_descriptors(set.records, pat, cfg, &stats);
    lbd::write_pgm(image, a.out);
    if (cfg.solver == lbd::SolverKind::Biht)
        std::printf("patches=%d mean_consistency=%.4f\n", stats.patches, stats.mean_consistency);
    else
        std::printf("patches=%d\n", stats.patches);
    return 0;
}

struct EvalArgs {
    std::string image_a;
    std::string image_b;
};

int cmd_eval(const EvalArgs& a) {
    const auto ia = lbd::load_image(a.image_a);
    const auto ib = lbd::load_image(a.image_b);
    if (ia.width != ib.width || ia.height != ib.height)
        throw lbd::ShapeError("images differ in size");
    // Covered region: pixels the second image (the reconstruction) actually
    // wrote; assembled canvases leave uncovered pixels at 0.
    const auto mask = lbd::nonzero_mask(ib);
    const double db = lbd::psnr(ia, ib, mask);
    if (std::isinf(db))
        std::printf("psnr_db=inf\n");
    else
        std::printf("psnr_db=%.3f\n", db);
    std::printf("edge_corr=%.3f\n", lbd::edge_correlation(ia, ib));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"local binary descriptor toolkit"};
    app.require_subcommand(1);

    PatternArgs pa;
    auto* sp = app.add_subcommand("pattern", "generate a sensing pattern");
    sp->add_option("--kind", pa.kind, "brief | freak | ra-freak | ex-freak");
    sp->add_option("--side", pa.side, "patch side in pixels");
    sp->add_option("--m", pa.m, "descriptor length (ignored for ex-freak)");
    sp->add_option("--seed", pa.seed, "generator seed");
    sp->add_option("--out", pa.out, "output pattern JSON")->required();

    DescribeArgs da;
    auto* sd = app.add_subcommand("describe", "compute descriptors of an image");
    sd->add_option("--image", da.image, "input image (PGM or PNG)")->required();
    sd->add_option("--pattern", da.pattern, "pattern JSON")->required();
    sd->add_option("--mode", da.mode, "grid | fast");
    sd->add_option("--offset", da.offset, "grid offset in pixels");
    auto* fb = sd->add_flag("--binary", "binarized descriptors (default)");
    auto* fr = sd->add_flag("--real", "raw real-valued measurements");
    sd->add_option("--fast-threshold", da.fast_threshold, "corner threshold in (0,1)");
    sd->add_option("--out", da.out, "output descriptor file")->required();

    InvertArgs ia;
    auto* si = app.add_subcommand("invert", "reconstruct an image from descriptors");
    si->add_option("--descriptors", ia.descriptors, "descriptor file")->required();
    si->add_option("--pattern", ia.pattern, "pattern JSON")->required();
    si->add_option("--solver", ia.solver, "pd | biht");
    si->add_option("--lambda", ia.lambda, "data weight for pd");
    si->add_option("--iters", ia.iters, "iteration count (0 = solver default)");
    si->add_option("--k-frac", ia.k_frac, "wavelet sparsity fraction for biht");
    si->add_flag("--force-real", ia.force_real, "let pd read a binary payload as reals");
    si->add_option("--out", ia.out, "output PGM")->required();

    EvalArgs ea;
    auto* se = app.add_subcommand("eval", "compare two images");
    se->add_option("--a", ea.image_a, "reference image")->required();
    se->add_option("--b", ea.image_b, "reconstruction")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (sp->parsed()) return cmd_pattern(pa);
        if (sd->parsed()) {
            if (fb->count() && fr->count())
                throw lbd::ParameterError("--binary and --real are mutually exclusive");
            da.binary = fr->count() == 0;
            return cmd_describe(da);
        }
        if (si->parsed()) return cmd_invert(ia);
        if (se->parsed()) return cmd_eval(ea);
    } catch (const lbd::MismatchError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const lbd::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const lbd::ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
