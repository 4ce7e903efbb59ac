// Copyright (C) 2026 The teamc Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamc/cli.hpp"

#include "teamc/config.hpp"
#include "teamc/costmodel.hpp"
#include "teamc/expand.hpp"
#include "teamc/io.hpp"
#include "teamc/pipeline.hpp"
#include "teamc/report.hpp"
#include "teamc/sampling.hpp"
#include "teamc/workload.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>

namespace teamc {

namespace fs = std::filesystem;

PatchGrid parse_grid(std::string_view text) {
    std::vector<Index> dims;
    std::string part;
    std::istringstream in{std::string(text)};
    while (std::getline(in, part, 'x')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != part.size())
            throw ParameterError("grid '" + std::string(text) + "' is not of the form VxHxW");
        dims.push_back(static_cast<Index>(v));
    }
    if (dims.size() == 2)
        return PatchGrid(1, dims[0], dims[1]);
    if (dims.size() == 3)
        return PatchGrid(dims[0], dims[1], dims[2]);
    throw ParameterError("grid '" + std::string(text) + "' is not of the form VxHxW");
}

namespace {

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

CompressionConfig resolve_config(const std::string& path) {
    CompressionConfig config = path.empty() ? goal_long_config() : load_config(path);
    apply_seed_override(config, seed_from_environment());
    config.validate();
    return config;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

struct GenArgs {
    std::string grid = "2x16x16";
    WorkloadSpec spec;
    std::string out_dir;
};

struct PruneArgs {
    std::string img, lang, grid = "2x16x16", config, out, report;
    bool no_timing = false;
};

struct MergeArgs {
    std::string hidden, guide, config, out, report;
    Index visual_begin = 0;
    Index visual_end = -1;
    bool no_timing = false;
};

struct PipelineArgs {
    std::string img, lang, guide, grid = "2x16x16", config, report, json;
    bool no_timing = false;
};

struct CostArgs {
    std::string candidate, baseline;
    BackboneSpec spec;
};

struct VizArgs {
    std::string img, lang, grid = "2x16x16", config, which = "expanded", out;
    Index view = 0;
};

struct BenchArgs {
    std::string stage = "expand", grid = "2x16x16", config;
    Index reps = 1000;
    Index dim = 64;
    std::uint64_t seed = 0;
};

Workload load_image_and_language(const std::string& img, const std::string& lang, const PatchGrid& grid) {
    Workload w;
    w.grid = grid;
    w.e_img = read_tokens(img);
    w.e_lang = read_tokens(lang);
    return w;
}

int run_gen(const GenArgs& a, std::ostream& out) {
    WorkloadSpec spec = a.spec;
    spec.grid = parse_grid(a.grid);
    const Workload w = generate_workload(spec);
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_tokens(w.e_img, dir / "img.tkb");
    write_tokens(w.e_lang, dir / "lang.tkb");
    write_tokens(w.guidance, dir / "guide.tkb");
    for (Index v = 0; v < w.grid.views; ++v) {
        export_mask_pgm(w.truth.view(v), dir / ("truth_v" + std::to_string(v) + ".pgm"));
        export_mask_pgm(w.anchors.view(v), dir / ("anchors_v" + std::to_string(v) + ".pgm"));
    }
    out << "stage=gen\n"
        << "image_tokens=" << w.e_img.rows() << "\n"
        << "language_tokens=" << w.e_lang.rows() << "\n"
        << "guide_tokens=" << w.guidance.rows() << "\n"
        << "truth_cells=" << w.truth.count() << "\n"
        << "anchor_cells=" << w.anchors.count() << "\n";
    return 0;
}

int run_prune(const PruneArgs& a, std::ostream& out) {
    const PatchGrid grid = parse_grid(a.grid);
    const CompressionConfig config = resolve_config(a.config);
    const Workload w = load_image_and_language(a.img, a.lang, grid);
    const auto start = Clock::now();
    const PruneResult r = prune_stage(w.e_img, w.e_lang, grid, config);
    const double ms = since_ms(start);
    if (!a.out.empty())
        write_tokens(r.kept, a.out);
    emit(format_prune_report(r, grid, ms, !a.no_timing), a.report, out);
    return 0;
}

int run_merge(const MergeArgs& a, std::ostream& out) {
    const CompressionConfig config = resolve_config(a.config);
    const TokenMatrix hidden = read_tokens(a.hidden);
    const TokenMatrix guide = read_tokens(a.guide);
    const RowRange range{a.visual_begin, a.visual_end < 0 ? hidden.rows() : a.visual_end};
    const auto start = Clock::now();
    const MergeStageResult r = merge_stage(hidden, guide, range, config);
    const double ms = since_ms(start);
    if (!a.out.empty())
        write_tokens(r.compressed, a.out);
    emit(format_merge_report(r.report, hidden.rows(), r.compressed.rows(), ms, !a.no_timing), a.report, out);
    return 0;
}

int run_pipeline_cmd(const PipelineArgs& a, std::ostream& out) {
    const PatchGrid grid = parse_grid(a.grid);
    const CompressionConfig config = resolve_config(a.config);
    const TokenMatrix img = read_tokens(a.img);
    const TokenMatrix lang = read_tokens(a.lang);
    const TokenMatrix guide = read_tokens(a.guide);
    const PipelineReport r = run_pipeline(img, lang, guide, grid, config);
    emit(format_pipeline_report(r, !a.no_timing), a.report, out);
    if (!a.json.empty())
        write_file(a.json, pipeline_report_json(r, !a.no_timing));
    return 0;
}

int run_cost(const CostArgs& a, std::ostream& out) {
    a.spec.validate();
    const TokenSchedule candidate = parse_schedule(read_file(a.candidate));
    const TokenSchedule baseline = parse_schedule(read_file(a.baseline));
    const double ratio = relative_flops(candidate, baseline, a.spec);
    out << "candidate_flops=" << schedule_flops(candidate, a.spec) << "\n"
        << "baseline_flops=" << schedule_flops(baseline, a.spec) << "\n";
    std::ostringstream r;
    r.precision(6);
    r << std::fixed << ratio;
    out << "relative_flops=" << r.str() << "\n";
    return 0;
}

int run_viz(const VizArgs& a, std::ostream& out) {
    const PatchGrid grid = parse_grid(a.grid);
    const CompressionConfig config = resolve_config(a.config);
    const Workload w = load_image_and_language(a.img, a.lang, grid);
    require_tokens(w.e_img, "viz");
    const BinaryMask anchors = anchor_mask(w.e_lang, w.e_img, grid, config.per_view_anchors);
    BinaryMask mask = anchors;
    if (a.which == "expanded") {
        Rng rng(config.seed);
        mask = expand_mask(anchors, config.expand, rng);
    } else if (a.which != "anchors") {
        throw ParameterError("viz: --mask must be 'anchors' or 'expanded'");
    }
    export_mask_pgm(mask.view(a.view), a.out);
    out << "stage=viz\nmask=" << a.which << "\nview=" << a.view << "\ncells=" << mask.view(a.view).count() << "\n";
    return 0;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
    if (a.reps < 1)
        throw ParameterError("bench: --reps must be positive");
    WorkloadSpec spec;
    spec.grid = parse_grid(a.grid);
    spec.dim = a.dim;
    spec.seed = a.seed;
    const Workload w = generate_workload(spec);
    const CompressionConfig config = resolve_config(a.config);

    const PruneResult pruned = prune_stage(w.e_img, w.e_lang, w.grid, config);
    const Index kept = pruned.kept_idx.size();
    TokenMatrix hidden(kept + w.e_lang.rows() + w.guidance.rows(), spec.dim);
    hidden << pruned.kept, w.e_lang, w.guidance;
    const BinaryMask anchors = anchor_mask(w.e_lang, w.e_img, w.grid, config.per_view_anchors);

    std::function<Index()> call;
    if (a.stage == "expand") {
        call = [&] {
            Rng rng(config.seed);
            return expand_mask(anchors, config.expand, rng).count();
        };
    } else if (a.stage == "similarity") {
        call = [&] { return anchor_mask(w.e_lang, w.e_img, w.grid, config.per_view_anchors).count(); };
    } else if (a.stage == "prune") {
        call = [&] { return prune_stage(w.e_img, w.e_lang, w.grid, config).kept_idx.size(); };
    } else if (a.stage == "merge") {
        call = [&] { return merge_stage(hidden, w.guidance, {0, kept}, config).compressed.rows(); };
    } else if (a.stage == "pipeline") {
        call = [&] { return run_pipeline(w.e_img, w.e_lang, w.guidance, w.grid, config).final_visual; };
    } else {
        throw ParameterError("bench: unknown stage '" + a.stage + "'");
    }

    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(a.reps));
    volatile Index sink = call();  // warm-up
    for (Index i = 0; i < a.reps; ++i) {
        const auto start = Clock::now();
        sink = call();
        samples.push_back(since_ms(start));
    }
    (void)sink;
    out << format_timing_stats(a.stage, summarize_timings(std::move(samples)));
    out << "grid=" << w.grid.views << "x" << w.grid.height << "x" << w.grid.width << "\n";
    return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Training-free visual token compression toolkit", "teamc"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic planted-block workload");
    gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
    gen_cmd->add_option("--grid", gen.grid, "Patch grid as VxHxW")->capture_default_str();
    gen_cmd->add_option("--blocks", gen.spec.blocks)->capture_default_str();
    gen_cmd->add_option("--block-min", gen.spec.block_min)->capture_default_str();
    gen_cmd->add_option("--block-max", gen.spec.block_max)->capture_default_str();
    gen_cmd->add_option("--dim", gen.spec.dim)->capture_default_str();
    gen_cmd->add_option("--margin", gen.spec.margin)->capture_default_str();
    gen_cmd->add_option("--anchor-fraction", gen.spec.anchor_fraction)->capture_default_str();
    gen_cmd->add_option("--guides", gen.spec.guide_tokens)->capture_default_str();
    gen_cmd->add_option("--seed", gen.spec.seed)->capture_default_str();

    PruneArgs prune;
    auto* prune_cmd = app.add_subcommand("prune", "Pre-backbone pruning: anchors, expansion, context sampling");
    prune_cmd->add_option("--img", prune.img, "Image tokens (.tkb)")->required();
    prune_cmd->add_option("--lang", prune.lang, "Language tokens (.tkb)")->required();
    prune_cmd->add_option("--grid", prune.grid)->capture_default_str();
    prune_cmd->add_option("--config", prune.config, "JSON config");
    prune_cmd->add_option("--out", prune.out, "Kept tokens (.tkb)");
    prune_cmd->add_option("--report", prune.report, "Report file (default stdout)");
    prune_cmd->add_flag("--no-timing", prune.no_timing);

    MergeArgs merge;
    auto* merge_cmd = app.add_subcommand("merge", "Guidance-driven bipartite merge of visual hidden states");
    merge_cmd->add_option("--hidden", merge.hidden, "Hidden states (.tkb)")->required();
    merge_cmd->add_option("--guide", merge.guide, "Guidance tokens (.tkb)")->required();
    merge_cmd->add_option("--visual-begin", merge.visual_begin)->capture_default_str();
    merge_cmd->add_option("--visual-end", merge.visual_end, "End of visual rows (default: all rows)");
    merge_cmd->add_option("--config", merge.config, "JSON config");
    merge_cmd->add_option("--out", merge.out, "Compressed hidden states (.tkb)");
    merge_cmd->add_option("--report", merge.report, "Report file (default stdout)");
    merge_cmd->add_flag("--no-timing", merge.no_timing);

    PipelineArgs pipe;
    auto* pipe_cmd = app.add_subcommand("pipeline", "Run both compression stages");
    pipe_cmd->add_option("--img", pipe.img)->required();
    pipe_cmd->add_option("--lang", pipe.lang)->required();
    pipe_cmd->add_option("--guide", pipe.guide)->required();
    pipe_cmd->add_option("--grid", pipe.grid)->capture_default_str();
    pipe_cmd->add_option("--config", pipe.config, "JSON config");
    pipe_cmd->add_option("--report", pipe.report, "Report file (default stdout)");
    pipe_cmd->add_option("--json", pipe.json, "JSON mirror of the report");
    pipe_cmd->add_flag("--no-timing", pipe.no_timing);

    CostArgs cost;
    auto* cost_cmd = app.add_subcommand("cost", "Relative backbone FLOPs of two token schedules");
    cost_cmd->add_option("--candidate", cost.candidate, "Schedule JSON")->required();
    cost_cmd->add_option("--baseline", cost.baseline, "Schedule JSON")->required();
    cost_cmd->add_option("--layers", cost.spec.layers)->capture_default_str();
    cost_cmd->add_option("--hidden", cost.spec.hidden)->capture_default_str();
    cost_cmd->add_option("--ffn", cost.spec.ffn)->capture_default_str();
    cost_cmd->add_option("--heads", cost.spec.heads)->capture_default_str();

    VizArgs viz;
    auto* viz_cmd = app.add_subcommand("viz", "Export a relevance mask as PGM");
    viz_cmd->add_option("--img", viz.img)->required();
    viz_cmd->add_option("--lang", viz.lang)->required();
    viz_cmd->add_option("--grid", viz.grid)->capture_default_str();
    viz_cmd->add_option("--config", viz.config, "JSON config");
    viz_cmd->add_option("--mask", viz.which, "anchors or expanded")->capture_default_str();
    viz_cmd->add_option("--view", viz.view)->capture_default_str();
    viz_cmd->add_option("--out", viz.out, "Output .pgm")->required();

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time a stage over repeated calls on a synthetic workload");
    bench_cmd->add_option("--stage", bench.stage, "expand, similarity, prune, merge or pipeline")
        ->capture_default_str();
    bench_cmd->add_option("--reps", bench.reps)->capture_default_str();
    bench_cmd->add_option("--grid", bench.grid)->capture_default_str();
    bench_cmd->add_option("--dim", bench.dim)->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
    bench_cmd->add_option("--config", bench.config, "JSON config");

    std::vector<const char*> argv{"teamc"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (gen_cmd->parsed())
            return run_gen(gen, out);
        if (prune_cmd->parsed())
            return run_prune(prune, out);
        if (merge_cmd->parsed())
            return run_merge(merge, out);
        if (pipe_cmd->parsed())
            return run_pipeline_cmd(pipe, out);
        if (cost_cmd->parsed())
            return run_cost(cost, out);
        if (viz_cmd->parsed())
            return run_viz(viz, out);
        if (bench_cmd->parsed())
            return run_bench(bench, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace teamc
