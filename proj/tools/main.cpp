#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crackgen/analysis.hpp"
#include "crackgen/bench.hpp"
#include "crackgen/pipeline.hpp"
#include "json_config.hpp"

namespace {

using namespace crackgen;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct GenerateArgs {
    GenerateConfig cfg;
    std::string size = "280x280";
    std::string format = "both";
    std::vector<std::string> colormaps;
    double transient_prob = 0.0;
    double h_target = SizingParams{}.h_target;
    bool quiet = false;
};

std::pair<int, int> parse_size(const std::string& s) {
    int w = 0, h = 0;
    char x = 0, extra = 0;
    if (std::sscanf(s.c_str(), "%d%c%d%c", &w, &x, &h, &extra) != 3 || (x != 'x' && x != 'X'))
        throw DomainError("size must look like WxH, got '" + s + "'");
    return {w, h};
}

int report_failures(const GenerateSummary& summary) {
    for (const SampleFailure& f : summary.failures)
        std::cerr << "sample " << f.index << " failed: " << f.message << "\n";
    return summary.failures.empty() ? kExitOk : kExitRuntime;
}

int run_generate_command(GenerateArgs& args) {
    GenerateConfig& cfg = args.cfg;
    std::tie(cfg.width, cfg.height) = parse_size(args.size);
    cfg.format = parse_label_format(args.format);
    if (!args.colormaps.empty()) {
        cfg.sampler.colormap_set.clear();
        for (const std::string& name : args.colormaps) cfg.sampler.colormap_set.push_back(parse_colormap(name));
    }
    cfg.sampler.transient_probability = args.transient_prob;
    cfg.sizing.h_target = args.h_target;
    validate(cfg);

    ProgressFn progress;
    if (!args.quiet) {
        progress = [](std::int64_t done, std::int64_t total) {
            std::fprintf(stderr, "\r%lld/%lld", static_cast<long long>(done), static_cast<long long>(total));
            if (done == total) std::fputc('\n', stderr);
        };
    }
    const GenerateSummary summary = run_generate(cfg, progress);
    std::fprintf(stderr, "%zu images, %zu annotations in %.1f s -> %s\n", summary.manifest.images.size(),
                 summary.manifest.annotations.size(), summary.seconds, cfg.out_dir.c_str());
    return report_failures(summary);
}

int run_bench_command(const std::string& out, const std::vector<double>& h_list) {
    const BenchReport report = run_benchmarks(h_list);
    const std::string text = format_bench_text(report);
    std::cout << text;
    if (!out.empty()) {
        std::filesystem::create_directories(out);
        write_text_file((std::filesystem::path(out) / "bench.txt").string(), text);
        write_text_file((std::filesystem::path(out) / "bench.csv").string(), format_bench_csv(report));
    }
    return report.ok() ? kExitOk : kExitRuntime;
}

int run_inspect_command(const std::string& in, const std::string& op_name, double dilation, double threshold,
                        const std::string& csv_out) {
    const EdgeOperator op = parse_edge_operator(op_name);
    std::vector<QaRow> rows;
    std::size_t easy = 0;
    for (const std::string& path : list_metadata(in)) {
        const SampleMetadata meta = read_metadata(path);
        const ThermogramImage img = read_png((std::filesystem::path(in) / meta.image_file).string());
        std::vector<PixelBox> boxes;
        for (const auto& b : crack_bboxes(meta.scenario, img.width, img.height)) boxes.push_back(b);
        const double score = detectability_score(img, boxes, dilation, op);
        rows.push_back({meta.image_file, score});
        if (score >= threshold) ++easy;
    }
    const std::string csv = format_qa_csv(rows, threshold);
    if (csv_out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(csv_out, csv);
    }
    std::fprintf(stderr, "%zu images: %zu easy, %zu hard (threshold %.2f, %s)\n", rows.size(), easy,
                 rows.size() - easy, threshold, op_name.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic thermograms of cracked plates"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Sample, solve, render and annotate a dataset");
    generate->add_option("--count", gen.cfg.count, "Number of samples")->capture_default_str();
    generate->add_option("--seed", gen.cfg.seed, "Master seed")->capture_default_str();
    generate->add_option("--out", gen.cfg.out_dir, "Output directory")->capture_default_str();
    generate->add_option("--size", gen.size, "Image size WxH")->capture_default_str();
    generate->add_option("--format", gen.format, "yolo, coco or both")->capture_default_str();
    generate->add_option("--colormaps", gen.colormaps, "Colormaps to draw from")->delimiter(',');
    generate->add_option("--augment-strength", gen.cfg.augment_strength, "Add an augmented copy per sample")
        ->capture_default_str();
    generate->add_option("--transient-prob", gen.transient_prob, "Probability of a transient snapshot")
        ->capture_default_str();
    generate->add_option("--h-target", gen.h_target, "Target mesh edge length")->capture_default_str();
    generate->add_option("--jobs", gen.cfg.jobs, "Worker threads (0: all cores)")->capture_default_str();
    generate->add_flag("--keep-partial", gen.cfg.keep_partial, "Keep files of failed samples");
    generate->add_flag("--dump-meshes", gen.cfg.dump_meshes, "Write each mesh as meshes/<stem>.off");
    generate->add_flag("--quiet", gen.quiet, "No progress output");
    std::string config_file;
    generate->add_option("--config", config_file, "JSON file whose keys mirror the flags; flags win");

    std::string bench_out;
    std::vector<double> h_list = default_h_list();
    auto* bench = app.add_subcommand("bench", "Slab and circular-hole oracles with a convergence study");
    bench->add_option("--out", bench_out, "Directory for bench.txt and bench.csv");
    bench->add_option("--h-list", h_list, "Decreasing mesh sizes for the study")->delimiter(',')->capture_default_str();

    AugmentConfig aug;
    auto* augment = app.add_subcommand("augment", "Write augmented copies of an existing dataset");
    augment->add_option("--in", aug.in_dir, "Source dataset")->required();
    augment->add_option("--out", aug.out_dir, "Destination dataset")->required();
    augment->add_option("--seed", aug.seed, "Augmentation seed")->capture_default_str();
    augment->add_option("--strength", aug.strength, "Augmentation strength in [0, 1]")->capture_default_str();
    augment->add_option("--jobs", aug.jobs, "Worker threads (0: all cores)")->capture_default_str();

    std::string inspect_in, inspect_op = "sobel", inspect_csv;
    double dilation = 5.0, threshold = kEasyThreshold;
    auto* inspect = app.add_subcommand("inspect", "Detectability QA report as CSV");
    inspect->add_option("--in", inspect_in, "Dataset directory")->required();
    inspect->add_option("--operator", inspect_op, "sobel, prewitt or roberts")->capture_default_str();
    inspect->add_option("--dilation", dilation, "Box dilation in pixels")->capture_default_str();
    inspect->add_option("--threshold", threshold, "Easy/hard threshold")->capture_default_str();
    inspect->add_option("--csv", inspect_csv, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
        if (!config_file.empty()) cli::apply_json_config(*generate, config_file);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (generate->parsed()) return run_generate_command(gen);
        if (bench->parsed()) return run_bench_command(bench_out, h_list);
        if (augment->parsed()) {
            const GenerateSummary summary = run_augment(aug);
            std::fprintf(stderr, "%zu augmented images -> %s\n", summary.manifest.images.size(), aug.out_dir.c_str());
            return report_failures(summary);
        }
        if (inspect->parsed()) return run_inspect_command(inspect_in, inspect_op, dilation, threshold, inspect_csv);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitInvalid;
}
