#include "crackgen/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <thread>

namespace crackgen {

namespace fs = std::filesystem;

std::string to_string(LabelFormat f) {
    switch (f) {
        case LabelFormat::Yolo: return "yolo";
        case LabelFormat::Coco: return "coco";
        case LabelFormat::Both: return "both";
    }
    return "both";
}

LabelFormat parse_label_format(const std::string& s) {
    if (s == "yolo") return LabelFormat::Yolo;
    if (s == "coco") return LabelFormat::Coco;
    if (s == "both") return LabelFormat::Both;
    throw DomainError("format must be yolo, coco or both, got '" + s + "'");
}

void validate(const GenerateConfig& cfg) {
    if (cfg.count < 0) throw DomainError("count must be >= 0");
    if (cfg.width < 16 || cfg.height < 16) throw DomainError("size must be at least 16x16");
    if (cfg.out_dir.empty()) throw DomainError("out must name a directory");
    if (!(cfg.augment_strength >= 0.0 && cfg.augment_strength <= 1.0))
        throw DomainError("augment-strength must lie in [0, 1]");
    if (cfg.jobs < 0) throw DomainError("jobs must be >= 0");
    if (!(cfg.solver.rel_tol > 0.0)) throw DomainError("rel_tol must be > 0");
    validate(cfg.sampler);
    validate(cfg.sizing);
}

std::string config_hash(const GenerateConfig& cfg) {
    Json j = {{"sampler", cfg.sampler},
              {"sizing", cfg.sizing},
              {"solver", cfg.solver},
              {"width", cfg.width},
              {"height", cfg.height},
              {"format", to_string(cfg.format)},
              {"augment_strength", cfg.augment_strength},
              {"hole_fill", cfg.hole_fill ? Json(*cfg.hole_fill) : Json(nullptr)}};
    return fnv1a_hex(j.dump());
}

RenderedSample render_scenario(const ScenarioSpec& scenario, const SizingParams& sizing, const SolverConfig& solver,
                               int width, int height, const std::optional<Rgb>& hole_fill) {
    RenderedSample s;
    s.scenario = scenario;
    s.mesh = triangulate(scenario, sizing);
    s.field = solve_scenario(scenario, s.mesh, solver);
    RenderOptions options;
    options.hole_fill = hole_fill;
    s.render = rasterize(s.mesh, s.field, scenario.plate, width, height, colormap(scenario.colormap), options);
    s.annotations = annotate_cracks(scenario.cracks, scenario.plate, width, height);
    return s;
}

ThermogramImage regenerate(const SampleMetadata& meta) {
    ThermogramImage img =
        render_scenario(meta.scenario, meta.sizing, meta.solver, meta.width, meta.height, meta.hole_fill).render.image;
    if (meta.augmentation) img = apply_plan(img, *meta.augmentation);
    return img;
}

std::vector<std::array<double, 4>> crack_bboxes(const ScenarioSpec& scenario, int width, int height) {
    std::vector<std::array<double, 4>> out;
    for (const CrackSpec& c : scenario.cracks) out.push_back(crack_annotation(c, scenario.plate, width, height).bbox);
    return out;
}

std::string sample_stem(std::int64_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sample_%06lld", static_cast<long long>(index));
    return buf;
}

void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn) {
    if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    jobs = static_cast<int>(std::min<std::int64_t>(jobs, std::max<std::int64_t>(n, 1)));
    if (jobs == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::int64_t i = next++; i < n; i = next++) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

namespace {

struct WrittenImage {
    std::string file_name;  // relative to the dataset root
    std::string summary;
    std::vector<AnnotationRecord> annotations;
    int width = 0;
    int height = 0;
};

struct SampleOutcome {
    std::vector<WrittenImage> images;
    std::optional<std::string> error;
};

std::string scenario_summary(const ScenarioSpec& s) {
    std::string out = std::to_string(s.cracks.size()) + (s.cracks.size() == 1 ? " crack, " : " cracks, ");
    out += std::string(to_string(s.colormap)) + ", " + (s.mode.transient() ? "transient" : "steady");
    for (const EdgeBC& e : s.edge_bcs) {
        if (e.bc.kind == BcKind::Insulated) continue;
        char buf[64];
        std::snprintf(buf, sizeof buf, ", %s %s %.4g", to_string(e.edge).c_str(), to_string(e.bc.kind).c_str(),
                      e.bc.value);
        out += buf;
    }
    return out;
}

class FileTracker {
public:
    explicit FileTracker(bool keep) : keep_(keep) {}
    void add(const fs::path& p) { paths_.push_back(p); }
    void discard() {
        if (keep_) return;
        for (const fs::path& p : paths_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }

private:
    bool keep_;
    std::vector<fs::path> paths_;
};

void write_image_set(const fs::path& root, const std::string& stem, const ThermogramImage& img,
                     const std::vector<AnnotationRecord>& records, const SampleMetadata& meta, bool yolo,
                     FileTracker& files) {
    const fs::path png = root / "images" / (stem + ".png");
    files.add(png);
    write_png(img, png.string());
    if (yolo) {
        const fs::path txt = root / "labels" / (stem + ".txt");
        files.add(txt);
        write_yolo(records, img.width, img.height, txt.string());
    }
    const fs::path json = root / "meta" / (stem + ".json");
    files.add(json);
    write_metadata(meta, json.string());
}

void make_layout(const fs::path& root) {
    std::error_code ec;
    for (const char* sub : {"images", "labels", "meta"}) {
        fs::create_directories(root / sub, ec);
        if (ec) throw IOFailure((root / sub).string(), ec.message());
    }
}

DatasetManifest assemble_manifest(const std::vector<SampleOutcome>& outcomes, const std::vector<std::int64_t>& indices,
                                  std::uint64_t seed, const std::string& hash) {
    DatasetManifest manifest;
    manifest.master_seed = seed;
    manifest.config_hash = hash;
    std::int64_t next_id = 1;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
        if (outcomes[k].error) continue;
        for (const WrittenImage& w : outcomes[k].images) {
            const std::int64_t id = next_id++;
            manifest.images.push_back({id, w.file_name, w.width, w.height, indices[k], w.summary});
            for (AnnotationRecord rec : w.annotations) {
                rec.image_id = id;
                manifest.annotations.push_back(rec);
            }
        }
    }
    return manifest;
}

}  // namespace

GenerateSummary run_generate(const GenerateConfig& cfg, const ProgressFn& progress) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    const fs::path root(cfg.out_dir);
    make_layout(root);
    if (cfg.dump_meshes) fs::create_directories(root / "meshes");
    const bool yolo = cfg.format != LabelFormat::Coco;
    const bool coco = cfg.format != LabelFormat::Yolo;

    std::vector<SampleOutcome> outcomes(static_cast<std::size_t>(cfg.count));
    std::mutex progress_mutex;
    std::int64_t done = 0;

    parallel_for(cfg.count, cfg.jobs, [&](std::int64_t i) {
        SampleOutcome& outcome = outcomes[static_cast<std::size_t>(i)];
        FileTracker files(cfg.keep_partial);
        try {
            const ScenarioSpec scenario = sample_scenario(cfg.sampler, cfg.seed, i);
            const RenderedSample sample =
                render_scenario(scenario, cfg.sizing, cfg.solver, cfg.width, cfg.height, cfg.hole_fill);

            SampleMetadata meta;
            meta.scenario = scenario;
            meta.sizing = cfg.sizing;
            meta.solver = cfg.solver;
            meta.width = cfg.width;
            meta.height = cfg.height;
            meta.hole_fill = cfg.hole_fill;
            meta.stats = sample.field.stats;
            meta.node_count = sample.mesh.nodes.size();
            meta.triangle_count = sample.mesh.triangles.size();

            const std::string stem = sample_stem(i);
            const std::string summary = scenario_summary(scenario);
            meta.image_file = "images/" + stem + ".png";
            write_image_set(root, stem, sample.render.image, sample.annotations, meta, yolo, files);
            if (cfg.dump_meshes) {
                const fs::path off = root / "meshes" / (stem + ".off");
                files.add(off);
                write_off(sample.mesh, off.string());
            }
            outcome.images.push_back({meta.image_file, summary, sample.annotations, cfg.width, cfg.height});

            if (cfg.augment_strength > 0.0) {
                RngStream rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(i), kAugmentChannel);
                meta.augmentation = sample_plan(rng, cfg.augment_strength, crack_bboxes(scenario, cfg.width, cfg.height),
                                                cfg.width, cfg.height);
                meta.image_file = "images/" + stem + "_aug.png";
                write_image_set(root, stem + "_aug", apply_plan(sample.render.image, *meta.augmentation),
                                sample.annotations, meta, yolo, files);
                outcome.images.push_back(
                    {meta.image_file, summary + ", augmented", sample.annotations, cfg.width, cfg.height});
            }
        } catch (const std::exception& e) {
            files.discard();
            outcome.images.clear();
            outcome.error = e.what();
        }
        if (progress) {
            std::lock_guard lock(progress_mutex);
            progress(++done, cfg.count);
        }
    });

    GenerateSummary summary;
    std::vector<std::int64_t> indices(outcomes.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        indices[k] = static_cast<std::int64_t>(k);
        if (outcomes[k].error) summary.failures.push_back({indices[k], *outcomes[k].error});
    }
    summary.manifest = assemble_manifest(outcomes, indices, cfg.seed, config_hash(cfg));
    if (coco) write_coco(summary.manifest, (root / "annotations.json").string());
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

std::vector<std::string> list_metadata(const std::string& dir) {
    const fs::path meta = fs::path(dir) / "meta";
    std::error_code ec;
    if (!fs::is_directory(meta, ec)) throw IOFailure(meta.string(), "not a dataset directory (missing meta/)");
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(meta))
        if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

GenerateSummary run_augment(const AugmentConfig& cfg) {
    if (!(cfg.strength >= 0.0 && cfg.strength <= 1.0)) throw DomainError("strength must lie in [0, 1]");
    if (cfg.in_dir.empty() || cfg.out_dir.empty()) throw DomainError("in and out must name directories");
    std::error_code ec;
    if (fs::exists(cfg.out_dir, ec) && fs::equivalent(cfg.in_dir, cfg.out_dir, ec))
        throw DomainError("out must differ from in");
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::string> sources;
    std::vector<SampleMetadata> metas;
    for (const std::string& path : list_metadata(cfg.in_dir)) {
        SampleMetadata meta = read_metadata(path);
        if (meta.augmentation) continue;
        sources.push_back(path);
        metas.push_back(std::move(meta));
    }
    const fs::path root(cfg.out_dir);
    make_layout(root);

    std::vector<SampleOutcome> outcomes(metas.size());
    parallel_for(static_cast<std::int64_t>(metas.size()), cfg.jobs, [&](std::int64_t k) {
        SampleOutcome& outcome = outcomes[static_cast<std::size_t>(k)];
        FileTracker files(false);
        try {
            SampleMetadata meta = metas[static_cast<std::size_t>(k)];
            const ThermogramImage src = read_png((fs::path(cfg.in_dir) / meta.image_file).string());
            if (src.width != meta.width || src.height != meta.height)
                throw DomainError(meta.image_file + ": size differs from its sidecar");
            RngStream rng =
                derive_stream(cfg.seed, static_cast<std::uint64_t>(meta.scenario.sample_index), kAugmentChannel);
            meta.augmentation =
                sample_plan(rng, cfg.strength, crack_bboxes(meta.scenario, meta.width, meta.height), meta.width,
                            meta.height);
            const std::string stem = fs::path(meta.image_file).stem().string() + "_aug";
            meta.image_file = "images/" + stem + ".png";
            const auto records = annotate_cracks(meta.scenario.cracks, meta.scenario.plate, meta.width, meta.height);
            write_image_set(root, stem, apply_plan(src, *meta.augmentation), records, meta, true, files);
            outcome.images.push_back(
                {meta.image_file, scenario_summary(meta.scenario) + ", augmented", records, meta.width, meta.height});
        } catch (const std::exception& e) {
            files.discard();
            outcome.images.clear();
            outcome.error = e.what();
        }
    });

    GenerateSummary summary;
    std::vector<std::int64_t> indices;
    for (std::size_t k = 0; k < metas.size(); ++k) {
        indices.push_back(metas[k].scenario.sample_index);
        if (outcomes[k].error) summary.failures.push_back({indices.back(), *outcomes[k].error});
    }
    summary.manifest = assemble_manifest(outcomes, indices, cfg.seed, "");
    write_coco(summary.manifest, (root / "annotations.json").string());
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace crackgen
