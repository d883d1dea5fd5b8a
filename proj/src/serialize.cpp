#include "crackgen/serialize.hpp"

#include "crackgen/annotate.hpp"

namespace crackgen {

namespace {

Json point(const Point2& p) { return Json::array({p.x(), p.y()}); }
Point2 point(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::string mode_name(SolveMode::Kind k) { return k == SolveMode::Kind::Steady ? "steady" : "transient"; }

SolveMode::Kind parse_mode(const std::string& s) {
    if (s == "steady") return SolveMode::Kind::Steady;
    if (s == "transient") return SolveMode::Kind::Transient;
    throw DomainError("unknown solve mode '" + s + "'");
}

}  // namespace

void to_json(Json& j, const PlateSpec& v) {
    j = {{"width", v.width}, {"height", v.height}, {"origin", point(v.origin)}};
}
void from_json(const Json& j, PlateSpec& v) {
    v.width = j.at("width");
    v.height = j.at("height");
    v.origin = point(j.at("origin"));
}

void to_json(Json& j, const MaterialProps& v) {
    j = {{"conductivity", v.conductivity}, {"density", v.density}, {"specific_heat", v.specific_heat}};
}
void from_json(const Json& j, MaterialProps& v) {
    v.conductivity = j.at("conductivity");
    v.density = j.at("density");
    v.specific_heat = j.at("specific_heat");
}

void to_json(Json& j, const CrackSpec& v) {
    j = {{"center", point(v.center)}, {"length", v.length}, {"width", v.width}, {"angle", v.angle}};
}
void from_json(const Json& j, CrackSpec& v) {
    v.center = point(j.at("center"));
    v.length = j.at("length");
    v.width = j.at("width");
    v.angle = j.at("angle");
}

void to_json(Json& j, const BoundaryCondition& v) { j = {{"kind", to_string(v.kind)}, {"value", v.value}}; }
void from_json(const Json& j, BoundaryCondition& v) {
    v.kind = parse_bc_kind(j.at("kind").get<std::string>());
    v.value = j.at("value");
}

void to_json(Json& j, const SolveMode& v) {
    j = {{"kind", mode_name(v.kind)}, {"t_end", v.t_end}, {"dt", v.dt}, {"initial_temperature", v.initial_temperature}};
}
void from_json(const Json& j, SolveMode& v) {
    v.kind = parse_mode(j.at("kind").get<std::string>());
    v.t_end = j.at("t_end");
    v.dt = j.at("dt");
    v.initial_temperature = j.at("initial_temperature");
}

void to_json(Json& j, const ScenarioSpec& v) {
    Json edges = Json::object();
    for (const EdgeBC& e : v.edge_bcs) edges[to_string(e.edge)] = e.bc;
    j = {{"seed", v.seed},
         {"sample_index", v.sample_index},
         {"plate", v.plate},
         {"material", v.material},
         {"cracks", v.cracks},
         {"edge_bcs", edges},
         {"crack_bc", v.crack_bc},
         {"mode", v.mode},
         {"colormap", std::string(to_string(v.colormap))}};
}
void from_json(const Json& j, ScenarioSpec& v) {
    v.seed = j.at("seed");
    v.sample_index = j.at("sample_index");
    v.plate = j.at("plate");
    v.material = j.at("material");
    v.cracks = j.at("cracks").get<std::vector<CrackSpec>>();
    for (Edge e : kAllEdges) {
        auto& slot = v.edge_bcs[static_cast<std::size_t>(e)];
        slot.edge = e;
        slot.bc = j.at("edge_bcs").at(to_string(e));
    }
    v.crack_bc = j.at("crack_bc");
    v.mode = j.at("mode");
    v.colormap = parse_colormap(j.at("colormap").get<std::string>());
}

void to_json(Json& j, const SizingParams& v) {
    j = {{"h_target", v.h_target},
         {"tip_factor", v.tip_factor},
         {"tip_radius", v.tip_radius},
         {"min_angle_deg", v.min_angle_deg}};
}
void from_json(const Json& j, SizingParams& v) {
    v.h_target = j.at("h_target");
    v.tip_factor = j.at("tip_factor");
    v.tip_radius = j.at("tip_radius");
    v.min_angle_deg = j.at("min_angle_deg");
}

void to_json(Json& j, const SolverConfig& v) { j = {{"rel_tol", v.rel_tol}, {"max_iters", v.max_iters}}; }
void from_json(const Json& j, SolverConfig& v) {
    v.rel_tol = j.at("rel_tol");
    v.max_iters = j.at("max_iters");
}

void to_json(Json& j, const PhotometricParams& v) {
    j = {{"brightness", v.brightness},
         {"exposure", v.exposure},
         {"contrast", v.contrast},
         {"saturation", v.saturation},
         {"warmth", v.warmth}};
}
void from_json(const Json& j, PhotometricParams& v) {
    v.brightness = j.at("brightness");
    v.exposure = j.at("exposure");
    v.contrast = j.at("contrast");
    v.saturation = j.at("saturation");
    v.warmth = j.at("warmth");
}

void to_json(Json& j, const AugmentationPlan& v) {
    Json regions = Json::array();
    for (const PixelRect& r : v.blur_regions) regions.push_back({r.x0, r.y0, r.x1, r.y1});
    j = {{"photometric", v.photometric}, {"blur_sigma", v.blur_sigma}, {"blur_regions", regions}};
}
void from_json(const Json& j, AugmentationPlan& v) {
    v.photometric = j.at("photometric");
    v.blur_sigma = j.at("blur_sigma");
    v.blur_regions.clear();
    for (const Json& r : j.at("blur_regions"))
        v.blur_regions.push_back({r.at(0).get<int>(), r.at(1).get<int>(), r.at(2).get<int>(), r.at(3).get<int>()});
}

void to_json(Json& j, const SamplerConfig& v) {
    Json maps = Json::array();
    for (ColormapName m : v.colormap_set) maps.push_back(std::string(to_string(m)));
    j = {{"plate", v.plate},
         {"material", v.material},
         {"length_range", {v.length_range.lo, v.length_range.hi}},
         {"width_exponents", v.width_exponents},
         {"angle_range", {v.angle_range.lo, v.angle_range.hi}},
         {"crack_count_range", {v.crack_count_range.first, v.crack_count_range.second}},
         {"margin", v.margin},
         {"clearance", v.clearance},
         {"temp_range", {v.temp_range.lo, v.temp_range.hi}},
         {"flux_range", {v.flux_range.lo, v.flux_range.hi}},
         {"bc_edge_count_range", {v.bc_edge_count_range.first, v.bc_edge_count_range.second}},
         {"dirichlet_probability", v.dirichlet_probability},
         {"crack_bc", v.crack_bc},
         {"colormaps", maps},
         {"transient_probability", v.transient_probability},
         {"transient_span", {v.transient_span.lo, v.transient_span.hi}},
         {"transient_steps", v.transient_steps},
         {"initial_temperature", v.initial_temperature}};
}

std::string format_metadata(const SampleMetadata& meta) {
    Json j = {{"image_file", meta.image_file},
              {"scenario", meta.scenario},
              {"sizing", meta.sizing},
              {"solver", meta.solver},
              {"width", meta.width},
              {"height", meta.height},
              {"hole_fill", meta.hole_fill ? Json(*meta.hole_fill) : Json(nullptr)},
              {"augmentation", meta.augmentation ? Json(*meta.augmentation) : Json(nullptr)},
              {"stats",
               {{"iterations", meta.stats.iterations},
                {"residual", meta.stats.residual},
                {"nodes", meta.node_count},
                {"triangles", meta.triangle_count}}}};
    return j.dump(1) + "\n";
}

SampleMetadata parse_metadata(const std::string& text) {
    SampleMetadata meta;
    Json j;
    try {
        j = Json::parse(text);
        meta.image_file = j.at("image_file");
        meta.scenario = j.at("scenario");
        meta.sizing = j.at("sizing");
        meta.solver = j.at("solver");
        meta.width = j.at("width");
        meta.height = j.at("height");
        if (!j.at("hole_fill").is_null()) meta.hole_fill = j.at("hole_fill").get<Rgb>();
        if (!j.at("augmentation").is_null()) meta.augmentation = j.at("augmentation").get<AugmentationPlan>();
        const Json& s = j.at("stats");
        meta.stats.iterations = s.at("iterations");
        meta.stats.residual = s.at("residual");
        meta.node_count = s.at("nodes");
        meta.triangle_count = s.at("triangles");
    } catch (const Json::exception& e) {
        throw DomainError(std::string("malformed metadata: ") + e.what());
    }
    return meta;
}

void write_metadata(const SampleMetadata& meta, const std::string& path) {
    write_text_file(path, format_metadata(meta));
}

SampleMetadata read_metadata(const std::string& path) { return parse_metadata(read_text_file(path)); }

}  // namespace crackgen
