#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "crackgen/augment.hpp"
#include "crackgen/fem.hpp"
#include "crackgen/mesh.hpp"
#include "crackgen/sampler.hpp"

namespace crackgen {

using Json = nlohmann::json;

void to_json(Json& j, const PlateSpec& v);
void from_json(const Json& j, PlateSpec& v);
void to_json(Json& j, const MaterialProps& v);
void from_json(const Json& j, MaterialProps& v);
void to_json(Json& j, const CrackSpec& v);
void from_json(const Json& j, CrackSpec& v);
void to_json(Json& j, const BoundaryCondition& v);
void from_json(const Json& j, BoundaryCondition& v);
void to_json(Json& j, const SolveMode& v);
void from_json(const Json& j, SolveMode& v);
void to_json(Json& j, const ScenarioSpec& v);
void from_json(const Json& j, ScenarioSpec& v);
void to_json(Json& j, const SizingParams& v);
void from_json(const Json& j, SizingParams& v);
void to_json(Json& j, const SolverConfig& v);
void from_json(const Json& j, SolverConfig& v);
void to_json(Json& j, const PhotometricParams& v);
void from_json(const Json& j, PhotometricParams& v);
void to_json(Json& j, const AugmentationPlan& v);
void from_json(const Json& j, AugmentationPlan& v);
void to_json(Json& j, const SamplerConfig& v);

/// Per-image sidecar: everything needed to regenerate the PNG bit for bit.
struct SampleMetadata {
    std::string image_file;
    ScenarioSpec scenario;
    SizingParams sizing;
    SolverConfig solver;
    int width = 280;
    int height = 280;
    std::optional<Rgb> hole_fill;
    std::optional<AugmentationPlan> augmentation;
    SolveStats stats;
    std::size_t node_count = 0;
    std::size_t triangle_count = 0;
};

std::string format_metadata(const SampleMetadata& meta);
SampleMetadata parse_metadata(const std::string& text);
void write_metadata(const SampleMetadata& meta, const std::string& path);
SampleMetadata read_metadata(const std::string& path);

}  // namespace crackgen
