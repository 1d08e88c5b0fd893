#pragma once

#include "projcoords/classifying_maps.hpp"
#include "projcoords/datasets.hpp"
#include "projcoords/embedding.hpp"
#include "projcoords/ppca.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace projcoords {

struct PipelineConfig {
    std::string dataset = "torus_product";
    int count = 2500;
    std::uint64_t seed = 0;
    std::string metric;            // empty: the dataset's own metric
    int geodesic_k = 0;            // > 0: shortest paths over the k-NN graph

    std::string cover = "sparse";  // sparse | fixed
    int landmarks = 35;
    int landmark_start = 0;
    std::string landmark_preset;   // fixed covers: tetrahedron | klein9 | rp2_6
    double sparsity = 0.01;
    double radius = 0.0;           // fixed covers: common radius
    double radius_factor = 0.0;    // fixed covers: factor * nearest-landmark distance
    std::string bump = "quadratic";

    int prime = 0;                 // 0: 2 for rp, 47 for cp
    std::string field = "rp";      // rp | cp
    std::string cocycle = "persistence";  // persistence | orientation
    std::string interval = "longest";     // longest | index
    int interval_rank = 0;         // longest: 0 is the longest bar, 1 the next, ...
    int interval_index = 0;        // index: position in the barcode
    std::string smoothing = "harmonic";   // cp only: harmonic | integer

    double threshold = 0.7;
    int viz_k = 2;

    int orientation_min_overlap = 8;
    double orientation_min_ratio = 0.08;
    bool orientation_infer_weak = true;

    double patch_width = 1.3;
    double patch_amplitude = 1.15;

    void validate() const;
    nlohmann::json to_json() const;
};

struct PipelineResult {
    PointCloud points;
    Barcode barcode;
    std::optional<std::size_t> interval;  // barcode entry used for the cocycle
    double alpha = 0.0;                   // scale of the sparse cover
    std::optional<OrientationResult> orientation;
    ProjectiveCloud coords;
    ComponentBasis basis;
    VarianceProfile profile;
    DimensionChoice choice;
    Eigen::MatrixXd viz;
    nlohmann::json summary;
};

PipelineResult run_pipeline(const PipelineConfig& config);

// points.csv, barcode.json, coords.csv, profile.csv, viz.csv, summary.json
void write_bundle(const PipelineResult& result, const std::string& directory);

// Scale strictly below a finite death (or at the last birth for an infinite bar)
// where the stored representative is a cocycle.
double evaluation_scale(const Filtration& F, const Interval& interval);

// Cocycle data for the map on K from a barcode representative: restricted to K,
// then (complex) lifted to Z and smoothed ("harmonic") or used as is ("integer").
MapData cocycle_map_data(const Cochain& representative, const SimplicialComplex& K, Field field,
                         const std::string& smoothing = "harmonic");

extern const char* const kVersion;

} // namespace projcoords
