#pragma once

#include "projcoords/cohomology.hpp"
#include "projcoords/metric.hpp"

#include <cstdint>
#include <string>

namespace projcoords {

enum class Dataset { line_patches, rp2_uniform, klein_flat, torus_product, sphere_uniform };

Dataset parse_dataset(const std::string& name);
std::string dataset_name(Dataset d);
Metric default_metric(Dataset d);

struct LinePatchOptions {
    double width = 1.3;       // Gaussian profile width, in pixels
    double amplitude = 1.15;  // pixel scale before centering
};

// 7x7 patch of a line at angle theta in [0, pi) and signed offset t; mean zero.
Eigen::VectorXd render_line_patch(double theta, double offset, const LinePatchOptions& opt = {});
// Largest offset at which the line still touches the patch.
double line_patch_offset_range(double theta, const LinePatchOptions& opt = {});

// Rows are points. Reproducible from seed.
PointCloud generate(Dataset d, int count, std::uint64_t seed, const LinePatchOptions& opt = {});

// Landmark presets for the worked covers; rows are points in the dataset's coordinates.
PointCloud klein_landmarks();        // 3x3 grid, nearest-landmark distance 1/3
PointCloud rp2_landmarks();          // six points on the upper hemisphere
PointCloud tetrahedron_landmarks();  // vertices of a regular tetrahedron on S^2
double tetrahedron_radius();         // arccos(-1/3)

// 1{01} + 1{12} + 1{02} + 1{04} + 1{25} + 1{13} over Z/2.
Cochain rp2_tau();

} // namespace projcoords
