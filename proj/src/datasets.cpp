#include "projcoords/datasets.hpp"

#include "projcoords/errors.hpp"

#include <cmath>
#include <random>

namespace projcoords {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::RowVector3d unit_normal(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    while (true) {
        Eigen::RowVector3d v(g(rng), g(rng), g(rng));
        double n = v.norm();
        if (n > 1e-12) return v / n;
    }
}

Eigen::RowVector3d from_lat_lon(double lat_deg, double lon_deg) {
    const double la = lat_deg * kPi / 180.0, lo = lon_deg * kPi / 180.0;
    return {std::cos(la) * std::cos(lo), std::cos(la) * std::sin(lo), std::sin(la)};
}

} // namespace

Dataset parse_dataset(const std::string& name) {
    if (name == "line_patches") return Dataset::line_patches;
    if (name == "rp2_uniform") return Dataset::rp2_uniform;
    if (name == "klein_flat") return Dataset::klein_flat;
    if (name == "torus_product") return Dataset::torus_product;
    if (name == "sphere_uniform") return Dataset::sphere_uniform;
    throw InvalidInput("unknown dataset '" + name + "'");
}

std::string dataset_name(Dataset d) {
    switch (d) {
    case Dataset::line_patches: return "line_patches";
    case Dataset::rp2_uniform: return "rp2_uniform";
    case Dataset::klein_flat: return "klein_flat";
    case Dataset::torus_product: return "torus_product";
    case Dataset::sphere_uniform: return "sphere_uniform";
    }
    return "?";
}

Metric default_metric(Dataset d) {
    switch (d) {
    case Dataset::line_patches: return Metric::euclidean;
    case Dataset::rp2_uniform: return Metric::round_sphere_rp;
    case Dataset::klein_flat: return Metric::klein_flat;
    case Dataset::torus_product: return Metric::product_circle_torus;
    case Dataset::sphere_uniform: return Metric::round_sphere;
    }
    return Metric::euclidean;
}

double line_patch_offset_range(double theta, const LinePatchOptions& opt) {
    const double nx = -std::sin(theta), ny = std::cos(theta);
    double m = 0.0;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) m = std::max(m, std::abs((j - 3) * nx - (i - 3) * ny));
    return m + 2.5 * opt.width;
}

Eigen::VectorXd render_line_patch(double theta, double offset, const LinePatchOptions& opt) {
    const double nx = -std::sin(theta), ny = std::cos(theta);
    Eigen::VectorXd v(49);
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            // pixel centre (j - 3, 3 - i)
            const double d = (j - 3) * nx - (i - 3) * ny - offset;
            v[7 * i + j] = -1.0 + 2.0 * std::exp(-d * d / (2.0 * opt.width * opt.width));
        }
    }
    v.array() -= v.mean();
    return opt.amplitude * v;
}

PointCloud generate(Dataset d, int count, std::uint64_t seed, const LinePatchOptions& opt) {
    if (count < 1) throw InvalidInput("generate: count must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PointCloud out;
    switch (d) {
    case Dataset::line_patches:
        out.resize(count, 49);
        for (int r = 0; r < count; ++r) {
            const double theta = kPi * unit(rng);
            const double range = line_patch_offset_range(theta, opt);
            const double t = range * (2.0 * unit(rng) - 1.0);
            out.row(r) = render_line_patch(theta, t, opt).transpose();
        }
        break;
    case Dataset::rp2_uniform:
        out.resize(count, 3);
        for (int r = 0; r < count; ++r) {
            Eigen::RowVector3d v = unit_normal(rng);
            // representative with the first nonzero of (z, y, x) positive
            if (v[2] < 0 || (v[2] == 0 && (v[1] < 0 || (v[1] == 0 && v[0] < 0)))) v = -v;
            out.row(r) = v;
        }
        break;
    case Dataset::klein_flat:
        out.resize(count, 2);
        for (int r = 0; r < count; ++r) {
            out(r, 0) = unit(rng);
            out(r, 1) = unit(rng);
        }
        break;
    case Dataset::torus_product:
        out.resize(count, 4);
        for (int r = 0; r < count; ++r) {
            const double a = 2 * kPi * unit(rng), b = 2 * kPi * unit(rng);
            out.row(r) << std::cos(a), std::sin(a), std::cos(b), std::sin(b);
        }
        break;
    case Dataset::sphere_uniform:
        out.resize(count, 3);
        for (int r = 0; r < count; ++r) out.row(r) = unit_normal(rng);
        break;
    }
    return out;
}

PointCloud klein_landmarks() {
    PointCloud L(9, 2);
    int r = 0;
    for (double x : {1.0 / 6, 0.5, 5.0 / 6})
        for (double y : {1.0 / 6, 0.5, 5.0 / 6}) L.row(r++) << x, y;
    return L;
}

PointCloud rp2_landmarks() {
    PointCloud L(6, 3);
    L.row(0) = from_lat_lon(0, 0);
    L.row(1) = from_lat_lon(0, 60);
    L.row(2) = from_lat_lon(0, 120);
    L.row(3) = from_lat_lon(51, 60);
    L.row(4) = from_lat_lon(51, 180);
    L.row(5) = from_lat_lon(51, 300);
    return L;
}

PointCloud tetrahedron_landmarks() {
    PointCloud L(4, 3);
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    L.row(0) << 0, 0, 1;
    L.row(1) << 2 * s2 / 3, 0, -1.0 / 3;
    L.row(2) << -s2 / 3, s6 / 3, -1.0 / 3;
    L.row(3) << -s2 / 3, -s6 / 3, -1.0 / 3;
    return L;
}

double tetrahedron_radius() { return std::acos(-1.0 / 3.0); }

Cochain rp2_tau() {
    Cochain tau(1, Coefficients::mod(2));
    for (auto e : {Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}, Simplex{0, 4}, Simplex{2, 5}, Simplex{1, 3}}) tau.set(e, 1);
    return tau;
}

} // namespace projcoords
