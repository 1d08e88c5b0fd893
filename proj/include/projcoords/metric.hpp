#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace projcoords {

enum class Metric {
    euclidean,
    flat_torus,            // R^d / Z^d
    round_sphere_rp,       // arccos |<u,v>| on unit vectors
    product_circle_torus,  // (z, w) in S^1 x S^1, stored as 4 reals
    klein_flat,            // unit square with the Klein bottle identifications
    round_sphere,          // arccos <u,v> on unit vectors
};

Metric parse_metric(const std::string& name);
std::string metric_name(Metric m);

// Points are rows.
using PointCloud = Eigen::MatrixXd;

class DistanceMatrix {
public:
    DistanceMatrix() = default;
    // Checks symmetry, zero diagonal and nonnegativity.
    explicit DistanceMatrix(Eigen::MatrixXd entries);

    std::size_t size() const { return static_cast<std::size_t>(d_.rows()); }
    double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
    const Eigen::MatrixXd& entries() const { return d_; }

private:
    Eigen::MatrixXd d_;
};

double point_distance(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                      const Eigen::Ref<const Eigen::RowVectorXd>& b, Metric metric);

DistanceMatrix pairwise_distances(const PointCloud& points, Metric metric);

// rows: points, columns: targets
Eigen::MatrixXd cross_distances(const PointCloud& points, const PointCloud& targets, Metric metric);

// Shortest paths over the symmetrized k-nearest-neighbour graph.
DistanceMatrix geodesic_distances(const DistanceMatrix& D, int k);

struct GreedyPermutation {
    std::vector<int> order;
    std::vector<double> insertion_radii;  // [0] is +inf

    std::size_t size() const { return order.size(); }
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Farthest point sampling; ties go to the smallest index.
GreedyPermutation maxmin_sample(const Eigen::MatrixXd& D, int count, int seed);
GreedyPermutation maxmin_sample(const DistanceMatrix& D, int count, int seed);

// Distance from every landmark to its nearest other landmark, under the full table
// of landmark-to-landmark distances.
std::vector<double> nearest_landmark_distances(const Eigen::MatrixXd& landmark_distances);

} // namespace projcoords
