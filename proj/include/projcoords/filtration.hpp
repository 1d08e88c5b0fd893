#pragma once

#include "projcoords/complex.hpp"
#include "projcoords/metric.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace projcoords {

// A family of open balls B_i = {x : dist(x, landmark_i) < radius_i}.
// Distances are read from a table whose rows are data points and whose
// columns are indexed by `landmarks`.
struct Cover {
    std::vector<int> landmarks;
    std::vector<double> radii;
    std::vector<int> vertex_ids;  // nerve vertex and coordinate slot of each ball
    std::vector<int> witnesses;   // rows used for intersection tests; empty means all rows
    int coordinate_count = 0;

    std::size_t size() const { return landmarks.size(); }

    // vertex_ids 0..m-1, coordinate_count m.
    static Cover fixed(std::vector<int> landmarks, std::vector<double> radii);
    void validate(const Eigen::MatrixXd& dist) const;

    // Positions i (not vertex ids) of the balls containing row b.
    std::vector<int> members(const Eigen::MatrixXd& dist, int b) const;
};

// Radii factor * (distance to the nearest other landmark).
std::vector<double> nearest_landmark_radii(const Eigen::MatrixXd& landmark_distances, double factor);

double cone_radius(double alpha, double eps, double lambda);

// Smallest alpha at which the capped cones around s and t meet; nullopt if never.
std::optional<double> edge_birth(double lambda_s, double lambda_t, double d, double eps);

Filtration sparse_rips(const GreedyPermutation& perm, const Eigen::MatrixXd& D, double eps, int max_dim);

SimplicialComplex witness_nerve(const Cover& cover, const Eigen::MatrixXd& dist, int max_dim);

// Balls of radius r_s(alpha) around x_s for s in S_alpha.
Cover cover_at_scale(const GreedyPermutation& perm, double eps, double alpha);

} // namespace projcoords
