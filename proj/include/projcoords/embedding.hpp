#pragma once

#include "projcoords/cohomology.hpp"
#include "projcoords/filtration.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace projcoords {

struct MdsResult {
    Eigen::MatrixXd coords;       // rows are points
    Eigen::VectorXd eigenvalues;  // top `dim`, before clamping
    bool non_euclidean = false;   // a kept eigenvalue was negative and clamped
};

MdsResult classical_mds(const Eigen::MatrixXd& D, int dim = 2);

struct ProcrustesResult {
    Eigen::Matrix2d omega;
    Eigen::Vector2d shift;
    int det = 1;
    double residual = 0.0;        // sum of squared errors
    double singular_ratio = 0.0;  // s_min / s_max of the cross-covariance
};

// Minimizes sum |omega a_i + shift - b_i|^2 over O(2) x R^2.
ProcrustesResult procrustes_2d(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

struct BallEmbedding {
    std::vector<int> points;  // rows of the distance table inside the ball, ascending
    Eigen::MatrixXd coords;   // one row per entry of points
};

// MDS of each ball of the cover, using the square distance table D.
std::vector<BallEmbedding> embed_balls(const Cover& cover, const Eigen::MatrixXd& D, int dim = 2);

struct OrientationOptions {
    int min_overlap = 2;
    double min_singular_ratio = 0.0;
    // Weak edges (below either threshold) are solved from the cocycle condition
    // instead of raising; with false, overlaps below 2 points raise CannotAlign.
    bool infer_weak = false;
};

struct OrientationResult {
    Cochain omega;                       // Z/2 1-cochain on the nerve
    SimplicialComplex nerve{2};
    bool cocycle = false;
    bool coboundary = false;
    std::vector<Simplex> violations;     // 2-simplices where delta omega != 0
    std::vector<Simplex> weak_edges;
    bool weak_consistent = true;         // the weak-edge system had a solution
};

OrientationResult orientation_cochain(const Cover& cover, const Eigen::MatrixXd& D,
                                      const std::vector<BallEmbedding>& embeddings,
                                      const OrientationOptions& options = {});

} // namespace projcoords
