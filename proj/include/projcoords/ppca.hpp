#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace projcoords {

enum class Field { real, complex };

// Homogeneous coordinates as columns, each of unit norm.
struct ProjectiveCloud {
    Field field = Field::real;
    Eigen::MatrixXcd points;

    int dim() const { return static_cast<int>(points.rows()) - 1; }
    int size() const { return static_cast<int>(points.cols()); }

    // Normalizes each column; zero columns are rejected.
    static ProjectiveCloud from_columns(Field field, Eigen::MatrixXcd columns);
    static ProjectiveCloud from_real_rows(const Eigen::MatrixXd& rows);
};

// Unit norm, first entry above a small threshold made real and positive.
Eigen::VectorXcd canonical_representative(const Eigen::VectorXcd& v);

struct HermitianEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXcd vectors; // columns, canonical phase
    int sweeps = 0;
};

// Cyclic Jacobi; stops when the off-diagonal Frobenius mass is below 1e-13 of the total.
HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& A);

double proj_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v);

struct LastComponent {
    Eigen::VectorXcd v;
    HermitianEigen eigen;
    bool multiple = false;    // smallest eigenvalue not simple
    double objective = 0.0;   // sum of (pi/2 - d_g(y, v))^2, reported only
};

LastComponent last_proj_comp(const ProjectiveCloud& Y);

struct ComponentBasis {
    Field field = Field::real;
    Eigen::MatrixXcd vectors;               // columns v_0..v_n
    std::vector<Eigen::VectorXd> ladders;   // eigenvalues per stage, stage n first
    std::vector<int> dropped;               // points dropped per stage
    int multiple_stages = 0;
};

// Called with each complement basis A_k; must return A_k * U for some unitary U.
using BasisRotation = std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>;

ComponentBasis prin_proj_comps(const ProjectiveCloud& Y, const BasisRotation& rotate = {});

struct Projection {
    ProjectiveCloud cloud;     // coefficient vectors <y, v_0..v_k>, normalized
    std::vector<int> kept;
    int dropped = 0;
};

Projection project_to_k(const ProjectiveCloud& Y, const ComponentBasis& B, int k);

struct VarianceProfile {
    std::vector<double> var;   // var(1..n)
    std::vector<double> pvar;
    bool degenerate = false;
    int dropped = 0;
};

VarianceProfile variance_profile(const ProjectiveCloud& Y, const ComponentBasis& B);

// Rows are points of the unit k-disk; input coefficient vectors of length k+1.
Eigen::MatrixXd viz_rp_disk(const ProjectiveCloud& coefficients);
// Rows are points of S^2.
Eigen::MatrixXd viz_cp1_hopf(const ProjectiveCloud& coefficients);

struct DimensionChoice {
    int k = 1;
    int elbow = 1;
};

DimensionChoice choose_dimension(const VarianceProfile& profile, double threshold = 0.7);

} // namespace projcoords
