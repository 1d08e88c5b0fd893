#pragma once

#include "projcoords/cohomology.hpp"
#include "projcoords/filtration.hpp"
#include "projcoords/ppca.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace projcoords {

struct BumpSpec {
    enum class Shape { triangular, polynomial, gaussian, logarithmic };
    Shape shape = Shape::polynomial;
    double exponent = 2.0;
    std::vector<double> weights;  // one per ball (cover position); empty means all 1

    double phi(double x) const;
    double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

    // (x)_+^2 with weights eps_r^2.
    static BumpSpec quadratic(const Cover& cover);
    static BumpSpec parse(const std::string& name, const Cover& cover);
};

struct ProjectivePoint {
    Field field = Field::real;
    Eigen::VectorXcd coords;
};

// Cocycle data for either field: tau (Z/2 1-cocycle) for real maps,
// theta (real 2-cocycle) and nu (real 1-cochain) for complex maps.
struct MapData {
    Field field = Field::real;
    Cochain tau;
    Cochain theta;
    Cochain nu;

    static MapData real(Cochain tau);
    static MapData complex(Cochain theta, Cochain nu);
    // theta = integer lift of eta, nu = 0
    static MapData integer(const Cochain& eta);
};

// Nerve-level maps in barycentric coordinates x (indexed by vertex id);
// chart < 0 picks argmax x.
Eigen::VectorXcd real_nerve_map(const Eigen::VectorXd& x, const Cochain& tau, int chart = -1);
Eigen::VectorXcd complex_nerve_map(const Eigen::VectorXd& x, const Cochain& theta, const Cochain& nu, int chart = -1);
int default_chart(const Eigen::VectorXd& x);

class ClassifyingMap {
public:
    // Validates the cocycle data on the witness nerve of the cover.
    ClassifyingMap(Cover cover, BumpSpec bump, MapData data, const Eigen::MatrixXd& dist);

    int rows() const { return static_cast<int>(local_.rows()); }
    Field field() const { return data_.field; }
    const Cover& cover() const { return cover_; }
    const SimplicialComplex& nerve() const { return nerve_; }
    const MapData& data() const { return data_; }

    // Partition of unity at row b, indexed by vertex id.
    Eigen::VectorXd weights(int b) const;
    // chart is a vertex id with positive weight; default argmax.
    ProjectivePoint at(int b, std::optional<int> chart = std::nullopt) const;
    // Every row; throws CoverageError on the first uncovered one.
    ProjectiveCloud evaluate() const;
    // omega_{rt}(b) for r, t with positive weight (zero elsewhere).
    Eigen::MatrixXcd transition_values(int b) const;

private:
    Cover cover_;
    BumpSpec bump_;
    MapData data_;
    Eigen::MatrixXd local_;  // rows x balls
    SimplicialComplex nerve_;
};

Eigen::VectorXd partition_of_unity_at(const Cover& cover, const BumpSpec& bump, const Eigen::MatrixXd& dist, int b);
ProjectivePoint real_map_at(const Cover& cover, const BumpSpec& bump, const Cochain& tau, const Eigen::MatrixXd& dist, int b);
ProjectivePoint complex_map_at(const Cover& cover, const BumpSpec& bump, const Cochain& theta, const Cochain& nu,
                               const Eigen::MatrixXd& dist, int b);
Eigen::MatrixXcd transition_values(const Cover& cover, const BumpSpec& bump, const MapData& data,
                                   const Eigen::MatrixXd& dist, int b);

// Map for the cover at scale alpha, with the quadratic sparse partition of unity.
// dist columns are point indices (perm.order entries).
ClassifyingMap sparse_map(const GreedyPermutation& perm, double eps, double alpha, MapData data,
                          const Eigen::MatrixXd& dist);
ProjectivePoint sparse_map_at(const GreedyPermutation& perm, double eps, double alpha, const MapData& data,
                              const Eigen::MatrixXd& dist, int b);

} // namespace projcoords
