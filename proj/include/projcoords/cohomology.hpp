#pragma once

#include "projcoords/complex.hpp"

#include <Eigen/Sparse>

#include <map>
#include <optional>
#include <vector>

namespace projcoords {

struct Coefficients {
    enum class Kind { mod_p, integer, real };
    Kind kind = Kind::real;
    int p = 0;

    static Coefficients mod(int p);
    static Coefficients integers() { return {Kind::integer, 0}; }
    static Coefficients reals() { return {Kind::real, 0}; }

    // Reduces into [0, p) for mod_p; identity otherwise.
    double normalize(double v) const;
    bool operator==(const Coefficients& o) const { return kind == o.kind && p == o.p; }
};

bool is_prime(int p);

struct Cochain {
    int dim = 0;
    Coefficients coefficients;
    std::map<Simplex, double> values;  // absent means 0

    Cochain() = default;
    Cochain(int dim, Coefficients c) : dim(dim), coefficients(c) {}

    double operator[](const Simplex& s) const;
    // s may be unsorted: v is the value on that ordered tuple
    void set(Simplex s, double v);
    void add(Simplex s, double v);

    // Value on an ordered vertex tuple: sign of the sorting permutation times the
    // stored value, 0 if a vertex repeats. Over Z/2 the sign is irrelevant.
    double oriented(const Simplex& ordered) const;

    Cochain as(Coefficients c) const;
};

Cochain indicator(const Simplex& s, Coefficients c);

double inner_product(const Cochain& a, const Cochain& b);
double norm(const Cochain& c);
Cochain operator+(const Cochain& a, const Cochain& b);
Cochain operator-(const Cochain& a, const Cochain& b);
Cochain operator*(double s, const Cochain& c);

// delta^k, rows indexed by (k+1)-simplices and columns by k-simplices of K.
Eigen::SparseMatrix<double> coboundary_matrix(const SimplicialComplex& K, int k);

Cochain coboundary(const SimplicialComplex& K, const Cochain& c);
// d_k, the transpose of delta^{k-1}; real coefficients.
Cochain adjoint_coboundary(const SimplicialComplex& K, const Cochain& c);

bool is_cocycle(const SimplicialComplex& K, const Cochain& c, double tol = 0.0);
// Over Z/p only.
bool is_coboundary(const SimplicialComplex& K, const Cochain& c);

int rank_mod_p(std::vector<std::vector<int>> rows, int p);
int betti_rank(const SimplicialComplex& K, int p, int dim);

struct Interval {
    int dim = 0;
    double birth = 0.0;
    std::optional<double> death;
    Cochain representative;

    double persistence() const;
};

struct Barcode {
    std::vector<Interval> intervals;

    // Indices of intervals in `dim`, longest first (infinite before finite).
    std::vector<std::size_t> by_persistence(int dim) const;
    // Number of intervals in dim with birth <= alpha < death.
    int count_alive(int dim, double alpha) const;
};

// Left-to-right cohomology reduction keeping explicit cocycles. Reports dims
// 0..max_dim; uses simplices up to max_dim + 1.
Barcode persistent_cohomology(const Filtration& F, int p, int max_dim);

Cochain lift_to_integers(const Cochain& c, const SimplicialComplex& K);

struct HarmonicPair {
    Cochain theta;  // real 2-cochain
    Cochain nu;     // real 1-cochain
    double laplacian_residual = 0.0;
    int iterations = 0;
};

HarmonicPair harmonic_smoothing(const Cochain& eta, const SimplicialComplex& K);

} // namespace projcoords
