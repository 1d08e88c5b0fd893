#pragma once

#include "projcoords/cohomology.hpp"
#include "projcoords/complex.hpp"
#include "projcoords/ppca.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testing_util {

using namespace projcoords;

inline Eigen::MatrixXd line_distances(const std::vector<double>& xs) {
    const int n = static_cast<int>(xs.size());
    Eigen::MatrixXd D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) D(i, j) = std::abs(xs[i] - xs[j]);
    return D;
}

// Random simplicial complex: each triangle / tetrahedron of `n` vertices kept with probability q.
inline SimplicialComplex random_complex(std::mt19937_64& rng, int n, double q2, double q3, int max_dim = 3) {
    std::bernoulli_distribution keep2(q2), keep3(q3);
    SimplicialComplex K(max_dim);
    for (int v = 0; v < n; ++v) K.insert({v});
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (keep2(rng)) K.insert({a, b, c});
    if (max_dim >= 3)
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d)
                        if (keep3(rng)) K.insert({a, b, c, d});
    return K;
}

inline Cochain random_cochain(std::mt19937_64& rng, const SimplicialComplex& K, int dim, Coefficients c, int lo = -3, int hi = 3) {
    Cochain out(dim, c);
    if (c.kind == Coefficients::Kind::real) {
        std::normal_distribution<double> g;
        for (auto& s : K.simplices(dim)) out.set(s, g(rng));
    } else {
        std::uniform_int_distribution<int> u(lo, hi);
        for (auto& s : K.simplices(dim)) out.set(s, u(rng));
    }
    return out;
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n, bool complex) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = {g(rng), complex ? g(rng) : 0.0};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(M);
    Eigen::MatrixXcd Q = qr.householderQ();
    return Q;
}

// Random cloud with geometrically decaying coordinate scales (simple spectra).
inline ProjectiveCloud anisotropic(std::mt19937_64& rng, Field f, int n1, int count) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd P(n1, count);
    for (int j = 0; j < count; ++j)
        for (int i = 0; i < n1; ++i) P(i, j) = std::complex<double>(g(rng), f == Field::complex ? g(rng) : 0.0) * std::pow(0.6, i);
    return ProjectiveCloud::from_columns(f, P);
}

} // namespace testing_util
