#pragma once

// Independent reference computations shared by the unit tests and the acceptance run.

#include "helpers.hpp"

#include "projcoords/complex.hpp"

#include <Eigen/Dense>

#include <map>
#include <random>
#include <vector>

namespace testing_util {

// Oracle: dense Gaussian elimination mod p, written independently of the library.
inline int oracle_rank(std::vector<std::vector<long long>> m, int p) {
    int rank = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (((m[r][c] % p) + p) % p) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        long long a = ((m[rank][c] % p) + p) % p, inv = 1;
        for (int e = p - 2; e > 0; --e) inv = inv * a % p;
        for (auto& x : m[rank]) x = ((x % p) + p) % p * inv % p;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            long long f = ((m[r][c] % p) + p) % p;
            if (!f) continue;
            for (int j = 0; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// delta^k as a dense matrix: rows (k+1)-simplices, columns k-simplices
inline std::vector<std::vector<long long>> oracle_delta(const std::vector<Simplex>& lo, const std::vector<Simplex>& hi) {
    std::vector<std::vector<long long>> m(hi.size(), std::vector<long long>(lo.size(), 0));
    for (std::size_t r = 0; r < hi.size(); ++r)
        for (std::size_t c = 0; c < lo.size(); ++c) {
            const Simplex& s = hi[r];
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex f;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != j) f.push_back(s[i]);
                if (f == lo[c]) m[r][c] = (j % 2 == 0) ? 1 : -1;
            }
        }
    return m;
}

inline int oracle_betti(const std::vector<std::vector<Simplex>>& by_dim, int k, int p) {
    auto get = [&](int d) { return d >= 0 && d < static_cast<int>(by_dim.size()) ? by_dim[d] : std::vector<Simplex>{}; };
    const auto ck = get(k), up = get(k + 1), down = get(k - 1);
    const int rk = (up.empty() || ck.empty()) ? 0 : oracle_rank(oracle_delta(ck, up), p);
    const int rd = (down.empty() || ck.empty()) ? 0 : oracle_rank(oracle_delta(down, ck), p);
    return static_cast<int>(ck.size()) - rk - rd;
}

inline Filtration random_filtration(std::mt19937_64& rng, int max_simplices) {
    std::uniform_int_distribution<int> nv(4, 7);
    std::uniform_real_distribution<double> u(0, 1);
    const int n = nv(rng);
    SimplicialComplex K = random_complex(rng, n, 0.35, 0.15, 3);
    // births: integers so that ties across dimensions are common
    std::uniform_int_distribution<int> jitter(0, 3);
    std::map<Simplex, double> birth;
    std::vector<FilteredSimplex> out;
    for (int d = 0; d <= 3; ++d)
        for (auto& s : K.simplices(d)) {
            double b = jitter(rng);
            for (int j = 0; d > 0 && j <= d; ++j) b = std::max(b, birth[facet(s, j)]);
            birth[s] = b;
            out.push_back({s, b});
            if (static_cast<int>(out.size()) >= max_simplices) return Filtration(out);
        }
    return Filtration(out);
}


// number of eigenvalues below sigma, from the inertia of an LDL^T factorization
inline int count_below(const Eigen::MatrixXcd& A, double sigma) {
    Eigen::MatrixXcd S = A - sigma * Eigen::MatrixXcd::Identity(A.rows(), A.cols());
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(S);
    int neg = 0;
    for (Eigen::Index i = 0; i < S.rows(); ++i) neg += ldlt.vectorD()[i].real() < 0;
    return neg;
}

inline double bisect_eigenvalue(const Eigen::MatrixXcd& A, int k) {
    double lo = -A.norm() - 1, hi = A.norm() + 1;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (count_below(A, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace testing_util
