#include "projcoords/cohomology.hpp"

#include "projcoords/errors.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <limits>

namespace projcoords {

namespace {

long long mod_pow(long long a, long long e, long long p) {
    long long r = 1;
    a %= p;
    while (e > 0) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

int inverse_mod(int a, int p) { return static_cast<int>(mod_pow(a, p - 2, p)); }

int reduce(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

void require_same(const Cochain& a, const Cochain& b) {
    if (a.dim != b.dim || !(a.coefficients == b.coefficients))
        throw InvalidInput("cochains differ in dimension or coefficients");
}

} // namespace

Coefficients Coefficients::mod(int p) {
    if (!is_prime(p)) throw InvalidInput("coefficient modulus " + std::to_string(p) + " is not prime");
    return {Kind::mod_p, p};
}

double Coefficients::normalize(double v) const {
    if (kind != Kind::mod_p) return v;
    return reduce(static_cast<long long>(std::llround(v)), p);
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

double Cochain::operator[](const Simplex& s) const {
    auto it = values.find(s);
    return it == values.end() ? 0.0 : it->second;
}

void Cochain::set(Simplex s, double v) {
    if (simplex_dim(s) != dim) throw InvalidInput("cochain: simplex " + to_string(s) + " has the wrong dimension");
    const int sign = sort_with_sign(s);
    if (sign == 0) throw InvalidInput("cochain: simplex " + to_string(s) + " repeats a vertex");
    v = coefficients.normalize(sign * v);
    if (v == 0.0) values.erase(s);
    else values[std::move(s)] = v;
}

void Cochain::add(Simplex s, double v) {
    const int sign = sort_with_sign(s);
    if (sign == 0) return;
    set(s, (*this)[s] + sign * v);
}

double Cochain::oriented(const Simplex& ordered) const {
    Simplex s = ordered;
    int sign = sort_with_sign(s);
    if (sign == 0) return 0.0;
    double v = (*this)[s];
    if (coefficients.kind == Coefficients::Kind::mod_p) return coefficients.normalize(sign * v);
    return sign * v;
}

Cochain Cochain::as(Coefficients c) const {
    Cochain out(dim, c);
    for (auto& [s, v] : values) {
        double w = v;
        if (coefficients.kind == Coefficients::Kind::real && c.kind != Coefficients::Kind::real) {
            if (std::abs(w - std::round(w)) > 1e-9)
                throw InvalidInput("cochain value " + std::to_string(w) + " is not an integer");
            w = std::round(w);
        }
        out.set(s, w);
    }
    return out;
}

Cochain indicator(const Simplex& s, Coefficients c) {
    Cochain out(simplex_dim(s), c);
    out.set(s, 1.0);
    return out;
}

double inner_product(const Cochain& a, const Cochain& b) {
    double s = 0.0;
    for (auto& [k, v] : a.values) s += v * b[k];
    return s;
}

double norm(const Cochain& c) { return std::sqrt(inner_product(c, c)); }

Cochain operator+(const Cochain& a, const Cochain& b) {
    require_same(a, b);
    Cochain out = a;
    for (auto& [s, v] : b.values) out.set(s, out[s] + v);
    return out;
}

Cochain operator-(const Cochain& a, const Cochain& b) {
    require_same(a, b);
    Cochain out = a;
    for (auto& [s, v] : b.values) out.set(s, out[s] - v);
    return out;
}

Cochain operator*(double s, const Cochain& c) {
    Cochain out(c.dim, c.coefficients);
    for (auto& [k, v] : c.values) out.set(k, s * v);
    return out;
}

Eigen::SparseMatrix<double> coboundary_matrix(const SimplicialComplex& K, int k) {
    const auto& rows = K.simplices(k + 1);
    const auto& cols = K.simplices(k);
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int j = 0; j <= k + 1; ++j) {
            int c = K.index_of(facet(rows[r], j));
            trip.emplace_back(static_cast<int>(r), c, (j % 2 == 0) ? 1.0 : -1.0);
        }
    }
    Eigen::SparseMatrix<double> M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

Cochain coboundary(const SimplicialComplex& K, const Cochain& c) {
    if (c.dim + 1 > K.max_dim()) throw InvalidInput("coboundary: complex has no simplices of dimension " + std::to_string(c.dim + 1));
    Cochain out(c.dim + 1, c.coefficients);
    for (const auto& s : K.simplices(c.dim + 1)) {
        double v = 0.0;
        for (int j = 0; j <= c.dim + 1; ++j) {
            double f = c[facet(s, j)];
            v += (j % 2 == 0) ? f : -f;
        }
        if (v != 0.0) out.set(s, v);
    }
    return out;
}

Cochain adjoint_coboundary(const SimplicialComplex& K, const Cochain& c) {
    if (c.dim < 1) throw InvalidInput("adjoint_coboundary: cochain dimension must be at least 1");
    if (c.coefficients.kind != Coefficients::Kind::real) throw InvalidInput("adjoint_coboundary: needs real coefficients");
    Cochain out(c.dim - 1, c.coefficients);
    std::map<Simplex, double> acc;
    for (auto& [s, v] : c.values) {
        if (!K.contains(s)) throw InvalidInput("adjoint_coboundary: simplex " + to_string(s) + " is not in the complex");
        for (int j = 0; j <= c.dim; ++j) acc[facet(s, j)] += (j % 2 == 0) ? v : -v;
    }
    for (auto& [s, v] : acc)
        if (v != 0.0) out.set(s, v);
    return out;
}

bool is_cocycle(const SimplicialComplex& K, const Cochain& c, double tol) {
    if (c.dim + 1 > K.max_dim()) return true;
    Cochain d = coboundary(K, c);
    for (auto& [s, v] : d.values)
        if (std::abs(v) > tol) return false;
    return true;
}

int rank_mod_p(std::vector<std::vector<int>> m, int p) {
    if (m.empty()) return 0;
    const std::size_t ncols = m[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < ncols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t piv = rank;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        const int inv = inverse_mod(m[rank][c], p);
        for (auto& x : m[rank]) x = static_cast<int>(static_cast<long long>(x) * inv % p);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || m[r][c] == 0) continue;
            const long long f = m[r][c];
            for (std::size_t k = c; k < ncols; ++k) m[r][k] = reduce(m[r][k] - f * m[rank][k], p);
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::vector<int>> dense_coboundary(const SimplicialComplex& K, int k, int p) {
    const auto& rows = K.simplices(k + 1);
    std::vector<std::vector<int>> m(rows.size(), std::vector<int>(K.count(k), 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (int j = 0; j <= k + 1; ++j) m[r][K.index_of(facet(rows[r], j))] = reduce(j % 2 == 0 ? 1 : -1, p);
    return m;
}

} // namespace

bool is_coboundary(const SimplicialComplex& K, const Cochain& c) {
    if (c.coefficients.kind != Coefficients::Kind::mod_p) throw InvalidInput("is_coboundary: needs Z/p coefficients");
    const int p = c.coefficients.p;
    const int k = c.dim;
    const auto& simplices = K.simplices(k);
    for (auto& [s, v] : c.values)
        if (!K.contains(s)) throw InvalidInput("is_coboundary: simplex " + to_string(s) + " is not in the complex");
    if (k == 0) return c.values.empty();
    auto m = dense_coboundary(K, k - 1, p);
    const int base = rank_mod_p(m, p);
    for (std::size_t r = 0; r < simplices.size(); ++r) m[r].push_back(static_cast<int>(c[simplices[r]]));
    return rank_mod_p(std::move(m), p) == base;
}

int betti_rank(const SimplicialComplex& K, int p, int dim) {
    if (!is_prime(p)) throw InvalidInput("betti_rank: " + std::to_string(p) + " is not prime");
    if (dim < 0 || dim + 1 > K.max_dim()) throw InvalidInput("betti_rank: complex must contain dimension dim+1");
    const int n = static_cast<int>(K.count(dim));
    const int rk = rank_mod_p(dense_coboundary(K, dim, p), p);
    const int rprev = dim == 0 ? 0 : rank_mod_p(dense_coboundary(K, dim - 1, p), p);
    return n - rk - rprev;
}

double Interval::persistence() const { return death ? *death - birth : std::numeric_limits<double>::infinity(); }

std::vector<std::size_t> Barcode::by_persistence(int dim) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].dim == dim) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return intervals[a].persistence() > intervals[b].persistence(); });
    return idx;
}

int Barcode::count_alive(int dim, double alpha) const {
    int n = 0;
    for (auto& iv : intervals)
        if (iv.dim == dim && iv.birth <= alpha && (!iv.death || alpha < *iv.death)) ++n;
    return n;
}

namespace {

using SparseCocycle = std::vector<std::pair<int, int>>;  // (simplex index, value), sorted by index

int lookup(const SparseCocycle& z, int idx) {
    auto it = std::lower_bound(z.begin(), z.end(), std::make_pair(idx, 0));
    return (it != z.end() && it->first == idx) ? it->second : 0;
}

// z - f * y
SparseCocycle axpy(const SparseCocycle& z, int f, const SparseCocycle& y, int p) {
    SparseCocycle out;
    out.reserve(z.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < z.size() || j < y.size()) {
        if (j == y.size() || (i < z.size() && z[i].first < y[j].first)) {
            out.push_back(z[i++]);
        } else if (i == z.size() || y[j].first < z[i].first) {
            int v = reduce(-static_cast<long long>(f) * y[j].second, p);
            if (v) out.emplace_back(y[j].first, v);
            ++j;
        } else {
            int v = reduce(z[i].second - static_cast<long long>(f) * y[j].second, p);
            if (v) out.emplace_back(z[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

struct Live {
    int creator;
    SparseCocycle z;
};

} // namespace

Barcode persistent_cohomology(const Filtration& F, int p, int max_dim) {
    if (!is_prime(p)) throw InvalidInput("persistent_cohomology: " + std::to_string(p) + " is not prime");
    if (max_dim < 0) throw InvalidInput("persistent_cohomology: max_dim must be nonnegative");
    std::vector<const FilteredSimplex*> simplices;
    for (auto& fs : F.simplices())
        if (simplex_dim(fs.vertices) <= max_dim + 1) simplices.push_back(&fs);
    std::map<Simplex, int> index;
    for (std::size_t i = 0; i < simplices.size(); ++i) index.emplace(simplices[i]->vertices, static_cast<int>(i));

    const Coefficients coeff = Coefficients::mod(p);
    auto to_cochain = [&](const SparseCocycle& z, int dim) {
        Cochain c(dim, coeff);
        for (auto& [i, v] : z) c.set(simplices[i]->vertices, v);
        return c;
    };

    Barcode out;
    std::vector<std::vector<Live>> live(max_dim + 1);
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        const Simplex& s = simplices[i]->vertices;
        const int k = simplex_dim(s);
        std::vector<int> faces;
        for (int j = 0; j <= k && k > 0; ++j) faces.push_back(index.at(facet(s, j)));

        // values of the live (k-1)-cocycles on the boundary of s
        int youngest = -1, youngest_value = 0;
        std::vector<int> vals;
        if (k > 0) {
            auto& L = live[k - 1];
            vals.assign(L.size(), 0);
            for (std::size_t c = 0; c < L.size(); ++c) {
                long long v = 0;
                for (int j = 0; j <= k; ++j) {
                    int x = lookup(L[c].z, faces[j]);
                    v += (j % 2 == 0) ? x : -x;
                }
                vals[c] = reduce(v, p);
                if (vals[c] != 0 && (youngest < 0 || L[c].creator > L[youngest].creator)) youngest = static_cast<int>(c);
            }
            if (youngest >= 0) youngest_value = vals[youngest];
        }

        if (youngest < 0) {
            if (k <= max_dim) live[k].push_back({static_cast<int>(i), {{static_cast<int>(i), 1}}});
            continue;
        }

        auto& L = live[k - 1];
        const Live dying = L[youngest];
        const double birth = simplices[dying.creator]->birth;
        const double death = simplices[i]->birth;
        if (death > birth) out.intervals.push_back({k - 1, birth, death, to_cochain(dying.z, k - 1)});
        const int inv = inverse_mod(youngest_value, p);
        for (std::size_t c = 0; c < L.size(); ++c) {
            if (static_cast<int>(c) == youngest || vals[c] == 0) continue;
            int f = static_cast<int>(static_cast<long long>(vals[c]) * inv % p);
            L[c].z = axpy(L[c].z, f, dying.z, p);
        }
        L.erase(L.begin() + youngest);
    }
    for (int d = 0; d <= max_dim; ++d)
        for (auto& l : live[d]) out.intervals.push_back({d, simplices[l.creator]->birth, std::nullopt, to_cochain(l.z, d)});

    std::stable_sort(out.intervals.begin(), out.intervals.end(), [](const Interval& a, const Interval& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.birth < b.birth;
    });
    return out;
}

Cochain lift_to_integers(const Cochain& c, const SimplicialComplex& K) {
    if (c.coefficients.kind != Coefficients::Kind::mod_p) throw InvalidInput("lift_to_integers: needs Z/p coefficients");
    if (!is_cocycle(K, c)) throw InvalidInput("lift_to_integers: input is not a cocycle mod p");
    const int p = c.coefficients.p;
    Cochain out(c.dim, Coefficients::integers());
    for (auto& [s, v] : c.values) {
        int r = static_cast<int>(v);
        if (2 * r > p) r -= p;
        out.set(s, r);
    }
    if (c.dim + 1 <= K.max_dim()) {
        Cochain d = coboundary(K, out);
        if (!d.values.empty()) {
            const auto& [s, v] = *d.values.begin();
            throw LiftError("integer lift is not a cocycle: coboundary is " + std::to_string(static_cast<long long>(v)) +
                            " on " + to_string(s));
        }
    }
    return out;
}

HarmonicPair harmonic_smoothing(const Cochain& eta, const SimplicialComplex& K) {
    const int k = eta.dim;
    if (k < 1 || k > K.max_dim()) throw InvalidInput("harmonic_smoothing: cochain dimension out of range");
    if (eta.coefficients.kind == Coefficients::Kind::mod_p) throw InvalidInput("harmonic_smoothing: lift to integers first");
    for (auto& [s, v] : eta.values)
        if (!K.contains(s)) throw InvalidInput("harmonic_smoothing: simplex " + to_string(s) + " is not in the complex");
    if (!is_cocycle(K, eta, 1e-9)) throw InvalidInput("harmonic_smoothing: input is not a cocycle");

    const auto& faces = K.simplices(k - 1);
    const auto& cells = K.simplices(k);
    Eigen::SparseMatrix<double> delta = coboundary_matrix(K, k - 1);
    Eigen::VectorXd e(static_cast<Eigen::Index>(cells.size()));
    for (std::size_t i = 0; i < cells.size(); ++i) e[i] = eta[cells[i]];

    Eigen::SparseMatrix<double> normal = delta.transpose() * delta;
    Eigen::VectorXd rhs = delta.transpose() * e;
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper, Eigen::IdentityPreconditioner> cg;
    cg.setTolerance(1e-12);
    cg.setMaxIterations(std::max<int>(1, 10 * static_cast<int>(faces.size())));
    cg.compute(normal);
    Eigen::VectorXd x = cg.solveWithGuess(rhs, Eigen::VectorXd::Zero(rhs.size()));

    HarmonicPair out;
    out.iterations = static_cast<int>(cg.iterations());
    out.nu = Cochain(k - 1, Coefficients::reals());
    for (std::size_t i = 0; i < faces.size(); ++i) out.nu.set(faces[i], x[i]);
    Eigen::VectorXd theta = e - delta * x;
    out.theta = Cochain(k, Coefficients::reals());
    for (std::size_t i = 0; i < cells.size(); ++i) out.theta.set(cells[i], theta[i]);

    // Laplacian of theta: d delta theta + delta d theta
    Eigen::VectorXd lap = delta * (delta.transpose() * theta);
    if (k + 1 <= K.max_dim() && K.count(k + 1) > 0) {
        Eigen::SparseMatrix<double> up = coboundary_matrix(K, k);
        lap += up.transpose() * (up * theta);
    }
    out.laplacian_residual = lap.norm();
    if (out.laplacian_residual > 1e-9 * (1.0 + e.norm()))
        throw NumericalFailure("harmonic_smoothing: Laplacian residual " + std::to_string(out.laplacian_residual) +
                               " after " + std::to_string(out.iterations) + " CG iterations");
    return out;
}

} // namespace projcoords
