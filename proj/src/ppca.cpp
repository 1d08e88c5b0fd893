#include "projcoords/ppca.hpp"

#include "projcoords/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>

namespace projcoords {

namespace {

constexpr double kHalfPi = 1.5707963267948966;
constexpr double kDropTol = 1e-12;

using cd = std::complex<double>;

} // namespace

ProjectiveCloud ProjectiveCloud::from_columns(Field field, Eigen::MatrixXcd columns) {
    for (Eigen::Index j = 0; j < columns.cols(); ++j) {
        double n = columns.col(j).norm();
        if (!(n > 0)) throw InvalidInput("projective cloud: point " + std::to_string(j) + " is the zero vector");
        columns.col(j) /= n;
    }
    if (field == Field::real) columns = columns.real().cast<cd>();
    return {field, std::move(columns)};
}

ProjectiveCloud ProjectiveCloud::from_real_rows(const Eigen::MatrixXd& rows) {
    return from_columns(Field::real, rows.transpose().cast<cd>());
}

Eigen::VectorXcd canonical_representative(const Eigen::VectorXcd& v) {
    const double n = v.norm();
    if (!(n > 0)) throw InvalidInput("zero vector has no projective class");
    Eigen::VectorXcd u = v / n;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u[i]) > 1e-9) {
            u *= std::conj(u[i]) / std::abs(u[i]);
            u[i] = std::abs(u[i]);
            break;
        }
    }
    return u;
}

HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& input) {
    if (input.rows() != input.cols()) throw InvalidInput("jacobi_eigen: matrix must be square");
    const Eigen::Index n = input.rows();
    Eigen::MatrixXcd A = 0.5 * (input + input.adjoint());
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(n, n);
    const double total = A.norm();
    HermitianEigen out;
    auto off = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j)
                if (i != j) s += std::norm(A(i, j));
        return std::sqrt(s);
    };
    const int max_sweeps = 100;
    while (total > 0 && off() > 1e-13 * total) {
        if (out.sweeps == max_sweeps) throw NumericalFailure("jacobi_eigen: no convergence after 100 sweeps");
        ++out.sweeps;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const cd apq = A(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cd phase = apq / mag;
                const double theta = (A(q, q).real() - A(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cd jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cd akp = A(k, p), akq = A(k, q);
                    A(k, p) = akp * jpp + akq * jqp;
                    A(k, q) = akp * jpq + akq * jqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cd apk = A(p, k), aqk = A(q, k);
                    A(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    A(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                A(p, p) = A(p, p).real();
                A(q, q) = A(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cd vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = vkp * jpp + vkq * jqp;
                    V(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return A(a, a).real() < A(b, b).real(); });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = A(order[i], order[i]).real();
        out.vectors.col(i) = canonical_representative(V.col(order[i]));
    }
    return out;
}

double proj_distance(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
    const double nu = u.norm(), nv = v.norm();
    if (!(nu > 0) || !(nv > 0)) throw InvalidInput("proj_distance: zero vector");
    if (u.size() != v.size()) throw InvalidInput("proj_distance: length mismatch");
    const Eigen::VectorXcd a = u / nu, b = v / nv;
    const cd ip = a.dot(b);  // conj(a) . b
    const double c = std::min(1.0, std::abs(ip));
    const double s = (b - ip * a).norm();
    return std::atan2(std::min(1.0, s), c);
}

LastComponent last_proj_comp(const ProjectiveCloud& Y) {
    if (Y.size() < 1) throw InvalidInput("last_proj_comp: empty cloud");
    Eigen::MatrixXcd cov = Y.points * Y.points.adjoint();
    LastComponent out;
    out.eigen = jacobi_eigen(cov);
    out.v = out.eigen.vectors.col(0);
    if (Y.field == Field::real) out.v = canonical_representative(out.v.real().cast<cd>());
    const auto& ev = out.eigen.values;
    const double scale = std::max(1.0, std::abs(ev[ev.size() - 1]));
    out.multiple = ev.size() > 1 && ev[1] - ev[0] <= 1e-10 * scale;
    for (int j = 0; j < Y.size(); ++j) {
        double d = kHalfPi - proj_distance(Y.points.col(j), out.v);
        out.objective += d * d;
    }
    return out;
}

ComponentBasis prin_proj_comps(const ProjectiveCloud& Y, const BasisRotation& rotate) {
    if (Y.size() < 1) throw InvalidInput("prin_proj_comps: empty cloud");
    const int n = Y.dim();
    ComponentBasis out;
    out.field = Y.field;
    out.vectors = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n + 1, n + 1);
    for (int k = n; k >= 1; --k) {
        Eigen::MatrixXcd Z = A.adjoint() * Y.points;
        std::vector<Eigen::Index> keep;
        for (Eigen::Index j = 0; j < Z.cols(); ++j)
            if (Z.col(j).norm() > kDropTol) keep.push_back(j);
        out.dropped.push_back(static_cast<int>(Z.cols() - static_cast<Eigen::Index>(keep.size())));
        Eigen::MatrixXcd W;
        if (keep.empty()) {
            W = Eigen::MatrixXcd::Identity(k + 1, k + 1);
            out.ladders.push_back(Eigen::VectorXd::Zero(k + 1));
            ++out.multiple_stages;
        } else {
            Eigen::MatrixXcd kept(Z.rows(), static_cast<Eigen::Index>(keep.size()));
            for (std::size_t i = 0; i < keep.size(); ++i) kept.col(i) = Z.col(keep[i]);
            auto stage = last_proj_comp(ProjectiveCloud::from_columns(Y.field, kept));
            out.ladders.push_back(stage.eigen.values);
            if (stage.multiple) ++out.multiple_stages;
            W = stage.eigen.vectors;
            W.col(0) = stage.v;
            if (Y.field == Field::real) W = W.real().cast<cd>();
        }
        out.vectors.col(k) = canonical_representative(A * W.col(0));
        A = A * W.rightCols(k);
        if (rotate) A = rotate(A);
    }
    out.vectors.col(0) = canonical_representative(A.col(0));
    if (Y.field == Field::real) out.vectors = out.vectors.real().cast<cd>();
    return out;
}

Projection project_to_k(const ProjectiveCloud& Y, const ComponentBasis& B, int k) {
    const int n = Y.dim();
    if (k < 1 || k > n) throw InvalidInput("project_to_k: k must lie in [1, n]");
    if (B.vectors.rows() != n + 1) throw InvalidInput("project_to_k: basis does not match the cloud");
    Eigen::MatrixXcd coeff = B.vectors.leftCols(k + 1).adjoint() * Y.points;
    Projection out;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < coeff.cols(); ++j) {
        if (coeff.col(j).norm() > kDropTol) keep.push_back(j);
        else ++out.dropped;
    }
    if (keep.empty()) throw InvalidInput("project_to_k: every point is orthogonal to the target subspace");
    Eigen::MatrixXcd kept(k + 1, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        kept.col(i) = coeff.col(keep[i]);
        out.kept.push_back(static_cast<int>(keep[i]));
    }
    out.cloud = ProjectiveCloud::from_columns(Y.field, std::move(kept));
    return out;
}

VarianceProfile variance_profile(const ProjectiveCloud& Y, const ComponentBasis& B) {
    const int n = Y.dim();
    if (B.vectors.rows() != n + 1) throw InvalidInput("variance_profile: basis does not match the cloud");
    if (n < 1) throw InvalidInput("variance_profile: need projective dimension at least 1");
    Eigen::MatrixXcd c = B.vectors.adjoint() * Y.points;
    VarianceProfile out;
    double acc = 0.0;
    for (int l = 1; l <= n; ++l) {
        double sum = 0.0;
        for (int j = 0; j < Y.size(); ++j) {
            double head = c.col(j).head(l + 1).norm();
            if (head <= kDropTol) {
                ++out.dropped;
                continue;
            }
            double a = std::asin(std::min(1.0, std::abs(c(l, j)) / head));
            sum += a * a;
        }
        acc += sum / Y.size();
        out.var.push_back(acc);
    }
    const double total = out.var.back();
    if (total <= 0) {
        out.degenerate = true;
        out.pvar.assign(n, 1.0);
    } else {
        for (double v : out.var) out.pvar.push_back(v / total);
    }
    return out;
}

Eigen::MatrixXd viz_rp_disk(const ProjectiveCloud& coefficients) {
    const int k = coefficients.dim();
    if (k < 1 || k > 3) throw InvalidInput("viz_rp_disk: k must be 1, 2 or 3");
    Eigen::MatrixXd out(coefficients.size(), k);
    for (int j = 0; j < coefficients.size(); ++j) {
        Eigen::VectorXd x = coefficients.points.col(j).real();
        x /= x.norm();
        if (x[0] < 0) x = -x;
        for (int i = 0; i < k; ++i) out(j, i) = x[i + 1] / (1.0 + x[0]);
    }
    return out;
}

Eigen::MatrixXd viz_cp1_hopf(const ProjectiveCloud& coefficients) {
    if (coefficients.dim() != 1) throw InvalidInput("viz_cp1_hopf: needs points of CP^1");
    Eigen::MatrixXd out(coefficients.size(), 3);
    for (int j = 0; j < coefficients.size(); ++j) {
        Eigen::Vector2cd z = coefficients.points.col(j);
        z /= z.norm();
        cd w = 2.0 * z[0] * std::conj(z[1]);
        out(j, 0) = w.real();
        out(j, 1) = w.imag();
        out(j, 2) = std::norm(z[0]) - std::norm(z[1]);
    }
    return out;
}

DimensionChoice choose_dimension(const VarianceProfile& profile, double threshold) {
    const auto& p = profile.pvar;
    if (p.empty()) throw InvalidInput("choose_dimension: empty profile");
    DimensionChoice out;
    out.k = static_cast<int>(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > threshold) {
            out.k = static_cast<int>(i) + 1;
            break;
        }
    }
    // largest drop in increment, with p(0) = 0; ties go to the smallest k
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        double prev = i == 0 ? 0.0 : p[i - 1];
        double second = (p[i] - prev) - (p[i + 1] - p[i]);
        if (second > best + 1e-12) {
            best = second;
            out.elbow = static_cast<int>(i) + 1;
        }
    }
    return out;
}

} // namespace projcoords
