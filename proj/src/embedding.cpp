#include "projcoords/embedding.hpp"

#include "projcoords/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace projcoords {

MdsResult classical_mds(const Eigen::MatrixXd& D, int dim) {
    const Eigen::Index n = D.rows();
    if (D.cols() != n) throw InvalidInput("classical_mds: distance matrix must be square");
    if (dim < 1) throw InvalidInput("classical_mds: dim must be positive");
    if (n < dim + 1) throw InvalidInput("classical_mds: need at least dim + 1 points");
    Eigen::MatrixXd sq = D.array().square().matrix();
    Eigen::VectorXd rmean = sq.rowwise().mean();
    Eigen::RowVectorXd cmean = sq.colwise().mean();
    const double mean = sq.mean();
    Eigen::MatrixXd B = -0.5 * ((sq.colwise() - rmean).rowwise() - cmean).array() - 0.5 * mean;
    B = 0.5 * (B + B.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
    if (es.info() != Eigen::Success) throw NumericalFailure("classical_mds: eigensolver failed");
    MdsResult out;
    out.coords.resize(n, dim);
    out.eigenvalues.resize(dim);
    for (int i = 0; i < dim; ++i) {
        const Eigen::Index col = n - 1 - i;  // ascending order from Eigen
        const double lambda = es.eigenvalues()[col];
        out.eigenvalues[i] = lambda;
        if (lambda < 0) out.non_euclidean = true;
        out.coords.col(i) = es.eigenvectors().col(col) * std::sqrt(std::max(lambda, 0.0));
    }
    return out;
}

ProcrustesResult procrustes_2d(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    if (A.rows() != B.rows() || A.cols() != 2 || B.cols() != 2)
        throw InvalidInput("procrustes_2d: need paired 2-D point sets");
    if (A.rows() < 2) throw InvalidInput("procrustes_2d: need at least 2 paired points");
    const Eigen::RowVector2d ma = A.colwise().mean(), mb = B.colwise().mean();
    const Eigen::MatrixXd Ac = A.rowwise() - ma, Bc = B.rowwise() - mb;
    const Eigen::Matrix2d M = Bc.transpose() * Ac;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto s = svd.singularValues();
    if (!(s[0] > 1e-14 * std::max(1.0, Ac.squaredNorm() + Bc.squaredNorm())))
        throw DegenerateError("procrustes_2d: cross-covariance has rank 0");
    ProcrustesResult out;
    out.omega = svd.matrixU() * svd.matrixV().transpose();
    out.shift = mb.transpose() - out.omega * ma.transpose();
    out.det = out.omega.determinant() > 0 ? 1 : -1;
    out.singular_ratio = s[1] / s[0];
    out.residual = ((A * out.omega.transpose()).rowwise() + out.shift.transpose() - B).squaredNorm();
    return out;
}

std::vector<BallEmbedding> embed_balls(const Cover& cover, const Eigen::MatrixXd& D, int dim) {
    if (D.rows() != D.cols()) throw InvalidInput("embed_balls: needs a square distance table");
    cover.validate(D);
    std::vector<BallEmbedding> out(cover.size());
    for (std::size_t i = 0; i < cover.size(); ++i) {
        auto& e = out[i];
        for (Eigen::Index b = 0; b < D.rows(); ++b)
            if (D(b, cover.landmarks[i]) < cover.radii[i]) e.points.push_back(static_cast<int>(b));
        const Eigen::Index m = static_cast<Eigen::Index>(e.points.size());
        if (m < dim + 1)
            throw InvalidInput("embed_balls: ball " + std::to_string(cover.vertex_ids[i]) + " holds only " + std::to_string(m) +
                               " points");
        Eigen::MatrixXd sub(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = D(e.points[a], e.points[b]);
        e.coords = classical_mds(sub, dim).coords;
    }
    return out;
}

namespace {

// Solves A x = rhs over Z/2; returns false if inconsistent. Free variables are 0.
bool solve_mod2(std::vector<std::vector<int>> rows, std::vector<int>& x, std::size_t nvars) {
    // each row: nvars coefficients followed by the right-hand side
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nvars && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            for (std::size_t k = c; k <= nvars; ++k) rows[i][k] ^= rows[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][nvars]) return false;
    x.assign(nvars, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][nvars];
    return true;
}

} // namespace

OrientationResult orientation_cochain(const Cover& cover, const Eigen::MatrixXd& D,
                                      const std::vector<BallEmbedding>& emb, const OrientationOptions& opt) {
    if (emb.size() != cover.size()) throw InvalidInput("orientation_cochain: one embedding per ball required");
    OrientationResult out;
    out.nerve = witness_nerve(cover, D, 2);
    out.omega = Cochain(1, Coefficients::mod(2));
    std::vector<int> pos(cover.coordinate_count, -1);
    for (std::size_t i = 0; i < cover.size(); ++i) pos[cover.vertex_ids[i]] = static_cast<int>(i);

    std::map<Simplex, int> weak;
    for (const auto& e : out.nerve.simplices(1)) {
        const auto& er = emb[pos[e[0]]];
        const auto& et = emb[pos[e[1]]];
        std::vector<int> common;
        std::set_intersection(er.points.begin(), er.points.end(), et.points.begin(), et.points.end(),
                              std::back_inserter(common));
        const int n = static_cast<int>(common.size());
        if (n < 2 && !opt.infer_weak)
            throw CannotAlign("orientation_cochain: balls " + std::to_string(e[0]) + " and " + std::to_string(e[1]) +
                              " share " + std::to_string(n) + " points");
        bool is_weak = n < std::max(2, opt.min_overlap);
        if (!is_weak) {
            Eigen::MatrixXd A(n, 2), B(n, 2);
            for (int i = 0; i < n; ++i) {
                auto ia = std::lower_bound(er.points.begin(), er.points.end(), common[i]) - er.points.begin();
                auto ib = std::lower_bound(et.points.begin(), et.points.end(), common[i]) - et.points.begin();
                A.row(i) = er.coords.row(ia);
                B.row(i) = et.coords.row(ib);
            }
            try {
                auto pr = procrustes_2d(A, B);
                if (pr.singular_ratio < opt.min_singular_ratio) is_weak = true;
                else out.omega.set(e, pr.det < 0 ? 1 : 0);
            } catch (const DegenerateError&) {
                if (!opt.infer_weak) throw;
                is_weak = true;
            }
        }
        if (is_weak) {
            if (!opt.infer_weak)
                throw CannotAlign("orientation_cochain: overlap of balls " + std::to_string(e[0]) + " and " +
                                  std::to_string(e[1]) + " is too small to align");
            const int id = static_cast<int>(weak.size());
            weak.emplace(e, id);
            out.weak_edges.push_back(e);
        }
    }

    if (!weak.empty()) {
        std::vector<std::vector<int>> rows;
        const std::size_t nv = weak.size();
        for (const auto& t : out.nerve.simplices(2)) {
            std::vector<int> row(nv + 1, 0);
            bool touches = false;
            for (int j = 0; j < 3; ++j) {
                Simplex f = facet(t, j);
                auto it = weak.find(f);
                if (it != weak.end()) {
                    row[it->second] ^= 1;
                    touches = true;
                } else {
                    row[nv] ^= static_cast<int>(out.omega[f]);
                }
            }
            if (touches) rows.push_back(std::move(row));
        }
        std::vector<int> x;
        out.weak_consistent = solve_mod2(rows, x, nv);
        if (out.weak_consistent)
            for (auto& [e, id] : weak) out.omega.set(e, x[id]);
    }

    Cochain d = coboundary(out.nerve, out.omega);
    for (auto& [s, v] : d.values) out.violations.push_back(s);
    out.cocycle = out.violations.empty();
    out.coboundary = out.cocycle && is_coboundary(out.nerve, out.omega);
    return out;
}

} // namespace projcoords
