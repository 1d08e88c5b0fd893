#include "projcoords/filtration.hpp"

#include "projcoords/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace projcoords {

Cover Cover::fixed(std::vector<int> landmarks, std::vector<double> radii) {
    Cover c;
    c.landmarks = std::move(landmarks);
    c.radii = std::move(radii);
    c.vertex_ids.resize(c.landmarks.size());
    for (std::size_t i = 0; i < c.vertex_ids.size(); ++i) c.vertex_ids[i] = static_cast<int>(i);
    c.coordinate_count = static_cast<int>(c.landmarks.size());
    return c;
}

void Cover::validate(const Eigen::MatrixXd& dist) const {
    if (landmarks.size() != radii.size() || landmarks.size() != vertex_ids.size())
        throw InvalidInput("cover: landmarks, radii and vertex ids differ in length");
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
        if (landmarks[i] < 0 || landmarks[i] >= dist.cols())
            throw InvalidInput("cover: landmark index " + std::to_string(landmarks[i]) + " out of range");
        if (!(radii[i] > 0)) throw InvalidInput("cover: radius " + std::to_string(i) + " is not positive");
        if (vertex_ids[i] < 0 || vertex_ids[i] >= coordinate_count)
            throw InvalidInput("cover: vertex id out of range of coordinate_count");
    }
    for (int w : witnesses)
        if (w < 0 || w >= dist.rows()) throw InvalidInput("cover: witness index " + std::to_string(w) + " out of range");
}

std::vector<int> Cover::members(const Eigen::MatrixXd& dist, int b) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < landmarks.size(); ++i)
        if (dist(b, landmarks[i]) < radii[i]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<double> nearest_landmark_radii(const Eigen::MatrixXd& landmark_distances, double factor) {
    auto r = nearest_landmark_distances(landmark_distances);
    for (double& x : r) x *= factor;
    return r;
}

double cone_radius(double alpha, double eps, double lambda) {
    if (std::isinf(lambda)) return alpha;
    const double a = lambda * (1 + eps) / eps;
    const double b = lambda * (1 + eps) * (1 + eps) / eps;
    if (alpha < a) return alpha;
    if (alpha <= b) return a;
    return 0.0;
}

std::optional<double> edge_birth(double ls, double lt, double d, double eps) {
    if (d <= 0) return 0.0;
    auto f = [&](double x) { return cone_radius(x, eps, ls) + cone_radius(x, eps, lt); };
    std::vector<double> pts{0.0};
    for (double l : {ls, lt}) {
        if (std::isinf(l)) continue;
        pts.push_back(l * (1 + eps) / eps);
        pts.push_back(l * (1 + eps) * (1 + eps) / eps);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // f is piecewise linear, continuous from the left, dropping only at the b-points.
    std::optional<double> best;
    auto take = [&](double x) {
        if (!best || x < *best) best = x;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double lo = pts[i];
        const bool last = i + 1 == pts.size();
        const double hi = last ? kInfinity : pts[i + 1];
        const double mid = last ? lo + 1.0 : 0.5 * (lo + hi);
        double slope = 0;
        for (double l : {ls, lt})
            if (std::isinf(l) || mid < l * (1 + eps) / eps) slope += 1;
        const double offset = f(mid) - slope * mid;
        if (f(lo) >= d) take(lo);
        if (slope == 0) {
            if (offset >= d) take(lo);
        } else {
            double x = (d - offset) / slope;
            if (x <= lo) take(lo);
            else if (x < hi) take(x);
        }
        if (!last && f(hi) >= d) take(hi);
        if (best && *best <= lo) break;
    }
    return best;
}

Filtration sparse_rips(const GreedyPermutation& perm, const Eigen::MatrixXd& D, double eps, int max_dim) {
    if (!(eps > 0 && eps < 1)) throw InvalidInput("sparse_rips: sparsity must lie in (0, 1)");
    if (max_dim < 1 || max_dim > 3) throw InvalidInput("sparse_rips: max_dim must be 1, 2 or 3");
    const int n = static_cast<int>(perm.size());
    std::vector<std::vector<double>> birth(n, std::vector<double>(n, -1.0));
    std::vector<FilteredSimplex> out;
    for (int s = 0; s < n; ++s) out.push_back({{s}, 0.0});
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            auto b = edge_birth(perm.insertion_radii[s], perm.insertion_radii[t], D(perm.order[s], perm.order[t]), eps);
            if (!b) continue;
            birth[s][t] = birth[t][s] = *b;
            out.push_back({{s, t}, *b});
        }
    }
    // cliques, extending sorted vertex lists by larger neighbours
    std::vector<std::pair<Simplex, double>> frontier;
    for (auto& fs : out)
        if (fs.vertices.size() == 2) frontier.emplace_back(fs.vertices, fs.birth);
    for (int d = 2; d <= max_dim; ++d) {
        std::vector<std::pair<Simplex, double>> next;
        for (auto& [s, b] : frontier) {
            for (int v = s.back() + 1; v < n; ++v) {
                double nb = b;
                bool ok = true;
                for (int u : s) {
                    if (birth[u][v] < 0) {
                        ok = false;
                        break;
                    }
                    nb = std::max(nb, birth[u][v]);
                }
                if (!ok) continue;
                Simplex t = s;
                t.push_back(v);
                next.emplace_back(t, nb);
                out.push_back({t, nb});
            }
        }
        frontier = std::move(next);
    }
    Filtration F(std::move(out));
    F.sparsity = eps;
    return F;
}

SimplicialComplex witness_nerve(const Cover& cover, const Eigen::MatrixXd& dist, int max_dim) {
    cover.validate(dist);
    SimplicialComplex K(max_dim);
    std::set<Simplex> seen;
    auto visit = [&](int b) {
        Simplex verts;
        for (int i : cover.members(dist, b)) verts.push_back(cover.vertex_ids[i]);
        std::sort(verts.begin(), verts.end());
        if (verts.empty() || !seen.insert(verts).second) return;
        if (simplex_dim(verts) <= max_dim) {
            K.insert(verts);
            return;
        }
        // all (max_dim+1)-subsets
        const int m = static_cast<int>(verts.size());
        const int k = max_dim + 1;
        std::vector<int> pick(k);
        for (int i = 0; i < k; ++i) pick[i] = i;
        while (true) {
            Simplex s(k);
            for (int i = 0; i < k; ++i) s[i] = verts[pick[i]];
            K.insert(s);
            int i = k - 1;
            while (i >= 0 && pick[i] == m - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    };
    if (cover.witnesses.empty()) {
        for (int b = 0; b < dist.rows(); ++b) visit(b);
    } else {
        for (int b : cover.witnesses) visit(b);
    }
    return K;
}

Cover cover_at_scale(const GreedyPermutation& perm, double eps, double alpha) {
    if (!(alpha > 0)) throw InvalidInput("cover_at_scale: alpha must be positive");
    if (!(eps > 0 && eps < 1)) throw InvalidInput("cover_at_scale: sparsity must lie in (0, 1)");
    Cover c;
    c.coordinate_count = static_cast<int>(perm.size());
    for (std::size_t s = 0; s < perm.size(); ++s) {
        double r = cone_radius(alpha, eps, perm.insertion_radii[s]);
        if (r <= 0) continue;
        c.landmarks.push_back(perm.order[s]);
        c.radii.push_back(r);
        c.vertex_ids.push_back(static_cast<int>(s));
    }
    return c;
}

} // namespace projcoords
