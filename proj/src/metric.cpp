#include "projcoords/metric.hpp"

#include "projcoords/errors.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/connected_components.hpp>
#include <boost/graph/dijkstra_shortest_paths.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace projcoords {

namespace {

// Angle between two unit vectors, stable near 0 and pi.
double unit_angle(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b) {
    double c = a.dot(b);
    double s = (b - c * a).norm();
    return std::atan2(s, c);
}

void require_unit_rows(const PointCloud& p, const char* what) {
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        if (std::abs(p.row(i).norm() - 1.0) > 1e-9)
            throw InvalidInput(std::string(what) + ": point " + std::to_string(i) + " is not unit norm");
    }
}

void require_circle_pairs(const PointCloud& p) {
    if (p.cols() != 4) throw InvalidInput("product_circle_torus: points need 4 coordinates");
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        if (std::abs(p.row(i).head<2>().norm() - 1.0) > 1e-9 || std::abs(p.row(i).tail<2>().norm() - 1.0) > 1e-9)
            throw InvalidInput("product_circle_torus: point " + std::to_string(i) + " has a non-unit factor");
    }
}

void validate(const PointCloud& p, Metric metric) {
    if (p.rows() == 0) throw InvalidInput("empty point set");
    switch (metric) {
    case Metric::round_sphere_rp:
    case Metric::round_sphere:
        require_unit_rows(p, metric_name(metric).c_str());
        break;
    case Metric::product_circle_torus:
        require_circle_pairs(p);
        break;
    case Metric::klein_flat:
        if (p.cols() != 2) throw InvalidInput("klein_flat: points need 2 coordinates");
        break;
    default:
        break;
    }
}

double wrap01(double x) {
    x = std::abs(x - std::floor(x));
    return std::min(x, 1.0 - x);
}

} // namespace

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::euclidean;
    if (name == "flat_torus") return Metric::flat_torus;
    if (name == "round_sphere_rp" || name == "rp") return Metric::round_sphere_rp;
    if (name == "product_circle_torus" || name == "torus") return Metric::product_circle_torus;
    if (name == "klein_flat" || name == "klein") return Metric::klein_flat;
    if (name == "round_sphere" || name == "sphere") return Metric::round_sphere;
    throw InvalidInput("unknown metric '" + name + "'");
}

std::string metric_name(Metric m) {
    switch (m) {
    case Metric::euclidean: return "euclidean";
    case Metric::flat_torus: return "flat_torus";
    case Metric::round_sphere_rp: return "round_sphere_rp";
    case Metric::product_circle_torus: return "product_circle_torus";
    case Metric::klein_flat: return "klein_flat";
    case Metric::round_sphere: return "round_sphere";
    }
    return "?";
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : d_(std::move(entries)) {
    if (d_.rows() != d_.cols()) throw InvalidInput("distance matrix must be square");
    const double tol = 1e-12 * std::max(1.0, d_.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < d_.rows(); ++i) {
        if (d_(i, i) != 0.0) throw InvalidInput("distance matrix has a nonzero diagonal entry at " + std::to_string(i));
        for (Eigen::Index j = 0; j < i; ++j) {
            if (!(d_(i, j) >= 0.0)) throw InvalidInput("distance matrix has a negative or NaN entry");
            if (std::abs(d_(i, j) - d_(j, i)) > tol) throw InvalidInput("distance matrix is not symmetric");
        }
    }
}

double point_distance(const Eigen::Ref<const Eigen::RowVectorXd>& a, const Eigen::Ref<const Eigen::RowVectorXd>& b,
                      Metric metric) {
    switch (metric) {
    case Metric::euclidean:
        return (a - b).norm();
    case Metric::flat_torus: {
        double s = 0.0;
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            double w = wrap01(a[i] - b[i]);
            s += w * w;
        }
        return std::sqrt(s);
    }
    case Metric::round_sphere_rp: {
        double c = a.dot(b);
        Eigen::RowVectorXd bb = c < 0 ? Eigen::RowVectorXd(-b) : Eigen::RowVectorXd(b);
        return unit_angle(a, bb);
    }
    case Metric::round_sphere:
        return unit_angle(a, b);
    case Metric::product_circle_torus: {
        double t1 = unit_angle(a.head<2>(), b.head<2>());
        double t2 = unit_angle(a.tail<2>(), b.tail<2>());
        return std::sqrt(t1 * t1 + t2 * t2);
    }
    case Metric::klein_flat: {
        double best = kInfinity;
        for (int m = -1; m <= 1; ++m) {
            for (int n = -1; n <= 1; ++n) {
                double qx = b[0] + m;
                double qy = (m % 2 != 0 ? 1.0 - b[1] : b[1]) + n;
                best = std::min(best, std::hypot(a[0] - qx, a[1] - qy));
            }
        }
        return best;
    }
    }
    return 0.0;
}

Eigen::MatrixXd cross_distances(const PointCloud& points, const PointCloud& targets, Metric metric) {
    validate(points, metric);
    validate(targets, metric);
    if (points.cols() != targets.cols()) throw InvalidInput("point dimensions differ");
    Eigen::MatrixXd out(points.rows(), targets.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        for (Eigen::Index j = 0; j < targets.rows(); ++j) out(i, j) = point_distance(points.row(i), targets.row(j), metric);
    return out;
}

DistanceMatrix pairwise_distances(const PointCloud& points, Metric metric) {
    validate(points, metric);
    const Eigen::Index n = points.rows();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            double v = point_distance(points.row(i), points.row(j), metric);
            d(i, j) = v;
            d(j, i) = v;
        }
    }
    return DistanceMatrix(std::move(d));
}

DistanceMatrix geodesic_distances(const DistanceMatrix& D, int k) {
    if (k < 1) throw InvalidInput("geodesic_distances: k must be at least 1");
    const int n = static_cast<int>(D.size());
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                        boost::property<boost::edge_weight_t, double>>;
    std::set<std::pair<int, int>> edges;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) {
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0);
        idx.erase(idx.begin() + i);
        const int kk = std::min<int>(k, n - 1);
        std::partial_sort(idx.begin(), idx.begin() + kk, idx.end(), [&](int a, int b) {
            if (D(i, a) != D(i, b)) return D(i, a) < D(i, b);
            return a < b;
        });
        for (int t = 0; t < kk; ++t) edges.emplace(std::min(i, idx[t]), std::max(i, idx[t]));
    }
    Graph g(n);
    for (auto [a, b] : edges) boost::add_edge(a, b, D(a, b), g);

    std::vector<int> component(n);
    int ncomp = n == 0 ? 0 : boost::connected_components(g, component.data());
    if (ncomp > 1)
        throw InvalidInput("geodesic_distances: k-NN graph is disconnected (" + std::to_string(ncomp) + " components)");

    Eigen::MatrixXd out(n, n);
    std::vector<double> dist(n);
    for (int s = 0; s < n; ++s) {
        boost::dijkstra_shortest_paths(g, s, boost::distance_map(dist.data()));
        for (int t = 0; t < n; ++t) out(s, t) = dist[t];
    }
    // Dijkstra sums in different orders from each end; force exact symmetry.
    Eigen::MatrixXd sym = 0.5 * (out + out.transpose());
    sym.diagonal().setZero();
    return DistanceMatrix(std::move(sym));
}

GreedyPermutation maxmin_sample(const Eigen::MatrixXd& D, int count, int seed) {
    const int n = static_cast<int>(D.rows());
    if (D.cols() != D.rows()) throw InvalidInput("maxmin_sample: distance matrix must be square");
    if (count < 1 || count > n) throw InvalidInput("maxmin_sample: count must be in [1, number of points]");
    if (seed < 0 || seed >= n) throw InvalidInput("maxmin_sample: seed index out of range");
    GreedyPermutation perm;
    perm.order.push_back(seed);
    perm.insertion_radii.push_back(kInfinity);
    Eigen::VectorXd mind = D.row(seed).transpose();
    for (int s = 1; s < count; ++s) {
        int best = -1;
        double bestv = -1.0;
        for (int i = 0; i < n; ++i) {
            if (mind[i] > bestv) {
                bestv = mind[i];
                best = i;
            }
        }
        if (!(bestv > 0.0))
            throw InvalidInput("maxmin_sample: only " + std::to_string(s) + " distinct points available");
        perm.order.push_back(best);
        perm.insertion_radii.push_back(bestv);
        mind = mind.cwiseMin(D.row(best).transpose());
    }
    return perm;
}

GreedyPermutation maxmin_sample(const DistanceMatrix& D, int count, int seed) {
    return maxmin_sample(D.entries(), count, seed);
}

std::vector<double> nearest_landmark_distances(const Eigen::MatrixXd& L) {
    std::vector<double> out(L.rows(), kInfinity);
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        for (Eigen::Index j = 0; j < L.cols(); ++j)
            if (i != j) out[i] = std::min(out[i], L(i, j));
    return out;
}

} // namespace projcoords
