#include "projcoords/classifying_maps.hpp"

#include "projcoords/errors.hpp"

#include <cmath>
#include <complex>

namespace projcoords {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586;

int parity(double v) { return static_cast<int>(std::llabs(std::llround(v)) % 2); }

} // namespace

double BumpSpec::phi(double x) const {
    if (x <= 0) return 0.0;
    switch (shape) {
    case Shape::triangular: return x;
    case Shape::polynomial: return std::pow(x, exponent);
    case Shape::gaussian: return std::exp(-1.0 / (x * x));
    case Shape::logarithmic: return std::log1p(x);
    }
    return 0.0;
}

BumpSpec BumpSpec::quadratic(const Cover& cover) {
    BumpSpec b;
    b.shape = Shape::polynomial;
    b.exponent = 2.0;
    for (double r : cover.radii) b.weights.push_back(r * r);
    return b;
}

BumpSpec BumpSpec::parse(const std::string& name, const Cover& cover) {
    if (name == "quadratic") return quadratic(cover);
    BumpSpec b;
    if (name == "triangular") b.shape = Shape::triangular;
    else if (name == "gaussian") b.shape = Shape::gaussian;
    else if (name == "logarithmic") b.shape = Shape::logarithmic;
    else if (name.rfind("polynomial", 0) == 0) {
        b.shape = Shape::polynomial;
        auto colon = name.find(':');
        b.exponent = colon == std::string::npos ? 2.0 : std::stod(name.substr(colon + 1));
        if (!(b.exponent > 0)) throw InvalidInput("bump exponent must be positive");
    } else {
        throw InvalidInput("unknown bump '" + name + "'");
    }
    return b;
}

MapData MapData::real(Cochain tau) {
    if (tau.dim != 1) throw InvalidInput("real map needs a 1-cochain");
    MapData d;
    d.field = Field::real;
    d.tau = std::move(tau);
    return d;
}

MapData MapData::complex(Cochain theta, Cochain nu) {
    if (theta.dim != 2 || nu.dim != 1) throw InvalidInput("complex map needs a 2-cochain theta and a 1-cochain nu");
    MapData d;
    d.field = Field::complex;
    d.theta = theta.as(Coefficients::reals());
    d.nu = nu.as(Coefficients::reals());
    return d;
}

MapData MapData::integer(const Cochain& eta) {
    return complex(eta.as(Coefficients::reals()), Cochain(1, Coefficients::reals()));
}

int default_chart(const Eigen::VectorXd& x) {
    int best = -1;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (x[i] > 0 && (best < 0 || x[i] > x[best])) best = static_cast<int>(i);
    if (best < 0) throw InvalidInput("nerve map: all barycentric weights are zero");
    return best;
}

Eigen::VectorXcd real_nerve_map(const Eigen::VectorXd& x, const Cochain& tau, int chart) {
    const int j = chart < 0 ? default_chart(x) : chart;
    if (j >= x.size() || !(x[j] > 0)) throw InvalidInput("chart " + std::to_string(j) + " has zero weight");
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (Eigen::Index r = 0; r < x.size(); ++r) {
        if (!(x[r] > 0)) continue;
        const int t = r == j ? 0 : parity(tau.oriented({static_cast<int>(r), j}));
        y[r] = (t ? -1.0 : 1.0) * std::sqrt(x[r]);
    }
    return canonical_representative(y);
}

Eigen::VectorXcd complex_nerve_map(const Eigen::VectorXd& x, const Cochain& theta, const Cochain& nu, int chart) {
    const int j = chart < 0 ? default_chart(x) : chart;
    if (j >= x.size() || !(x[j] > 0)) throw InvalidInput("chart " + std::to_string(j) + " has zero weight");
    std::vector<int> active;
    for (Eigen::Index r = 0; r < x.size(); ++r)
        if (x[r] > 0) active.push_back(static_cast<int>(r));
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(x.size());
    for (int r : active) {
        double phase = r == j ? 0.0 : nu.oriented({r, j});
        for (int t : active) phase += x[t] * theta.oriented({r, j, t});
        y[r] = std::sqrt(x[r]) * std::polar(1.0, kTwoPi * phase);
    }
    return canonical_representative(y);
}

ClassifyingMap::ClassifyingMap(Cover cover, BumpSpec bump, MapData data, const Eigen::MatrixXd& dist)
    : cover_(std::move(cover)), bump_(std::move(bump)), data_(std::move(data)) {
    cover_.validate(dist);
    if (!bump_.weights.empty() && bump_.weights.size() != cover_.size())
        throw InvalidInput("bump weights do not match the cover");
    for (double w : bump_.weights)
        if (!(w > 0)) throw InvalidInput("bump weights must be positive");
    if (bump_.shape == BumpSpec::Shape::polynomial && !(bump_.exponent > 0))
        throw InvalidInput("bump exponent must be positive");
    local_.resize(dist.rows(), static_cast<Eigen::Index>(cover_.size()));
    for (std::size_t i = 0; i < cover_.size(); ++i) local_.col(i) = dist.col(cover_.landmarks[i]);

    if (data_.field == Field::real) {
        if (data_.tau.dim != 1) throw InvalidInput("real map needs a 1-cochain");
        nerve_ = witness_nerve(cover_, dist, 2);
        Cochain t2(1, Coefficients::mod(2));
        for (auto& [s, v] : data_.tau.values)
            if (nerve_.contains(s)) t2.set(s, parity(v));
        if (!is_cocycle(nerve_, t2)) {
            Cochain d = coboundary(nerve_, t2);
            throw InvalidInput("tau is not a cocycle on the nerve: fails on " + to_string(d.values.begin()->first));
        }
    } else {
        nerve_ = witness_nerve(cover_, dist, 3);
        Cochain th(2, Coefficients::reals());
        for (auto& [s, v] : data_.theta.values)
            if (nerve_.contains(s)) th.set(s, v);
        Cochain d = coboundary(nerve_, th);
        for (auto& [s, v] : d.values)
            if (std::abs(v) > 1e-9) throw InvalidInput("theta is not a cocycle on the nerve: fails on " + to_string(s));
        Cochain nu(1, Coefficients::reals());
        for (auto& [s, v] : data_.nu.values)
            if (nerve_.contains(s)) nu.set(s, v);
        Cochain eta = th + coboundary(nerve_, nu);
        for (const auto& s : nerve_.simplices(2)) {
            double v = eta[s];
            if (std::abs(v - std::round(v)) > 1e-9)
                throw InvalidInput("theta + delta nu is not integral on " + to_string(s));
        }
    }
}

Eigen::VectorXd ClassifyingMap::weights(int b) const {
    if (b < 0 || b >= rows()) throw InvalidInput("point index " + std::to_string(b) + " out of range");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(cover_.coordinate_count);
    double total = 0.0;
    for (std::size_t i = 0; i < cover_.size(); ++i) {
        const double d = local_(b, static_cast<Eigen::Index>(i));
        if (!(d < cover_.radii[i])) continue;
        const double v = bump_.weight(i) * bump_.phi(1.0 - d / cover_.radii[i]);
        w[cover_.vertex_ids[i]] += v;
        total += v;
    }
    if (!(total > 0)) throw CoverageError(b);
    return w / total;
}

ProjectivePoint ClassifyingMap::at(int b, std::optional<int> chart) const {
    Eigen::VectorXd w = weights(b);
    const int j = chart ? *chart : -1;
    if (j >= w.size()) throw InvalidInput("chart " + std::to_string(j) + " out of range");
    ProjectivePoint p;
    p.field = data_.field;
    p.coords = data_.field == Field::real ? real_nerve_map(w, data_.tau, j) : complex_nerve_map(w, data_.theta, data_.nu, j);
    return p;
}

ProjectiveCloud ClassifyingMap::evaluate() const {
    Eigen::MatrixXcd cols(cover_.coordinate_count, rows());
    for (int b = 0; b < rows(); ++b) cols.col(b) = at(b).coords;
    return ProjectiveCloud::from_columns(data_.field, std::move(cols));
}

Eigen::MatrixXcd ClassifyingMap::transition_values(int b) const {
    Eigen::VectorXd w = weights(b);
    const Eigen::Index n = w.size();
    Eigen::MatrixXcd om = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (!(w[r] > 0)) continue;
        for (Eigen::Index s = 0; s < n; ++s) {
            if (!(w[s] > 0)) continue;
            const int ri = static_cast<int>(r), si = static_cast<int>(s);
            if (data_.field == Field::real) {
                om(r, s) = r == s ? 1.0 : (parity(data_.tau.oriented({ri, si})) ? -1.0 : 1.0);
            } else {
                double phase = r == s ? 0.0 : data_.nu.oriented({ri, si});
                for (Eigen::Index t = 0; t < n; ++t)
                    if (w[t] > 0) phase += w[t] * data_.theta.oriented({ri, si, static_cast<int>(t)});
                om(r, s) = std::polar(1.0, kTwoPi * phase);
            }
        }
    }
    return om;
}

Eigen::VectorXd partition_of_unity_at(const Cover& cover, const BumpSpec& bump, const Eigen::MatrixXd& dist, int b) {
    return ClassifyingMap(cover, bump, MapData::real(Cochain(1, Coefficients::mod(2))), dist).weights(b);
}

ProjectivePoint real_map_at(const Cover& cover, const BumpSpec& bump, const Cochain& tau, const Eigen::MatrixXd& dist, int b) {
    return ClassifyingMap(cover, bump, MapData::real(tau), dist).at(b);
}

ProjectivePoint complex_map_at(const Cover& cover, const BumpSpec& bump, const Cochain& theta, const Cochain& nu,
                               const Eigen::MatrixXd& dist, int b) {
    return ClassifyingMap(cover, bump, MapData::complex(theta, nu), dist).at(b);
}

Eigen::MatrixXcd transition_values(const Cover& cover, const BumpSpec& bump, const MapData& data,
                                   const Eigen::MatrixXd& dist, int b) {
    return ClassifyingMap(cover, bump, data, dist).transition_values(b);
}

ClassifyingMap sparse_map(const GreedyPermutation& perm, double eps, double alpha, MapData data, const Eigen::MatrixXd& dist) {
    Cover cover = cover_at_scale(perm, eps, alpha);
    BumpSpec bump = BumpSpec::quadratic(cover);
    return ClassifyingMap(std::move(cover), std::move(bump), std::move(data), dist);
}

ProjectivePoint sparse_map_at(const GreedyPermutation& perm, double eps, double alpha, const MapData& data,
                              const Eigen::MatrixXd& dist, int b) {
    return sparse_map(perm, eps, alpha, data, dist).at(b);
}

} // namespace projcoords
