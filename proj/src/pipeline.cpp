#include "projcoords/pipeline.hpp"

#include "projcoords/errors.hpp"
#include "projcoords/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

namespace projcoords {

const char* const kVersion = "0.3.0";

namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InvalidInput& e) {
        throw InvalidInput(std::string(name) + ": " + e.what());
    } catch (const NumericalFailure& e) {
        throw NumericalFailure(std::string(name) + ": " + e.what());
    }
}

Cochain restrict_to(const Cochain& c, const SimplicialComplex& K) {
    Cochain out(c.dim, c.coefficients);
    for (auto& [s, v] : c.values)
        if (K.contains(s)) out.set(s, v);
    return out;
}

std::size_t pick_interval(const Barcode& b, const PipelineConfig& cfg, int dim) {
    if (cfg.interval == "index") {
        if (cfg.interval_index < 0 || cfg.interval_index >= static_cast<int>(b.intervals.size()))
            throw InvalidInput("interval_index out of range");
        if (b.intervals[cfg.interval_index].dim != dim)
            throw InvalidInput("interval " + std::to_string(cfg.interval_index) + " is not in dimension " + std::to_string(dim));
        return static_cast<std::size_t>(cfg.interval_index);
    }
    auto order = b.by_persistence(dim);
    if (cfg.interval_rank < 0 || cfg.interval_rank >= static_cast<int>(order.size()))
        throw InvalidInput("barcode has " + std::to_string(order.size()) + " intervals in dimension " + std::to_string(dim) +
                           ", rank " + std::to_string(cfg.interval_rank) + " requested");
    return order[cfg.interval_rank];
}

int effective_prime(const PipelineConfig& cfg) {
    if (cfg.prime != 0) return cfg.prime;
    return cfg.field == "rp" ? 2 : 47;
}

} // namespace

void PipelineConfig::validate() const {
    parse_dataset(dataset);
    if (!metric.empty()) parse_metric(metric);
    if (count < 1) throw InvalidInput("count must be at least 1");
    if (geodesic_k < 0) throw InvalidInput("geodesic_k must be nonnegative");
    if (cover != "sparse" && cover != "fixed") throw InvalidInput("cover must be sparse or fixed");
    if (landmarks < 1) throw InvalidInput("landmarks must be at least 1");
    if (cover == "sparse" && !(sparsity > 0 && sparsity < 1)) throw InvalidInput("sparsity must lie in (0, 1)");
    if (!landmark_preset.empty() && landmark_preset != "tetrahedron" && landmark_preset != "klein9" && landmark_preset != "rp2_6")
        throw InvalidInput("unknown landmark preset '" + landmark_preset + "'");
    if (!landmark_preset.empty() && cover != "fixed") throw InvalidInput("landmark presets need a fixed cover");
    if (radius < 0 || radius_factor < 0) throw InvalidInput("radius and radius_factor must be nonnegative");
    const int p = effective_prime(*this);
    if (!is_prime(p)) throw InvalidInput("prime " + std::to_string(p) + " is not prime");
    if (field != "rp" && field != "cp") throw InvalidInput("field must be rp or cp");
    if (cocycle != "persistence" && cocycle != "orientation") throw InvalidInput("cocycle must be persistence or orientation");
    if (field == "rp" && cocycle == "persistence" && p != 2) throw InvalidInput("real coordinates need prime 2");
    if (cocycle == "orientation" && (field != "rp" || cover != "fixed" || !landmark_preset.empty()))
        throw InvalidInput("orientation cocycles need field rp and a fixed cover on sample landmarks");
    if (interval != "longest" && interval != "index") throw InvalidInput("interval must be longest or index");
    if (smoothing != "harmonic" && smoothing != "integer") throw InvalidInput("smoothing must be harmonic or integer");
    if (!(threshold >= 0 && threshold <= 1)) throw InvalidInput("threshold must lie in [0, 1]");
    if (viz_k < 1 || viz_k > 3) throw InvalidInput("viz_k must be 1, 2 or 3");
}

nlohmann::json PipelineConfig::to_json() const {
    return {{"dataset", dataset},
            {"count", count},
            {"seed", seed},
            {"metric", metric.empty() ? metric_name(default_metric(parse_dataset(dataset))) : metric},
            {"geodesic_k", geodesic_k},
            {"cover", cover},
            {"landmarks", landmarks},
            {"landmark_start", landmark_start},
            {"landmark_preset", landmark_preset},
            {"sparsity", sparsity},
            {"radius", radius},
            {"radius_factor", radius_factor},
            {"bump", bump},
            {"prime", effective_prime(*this)},
            {"field", field},
            {"cocycle", cocycle},
            {"interval", interval},
            {"interval_rank", interval_rank},
            {"interval_index", interval_index},
            {"smoothing", smoothing},
            {"threshold", threshold},
            {"viz_k", viz_k},
            {"orientation_min_overlap", orientation_min_overlap},
            {"orientation_min_ratio", orientation_min_ratio},
            {"orientation_infer_weak", orientation_infer_weak},
            {"patch_width", patch_width},
            {"patch_amplitude", patch_amplitude}};
}

MapData cocycle_map_data(const Cochain& representative, const SimplicialComplex& K, Field field,
                         const std::string& smoothing) {
    Cochain rep = restrict_to(representative, K);
    if (field == Field::real) {
        if (rep.dim != 1 || rep.coefficients.kind != Coefficients::Kind::mod_p || rep.coefficients.p != 2)
            throw InvalidInput("real coordinates need a Z/2 1-cocycle");
        return MapData::real(std::move(rep));
    }
    if (rep.dim != 2) throw InvalidInput("complex coordinates need a 2-cocycle");
    Cochain eta = lift_to_integers(rep, K);
    if (smoothing == "integer") return MapData::integer(eta);
    if (smoothing != "harmonic") throw InvalidInput("smoothing must be harmonic or integer");
    HarmonicPair h = harmonic_smoothing(eta, K);
    return MapData::complex(std::move(h.theta), std::move(h.nu));
}

double evaluation_scale(const Filtration& F, const Interval& iv) {
    if (!iv.death) {
        double last = 0.0;
        for (auto& fs : F.simplices()) last = std::max(last, fs.birth);
        return last;
    }
    const double death = *iv.death;
    const double prev = F.previous_birth(death).value_or(0.0);
    return death - std::min(1e-6 * death, 0.5 * (death - prev));
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
    stage("config", [&] {
        cfg.validate();
        return 0;
    });
    const Dataset dataset = parse_dataset(cfg.dataset);
    const Metric metric = cfg.metric.empty() ? default_metric(dataset) : parse_metric(cfg.metric);
    const int p = effective_prime(cfg);
    const bool real = cfg.field == "rp";
    const Field field = real ? Field::real : Field::complex;
    const int class_dim = real ? 1 : 2;

    PipelineResult out;
    out.summary["version"] = kVersion;
    out.summary["config"] = cfg.to_json();

    LinePatchOptions patch{cfg.patch_width, cfg.patch_amplitude};
    out.points = stage("generate", [&] { return generate(dataset, cfg.count, cfg.seed, patch); });

    // distance table: rows are points, columns index the landmarks' positions
    Eigen::MatrixXd dist;
    Eigen::MatrixXd landmark_dist;
    std::vector<int> landmark_cols;
    GreedyPermutation perm;
    if (!cfg.landmark_preset.empty()) {
        PointCloud L = cfg.landmark_preset == "tetrahedron" ? tetrahedron_landmarks()
                       : cfg.landmark_preset == "klein9"    ? klein_landmarks()
                                                             : rp2_landmarks();
        stage("distances", [&] {
            dist = cross_distances(out.points, L, metric);
            landmark_dist = pairwise_distances(L, metric).entries();
            return 0;
        });
        for (int i = 0; i < L.rows(); ++i) landmark_cols.push_back(i);
    } else {
        stage("distances", [&] {
            DistanceMatrix D = pairwise_distances(out.points, metric);
            if (cfg.geodesic_k > 0) D = geodesic_distances(D, cfg.geodesic_k);
            dist = D.entries();
            return 0;
        });
        perm = stage("landmarks", [&] { return maxmin_sample(dist, cfg.landmarks, cfg.landmark_start); });
        landmark_cols = perm.order;
        landmark_dist.resize(perm.size(), perm.size());
        for (std::size_t a = 0; a < perm.size(); ++a)
            for (std::size_t b = 0; b < perm.size(); ++b) landmark_dist(a, b) = dist(perm.order[a], perm.order[b]);
    }

    std::optional<ClassifyingMap> map;
    if (cfg.cover == "sparse") {
        Filtration F = stage("filtrate", [&] { return sparse_rips(perm, dist, cfg.sparsity, class_dim + 1); });
        out.barcode = stage("persist", [&] { return persistent_cohomology(F, p, class_dim); });
        out.interval = stage("persist", [&] { return pick_interval(out.barcode, cfg, class_dim); });
        const Interval& iv = out.barcode.intervals[*out.interval];
        out.alpha = evaluation_scale(F, iv);
        SimplicialComplex K = F.complex_at(out.alpha, class_dim + 1);
        MapData data = stage("cocycle", [&] { return cocycle_map_data(iv.representative, K, field, cfg.smoothing); });
        map.emplace(stage("coords", [&] { return sparse_map(perm, cfg.sparsity, out.alpha, std::move(data), dist); }));
    } else {
        std::vector<double> radii;
        if (cfg.radius > 0) radii.assign(landmark_cols.size(), cfg.radius);
        else if (cfg.radius_factor > 0) radii = nearest_landmark_radii(landmark_dist, cfg.radius_factor);
        else if (cfg.landmark_preset == "tetrahedron") radii.assign(4, tetrahedron_radius());
        else if (cfg.landmark_preset == "klein9") radii = nearest_landmark_radii(landmark_dist, 1.0);
        else if (cfg.landmark_preset == "rp2_6") radii = nearest_landmark_radii(landmark_dist, 0.95);
        else throw InvalidInput("cover: a fixed cover needs radius or radius_factor");
        Cover cover = Cover::fixed(landmark_cols, radii);
        BumpSpec bump = stage("cover", [&] { return BumpSpec::parse(cfg.bump, cover); });
        SimplicialComplex nerve = stage("nerve", [&] { return witness_nerve(cover, dist, class_dim + 1); });
        out.barcode = stage("persist", [&] { return persistent_cohomology(constant_filtration(nerve), p, class_dim); });
        MapData data;
        if (cfg.cocycle == "orientation") {
            stage("orientation", [&] {
                auto emb = embed_balls(cover, dist, 2);
                OrientationOptions opt{cfg.orientation_min_overlap, cfg.orientation_min_ratio, cfg.orientation_infer_weak};
                out.orientation = orientation_cochain(cover, dist, emb, opt);
                if (!out.orientation->cocycle)
                    throw NumericalFailure("orientation cochain fails the cocycle condition on " +
                                           std::to_string(out.orientation->violations.size()) + " triangles");
                return 0;
            });
            data = MapData::real(out.orientation->omega);
        } else {
            out.interval = stage("persist", [&] { return pick_interval(out.barcode, cfg, class_dim); });
            const Cochain& rep = out.barcode.intervals[*out.interval].representative;
            data = stage("cocycle", [&] { return cocycle_map_data(rep, nerve, field, cfg.smoothing); });
        }
        map.emplace(stage("coords", [&] { return ClassifyingMap(cover, bump, std::move(data), dist); }));
    }

    out.coords = stage("coords", [&] { return map->evaluate(); });
    out.basis = stage("ppca", [&] { return prin_proj_comps(out.coords); });
    out.profile = stage("ppca", [&] { return variance_profile(out.coords, out.basis); });
    out.choice = choose_dimension(out.profile, cfg.threshold);
    int dropped = 0;
    for (int d : out.basis.dropped) dropped += d;
    stage("viz", [&] {
        if (real) {
            const int k = std::min(cfg.viz_k, out.coords.dim());
            auto proj = project_to_k(out.coords, out.basis, k);
            dropped += proj.dropped;
            out.viz = viz_rp_disk(proj.cloud);
        } else {
            auto proj = project_to_k(out.coords, out.basis, 1);
            dropped += proj.dropped;
            out.viz = viz_cp1_hopf(proj.cloud);
        }
        return 0;
    });

    auto& s = out.summary;
    s["chosen_k"] = out.choice.k;
    s["threshold"] = cfg.threshold;
    s["elbow"] = out.choice.elbow;
    s["dropped_points"] = dropped;
    s["pvar"] = out.profile.pvar;
    s["multiple_eigenvalue_stages"] = out.basis.multiple_stages;
    s["alpha"] = out.alpha;
    if (out.interval) {
        const Interval& iv = out.barcode.intervals[*out.interval];
        s["interval"] = {{"index", *out.interval},
                         {"dim", iv.dim},
                         {"birth", iv.birth},
                         {"death", iv.death ? nlohmann::json(*iv.death) : nlohmann::json(nullptr)}};
    }
    if (out.orientation) {
        s["orientation"] = {{"cocycle", out.orientation->cocycle},
                            {"coboundary", out.orientation->coboundary},
                            {"weak_edges", out.orientation->weak_edges.size()},
                            {"edges", out.orientation->nerve.count(1)}};
    }
    return out;
}

void write_bundle(const PipelineResult& r, const std::string& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw InvalidInput("cannot create '" + directory + "': " + ec.message());
    const std::filesystem::path dir(directory);
    write_csv((dir / "points.csv").string(), r.points);
    write_text((dir / "barcode.json").string(), barcode_to_json(r.barcode).dump(1) + "\n");
    write_csv((dir / "coords.csv").string(), cloud_to_rows(r.coords));
    Eigen::MatrixXd prof(r.profile.var.size(), 3);
    for (std::size_t i = 0; i < r.profile.var.size(); ++i) prof.row(i) << double(i + 1), r.profile.var[i], r.profile.pvar[i];
    write_csv((dir / "profile.csv").string(), prof, {"k", "var", "pvar"});
    std::vector<std::string> header{"x", "y", "z"};
    header.resize(r.viz.cols());
    write_csv((dir / "viz.csv").string(), r.viz, header);
    write_text((dir / "summary.json").string(), r.summary.dump(1) + "\n");
}

} // namespace projcoords
