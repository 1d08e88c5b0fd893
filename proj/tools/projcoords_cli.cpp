#include "projcoords/errors.hpp"
#include "projcoords/io.hpp"
#include "projcoords/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

using namespace projcoords;

namespace {

struct SampleArgs {
    std::string points;
    std::string metric = "euclidean";
    int geodesic_k = 0;
    int landmarks = 35;
    int start = 0;
};

void add_sample_options(CLI::App* app, SampleArgs& a) {
    app->add_option("--points", a.points, "points csv, one point per row");
    app->add_option("--metric", a.metric, "euclidean | flat_torus | rp | torus | klein | sphere");
    app->add_option("--geodesic-k", a.geodesic_k, "use shortest paths over the k-NN graph when > 0");
    app->add_option("--landmarks", a.landmarks, "number of maxmin landmarks");
    app->add_option("--landmark-start", a.start, "index of the first landmark");
}

void need(const std::string& value, const char* flag) {
    if (value.empty()) throw InvalidInput(std::string(flag) + " is required");
}

Eigen::MatrixXd load_distances(const SampleArgs& a) {
    need(a.points, "--points");
    PointCloud X = read_csv(a.points);
    if (X.rows() == 0) throw InvalidInput("'" + a.points + "' holds no points");
    DistanceMatrix D = pairwise_distances(X, parse_metric(a.metric));
    if (a.geodesic_k > 0) D = geodesic_distances(D, a.geodesic_k);
    return D.entries();
}

Field parse_field(const std::string& s) {
    if (s == "rp") return Field::real;
    if (s == "cp") return Field::complex;
    throw InvalidInput("field must be rp or cp");
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") std::cout << text;
    else write_text(out, text);
}

std::size_t select_interval(const Barcode& b, int dim, int rank, int index) {
    if (index >= 0) {
        if (index >= static_cast<int>(b.intervals.size()) || b.intervals[index].dim != dim)
            throw InvalidInput("interval " + std::to_string(index) + " is missing or not in dimension " + std::to_string(dim));
        return static_cast<std::size_t>(index);
    }
    auto order = b.by_persistence(dim);
    if (rank < 0 || rank >= static_cast<int>(order.size()))
        throw InvalidInput("no dimension " + std::to_string(dim) + " interval of rank " + std::to_string(rank));
    return order[rank];
}

// Config keys may use underscores or dashes.
std::string normalize_config(const std::string& path) {
    std::istringstream in(read_text(path));
    std::string line, out;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        const auto first = line.find_first_not_of(" \t");
        if (eq != std::string::npos && first != std::string::npos && line[first] != '#' && line[first] != '[')
            std::replace(line.begin(), line.begin() + eq, '_', '-');
        out += line + "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projective coordinates from persistent cohomology"};
    std::string config_path;
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // generate
    std::string dataset = "torus_product", gen_out;
    int gen_count = 1000;
    std::uint64_t gen_seed = 0;
    LinePatchOptions patch;
    auto* gen = app.add_subcommand("generate", "sample a dataset");
    gen->add_option("--config", config_path, "key = value file mirroring the long flags");
    gen->add_option("--dataset", dataset, "line_patches | rp2_uniform | klein_flat | torus_product | sphere_uniform");
    gen->add_option("--count", gen_count);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--patch-width", patch.width);
    gen->add_option("--patch-amplitude", patch.amplitude);
    gen->add_option("--out", gen_out, "points csv (stdout if omitted)");

    // landmarks
    SampleArgs lm;
    std::string lm_out;
    auto* lmk = app.add_subcommand("landmarks", "maxmin landmarks with insertion radii");
    lmk->add_option("--config", config_path, "key = value file mirroring the long flags");
    add_sample_options(lmk, lm);
    lmk->add_option("--out", lm_out);

    // filtrate
    SampleArgs fl;
    double fl_eps = 0.01;
    int fl_dim = 2;
    std::string fl_out;
    auto* filt = app.add_subcommand("filtrate", "sparse Rips filtration on maxmin landmarks");
    filt->add_option("--config", config_path, "key = value file mirroring the long flags");
    add_sample_options(filt, fl);
    filt->add_option("--sparsity", fl_eps);
    filt->add_option("--max-dim", fl_dim);
    filt->add_option("--out", fl_out);

    // persist
    std::string ps_in, ps_out;
    int ps_prime = 47, ps_dim = 1;
    auto* pers = app.add_subcommand("persist", "barcode with cocycle representatives");
    pers->add_option("--config", config_path, "key = value file mirroring the long flags");
    pers->add_option("--filtration", ps_in);
    pers->add_option("--prime", ps_prime);
    pers->add_option("--max-dim", ps_dim);
    pers->add_option("--out", ps_out);

    // coords
    SampleArgs co;
    double co_eps = 0.01;
    std::string co_barcode, co_field = "rp", co_smoothing = "harmonic", co_out;
    int co_prime = 2, co_rank = 0, co_index = -1;
    auto* crd = app.add_subcommand("coords", "projective coordinates from a barcode interval");
    crd->add_option("--config", config_path, "key = value file mirroring the long flags");
    add_sample_options(crd, co);
    crd->add_option("--sparsity", co_eps);
    crd->add_option("--barcode", co_barcode);
    crd->add_option("--prime", co_prime, "prime used for the barcode");
    crd->add_option("--field", co_field, "rp | cp");
    crd->add_option("--interval-rank", co_rank, "0 is the longest bar");
    crd->add_option("--interval-index", co_index, "barcode position; overrides --interval-rank");
    crd->add_option("--smoothing", co_smoothing, "harmonic | integer");
    crd->add_option("--out", co_out);

    // ppca
    std::string pp_in, pp_field = "rp", pp_out, pp_summary;
    double pp_threshold = 0.7;
    auto* ppc = app.add_subcommand("ppca", "variance profile and dimension choice");
    ppc->add_option("--config", config_path, "key = value file mirroring the long flags");
    ppc->add_option("--coords", pp_in);
    ppc->add_option("--field", pp_field);
    ppc->add_option("--threshold", pp_threshold);
    ppc->add_option("--out", pp_out, "profile csv");
    ppc->add_option("--summary", pp_summary, "summary json (stdout if omitted)");

    // viz
    std::string vz_in, vz_field = "rp", vz_out;
    int vz_k = 2;
    auto* viz = app.add_subcommand("viz", "disk (rp) or Hopf (cp) visualization");
    viz->add_option("--config", config_path, "key = value file mirroring the long flags");
    viz->add_option("--coords", vz_in);
    viz->add_option("--field", vz_field);
    viz->add_option("--k", vz_k, "disk dimension for rp");
    viz->add_option("--out", vz_out);

    // pipeline
    PipelineConfig cfg;
    std::string pl_out = "bundle";
    auto* pipe = app.add_subcommand("pipeline", "run every stage and write a bundle");
    pipe->add_option("--config", config_path, "key = value file mirroring the long flags");
    pipe->add_option("--dataset", cfg.dataset);
    pipe->add_option("--count", cfg.count);
    pipe->add_option("--seed", cfg.seed);
    pipe->add_option("--metric", cfg.metric);
    pipe->add_option("--geodesic-k", cfg.geodesic_k);
    pipe->add_option("--cover", cfg.cover, "sparse | fixed");
    pipe->add_option("--landmarks", cfg.landmarks);
    pipe->add_option("--landmark-start", cfg.landmark_start);
    pipe->add_option("--landmark-preset", cfg.landmark_preset, "tetrahedron | klein9 | rp2_6");
    pipe->add_option("--sparsity", cfg.sparsity);
    pipe->add_option("--radius", cfg.radius);
    pipe->add_option("--radius-factor", cfg.radius_factor);
    pipe->add_option("--bump", cfg.bump);
    pipe->add_option("--prime", cfg.prime, "0 picks 2 for rp and 47 for cp");
    pipe->add_option("--field", cfg.field, "rp | cp");
    pipe->add_option("--cocycle", cfg.cocycle, "persistence | orientation");
    pipe->add_option("--interval", cfg.interval, "longest | index");
    pipe->add_option("--interval-rank", cfg.interval_rank);
    pipe->add_option("--interval-index", cfg.interval_index);
    pipe->add_option("--smoothing", cfg.smoothing, "harmonic | integer");
    pipe->add_option("--threshold", cfg.threshold);
    pipe->add_option("--viz-k", cfg.viz_k);
    pipe->add_option("--orientation-min-overlap", cfg.orientation_min_overlap);
    pipe->add_option("--orientation-min-ratio", cfg.orientation_min_ratio);
    pipe->add_option("--orientation-infer-weak", cfg.orientation_infer_weak);
    pipe->add_option("--patch-width", cfg.patch_width);
    pipe->add_option("--patch-amplitude", cfg.patch_amplitude);
    pipe->add_option("--out-dir", pl_out);

    for (auto* sub : app.get_subcommands({})) sub->allow_config_extras(CLI::config_extras_mode::error);

    try {
        app.parse(argc, argv);
        // flags given on the command line keep precedence over the file
        if (!config_path.empty())
            for (auto* sub : app.get_subcommands()) {
                std::istringstream cfg_stream(normalize_config(config_path));
                sub->parse_from_stream(cfg_stream);
            }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            PointCloud X = generate(parse_dataset(dataset), gen_count, gen_seed, patch);
            emit(gen_out, format_csv(X));
        } else if (*lmk) {
            auto D = load_distances(lm);
            auto perm = maxmin_sample(D, lm.landmarks, lm.start);
            Eigen::MatrixXd t(perm.size(), 2);
            for (std::size_t i = 0; i < perm.size(); ++i) t.row(i) << perm.order[i], perm.insertion_radii[i];
            emit(lm_out, format_csv(t, {"index", "insertion_radius"}));
        } else if (*filt) {
            auto D = load_distances(fl);
            auto perm = maxmin_sample(D, fl.landmarks, fl.start);
            emit(fl_out, sparse_rips(perm, D, fl_eps, fl_dim).to_text());
        } else if (*pers) {
            need(ps_in, "--filtration");
            Filtration F = Filtration::from_text(read_text(ps_in));
            emit(ps_out, barcode_to_json(persistent_cohomology(F, ps_prime, ps_dim)).dump(1) + "\n");
        } else if (*crd) {
            need(co_barcode, "--barcode");
            const Field field = parse_field(co_field);
            const int dim = field == Field::real ? 1 : 2;
            auto D = load_distances(co);
            auto perm = maxmin_sample(D, co.landmarks, co.start);
            Filtration F = sparse_rips(perm, D, co_eps, dim + 1);
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(read_text(co_barcode));
            } catch (const nlohmann::json::parse_error& e) {
                throw InvalidInput(std::string("barcode json: ") + e.what());
            }
            Barcode b = barcode_from_json(j, Coefficients::mod(co_prime));
            const Interval& iv = b.intervals[select_interval(b, dim, co_rank, co_index)];
            const double alpha = evaluation_scale(F, iv);
            SimplicialComplex K = F.complex_at(alpha, dim + 1);
            auto map = sparse_map(perm, co_eps, alpha, cocycle_map_data(iv.representative, K, field, co_smoothing), D);
            emit(co_out, format_csv(cloud_to_rows(map.evaluate())));
        } else if (*ppc) {
            need(pp_in, "--coords");
            ProjectiveCloud Y = cloud_from_rows(read_csv(pp_in), parse_field(pp_field));
            auto basis = prin_proj_comps(Y);
            auto prof = variance_profile(Y, basis);
            auto choice = choose_dimension(prof, pp_threshold);
            int dropped = 0;
            for (int d : basis.dropped) dropped += d;
            Eigen::MatrixXd t(prof.var.size(), 3);
            for (std::size_t i = 0; i < prof.var.size(); ++i) t.row(i) << double(i + 1), prof.var[i], prof.pvar[i];
            if (!pp_out.empty()) write_csv(pp_out, t, {"k", "var", "pvar"});
            nlohmann::json s{{"chosen_k", choice.k},
                             {"threshold", pp_threshold},
                             {"elbow", choice.elbow},
                             {"dropped_points", dropped},
                             {"pvar", prof.pvar}};
            emit(pp_summary, s.dump(1) + "\n");
        } else if (*viz) {
            need(vz_in, "--coords");
            const Field field = parse_field(vz_field);
            ProjectiveCloud Y = cloud_from_rows(read_csv(vz_in), field);
            auto basis = prin_proj_comps(Y);
            if (field == Field::real) {
                auto proj = project_to_k(Y, basis, std::min(vz_k, Y.dim()));
                Eigen::MatrixXd v = viz_rp_disk(proj.cloud);
                std::vector<std::string> h{"x", "y", "z"};
                h.resize(v.cols());
                emit(vz_out, format_csv(v, h));
            } else {
                auto proj = project_to_k(Y, basis, 1);
                emit(vz_out, format_csv(viz_cp1_hopf(proj.cloud), {"x", "y", "z"}));
            }
        } else if (*pipe) {
            PipelineResult r = run_pipeline(cfg);
            write_bundle(r, pl_out);
            std::cout << r.summary.dump(1) << "\n";
        }
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
