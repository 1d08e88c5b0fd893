#include "helpers.hpp"

#include "projcoords/datasets.hpp"
#include "projcoords/embedding.hpp"
#include "projcoords/errors.hpp"
#include "projcoords/io.hpp"
#include "projcoords/pipeline.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace projcoords;
using namespace testing_util;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("projcoords_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PROJCOORDS_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Flat strip [0, L) x [-w, w] glued with (twist ? flip : identity); intrinsic distance.
Eigen::MatrixXd strip_distances(const Eigen::MatrixXd& P, double L, bool twist) {
    const Eigen::Index n = P.rows();
    Eigen::MatrixXd D(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double du = std::abs(P(i, 0) - P(j, 0));
            const double direct = std::hypot(du, P(i, 1) - P(j, 1));
            const double vj = twist ? -P(j, 1) : P(j, 1);
            const double around = std::hypot(L - du, P(i, 1) - vj);
            D(i, j) = std::min(direct, around);
        }
    return D;
}

OrientationResult strip_orientation(bool twist) {
    const double L = 6.0, w = 0.5;
    std::mt19937_64 rng(twist ? 3 : 4);
    std::uniform_real_distribution<double> u(0, L), v(-w, w);
    const int m = 8, n = 700;
    Eigen::MatrixXd P(n, 2);
    for (int i = 0; i < n; ++i) {
        if (i < m) P.row(i) << i * L / m, 0.0;
        else P.row(i) << u(rng), v(rng);
    }
    Eigen::MatrixXd D = strip_distances(P, L, twist);
    std::vector<int> ids(m);
    for (int i = 0; i < m; ++i) ids[i] = i;
    Cover c = Cover::fixed(ids, std::vector<double>(m, 0.95));
    return orientation_cochain(c, D, embed_balls(c, D, 2));
}

std::string slurp(const fs::path& p) { return read_text(p.string()); }

} // namespace

TEST_CASE("generators") {
    for (auto d : {Dataset::line_patches, Dataset::rp2_uniform, Dataset::klein_flat, Dataset::torus_product,
                   Dataset::sphere_uniform}) {
        auto a = generate(d, 200, 17), b = generate(d, 200, 17), c = generate(d, 200, 18);
        CHECK(a.rows() == 200);
        CHECK(a == b);
        CHECK(a != c);
        CHECK(parse_dataset(dataset_name(d)) == d);
    }
    CHECK_THROWS_AS(parse_dataset("moebius"), InvalidInput);

    auto patches = generate(Dataset::line_patches, 300, 2);
    CHECK(patches.cols() == 49);
    for (int i = 0; i < 300; ++i) CHECK(std::abs(patches.row(i).sum()) <= 1e-12);
    for (auto d : {Dataset::rp2_uniform, Dataset::sphere_uniform}) {
        auto s = generate(d, 300, 2);
        CHECK(s.cols() == 3);
        for (int i = 0; i < 300; ++i) CHECK(s.row(i).norm() == doctest::Approx(1.0));
    }
    auto k = generate(Dataset::klein_flat, 300, 2);
    CHECK(k.minCoeff() >= 0.0);
    CHECK(k.maxCoeff() < 1.0);
    auto t = generate(Dataset::torus_product, 300, 2);
    for (int i = 0; i < 300; ++i) {
        CHECK(t.row(i).head(2).norm() == doctest::Approx(1.0));
        CHECK(t.row(i).tail(2).norm() == doctest::Approx(1.0));
    }
    // rendering: theta and theta + pi with opposite offset are the same line
    CHECK((render_line_patch(0.3, 0.5) - render_line_patch(0.3 + M_PI, -0.5)).norm() <= 1e-9);
    CHECK(line_patch_offset_range(0.0) > 3.0);

    CHECK(tetrahedron_radius() == doctest::Approx(std::acos(-1.0 / 3.0)));
    auto T = tetrahedron_landmarks();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(T.row(i).dot(T.row(j)) == doctest::Approx(-1.0 / 3.0));
    CHECK(klein_landmarks().rows() == 9);
    CHECK(rp2_landmarks().rows() == 6);
    CHECK(rp2_tau().values.size() == 6);
}

TEST_CASE("classical MDS and Procrustes") {
    Eigen::MatrixXd sq(4, 2);
    sq << 0, 0, 1, 0, 1, 1, 0, 1;
    Eigen::MatrixXd D(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) D(i, j) = (sq.row(i) - sq.row(j)).norm();
    auto m = classical_mds(D, 2);
    CHECK_FALSE(m.non_euclidean);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK((m.coords.row(i) - m.coords.row(j)).norm() == doctest::Approx(D(i, j)));
    CHECK(m.coords.colwise().sum().norm() <= 1e-12);

    auto bad = line_distances({0, 1, 2});
    bad(0, 2) = bad(2, 0) = 5;  // violates the triangle inequality
    CHECK(classical_mds(bad, 2).non_euclidean);

    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::MatrixXd A(30, 2);
    for (int i = 0; i < 30; ++i) A.row(i) << g(rng), g(rng);
    for (int det : {1, -1}) {
        Eigen::Matrix2d R;
        R << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
        if (det < 0) R.col(1) *= -1;
        Eigen::MatrixXd B = (A * R.transpose()).rowwise() + Eigen::RowVector2d(2, -3);
        auto p = procrustes_2d(A, B);
        CHECK(p.det == det);
        CHECK((p.omega - R).norm() <= 1e-10);
        CHECK((p.shift - Eigen::Vector2d(2, -3)).norm() <= 1e-10);
        CHECK(p.residual <= 1e-18);
        CHECK(p.singular_ratio > 0);
    }
}

TEST_CASE("orientation cochain: annulus, Moebius band, misaligned covers") {
    auto ann = strip_orientation(false);
    CHECK(ann.cocycle);
    CHECK(ann.coboundary);
    auto mob = strip_orientation(true);
    CHECK(mob.cocycle);
    CHECK_FALSE(mob.coboundary);
    CHECK(mob.nerve.count(1) >= 8);

    // two balls sharing one point cannot be aligned
    auto D = line_distances({0, 1, 2, 0.5, 1.5});
    Cover c = Cover::fixed({0, 2}, {1.01, 1.01});
    CHECK_THROWS_AS(orientation_cochain(c, D, embed_balls(c, D, 2)), CannotAlign);
}

TEST_CASE("io round trips") {
    Eigen::MatrixXd m(2, 3);
    m << 1.5, -2, 1e-300, 0.1, 3, 4;
    CHECK(parse_csv(format_csv(m, {"a", "b", "c"})) == m);
    CHECK(parse_csv(format_csv(m)) == m);
    CHECK(parse_csv("").size() == 0);
    CHECK_THROWS_AS(parse_csv("1,2\n3,x\n"), InvalidInput);
    CHECK_THROWS_AS(parse_csv("1,2\n3\n"), InvalidInput);

    std::mt19937_64 rng(3);
    Eigen::MatrixXcd U = random_unitary(rng, 3, true);
    auto Y = ProjectiveCloud::from_columns(Field::complex, U);
    auto back = cloud_from_rows(cloud_to_rows(Y), Field::complex);
    CHECK((back.points - Y.points).norm() <= 1e-15);
    CHECK(cloud_to_rows(Y).cols() == 6);
    CHECK_THROWS_AS(cloud_from_rows(Eigen::MatrixXd::Ones(2, 3), Field::complex), InvalidInput);
}

TEST_CASE("pipeline: validation, determinism and bundle") {
    PipelineConfig bad;
    bad.field = "hp";
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = PipelineConfig{};
    bad.prime = 3;  // real coordinates from a persistence cocycle need Z/2
    CHECK_THROWS_AS(bad.validate(), InvalidInput);
    bad = PipelineConfig{};
    bad.sparsity = 1.5;
    CHECK_THROWS_AS(run_pipeline(bad), InvalidInput);

    PipelineConfig cfg;
    cfg.dataset = "rp2_uniform";
    cfg.count = 500;
    cfg.landmarks = 25;
    cfg.sparsity = 0.3;
    cfg.seed = 11;
    auto a = run_pipeline(cfg), b = run_pipeline(cfg);
    CHECK(format_csv(cloud_to_rows(a.coords)) == format_csv(cloud_to_rows(b.coords)));
    CHECK(a.summary.dump() == b.summary.dump());
    CHECK(a.coords.dim() == 24);
    CHECK(a.choice.k >= 1);

    auto dir = scratch("bundle");
    write_bundle(a, dir.string());
    for (auto f : {"points.csv", "barcode.json", "coords.csv", "profile.csv", "viz.csv", "summary.json"})
        CHECK(fs::exists(dir / f));
    auto s = nlohmann::json::parse(slurp(dir / "summary.json"));
    for (auto key : {"chosen_k", "threshold", "elbow", "dropped_points", "config", "version"}) CHECK(s.contains(key));
    CHECK(s["config"]["prime"] == 2);
    CHECK(s["config"]["seed"] == 11);
    CHECK(read_csv((dir / "points.csv").string()).rows() == 500);
    CHECK(read_csv((dir / "coords.csv").string()).cols() == 25);
    CHECK(slurp(dir / "profile.csv").rfind("k,var,pvar\n", 0) == 0);
    auto barcode = nlohmann::json::parse(slurp(dir / "barcode.json"));
    REQUIRE(barcode.is_array());
    for (auto& e : barcode) {
        CHECK(e.contains("dim"));
        CHECK(e.contains("birth"));
        CHECK((e["death"].is_null() || e["death"].is_number()));
        CHECK(e["representative"].is_array());
    }
}

TEST_CASE("pipeline: sphere with complex coordinates") {
    PipelineConfig cfg;
    cfg.dataset = "sphere_uniform";
    cfg.count = 400;
    cfg.cover = "fixed";
    cfg.landmark_preset = "tetrahedron";
    cfg.field = "cp";
    cfg.prime = 3;
    auto r = run_pipeline(cfg);
    CHECK(r.coords.field == Field::complex);
    CHECK(r.coords.dim() == 3);
    CHECK(r.choice.k == 1);
    CHECK(r.viz.cols() == 3);
    for (int i = 0; i < r.viz.rows(); ++i) CHECK(r.viz.row(i).norm() == doctest::Approx(1.0));
}

TEST_CASE("cli: exit codes and config files") {
    auto dir = scratch("cli");
    const std::string d = dir.string();
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("") != 0);
    CHECK(run_cli("generate --dataset rp2_uniform --count 120 --seed 4 --out " + d + "/p.csv") == 0);
    CHECK(read_csv(d + "/p.csv").rows() == 120);
    CHECK(run_cli("generate --dataset nope --count 10") == 2);
    CHECK(run_cli("generate --dataset rp2_uniform --count 10 --bogus 1") == 2);
    CHECK(run_cli("landmarks --metric rp --landmarks 5") == 2);  // no points
    CHECK(run_cli("landmarks --points " + d + "/missing.csv --metric rp --landmarks 5") == 2);
    CHECK(run_cli("landmarks --points " + d + "/p.csv --metric rp --landmarks 500") == 2);

    // staged run
    CHECK(run_cli("filtrate --points " + d + "/p.csv --metric rp --landmarks 20 --sparsity 0.3 --max-dim 2 --out " + d +
                  "/f.txt") == 0);
    CHECK(Filtration::from_text(slurp(dir / "f.txt")).complex_at(1e9, 2).count(0) == 20);
    CHECK(run_cli("persist --filtration " + d + "/f.txt --prime 2 --max-dim 1 --out " + d + "/b.json") == 0);
    CHECK(run_cli("coords --points " + d + "/p.csv --metric rp --landmarks 20 --sparsity 0.3 --barcode " + d +
                  "/b.json --prime 2 --field rp --out " + d + "/c.csv") == 0);
    CHECK(read_csv(d + "/c.csv").rows() == 120);
    CHECK(run_cli("ppca --coords " + d + "/c.csv --field rp --out " + d + "/prof.csv --summary " + d + "/s.json") == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "s.json")).contains("chosen_k"));
    CHECK(run_cli("viz --coords " + d + "/c.csv --field rp --k 2 --out " + d + "/v.csv") == 0);
    CHECK(read_csv(d + "/v.csv").cols() == 2);
    CHECK(run_cli("viz --coords " + d + "/c.csv --field rp --k 7") == 2);
    CHECK(run_cli("persist --filtration " + d + "/f.txt --prime 4") == 2);

    // numerical failure: mod-2 class of RP^2 has no integer lift
    CHECK(run_cli("pipeline --dataset rp2_uniform --count 400 --landmarks 20 --sparsity 0.3 --field cp --prime 2 --out-dir " +
                  d + "/b3") == 3);

    // config file values, overridden by flags
    {
        std::ofstream cf(dir / "gen.toml");
        cf << "# sample\ndataset = \"klein_flat\"\ncount = 77\nseed = 9\n";
    }
    CHECK(run_cli("generate --config " + d + "/gen.toml --out " + d + "/g1.csv") == 0);
    auto g1 = read_csv(d + "/g1.csv");
    CHECK(g1.rows() == 77);
    CHECK(g1.cols() == 2);
    CHECK(run_cli("generate --config " + d + "/gen.toml --count 33 --out " + d + "/g2.csv") == 0);
    CHECK(read_csv(d + "/g2.csv").rows() == 33);
    {
        std::ofstream cf(dir / "bad.toml");
        cf << "dataset = klein_flat\ncolour = blue\n";
    }
    CHECK(run_cli("generate --config " + d + "/bad.toml") == 2);
    CHECK(run_cli("generate --config " + d + "/absent.toml") == 2);

    {
        std::ofstream cf(dir / "pipe.toml");
        cf << "dataset = rp2_uniform\ncount = 300\nlandmarks = 15\nsparsity = 0.3\nseed = 2\n";
    }
    CHECK(run_cli("pipeline --config " + d + "/pipe.toml --out-dir " + d + "/pb") == 0);
    auto s = nlohmann::json::parse(slurp(dir / "pb" / "summary.json"));
    CHECK(s["config"]["count"] == 300);
    CHECK(s["config"]["landmarks"] == 15);
    fs::remove_all(dir.parent_path());
}
