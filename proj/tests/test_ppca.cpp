#include "oracles.hpp"

#include "projcoords/errors.hpp"
#include "projcoords/ppca.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace projcoords;
using namespace testing_util;
using cd = std::complex<double>;

TEST_CASE("proj_distance") {
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(3, 0), e1 = Eigen::VectorXcd::Unit(3, 1);
    CHECK(proj_distance(e0, e1) == doctest::Approx(M_PI / 2));
    Eigen::VectorXcd d = (e0 + e1) / std::sqrt(2.0);
    CHECK(proj_distance(e0, d) == doctest::Approx(M_PI / 4));
    CHECK(proj_distance(e0, -3.0 * e0) == 0.0);
    CHECK(proj_distance(d, cd(0, 2) * d) <= 1e-15);
    CHECK_THROWS_AS(proj_distance(e0, Eigen::VectorXcd::Zero(3)), InvalidInput);

    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    auto rnd = [&] {
        Eigen::VectorXcd v(4);
        for (int i = 0; i < 4; ++i) v[i] = {g(rng), g(rng)};
        return v;
    };
    for (int t = 0; t < 500; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(proj_distance(a, c) <= proj_distance(a, b) + proj_distance(b, c) + 1e-12);
        CHECK(proj_distance(a, b) == doctest::Approx(proj_distance(b, a)));
        CHECK(proj_distance(a, b) <= M_PI / 2 + 1e-15);
        // small angles are resolved accurately
        Eigen::VectorXcd near = a + 1e-9 * b;
        const double exact = (b - a.dot(b) / a.squaredNorm() * a).norm() * 1e-9 / a.norm();
        CHECK(proj_distance(a, near) == doctest::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("jacobi eigen against an inertia oracle") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    for (int n : {1, 2, 3, 5, 8}) {
        for (int t = 0; t < 15; ++t) {
            for (bool cplx : {false, true}) {
                Eigen::MatrixXcd M(n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) M(i, j) = {g(rng), cplx ? g(rng) : 0.0};
                Eigen::MatrixXcd A = M + M.adjoint();
                auto E = jacobi_eigen(A);
                const double scale = A.norm();
                for (int k = 0; k < n; ++k) {
                    CHECK(std::abs(E.values[k] - bisect_eigenvalue(A, k)) <= 1e-10 * scale);
                    if (k) CHECK(E.values[k - 1] <= E.values[k]);
                }
                CHECK((E.vectors.adjoint() * E.vectors - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-12);
                CHECK((A * E.vectors - E.vectors * E.values.cast<cd>().asDiagonal()).norm() <= 1e-11 * scale);
            }
        }
    }
    // repeated eigenvalue
    Eigen::MatrixXcd I3 = 2.0 * Eigen::MatrixXcd::Identity(3, 3);
    auto E = jacobi_eigen(I3);
    CHECK(E.values.isApproxToConstant(2.0));
    CHECK(E.sweeps == 0);
    CHECK_THROWS_AS(jacobi_eigen(Eigen::MatrixXcd(2, 3)), InvalidInput);
}

TEST_CASE("last_proj_comp: hyperplane and phase invariance") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    Eigen::MatrixXd P(3, 60);
    for (int j = 0; j < 60; ++j) P.col(j) << g(rng), g(rng), 0.0;
    auto L = last_proj_comp(ProjectiveCloud::from_real_rows(P.transpose()));
    CHECK(proj_distance(L.v, Eigen::VectorXcd::Unit(3, 2)) <= 1e-12);
    CHECK(L.objective <= 1e-20);
    CHECK_FALSE(L.multiple);

    auto Y = anisotropic(rng, Field::complex, 4, 80);
    auto base = last_proj_comp(Y);
    Eigen::MatrixXcd rotated = Y.points;
    std::uniform_real_distribution<double> u(0, 2 * M_PI);
    for (int j = 0; j < rotated.cols(); ++j) rotated.col(j) *= std::polar(1.0, u(rng));
    auto again = last_proj_comp(ProjectiveCloud::from_columns(Field::complex, rotated));
    CHECK(proj_distance(base.v, again.v) <= 1e-10);

    // isotropic cloud: flagged as multiple
    Eigen::MatrixXd sym(3, 3);
    sym.setIdentity();
    CHECK(last_proj_comp(ProjectiveCloud::from_real_rows(sym)).multiple);
}

TEST_CASE("prin_proj_comps: orthonormal, basis independent, equivariant") {
    std::mt19937_64 rng(31);
    for (Field f : {Field::real, Field::complex}) {
        for (int t = 0; t < 6; ++t) {
            auto Y = anisotropic(rng, f, 6, 150);
            auto B = prin_proj_comps(Y);
            CHECK(B.vectors.rows() == 6);
            CHECK((B.vectors.adjoint() * B.vectors - Eigen::MatrixXcd::Identity(6, 6)).norm() <= 1e-10);
            CHECK(B.ladders.size() == 5);
            CHECK(B.multiple_stages == 0);
            if (f == Field::real) CHECK(B.vectors.imag().cwiseAbs().maxCoeff() == 0.0);

            // arbitrary orthonormal complement bases give the same components
            auto R = prin_proj_comps(Y, [&](const Eigen::MatrixXcd& A) {
                return Eigen::MatrixXcd(A * random_unitary(rng, static_cast<int>(A.cols()), f == Field::complex));
            });
            for (int k = 0; k < 6; ++k) CHECK(proj_distance(B.vectors.col(k), R.vectors.col(k)) <= 1e-8);

            // Y -> U Y carries v_k -> U v_k
            Eigen::MatrixXcd U = random_unitary(rng, 6, f == Field::complex);
            auto BU = prin_proj_comps(ProjectiveCloud::from_columns(f, U * Y.points));
            for (int k = 0; k < 6; ++k) CHECK(proj_distance(BU.vectors.col(k), U * B.vectors.col(k)) <= 1e-8);
        }
    }
}

TEST_CASE("project_to_k") {
    std::mt19937_64 rng(4);
    auto Y = anisotropic(rng, Field::real, 3, 120);
    auto B = prin_proj_comps(Y);
    auto full = project_to_k(Y, B, 2);
    CHECK(full.dropped == 0);
    for (int a = 0; a < 120; a += 11)
        for (int b = 0; b < 120; b += 13)
            CHECK(proj_distance(full.cloud.points.col(a), full.cloud.points.col(b)) ==
                  doctest::Approx(proj_distance(Y.points.col(a), Y.points.col(b))));

    // the projected point is the nearest point of P(span v0, v1): grid oracle
    auto one = project_to_k(Y, B, 1);
    for (int j = 0; j < 120; j += 7) {
        Eigen::VectorXcd y = Y.points.col(j);
        Eigen::VectorXcd p = B.vectors.leftCols(2) * one.cloud.points.col(j);
        double best = 10;
        for (int s = 0; s < 20000; ++s) {
            const double a = M_PI * s / 20000;
            best = std::min(best, proj_distance(y, std::cos(a) * B.vectors.col(0) + std::sin(a) * B.vectors.col(1)));
        }
        CHECK(proj_distance(y, p) <= best + 1e-9);
        CHECK(proj_distance(y, p) >= best - 1e-3);
    }

    // points orthogonal to the target are dropped and counted
    Eigen::MatrixXd rows(3, 3);
    rows << 1, 0, 0, 0, 1, 0, 0, 0, 1;
    ComponentBasis I;
    I.field = Field::real;
    I.vectors = Eigen::MatrixXcd::Identity(3, 3);
    auto pr = project_to_k(ProjectiveCloud::from_real_rows(rows), I, 1);
    CHECK(pr.dropped == 1);
    CHECK(pr.kept == std::vector<int>{0, 1});
    CHECK_THROWS_AS(project_to_k(Y, B, 0), InvalidInput);
    CHECK_THROWS_AS(project_to_k(Y, B, 3), InvalidInput);
}

TEST_CASE("variance profile") {
    std::mt19937_64 rng(14);
    for (Field f : {Field::real, Field::complex}) {
        auto Y = anisotropic(rng, f, 5, 200);
        auto B = prin_proj_comps(Y);
        auto V = variance_profile(Y, B);
        REQUIRE(V.var.size() == 4);
        for (std::size_t i = 1; i < V.var.size(); ++i) CHECK(V.var[i] >= V.var[i - 1]);
        CHECK(V.pvar.back() == doctest::Approx(1.0));
        for (double p : V.pvar) CHECK((p >= 0 && p <= 1 + 1e-15));
    }
    // a cloud inside a projective line: everything in the first step
    std::normal_distribution<double> g;
    Eigen::MatrixXd rows(100, 4);
    for (int j = 0; j < 100; ++j) rows.row(j) << g(rng), g(rng), 0, 0;
    auto Y = ProjectiveCloud::from_real_rows(rows);
    auto V = variance_profile(Y, prin_proj_comps(Y));
    CHECK(V.pvar[0] == doctest::Approx(1.0));

    // a single repeated point has no variance
    Eigen::MatrixXd same = Eigen::MatrixXd::Zero(10, 3);
    same.col(0).setOnes();
    auto S = ProjectiveCloud::from_real_rows(same);
    auto D = variance_profile(S, prin_proj_comps(S));
    CHECK(D.degenerate);
    CHECK(D.pvar == std::vector<double>{1.0, 1.0});
}

TEST_CASE("visualizations") {
    Eigen::MatrixXd rows(4, 3);
    rows << 1, 0, 0, 0, 1, 0, -1, 0.5, 0, 1, -0.5, 0;
    auto disk = viz_rp_disk(ProjectiveCloud::from_real_rows(rows));
    CHECK(disk.row(0).norm() == 0.0);
    CHECK(disk(1, 0) == doctest::Approx(1.0));
    CHECK((disk.row(2) - disk.row(3)).norm() <= 1e-15);
    for (int i = 0; i < 4; ++i) CHECK(disk.row(i).norm() <= 1.0 + 1e-15);

    Eigen::MatrixXcd c(2, 3);
    c << 1, 0, 1, 0, 1, 1;
    auto h = viz_cp1_hopf(ProjectiveCloud::from_columns(Field::complex, c));
    CHECK((h.row(0) - Eigen::RowVector3d(0, 0, 1)).norm() <= 1e-15);
    CHECK((h.row(1) - Eigen::RowVector3d(0, 0, -1)).norm() <= 1e-15);
    CHECK((h.row(2) - Eigen::RowVector3d(1, 0, 0)).norm() <= 1e-15);
    Eigen::MatrixXcd ph = c * cd(0, 1);
    CHECK(viz_cp1_hopf(ProjectiveCloud::from_columns(Field::complex, ph)).isApprox(h));
    CHECK_THROWS_AS(viz_cp1_hopf(ProjectiveCloud::from_columns(Field::complex, Eigen::MatrixXcd::Identity(3, 3))),
                    InvalidInput);
}

TEST_CASE("choose_dimension") {
    VarianceProfile p;
    p.pvar = {0.2, 0.5, 0.9, 1.0};
    auto c = choose_dimension(p, 0.7);
    CHECK(c.k == 3);
    CHECK(c.elbow == 3);
    p.pvar = {0.8, 0.9, 1.0};
    c = choose_dimension(p);
    CHECK(c.k == 1);
    CHECK(c.elbow == 1);
    p.pvar = {0.7, 1.0};  // strictly above the threshold
    CHECK(choose_dimension(p, 0.7).k == 2);
    p.pvar = {1.0};
    CHECK(choose_dimension(p).k == 1);
    CHECK_THROWS_AS(choose_dimension(VarianceProfile{}), InvalidInput);
}
