#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wavecons/dno.hpp"
#include "wavecons/extension.hpp"

using namespace wavecons;
using Catch::Matchers::WithinAbs;

namespace {
const PeriodicGrid grid = make_grid(128, 40.0, -20.0);
constexpr double h = 1.0;
}  // namespace

TEST_CASE("flat-surface DNO symbol is k tanh(kh) at every order") {
    const RealField flat(grid, 0.0);
    for (int order : {0, 2, 4}) {
        for (int m : {1, 5, 13, 31, 42}) {
            const double k = 2.0 * M_PI * m / grid.length;
            RealField q(grid);
            for (int j = 0; j < grid.n_points; ++j) q[j] = std::cos(k * grid.node(j));
            const RealField Gq = dno_apply(flat, q, h, order);
            const double symbol = k * std::tanh(k * h);
            for (int j = 0; j < grid.n_points; ++j)
                CHECK_THAT(Gq[j], WithinAbs(symbol * q[j], 1e-12 * symbol));
        }
    }
}

TEST_CASE("DNO basics") {
    SECTION("zero trace maps to zero") {
        RealField eta(grid);
        for (int j = 0; j < grid.n_points; ++j)
            eta[j] = 0.05 * std::exp(-std::pow(grid.node(j) / 3.0, 2));
        CHECK(dno_apply(eta, RealField(grid, 0.0), h, 4).max_abs() < 1e-14);
    }
    SECTION("linearity in the trace") {
        RealField eta(grid);
        for (int j = 0; j < grid.n_points; ++j)
            eta[j] = 0.04 * std::exp(-std::pow((grid.node(j) - 1.0) / 3.0, 2));
        const RealField q1 = oracles::random_band_limited(grid, 41u, 20, 0.1);
        const RealField q2 = oracles::random_band_limited(grid, 43u, 20, 0.1);
        const RealField lhs = dno_apply(eta, q1 + q2, h, 4);
        const RealField rhs = dno_apply(eta, q1, h, 4) + dno_apply(eta, q2, h, 4);
        for (int j = 0; j < grid.n_points; ++j) CHECK_THAT(lhs[j], WithinAbs(rhs[j], 1e-12));
    }
    SECTION("order out of range") {
        CHECK_THROWS_AS(dno_apply(RealField(grid, 0.0), RealField(grid, 0.0), h, 9),
                        std::invalid_argument);
        CHECK_THROWS_AS(dno_apply(RealField(grid, 0.0), RealField(grid, 0.0), h, -1),
                        std::invalid_argument);
    }
    SECTION("surface reaching the bottom is rejected") {
        CHECK_THROWS_AS(dno_apply(RealField(grid, 1.0), RealField(grid, 0.0), h, 4),
                        std::invalid_argument);
    }
}

TEST_CASE("DNO agrees with the harmonic-extension oracle for gentle surfaces") {
    RealField eta(grid), q(grid);
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        eta[j] = 0.01 * std::exp(-std::pow(x / 3.0, 2));
        q[j] = 0.02 * std::exp(-std::pow((x - 1.5) / 4.0, 2));
    }
    const RealField Gq = dno_apply(eta, q, h, 4);
    const HarmonicExtension ext = fit_extension(eta, q, h);
    const RealField eta_x = derivative(eta, 1);
    double gap = 0.0, scale = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
        const BulkSample s = ext.eval_potential(grid.node(j), eta[j]);
        gap = std::max(gap, std::abs((s.phi_z - eta_x[j] * s.phi_x) - Gq[j]));
        scale = std::max(scale, std::abs(s.phi_z - eta_x[j] * s.phi_x));
    }
    CHECK(gap <= 1e-6 * scale);
}

TEST_CASE("DNO values have zero mean (mass conservation at the RHS level)") {
    RealField eta(grid), q(grid);
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.node(j);
        eta[j] = 0.05 * std::exp(-std::pow(x / 3.0, 2));
        q[j] = 0.08 * std::exp(-std::pow((x + 2.0) / 3.5, 2));
    }
    for (int order : {1, 2, 4, 6}) {
        const RealField Gq = dno_apply(eta, q, h, order);
        CHECK_THAT(mean(Gq), WithinAbs(0.0, 1e-15));
    }
}

TEST_CASE("DNO truncation order converges for an analytic single-mode state") {
    // With eta a single resolved cosine and q another, successive orders must
    // approach the collocation-extension value geometrically.
    RealField eta(grid), q(grid);
    const double k = 2.0 * M_PI * 2.0 / grid.length;
    for (int j = 0; j < grid.n_points; ++j) {
        eta[j] = 0.05 * std::cos(k * grid.node(j));
        q[j] = 0.1 * std::sin(k * grid.node(j));
    }
    const HarmonicExtension ext = fit_extension(eta, q, h);
    const RealField eta_x = derivative(eta, 1);
    RealField target(grid);
    for (int j = 0; j < grid.n_points; ++j) {
        const BulkSample s = ext.eval_potential(grid.node(j), eta[j]);
        target[j] = s.phi_z - eta_x[j] * s.phi_x;
    }
    double prev = 1e9;
    for (int order : {0, 1, 2, 3, 4}) {
        const RealField Gq = dno_apply(eta, q, h, order);
        double err = 0.0;
        for (int j = 0; j < grid.n_points; ++j)
            err = std::max(err, std::abs(Gq[j] - target[j]));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}
