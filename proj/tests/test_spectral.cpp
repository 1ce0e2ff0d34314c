#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wavecons/grid.hpp"
#include "wavecons/spectral.hpp"

using namespace wavecons;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

template <typename F>
RealField sampled_fn(const PeriodicGrid& grid, F&& f) {
    RealField r(grid);
    for (int j = 0; j < grid.n_points; ++j) r[j] = f(grid.node(j));
    return r;
}

}  // namespace

TEST_CASE("make_grid places nodes and rejects bad input") {
    const PeriodicGrid g = make_grid(16, 2.0 * M_PI, -M_PI);
    CHECK_THAT(g.node(0), WithinAbs(-M_PI, 1e-15));
    CHECK_THAT(g.node(1), WithinAbs(-M_PI + M_PI / 8.0, 1e-15));
    CHECK_THAT(g.dx(), WithinAbs(M_PI / 8.0, 1e-15));

    const PeriodicGrid g2 = make_grid(256, 100.0, -50.0);
    CHECK_THAT(g2.dx(), WithinAbs(0.390625, 0.0));

    CHECK_THROWS_AS(make_grid(15, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(8, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, -1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(64, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("spectral derivative is exact on resolved modes") {
    const PeriodicGrid g = make_grid(64, 7.0, -3.5);
    const double L = g.length;

    SECTION("first derivative of sin(2 pi x / L)") {
        auto f = sampled_fn(g, [&](double x) { return std::sin(2.0 * M_PI * x / L); });
        const RealField d = derivative(f, 1);
        for (int j = 0; j < g.n_points; ++j)
            CHECK_THAT(d[j],
                       WithinAbs(2.0 * M_PI / L * std::cos(2.0 * M_PI * g.node(j) / L), 1e-13));
    }
    SECTION("derivative of a constant vanishes") {
        RealField f(g, 4.25);
        const RealField d = derivative(f, 1);
        CHECK(d.max_abs() < 1e-14);
    }
    SECTION("second derivative of cos(kx)") {
        const double k = 3.0 * 2.0 * M_PI / L;
        auto f = sampled_fn(g, [&](double x) { return std::cos(k * x); });
        const RealField d2 = derivative(f, 2);
        for (int j = 0; j < g.n_points; ++j)
            CHECK_THAT(d2[j], WithinAbs(-k * k * std::cos(k * g.node(j)), 1e-11));
    }
    SECTION("unsupported order rejected") {
        RealField f(g, 1.0);
        CHECK_THROWS_AS(derivative(f, 0), std::invalid_argument);
        CHECK_THROWS_AS(derivative(f, 4), std::invalid_argument);
    }
}

TEST_CASE("antiderivative inverts derivative on zero-mean fields") {
    const PeriodicGrid g = make_grid(64, 10.0, 0.0);
    const double k = 2.0 * 2.0 * M_PI / g.length;

    SECTION("cos(kx) integrates to sin(kx)/k") {
        auto f = sampled_fn(g, [&](double x) { return std::cos(k * x); });
        const RealField F = antiderivative(f);
        for (int j = 0; j < g.n_points; ++j)
            CHECK_THAT(F[j], WithinAbs(std::sin(k * g.node(j)) / k, 1e-13));
    }
    SECTION("zero stays zero") {
        RealField f(g, 0.0);
        CHECK(antiderivative(f).max_abs() == 0.0);
    }
    SECTION("nonzero mean is rejected with the offending mean named") {
        RealField f(g, 1.0);
        CHECK_THROWS_WITH(antiderivative(f), Catch::Matchers::ContainsSubstring("mean"));
    }
    SECTION("derivative after antiderivative is the identity (band-limited)") {
        RealField f = oracles::random_band_limited(g, 11u, g.n_points / 4);
        RealField f0 = f;
        // remove the mean so the antiderivative exists
        const double m = mean(f);
        for (int j = 0; j < g.n_points; ++j) f0[j] -= m;
        const RealField back = derivative(antiderivative(f0), 1);
        for (int j = 0; j < g.n_points; ++j) CHECK_THAT(back[j], WithinAbs(f0[j], 1e-12));
    }
}

TEST_CASE("dealias implements the 2/3 rule and is a projection") {
    const PeriodicGrid g = make_grid(64, 2.0 * M_PI, 0.0);

    SECTION("band-limited fields pass through unchanged") {
        RealField f = oracles::random_band_limited(g, 3u, g.n_points / 3 - 1);
        const RealField d = dealias(f);
        for (int j = 0; j < g.n_points; ++j) CHECK_THAT(d[j], WithinAbs(f[j], 1e-12));
    }
    SECTION("the Nyquist mode is annihilated") {
        auto f = sampled_fn(g, [&](double x) { return std::cos(32.0 * x); });
        CHECK(dealias(f).max_abs() < 1e-12);
    }
    SECTION("projection property on random fields") {
        for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
            RealField f = oracles::random_band_limited(g, seed, g.n_points / 2 - 1);
            const RealField once = dealias(f);
            const RealField twice = dealias(once);
            for (int j = 0; j < g.n_points; ++j) CHECK_THAT(twice[j], WithinAbs(once[j], 1e-12));
        }
    }
}

TEST_CASE("integrate is spectrally exact for periodic integrands") {
    SECTION("zero-mean cosine integrates to zero") {
        const PeriodicGrid g = make_grid(64, 5.0, 0.0);
        const double k = 4.0 * 2.0 * M_PI / g.length;
        auto f = sampled_fn(g, [&](double x) { return std::cos(k * x); });
        CHECK_THAT(integrate(f), WithinAbs(0.0, 1e-13));
    }
    SECTION("constant on L = 10") {
        const PeriodicGrid g = make_grid(32, 10.0, -5.0);
        CHECK_THAT(integrate(RealField(g, 1.0)), WithinRel(10.0, 1e-15));
    }
    SECTION("gaussian bump matches composite Simpson to 1e-12 relative") {
        const PeriodicGrid g = make_grid(16384, 100.0, -50.0);
        auto f = sampled_fn(g, [&](double x) { return 0.02 * std::exp(-(x / 4.0) * (x / 4.0)); });
        const double simpson = oracles::simpson_periodic(f.samples(), g.dx());
        CHECK_THAT(integrate(f), WithinRel(simpson, 1e-12));
    }
}

TEST_CASE("x_field carries node coordinates") {
    const PeriodicGrid g = make_grid(16, 2.0 * M_PI, -M_PI);
    const RealField x = x_field(g);
    CHECK_THAT(x[0], WithinAbs(-M_PI, 1e-15));
    CHECK_THAT(x[15], WithinAbs(M_PI - g.dx(), 1e-14));

    SECTION("first moment of an even decaying field about the center vanishes") {
        // Decay matters: a non-decaying even field leaves an unpaired node at
        // the periodic seam (x = -pi has no +pi partner).
        auto eta = sampled_fn(g, [](double xx) { return std::exp(-(xx / 0.5) * (xx / 0.5)); });
        CHECK_THAT(integrate(x * eta), WithinAbs(0.0, 1e-13));
    }
    SECTION("first moment of an offset gaussian sits at its center") {
        const PeriodicGrid gg = make_grid(16384, 100.0, -50.0);
        const double x0 = 7.5, w = 3.0;
        auto eta = sampled_fn(gg, [&](double xx) {
            return std::exp(-((xx - x0) / w) * ((xx - x0) / w));
        });
        const RealField xf = x_field(gg);
        std::vector<double> moment(static_cast<size_t>(gg.n_points));
        for (int j = 0; j < gg.n_points; ++j) moment[static_cast<size_t>(j)] = xf[j] * eta[j];
        const double simpson = oracles::simpson_periodic(moment, gg.dx());
        CHECK_THAT(integrate(xf * eta), WithinRel(simpson, 1e-12));
        CHECK_THAT(integrate(xf * eta), WithinRel(x0 * integrate(eta), 1e-10));
    }
}

TEST_CASE("periodicity and Parseval identities") {
    const PeriodicGrid g = make_grid(128, 13.0, -2.0);
    RealField f = oracles::random_band_limited(g, 99u, g.n_points / 2 - 1);

    SECTION("the integral of any derivative vanishes") {
        CHECK_THAT(integrate(derivative(f, 1)), WithinAbs(0.0, 1e-11));
    }
    SECTION("Parseval under forward-unnormalized / inverse-1/n convention") {
        CHECK_THAT(energy_physical(f), WithinRel(energy_spectral(f), 1e-12));
    }
}

TEST_CASE("RealField guards its invariants") {
    const PeriodicGrid g = make_grid(16, 1.0, 0.0);
    CHECK_THROWS_AS(RealField(g, std::vector<double>(15, 0.0)), std::invalid_argument);
    RealField ok(g, 1.0);
    CHECK(ok.all_finite());
    ok[3] = std::nan("");
    CHECK_FALSE(ok.all_finite());
}
