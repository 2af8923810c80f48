#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sngs/hartree.hpp"

using namespace sngs;

TEST_CASE("hartree of zero is zero") {
    const auto g = make_grid(10.0, 64);
    const auto hp = hartree_potential(RadialField::zeros(g));
    for (double x : hp.v.values()) CHECK(x == 0.0);
    CHECK(hp.mass == 0.0);
    CHECK(hp.line_integral == 0.0);
    CHECK(hartree_energy(RadialField::zeros(g)) == 0.0);
    CHECK(far_field_mass(RadialField::zeros(g)) == 0.0);
}

TEST_CASE("hartree of the indicator matches the closed form") {
    const auto g = make_grid(4095.0 / 1024.0, 4096);
    const auto u = oracle::indicator(g);
    const auto hp = hartree_potential(u);
    double err = 0.0;
    for (std::size_t i = 0; i < g->n(); ++i) err = std::max(err, std::abs(hp.v[i] - oracle::indicator_potential(g->node(i))));
    CHECK(err <= 5e-6);
    CHECK(hp.v[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(hp.v[1024] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(hp.v[2048] == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
    CHECK(far_field_mass(u) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(hartree_energy(u) == doctest::Approx(8.0 * oracle::kPi / 15.0).epsilon(1e-5));
}

TEST_CASE("hartree of a Gaussian") {
    const auto g = make_grid(40.0, 4096);
    const auto u = RadialField::sample(g, [](double r) { return std::exp(-r * r / 2); });
    const auto hp = hartree_potential(u);
    CHECK(hp.v[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(hp.line_integral == hp.v[0]);
    CHECK(far_field_mass(u) == doctest::Approx(std::sqrt(oracle::kPi) / 4).epsilon(1e-8));
    // Exact potential: sqrt(pi) erf(r) / (4 r).
    double err = 0.0;
    for (std::size_t i = 1; i < g->n(); ++i) {
        const double r = g->node(i);
        err = std::max(err, std::abs(hp.v[i] - std::sqrt(oracle::kPi) * std::erf(r) / (4 * r)));
    }
    CHECK(err <= 1e-8);
}

TEST_CASE("hartree energy is quartic") {
    const auto g = make_grid(20.0, 1024);
    std::mt19937_64 rng(5);
    const auto u = oracle::random_smooth_profile(g, rng);
    std::vector<double> t(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) t[i] = 1.7 * u[i];
    const double d = hartree_energy(u);
    CHECK(d > 0.0);
    CHECK(hartree_energy(RadialField(g, t)) == doctest::Approx(std::pow(1.7, 4) * d).epsilon(1e-13));
}

TEST_CASE("two-sweep potential agrees with the kernel form") {
    const auto g = make_grid(40.0, 1024);
    std::mt19937_64 rng(1234);
    for (int t = 0; t < 5; ++t) {
        const auto u = oracle::random_smooth_profile(g, rng);
        const auto hp = hartree_potential(u);
        const auto ref = oracle::kernel_form_potential(u);
        double err = 0.0;
        for (std::size_t i = 0; i < g->n(); ++i) err = std::max(err, std::abs(hp.v[i] - ref[i]));
        CHECK(err <= 1e-8 * hp.line_integral);
    }
}

TEST_CASE("potential is positive, non-increasing and carries the mass tail") {
    const auto g = make_grid(40.0, 2048);
    std::mt19937_64 rng(77);
    for (int t = 0; t < 5; ++t) {
        const auto u = oracle::random_smooth_profile(g, rng);
        const auto hp = hartree_potential(u);
        for (std::size_t i = 0; i < g->n(); ++i) REQUIRE(hp.v[i] > 0.0);
        for (std::size_t i = 1; i < g->n(); ++i) REQUIRE(hp.v[i] <= hp.v[i - 1]);
        CHECK(std::abs(hp.v[g->n() - 1] * g->r_max() - hp.mass) <= 1e-10 * hp.mass);
        CHECK(hp.v.far_field().kind == FarField::Kind::coulomb_tail);
        CHECK(hp.v.far_field().mass == hp.mass);
    }
}

TEST_CASE("discrete Poisson residual is second order") {
    auto residual = [](std::size_t n) {
        const auto g = make_grid(12.0, n);
        const auto u = RadialField::sample(g, [](double r) { return (1 + r * r / 4) * std::exp(-r * r / 2); });
        const auto v = hartree_potential(u).v;
        const double h = g->h();
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double r = g->node(i);
            const double d2 = (v[i + 1] - 2 * v[i] + v[i - 1]) / (h * h);
            const double d1 = (v[i + 1] - v[i - 1]) / (2 * h);
            if (r > 1.0 && r < 8.0) e = std::max(e, std::abs(-d2 - 2 / r * d1 - u[i] * u[i]));
        }
        return e;
    };
    const double a = residual(257), b = residual(513);
    CHECK(a <= 1e-2);
    CHECK(a / b >= 3.5);
}

TEST_CASE("sector Green function k = 0 reproduces the potential") {
    const auto g = make_grid(30.0, 600);
    std::mt19937_64 rng(3);
    const auto u = oracle::random_smooth_profile(g, rng);
    std::vector<double> rho(g->n()), out(g->n());
    for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = u[i] * u[i];
    apply_sector_green(*g, 0, rho, out);
    const auto v = hartree_potential(u).v;
    for (std::size_t i = 1; i < g->n(); ++i) CHECK(out[i] == doctest::Approx(v[i]).epsilon(1e-12));
}

TEST_CASE("sector Green functions are symmetric in the r^2 dr pairing") {
    const auto g = make_grid(20.0, 400);
    std::mt19937_64 rng(9);
    for (int k : {1, 2, 3}) {
        const auto a = oracle::random_odd_profile(g, rng), b = oracle::random_odd_profile(g, rng);
        std::vector<double> ga(g->n()), gb(g->n());
        apply_sector_green(*g, k, a.span(), ga);
        apply_sector_green(*g, k, b.span(), gb);
        double ab = 0.0, ba = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < g->n(); ++i) {
            const double w = g->weights_r2dr()[i];
            ab += w * b[i] * ga[i];
            ba += w * a[i] * gb[i];
            scale += w * std::abs(b[i] * ga[i]);
        }
        CHECK(std::abs(ab - ba) <= 1e-12 * scale);
    }
}
