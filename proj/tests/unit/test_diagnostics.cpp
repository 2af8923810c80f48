#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sngs/diagnostics.hpp"
#include "sngs/error.hpp"
#include "states.hpp"

using namespace sngs;

TEST_CASE("norm_report examples") {
    {
        const auto g = make_grid(4095.0 / 1024.0, 4096);
        const auto r = norm_report(oracle::indicator(g), 4.0);
        CHECK(r.l2_sq == doctest::Approx(4 * oracle::kPi / 3).epsilon(1e-6));
    }
    {
        const auto g = make_grid(10.0, 64);
        const auto r = norm_report(RadialField::zeros(g), 4.0);
        CHECK(r.grad_sq == 0.0);
        CHECK(r.l2_sq == 0.0);
        CHECK(r.lq == 0.0);
        CHECK(r.D == 0.0);
        CHECK(r.M == 0.0);
    }
    {
        const auto g = make_grid(40.0, 4096);
        const auto u = RadialField::sample(g, [](double r) { return std::exp(-r * r / 2); });
        const auto r = norm_report(u, 4.0);
        CHECK(r.l2_sq == doctest::Approx(std::pow(oracle::kPi, 1.5)).epsilon(1e-8));
        // grad: 4 pi int r^4 e^{-r^2} dr = 3 pi^{3/2} / 2; L^4: 4 pi int e^{-2 r^2} r^2 dr = (pi/2)^{3/2}.
        CHECK(r.grad_sq == doctest::Approx(1.5 * std::pow(oracle::kPi, 1.5)).epsilon(1e-6));
        CHECK(r.lq == doctest::Approx(std::pow(oracle::kPi / 2, 1.5)).epsilon(1e-8));
        CHECK(r.sup_u == 1.0);
        CHECK(r.sup_v == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(r.M == r.sup_u + r.sup_v);
    }
}

TEST_CASE("identities follow their defining combinations") {
    const auto g = make_grid(20.0, 1024);
    const auto u = RadialField::sample(g, [](double r) { return 0.8 * std::exp(-r * r / 3); });
    const ModelParams p{0.7, 1.3, 0.4, 3.5};
    const auto d = identities(u, p);
    const double J = d.grad_sq / 2 + p.lambda * d.l2_sq / 2 - p.a * d.D / 4 - p.nu * d.lq / p.q;
    const double N = d.grad_sq + p.lambda * d.l2_sq - p.a * d.D - p.nu * d.lq;
    const double P = d.grad_sq / 2 + 1.5 * p.lambda * d.l2_sq - 1.25 * p.a * d.D - 3 * p.nu * d.lq / p.q;
    CHECK(d.J == doctest::Approx(J).epsilon(1e-14));
    CHECK(d.nehari == doctest::Approx(N).epsilon(1e-14));
    CHECK(d.pohozaev == doctest::Approx(P).epsilon(1e-14));
    CHECK_FALSE(d.level_identity_residual.has_value());
    CHECK(std::abs(d.nehari) > 1e-3);
    CHECK(std::abs(d.pohozaev) > 1e-3);
    const auto d11 = identities(u, {0.7, 1.0, 1.0, 3.5});
    REQUIRE(d11.level_identity_residual.has_value());
    CHECK(*d11.level_identity_residual == doctest::Approx(std::abs(d11.J - d11.grad_sq / 3 - d11.D / 6)));
}

TEST_CASE("converged Kwong state satisfies Nehari and Pohozaev") {
    // The Pohozaev residual converges at fourth order; at n = 4096 it is 4e-8.
    const auto& w = states::kwong(4.0, 8192);
    CHECK(std::abs(w.diagnostics.nehari) <= 1e-8 * w.diagnostics.grad_sq);
    CHECK(std::abs(w.diagnostics.pohozaev) <= 1e-8 * w.diagnostics.grad_sq);
}

TEST_CASE("converged mixed state satisfies the level identity") {
    const auto& s = states::mixed(1.0, 4.0);
    REQUIRE(s.diagnostics.level_identity_residual.has_value());
    CHECK(*s.diagnostics.level_identity_residual <= 1e-6 * std::abs(s.diagnostics.J));
}

TEST_CASE("Kwong and Choquard norm ratios") {
    for (double q : {2.5, 4.0}) {
        const auto& w = states::kwong(q);
        CHECK(w.diagnostics.grad_sq / w.diagnostics.l2_sq == doctest::Approx(oracle::kwong_ratio(q)).epsilon(1e-4));
    }
    const auto& u = states::choquard();
    CHECK(u.diagnostics.grad_sq / u.diagnostics.l2_sq == doctest::Approx(oracle::kChoquardRatio).epsilon(1e-4));
}

TEST_CASE("identity residuals shrink under refinement") {
    const auto& a = states::kwong(4.0, 1024);
    const auto& b = states::kwong(4.0, 2048);
    CHECK(std::abs(b.diagnostics.pohozaev) < std::abs(a.diagnostics.pohozaev));
}

TEST_CASE("monotonicity_check examples") {
    using L = std::vector<std::pair<double, double>>;
    CHECK(monotonicity_check(L{{0.1, 1.0}, {1, 2.0}}).pass);
    CHECK(monotonicity_check(L{{0.1, 1.0}}).pass);
    const auto bad = monotonicity_check(L{{0.1, 2.0}, {1, 1.0}});
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(monotonicity_check(L{{0.1, 1.0}, {1, 1.0 - 1e-9}}).pass);
    CHECK_THROWS_AS(monotonicity_check(L{{1, 1.0}, {0.1, 2.0}}), Error);
    CHECK_THROWS_AS(monotonicity_check(L{{1, 1.0}, {1, 2.0}}), Error);
}

TEST_CASE("Hartree energy is non-negative and J finite on arbitrary fields") {
    std::mt19937_64 rng(8);
    const auto g = make_grid(30.0, 800);
    for (int t = 0; t < 10; ++t) {
        const auto d = identities(oracle::random_smooth_profile(g, rng), {1, 1, 1, 4});
        CHECK(d.D >= 0.0);
        CHECK(std::isfinite(d.J));
    }
}
