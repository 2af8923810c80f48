#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sngs/error.hpp"
#include "sngs/hartree.hpp"
#include "sngs/laplacian.hpp"
#include "sngs/linearized.hpp"
#include "sngs/scaling.hpp"
#include "states.hpp"

using namespace sngs;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an sngs::Error");
    return ErrorCode::UsageError;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Relative size of W^{-1/2} S_1 x for x = the translation mode's f on the active nodes.
double translation_residual(const GroundState& s) {
    const auto op = sector_form(s, 1);
    const auto t = translation_mode(convention_map(s, MapDirection::to_a2));
    const std::size_t m = op.dimension();
    std::vector<double> x(t.f.values().begin() + 1, t.f.values().begin() + 1 + m), y(m);
    op.apply(x, y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += y[i] * y[i] / op.mass[i];
        den += op.mass[i] * x[i] * x[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("convention map round trip and parameters") {
    const auto& s = states::mixed(1.0, 4.0);
    const auto a2 = convention_map(s, MapDirection::to_a2);
    CHECK(a2.params.a == 2.0);
    CHECK(a2.params.nu == doctest::Approx(2.0));
    CHECK(a2.params.lambda == s.params.lambda);
    CHECK(a2.residual_norm <= 1e-10);
    for (std::size_t i = 1; i < s.u.size(); i += 97) {
        CHECK(a2.u[i] == doctest::Approx(s.u[i] / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(a2.v[i] == doctest::Approx(s.v[i] / 2.0).epsilon(1e-14));
    }
    const auto back = convention_map(a2, MapDirection::from_a2);
    CHECK(back.params == s.params);
    for (std::size_t i = 0; i < s.u.size(); ++i) REQUIRE(back.u[i] == doctest::Approx(s.u[i]).epsilon(1e-14));
    CHECK(code_of([&] { convention_map(s, MapDirection::from_a2); }) == ErrorCode::WrongConvention);
    CHECK(code_of([] { convention_map(states::kwong(4.0), MapDirection::to_a2); }) == ErrorCode::WrongConvention);
}

TEST_CASE("Choquard under the convention map") {
    const auto& u = states::choquard();
    const auto a2 = convention_map(u, MapDirection::to_a2);
    CHECK(a2.params.nu == 0.0);
    CHECK(a2.residual_norm <= 1e-10);
    // (U/sqrt2, V/2): check -Delta v = u^2 by recomputing the potential.
    const auto v = hartree_potential(a2.u).v;
    for (std::size_t i = 0; i < v.size(); i += 101) CHECK(v[i] == doctest::Approx(a2.v[i]).epsilon(1e-13));
    const auto c = check_convention_pairs(u);
    CHECK(c.mapped_residual <= 1e-10);
    CHECK(c.mapped_potential_mismatch <= 1e-12);
    CHECK(c.unscaled_potential_mismatch == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("sectors check their input state") {
    GroundState bad = states::choquard();
    bad.residual_norm = 1e-3;
    CHECK(code_of([&] { sector_form(bad, 1); }) == ErrorCode::UnconvergedState);
    CHECK(code_of([&] { translation_mode(bad); }) == ErrorCode::UnconvergedState);
    CHECK(code_of([&] { convention_map(bad, MapDirection::to_a2); }) == ErrorCode::UnconvergedState);
}

TEST_CASE("sector form structure") {
    const auto& u = states::choquard(1024);
    for (int k : {0, 1, 2, 3}) {
        const auto op = sector_form(u, k);
        CHECK(op.centrifugal == k * (k + 1));
        CHECK(op.params.a == 2.0);
        CHECK(op.coupled);
        const auto zero = RadialField::zeros(u.grid(), k == 0 ? Parity::even : Parity::odd);
        CHECK(quadratic_form_value(op, zero, zero) == 0.0);
    }
    const auto kw = sector_form(states::kwong(4.0, 1024), 0);
    CHECK_FALSE(kw.coupled);
    CHECK(kw.params.a == 0.0);
    const auto op1 = sector_form(u, 1);
    const auto even = RadialField::sample(u.grid(), [](double r) { return std::exp(-r * r); });
    CHECK(code_of([&] { quadratic_form_value(op1, even, even); }) == ErrorCode::ParityMismatch);
}

TEST_CASE("sector forms are symmetric") {
    const auto& s = states::mixed(1.0, 4.0, 1024);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> nd;
    for (int k : {0, 1, 2}) {
        const auto op = sector_form(s, k);
        const std::size_t m = op.dimension();
        std::vector<double> x(m), y(m), ax(m), ay(m);
        for (std::size_t i = 0; i < m; ++i) {
            x[i] = nd(rng);
            y[i] = nd(rng);
        }
        op.apply(x, ax);
        op.apply(y, ay);
        CHECK(std::abs(dot(ax, y) - dot(x, ay)) <= 1e-12 * norm(ax) * norm(y));
    }
}

TEST_CASE("translation modes") {
    const auto& w = states::kwong(4.0);
    const auto tw = translation_mode(w);
    CHECK(tw.f.parity() == Parity::odd);
    for (double x : tw.g.values()) REQUIRE(x == 0.0);
    for (std::size_t i = 1; i + 1 < tw.f.size() / 2; ++i) REQUIRE(tw.f[i] < 0.0);

    const auto& u = states::choquard();
    const auto tu = translation_mode(u);
    for (std::size_t i = 1; i + 1 < tu.f.size(); ++i) {
        REQUIRE(tu.f[i] <= 1e-14);
        REQUIRE(tu.g[i] <= 1e-14);
    }
    const auto a2 = convention_map(u, MapDirection::to_a2);
    const auto op = sector_form(a2, 1);
    const auto t = translation_mode(a2);
    double fsq = 0.0;
    for (std::size_t i = 0; i < t.f.size(); ++i) fsq += u.grid()->weights_r2dr()[i] * t.f[i] * t.f[i];
    const double scale = radial_kinetic_form(*u.grid(), 1, t.f.span()) + fsq;
    CHECK(std::abs(quadratic_form_value(op, t.f, t.g)) <= 1e-6 * scale);
}

TEST_CASE("sector-1 residual at the translation mode is second order") {
    const double a = translation_residual(states::choquard(1024));
    const double b = translation_residual(states::choquard(2048));
    CHECK(a / b >= 3.5);
}

TEST_CASE("Choquard sector spectra") {
    const auto& u = states::choquard();
    const auto s1 = sector_spectrum(sector_form(u, 1), 2);
    REQUIRE(s1.eigenvalues.size() == 2);
    const double h = u.grid()->h();
    CHECK(std::abs(s1.eigenvalues[0]) <= 50 * h * h * std::abs(s1.eigenvalues[1]));
    CHECK(s1.eigenvalues[1] > 0.0);
    const auto s2 = sector_spectrum(sector_form(u, 2), 2);
    CHECK(s2.eigenvalues[0] > 0.0);
    // Ordering in k for k >= 1.
    const auto s3 = sector_spectrum(sector_form(u, 3), 1);
    CHECK(s1.eigenvalues[0] <= s2.eigenvalues[0]);
    CHECK(s2.eigenvalues[0] <= s3.eigenvalues[0]);
    // g modes reconstruct the potential component.
    REQUIRE(s1.g_modes.size() == 2);
    CHECK(s1.g_modes[0].parity() == Parity::odd);
}

TEST_CASE("nondegeneracy reports") {
    const auto rep = nondegeneracy_report(states::choquard(), 3);
    CHECK(rep.verdict == Verdict::nondegenerate);
    REQUIRE(rep.sectors.size() == 4);
    CHECK(rep.sectors[1].kernel_dimension == 1);
    REQUIRE(rep.sectors[1].zero_mode_match.has_value());
    CHECK(*rep.sectors[1].zero_mode_match >= kZeroModeMatch);
    CHECK(rep.gap_tol == 1e-3);
    CHECK(rep.zero_tol > 0.0);
    CHECK(std::abs(rep.sectors[0].eigenvalues[0]) > rep.gap_tol);

    const auto kw = nondegeneracy_report(states::kwong(4.0), 2);
    CHECK(kw.sectors[0].kernel_dimension == 0);
    CHECK(kw.verdict == Verdict::nondegenerate);

    const auto& s = states::mixed(1e-2, 4.0);
    const auto scaled = scaled_ground_state(s, ScaleForm::nu_form, make_grid(40.0, 4096));
    CHECK(nondegeneracy_report(scaled, 3).verdict == Verdict::nondegenerate);
    CHECK(code_of([] { nondegeneracy_report(states::choquard(), 1); }) == ErrorCode::InvalidParams);
}

TEST_CASE("a tight zero tolerance turns the verdict inconclusive") {
    Tolerances t;
    t.zero_tol = 1e-300;
    const auto rep = nondegeneracy_report(states::choquard(1024), 2, t);
    CHECK(rep.verdict == Verdict::inconclusive);
    CHECK(rep.zero_tol == 1e-300);
}
