#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "sngs/banded.hpp"
#include "sngs/eigen.hpp"
#include "sngs/error.hpp"
#include "sngs/field_io.hpp"
#include "sngs/krylov.hpp"
#include "sngs/radial_grid.hpp"

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

double sum(const std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x;
    return s;
}

}  // namespace

TEST_CASE("make_grid validates its arguments") {
    CHECK(code_of([] { make_grid(10.0, 5); }) == ErrorCode::TooFewNodes);
    CHECK(code_of([] { make_grid(0.0, 100); }) == ErrorCode::NonPositiveRadius);
    CHECK(code_of([] { make_grid(-1.0, 100); }) == ErrorCode::NonPositiveRadius);
    CHECK_NOTHROW(make_grid(1.0, kMinNodes));
}

TEST_CASE("make_grid spacing and nodes") {
    const auto g = make_grid(10.0, 21);
    CHECK(g->h() == doctest::Approx(0.5).epsilon(1e-15));
    for (std::size_t i = 0; i < 21; ++i) CHECK(g->node(i) == doctest::Approx(0.5 * i).epsilon(1e-15));
    CHECK(g->nodes().back() == 10.0);

    const auto g2 = make_grid(40.0, 4096);
    CHECK(g2->h() == doctest::Approx(40.0 / 4095.0).epsilon(1e-15));
    CHECK(g2->h() == doctest::Approx(0.0097680).epsilon(1e-5));
    for (std::size_t i = 1; i < g2->n(); ++i) REQUIRE(g2->node(i) > g2->node(i - 1));
}

TEST_CASE("quadrature weights sum to the measures") {
    for (std::size_t n : {16UL, 101UL, 4096UL}) {
        const double R = 7.5;
        const auto g = make_grid(R, n);
        CHECK(std::abs(sum(g->weights_dr()) - R) <= 1e-13 * R);
        // Trapezoid on r^2: sum = (n-1)(2n^2-4n+3) h^3 / 6 in closed form.
        const double h = g->h(), m = static_cast<double>(n);
        const double closed = (m - 1) * (2 * m * m - 4 * m + 3) * h * h * h / 6.0;
        CHECK(std::abs(sum(g->weights_r2dr()) - closed) <= 1e-12 * closed);
        // Its deviation from R^3/3 is exactly h^2 R / 6, i.e. relative h^2 / (2 R^2).
        const double rel = sum(g->weights_r2dr()) / (R * R * R / 3.0) - 1.0;
        CHECK(rel == doctest::Approx(h * h / (2 * R * R)).epsilon(1e-9));
    }
}

TEST_CASE("integrate_radial examples") {
    {
        const auto g = make_grid(1.0, 1001);
        const auto f = RadialField::sample(g, [](double) { return 1.0; });
        CHECK(std::abs(integrate_radial(f, Measure::r2dr) - 1.0 / 3.0) <= 1e-6);
    }
    {
        const auto g = make_grid(2.0, 37);
        const auto f = RadialField::sample(g, [](double r) { return r; }, Parity::odd);
        CHECK(std::abs(integrate_radial(f, Measure::dr) - 2.0) <= 1e-10);
    }
    {
        const auto g = make_grid(40.0, 4096);
        const auto f = RadialField::sample(g, [](double r) { return std::exp(-r); });
        CHECK(std::abs(integrate_radial(f, Measure::r2dr) - 2.0) <= 1e-6);
    }
}

TEST_CASE("integrate_radial is exact on linear functions") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-3, 3);
    for (int t = 0; t < 10; ++t) {
        const double a = c(rng), b = c(rng), R = 1.0 + std::abs(c(rng));
        const auto g = make_grid(R, 17 + 13 * t);
        const auto f = RadialField::sample(g, [=](double r) { return a + b * r; });
        const double exact = a * R + b * R * R / 2;
        CHECK(std::abs(integrate_radial(f, Measure::dr) - exact) <= 1e-13 * (1 + std::abs(exact)));
    }
}

TEST_CASE("integrate_radial converges at second order") {
    auto value = [](std::size_t n) {
        const auto g = make_grid(3.0, n);
        return integrate_radial(RadialField::sample(g, [](double r) { return std::cos(r) + r; }), Measure::r2dr);
    };
    const double a = value(65), b = value(129), c = value(257);
    CHECK(std::abs(a - b) / std::abs(b - c) >= 3.5);
}

TEST_CASE("differentiate examples") {
    const auto g = make_grid(3.0, 61);
    const auto d = differentiate(RadialField::sample(g, [](double r) { return r * r; }));
    CHECK(d.parity() == Parity::odd);
    for (std::size_t i = 0; i < g->n(); ++i) CHECK(std::abs(d[i] - 2 * g->node(i)) <= 1e-12);

    const auto z = differentiate(RadialField::sample(g, [](double) { return 4.2; }));
    for (double x : z.values()) CHECK(std::abs(x) <= 1e-12);

    auto err = [](std::size_t n) {
        const auto gg = make_grid(10.0, n);
        const auto dd = differentiate(RadialField::sample(gg, [](double r) { return std::sin(r); }, Parity::odd));
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e = std::max(e, std::abs(dd[i] - std::cos(gg->node(i))));
        return e;
    };
    const double e1 = err(256), e2 = err(511);
    CHECK(e1 <= 2.0 * std::pow(10.0 / 255, 2));
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("differentiate then integrate recovers the endpoint difference") {
    for (std::size_t n : {129UL, 257UL}) {
        const auto g = make_grid(5.0, n);
        const auto f = RadialField::sample(g, [](double r) { return std::exp(-r * r / 3) * (1 + r * r); });
        const double lhs = integrate_radial(differentiate(f), Measure::dr);
        CHECK(std::abs(lhs - (f[n - 1] - f[0])) <= 5.0 * g->h() * g->h());
    }
}

TEST_CASE("interpolate examples") {
    const auto src = make_grid(4.0, 41);
    const auto f = RadialField::sample(src, [](double r) { return r * r; });
    const auto sub = make_grid(3.3, 17);
    const auto g = interpolate(f, sub);
    for (std::size_t i = 0; i < sub->n(); ++i) CHECK(std::abs(g[i] - sub->node(i) * sub->node(i)) <= 1e-12);
    CHECK(interpolate_at(f, 8.0) == 0.0);
    CHECK(interpolate(f, make_grid(8.0, 33))[32] == 0.0);
    CHECK(g.parity() == f.parity());

    auto err = [](std::size_t n) {
        const auto s = make_grid(6.0, n);
        const auto t = make_grid(6.0, 2 * n - 1);
        const auto r = interpolate(RadialField::sample(s, [](double x) { return std::exp(-x); }), t);
        double e = 0.0;
        for (std::size_t i = 0; i < t->n(); ++i) e = std::max(e, std::abs(r[i] - std::exp(-t->node(i))));
        return e;
    };
    const double h = 6.0 / 63;
    CHECK(err(64) <= std::pow(h, 4));
    CHECK(err(64) / err(127) >= 12.0);
}

TEST_CASE("interpolation beyond the radius follows the coulomb tail") {
    const auto g = make_grid(10.0, 101);
    std::vector<double> v(101);
    for (std::size_t i = 0; i < 101; ++i) v[i] = 2.5 / std::max(g->node(i), 1.0);
    const RadialField f(g, v, Parity::even, FarField::coulomb(2.5));
    CHECK(interpolate_at(f, 20.0) == doctest::Approx(0.125));
}

TEST_CASE("RadialField validates contents") {
    const auto g = make_grid(1.0, 16);
    CHECK_THROWS_AS(RadialField(g, std::vector<double>(15, 0.0)), Error);
    std::vector<double> bad(16, 1.0);
    bad[3] = std::nan("");
    CHECK_THROWS_AS(RadialField(g, bad), Error);
    CHECK_THROWS_AS(RadialField(g, std::vector<double>(16, 1.0), Parity::odd), Error);
}

TEST_CASE("band Cholesky and LU solve what apply produces") {
    const std::size_t n = 50;
    SymBandMatrix a(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = 6.0 + 0.1 * i;
        if (i + 1 < n) a.at(i, i + 1) = -1.5;
        if (i + 2 < n) a.at(i, i + 2) = 0.3;
    }
    std::vector<double> x(n), b(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(0.3 * i);
    a.apply(x, b);
    auto b1 = b, b2 = b;
    BandCholesky(a).solve_in_place(b1);
    BandLU(a).solve_in_place(b2);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(b1[i] - x[i]) <= 1e-12);
        CHECK(std::abs(b2[i] - x[i]) <= 1e-12);
    }
    SymBandMatrix indef(n, 1);
    for (std::size_t i = 0; i < n; ++i) indef.at(i, i) = i % 2 ? 1.0 : -1.0;
    CHECK(code_of([&] { BandCholesky c(indef); }) == ErrorCode::FactorizationFailure);
}

TEST_CASE("minres and gmres solve a symmetric system") {
    const std::size_t n = 40;
    SymBandMatrix a(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = 1.5;
        if (i + 1 < n) a.at(i, i + 1) = -0.7;
    }
    LinearOp op = [&](std::span<const double> x, std::span<double> y) { a.apply(x, y); };
    LinearOp id = [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); };
    std::vector<double> b(n, 1.0), x1(n, 0.0), x2(n, 0.0), r(n);
    const auto m = minres(op, id, b, x1, 1e-12, 500);
    const auto g = gmres(op, id, b, x2, 1e-12, 30, 500);
    CHECK(m.converged);
    CHECK(g.converged);
    a.apply(x1, r);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r[i] - 1.0) <= 1e-10);
    a.apply(x2, r);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(r[i] - 1.0) <= 1e-10);
}

TEST_CASE("smallest_eigenpairs: Dirichlet second difference on [0, pi]") {
    double prev_err = 1.0;
    for (std::size_t n : {100UL, 400UL}) {
        const double h = oracle::kPi / static_cast<double>(n + 1);
        PencilForm form{SymBandMatrix(n, 1), {}};
        for (std::size_t i = 0; i < n; ++i) {
            form.band.at(i, i) = 2.0 / (h * h);
            if (i + 1 < n) form.band.at(i, i + 1) = -1.0 / (h * h);
        }
        const std::vector<double> mass(n, 1.0);
        const auto pairs = smallest_eigenpairs(form, mass, 3, 0.0);
        REQUIRE(pairs.size() == 3);
        for (int k = 1; k <= 3; ++k) {
            const double discrete = 4.0 / (h * h) * std::pow(std::sin(k * h / 2), 2);
            CHECK(pairs[k - 1].value == doctest::Approx(discrete).epsilon(1e-10));
        }
        const double err = std::abs(pairs[0].value - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (std::size_t t = 0; t < n; ++t) dot += pairs[i].vector[t] * pairs[j].vector[t];
                CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-8);
            }
    }
    CHECK(prev_err <= 1e-5);
}

TEST_CASE("smallest_eigenpairs: identity pencil and request limits") {
    const std::size_t n = 20;
    PencilForm form{SymBandMatrix(n, 0), {}};
    std::vector<double> mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        mass[i] = 1.0 + i;
        form.band.at(i, i) = mass[i];
    }
    const auto pairs = smallest_eigenpairs(form, mass, 5, 0.5);
    REQUIRE(pairs.size() == 5);
    for (const auto& p : pairs) CHECK(p.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(code_of([&] { smallest_eigenpairs(form, mass, n + 1, 0.0); }) == ErrorCode::TooManyRequested);
}

TEST_CASE("smallest_eigenpairs with a matrix-free coupling matches dense Jacobi") {
    const std::size_t n = 30;
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::exp(-0.2 * i);
    PencilForm form{SymBandMatrix(n, 1), {}};
    for (std::size_t i = 0; i < n; ++i) {
        form.band.at(i, i) = 2.0 + 0.05 * i;
        if (i + 1 < n) form.band.at(i, i + 1) = -1.0;
    }
    form.coupling = [&](std::span<const double> x, std::span<double> y) {
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += e[i] * x[i];
        for (std::size_t i = 0; i < n; ++i) y[i] = -3.0 * d * e[i];
    };
    std::vector<double> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double b = 0.0;
            if (i == j) b = 2.0 + 0.05 * i;
            if (i + 1 == j || j + 1 == i) b = -1.0;
            dense[i * n + j] = b - 3.0 * e[i] * e[j];
        }
    const auto ref = oracle::jacobi_eigenvalues(dense, n);
    const std::vector<double> mass(n, 1.0);
    const auto pairs = smallest_eigenpairs(form, mass, 4, ref[0] - 1.0);
    REQUIRE(pairs.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(pairs[k].value == doctest::Approx(ref[k]).epsilon(1e-9));
}

TEST_CASE("field CSV round trip is bit identical") {
    const auto dir = std::filesystem::temp_directory_path() / "sngs_field_io_test";
    std::filesystem::create_directories(dir);
    const auto path = (dir / "f.csv").string();
    const auto g = make_grid(3.0, 33);
    const auto f = RadialField::sample(g, [](double r) { return std::exp(-r) / 3.0; });
    write_field_csv(path, f);
    {
        std::ifstream in(path);
        std::string header;
        std::getline(in, header);
        CHECK(header == "r,value");
    }
    const auto back = read_field_csv(path);
    CHECK(back.grid()->same_as(*g));
    CHECK(back.values() == f.values());
    CHECK(code_of([&] { read_field_csv((dir / "missing.csv").string()); }) == ErrorCode::IoError);
    std::ofstream(dir / "bad.csv") << "r,value\n0,1\nx,2\n";
    CHECK(code_of([&] { read_field_csv((dir / "bad.csv").string()); }) == ErrorCode::IoError);
    std::filesystem::remove_all(dir);
}
