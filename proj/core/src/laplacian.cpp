#include "sngs/laplacian.hpp"

namespace sngs {

namespace {

// (1/r_i) (L y)_i for y = r f at the active node i, with y_0 = 0, y_{n-1} = 0 and
// the parity ghosts. Substituting r_j = r_i + (j - i) h turns the stencil into
// differences of f, which avoids the cancellation of O(f / h^2) terms.
inline double stencil(const RadialGrid& g, std::span<const double> f, std::size_t i, double ghost_sign) {
    const std::size_t n = g.n();
    auto at = [&](std::ptrdiff_t j) -> double {
        if (j < 0) return -ghost_sign * f[1];
        const auto jj = static_cast<std::size_t>(j);
        if (jj == 0) return f[1];  // multiplied by r_0 = 0
        if (jj == n - 1) return 0.0;
        if (jj == n) return -f[n - 2] * g.node(n - 2) / (g.node(n - 2) + 2.0 * g.h());
        return f[jj];
    };
    const auto s = static_cast<std::ptrdiff_t>(i);
    const double a = at(s - 2), b = at(s - 1), c = at(s), d = at(s + 1), e = at(s + 2);
    const double even = 16.0 * ((c - b) + (c - d)) - ((c - a) + (c - e));
    const double odd = 16.0 * (b - d) - 2.0 * (a - e);
    return even + g.h() / g.node(i) * odd;
}

}  // namespace

void apply_radial_laplacian(const RadialGrid& grid, int k, std::span<const double> f, std::span<double> out) {
    const std::size_t n = grid.n();
    const double h = grid.h();
    const double c = 1.0 / (12.0 * h * h);
    const double ghost = (k % 2 == 0) ? -1.0 : 1.0;
    const double cent = static_cast<double>(k) * static_cast<double>(k + 1);
    out[0] = 0.0;
    out[n - 1] = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = grid.node(i);
        out[i] = c * stencil(grid, f, i, ghost) + cent * f[i] / (r * r);
    }
}

SymBandMatrix weighted_radial_laplacian(const RadialGrid& grid, int k) {
    const std::size_t n = grid.n();
    const std::size_t m = n - 2;
    const double h = grid.h();
    const double c = h / (12.0 * h * h);  // h r_i L_ij r_j
    const double ghost = (k % 2 == 0) ? -1.0 : 1.0;
    const double cent = static_cast<double>(k) * static_cast<double>(k + 1);
    const auto& w = grid.weights_r2dr();
    SymBandMatrix a(m, 2);
    for (std::size_t p = 0; p < m; ++p) {
        const double ri = grid.node(p + 1);
        double diag = 30.0;
        if (p == 0) diag += ghost;
        if (p == m - 1) diag -= 1.0;
        a.at(p, p) = c * diag * ri * ri + w[p + 1] * cent / (ri * ri);
        if (p + 1 < m) a.at(p, p + 1) = -16.0 * c * ri * grid.node(p + 2);
        if (p + 2 < m) a.at(p, p + 2) = c * ri * grid.node(p + 3);
    }
    return a;
}

double radial_kinetic_form(const RadialGrid& grid, int k, std::span<const double> f) {
    std::vector<double> lf(grid.n());
    apply_radial_laplacian(grid, k, f, lf);
    const auto& w = grid.weights_r2dr();
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < grid.n(); ++i) s += w[i] * f[i] * lf[i];
    return s;
}

std::vector<double> derivative_fourth_order(const RadialGrid& grid, std::span<const double> f, Parity parity) {
    const std::size_t n = grid.n();
    const double h = grid.h();
    const double sgn = parity == Parity::even ? 1.0 : -1.0;
    auto at = [&](std::ptrdiff_t j) -> double {
        return j < 0 ? sgn * f[static_cast<std::size_t>(-j)] : f[static_cast<std::size_t>(j)];
    };
    std::vector<double> d(n);
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const auto s = static_cast<std::ptrdiff_t>(i);
        d[i] = (at(s - 2) - 8.0 * at(s - 1) + 8.0 * at(s + 1) - at(s + 2)) / (12.0 * h);
    }
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) / (12.0 * h);
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) / (12.0 * h);
    return d;
}

}  // namespace sngs
