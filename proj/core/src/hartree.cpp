#include "sngs/hartree.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace sngs {

void apply_sector_green(const RadialGrid& grid, int k, std::span<const double> rho, std::span<double> out) {
    const std::size_t n = grid.n();
    const auto& r = grid.nodes();
    const auto& w = grid.weights_r2dr();
    const double h2 = grid.h() * grid.h() / 12.0;
    const double inv = 1.0 / (2.0 * k + 1.0);

    // forward: A_i = sum_{j<=i} (r_j/r_i)^k w_j rho_j
    double acc = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double ratio = k == 0 ? 1.0 : std::pow(r[i - 1] / r[i], k);
        acc = ratio * acc + w[i] * rho[i];
        out[i] = inv * acc / r[i];
    }
    // backward: B_i = sum_{j>i} (r_i/r_j)^k (w_j/r_j) rho_j
    double back = 0.0;
    for (std::size_t i = n - 1; i-- > 1;) {
        const double ratio = k == 0 ? 1.0 : std::pow(r[i] / r[i + 1], k);
        back = ratio * (back + w[i + 1] / r[i + 1] * rho[i + 1]);
        out[i] += inv * back;
    }
    for (std::size_t i = 1; i < n; ++i) out[i] -= h2 * rho[i];

    if (k == 0) {
        double line = 0.0;
        for (std::size_t j = 1; j < n; ++j) line += w[j] / r[j] * rho[j];
        out[0] = line + h2 * rho[0];
    } else {
        out[0] = 0.0;
    }
}

HartreePotential hartree_potential(const RadialField& u) {
    const auto& grid = *u.grid();
    const std::size_t n = grid.n();
    std::vector<double> rho(n), v(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = u[i] * u[i];
    apply_sector_green(grid, 0, rho, v);
    HartreePotential out;
    out.mass = integrate_radial(grid, rho, Measure::r2dr);
    out.line_integral = v[0];
    out.v = RadialField(u.grid(), std::move(v), Parity::even, FarField::coulomb(out.mass));
    return out;
}

double hartree_energy(const RadialField& u) {
    const auto hp = hartree_potential(u);
    const auto& w = u.grid()->weights_r2dr();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * hp.v[i] * u[i] * u[i];
    return 4.0 * std::numbers::pi * s;
}

double far_field_mass(const RadialField& u) {
    const auto& w = u.grid()->weights_r2dr();
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += w[i] * u[i] * u[i];
    return s;
}

}  // namespace sngs
