#pragma once

#include <span>
#include <vector>

#include "sngs/banded.hpp"
#include "sngs/radial_grid.hpp"

namespace sngs {

// Fourth-order discretization of -f'' - (2/r) f' + k(k+1) f / r^2 acting on
// y = r f, with Dirichlet data at r_max. Only nodes 1..n-2 are unknowns; the
// origin is closed by the ghost y(-h) = -y(h) for even k and +y(h) for odd k.
// The operator is symmetric in the r^2 dr trapezoid inner product.

// out[i] for 1 <= i <= n-2; out[0] and out[n-1] are set to 0.
void apply_radial_laplacian(const RadialGrid& grid, int k, std::span<const double> f, std::span<double> out);

// Weighted matrix W(-Delta_k) on the n-2 active nodes (pentadiagonal).
SymBandMatrix weighted_radial_laplacian(const RadialGrid& grid, int k);

// sum_i w_i f_i (-Delta_k f)_i, i.e. the discrete integral of f'^2 + k(k+1) f^2 / r^2 against r^2 dr.
double radial_kinetic_form(const RadialGrid& grid, int k, std::span<const double> f);

// Value at the origin implied by the even closure: (4 f_1 - f_2) / 3.
inline double even_origin_value(std::span<const double> f) { return (4.0 * f[1] - f[2]) / 3.0; }

// Fourth-order first derivative using parity ghosts at 0 and one-sided stencils at r_max.
std::vector<double> derivative_fourth_order(const RadialGrid& grid, std::span<const double> f, Parity parity);

}  // namespace sngs
