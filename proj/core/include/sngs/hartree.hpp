#pragma once

#include <span>

#include "sngs/radial_grid.hpp"

namespace sngs {

struct HartreePotential {
    RadialField v;              // even, coulomb-tail(mass)
    double mass = 0.0;          // int_0^R u^2 s^2 ds
    double line_integral = 0.0; // int_0^R u^2 s ds, equal to v(0)
};

// Newton's theorem: v(r) = (1/r) int_0^r u^2 s^2 ds + int_r^R u^2 s ds,
// by one forward and one backward cumulative sweep. The quadrature is the
// trapezoid rule plus the endpoint correction for the derivative jump of the
// integrand at s = r, which makes it fourth order for smooth u while keeping
// the discrete kernel symmetric in the r^2 dr inner product.
HartreePotential hartree_potential(const RadialField& u);

// D(u) = 4 pi int v u^2 r^2 dr.
double hartree_energy(const RadialField& u);

double far_field_mass(const RadialField& u);

// out_i = sum_j G_k(r_i, r_j) w_j rho_j - (h^2/12) rho_i with
// G_k(r, s) = min^k / ((2k+1) max^(k+1)), the radial Green function of
// -Delta + k(k+1)/r^2. For k = 0 this is the potential of density rho.
void apply_sector_green(const RadialGrid& grid, int k, std::span<const double> rho, std::span<double> out);

}  // namespace sngs
