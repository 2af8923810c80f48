#pragma once

#include <cstddef>
#include <optional>

#include "sngs/radial_grid.hpp"

namespace sngs {

// -Delta u + lambda u = a (I_2 * u^2) u + nu u^(q-1)
struct ModelParams {
    double lambda = 1.0;
    double a = 1.0;
    double nu = 1.0;
    double q = 4.0;

    static ModelParams kwong(double q) { return {1.0, 0.0, 1.0, q}; }
    static ModelParams choquard() { return {1.0, 1.0, 0.0, 4.0}; }
    static ModelParams mu_form(double mu, double q) { return {1.0, mu, 1.0, q}; }
    static ModelParams nu_form(double nu, double q) { return {1.0, 1.0, nu, q}; }

    bool operator==(const ModelParams&) const = default;
};

// Throws InvalidExponent unless q lies in (2,3) or (3,6).
void validate_exponent(double q);
// Exponent check plus lambda > 0, a, nu >= 0 and a + nu > 0 (InvalidParams).
void validate(const ModelParams& p);

struct GridSpec {
    std::size_t n = 4096;
    std::optional<double> r_max;  // empty: auto
};

// 40 / sqrt(lambda): u ~ exp(-sqrt(lambda) r) is then below 1e-14 of its peak
// at the boundary, and grids for different lambda are exact rescalings.
double auto_rmax(double lambda);
GridPtr grid_for(const ModelParams& p, const GridSpec& spec);

struct DiagnosticsReport {
    double grad_sq = 0.0;
    double l2_sq = 0.0;
    double lq = 0.0;
    double D = 0.0;
    double sup_u = 0.0;
    double sup_v = 0.0;
    double M = 0.0;
    double J = 0.0;
    double nehari = 0.0;
    double pohozaev = 0.0;
    std::optional<double> level_identity_residual;  // only for a = nu = 1
};

struct GroundState {
    ModelParams params;
    RadialField u;
    RadialField v;  // I_2 * u^2, independent of a
    double residual_norm = 0.0;
    DiagnosticsReport diagnostics;
    std::size_t iterations = 0;

    const GridPtr& grid() const noexcept { return u.grid(); }
};

// residual_norm at or below this counts as a converged state downstream.
inline constexpr double kConvergedResidual = 1e-8;

}  // namespace sngs
