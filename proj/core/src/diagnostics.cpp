#include "sngs/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sngs/error.hpp"
#include "sngs/hartree.hpp"
#include "sngs/laplacian.hpp"

namespace sngs {

namespace {

DiagnosticsReport norms_from(const RadialField& u, const RadialField& v, double q) {
    const auto& grid = *u.grid();
    const auto& w = grid.weights_r2dr();
    constexpr double four_pi = 4.0 * std::numbers::pi;
    DiagnosticsReport d;
    d.grad_sq = four_pi * radial_kinetic_form(grid, 0, u.span());
    double l2 = 0.0, lq = 0.0, dd = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = std::abs(u[i]);
        l2 += w[i] * a * a;
        lq += w[i] * std::pow(a, q);
        dd += w[i] * v[i] * a * a;
    }
    d.l2_sq = four_pi * l2;
    d.lq = four_pi * lq;
    d.D = four_pi * dd;
    d.sup_u = u.sup_abs();
    d.sup_v = v.sup_abs();
    d.M = d.sup_u + d.sup_v;
    return d;
}

}  // namespace

DiagnosticsReport norm_report(const GroundState& state) { return norms_from(state.u, state.v, state.params.q); }

DiagnosticsReport norm_report(const RadialField& u, double q) {
    return norms_from(u, hartree_potential(u).v, q);
}

DiagnosticsReport complete_identities(DiagnosticsReport d, const ModelParams& p) {
    const double lam = p.lambda, a = p.a, nu = p.nu, q = p.q;
    d.J = 0.5 * d.grad_sq + 0.5 * lam * d.l2_sq - 0.25 * a * d.D - nu * d.lq / q;
    d.nehari = d.grad_sq + lam * d.l2_sq - a * d.D - nu * d.lq;
    d.pohozaev = 0.5 * d.grad_sq + 1.5 * lam * d.l2_sq - 1.25 * a * d.D - 3.0 * nu * d.lq / q;
    if (a == 1.0 && nu == 1.0)
        d.level_identity_residual = std::abs(d.J - d.grad_sq / 3.0 - d.D / 6.0);
    else
        d.level_identity_residual.reset();
    return d;
}

DiagnosticsReport identities(const GroundState& state) {
    return complete_identities(norm_report(state), state.params);
}

DiagnosticsReport identities(const RadialField& u, const ModelParams& params) {
    return complete_identities(norm_report(u, params.q), params);
}

MonotonicityResult monotonicity_check(std::span<const std::pair<double, double>> levels) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i].first > levels[i - 1].first))
            throw Error(ErrorCode::UnsortedInput, "lambdas must be strictly increasing");
    double scale = 0.0;
    for (const auto& [lam, j] : levels) scale = std::max(scale, std::abs(j));
    const double slack = 1e-8 * scale;
    MonotonicityResult out;
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i].second < levels[i - 1].second - slack) out.violations.emplace_back(i - 1, i);
    out.pass = out.violations.empty();
    return out;
}

}  // namespace sngs
