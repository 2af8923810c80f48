#include "sngs/scaling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sngs/error.hpp"
#include "sngs/laplacian.hpp"

namespace sngs {

LimitChoice limit_regime(double q, Side side) {
    validate_exponent(q);
    const bool low = q < 3.0;
    if (side == Side::zero)
        return low ? LimitChoice{Regime::q_low_lambda_zero, ScaleForm::mu_form, ProfileKind::kwong}
                   : LimitChoice{Regime::q_high_lambda_zero, ScaleForm::nu_form, ProfileKind::choquard};
    return low ? LimitChoice{Regime::q_low_lambda_inf, ScaleForm::nu_form, ProfileKind::choquard}
               : LimitChoice{Regime::q_high_lambda_inf, ScaleForm::mu_form, ProfileKind::kwong};
}

double small_parameter(ScaleForm form, double lambda, double q) {
    if (form == ScaleForm::mu_form) return std::pow(lambda, -2.0 * (q - 3.0) / (q - 2.0));
    return std::pow(lambda, q - 3.0);
}

double amplitude_factor(ScaleForm form, double lambda, double q) {
    if (form == ScaleForm::mu_form) return std::pow(lambda, -1.0 / (q - 2.0));
    return 1.0 / lambda;
}

ScaledState scale_state(const GroundState& state, ScaleForm form, const GridPtr& target) {
    const auto& p = state.params;
    if (p.a != 1.0 || p.nu != 1.0)
        throw Error(ErrorCode::WrongParams, "scaling maps need a state of the (lambda, 1, 1, q) family");
    const double amp = amplitude_factor(form, p.lambda, p.q);
    const double s = 1.0 / std::sqrt(p.lambda);
    std::vector<double> out(target->n());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = amp * interpolate_at(state.u, s * target->node(i));
    ScaledState res;
    res.u = RadialField(target, std::move(out));
    const double eps = small_parameter(form, p.lambda, p.q);
    res.effective = form == ScaleForm::mu_form ? ModelParams::mu_form(eps, p.q) : ModelParams::nu_form(eps, p.q);
    return res;
}

GroundState scaled_ground_state(const GroundState& state, ScaleForm form, const GridPtr& target,
                                const NewtonOptions& opts) {
    const auto s = scale_state(state, form, target);
    return newton_solve(s.u, s.effective, opts);
}

LimitDistance limit_distance(const RadialField& scaled_u, const GroundState& reference) {
    const auto& g = *reference.grid();
    if (!scaled_u.grid()->same_as(g)) throw Error(ErrorCode::GridMismatch, "interpolate onto the reference grid first");
    const std::size_t n = g.n();
    std::vector<double> d(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = scaled_u[i] - reference.u[i];
        sup = std::max(sup, std::abs(d[i]));
    }
    double l2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) l2 += g.weights_r2dr()[i] * d[i] * d[i];
    const double grad = radial_kinetic_form(g, 0, d);
    return {sup, std::sqrt(4.0 * std::numbers::pi * (grad + l2))};
}

ScalingReport mass_ratio_report(const std::vector<GroundState>& states) {
    ScalingReport rep;
    if (states.empty()) return rep;
    const double q = states.front().params.q;
    for (const auto& s : states)
        if (s.params.q != q) throw Error(ErrorCode::MixedExponents, "all states must share q");
    bool below = true, above = true;
    for (const auto& s : states) {
        below = below && s.params.lambda < 1.0;
        above = above && s.params.lambda > 1.0;
    }
    if (states.size() > 1 && !below && !above)
        throw Error(ErrorCode::InvalidParams, "lambdas must lie on one side of 1");
    for (std::size_t i = 2; i < states.size(); ++i) {
        const double d0 = states[i - 1].params.lambda - states[i - 2].params.lambda;
        const double d1 = states[i].params.lambda - states[i - 1].params.lambda;
        if (d0 * d1 <= 0.0) throw Error(ErrorCode::InvalidParams, "lambdas must be monotone");
    }
    const Side side = above ? Side::infinity : Side::zero;
    const LimitChoice lc = limit_regime(q, side);
    rep.regime = lc.regime;
    rep.limit_kind = lc.limit_kind;
    rep.form = lc.form;
    for (const auto& s : states) {
        MassRatioRow row;
        row.lambda = s.params.lambda;
        const double M = s.diagnostics.M;
        row.power_ratio = std::pow(M, q - 2.0) / row.lambda;
        row.linear_ratio = M / row.lambda;
        const double rel = lc.limit_kind == ProfileKind::kwong ? row.power_ratio : row.linear_ratio;
        row.in_window = rel >= 1.0 / kMassRatioWindow && rel <= kMassRatioWindow;
        rep.mass_window_ok = rep.mass_window_ok && row.in_window;
        rep.mass_ratios.push_back(row);
    }
    return rep;
}

ScalingReport limit_study(double q, Side side, const std::vector<double>& lambdas, const GridSpec& grid,
                          const NewtonOptions& opts) {
    const LimitChoice lc = limit_regime(q, side);
    const GridPtr ref_grid = make_grid(auto_rmax(1.0), grid.n);
    const GroundState ref = reference_profile(lc.limit_kind, q, ref_grid);

    ModelParams base{1.0, 1.0, 1.0, q};
    const auto states = lambda_sweep(base, lambdas, GridSpec{grid.n, std::nullopt}, opts);
    ScalingReport rep = mass_ratio_report(states);
    rep.regime = lc.regime;
    rep.limit_kind = lc.limit_kind;
    rep.form = lc.form;
    rep.reference_sup = ref.u.sup_abs();
    for (const auto& st : states) {
        const auto scaled = scale_state(st, lc.form, ref_grid);
        const auto d = limit_distance(scaled.u, ref);
        rep.distances.push_back({st.params.lambda, small_parameter(lc.form, st.params.lambda, q), d.sup_distance,
                                 d.h1_distance});
    }
    return rep;
}

const char* to_string(Regime r) noexcept {
    switch (r) {
        case Regime::q_low_lambda_zero: return "q_low_lambda_zero";
        case Regime::q_high_lambda_zero: return "q_high_lambda_zero";
        case Regime::q_high_lambda_inf: return "q_high_lambda_inf";
        case Regime::q_low_lambda_inf: return "q_low_lambda_inf";
    }
    return "unknown";
}

const char* to_string(ScaleForm f) noexcept { return f == ScaleForm::mu_form ? "mu_form" : "nu_form"; }
const char* to_string(ProfileKind k) noexcept { return k == ProfileKind::kwong ? "kwong" : "choquard"; }
const char* to_string(Side s) noexcept { return s == Side::zero ? "zero" : "infinity"; }

}  // namespace sngs
