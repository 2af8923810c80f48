#pragma once

#include <vector>

#include "sngs/model.hpp"
#include "sngs/solver.hpp"

namespace sngs {

enum class ScaleForm { mu_form, nu_form };
enum class Side { zero, infinity };
enum class Regime { q_low_lambda_zero, q_high_lambda_zero, q_high_lambda_inf, q_low_lambda_inf };

struct LimitChoice {
    Regime regime;
    ScaleForm form;
    ProfileKind limit_kind;
};

// (q<3, zero) -> mu/kwong, (q>3, zero) -> nu/choquard,
// (q>3, infinity) -> mu/kwong, (q<3, infinity) -> nu/choquard.
LimitChoice limit_regime(double q, Side side);

// mu = lambda^(-2(q-3)/(q-2)) for mu_form, nu = lambda^(q-3) for nu_form.
double small_parameter(ScaleForm form, double lambda, double q);
// lambda^(-1/(q-2)) for mu_form, 1/lambda for nu_form.
double amplitude_factor(ScaleForm form, double lambda, double q);

struct ScaledState {
    RadialField u;
    ModelParams effective;
};

// u_s(r) = amplitude * u(r / sqrt(lambda)) sampled on target. Throws WrongParams
// unless the state belongs to the (lambda, 1, 1, q) family.
ScaledState scale_state(const GroundState& state, ScaleForm form, const GridPtr& target);

// scale_state followed by a Newton polish under the effective parameters.
GroundState scaled_ground_state(const GroundState& state, ScaleForm form, const GridPtr& target,
                                const NewtonOptions& opts = {});

struct LimitDistance {
    double sup_distance = 0.0;
    double h1_distance = 0.0;
};

// Throws GridMismatch when the grids differ.
LimitDistance limit_distance(const RadialField& scaled_u, const GroundState& reference);

struct DistanceRow {
    double lambda = 0.0;
    double small_parameter = 0.0;
    double sup_distance = 0.0;
    double h1_distance = 0.0;
};

struct MassRatioRow {
    double lambda = 0.0;
    double power_ratio = 0.0;   // M^(q-2) / lambda
    double linear_ratio = 0.0;  // M / lambda
    bool in_window = true;      // regime-relevant ratio inside [1e-3, 1e3]
};

struct ScalingReport {
    Regime regime = Regime::q_low_lambda_zero;
    ProfileKind limit_kind = ProfileKind::kwong;
    ScaleForm form = ScaleForm::mu_form;
    double reference_sup = 0.0;
    std::vector<DistanceRow> distances;
    std::vector<MassRatioRow> mass_ratios;
    bool mass_window_ok = true;
};

inline constexpr double kMassRatioWindow = 1e3;

// The side is read from the lambdas: all below 1 means zero, all above 1 infinity.
// Throws MixedExponents when q differs between states, InvalidParams when the
// lambdas straddle 1 or are not monotone.
ScalingReport mass_ratio_report(const std::vector<GroundState>& states);

// Solves along lambdas, rescales onto the reference grid (r_max 40, n from grid),
// and tabulates distances to the designated limit profile plus mass ratios.
ScalingReport limit_study(double q, Side side, const std::vector<double>& lambdas, const GridSpec& grid = {},
                          const NewtonOptions& opts = {});

const char* to_string(Regime r) noexcept;
const char* to_string(ScaleForm f) noexcept;
const char* to_string(ProfileKind k) noexcept;
const char* to_string(Side s) noexcept;

}  // namespace sngs
