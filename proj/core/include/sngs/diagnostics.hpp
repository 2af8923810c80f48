#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sngs/model.hpp"

namespace sngs {

// Norms only (J, nehari, pohozaev left at zero). All 3D norms carry the 4 pi factor.
DiagnosticsReport norm_report(const GroundState& state);
// Same, computing v from u; q is the exponent used for lq.
DiagnosticsReport norm_report(const RadialField& u, double q);

// J = grad/2 + lambda l2/2 - a D/4 - nu lq/q
// nehari = grad + lambda l2 - a D - nu lq
// pohozaev = grad/2 + 3 lambda l2/2 - 5 a D/4 - 3 nu lq/q
// level residual |J - grad/3 - D/6| when a = nu = 1.
DiagnosticsReport identities(const GroundState& state);
DiagnosticsReport identities(const RadialField& u, const ModelParams& params);
DiagnosticsReport complete_identities(DiagnosticsReport norms, const ModelParams& params);

struct MonotonicityResult {
    bool pass = true;
    std::vector<std::pair<std::size_t, std::size_t>> violations;  // adjacent index pairs
};

// levels = (lambda, J) with strictly increasing lambda; slack 1e-8 max|J|. Throws UnsortedInput.
MonotonicityResult monotonicity_check(std::span<const std::pair<double, double>> levels);

}  // namespace sngs
