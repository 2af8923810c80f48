#include "sngs/model.hpp"

#include <cmath>
#include <string>

#include "sngs/error.hpp"

namespace sngs {

void validate_exponent(double q) {
    if (!std::isfinite(q) || !(q > 2.0 && q < 6.0) || q == 3.0)
        throw Error(ErrorCode::InvalidExponent, "q must lie in (2,3) or (3,6), got " + format_number(q));
}

void validate(const ModelParams& p) {
    validate_exponent(p.q);
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw Error(ErrorCode::InvalidParams, "lambda must be positive");
    if (!(p.a >= 0.0) || !(p.nu >= 0.0) || !std::isfinite(p.a) || !std::isfinite(p.nu))
        throw Error(ErrorCode::InvalidParams, "a and nu must be non-negative");
    if (p.a == 0.0 && p.nu == 0.0) throw Error(ErrorCode::InvalidParams, "a and nu cannot both vanish");
}

double auto_rmax(double lambda) { return 40.0 / std::sqrt(lambda); }

GridPtr grid_for(const ModelParams& p, const GridSpec& spec) {
    return make_grid(spec.r_max.value_or(auto_rmax(p.lambda)), spec.n);
}

}  // namespace sngs
