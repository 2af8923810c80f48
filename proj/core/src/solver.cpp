#include "sngs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <optional>
#include <tuple>

#include "sngs/banded.hpp"
#include "sngs/diagnostics.hpp"
#include "sngs/error.hpp"
#include "sngs/hartree.hpp"
#include "sngs/krylov.hpp"
#include "sngs/laplacian.hpp"
#include "sngs/parallel.hpp"

namespace sngs {

namespace {

constexpr double kTrivialSup = 1e-8;

std::vector<double> potential_of(const RadialGrid& g, std::span<const double> u) {
    std::vector<double> rho(u.size()), v(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) rho[i] = u[i] * u[i];
    apply_sector_green(g, 0, rho, v);
    return v;
}

double power(double u, double e) { return u > 0.0 ? std::pow(u, e) : 0.0; }

void residual_values(const RadialGrid& g, const ModelParams& p, std::span<const double> u,
                     std::span<const double> v, std::span<double> f) {
    const std::size_t n = g.n();
    apply_radial_laplacian(g, 0, u, f);
    for (std::size_t i = 1; i + 1 < n; ++i)
        f[i] += p.lambda * u[i] - p.a * v[i] * u[i] - p.nu * power(u[i], p.q - 1.0);
    f[0] = u[0] - even_origin_value(u);
    f[n - 1] = u[n - 1];
}

double weighted_norm(const RadialGrid& g, std::span<const double> x) {
    const auto& w = g.weights_r2dr();
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * x[i];
    return std::sqrt(s);
}

double sup_abs(std::span<const double> x) {
    double m = 0.0;
    for (double e : x) m = std::max(m, std::abs(e));
    return m;
}

void enforce_boundary(std::vector<double>& u) {
    u.back() = 0.0;
    u[0] = even_origin_value(u);
}

class Jacobian {
public:
    Jacobian(const RadialGrid& g, const ModelParams& p, std::span<const double> u, std::span<const double> v)
        : g_(g), p_(p), u_(u.begin(), u.end()), diag_(u.size()) {
        for (std::size_t i = 0; i < u.size(); ++i)
            diag_[i] = p.lambda - p.a * v[i] - p.nu * (p.q - 1.0) * power(u[i], p.q - 2.0);
    }

    void apply_full(std::span<const double> d, std::span<double> out) const {
        const std::size_t n = g_.n();
        apply_radial_laplacian(g_, 0, d, out);
        std::vector<double> rho(n), phi(n);
        if (p_.a != 0.0) {
            for (std::size_t i = 0; i < n; ++i) rho[i] = 2.0 * u_[i] * d[i];
            apply_sector_green(g_, 0, rho, phi);
        }
        for (std::size_t i = 1; i + 1 < n; ++i) out[i] += diag_[i] * d[i] - p_.a * u_[i] * phi[i];
        out[0] = d[0] - even_origin_value(d);
        out[n - 1] = d[n - 1];
    }

    // y = W J x on the active nodes.
    void apply_active(std::span<const double> x, std::span<double> y) const {
        const std::size_t n = g_.n();
        std::vector<double> d(n, 0.0), out(n);
        std::copy(x.begin(), x.end(), d.begin() + 1);
        d[0] = even_origin_value(d);
        apply_full(d, out);
        const auto& w = g_.weights_r2dr();
        for (std::size_t p = 0; p < x.size(); ++p) y[p] = w[p + 1] * out[p + 1];
    }

private:
    const RadialGrid& g_;
    ModelParams p_;
    std::vector<double> u_;
    std::vector<double> diag_;
};

BandCholesky shifted_laplacian(const RadialGrid& g, double lambda) {
    SymBandMatrix a = weighted_radial_laplacian(g, 0);
    const auto& w = g.weights_r2dr();
    std::vector<double> d(g.n() - 2);
    for (std::size_t p = 0; p < d.size(); ++p) d[p] = lambda * w[p + 1];
    a.add_diagonal(d);
    return BandCholesky(a);
}

// t > 0 with t^2 G = t^4 D + t^q Q.
double nehari_scale(double G, double D, double Q, double q) {
    auto f = [&](double t) { return G - t * t * D - std::pow(t, q - 2.0) * Q; };
    double lo = 1.0, hi = 1.0;
    for (int i = 0; i < 4000 && f(hi) > 0.0; ++i) hi *= 2.0;
    for (int i = 0; i < 4000 && f(lo) < 0.0; ++i) lo *= 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

}  // namespace

RadialField residual(const RadialField& u, const ModelParams& params) {
    const auto& g = *u.grid();
    const auto v = potential_of(g, u.span());
    std::vector<double> f(g.n());
    residual_values(g, params, u.span(), v, f);
    return RadialField(u.grid(), std::move(f));
}

RadialField apply_jacobian(const RadialField& u, const RadialField& delta, const ModelParams& params) {
    const auto& g = *u.grid();
    if (!delta.grid()->same_as(g)) throw Error(ErrorCode::GridMismatch, "delta lives on another grid");
    const auto v = potential_of(g, u.span());
    Jacobian jac(g, params, u.span(), v);
    std::vector<double> out(g.n());
    jac.apply_full(delta.span(), out);
    return RadialField(u.grid(), std::move(out));
}

double residual_norm(const RadialField& f, const RadialField& u, const ModelParams& params) {
    const auto& g = *u.grid();
    const double un = weighted_norm(g, u.span());
    const double fn = weighted_norm(g, f.span());
    return un > 0.0 ? fn / (params.lambda * un) : fn;
}

GroundState newton_solve(const RadialField& guess, const ModelParams& params, const NewtonOptions& opts) {
    validate(params);
    const GridPtr& gp = guess.grid();
    const RadialGrid& g = *gp;
    const std::size_t n = g.n();
    std::vector<double> u = guess.values();
    enforce_boundary(u);
    if (sup_abs(u) < kTrivialSup) throw Error(ErrorCode::TrivialCollapse, "initial guess is numerically zero");

    const BandCholesky precond = shifted_laplacian(g, params.lambda);
    const LinearOp pre = [&](std::span<const double> x, std::span<double> y) {
        std::copy(x.begin(), x.end(), y.begin());
        precond.solve_in_place(y);
    };

    std::vector<double> v = potential_of(g, u), f(n), trial(n), ftrial(n);
    residual_values(g, params, u, v, f);
    double fnorm = weighted_norm(g, f);
    double rel = fnorm / (params.lambda * weighted_norm(g, u));
    std::size_t it = 0;
    const auto& w = g.weights_r2dr();

    while (rel > opts.tol) {
        if (it >= opts.max_iter)
            throw Error(ErrorCode::NonConvergence, "Newton stopped at residual " + format_number(rel) + " after " +
                                                       std::to_string(it) + " iterations");
        ++it;
        const Jacobian jac(g, params, u, v);
        const LinearOp op = [&](std::span<const double> x, std::span<double> y) { jac.apply_active(x, y); };
        std::vector<double> rhs(n - 2), x(n - 2, 0.0);
        for (std::size_t p = 0; p < n - 2; ++p) rhs[p] = -w[p + 1] * f[p + 1];
        const double lin_tol = std::clamp(1e-2 * rel, 1e-14, 1e-4);
        minres(op, pre, rhs, x, lin_tol, 4 * n);

        std::vector<double> delta(n, 0.0);
        std::copy(x.begin(), x.end(), delta.begin() + 1);
        delta[0] = even_origin_value(delta);

        double t = 1.0;
        bool accepted = false;
        const std::size_t halvings = opts.damping ? opts.max_halvings : 0;
        for (std::size_t k = 0; k <= halvings; ++k, t *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + t * delta[i];
            const auto vt = potential_of(g, trial);
            residual_values(g, params, trial, vt, ftrial);
            const double tn = weighted_norm(g, ftrial);
            if (!opts.damping || (std::isfinite(tn) && tn < fnorm)) {
                u.swap(trial);
                v = vt;
                f.swap(ftrial);
                fnorm = tn;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            throw Error(ErrorCode::NonConvergence, "line search found no decrease at residual " + format_number(rel));
        const double s = sup_abs(u);
        if (!std::isfinite(s)) throw Error(ErrorCode::NonConvergence, "iterate became non-finite");
        if (s < kTrivialSup) throw Error(ErrorCode::TrivialCollapse, "iterates decayed to zero");
        rel = fnorm / (params.lambda * weighted_norm(g, u));
    }

    const double s = sup_abs(u);
    if (s < kTrivialSup) throw Error(ErrorCode::TrivialCollapse, "converged to the trivial solution");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (u[i] < -1e-12 * s)
            throw Error(ErrorCode::NegativeStateDetected,
                        "u(" + format_number(g.node(i)) + ") = " + format_number(u[i]) + " is negative");

    GroundState st;
    st.params = params;
    st.u = RadialField(gp, std::move(u));
    st.v = RadialField(gp, std::move(v), Parity::even, FarField::coulomb(far_field_mass(st.u)));
    st.residual_norm = rel;
    st.iterations = it;
    st.diagnostics = identities(st);
    return st;
}

RadialField relax_to_nehari(const RadialField& guess, const ModelParams& params, const RelaxOptions& opts) {
    validate(params);
    const RadialGrid& g = *guess.grid();
    const std::size_t n = g.n();
    const auto& w = g.weights_r2dr();
    const BandCholesky op = shifted_laplacian(g, params.lambda);

    std::vector<double> u = guess.values();
    std::vector<double> rhs(n - 2);
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        for (double& e : u) e = std::max(e, 0.0);
        enforce_boundary(u);
        std::vector<double> v = potential_of(g, u);
        double G = radial_kinetic_form(g, 0, u), D = 0.0, Q = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            G += params.lambda * w[i] * u[i] * u[i];
            D += params.a * w[i] * v[i] * u[i] * u[i];
            Q += params.nu * w[i] * power(u[i], params.q);
        }
        if (!(G > 0.0) || !(D + Q > 0.0)) throw Error(ErrorCode::TrivialCollapse, "relaxation lost the profile");
        const double t = nehari_scale(G, D, Q, params.q);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] *= t;
            v[i] *= t * t;
        }
        for (std::size_t p = 0; p < n - 2; ++p) {
            const std::size_t i = p + 1;
            rhs[p] = w[i] * (params.a * v[i] * u[i] + params.nu * power(u[i], params.q - 1.0));
        }
        op.solve_in_place(rhs);
        double change = 0.0, peak = 0.0;
        for (std::size_t p = 0; p < n - 2; ++p) {
            change = std::max(change, std::abs(rhs[p] - u[p + 1]));
            peak = std::max(peak, std::abs(u[p + 1]));
            u[p + 1] = rhs[p];
        }
        enforce_boundary(u);
        if (!std::isfinite(change)) throw Error(ErrorCode::NonConvergence, "relaxation diverged");
        if (change <= opts.tol * peak) break;
    }
    return RadialField(guess.grid(), std::move(u));
}

GroundState solve_from_guess(const RadialField& guess, const ModelParams& params, const NewtonOptions& opts) {
    return newton_solve(relax_to_nehari(guess, params), params, opts);
}

bool is_positive_profile(const RadialField& u) {
    const double s = u.sup_abs();
    if (s == 0.0) return false;
    for (std::size_t i = 0; i + 1 < u.size(); ++i)
        if (u[i] < -1e-12 * s) return false;
    return u[u.size() - 1] == 0.0 || std::abs(u[u.size() - 1]) <= 1e-12 * s;
}

bool is_monotone_profile(const RadialField& u) {
    const double s = u.sup_abs();
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] > u[i - 1] + 1e-12 * s) return false;
    return true;
}

double relative_sup_distance(const RadialField& a, const RadialField& b) {
    if (!a.grid()->same_as(*b.grid())) throw Error(ErrorCode::GridMismatch, "fields on different grids");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    const double s = std::max(a.sup_abs(), b.sup_abs());
    return s > 0.0 ? d / s : d;
}

RadialField rescaled_seed(const GroundState& from, const ModelParams& to, const GridPtr& target) {
    const double ratio = to.lambda / from.params.lambda;
    const double q = to.q;
    bool power_like;
    if (to.a == 0.0)
        power_like = true;
    else if (to.nu == 0.0)
        power_like = false;
    else
        power_like = (q < 3.0) == (to.lambda < 1.0);
    const double amp = power_like ? std::pow(ratio, 1.0 / (q - 2.0)) : ratio;
    const double stretch = std::sqrt(ratio);
    std::vector<double> out(target->n());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = amp * interpolate_at(from.u, stretch * target->node(i));
    return RadialField(target, std::move(out));
}

namespace {

double blend(double x0, double x1, double s) {
    if (x0 == x1) return x0;
    if (x0 > 0.0 && x1 > 0.0) return x0 * std::pow(x1 / x0, s);
    return x0 + (x1 - x0) * s;
}

ModelParams params_at(const ModelParams& a, const ModelParams& b, double s) {
    if (s >= 1.0) return b;
    return {blend(a.lambda, b.lambda, s), blend(a.a, b.a, s), blend(a.nu, b.nu, s), a.q};
}

GridPtr target_grid(const GroundState& prev, const ModelParams& next, const GridSpec& spec) {
    if (spec.r_max) {
        if (prev.grid()->n() == spec.n && prev.grid()->r_max() == *spec.r_max) return prev.grid();
        return make_grid(*spec.r_max, spec.n);
    }
    if (next.lambda == prev.params.lambda && prev.grid()->n() == spec.n) return prev.grid();
    return grid_for(next, spec);
}

bool recoverable(const Error& e) {
    switch (e.code()) {
        case ErrorCode::NonConvergence:
        case ErrorCode::TrivialCollapse:
        case ErrorCode::NegativeStateDetected:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::vector<GroundState> continuation_path(const ModelParams& from, const ModelParams& to, std::size_t steps,
                                           const GroundState& seed, const GridSpec& grid, const NewtonOptions& opts) {
    std::vector<GroundState> out{seed};
    if (from == to) return out;
    if (steps == 0) throw Error(ErrorCode::InvalidParams, "continuation needs at least one step");
    if (from.q != to.q) throw Error(ErrorCode::InvalidParams, "continuation keeps q fixed");
    validate(to);

    GroundState current = seed;
    double s_cur = 0.0;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double s_target = static_cast<double>(k) / static_cast<double>(steps);
        while (s_cur < s_target) {
            double ds = s_target - s_cur;
            for (int bisect = 0;; ++bisect) {
                const double s_try = bisect == 0 ? s_target : s_cur + ds;
                const ModelParams p = params_at(from, to, s_try);
                const GridPtr gt = target_grid(current, p, grid);
                try {
                    current = newton_solve(rescaled_seed(current, p, gt), p, opts);
                    s_cur = s_try;
                    break;
                } catch (const Error& e) {
                    if (!recoverable(e)) throw;
                }
                if (bisect == 6) {
                    try {
                        current = solve_from_guess(rescaled_seed(current, p, gt), p, opts);
                        s_cur = s_try;
                        break;
                    } catch (const Error& e) {
                        if (!recoverable(e)) throw;
                        throw Error(ErrorCode::ContinuationStuck,
                                    "no convergence at lambda=" + format_number(p.lambda) + ": " + e.what());
                    }
                }
                ds *= 0.5;
            }
        }
        current.params = params_at(from, to, s_target);
        out.push_back(current);
    }
    return out;
}

RadialField default_guess(const ModelParams& params, const GridPtr& grid) {
    const double lam = params.lambda;
    return RadialField::sample(grid, [lam](double r) { return std::exp(-lam * r * r / 8.0); });
}

std::vector<GroundState> lambda_sweep(const ModelParams& base, const std::vector<double>& lambdas,
                                      const GridSpec& grid, const NewtonOptions& opts) {
    std::vector<GroundState> out;
    if (lambdas.empty()) return out;
    ModelParams p = base;
    p.lambda = lambdas.front();
    validate(p);
    out.push_back(solve_from_guess(default_guess(p, grid_for(p, grid)), p, opts));
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        ModelParams next = base;
        next.lambda = lambdas[i];
        auto path = continuation_path(out.back().params, next, 1, out.back(), grid, opts);
        out.push_back(std::move(path.back()));
    }
    return out;
}

GroundState reference_profile(ProfileKind kind, double q, const GridPtr& grid) {
    if (kind == ProfileKind::kwong) validate_exponent(q);
    const double key_q = kind == ProfileKind::kwong ? q : 0.0;
    using Key = std::tuple<int, double, std::size_t, double>;
    static std::mutex mutex;
    static std::map<Key, GroundState> cache;
    const Key key{static_cast<int>(kind), key_q, grid->n(), grid->r_max()};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    GroundState st;
    const NewtonOptions opts{};
    if (kind == ProfileKind::kwong) {
        const double c = std::pow(q / 2.0, 1.0 / (q - 2.0));
        const double kappa = (q - 2.0) / 2.0;
        const auto guess = RadialField::sample(
            grid, [&](double r) { return c * std::pow(1.0 / std::cosh(kappa * r), 2.0 / (q - 2.0)); });
        st = solve_from_guess(guess, ModelParams::kwong(q), opts);
    } else {
        const auto guess = RadialField::sample(grid, [](double r) { return std::exp(-r * r / 8.0); });
        st = solve_from_guess(guess, ModelParams::choquard(), opts);
    }
    std::lock_guard lock(mutex);
    cache.emplace(key, st);
    return st;
}

ScanResult uniqueness_scan(const ModelParams& params, std::size_t n_starts, std::uint64_t rng_seed,
                           const GridSpec& grid, const NewtonOptions& opts) {
    if (n_starts < 2) throw Error(ErrorCode::InvalidParams, "uniqueness scan needs at least 2 starts");
    validate(params);
    const GridPtr gp = grid_for(params, grid);

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> expo(-2.0, 2.0);
    ScanResult out;
    out.runs.resize(n_starts);
    for (auto& run : out.runs) {
        run.amplitude = std::pow(10.0, expo(rng));
        run.width = std::pow(10.0, expo(rng));
    }

    std::vector<std::optional<GroundState>> solved(n_starts);
    parallel_for(n_starts, [&](std::size_t i) {
        const double c = out.runs[i].amplitude, kappa = out.runs[i].width;
        const auto guess = RadialField::sample(gp, [&](double r) { return c * std::exp(-kappa * r * r); });
        try {
            solved[i] = solve_from_guess(guess, params, opts);
        } catch (const Error&) {
            solved[i].reset();
        }
    });

    for (std::size_t i = 0; i < n_starts; ++i) {
        auto& run = out.runs[i];
        if (!solved[i]) {
            ++out.failed;
            continue;
        }
        run.converged = true;
        run.u0 = (*solved[i]).u[0];
        std::size_t match = out.distinct_states.size();
        for (std::size_t s = 0; s < out.distinct_states.size(); ++s)
            if (relative_sup_distance(out.distinct_states[s].u, solved[i]->u) <= 1e-6) {
                match = s;
                break;
            }
        if (match == out.distinct_states.size()) out.distinct_states.push_back(std::move(*solved[i]));
        run.state_index = match;
    }
    return out;
}

}  // namespace sngs
