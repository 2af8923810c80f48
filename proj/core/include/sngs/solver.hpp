#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sngs/model.hpp"

namespace sngs {

// F(u) = -Delta u + lambda u - a v(u) u - nu max(u,0)^(q-1) on nodes 1..n-2.
// Row 0 holds u_0 - (4u_1 - u_2)/3 (u'(0) = 0), row n-1 holds u_{n-1}.
RadialField residual(const RadialField& u, const ModelParams& params);

// J(u) delta = -Delta d + lambda d - a v d - a u (I_2 * 2u d) - nu (q-1) u^(q-2) d,
// with the same boundary rows as residual. Matrix-free.
RadialField apply_jacobian(const RadialField& u, const RadialField& delta, const ModelParams& params);

// sqrt(sum w F^2) / (lambda sqrt(sum w u^2)); dividing by lambda makes the
// number invariant under the lambda scaling maps. For u = 0 the denominator is 1.
double residual_norm(const RadialField& f, const RadialField& u, const ModelParams& params);

struct NewtonOptions {
    double tol = 1e-10;
    std::size_t max_iter = 60;
    bool damping = true;
    std::size_t max_halvings = 20;
};

// Damped Newton with MINRES inner solves preconditioned by W(-Delta + lambda).
// Throws NonConvergence, TrivialCollapse, NegativeStateDetected.
GroundState newton_solve(const RadialField& guess, const ModelParams& params, const NewtonOptions& opts = {});

struct RelaxOptions {
    double tol = 1e-3;  // relative sup change between sweeps
    std::size_t max_iter = 2000;
};

// Nehari-normalized fixed point u <- (-Delta + lambda)^{-1}(a v u + nu u^(q-1)),
// rescaling onto the Nehari manifold before each sweep. Used to bring an
// arbitrary positive guess into the Newton basin.
RadialField relax_to_nehari(const RadialField& guess, const ModelParams& params, const RelaxOptions& opts = {});

// relax_to_nehari followed by newton_solve.
GroundState solve_from_guess(const RadialField& guess, const ModelParams& params, const NewtonOptions& opts = {});

// Positive, Dirichlet at r_max, non-increasing up to roundoff.
bool is_positive_profile(const RadialField& u);
bool is_monotone_profile(const RadialField& u);

// Steps from -> to; each varying parameter is interpolated geometrically
// (linearly when an endpoint is zero). Returns steps+1 states starting with
// the seed, or just the seed when from == to. Grids follow GridSpec: auto
// radius tracks lambda, an explicit radius keeps the grid fixed.
std::vector<GroundState> continuation_path(const ModelParams& from, const ModelParams& to, std::size_t steps,
                                           const GroundState& seed, const GridSpec& grid = {},
                                           const NewtonOptions& opts = {});

// exp(-lambda r^2 / 8): the width of both limit profiles after rescaling.
RadialField default_guess(const ModelParams& params, const GridPtr& grid);

// Continuation through an explicit list of lambdas (other parameters fixed).
// The first state is computed directly by solve_from_guess.
std::vector<GroundState> lambda_sweep(const ModelParams& base, const std::vector<double>& lambdas,
                                      const GridSpec& grid = {}, const NewtonOptions& opts = {});

// Seed for a solve at params `to` from a converged state at `from.params`,
// using the amplitude/argument scaling of the dominant limit problem.
RadialField rescaled_seed(const GroundState& from, const ModelParams& to, const GridPtr& target);

enum class ProfileKind { kwong, choquard };

// W solves (1, 0, 1, q); U solves (1, 1, 0, .). Cached per (kind, q, grid).
GroundState reference_profile(ProfileKind kind, double q, const GridPtr& grid);

struct ScanRun {
    double amplitude = 0.0;
    double width = 0.0;  // kappa in c exp(-kappa r^2)
    bool converged = false;
    double u0 = 0.0;
    std::size_t state_index = 0;  // into distinct_states when converged
};

struct ScanResult {
    std::vector<GroundState> distinct_states;
    std::size_t failed = 0;
    std::vector<ScanRun> runs;
};

// (c, kappa) log-uniform on [1e-2, 1e2]^2 from a seeded mt19937_64;
// converged states are merged at relative sup distance <= 1e-6.
ScanResult uniqueness_scan(const ModelParams& params, std::size_t n_starts, std::uint64_t rng_seed,
                           const GridSpec& grid = {}, const NewtonOptions& opts = {});

double relative_sup_distance(const RadialField& a, const RadialField& b);

}  // namespace sngs
