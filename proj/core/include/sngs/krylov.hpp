#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace sngs {

using LinearOp = std::function<void(std::span<const double> x, std::span<double> y)>;

struct KrylovResult {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

// Preconditioned MINRES for symmetric A with SPD preconditioner inverse `precond`.
// x holds the initial guess on entry. The residual is measured in the M^{-1} norm.
KrylovResult minres(const LinearOp& a, const LinearOp& precond, std::span<const double> b, std::span<double> x,
                    double tol, std::size_t max_iter);

// Restarted GMRES with right preconditioning. Stops early once a restart cycle
// no longer halves the true residual.
KrylovResult gmres(const LinearOp& a, const LinearOp& precond, std::span<const double> b, std::span<double> x,
                   double tol, std::size_t restart, std::size_t max_iter);

}  // namespace sngs
