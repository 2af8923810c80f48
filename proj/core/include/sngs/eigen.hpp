#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sngs/banded.hpp"
#include "sngs/krylov.hpp"

namespace sngs {

// Symmetric form = band + coupling, where coupling (if set) is a symmetric
// matrix-free operator y = C x added to the band part.
struct PencilForm {
    SymBandMatrix band;
    LinearOp coupling;

    std::size_t size() const noexcept { return band.size(); }
    void apply(std::span<const double> x, std::span<double> y) const;
};

struct EigenPair {
    double value = 0.0;
    std::vector<double> vector;  // mass-orthonormal
};

struct EigenOptions {
    double residual_tol = 1e-8;
    std::size_t max_basis = 400;
    unsigned long long seed = 0x5eedULL;
};

// The m pairs of form x = sigma mass x closest to `shift`, sorted ascending.
// With shift at or below the bottom of the spectrum these are the m smallest.
// Shift-invert Lanczos in the mass inner product with full reorthogonalization;
// a breakdown restarts from a fresh vector orthogonal to the basis, so
// multiple eigenvalues are recovered by deflation.
// Throws TooManyRequested, FactorizationFailure, EigenNonConvergence.
std::vector<EigenPair> smallest_eigenpairs(const PencilForm& form, std::span<const double> mass, std::size_t m,
                                           double shift, const EigenOptions& opts = {});

}  // namespace sngs
