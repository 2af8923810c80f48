#include "sngs/eigen.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <string>

#include "sngs/error.hpp"

namespace sngs {

void PencilForm::apply(std::span<const double> x, std::span<double> y) const {
    band.apply(x, y);
    if (coupling) {
        std::vector<double> c(x.size());
        coupling(x, c);
        for (std::size_t i = 0; i < x.size(); ++i) y[i] += c[i];
    }
}

namespace {

double mdot(std::span<const double> a, std::span<const double> b, std::span<const double> m) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * m[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

// Solves (form - shift*mass) z = b.
class ShiftedSolver {
public:
    ShiftedSolver(const PencilForm& form, std::span<const double> mass, double shift, bool strict = true)
        : form_(form), mass_(mass), shift_(shift), strict_(strict) {
        SymBandMatrix shifted = form.band;
        std::vector<double> d(mass.size());
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = -shift * mass[i];
        shifted.add_diagonal(d);
        lu_ = std::make_unique<BandLU>(shifted);
    }

    void solve(std::span<const double> b, std::span<double> z) const {
        std::copy(b.begin(), b.end(), z.begin());
        lu_->solve_in_place(z);
        if (!form_.coupling) return;
        const LinearOp op = [this](std::span<const double> x, std::span<double> y) {
            form_.apply(x, y);
            for (std::size_t i = 0; i < x.size(); ++i) y[i] -= shift_ * mass_[i] * x[i];
        };
        const LinearOp pre = [this](std::span<const double> x, std::span<double> y) {
            std::copy(x.begin(), x.end(), y.begin());
            lu_->solve_in_place(y);
        };
        std::fill(z.begin(), z.end(), 0.0);
        const KrylovResult r = gmres(op, pre, b, z, 1e-13, 80, 2000);
        if (strict_ && !r.converged && r.relative_residual > 1e-10)
            throw Error(ErrorCode::EigenNonConvergence,
                        "inner GMRES stalled at relative residual " + format_number(r.relative_residual));
    }

private:
    const PencilForm& form_;
    std::span<const double> mass_;
    double shift_;
    bool strict_;
    std::unique_ptr<BandLU> lu_;
};

std::unique_ptr<ShiftedSolver> factor_with_retry(const PencilForm& form, std::span<const double> mass,
                                                 double& shift) {
    const double scale = std::max(1.0, std::abs(shift));
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            return std::make_unique<ShiftedSolver>(form, mass, shift);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::FactorizationFailure) throw;
            shift -= 1e-6 * scale * std::pow(10.0, attempt);
        }
    }
    throw Error(ErrorCode::FactorizationFailure, "shifted form stays singular after perturbing the shift");
}

struct ResidualCheck {
    double residual = 0.0;
    double scale = 0.0;
    bool ok(double tol) const { return residual <= tol * scale; }
};

ResidualCheck check_pair(const PencilForm& form, std::span<const double> mass, const EigenPair& p, double shift) {
    const std::size_t n = p.vector.size();
    std::vector<double> ax(n), res(n), mx(n);
    form.apply(p.vector, ax);
    for (std::size_t i = 0; i < n; ++i) {
        mx[i] = mass[i] * p.vector[i];
        res[i] = ax[i] - p.value * mx[i];
    }
    return {norm2(res), std::max(norm2(ax), std::abs(p.value - shift) * norm2(mx))};
}

void rayleigh_normalize(const PencilForm& form, std::span<const double> mass, EigenPair& p) {
    const double nr = std::sqrt(mdot(p.vector, p.vector, mass));
    for (double& x : p.vector) x /= nr;
    std::vector<double> ax(p.vector.size());
    form.apply(p.vector, ax);
    double num = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i) num += ax[i] * p.vector[i];
    p.value = num;
}

// Inverse iteration at the Ritz value; the Lanczos vectors carry the inner
// solve error amplified by the norm of the form, this removes it.
bool polish(const PencilForm& form, std::span<const double> mass, EigenPair& p, double shift, double tol) {
    for (int it = 0; it < 4; ++it) {
        if (check_pair(form, mass, p, shift).ok(tol)) return true;
        const double sigma = p.value + 1e-10 * std::max(1.0, std::abs(p.value));
        std::unique_ptr<ShiftedSolver> solver;
        try {
            solver = std::make_unique<ShiftedSolver>(form, mass, sigma, false);
        } catch (const Error&) {
            return false;
        }
        std::vector<double> mx(p.vector.size()), y(p.vector.size());
        for (std::size_t i = 0; i < mx.size(); ++i) mx[i] = mass[i] * p.vector[i];
        solver->solve(mx, y);
        p.vector = std::move(y);
        rayleigh_normalize(form, mass, p);
    }
    return check_pair(form, mass, p, shift).ok(tol);
}

}  // namespace

std::vector<EigenPair> smallest_eigenpairs(const PencilForm& form, std::span<const double> mass, std::size_t m,
                                           double shift, const EigenOptions& opts) {
    const std::size_t n = form.size();
    if (mass.size() != n) throw Error(ErrorCode::GridMismatch, "mass and form sizes differ");
    if (m > n)
        throw Error(ErrorCode::TooManyRequested,
                    "requested " + std::to_string(m) + " eigenpairs of a " + std::to_string(n) + "-dim pencil");
    if (m == 0) return {};
    for (double x : mass)
        if (!(x > 0.0)) throw Error(ErrorCode::InvalidParams, "mass entries must be positive");

    auto solver = factor_with_retry(form, mass, shift);

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const std::size_t kmax = std::min(n, std::max(opts.max_basis, 2 * m + 20));

    std::vector<std::vector<double>> q;
    q.reserve(kmax);
    std::vector<double> alpha, beta;  // beta[j] couples q[j] and q[j+1]
    std::vector<double> w(n), mw(n);

    auto orthogonalize = [&](std::vector<double>& x) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qi : q) {
                const double c = mdot(x, qi, mass);
                for (std::size_t i = 0; i < n; ++i) x[i] -= c * qi[i];
            }
    };
    auto fresh_vector = [&]() {
        std::vector<double> x(n);
        for (int tries = 0; tries < 8; ++tries) {
            for (double& e : x) e = unif(rng);
            orthogonalize(x);
            const double nr = std::sqrt(mdot(x, x, mass));
            if (nr > 1e-8) {
                for (double& e : x) e /= nr;
                return x;
            }
        }
        throw Error(ErrorCode::EigenNonConvergence, "could not extend the Krylov basis");
    };

    q.push_back(fresh_vector());

    std::vector<EigenPair> result;
    std::size_t next_check = std::min(kmax, m + 8);
    while (true) {
        const std::size_t j = q.size() - 1;
        for (std::size_t i = 0; i < n; ++i) mw[i] = mass[i] * q[j][i];
        solver->solve(mw, w);
        alpha.push_back(mdot(w, q[j], mass));
        orthogonalize(w);
        const double b = std::sqrt(mdot(w, w, mass));
        const std::size_t k = q.size();

        if (k >= next_check || k == kmax) {
            // Ritz values of the tridiagonal projection
            std::vector<double> d(alpha), e(beta), z(k * k);
            e.resize(k);
            const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', static_cast<lapack_int>(k), d.data(),
                                                  e.data(), z.data(), static_cast<lapack_int>(k));
            if (info != 0) throw Error(ErrorCode::EigenNonConvergence, "tridiagonal eigensolve failed");
            std::vector<std::size_t> order(k);
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t x, std::size_t y) { return std::abs(d[x]) > std::abs(d[y]); });
            bool all_ok = true;
            for (std::size_t t = 0; t < m; ++t) {
                const std::size_t c = order[t];
                if (std::abs(b * z[(k - 1) + c * k]) > 1e-11 * std::abs(d[c])) all_ok = false;
            }
            std::vector<EigenPair> pairs;
            if (all_ok || k == kmax) {
                all_ok = true;
                for (std::size_t t = 0; t < m; ++t) {
                    const std::size_t c = order[t];
                    EigenPair p;
                    p.value = shift + 1.0 / d[c];
                    p.vector.assign(n, 0.0);
                    for (std::size_t s = 0; s < k; ++s)
                        for (std::size_t i = 0; i < n; ++i) p.vector[i] += z[s + c * k] * q[s][i];
                    const double nr = std::sqrt(mdot(p.vector, p.vector, mass));
                    for (double& x : p.vector) x /= nr;
                    if (!check_pair(form, mass, p, shift).ok(opts.residual_tol)) {
                        rayleigh_normalize(form, mass, p);
                        if (!polish(form, mass, p, shift, opts.residual_tol))
                            throw Error(ErrorCode::EigenNonConvergence,
                                        "eigenpair residual stays above tolerance near " + format_number(p.value));
                    }
                    pairs.push_back(std::move(p));
                }
            }
            if (all_ok) {
                std::sort(pairs.begin(), pairs.end(),
                          [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
                for (std::size_t a = 0; a < pairs.size(); ++a) {
                    for (std::size_t c = 0; c < a; ++c) {
                        const double proj = mdot(pairs[a].vector, pairs[c].vector, mass);
                        for (std::size_t i = 0; i < n; ++i) pairs[a].vector[i] -= proj * pairs[c].vector[i];
                    }
                    const double nr = std::sqrt(mdot(pairs[a].vector, pairs[a].vector, mass));
                    for (double& x : pairs[a].vector) x /= nr;
                }
                result = std::move(pairs);
                break;
            }
            if (k == kmax)
                throw Error(ErrorCode::EigenNonConvergence,
                            "Lanczos basis exhausted at " + std::to_string(k) + " vectors");
            next_check = std::min(kmax, k + 10);
        }

        if (k == kmax) continue;  // converged check above is forced at kmax
        if (b > 1e-10 * std::abs(alpha.back()) && b > 1e-300) {
            for (double& x : w) x /= b;
            beta.push_back(b);
            q.push_back(std::move(w));
            w.assign(n, 0.0);
        } else {
            beta.push_back(0.0);
            q.push_back(fresh_vector());
        }
    }

    std::sort(result.begin(), result.end(), [](const EigenPair& x, const EigenPair& y) { return x.value < y.value; });
    return result;
}

}  // namespace sngs
