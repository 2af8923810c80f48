#include "sngs/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace sngs {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

KrylovResult minres(const LinearOp& a, const LinearOp& precond, std::span<const double> b, std::span<double> x,
                    double tol, std::size_t max_iter) {
    const std::size_t n = b.size();
    std::vector<double> r1(n), r2(n), y(n), v(n), w(n, 0.0), w1(n), w2(n, 0.0), tmp(n);

    a(x, tmp);
    for (std::size_t i = 0; i < n; ++i) r1[i] = b[i] - tmp[i];
    precond(r1, y);
    double beta1 = dot(r1, y);
    KrylovResult res;
    if (beta1 <= 0.0) {
        res.converged = beta1 == 0.0;
        return res;
    }
    beta1 = std::sqrt(beta1);
    r2 = r1;

    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t itn = 1; itn <= max_iter; ++itn) {
        const double s = 1.0 / beta;
        for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
        a(v, y);
        if (itn >= 2)
            for (std::size_t i = 0; i < n; ++i) y[i] -= (beta / oldb) * r1[i];
        const double alfa = dot(v, y);
        for (std::size_t i = 0; i < n; ++i) y[i] -= (alfa / beta) * r2[i];
        std::swap(r1, r2);
        r2 = y;
        precond(r2, y);
        oldb = beta;
        beta = dot(r2, y);
        if (beta < 0.0) break;  // preconditioner lost definiteness
        beta = std::sqrt(beta);

        const double oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        const double gamma = std::max(std::hypot(gbar, beta), eps);
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar *= sn;

        std::swap(w1, w2);
        std::swap(w2, w);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
            x[i] += phi * w[i];
        }
        res.iterations = itn;
        res.relative_residual = phibar / beta1;
        if (res.relative_residual <= tol || beta == 0.0) {
            res.converged = true;
            break;
        }
    }
    return res;
}

KrylovResult gmres(const LinearOp& a, const LinearOp& precond, std::span<const double> b, std::span<double> x,
                   double tol, std::size_t restart, std::size_t max_iter) {
    const std::size_t n = b.size();
    const std::size_t m = std::max<std::size_t>(1, restart);
    const double bnorm = std::sqrt(dot(b, b));
    KrylovResult res;
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        res.converged = true;
        return res;
    }

    std::vector<std::vector<double>> basis(m + 1, std::vector<double>(n));
    std::vector<std::vector<double>> z(m, std::vector<double>(n));
    std::vector<double> hcol((m + 1) * m), cs(m), sn(m), g(m + 1), tmp(n);
    auto H = [&](std::size_t i, std::size_t j) -> double& { return hcol[i + j * (m + 1)]; };

    std::size_t total = 0;
    double previous = std::numeric_limits<double>::infinity();
    while (total < max_iter) {
        a(x, tmp);
        for (std::size_t i = 0; i < n; ++i) basis[0][i] = b[i] - tmp[i];
        double beta = std::sqrt(dot(basis[0], basis[0]));
        res.relative_residual = beta / bnorm;
        if (res.relative_residual <= tol) {
            res.converged = true;
            break;
        }
        // a full cycle that fails to halve the true residual has hit the rounding floor
        if (beta > 0.5 * previous) break;
        previous = beta;
        for (double& e : basis[0]) e /= beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        std::size_t j = 0;
        for (; j < m && total < max_iter; ++j, ++total) {
            precond(basis[j], z[j]);
            a(z[j], basis[j + 1]);
            for (std::size_t i = 0; i <= j; ++i) {
                H(i, j) = dot(basis[j + 1], basis[i]);
                for (std::size_t k = 0; k < n; ++k) basis[j + 1][k] -= H(i, j) * basis[i][k];
            }
            H(j + 1, j) = std::sqrt(dot(basis[j + 1], basis[j + 1]));
            if (H(j + 1, j) > 0.0)
                for (double& e : basis[j + 1]) e /= H(j + 1, j);
            for (std::size_t i = 0; i < j; ++i) {
                const double t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
                H(i + 1, j) = -sn[i] * H(i, j) + cs[i] * H(i + 1, j);
                H(i, j) = t;
            }
            const double d = std::hypot(H(j, j), H(j + 1, j));
            cs[j] = d == 0.0 ? 1.0 : H(j, j) / d;
            sn[j] = d == 0.0 ? 0.0 : H(j + 1, j) / d;
            H(j, j) = d;
            H(j + 1, j) = 0.0;
            g[j + 1] = -sn[j] * g[j];
            g[j] *= cs[j];
            res.relative_residual = std::abs(g[j + 1]) / bnorm;
            res.iterations = total + 1;
            if (res.relative_residual <= tol) {
                ++j;
                ++total;
                break;
            }
        }
        // back substitution and update x += Z y
        std::vector<double> yv(j);
        for (std::size_t ii = j; ii-- > 0;) {
            double s = g[ii];
            for (std::size_t k = ii + 1; k < j; ++k) s -= H(ii, k) * yv[k];
            yv[ii] = s / H(ii, ii);
        }
        for (std::size_t k = 0; k < j; ++k)
            for (std::size_t i = 0; i < n; ++i) x[i] += yv[k] * z[k][i];
        if (res.relative_residual <= tol) {
            // confirm with a true residual
            a(x, tmp);
            double rr = 0.0;
            for (std::size_t i = 0; i < n; ++i) rr += (b[i] - tmp[i]) * (b[i] - tmp[i]);
            res.relative_residual = std::sqrt(rr) / bnorm;
            if (res.relative_residual <= 10.0 * tol) {
                res.converged = true;
                break;
            }
        }
    }
    return res;
}

}  // namespace sngs
