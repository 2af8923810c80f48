#include "sngs/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

#include "sngs/error.hpp"

namespace sngs {

SymBandMatrix::SymBandMatrix(std::size_t n, std::size_t kd) : n_(n), kd_(kd), ab_((kd + 1) * n, 0.0) {}

double& SymBandMatrix::at(std::size_t i, std::size_t j) noexcept {
    if (i > j) std::swap(i, j);
    return ab_[(kd_ + i - j) + j * (kd_ + 1)];
}

double SymBandMatrix::at(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return ab_[(kd_ + i - j) + j * (kd_ + 1)];
}

void SymBandMatrix::add_diagonal(std::span<const double> d) {
    for (std::size_t i = 0; i < n_; ++i) at(i, i) += d[i];
}

void SymBandMatrix::apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t lo = i >= kd_ ? i - kd_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + kd_);
        double s = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) s += at(i, j) * x[j];
        y[i] = s;
    }
}

BandCholesky::BandCholesky(const SymBandMatrix& a) : n_(a.size()), kd_(a.bandwidth()), ab_(a.storage()) {
    const lapack_int info = LAPACKE_dpbtrf(LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(n_),
                                           static_cast<lapack_int>(kd_), ab_.data(),
                                           static_cast<lapack_int>(kd_ + 1));
    if (info != 0)
        throw Error(ErrorCode::FactorizationFailure, "band Cholesky failed, info=" + std::to_string(info));
}

void BandCholesky::solve_in_place(std::span<double> b) const {
    LAPACKE_dpbtrs(LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(n_), static_cast<lapack_int>(kd_), 1,
                   ab_.data(), static_cast<lapack_int>(kd_ + 1), b.data(), static_cast<lapack_int>(n_));
}

BandLU::BandLU(const SymBandMatrix& a) : n_(a.size()), kd_(a.bandwidth()), ipiv_(a.size()) {
    // General band layout: ldab = 2*kl + ku + 1, entry (i,j) at row kl + ku + i - j.
    const std::size_t ldab = 3 * kd_ + 1;
    ab_.assign(ldab * n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t lo = j >= kd_ ? j - kd_ : 0;
        const std::size_t hi = std::min(n_ - 1, j + kd_);
        for (std::size_t i = lo; i <= hi; ++i) ab_[(2 * kd_ + i - j) + j * ldab] = a.at(i, j);
    }
    const auto k = static_cast<lapack_int>(kd_);
    const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(n_),
                                           static_cast<lapack_int>(n_), k, k, ab_.data(),
                                           static_cast<lapack_int>(ldab), ipiv_.data());
    if (info != 0)
        throw Error(ErrorCode::FactorizationFailure, "band LU hit a zero pivot, info=" + std::to_string(info));
}

void BandLU::solve_in_place(std::span<double> b) const {
    const auto k = static_cast<lapack_int>(kd_);
    LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(n_), k, k, 1, ab_.data(),
                   static_cast<lapack_int>(3 * kd_ + 1), ipiv_.data(), b.data(), static_cast<lapack_int>(n_));
}

}  // namespace sngs
