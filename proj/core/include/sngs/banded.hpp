#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sngs {

// Symmetric band matrix, upper band kept in LAPACK 'U' layout.
class SymBandMatrix {
public:
    SymBandMatrix() = default;
    SymBandMatrix(std::size_t n, std::size_t kd);

    std::size_t size() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return kd_; }

    // Valid for |i - j| <= kd; either triangle addresses the same entry.
    double& at(std::size_t i, std::size_t j) noexcept;
    double at(std::size_t i, std::size_t j) const noexcept;

    void add_diagonal(std::span<const double> d);
    void apply(std::span<const double> x, std::span<double> y) const;

    const std::vector<double>& storage() const noexcept { return ab_; }

private:
    std::size_t n_ = 0;
    std::size_t kd_ = 0;
    std::vector<double> ab_;  // (kd+1) x n column major
};

// Cholesky of an SPD band matrix (dpbtrf). Throws FactorizationFailure otherwise.
class BandCholesky {
public:
    explicit BandCholesky(const SymBandMatrix& a);
    void solve_in_place(std::span<double> b) const;
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::size_t kd_;
    std::vector<double> ab_;
};

// LU with partial pivoting of a symmetric (possibly indefinite) band matrix (dgbtrf).
class BandLU {
public:
    explicit BandLU(const SymBandMatrix& a);
    void solve_in_place(std::span<double> b) const;
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::size_t kd_;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

}  // namespace sngs
