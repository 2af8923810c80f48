#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sngs {

// Uniform grid on [0, r_max]. Immutable once built; share it through GridPtr.
class RadialGrid {
public:
    double r_max() const noexcept { return r_max_; }
    std::size_t n() const noexcept { return nodes_.size(); }
    double h() const noexcept { return h_; }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights_dr() const noexcept { return weights_dr_; }
    const std::vector<double>& weights_r2dr() const noexcept { return weights_r2dr_; }
    double node(std::size_t i) const noexcept { return nodes_[i]; }

    // Same node count and radius, hence identical nodes.
    bool same_as(const RadialGrid& other) const noexcept {
        return n() == other.n() && r_max_ == other.r_max_;
    }

private:
    friend std::shared_ptr<const RadialGrid> make_grid(double r_max, std::size_t n);
    RadialGrid() = default;

    double r_max_ = 0.0;
    double h_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_dr_;
    std::vector<double> weights_r2dr_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

inline constexpr std::size_t kMinNodes = 16;

// Throws NonPositiveRadius or TooFewNodes.
GridPtr make_grid(double r_max, std::size_t n);

enum class Parity { even, odd };

struct FarField {
    enum class Kind { dirichlet_zero, coulomb_tail };
    Kind kind = Kind::dirichlet_zero;
    double mass = 0.0;  // coefficient m of the m/r tail

    static FarField dirichlet() { return {}; }
    static FarField coulomb(double m) { return {Kind::coulomb_tail, m}; }
};

class RadialField {
public:
    RadialField() = default;
    // Validates length and finiteness; odd fields must vanish at the origin.
    RadialField(GridPtr grid, std::vector<double> values, Parity parity = Parity::even,
                FarField far = FarField::dirichlet());

    static RadialField zeros(GridPtr grid, Parity parity = Parity::even);

    template <class F>
    static RadialField sample(GridPtr grid, F&& fn, Parity parity = Parity::even) {
        std::vector<double> v(grid->n());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid->node(i));
        if (parity == Parity::odd) v[0] = 0.0;
        return RadialField(std::move(grid), std::move(v), parity);
    }

    const GridPtr& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::span<const double> span() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    Parity parity() const noexcept { return parity_; }
    const FarField& far_field() const noexcept { return far_; }

    double sup_abs() const noexcept;

private:
    GridPtr grid_;
    std::vector<double> values_;
    Parity parity_ = Parity::even;
    FarField far_;
};

enum class Measure { dr, r2dr };

double integrate_radial(const RadialField& f, Measure measure);
double integrate_radial(const RadialGrid& grid, std::span<const double> f, Measure measure);

// Second-order differences; even input gives an odd field with an exact zero at r = 0.
RadialField differentiate(const RadialField& f);

// Local cubic Lagrange interpolation. Beyond the source radius the value is 0,
// or m/r for a coulomb-tail field.
RadialField interpolate(const RadialField& f, const GridPtr& target);
double interpolate_at(const RadialField& f, double r);

}  // namespace sngs
