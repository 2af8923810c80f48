#include "sngs/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sngs/error.hpp"

namespace sngs {

GridPtr make_grid(double r_max, std::size_t n) {
    if (!(r_max > 0.0) || !std::isfinite(r_max))
        throw Error(ErrorCode::NonPositiveRadius, "r_max must be positive, got " + format_number(r_max));
    if (n < kMinNodes)
        throw Error(ErrorCode::TooFewNodes, "need at least 16 nodes, got " + std::to_string(n));

    std::shared_ptr<RadialGrid> g(new RadialGrid());
    g->r_max_ = r_max;
    g->h_ = r_max / static_cast<double>(n - 1);
    g->nodes_.resize(n);
    g->weights_dr_.assign(n, g->h_);
    g->weights_r2dr_.resize(n);
    for (std::size_t i = 0; i < n; ++i) g->nodes_[i] = g->h_ * static_cast<double>(i);
    g->nodes_[n - 1] = r_max;
    g->weights_dr_[0] = g->weights_dr_[n - 1] = 0.5 * g->h_;
    for (std::size_t i = 0; i < n; ++i) g->weights_r2dr_[i] = g->weights_dr_[i] * g->nodes_[i] * g->nodes_[i];
    return g;
}

RadialField::RadialField(GridPtr grid, std::vector<double> values, Parity parity, FarField far)
    : grid_(std::move(grid)), values_(std::move(values)), parity_(parity), far_(far) {
    if (!grid_) throw Error(ErrorCode::GridMismatch, "field without grid");
    if (values_.size() != grid_->n())
        throw Error(ErrorCode::GridMismatch, "field length " + std::to_string(values_.size()) +
                                                 " does not match grid size " + std::to_string(grid_->n()));
    for (double x : values_)
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "non-finite field value");
    if (parity_ == Parity::odd && values_[0] != 0.0)
        throw Error(ErrorCode::ParityMismatch, "odd field must vanish at the origin");
}

RadialField RadialField::zeros(GridPtr grid, Parity parity) {
    std::vector<double> v(grid->n(), 0.0);
    return RadialField(std::move(grid), std::move(v), parity);
}

double RadialField::sup_abs() const noexcept {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
}

double integrate_radial(const RadialGrid& grid, std::span<const double> f, Measure measure) {
    const auto& w = measure == Measure::dr ? grid.weights_dr() : grid.weights_r2dr();
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
    return s;
}

double integrate_radial(const RadialField& f, Measure measure) {
    return integrate_radial(*f.grid(), f.span(), measure);
}

RadialField differentiate(const RadialField& f) {
    const auto& g = *f.grid();
    const std::size_t n = g.n();
    const double h = g.h();
    const auto& y = f.values();
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
    d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
    if (f.parity() == Parity::even) {
        d[0] = 0.0;
        return RadialField(f.grid(), std::move(d), Parity::odd);
    }
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    return RadialField(f.grid(), std::move(d), Parity::even);
}

double interpolate_at(const RadialField& f, double r) {
    const auto& g = *f.grid();
    const std::size_t n = g.n();
    const double h = g.h();
    if (r > g.r_max()) {
        if (f.far_field().kind == FarField::Kind::coulomb_tail) return f.far_field().mass / r;
        return 0.0;
    }
    if (r <= 0.0) return f[0];
    const double s = r / h;
    auto base = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    base = std::clamp<std::ptrdiff_t>(base, 0, static_cast<std::ptrdiff_t>(n) - 4);
    const double t = s - static_cast<double>(base);
    // Lagrange basis on offsets 0..3
    const double l0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double l1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double l2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double l3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    const auto b = static_cast<std::size_t>(base);
    return l0 * f[b] + l1 * f[b + 1] + l2 * f[b + 2] + l3 * f[b + 3];
}

RadialField interpolate(const RadialField& f, const GridPtr& target) {
    std::vector<double> out(target->n());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = interpolate_at(f, target->node(i));
    if (f.parity() == Parity::odd) out[0] = 0.0;
    return RadialField(target, std::move(out), f.parity(), f.far_field());
}

}  // namespace sngs
