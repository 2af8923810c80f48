#include "sngs/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sngs/diagnostics.hpp"
#include "sngs/eigen.hpp"
#include "sngs/error.hpp"
#include "sngs/hartree.hpp"
#include "sngs/laplacian.hpp"
#include "sngs/parallel.hpp"
#include "sngs/solver.hpp"

namespace sngs {

namespace {

void require_converged(const GroundState& s) {
    if (!(s.residual_norm <= kConvergedResidual))
        throw Error(ErrorCode::UnconvergedState, "state residual " + format_number(s.residual_norm) +
                                                     " exceeds " + format_number(kConvergedResidual));
}

double power(double u, double e) { return u > 0.0 ? std::pow(u, e) : 0.0; }

GroundState remap(const GroundState& state, double a_to) {
    const auto& p = state.params;
    const double ratio = p.a / a_to;
    const double s = std::sqrt(ratio);
    std::vector<double> u = state.u.values(), v = state.v.values();
    for (double& e : u) e *= s;
    for (double& e : v) e *= ratio;
    GroundState out;
    out.params = p;
    out.params.a = a_to;
    out.params.nu = p.nu * std::pow(1.0 / ratio, (p.q - 2.0) / 2.0);
    out.u = RadialField(state.grid(), std::move(u));
    out.v = RadialField(state.grid(), std::move(v), Parity::even,
                        FarField::coulomb(state.v.far_field().mass * ratio));
    out.residual_norm = residual_norm(residual(out.u, out.params), out.u, out.params);
    out.iterations = state.iterations;
    out.diagnostics = identities(out);
    return out;
}

double weighted_norm(const RadialGrid& g, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += g.weights_r2dr()[i] * x[i] * x[i];
    return std::sqrt(s);
}

Parity sector_parity(int k) { return k == 0 ? Parity::even : Parity::odd; }

RadialField expand(const SectorOperator& op, std::span<const double> x) {
    const std::size_t n = op.grid->n();
    std::vector<double> f(n, 0.0);
    std::copy(x.begin(), x.end(), f.begin() + 1);
    f[0] = op.k == 0 ? even_origin_value(f) : 0.0;
    return RadialField(op.grid, std::move(f), sector_parity(op.k));
}

// Upper bound estimate for the top of U G_0 W U, which dominates U K_k U for every k.
double coupling_radius(const SectorOperator& op) {
    const auto& g = *op.grid;
    const std::size_t n = g.n();
    const double h2 = g.h() * g.h() / 12.0;
    std::vector<double> x(op.u), rho(n), y(n);
    double rq = 0.0;
    for (int it = 0; it < 200; ++it) {
        for (std::size_t i = 0; i < n; ++i) rho[i] = op.u[i] * x[i];
        apply_sector_green(g, 0, rho, y);
        for (std::size_t i = 0; i < n; ++i) y[i] = op.u[i] * (y[i] + h2 * rho[i]);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            num += g.weights_r2dr()[i] * x[i] * y[i];
            den += g.weights_r2dr()[i] * x[i] * x[i];
        }
        const double next = den > 0.0 ? num / den : 0.0;
        const double nr = weighted_norm(g, y);
        if (nr == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / nr;
        if (it > 5 && std::abs(next - rq) <= 1e-12 * std::abs(next)) {
            rq = next;
            break;
        }
        rq = next;
    }
    return rq;
}

}  // namespace

GroundState convention_map(const GroundState& state, MapDirection direction) {
    require_converged(state);
    if (direction == MapDirection::to_a2) {
        if (!(state.params.a > 0.0)) throw Error(ErrorCode::WrongConvention, "a = 0 has no Hartree term to rescale");
        return remap(state, 2.0);
    }
    if (state.params.a != 2.0) throw Error(ErrorCode::WrongConvention, "from_a2 expects a state with a = 2");
    return remap(state, 1.0);
}

ConventionCheck check_convention_pairs(const GroundState& state) {
    const GroundState mapped = convention_map(state, MapDirection::to_a2);
    const auto& g = *mapped.grid();
    const auto v_true = hartree_potential(mapped.u).v;
    std::vector<double> d1(g.n()), d2(g.n());
    for (std::size_t i = 0; i < g.n(); ++i) {
        d1[i] = mapped.v[i] - v_true[i];
        d2[i] = state.v[i] - v_true[i];
    }
    ConventionCheck c;
    c.mapped_residual = mapped.residual_norm;
    c.mapped_potential_mismatch = weighted_norm(g, d1) / weighted_norm(g, mapped.v.span());
    c.unscaled_potential_mismatch = weighted_norm(g, d2) / weighted_norm(g, state.v.span());
    return c;
}

void SectorOperator::apply_coupling(std::span<const double> x, std::span<double> y) const {
    const auto& g = *grid;
    const std::size_t n = g.n();
    std::vector<double> rho(n, 0.0), phi(n);
    for (std::size_t p = 0; p < x.size(); ++p) rho[p + 1] = u[p + 1] * x[p];
    apply_sector_green(g, k, rho, phi);
    const auto& w = g.weights_r2dr();
    for (std::size_t p = 0; p < x.size(); ++p) y[p] = -2.0 * params.a * w[p + 1] * u[p + 1] * phi[p + 1];
}

void SectorOperator::apply(std::span<const double> x, std::span<double> y) const {
    f_block.apply(x, y);
    if (!coupled) return;
    std::vector<double> c(x.size());
    apply_coupling(x, c);
    for (std::size_t p = 0; p < x.size(); ++p) y[p] += c[p];
}

RadialField SectorOperator::potential_component(const RadialField& f) const {
    const std::size_t n = grid->n();
    if (!coupled) return RadialField::zeros(grid, sector_parity(k));
    std::vector<double> rho(n), phi(n);
    for (std::size_t i = 0; i < n; ++i) rho[i] = u[i] * f[i];
    apply_sector_green(*grid, k, rho, phi);
    for (double& e : phi) e *= 2.0;
    if (k > 0) phi[0] = 0.0;
    return RadialField(grid, std::move(phi), sector_parity(k));
}

SectorOperator sector_form(const GroundState& state, int k) {
    require_converged(state);
    if (k < 0) throw Error(ErrorCode::InvalidParams, "sector index must be non-negative");
    const GroundState s = state.params.a > 0.0 && state.params.a != 2.0
                              ? convention_map(state, MapDirection::to_a2)
                              : state;
    SectorOperator op;
    op.k = k;
    op.centrifugal = static_cast<double>(k) * static_cast<double>(k + 1);
    op.params = s.params;
    op.convention = s.params.a > 0.0 ? Convention::symmetric_a2 : Convention::a_general;
    op.grid = s.grid();
    op.u = s.u.values();
    op.v = s.v.values();
    op.coupled = s.params.a > 0.0;

    const auto& g = *op.grid;
    const std::size_t m = g.n() - 2;
    const auto& w = g.weights_r2dr();
    op.f_block = weighted_radial_laplacian(g, k);
    std::vector<double> d(m);
    op.mass.resize(m);
    const auto& p = op.params;
    for (std::size_t i = 0; i < m; ++i) {
        const double ui = op.u[i + 1];
        d[i] = w[i + 1] * (p.lambda - p.a * op.v[i + 1] - p.nu * (p.q - 1.0) * power(ui, p.q - 2.0));
        op.mass[i] = w[i + 1];
    }
    op.f_block.add_diagonal(d);
    return op;
}

double quadratic_form_value(const SectorOperator& op, const RadialField& f, const RadialField& g) {
    const Parity want = sector_parity(op.k);
    if (f.parity() != want || (g.parity() != want && g.sup_abs() != 0.0))
        throw Error(ErrorCode::ParityMismatch, "sector " + std::to_string(op.k) + " needs " +
                                                   (want == Parity::even ? "even" : "odd") + " fields");
    if (!f.grid()->same_as(*op.grid) || !g.grid()->same_as(*op.grid))
        throw Error(ErrorCode::GridMismatch, "fields and sector form on different grids");
    const auto& grid = *op.grid;
    const std::size_t n = grid.n();
    const std::size_t m = n - 2;
    std::vector<double> x(f.values().begin() + 1, f.values().end() - 1), bx(m);
    op.f_block.apply(x, bx);
    double val = 0.0;
    for (std::size_t p = 0; p < m; ++p) val += x[p] * bx[p];
    if (!op.coupled) return val;

    const auto& w = grid.weights_r2dr();
    double cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) cross += w[i] * op.u[i] * f[i] * g[i];
    val -= 2.0 * op.params.a * cross;

    const auto dg = derivative_fourth_order(grid, g.span(), g.parity());
    const auto& wdr = grid.weights_dr();
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = grid.node(i);
        pg += wdr[i] * (dg[i] * dg[i] * r * r + op.centrifugal * g[i] * g[i]);
    }
    pg += (op.k + 1.0) * grid.r_max() * g[n - 1] * g[n - 1];
    return val + pg;
}

TranslationMode translation_mode(const GroundState& state) {
    require_converged(state);
    TranslationMode t;
    t.f = differentiate(state.u);
    t.g = state.params.a > 0.0 ? differentiate(RadialField(state.grid(), state.v.values()))
                               : RadialField::zeros(state.grid(), Parity::odd);
    return t;
}

SpectrumReport sector_spectrum(const SectorOperator& op, std::size_t m) {
    if (m == 0) throw Error(ErrorCode::InvalidParams, "request at least one eigenpair");
    const auto& g = *op.grid;
    double floor = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < op.dimension(); ++p) {
        const double r = g.node(p + 1);
        const double c = op.params.lambda - op.params.a * op.v[p + 1] -
                         op.params.nu * (op.params.q - 1.0) * power(op.u[p + 1], op.params.q - 2.0);
        floor = std::min(floor, c + op.centrifugal / (r * r));
    }
    const double coupling = op.coupled ? 2.0 * op.params.a * 1.05 * coupling_radius(op) : 0.0;
    const double shift = floor - coupling - 1e-2 * (1.0 + std::abs(floor));

    PencilForm form;
    form.band = op.f_block;
    if (op.coupled)
        form.coupling = [&op](std::span<const double> x, std::span<double> y) { op.apply_coupling(x, y); };
    const auto pairs = smallest_eigenpairs(form, op.mass, m, shift);

    SpectrumReport rep;
    rep.k = op.k;
    rep.shift = shift;
    for (const auto& pr : pairs) {
        rep.eigenvalues.push_back(pr.value);
        std::vector<double> x = pr.vector;
        const auto big = std::max_element(x.begin(), x.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
        if (*big < 0.0)
            for (double& e : x) e = -e;
        RadialField f = expand(op, x);
        rep.g_modes.push_back(op.potential_component(f));
        rep.f_modes.push_back(std::move(f));
    }
    return rep;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::nondegenerate: return "nondegenerate";
        case Verdict::degenerate: return "degenerate";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

NondegeneracyReport nondegeneracy_report(const GroundState& state, int k_max, const Tolerances& tol,
                                         std::size_t num_eigs) {
    if (k_max < 2) throw Error(ErrorCode::InvalidParams, "k_max must be at least 2");
    require_converged(state);
    const GroundState s = state.params.a > 0.0 && state.params.a != 2.0
                              ? convention_map(state, MapDirection::to_a2)
                              : state;
    const std::size_t m = std::max<std::size_t>(2, num_eigs);
    std::vector<SpectrumReport> spectra(static_cast<std::size_t>(k_max) + 1);
    parallel_for(spectra.size(), [&](std::size_t k) {
        spectra[k] = sector_spectrum(sector_form(s, static_cast<int>(k)), m);
    });

    NondegeneracyReport rep;
    const auto& g = *s.grid();
    rep.n = g.n();
    rep.h = g.h();
    rep.gap_tol = tol.gap_tol;
    rep.zero_tol = tol.zero_tol.value_or(50.0 * g.h() * g.h() * std::abs(spectra[1].eigenvalues[1]));

    const TranslationMode tm = translation_mode(s);
    const auto& w = g.weights_r2dr();
    auto pair_dot = [&](const RadialField& f1, const RadialField& g1, const RadialField& f2, const RadialField& g2) {
        double d = 0.0;
        for (std::size_t i = 0; i < g.n(); ++i) d += w[i] * (f1[i] * f2[i] + g1[i] * g2[i]);
        return d;
    };

    bool ok = true, degenerate = false;
    for (const auto& sp : spectra) {
        SectorEntry e;
        e.k = sp.k;
        e.eigenvalues = sp.eigenvalues;
        std::size_t best = 0;
        for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) {
            if (std::abs(sp.eigenvalues[i]) <= rep.zero_tol) ++e.kernel_dimension;
            if (std::abs(sp.eigenvalues[i]) < std::abs(sp.eigenvalues[best])) best = i;
        }
        const double smallest_abs = std::abs(sp.eigenvalues[best]);
        if (sp.k == 0) {
            ok = ok && smallest_abs > rep.gap_tol;
            degenerate = degenerate || e.kernel_dimension > 0;
        } else if (sp.k == 1) {
            const auto& f = sp.f_modes[best];
            const auto& gm = sp.g_modes[best];
            const double c = std::abs(pair_dot(f, gm, tm.f, tm.g)) /
                             std::sqrt(pair_dot(f, gm, f, gm) * pair_dot(tm.f, tm.g, tm.f, tm.g));
            e.zero_mode_match = c;
            ok = ok && e.kernel_dimension == 1 && c >= kZeroModeMatch;
            degenerate = degenerate || e.kernel_dimension > 1;
        } else {
            ok = ok && sp.eigenvalues.front() > 0.0;
            degenerate = degenerate || e.kernel_dimension > 0;
        }
        rep.sectors.push_back(std::move(e));
    }
    rep.verdict = ok ? Verdict::nondegenerate : (degenerate ? Verdict::degenerate : Verdict::inconclusive);
    return rep;
}

}  // namespace sngs
