#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sngs/banded.hpp"
#include "sngs/model.hpp"

namespace sngs {

enum class Convention { a_general, symmetric_a2 };
enum class MapDirection { to_a2, from_a2 };

// General a > 0 to a = 2: u -> u sqrt(a/2), v -> v a/2, nu -> nu (2/a)^((q-2)/2).
// from_a2 returns to a = 1. The residual is re-evaluated under the new parameters.
// Throws WrongConvention (a = 0, or from_a2 on a state with a != 2) and UnconvergedState.
GroundState convention_map(const GroundState& state, MapDirection direction);

struct ConventionCheck {
    double mapped_residual = 0.0;            // residual of (u sqrt(a/2), v a/2) under mapped params
    double mapped_potential_mismatch = 0.0;  // |v_map - I2*u_map^2| / |v_map|
    double unscaled_potential_mismatch = 0.0;  // same with v kept unscaled (the (U/sqrt2, V) pairing)
};
ConventionCheck check_convention_pairs(const GroundState& state);

// Quadratic form of sector k in the a = 2 convention, with the potential
// component g eliminated: S_k = F_k - 4 u G_k(u .), where
// F_k = -Delta_k + lambda - 2v - nu (q-1) u^(q-2) and G_k = (-Delta_k)^{-1}.
// Eliminating g keeps the inertia and the kernel of the pair form while
// removing the unbounded g-block. For a = 0 only F_k remains.
struct SectorOperator {
    int k = 0;
    double centrifugal = 0.0;
    Convention convention = Convention::symmetric_a2;
    ModelParams params;
    GridPtr grid;
    std::vector<double> u;       // full grid, mapped state
    std::vector<double> v;
    SymBandMatrix f_block;       // W F_k on nodes 1..n-2
    std::vector<double> mass;    // W on nodes 1..n-2
    bool coupled = false;

    std::size_t dimension() const noexcept { return mass.size(); }
    // y = -2a W U K_k(U x) on the active nodes.
    void apply_coupling(std::span<const double> x, std::span<double> y) const;
    void apply(std::span<const double> x, std::span<double> y) const;
    // g = 2 G_k(u f) for a full-grid f; zero for a = 0.
    RadialField potential_component(const RadialField& f) const;
};

// Throws UnconvergedState. States with a > 0 are mapped to a = 2 first.
SectorOperator sector_form(const GroundState& state, int k);

// A_k((f,g),(f,g)) by quadrature: f-block value, -2a int u f g r^2 dr, and
// int (g'^2 r^2 + k(k+1) g^2) dr including the harmonic exterior (k+1) R g(R)^2.
// k = 0 needs even fields, k >= 1 odd ones (ParityMismatch).
double quadratic_form_value(const SectorOperator& op, const RadialField& f, const RadialField& g);

struct TranslationMode {
    RadialField f;
    RadialField g;
};

// (u', v') of the state, both odd. For a = 0 g is zero. Throws UnconvergedState.
TranslationMode translation_mode(const GroundState& state);

struct SpectrumReport {
    int k = 0;
    std::vector<double> eigenvalues;
    std::vector<RadialField> f_modes;
    std::vector<RadialField> g_modes;
    double shift = 0.0;
};

SpectrumReport sector_spectrum(const SectorOperator& op, std::size_t m);

struct Tolerances {
    std::optional<double> zero_tol;  // default 50 h^2 sigma_2(k=1)
    double gap_tol = 1e-3;
};

enum class Verdict { nondegenerate, degenerate, inconclusive };
const char* to_string(Verdict v) noexcept;

struct SectorEntry {
    int k = 0;
    std::vector<double> eigenvalues;
    std::size_t kernel_dimension = 0;
    std::optional<double> zero_mode_match;
};

struct NondegeneracyReport {
    std::vector<SectorEntry> sectors;
    Verdict verdict = Verdict::inconclusive;
    double zero_tol = 0.0;
    double gap_tol = 0.0;
    std::size_t n = 0;
    double h = 0.0;
};

inline constexpr double kZeroModeMatch = 0.999;

NondegeneracyReport nondegeneracy_report(const GroundState& state, int k_max, const Tolerances& tol = {},
                                         std::size_t num_eigs = 4);

}  // namespace sngs
