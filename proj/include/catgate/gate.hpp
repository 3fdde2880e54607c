#pragma once

// The Fock-state cat gate: CZ entangling step followed by a projective
// homodyne measurement of the ancilla momentum with outcome y_m.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "catgate/error.hpp"
#include "catgate/numerics.hpp"
#include "catgate/states.hpp"

namespace catgate {

/// Resource photon number and homodyne outcome.
struct GateParams {
    unsigned n = 0;
    double y_m = 0.0;

    double radius() const noexcept { return std::sqrt(2.0 * n + 1.0); }
    /// Scaled coordinate z = (x - y_m)/sqrt(2n+1).
    double z(double x) const noexcept { return (x - y_m) / radius(); }
    int parity() const noexcept { return n % 2 == 0 ? 1 : -1; }
};

/// Local expansion phi ~ theta0 + p_plus (x-c) + dp_plus (x-c)^2 about c.
struct TaylorPhase {
    double theta0 = 0.0;
    double p_plus = 0.0;
    double dp_plus = 0.0;
    double expansion_center = 0.0;
};

/// phi(n, z) = (2n+1)(z sqrt(1-z^2) + arcsin z)/2, defined for |z| <= 1.
inline double phase_function(unsigned n, double z)
{
    if (!(std::abs(z) <= 1.0))
        throw domain_error("phase_function: |z| = " + std::to_string(std::abs(z)) +
                           " > 1 lies in the classically forbidden region");
    return 0.5 * (2.0 * n + 1.0) * (z * std::sqrt(1.0 - z * z) + std::asin(z));
}

/// Semiclassical added factor (1-z^2)^{-1/4}[e^{i phi} + (-1)^n e^{-i phi}];
/// zero for |z| >= 1.
inline complex semiclassical_factor(const GateParams& params, double x)
{
    const double z = params.z(x);
    if (!(std::abs(z) < 1.0))
        return {0.0, 0.0};
    const double phi = phase_function(params.n, z);
    const double weight = 1.0 / std::sqrt(std::sqrt(1.0 - z * z));
    return weight * (std::polar(1.0, phi) + static_cast<double>(params.parity()) * std::polar(1.0, -phi));
}

/// Gate factor of the exact reduction, i^n psi_n(x - y_m). Independent of the input state.
inline complex exact_factor(const GateParams& params, double x)
{
    static constexpr complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return i_pow[params.n % 4] * hermite_function(params.n, x - params.y_m);
}

/// Normalized gate output together with the outcome density P(y_m).
struct ExactOutput {
    WaveFunctionGrid state;
    double probability;
};

namespace detail {

inline void require_normalized(const WaveFunctionGrid& input, const char* who)
{
    const double nrm = input.norm();
    if (std::abs(nrm - 1.0) > 1e-8)
        throw contract_error(std::string(who) + ": input norm is " + std::to_string(nrm) + ", expected 1");
}

// The product must have decayed at both grid ends, otherwise the
// quadrature is missing part of the state.
inline void require_decayed(const std::vector<complex>& v, const Grid1D& grid, const char* who)
{
    double peak = 0.0;
    for (const auto& c : v)
        peak = std::max(peak, std::abs(c));
    const double edge = std::max(std::abs(v.front()), std::abs(v.back()));
    if (peak > 0.0 && edge > 1e-7 * peak)
        throw coverage_error(std::string(who) + ": output does not decay inside grid [" +
                             std::to_string(grid.x_min()) + ", " + std::to_string(grid.x_max()) + "]");
}

} // namespace detail

/// Exact conditional output: input(x) * i^n psi_n(x - y_m), normalized by sqrt(P(y_m)).
inline ExactOutput exact_output(const GateParams& params, const WaveFunctionGrid& input)
{
    if (!std::isfinite(params.y_m))
        throw contract_error("exact_output: non-finite y_m");
    detail::require_normalized(input, "exact_output");
    std::vector<complex> v(input.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = input.values[i] * exact_factor(params, input.x(i));
    detail::require_decayed(v, input.grid, "exact_output");
    WaveFunctionGrid out{input.grid, std::move(v)};
    const double probability = out.norm();
    if (!(probability >= 1e-300))
        throw zero_probability_error("exact_output: outcome y_m = " + std::to_string(params.y_m) +
                                     " has zero probability density for n = " + std::to_string(params.n));
    const double s = 1.0 / std::sqrt(probability);
    for (auto& c : out.values)
        c *= s;
    return {std::move(out), probability};
}

/// How the semiclassical phase continues outside the resource circle |z| >= 1.
enum class ForbiddenRegion {
    clamp, ///< phase frozen at its boundary value phi(n, +-1)
    zero,  ///< factor set to zero
};

/// Semiclassical output input(x)[e^{i phi} + (-1)^n e^{-i phi}], with the
/// (1-z^2)^{-1/4} weight treated as constant, renormalized to unit norm.
inline WaveFunctionGrid semiclassical_output(const GateParams& params, const WaveFunctionGrid& input,
                                             ForbiddenRegion outside = ForbiddenRegion::clamp)
{
    detail::require_normalized(input, "semiclassical_output");
    const double sign = static_cast<double>(params.parity());
    std::vector<complex> v(input.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double z = params.z(input.x(i));
        if (std::abs(z) >= 1.0) {
            if (outside == ForbiddenRegion::zero) {
                v[i] = 0.0;
                continue;
            }
            z = std::copysign(1.0, z);
        }
        const double phi = phase_function(params.n, z);
        v[i] = input.values[i] * (std::polar(1.0, phi) + sign * std::polar(1.0, -phi));
    }
    return normalized(WaveFunctionGrid{input.grid, std::move(v)}, "semiclassical_output");
}

/// Second-order expansion of phi(n, (x - y_m)/sqrt(2n+1)) about x = center.
inline TaylorPhase taylor_phase(const GateParams& params, double center)
{
    const double offset = center - params.y_m;
    const double r2 = 2.0 * params.n + 1.0;
    const double gap = r2 - offset * offset;
    if (std::abs(gap) <= 1e-12 * r2)
        throw singular_shear_error("taylor_phase: expansion point " + std::to_string(center) +
                                   " is tangent to the resource circle; shear diverges");
    if (gap < 0.0)
        throw domain_error("taylor_phase: expansion point " + std::to_string(center) +
                           " lies outside the resource circle");
    const double p = std::sqrt(gap);
    return {phase_function(params.n, offset / std::sqrt(r2)), p, -offset / (2.0 * p), center};
}

/// Cat from the linear truncation of the phase about `center`:
///   input(x)[e^{i(theta0 + p(x-c))} + (-1)^n e^{-i(theta0 + p(x-c))}],
/// returned as a superposition of the coherent states (x0, p0 +- p).
inline CatSuperposition perfect_cat_about(const GateParams& params, const CoherentParams& input, double center)
{
    const TaylorPhase t = taylor_phase(params, center);
    // input(x) e^{i p x} = <x|x0, p0 + p> e^{i p x0 / 2}
    const double theta = t.theta0 - t.p_plus * center + 0.5 * t.p_plus * input.x0;
    const auto plus = CoherentParams{input.x0, input.p0 + t.p_plus}.alpha();
    const auto minus = CoherentParams{input.x0, input.p0 - t.p_plus}.alpha();
    return make_cat(plus, minus, theta, params.parity());
}

/// Undistorted cat: expansion about x = y_m, where the shear vanishes.
/// With y_m = x0 this is the cat displaced by +-sqrt(2n+1) around the input;
/// with y_m = 0 it is the cat built about the origin.
inline CatSuperposition perfect_cat(const GateParams& params, const CoherentParams& input)
{
    return perfect_cat_about(params, input, params.y_m);
}

} // namespace catgate
