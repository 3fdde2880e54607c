#pragma once

// Coherent, Fock and two-component cat states sampled on a coordinate grid.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "catgate/error.hpp"
#include "catgate/numerics.hpp"

namespace catgate {

using complex = std::complex<double>;

/// Coherent amplitude alpha = (x0 + i p0)/sqrt(2) given by its quadratures.
struct CoherentParams {
    double x0 = 0.0;
    double p0 = 0.0;

    complex alpha() const noexcept { return complex(x0, p0) / std::numbers::sqrt2; }
    static CoherentParams from_alpha(complex alpha) noexcept
    {
        return {std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag()};
    }
};

/// Samples psi(x_k) of a one-dimensional wavefunction.
struct WaveFunctionGrid {
    Grid1D grid;
    std::vector<complex> values;

    WaveFunctionGrid(Grid1D g, std::vector<complex> v) : grid(g), values(std::move(v))
    {
        if (values.size() != grid.count())
            throw contract_error("WaveFunctionGrid: " + std::to_string(values.size()) + " values for " +
                                 std::to_string(grid.count()) + " grid points");
    }

    std::size_t size() const noexcept { return values.size(); }
    double x(std::size_t i) const noexcept { return grid[i]; }
    const complex& operator[](std::size_t i) const noexcept { return values[i]; }

    /// |psi(x_k)|^2 samples.
    std::vector<double> density() const
    {
        std::vector<double> out(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            out[i] = std::norm(values[i]);
        return out;
    }

    /// Integral of |psi|^2.
    double norm() const { return integrate(density(), grid); }
};

/// e^{i theta}|alpha_plus> + parity_sign e^{-i theta}|alpha_minus>, with
/// norm_factor the squared norm of that unnormalized combination.
struct CatSuperposition {
    complex alpha_plus;
    complex alpha_minus;
    double phase_theta = 0.0;
    int parity_sign = 1;
    double norm_factor = 1.0;
};

/// Default coordinate window [center - W, center + W], W = 8 + sqrt(2n+1), 4001 points.
inline Grid1D default_grid(double center, unsigned n = 0, std::size_t count = 4001)
{
    const double half = 8.0 + std::sqrt(2.0 * n + 1.0);
    return Grid1D(center - half, center + half, count);
}

namespace detail {

inline void require_window(const Grid1D& grid, double lo, double hi, const char* what)
{
    // Relative slack absorbs rounding in grid construction.
    const double slack = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    if (!grid.covers(lo + slack, hi - slack))
        throw coverage_error(std::string(what) + ": grid [" + std::to_string(grid.x_min()) + ", " +
                             std::to_string(grid.x_max()) + "] must cover [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
}

inline complex coherent_amplitude(double x0, double p0, double x) noexcept
{
    const double d = x - x0;
    return std::polar(std::exp(-0.5 * d * d) / std::sqrt(std::sqrt(std::numbers::pi)), p0 * x - 0.5 * p0 * x0);
}

} // namespace detail

/// <x|alpha> = pi^{-1/4} exp{-(x-x0)^2/2 + i p0 x - i p0 x0/2}.
inline WaveFunctionGrid coherent_wavefunction(const CoherentParams& params, const Grid1D& grid)
{
    if (!std::isfinite(params.x0) || !std::isfinite(params.p0))
        throw contract_error("coherent_wavefunction: non-finite amplitude");
    detail::require_window(grid, params.x0 - 8.0, params.x0 + 8.0, "coherent_wavefunction");
    std::vector<complex> v(grid.count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = detail::coherent_amplitude(params.x0, params.p0, grid[i]);
    return {grid, std::move(v)};
}

/// Fock state wavefunction psi_n(x), real valued.
inline WaveFunctionGrid fock_wavefunction(unsigned n, const Grid1D& grid)
{
    const double half = std::sqrt(2.0 * n + 1.0) + 8.0;
    detail::require_window(grid, -half, half, "fock_wavefunction");
    std::vector<complex> v(grid.count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = hermite_function(n, grid[i]);
    return {grid, std::move(v)};
}

/// Analytic <a|b> = exp{-|a|^2/2 - |b|^2/2 + conj(a) b}.
inline complex coherent_overlap(complex a, complex b) noexcept
{
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

/// Builds the superposition and fills norm_factor from the coherent-state Gram matrix.
inline CatSuperposition make_cat(complex alpha_plus, complex alpha_minus, double theta, int parity_sign)
{
    if (parity_sign != 1 && parity_sign != -1)
        throw contract_error("make_cat: parity_sign must be +1 or -1");
    const complex cross = std::polar(1.0, -2.0 * theta) * coherent_overlap(alpha_plus, alpha_minus);
    const double norm = 2.0 + 2.0 * static_cast<double>(parity_sign) * cross.real();
    if (!(norm > 0.0))
        throw zero_state_error("make_cat: components cancel exactly");
    return {alpha_plus, alpha_minus, theta, parity_sign, norm};
}

/// Normalized cat sampled on the grid. Throws coverage_error when the grid
/// norm disagrees with the analytic normalization by more than 1e-9.
inline WaveFunctionGrid assemble_cat(const CatSuperposition& cat, const Grid1D& grid)
{
    const auto plus = CoherentParams::from_alpha(cat.alpha_plus);
    const auto minus = CoherentParams::from_alpha(cat.alpha_minus);
    detail::require_window(grid, std::min(plus.x0, minus.x0) - 8.0, std::max(plus.x0, minus.x0) + 8.0,
                           "assemble_cat");
    const complex w_plus = std::polar(1.0 / std::sqrt(cat.norm_factor), cat.phase_theta);
    const complex w_minus =
        static_cast<double>(cat.parity_sign) * std::polar(1.0 / std::sqrt(cat.norm_factor), -cat.phase_theta);
    std::vector<complex> v(grid.count());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = grid[i];
        v[i] = w_plus * detail::coherent_amplitude(plus.x0, plus.p0, x) +
               w_minus * detail::coherent_amplitude(minus.x0, minus.p0, x);
    }
    WaveFunctionGrid out{grid, std::move(v)};
    const double grid_norm = out.norm();
    if (std::abs(grid_norm - 1.0) > 1e-9)
        throw coverage_error("assemble_cat: grid norm " + std::to_string(grid_norm) +
                             " disagrees with analytic normalization; refine or widen the grid");
    return out;
}

/// <a|b> = integral of conj(a) b over the shared grid.
inline complex overlap(const WaveFunctionGrid& a, const WaveFunctionGrid& b)
{
    if (!(a.grid == b.grid))
        throw contract_error("overlap: states live on different grids");
    std::vector<complex> prod(a.size());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = std::conj(a.values[i]) * b.values[i];
    return integrate(prod, a.grid);
}

/// Rescales to unit norm. Throws zero_state_error for an identically vanishing state.
inline WaveFunctionGrid normalized(WaveFunctionGrid psi, const char* who = "normalized")
{
    const double n = psi.norm();
    if (!(n > 1e-300))
        throw zero_state_error(std::string(who) + ": state has zero norm");
    const double s = 1.0 / std::sqrt(n);
    for (auto& v : psi.values)
        v *= s;
    return psi;
}

} // namespace catgate
