#pragma once

// Fidelities, homodyne outcome statistics and acceptance-window averages.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "catgate/error.hpp"
#include "catgate/gate.hpp"
#include "catgate/numerics.hpp"
#include "catgate/states.hpp"

namespace catgate {

/// Interval of accepted homodyne outcomes [center - width/2, center + width/2].
struct AcceptanceWindow {
    double center = 0.0;
    double width = 1.0;

    AcceptanceWindow(double c, double w) : center(c), width(w)
    {
        if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(c))
            throw contract_error("AcceptanceWindow: width must be positive and finite, got " + std::to_string(w));
    }
    double lower() const noexcept { return center - 0.5 * width; }
    double upper() const noexcept { return center + 0.5 * width; }
};

/// |<a|b>|^2 without clamping.
inline double fidelity_raw(const WaveFunctionGrid& a, const WaveFunctionGrid& b) { return std::norm(overlap(a, b)); }

/// |<a|b>|^2 clamped to [0, 1].
inline double fidelity(const WaveFunctionGrid& a, const WaveFunctionGrid& b)
{
    return std::clamp(fidelity_raw(a, b), 0.0, 1.0);
}

/// Grid that holds both the input Gaussian at x0 and the gate factor at y_m.
inline Grid1D gate_grid(unsigned n, double x0, double y_m, std::size_t count = 4001)
{
    const double half = 8.0 + std::sqrt(2.0 * n + 1.0);
    return Grid1D(std::min(x0, y_m) - half, std::max(x0, y_m) + half, count);
}

/// F_scl: exact output vs semiclassical output for coherent input (x0, p0).
inline double scl_fidelity(unsigned n, double y_m, double x0, double p0 = 0.0,
                           ForbiddenRegion outside = ForbiddenRegion::clamp)
{
    const GateParams params{n, y_m};
    const auto grid = gate_grid(n, x0, y_m);
    const auto input = coherent_wavefunction({x0, p0}, grid);
    return fidelity(exact_output(params, input).state, semiclassical_output(params, input, outside));
}

/// F_cat: exact output vs perfect_cat for coherent input (x0, p0).
inline double fidelity_cat_scan(unsigned n, double y_m, double x0, double p0 = 0.0)
{
    const GateParams params{n, y_m};
    const CoherentParams in{x0, p0};
    const auto grid = gate_grid(n, x0, y_m);
    const auto exact = exact_output(params, coherent_wavefunction(in, grid)).state;
    return fidelity(exact, assemble_cat(perfect_cat(params, in), grid));
}

enum class DensityMethod {
    generating_function,
    quadrature,
};

/// Outcome density P(y_m, x0) for coherent input and an n-photon resource.
///
/// The generating-function route takes coefficient n of
/// (2(1-rho))^{-1/2} exp{-D^2 (1-rho)/2} / sqrt(pi), D = y_m - x0;
/// the quadrature route integrates |input * gate factor|^2 on a grid.
inline double outcome_density(unsigned n, double x0, double y_m,
                              DensityMethod method = DensityMethod::generating_function)
{
    const double delta = y_m - x0;
    if (method == DensityMethod::generating_function) {
        const auto gf = series_mul(series_inv_sqrt_one_plus(-1, n),
                                   series_exp(series_monomial(0.5 * delta * delta, 1, n)));
        return gf[n] * std::exp(-0.5 * delta * delta) / std::sqrt(2.0 * std::numbers::pi);
    }
    const auto grid = gate_grid(n, x0, y_m, 8001);
    std::vector<double> f(grid.count());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = grid[i];
        const double h = hermite_function(n, x - y_m);
        f[i] = h * h * std::exp(-(x - x0) * (x - x0));
    }
    return integrate(f, grid) / std::sqrt(std::numbers::pi);
}

/// P_mix: probability that the outcome falls in the window.
inline double window_probability(unsigned n, double x0, const AcceptanceWindow& window, double tol = 1e-9)
{
    return integrate_refined([&](double y) { return outcome_density(n, x0, y); }, window.lower(), window.upper(),
                             tol);
}

struct MixedFidelity {
    double fidelity;
    double probability;
};

/// Outcome-weighted fidelity of the conditional mixed state against the
/// perfect cat built for y_m = x0 (the window center):
///   F_mix = (1/P_mix) * integral over the window of P(y) F_cat(y) dy.
inline MixedFidelity mixed_fidelity(unsigned n, double x0, const AcceptanceWindow& window, double p0 = 0.0,
                                    double tol = 1e-9)
{
    if (std::abs(window.center - x0) > 1e-12 * std::max(1.0, std::abs(x0)))
        throw contract_error("mixed_fidelity: window must be centered at y_m = x0");
    const CoherentParams in{x0, p0};
    const auto grid = gate_grid(n, x0, x0, 4001);
    // Every outcome in the window must fit on the grid with the same margin.
    const double half = 8.0 + std::sqrt(2.0 * n + 1.0) + 0.5 * window.width;
    const Grid1D wide(x0 - half, x0 + half, 4001 + 2 * static_cast<std::size_t>(std::ceil(window.width / grid.spacing())));
    const auto input = coherent_wavefunction(in, wide);
    const auto cat = assemble_cat(perfect_cat(GateParams{n, x0}, in), wide);

    const double p_mix = window_probability(n, x0, window, tol);
    if (!(p_mix > 1e-300))
        throw zero_probability_error("mixed_fidelity: acceptance window has zero probability");
    const double weighted = integrate_refined(
        [&](double y) {
            const auto out = exact_output(GateParams{n, y}, input);
            return out.probability * fidelity(out.state, cat);
        },
        window.lower(), window.upper(), tol);
    return {weighted / p_mix, p_mix};
}

} // namespace catgate
