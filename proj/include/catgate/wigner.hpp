#pragma once

// Wigner functions of gate output states.
//
// Two independent routes:
//  * wigner_quadrature: direct evaluation of
//      W(x,p) = (1/pi) int conj(psi(x+z)) psi(x-z) e^{2ipz} dz
//    for any sampled state.
//  * wigner_mehler: the exact output for coherent input written as
//      W = W0 * Wt_n / N_n,
//    where Wt_n and N_n are coefficient n of closed-form generating functions
//    obtained from the Mehler kernel. No integration is performed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "catgate/error.hpp"
#include "catgate/gate.hpp"
#include "catgate/numerics.hpp"
#include "catgate/states.hpp"

namespace catgate {

/// W(x_j, p_k) on a rectangular grid, stored x-major.
struct WignerGrid {
    Grid1D x_axis;
    Grid1D p_axis;
    std::vector<double> values;

    WignerGrid(Grid1D xs, Grid1D ps)
        : x_axis(xs), p_axis(ps), values(xs.count() * ps.count(), 0.0)
    {
    }

    double& at(std::size_t j, std::size_t k) noexcept { return values[j * p_axis.count() + k]; }
    double at(std::size_t j, std::size_t k) const noexcept { return values[j * p_axis.count() + k]; }

    /// int W(x_j, p) dp.
    double marginal_x(std::size_t j) const
    {
        return integrate_uniform(std::span<const double>(values.data() + j * p_axis.count(), p_axis.count()),
                                 p_axis.spacing());
    }

    /// Double integral over the grid window.
    double integral() const
    {
        std::vector<double> rows(x_axis.count());
        for (std::size_t j = 0; j < rows.size(); ++j)
            rows[j] = marginal_x(j);
        return integrate(rows, x_axis);
    }

    double max_abs_difference(const WignerGrid& other) const
    {
        if (!(x_axis == other.x_axis) || !(p_axis == other.p_axis))
            throw contract_error("WignerGrid: axes differ");
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i)
            m = std::max(m, std::abs(values[i] - other.values[i]));
        return m;
    }
};

/// Support box of the exact output Wigner function for coherent input:
/// x in [x_c - 6, x_c + 6] with x_c = (x0 + y_m)/2, p in p0 +- (sqrt(2n+1) + 4).
inline std::pair<Grid1D, Grid1D> default_wigner_axes(const GateParams& params, const CoherentParams& input,
                                                     std::size_t count = 201)
{
    const double xc = 0.5 * (input.x0 + params.y_m);
    const double ph = params.radius() + 4.0;
    return {Grid1D(xc - 6.0, xc + 6.0, count), Grid1D(input.p0 - ph, input.p0 + ph, count)};
}

/// Coordinate grid on which wigner_quadrature can evaluate every x of x_axis:
/// spacing x_axis.spacing()/refine (at most max_step), aligned with x_axis
/// and extended by `margin` beyond both ends.
inline Grid1D oracle_state_grid(const Grid1D& x_axis, double margin, double max_step = 0.01)
{
    const double dx = x_axis.spacing();
    const auto refine = static_cast<std::size_t>(std::max(1.0, std::ceil(dx / max_step)));
    const double h = dx / static_cast<double>(refine);
    const auto pad = static_cast<std::size_t>(std::ceil(margin / h));
    const std::size_t count = (x_axis.count() - 1) * refine + 1 + 2 * pad;
    return Grid1D::with_spacing(x_axis.x_min() - static_cast<double>(pad) * h, h, count);
}

/// Direct Wigner transform of a sampled state.
///
/// Every x must sit on the half-step lattice of the state grid, so that
/// x + z and x - z are both grid nodes; z runs over all nodes for which
/// both are inside the grid. The state must vanish (< 1e-12) at both ends.
inline WignerGrid wigner_quadrature(const WaveFunctionGrid& state, const Grid1D& x_axis, const Grid1D& p_axis)
{
    const Grid1D& g = state.grid;
    const double h = g.spacing();
    const std::size_t count = g.count();
    if (std::max(std::abs(state.values.front()), std::abs(state.values.back())) >= 1e-12)
        throw coverage_error("wigner_quadrature: state does not vanish at the grid ends [" +
                             std::to_string(g.x_min()) + ", " + std::to_string(g.x_max()) + "]");

    WignerGrid out(x_axis, p_axis);
    std::vector<complex> prod;
    for (std::size_t j = 0; j < x_axis.count(); ++j) {
        const double x = x_axis[j];
        // 2x in units of h, measured from x_min: u_i + u_m = 2x with m = twice - i.
        const double twice_f = 2.0 * (x - g.x_min()) / h;
        const double twice_r = std::round(twice_f);
        if (std::abs(twice_f - twice_r) > 1e-6 || twice_r < 0.0 || twice_r > 2.0 * static_cast<double>(count - 1))
            throw coverage_error("wigner_quadrature: x = " + std::to_string(x) +
                                 " is not on the half-step lattice of the state grid");
        const auto twice = static_cast<std::size_t>(twice_r);
        const std::size_t lo = twice >= count - 1 ? twice - (count - 1) : 0;
        const std::size_t hi = std::min(twice, count - 1);
        const std::size_t m = hi - lo + 1;

        // Integrate over u = x + z: conj(psi(u)) psi(2x - u) e^{2ip(u - x)}.
        prod.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t a = lo + i;
            prod[i] = std::conj(state.values[a]) * state.values[twice - a] * detail::quadrature_weight(i, m);
        }
        const double u0 = g.x_min() + h * static_cast<double>(lo) - x;
        for (std::size_t k = 0; k < p_axis.count(); ++k) {
            const double p = p_axis[k];
            if (m < 2) {
                out.at(j, k) = 0.0;
                continue;
            }
            const complex step = std::polar(1.0, 2.0 * p * h);
            complex phase = std::polar(1.0, 2.0 * p * u0);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                acc += (prod[i] * phase).real();
                phase *= step;
            }
            out.at(j, k) = acc * h / std::numbers::pi;
        }
    }
    return out;
}

/// Inputs of the generating-function evaluation that do not depend on (x, p).
struct MehlerContext {
    unsigned n = 0;
    double delta = 0.0;        ///< y_m - x0
    double normalization = 1.0; ///< N_n, coefficient n of e^{rho D^2/2}/sqrt(1-rho)
    double y_m = 0.0;
    double p0 = 0.0;
};

inline MehlerContext mehler_context(const GateParams& params, const CoherentParams& input)
{
    const double delta = params.y_m - input.x0;
    const auto norm_series = series_mul(series_inv_sqrt_one_plus(-1, params.n),
                                        series_exp(series_monomial(0.5 * delta * delta, 1, params.n)));
    return {params.n, delta, norm_series[params.n], params.y_m, input.p0};
}

/// Coefficient n of (1+rho)^{-1/2} exp{2 rho xt^2/(1+rho) + rho pt^2/2}.
inline double mehler_coefficient(unsigned n, double xt, double pt)
{
    if (n == 0)
        return 1.0;
    PowerSeries exponent = series_rho_over_one_plus(n) * (2.0 * xt * xt);
    exponent[1] += 0.5 * pt * pt;
    return series_mul(series_inv_sqrt_one_plus(1, n), series_exp(exponent))[n];
}

/// W_n at one phase-space point.
inline double wigner_mehler_point(const MehlerContext& ctx, double x, double p)
{
    const double xt = x - ctx.y_m;
    const double pt = p - ctx.p0;
    const double s = xt + 0.5 * ctx.delta;
    const double w0 = std::exp(-2.0 * s * s - 0.5 * pt * pt) / std::numbers::pi;
    return w0 * mehler_coefficient(ctx.n, xt, pt) / ctx.normalization;
}

/// Wigner function of exact_output for coherent input, from generating functions.
inline WignerGrid wigner_mehler(const GateParams& params, const CoherentParams& input, const Grid1D& x_axis,
                                const Grid1D& p_axis)
{
    const MehlerContext ctx = mehler_context(params, input);
    if (!(ctx.normalization > 0.0))
        throw numerical_error("wigner_mehler: non-positive normalization");
    WignerGrid out(x_axis, p_axis);
    for (std::size_t j = 0; j < x_axis.count(); ++j)
        for (std::size_t k = 0; k < p_axis.count(); ++k)
            out.at(j, k) = wigner_mehler_point(ctx, x_axis[j], p_axis[k]);
    return out;
}

/// State grid for oracle evaluations covering x_axis plus room for both
/// the gate factor and the coherent input to decay.
inline Grid1D oracle_grid_for(const GateParams& params, const CoherentParams& input, const Grid1D& x_axis)
{
    const double lo = std::min({x_axis.x_min(), input.x0, params.y_m});
    const double hi = std::max({x_axis.x_max(), input.x0, params.y_m});
    const double margin = 10.0 + params.radius();
    return oracle_state_grid(x_axis, std::max(x_axis.x_min() - lo, hi - x_axis.x_max()) + margin);
}

/// Exact output sampled on an oracle grid, then transformed by quadrature.
inline WignerGrid wigner_exact_quadrature(const GateParams& params, const CoherentParams& input,
                                          const Grid1D& x_axis, const Grid1D& p_axis)
{
    const Grid1D grid = oracle_grid_for(params, input, x_axis);
    const auto out = exact_output(params, coherent_wavefunction(input, grid));
    return wigner_quadrature(out.state, x_axis, p_axis);
}

/// Wigner map of an assembled reference cat.
inline WignerGrid wigner_cat_reference(const CatSuperposition& cat, const Grid1D& x_axis, const Grid1D& p_axis)
{
    const auto plus = CoherentParams::from_alpha(cat.alpha_plus);
    const auto minus = CoherentParams::from_alpha(cat.alpha_minus);
    const double lo = std::min({x_axis.x_min(), plus.x0, minus.x0});
    const double hi = std::max({x_axis.x_max(), plus.x0, minus.x0});
    const double margin = 10.0;
    const Grid1D grid = oracle_state_grid(x_axis, std::max(x_axis.x_min() - lo, hi - x_axis.x_max()) + margin);
    return wigner_quadrature(assemble_cat(cat, grid), x_axis, p_axis);
}

} // namespace catgate
