#pragma once

// Special functions, grid quadrature and truncated power series.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "catgate/error.hpp"

namespace catgate {

/// Uniform sampling of [x_min, x_max] with `count` points, both ends included.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t count)
        : x_min_(x_min), x_max_(x_max), count_(count)
    {
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max))
            throw contract_error("Grid1D: need finite x_min < x_max, got [" + std::to_string(x_min) + ", " +
                                 std::to_string(x_max) + "]");
        if (count < 2)
            throw contract_error("Grid1D: count must be >= 2, got " + std::to_string(count));
    }

    /// Grid with the given spacing starting at x_min; x_max is x_min + (count-1)*spacing.
    static Grid1D with_spacing(double x_min, double spacing, std::size_t count)
    {
        return Grid1D(x_min, x_min + spacing * static_cast<double>(count - 1), count);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t count() const noexcept { return count_; }
    double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(count_ - 1); }
    double operator[](std::size_t i) const noexcept
    {
        // Lower half counted from x_min, upper half from x_max: both ends are
        // exact and a grid with x_min = -x_max is exactly mirror symmetric.
        const std::size_t back = count_ - 1 - i;
        return i <= back ? x_min_ + spacing() * static_cast<double>(i) : x_max_ - spacing() * static_cast<double>(back);
    }
    bool covers(double lo, double hi) const noexcept { return x_min_ <= lo && hi <= x_max_; }

    std::vector<double> nodes() const
    {
        std::vector<double> out(count_);
        for (std::size_t i = 0; i < count_; ++i)
            out[i] = (*this)[i];
        return out;
    }

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t count_;
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
/// Overflows for large n*x^2; use hermite_function for wavefunction work.
inline double hermite(unsigned n, double x) noexcept
{
    double prev = 1.0;
    if (n == 0)
        return prev;
    double cur = 2.0 * x;
    for (unsigned k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Normalized Hermite function psi_n(x) = H_n(x) exp(-x^2/2) / (pi^{1/4} sqrt(2^n n!)).
///
/// Runs the recurrence on the normalized functions themselves,
///   h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1},
/// so no factorial or power of two is ever formed and n in the hundreds is safe.
inline double hermite_function(unsigned n, double x) noexcept
{
    double prev = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0)
        return prev;
    double cur = std::numbers::sqrt2 * x * prev;
    for (unsigned k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double next = x * std::sqrt(2.0 / (kk + 1.0)) * cur - std::sqrt(kk / (kk + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

// Composite Simpson weights (in units of h) for an odd number of nodes,
// composite trapezoid for an even number.
inline double quadrature_weight(std::size_t i, std::size_t count) noexcept
{
    if (count % 2 == 0)
        return (i == 0 || i + 1 == count) ? 0.5 : 1.0;
    if (i == 0 || i + 1 == count)
        return 1.0 / 3.0;
    return (i % 2 == 1) ? 4.0 / 3.0 : 2.0 / 3.0;
}

} // namespace detail

/// Integral of uniformly spaced samples with step h: Simpson for an odd
/// sample count, trapezoid otherwise.
template <typename T>
T integrate_uniform(std::span<const T> samples, double h)
{
    const std::size_t count = samples.size();
    if (count < 2)
        throw contract_error("integrate: need at least 2 samples, got " + std::to_string(count));
    T acc{};
    for (std::size_t i = 0; i < count; ++i)
        acc += samples[i] * detail::quadrature_weight(i, count);
    return acc * h;
}

/// Integral over the grid of the sampled function.
template <typename T>
T integrate(std::span<const T> samples, const Grid1D& grid)
{
    if (samples.size() != grid.count())
        throw contract_error("integrate: " + std::to_string(samples.size()) + " samples for a grid of " +
                             std::to_string(grid.count()) + " points");
    return integrate_uniform(samples, grid.spacing());
}

template <typename T>
T integrate(const std::vector<T>& samples, const Grid1D& grid)
{
    return integrate(std::span<const T>(samples), grid);
}

/// Integral of f over [a, b] by composite Simpson, starting from `nodes`
/// points and doubling the panel count until two successive estimates
/// differ by less than `tol` (absolute).
template <typename F>
double integrate_refined(F&& f, double a, double b, double tol = 1e-9, std::size_t nodes = 201,
                         int max_doublings = 12)
{
    if (!(a < b))
        throw contract_error("integrate_refined: need a < b");
    if (nodes % 2 == 0)
        ++nodes;
    std::size_t panels = nodes - 1;
    double h = (b - a) / static_cast<double>(panels);

    // Keep the running sums split by Simpson weight so each doubling only
    // evaluates the new midpoints.
    double ends = f(a) + f(b);
    double evens = 0.0;
    double odds = 0.0;
    for (std::size_t i = 1; i < panels; ++i)
        (i % 2 == 1 ? odds : evens) += f(a + h * static_cast<double>(i));
    double estimate = h / 3.0 * (ends + 4.0 * odds + 2.0 * evens);

    for (int d = 0; d < max_doublings; ++d) {
        evens += odds;
        odds = 0.0;
        panels *= 2;
        h *= 0.5;
        for (std::size_t i = 1; i < panels; i += 2)
            odds += f(a + h * static_cast<double>(i));
        const double refined = h / 3.0 * (ends + 4.0 * odds + 2.0 * evens);
        const double change = std::abs(refined - estimate);
        estimate = refined;
        if (change < tol)
            return estimate;
    }
    throw numerical_error("integrate_refined: no convergence to " + std::to_string(tol) + " on [" +
                          std::to_string(a) + ", " + std::to_string(b) + "]");
}

/// Truncated power series c_0 + c_1 rho + ... + c_K rho^K with real coefficients.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1, 0.0) {}

    explicit PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty())
            throw contract_error("PowerSeries: need at least one coefficient");
        for (double c : coeffs_)
            if (!std::isfinite(c))
                throw contract_error("PowerSeries: non-finite coefficient");
    }

    static PowerSeries zero(std::size_t order) { return PowerSeries(std::vector<double>(order + 1, 0.0)); }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    double operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0.0; }
    double& operator[](std::size_t k) noexcept { return coeffs_[k]; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    PowerSeries& operator+=(const PowerSeries& rhs)
    {
        if (rhs.order() > order())
            coeffs_.resize(rhs.coeffs_.size(), 0.0);
        for (std::size_t k = 0; k <= rhs.order(); ++k)
            coeffs_[k] += rhs.coeffs_[k];
        return *this;
    }

    PowerSeries& operator*=(double s) noexcept
    {
        for (double& c : coeffs_)
            c *= s;
        return *this;
    }

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator*(PowerSeries a, double s) { return a *= s; }
    friend PowerSeries operator*(double s, PowerSeries a) { return a *= s; }
    friend PowerSeries operator-(PowerSeries a) { return a *= -1.0; }

private:
    std::vector<double> coeffs_;
};

/// Cauchy product truncated at the lower of the two orders.
inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b)
{
    const std::size_t order = std::min(a.order(), b.order());
    auto out = PowerSeries::zero(order);
    for (std::size_t k = 0; k <= order; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j)
            acc += a[j] * b[k - j];
        out[k] = acc;
    }
    return out;
}

/// exp(a) for a series with zero constant term, by
/// c_k = (1/k) sum_{j=1..k} j a_j c_{k-j}.
inline PowerSeries series_exp(const PowerSeries& a)
{
    if (a[0] != 0.0)
        throw contract_error("series_exp: constant term must be zero, got " + std::to_string(a[0]));
    const std::size_t order = a.order();
    auto out = PowerSeries::zero(order);
    out[0] = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            acc += static_cast<double>(j) * a[j] * out[k - j];
        out[k] = acc / static_cast<double>(k);
    }
    return out;
}

/// (1 + sign*rho)^{-1/2} to the given order; sign is +1 or -1.
inline PowerSeries series_inv_sqrt_one_plus(int sign, std::size_t order)
{
    if (sign != 1 && sign != -1)
        throw contract_error("series_inv_sqrt_one_plus: sign must be +1 or -1");
    auto out = PowerSeries::zero(order);
    out[0] = 1.0;
    // binom(-1/2, k) = binom(-1/2, k-1) * (-1/2 - (k-1)) / k
    for (std::size_t k = 1; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        out[k] = out[k - 1] * (0.5 - kk) / kk * static_cast<double>(sign);
    }
    return out;
}

/// rho / (1 + rho) = rho - rho^2 + rho^3 - ... to the given order.
inline PowerSeries series_rho_over_one_plus(std::size_t order)
{
    auto out = PowerSeries::zero(order);
    for (std::size_t k = 1; k <= order; ++k)
        out[k] = (k % 2 == 1) ? 1.0 : -1.0;
    return out;
}

/// The monomial c * rho^k, truncated at `order` (zero if k > order).
inline PowerSeries series_monomial(double c, std::size_t k, std::size_t order)
{
    auto out = PowerSeries::zero(order);
    if (k <= order)
        out[k] = c;
    return out;
}

} // namespace catgate
