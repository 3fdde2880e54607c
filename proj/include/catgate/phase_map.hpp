#pragma once

// Semiclassical picture of the gate: the ancilla resource circle and the
// two-branch momentum kick (x, p) -> (x, p +- sqrt(2n+1 - (y_m - x)^2)).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "catgate/error.hpp"
#include "catgate/gate.hpp"

namespace catgate {

struct PhasePoint {
    double q = 0.0;
    double p = 0.0;
    friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// Images of one input point: none, one (tangency) or two (upper first).
struct BranchImage {
    int branch_count = 0;
    std::vector<PhasePoint> images;
};

/// q_a^2 + (p_a - shift)^2 = 2n+1.
struct ResourceCircle {
    PhasePoint center;
    double radius = 1.0;
};

inline ResourceCircle resource_circle(unsigned n, double shift)
{
    return {{0.0, shift}, std::sqrt(2.0 * n + 1.0)};
}

inline constexpr double tangency_tolerance = 1e-12;

inline BranchImage map_point(const GateParams& params, const PhasePoint& pt)
{
    const double offset = params.y_m - pt.q;
    const double gap = 2.0 * params.n + 1.0 - offset * offset;
    if (std::abs(gap) <= tangency_tolerance)
        return {1, {pt}};
    if (gap < 0.0)
        return {0, {}};
    const double kick = std::sqrt(gap);
    return {2, {{pt.q, pt.p + kick}, {pt.q, pt.p - kick}}};
}

/// Mapped samples of a disk, split by branch.
struct DiskImage {
    std::vector<PhasePoint> upper;
    std::vector<PhasePoint> lower;
    std::size_t dropped = 0;
};

/// Disk samples: the center, concentric interior rings, and a boundary
/// polyline of `samples` points. Ring k of R has about samples*k/R points.
inline std::vector<PhasePoint> sample_disk(const PhasePoint& center, double radius, std::size_t samples)
{
    if (!(radius > 0.0))
        throw contract_error("sample_disk: radius must be positive");
    if (samples < 8)
        throw contract_error("sample_disk: need at least 8 samples");
    const std::size_t rings = std::max<std::size_t>(1, samples / 8);
    std::vector<PhasePoint> pts{center};
    for (std::size_t k = 1; k <= rings; ++k) {
        const double r = radius * static_cast<double>(k) / static_cast<double>(rings);
        const std::size_t m = std::max<std::size_t>(8, samples * k / rings);
        for (std::size_t i = 0; i < m; ++i) {
            const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
            pts.push_back({center.q + r * std::cos(a), center.p + r * std::sin(a)});
        }
    }
    return pts;
}

inline DiskImage map_disk(const GateParams& params, const PhasePoint& center, double radius, std::size_t samples)
{
    DiskImage out;
    for (const auto& pt : sample_disk(center, radius, samples)) {
        const auto img = map_point(params, pt);
        switch (img.branch_count) {
        case 0:
            ++out.dropped;
            break;
        case 1:
            out.upper.push_back(img.images[0]);
            out.lower.push_back(img.images[0]);
            break;
        default:
            out.upper.push_back(img.images[0]);
            out.lower.push_back(img.images[1]);
        }
    }
    return out;
}

} // namespace catgate
