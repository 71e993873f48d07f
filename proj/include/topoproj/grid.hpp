#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace topoproj {

enum class Boundary { Periodic, Clamped };

inline const char* to_string(Boundary b) {
    return b == Boundary::Periodic ? "periodic" : "clamped";
}

inline Boundary boundary_from_string(const std::string& s) {
    if (s == "periodic") return Boundary::Periodic;
    if (s == "clamped") return Boundary::Clamped;
    throw std::invalid_argument("unknown boundary mode: " + s);
}

/// Uniform square-pixel grid. Coordinates are centered: pixel ix sits at
/// x = (ix - (nx-1)/2) * dx, so odd-sized grids have a pixel exactly at the
/// origin.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double dx = 1.0;
    Boundary boundary = Boundary::Periodic;

    void validate() const {
        if (nx < 3 || ny < 3)
            throw std::invalid_argument("GridSpec: nx and ny must be >= 3");
        if (!(dx > 0.0))
            throw std::invalid_argument("GridSpec: dx must be positive");
    }

    int npixels() const { return nx * ny; }
    double x(int ix) const { return (ix - 0.5 * (nx - 1)) * dx; }
    double y(int iy) const { return (iy - 0.5 * (ny - 1)) * dx; }

    bool operator==(const GridSpec&) const = default;
};

/// Real-valued quantity sampled at pixel centers, row-major (y outer, x inner).
struct ScalarField2D {
    GridSpec spec;
    std::vector<double> values;

    ScalarField2D() = default;
    explicit ScalarField2D(const GridSpec& s, double fill = 0.0)
        : spec(s), values(static_cast<size_t>(s.nx) * s.ny, fill) {
        spec.validate();
    }

    double& at(int ix, int iy) { return values[static_cast<size_t>(iy) * spec.nx + ix]; }
    double at(int ix, int iy) const { return values[static_cast<size_t>(iy) * spec.nx + ix]; }

    double min() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::min(m, v);
        return m;
    }
    double max() const {
        double m = values.empty() ? 0.0 : values[0];
        for (double v : values) m = std::max(m, v);
        return m;
    }
};

inline int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

/// Normalized conic (linear-hat) smoothing kernel, taps sampled at pixel
/// centers. radius_px is the support radius in pixels.
struct ConicKernel {
    double radius_px = 0.0;
    int reach = 0;                // max tap offset along either axis
    std::vector<double> taps;     // (2*reach+1)^2, unit sum

    double tap(int di, int dj) const {
        if (std::abs(di) > reach || std::abs(dj) > reach) return 0.0;
        return taps[static_cast<size_t>(dj + reach) * (2 * reach + 1) + (di + reach)];
    }
};

/// Builds taps w(i,j) ~ max(0, 1 - r/R) and normalizes to unit sum.
/// Radii below one pixel would collapse to the identity and are rejected.
inline ConicKernel make_conic_kernel(double radius_px) {
    if (!(radius_px >= 1.0))
        throw std::invalid_argument("make_conic_kernel: radius_px must be >= 1");
    ConicKernel k;
    k.radius_px = radius_px;
    k.reach = static_cast<int>(std::ceil(radius_px)) - 1;
    const int w = 2 * k.reach + 1;
    k.taps.assign(static_cast<size_t>(w) * w, 0.0);
    double sum = 0.0;
    for (int dj = -k.reach; dj <= k.reach; ++dj) {
        for (int di = -k.reach; di <= k.reach; ++di) {
            const double r = std::hypot(static_cast<double>(di), static_cast<double>(dj));
            const double t = std::max(0.0, 1.0 - r / radius_px);
            k.taps[static_cast<size_t>(dj + k.reach) * w + (di + k.reach)] = t;
            sum += t;
        }
    }
    for (double& t : k.taps) t /= sum;
    return k;
}

namespace detail {

// Sum of in-domain taps around (ix, iy); equals 1 for periodic grids.
inline double clamped_tap_sum(const ConicKernel& k, const GridSpec& g, int ix, int iy) {
    double s = 0.0;
    for (int dj = -k.reach; dj <= k.reach; ++dj) {
        const int jy = iy + dj;
        if (jy < 0 || jy >= g.ny) continue;
        for (int di = -k.reach; di <= k.reach; ++di) {
            const int jx = ix + di;
            if (jx < 0 || jx >= g.nx) continue;
            s += k.tap(di, dj);
        }
    }
    return s;
}

}  // namespace detail

/// Conic smoothing: periodic wraps, clamped renormalizes over in-domain taps
/// so constants are preserved at the boundary.
inline ScalarField2D filter(const ScalarField2D& rho, const ConicKernel& k) {
    const GridSpec& g = rho.spec;
    g.validate();
    ScalarField2D out(g);
    if (g.boundary == Boundary::Periodic) {
        for (int iy = 0; iy < g.ny; ++iy) {
            for (int ix = 0; ix < g.nx; ++ix) {
                double acc = 0.0;
                for (int dj = -k.reach; dj <= k.reach; ++dj) {
                    const int jy = wrap_index(iy + dj, g.ny);
                    for (int di = -k.reach; di <= k.reach; ++di) {
                        const int jx = wrap_index(ix + di, g.nx);
                        acc += k.tap(di, dj) * rho.at(jx, jy);
                    }
                }
                out.at(ix, iy) = acc;
            }
        }
    } else {
        for (int iy = 0; iy < g.ny; ++iy) {
            for (int ix = 0; ix < g.nx; ++ix) {
                double acc = 0.0;
                for (int dj = -k.reach; dj <= k.reach; ++dj) {
                    const int jy = iy + dj;
                    if (jy < 0 || jy >= g.ny) continue;
                    for (int di = -k.reach; di <= k.reach; ++di) {
                        const int jx = ix + di;
                        if (jx < 0 || jx >= g.nx) continue;
                        acc += k.tap(di, dj) * rho.at(jx, jy);
                    }
                }
                out.at(ix, iy) = acc / detail::clamped_tap_sum(k, g, ix, iy);
            }
        }
    }
    return out;
}

/// Exact transpose of filter(). Coincides with the forward map on periodic
/// grids (symmetric circulant); on clamped grids the per-row renormalization
/// makes the transpose a scatter with the source pixel's normalization.
inline ScalarField2D filter_transpose(const ScalarField2D& cotangent, const ConicKernel& k) {
    const GridSpec& g = cotangent.spec;
    g.validate();
    if (g.boundary == Boundary::Periodic) return filter(cotangent, k);
    ScalarField2D out(g);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const double c = cotangent.at(ix, iy) / detail::clamped_tap_sum(k, g, ix, iy);
            for (int dj = -k.reach; dj <= k.reach; ++dj) {
                const int jy = iy + dj;
                if (jy < 0 || jy >= g.ny) continue;
                for (int di = -k.reach; di <= k.reach; ++di) {
                    const int jx = ix + di;
                    if (jx < 0 || jx >= g.nx) continue;
                    out.at(jx, jy) += k.tap(di, dj) * c;
                }
            }
        }
    }
    return out;
}

}  // namespace topoproj
