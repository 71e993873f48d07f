#pragma once

#include "topoproj/grid.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace topoproj {

/// Per-pixel value / gradient / Hessian bundle of a filtered field. grad is
/// in 1/length, hess in 1/length^2 (physical units via spec.dx).
struct JetField {
    GridSpec spec;
    std::vector<double> value;
    std::vector<double> grad_x, grad_y;
    std::vector<double> hess_xx, hess_xy, hess_yy;

    JetField() = default;
    explicit JetField(const GridSpec& s)
        : spec(s),
          value(s.npixels(), 0.0),
          grad_x(s.npixels(), 0.0),
          grad_y(s.npixels(), 0.0),
          hess_xx(s.npixels(), 0.0),
          hess_xy(s.npixels(), 0.0),
          hess_yy(s.npixels(), 0.0) {}

    size_t index(int ix, int iy) const { return static_cast<size_t>(iy) * spec.nx + ix; }
};

/// Value/gradient/Hessian of one pixel.
struct PixelJet {
    double v, gx, gy, hxx, hxy, hyy;
};

inline PixelJet pixel_jet_at(const JetField& j, size_t i) {
    return {j.value[i], j.grad_x[i], j.grad_y[i], j.hess_xx[i], j.hess_xy[i], j.hess_yy[i]};
}

inline PixelJet pixel_jet(const JetField& j, int ix, int iy) {
    return pixel_jet_at(j, j.index(ix, iy));
}

namespace detail {

struct StencilRow {
    int first;        // leftmost node index (may be out of range for periodic)
    int len;
    const double* c;  // unit-spacing coefficients, sum exactly annihilates constants
};

// Fourth-order centered stencils; the derivatives of the bicubic interpolant
// at grid nodes.
inline constexpr std::array<double, 5> kD1Center{1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
inline constexpr std::array<double, 5> kD2Center{-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};

// Third-order one-sided rows for clamped edges.
inline constexpr std::array<double, 4> kD1Edge0{-11.0 / 6, 3.0, -3.0 / 2, 1.0 / 3};
inline constexpr std::array<double, 4> kD1Edge1{-1.0 / 3, -1.0 / 2, 1.0, -1.0 / 6};
inline constexpr std::array<double, 4> kD1EdgeN2{1.0 / 6, -1.0, 1.0 / 2, 1.0 / 3};
inline constexpr std::array<double, 4> kD1EdgeN1{-1.0 / 3, 3.0 / 2, -3.0, 11.0 / 6};
inline constexpr std::array<double, 5> kD2Edge0{35.0 / 12, -26.0 / 3, 19.0 / 2, -14.0 / 3, 11.0 / 12};
inline constexpr std::array<double, 5> kD2Edge1{11.0 / 12, -5.0 / 3, 1.0 / 2, 1.0 / 3, -1.0 / 12};
inline constexpr std::array<double, 5> kD2EdgeN2{-1.0 / 12, 1.0 / 3, 1.0 / 2, -5.0 / 3, 11.0 / 12};
inline constexpr std::array<double, 5> kD2EdgeN1{11.0 / 12, -14.0 / 3, 19.0 / 2, -26.0 / 3, 35.0 / 12};

// Reduced-order rows for clamped lines shorter than 5 nodes.
inline constexpr std::array<double, 3> kD1Short0{-3.0 / 2, 2.0, -1.0 / 2};
inline constexpr std::array<double, 3> kD1ShortC{-1.0 / 2, 0.0, 1.0 / 2};
inline constexpr std::array<double, 3> kD1ShortN{1.0 / 2, -2.0, 3.0 / 2};
inline constexpr std::array<double, 3> kD2Short{1.0, -2.0, 1.0};

inline StencilRow deriv_row(int i, int n, int order, Boundary b) {
    if (b == Boundary::Periodic) {
        // Centered row everywhere; node indices wrap.
        if (order == 1) return {i - 2, 5, kD1Center.data()};
        return {i - 2, 5, kD2Center.data()};
    }
    if (n < 5) {
        if (order == 1) {
            if (i == 0) return {0, 3, kD1Short0.data()};
            if (i == n - 1) return {n - 3, 3, kD1ShortN.data()};
            return {i - 1, 3, kD1ShortC.data()};
        }
        if (i == 0) return {0, 3, kD2Short.data()};
        if (i == n - 1) return {n - 3, 3, kD2Short.data()};
        return {i - 1, 3, kD2Short.data()};
    }
    if (order == 1) {
        if (i == 0) return {0, 4, kD1Edge0.data()};
        if (i == 1) return {0, 4, kD1Edge1.data()};
        if (i == n - 2) return {n - 4, 4, kD1EdgeN2.data()};
        if (i == n - 1) return {n - 4, 4, kD1EdgeN1.data()};
        return {i - 2, 5, kD1Center.data()};
    }
    if (i == 0) return {0, 5, kD2Edge0.data()};
    if (i == 1) return {0, 5, kD2Edge1.data()};
    if (i == n - 2) return {n - 5, 5, kD2EdgeN2.data()};
    if (i == n - 1) return {n - 5, 5, kD2EdgeN1.data()};
    return {i - 2, 5, kD2Center.data()};
}

enum class Axis { X, Y };

// out = D in / h^order along the given axis. Evaluated in difference form
// sum c_j (f_j - f_i), which is exactly zero on constant lines.
inline void apply_derivative(const std::vector<double>& in, std::vector<double>& out,
                             const GridSpec& g, Axis axis, int order) {
    const int n = axis == Axis::X ? g.nx : g.ny;
    const int m = axis == Axis::X ? g.ny : g.nx;
    const int stride = axis == Axis::X ? 1 : g.nx;
    const int line_stride = axis == Axis::X ? g.nx : 1;
    double hinv = 1.0 / g.dx;
    if (order == 2) hinv *= hinv;
    for (int line = 0; line < m; ++line) {
        const size_t base = static_cast<size_t>(line) * line_stride;
        for (int i = 0; i < n; ++i) {
            const StencilRow row = deriv_row(i, n, order, g.boundary);
            const double fi = in[base + static_cast<size_t>(i) * stride];
            double acc = 0.0;
            for (int j = 0; j < row.len; ++j) {
                int node = row.first + j;
                if (g.boundary == Boundary::Periodic) node = wrap_index(node, n);
                acc += row.c[j] * (in[base + static_cast<size_t>(node) * stride] - fi);
            }
            out[base + static_cast<size_t>(i) * stride] = acc * hinv;
        }
    }
}

// accum += scale * D^T in / h^order. Scatter form of the same matrix.
inline void apply_derivative_transpose(const std::vector<double>& in, std::vector<double>& accum,
                                       const GridSpec& g, Axis axis, int order, double scale) {
    const int n = axis == Axis::X ? g.nx : g.ny;
    const int m = axis == Axis::X ? g.ny : g.nx;
    const int stride = axis == Axis::X ? 1 : g.nx;
    const int line_stride = axis == Axis::X ? g.nx : 1;
    double hinv = 1.0 / g.dx;
    if (order == 2) hinv *= hinv;
    const double s = scale * hinv;
    for (int line = 0; line < m; ++line) {
        const size_t base = static_cast<size_t>(line) * line_stride;
        for (int i = 0; i < n; ++i) {
            const StencilRow row = deriv_row(i, n, order, g.boundary);
            const double w = s * in[base + static_cast<size_t>(i) * stride];
            if (w == 0.0) continue;
            double csum = 0.0;
            for (int j = 0; j < row.len; ++j) {
                int node = row.first + j;
                if (g.boundary == Boundary::Periodic) node = wrap_index(node, n);
                accum[base + static_cast<size_t>(node) * stride] += row.c[j] * w;
                csum += row.c[j];
            }
            accum[base + static_cast<size_t>(i) * stride] -= csum * w;
        }
    }
}

}  // namespace detail

/// Value, gradient, and Hessian of the filtered field at pixel centers:
/// gradients from 4th-order centered differences, Hessian diagonal from
/// 4th-order second differences, mixed term as the tensor product of the
/// gradient stencils. Clamped edges fall back to one-sided 3rd-order rows.
inline JetField jet(const ScalarField2D& rho_tilde) {
    const GridSpec& g = rho_tilde.spec;
    g.validate();
    JetField out(g);
    out.value = rho_tilde.values;
    using detail::Axis;
    detail::apply_derivative(rho_tilde.values, out.grad_x, g, Axis::X, 1);
    detail::apply_derivative(rho_tilde.values, out.grad_y, g, Axis::Y, 1);
    detail::apply_derivative(rho_tilde.values, out.hess_xx, g, Axis::X, 2);
    detail::apply_derivative(rho_tilde.values, out.hess_yy, g, Axis::Y, 2);
    detail::apply_derivative(out.grad_x, out.hess_xy, g, Axis::Y, 1);
    return out;
}

/// Exact transpose of jet(): pushes cotangents of all six channels back to a
/// single field cotangent.
inline ScalarField2D jet_transpose(const JetField& cotangents) {
    const GridSpec& g = cotangents.spec;
    g.validate();
    ScalarField2D out(g);
    out.values = cotangents.value;  // value channel is the identity
    using detail::Axis;
    detail::apply_derivative_transpose(cotangents.grad_x, out.values, g, Axis::X, 1, 1.0);
    detail::apply_derivative_transpose(cotangents.grad_y, out.values, g, Axis::Y, 1, 1.0);
    detail::apply_derivative_transpose(cotangents.hess_xx, out.values, g, Axis::X, 2, 1.0);
    detail::apply_derivative_transpose(cotangents.hess_yy, out.values, g, Axis::Y, 2, 1.0);
    // hess_xy = D1y(D1x f), so its transpose is D1x^T(D1y^T(.)).
    std::vector<double> tmp(g.npixels(), 0.0);
    detail::apply_derivative_transpose(cotangents.hess_xy, tmp, g, Axis::Y, 1, 1.0);
    detail::apply_derivative_transpose(tmp, out.values, g, Axis::X, 1, 1.0);
    return out;
}

}  // namespace topoproj
