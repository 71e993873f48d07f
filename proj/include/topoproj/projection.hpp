#pragma once

#include "topoproj/calculus.hpp"
#include "topoproj/dual.hpp"
#include "topoproj/grid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace topoproj {

enum class ProjectionMethod { Tanh, SSP1, SSP2 };

inline const char* to_string(ProjectionMethod m) {
    switch (m) {
        case ProjectionMethod::Tanh: return "tanh";
        case ProjectionMethod::SSP1: return "ssp1";
        default: return "ssp2";
    }
}

inline ProjectionMethod projection_method_from_string(const std::string& s) {
    if (s == "tanh") return ProjectionMethod::Tanh;
    if (s == "ssp1") return ProjectionMethod::SSP1;
    if (s == "ssp2") return ProjectionMethod::SSP2;
    throw std::invalid_argument("unknown projection method: " + s);
}

/// Steepness beta (infinity representable), level set eta, smoothing radius
/// r_hat in physical length (guidance: 0.5 * dx), and the operator choice.
struct ProjectionConfig {
    double beta = std::numeric_limits<double>::infinity();
    double eta = 0.5;
    double r_hat = 0.5;
    ProjectionMethod method = ProjectionMethod::SSP2;

    bool infinite_beta() const { return std::isinf(beta); }

    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("ProjectionConfig: beta must be > 0");
        if (!(eta > 0.0 && eta < 1.0))
            throw std::invalid_argument("ProjectionConfig: eta must lie in (0,1)");
        if (!(r_hat > 0.0)) throw std::invalid_argument("ProjectionConfig: r_hat must be > 0");
    }

    void validate_against(const GridSpec& g) const {
        validate();
        if (r_hat > g.dx + 1e-12 * g.dx)
            throw std::invalid_argument("ProjectionConfig: r_hat must not exceed the pixel size");
    }
};

/// Quintic smoothing polynomial: 1 for s <= -1, 0 for s >= 1, and
/// 1/2 - (15/16)s + (5/8)s^3 - (3/16)s^5 in between. C^2 across the seams.
template <typename T>
T smooth_step(const T& s) {
    const double sv = value_of(s);
    if (sv <= -1.0) return T(1.0);
    if (sv >= 1.0) return T(0.0);
    const T s2 = s * s;
    return 0.5 + s * (-15.0 / 16.0 + s2 * (5.0 / 8.0 + s2 * (-3.0 / 16.0)));
}

inline double smooth_step_prime(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double t = 1.0 - s * s;
    return -15.0 / 16.0 * t * t;
}

inline double smooth_step_second(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return 15.0 / 4.0 * s * (1.0 - s * s);
}

inline double heaviside(double s) { return s > 0.0 ? 1.0 : (s < 0.0 ? 0.0 : 0.5); }

namespace detail {

template <typename T>
T tanh_project_impl(const T& rho_tilde, double beta, double eta) {
    const double a = std::tanh(beta * eta);
    const double den = a + std::tanh(beta * (1.0 - eta));
    return (a + tanh(beta * (rho_tilde - eta))) / den;
}

}  // namespace detail

/// Pointwise tanh projection at finite beta. The beta = infinity limit is the
/// Heaviside H(rho - eta); callers must take that branch themselves.
inline double tanh_project(double rho_tilde, const ProjectionConfig& cfg) {
    if (cfg.infinite_beta())
        throw std::domain_error("tanh_project: beta is infinite, use the Heaviside limit");
    return detail::tanh_project_impl(rho_tilde, cfg.beta, cfg.eta);
}

enum class DistanceVariant { FirstOrder, SecondOrder };

/// Normalized approximate signed distance d/R per pixel; positive in void,
/// negative in solid. Infinities mark plateaus (zero denominator) and are a
/// defined state: the projection branches on |d_hat| before any arithmetic.
struct SignedDistanceField {
    GridSpec spec;
    std::vector<double> d_hat;
    DistanceVariant variant = DistanceVariant::FirstOrder;
};

namespace detail {

// Squared SSP denominator: |grad|^2, plus r_hat^2 ||H||_F^2 for SSP2. The
// Frobenius norm counts the off-diagonal entry twice (full symmetric matrix).
template <typename T>
T denom_squared(const T& gx, const T& gy, const T& hxx, const T& hxy, const T& hyy,
                double r_hat, ProjectionMethod method) {
    T n2 = gx * gx + gy * gy;
    if (method == ProjectionMethod::SSP2)
        n2 = n2 + (r_hat * r_hat) * (hxx * hxx + 2.0 * (hxy * hxy) + hyy * hyy);
    return n2;
}

inline double dhat_scalar(const PixelJet& pj, const ProjectionConfig& cfg, ProjectionMethod method) {
    const double n2 = denom_squared(pj.gx, pj.gy, pj.hxx, pj.hxy, pj.hyy, cfg.r_hat, method);
    const double u = cfg.eta - pj.v;
    if (n2 <= 0.0) {
        if (u == 0.0) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), u);
    }
    return u / (std::sqrt(n2) * cfg.r_hat);
}

// Full projection kernel over a scalar type (double or Dual). Branches are
// decided on values; the dual carries analytic partials through the branch
// taken.
template <typename T>
T project_pixel(const T& v, const T& gx, const T& gy, const T& hxx, const T& hxy, const T& hyy,
                const ProjectionConfig& cfg) {
    const double eta = cfg.eta;
    if (cfg.method == ProjectionMethod::Tanh) {
        if (cfg.infinite_beta()) return T(heaviside(value_of(v) - eta));
        return tanh_project_impl(v, cfg.beta, eta);
    }
    const T n2 = denom_squared(gx, gy, hxx, hxy, hyy, cfg.r_hat, cfg.method);
    const T u = eta - v;
    if (value_of(n2) <= 0.0) {
        // Exact plateau: probes collapse onto rho itself.
        if (value_of(u) == 0.0) {
            if (cfg.infinite_beta()) return T(0.5);
            return tanh_project_impl(v, cfg.beta, eta);
        }
        if (cfg.infinite_beta()) return T(heaviside(value_of(u)));
        return tanh_project_impl(v, cfg.beta, eta);
    }
    const T norm = sqrt(n2);
    const T dhat = u / (norm * cfg.r_hat);
    const double dh = value_of(dhat);
    if (cfg.infinite_beta()) {
        if (std::abs(dh) <= 1.0) return smooth_step(dhat);
        return T(heaviside(-dh));
    }
    if (std::abs(dh) < 1.0) {
        const T w = smooth_step(dhat);
        const T rho_plus = v + cfg.r_hat * smooth_step(-dhat) * norm;
        const T rho_minus = v - cfg.r_hat * w * norm;
        return (1.0 - w) * tanh_project_impl(rho_minus, cfg.beta, eta) +
               w * tanh_project_impl(rho_plus, cfg.beta, eta);
    }
    return tanh_project_impl(v, cfg.beta, eta);
}

}  // namespace detail

/// First-order normalized signed distance (eta - rho) / (||grad|| * R).
inline SignedDistanceField distance_first(const JetField& j, const ProjectionConfig& cfg) {
    cfg.validate();
    SignedDistanceField out{j.spec, std::vector<double>(j.spec.npixels()), DistanceVariant::FirstOrder};
    for (int i = 0; i < j.spec.npixels(); ++i) {
        PixelJet pj{j.value[i], j.grad_x[i], j.grad_y[i], 0.0, 0.0, 0.0};
        out.d_hat[i] = detail::dhat_scalar(pj, cfg, ProjectionMethod::SSP1);
    }
    return out;
}

/// Hessian-regularized distance: the denominator gains r_hat^2 ||H||_F^2,
/// which keeps it finite wherever either the gradient or the Hessian is
/// nonzero.
inline SignedDistanceField distance_second(const JetField& j, const ProjectionConfig& cfg) {
    cfg.validate();
    SignedDistanceField out{j.spec, std::vector<double>(j.spec.npixels()), DistanceVariant::SecondOrder};
    for (int i = 0; i < j.spec.npixels(); ++i) {
        PixelJet pj{j.value[i], j.grad_x[i], j.grad_y[i], j.hess_xx[i], j.hess_xy[i], j.hess_yy[i]};
        out.d_hat[i] = detail::dhat_scalar(pj, cfg, ProjectionMethod::SSP2);
    }
    return out;
}

/// Probe densities rho^-/rho^+ for a pixel inside the smoothing band.
inline std::pair<double, double> rho_plus_minus(const PixelJet& pj, double d_hat,
                                                const ProjectionConfig& cfg) {
    if (!(std::abs(d_hat) < 1.0))
        throw std::domain_error("rho_plus_minus: |d_hat| must be < 1 (smoothing band only)");
    const double n2 =
        detail::denom_squared(pj.gx, pj.gy, pj.hxx, pj.hxy, pj.hyy, cfg.r_hat, cfg.method);
    const double norm = std::sqrt(n2);
    const double plus = pj.v + cfg.r_hat * smooth_step(-d_hat) * norm;
    const double minus = pj.v - cfg.r_hat * smooth_step(d_hat) * norm;
    return {minus, plus};
}

/// Projects a jet field (used directly by the synthetic studies, whose jets
/// are analytic rather than stencil-computed).
inline ScalarField2D project_jet(const JetField& j, const ProjectionConfig& cfg) {
    cfg.validate_against(j.spec);
    ScalarField2D out(j.spec);
    for (int i = 0; i < j.spec.npixels(); ++i) {
        out.values[i] = detail::project_pixel<double>(j.value[i], j.grad_x[i], j.grad_y[i],
                                                      j.hess_xx[i], j.hess_xy[i], j.hess_yy[i], cfg);
    }
    return out;
}

/// Projects a filtered field. SSP variants derive the jet internally.
inline ScalarField2D project(const ScalarField2D& rho_tilde, const ProjectionConfig& cfg) {
    cfg.validate_against(rho_tilde.spec);
    if (cfg.method == ProjectionMethod::Tanh) {
        ScalarField2D out(rho_tilde.spec);
        for (size_t i = 0; i < rho_tilde.values.size(); ++i) {
            out.values[i] = cfg.infinite_beta()
                                ? heaviside(rho_tilde.values[i] - cfg.eta)
                                : detail::tanh_project_impl(rho_tilde.values[i], cfg.beta, cfg.eta);
        }
        return out;
    }
    return project_jet(jet(rho_tilde), cfg);
}

/// Projection value and its six partials with respect to the pixel jet.
struct PixelProjection {
    double value;
    PixelJet partial;
};

inline PixelProjection project_pixel_with_grad(const PixelJet& pj, const ProjectionConfig& cfg) {
    using D = Dual<6>;
    const D r = detail::project_pixel<D>(D::seeded(pj.v, 0), D::seeded(pj.gx, 1), D::seeded(pj.gy, 2),
                                         D::seeded(pj.hxx, 3), D::seeded(pj.hxy, 4),
                                         D::seeded(pj.hyy, 5), cfg);
    return {r.v, {r.d[0], r.d[1], r.d[2], r.d[3], r.d[4], r.d[5]}};
}

/// Chain rule through filter -> jet -> projection: given dL/drho_hat, returns
/// dL/drho. At beta = infinity the derivative is exactly zero on the binary
/// plateaus outside the band.
inline ScalarField2D project_vjp(const ScalarField2D& rho, const ConicKernel& kernel,
                                 const ProjectionConfig& cfg, const ScalarField2D& cotangent) {
    cfg.validate_against(rho.spec);
    const ScalarField2D rho_tilde = filter(rho, kernel);
    if (cfg.method == ProjectionMethod::Tanh) {
        ScalarField2D vbar(rho.spec);
        if (!cfg.infinite_beta()) {
            const double a = std::tanh(cfg.beta * cfg.eta);
            const double den = a + std::tanh(cfg.beta * (1.0 - cfg.eta));
            for (size_t i = 0; i < vbar.values.size(); ++i) {
                const double t = std::tanh(cfg.beta * (rho_tilde.values[i] - cfg.eta));
                vbar.values[i] = cotangent.values[i] * cfg.beta * (1.0 - t * t) / den;
            }
        }
        return filter_transpose(vbar, kernel);
    }
    const JetField j = jet(rho_tilde);
    JetField cot(rho.spec);
    for (int i = 0; i < rho.spec.npixels(); ++i) {
        const double c = cotangent.values[i];
        if (c == 0.0) continue;
        const PixelProjection p = project_pixel_with_grad(pixel_jet_at(j, i), cfg);
        cot.value[i] = c * p.partial.v;
        cot.grad_x[i] = c * p.partial.gx;
        cot.grad_y[i] = c * p.partial.gy;
        cot.hess_xx[i] = c * p.partial.hxx;
        cot.hess_xy[i] = c * p.partial.hxy;
        cot.hess_yy[i] = c * p.partial.hyy;
    }
    return filter_transpose(jet_transpose(cot), kernel);
}

/// Pixels strictly inside (lo, hi); the quasi-binary "gray" count.
inline int count_gray(const ScalarField2D& f, double lo = 0.001, double hi = 0.999) {
    int n = 0;
    for (double v : f.values)
        if (v > lo && v < hi) ++n;
    return n;
}

}  // namespace topoproj
