#pragma once

#include <array>
#include <cmath>

namespace topoproj {

/// Forward-mode scalar carrying N partial derivatives. Only the operations
/// the projection kernels need are implemented.
template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}

    static Dual seeded(double value, int slot) {
        Dual x(value);
        x.d[slot] = 1.0;
        return x;
    }

    Dual operator-() const {
        Dual r(-v);
        for (int i = 0; i < N; ++i) r.d[i] = -d[i];
        return r;
    }
    friend Dual operator+(const Dual& a, const Dual& b) {
        Dual r(a.v + b.v);
        for (int i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
        return r;
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        Dual r(a.v - b.v);
        for (int i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
        return r;
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual r(a.v * b.v);
        for (int i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
        return r;
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        Dual r(a.v / b.v);
        const double inv2 = 1.0 / (b.v * b.v);
        for (int i = 0; i < N; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv2;
        return r;
    }
    friend Dual operator*(double a, const Dual& b) { return Dual(a) * b; }
    friend Dual operator*(const Dual& a, double b) { return a * Dual(b); }
    friend Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
    friend Dual operator+(const Dual& a, double b) { return a + Dual(b); }
    friend Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
    friend Dual operator-(const Dual& a, double b) { return a - Dual(b); }
    friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
    friend Dual operator/(const Dual& a, double b) { return a / Dual(b); }

    friend Dual sqrt(const Dual& a) {
        Dual r(std::sqrt(a.v));
        const double s = 0.5 / r.v;
        for (int i = 0; i < N; ++i) r.d[i] = s * a.d[i];
        return r;
    }
    friend Dual tanh(const Dual& a) {
        Dual r(std::tanh(a.v));
        const double s = 1.0 - r.v * r.v;
        for (int i = 0; i < N; ++i) r.d[i] = s * a.d[i];
        return r;
    }
};

inline double value_of(double x) { return x; }
template <int N>
double value_of(const Dual<N>& x) {
    return x.v;
}

}  // namespace topoproj
