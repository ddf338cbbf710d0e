#pragma once

// Test-only reference computations, independent of the library's own formulas.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "lfem/quadrature.hpp"

namespace oracle {

/// n-point Gauss-Legendre on [0,1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<long double>& x, std::vector<long double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0L);
    w.assign(static_cast<std::size_t>(n), 0.0L);
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < n; ++i) {
        long double t = std::cos(pi * (i + 0.75L) / (n + 0.5L));
        long double dp = 0.0L;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1.0L, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0L);
            const long double step = p1 / dp;
            t -= step;
            if (std::fabs(step) < 1e-19L) break;
        }
        x[static_cast<std::size_t>(i)] = 0.5L * (1.0L - t);
        w[static_cast<std::size_t>(i)] = 1.0L / ((1.0L - t * t) * dp * dp);
    }
}

/// Collapsed (Duffy) tensor Gauss rule on the triangle, exact for total degree 2n-2.
/// n = 6 gives degree 10. Weights sum to 1 like the library rules.
inline lfem::quadrature::TriangleRule collapsed_gauss_rule(int n = 6) {
    std::vector<long double> x, w;
    gauss_legendre(n, x, w);
    lfem::quadrature::TriangleRule rule;
    rule.degree = 2 * n - 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const long double u = x[static_cast<std::size_t>(i)];
            const long double v = x[static_cast<std::size_t>(j)] * (1.0L - u);
            rule.points.push_back({static_cast<double>(1.0L - u - v), static_cast<double>(u),
                                   static_cast<double>(v)});
            rule.weights.push_back(static_cast<double>(2.0L * w[static_cast<std::size_t>(i)] *
                                                       w[static_cast<std::size_t>(j)] * (1.0L - u)));
        }
    return rule;
}

/// Integral of x^a y^b over the reference triangle (0,0),(1,0),(0,1): a! b! / (a+b+2)!.
inline double monomial_integral(int a, int b) {
    return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

using Field2 = std::function<std::array<long double, 2>(long double, long double)>;

/// Fourth-order central difference of g at t with step d.
template <typename G>
long double central(const G& g, long double t, long double d) {
    return (-g(t + 2 * d) + 8 * g(t + d) - 8 * g(t - d) + g(t - 2 * d)) / (12 * d);
}

/// -div sigma(u) at (x1,x2) with sigma = lambda div(u) I + 2 mu eps(u), every derivative
/// taken by nested central differences in long double.
inline std::array<long double, 2> minus_div_sigma(const Field2& u, long double x1, long double x2,
                                                  long double lambda, long double mu,
                                                  long double d = 1e-3L) {
    // grad(i, j) = du_i/dx_j
    auto grad = [&](long double y1, long double y2) {
        std::array<std::array<long double, 2>, 2> g{};
        for (int i = 0; i < 2; ++i) {
            g[i][0] = central([&](long double t) { return u(t, y2)[i]; }, y1, d);
            g[i][1] = central([&](long double t) { return u(y1, t)[i]; }, y2, d);
        }
        return g;
    };
    auto sigma = [&](long double y1, long double y2, int i, int j) {
        const auto g = grad(y1, y2);
        const long double div = g[0][0] + g[1][1];
        return (i == j ? lambda * div : 0.0L) + mu * (g[i][j] + g[j][i]);
    };
    std::array<long double, 2> f{};
    for (int i = 0; i < 2; ++i) {
        const long double d1 = central([&](long double t) { return sigma(t, x2, i, 0); }, x1, d);
        const long double d2 = central([&](long double t) { return sigma(x1, t, i, 1); }, x2, d);
        f[i] = -(d1 + d2);
    }
    return f;
}

/// The manufactured displacement, written out independently in long double.
inline Field2 manufactured_solution(long double lambda) {
    return [lambda](long double x1, long double x2) -> std::array<long double, 2> {
        const long double s = std::sin(x1) * std::sin(x2) / lambda;
        return {(std::cos(2 * x1) - 1) * std::sin(2 * x2) + s, (1 - std::cos(2 * x2)) * std::sin(2 * x1) + s};
    };
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240611) { return std::mt19937_64(seed); }

}  // namespace oracle
