#include "painleve/airy.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace painleve {
namespace {

using quad = __float128;

// Ai(0) and -Ai'(0) split into double-double pairs.
constexpr double kAi0Hi = 0.3550280538878172;
constexpr double kAi0Lo = 2.05233632436212e-17;
constexpr double kDAi0Hi = 0.2588194037928068;
constexpr double kDAi0Lo = -2.522243111610832e-17;

quad abs_q(quad v) { return v < 0 ? -v : v; }

// Sums f = sum a_m x^m (f(0)=1, f'(0)=0) and g (g(0)=0, g'(0)=1) for y'' = x y,
// together with their derivatives, using c_{m+3} = c_m / ((m+2)(m+3)).
struct SeriesPair {
    quad f, df, g, dg;
};

SeriesPair airy_series(double xd) {
    const quad x = xd;
    const quad x3 = x * x * x;
    // f terms: c_{3k} x^{3k}; g terms: c_{3k+1} x^{3k+1}.
    quad tf = 1, tg = x;
    quad f = tf, g = tg;
    quad df = 0, dg = 1;
    // derivative terms: d/dx (c x^m) = m c x^{m-1}
    for (int k = 0; k < 400; ++k) {
        const quad m = 3 * k;
        tf = tf * x3 / ((m + 2) * (m + 3));
        tg = tg * x3 / ((m + 3) * (m + 4));
        f += tf;
        g += tg;
        if (xd != 0.0) {
            df += (m + 3) * tf / x;
            dg += (m + 4) * tg / x;
        }
        const quad scale = abs_q(f) + abs_q(g) + 1;
        if (abs_q(tf) + abs_q(tg) < scale * quad(1e-34) && k > 2) break;
    }
    return {f, df, g, dg};
}

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kGaussOrder = 20;
struct GaussRule {
    std::array<double, kGaussOrder> node{};
    std::array<double, kGaussOrder> weight{};
};

const GaussRule& gauss_rule() {
    static const GaussRule rule = [] {
        GaussRule r;
        const int n = kGaussOrder;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            r.node[i] = z;
            r.weight[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return r;
    }();
    return rule;
}

// int_0^inf t^{2*power} exp(-a t^2) cos(t^3/3) dt by composite Gauss-Legendre.
double laplace_integral(double a, int power) {
    const double upper = std::sqrt((46.0 + 4.0 * power) / a);
    constexpr int panels = 24;
    const double width = upper / panels;
    const auto& rule = gauss_rule();
    double sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        double panel = 0.0;
        for (int i = 0; i < kGaussOrder; ++i) {
            const double t = mid + 0.5 * width * rule.node[i];
            const double t2 = t * t;
            panel += rule.weight[i] * std::pow(t2, power) * std::exp(-a * t2) * std::cos(t2 * t / 3.0);
        }
        sum += 0.5 * width * panel;
    }
    return sum;
}

// Truncated asymptotic sums sum (-1)^k u_k / zeta^k and sum (-1)^k v_k / zeta^k.
// Stops at the smallest term. Valid for zeta large enough that it is below 1e-17.
struct AsymptoticSums {
    double u_sum;
    double v_sum;
};

AsymptoticSums asymptotic_sums(double zeta) {
    double u = 1.0;
    double u_sum = 1.0;
    double v_sum = 1.0;
    double last = 1.0;
    for (int k = 1; k < 60; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        const double term = u / std::pow(zeta, k);
        if (term > last) break;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        u_sum += sign * term;
        v_sum += sign * v / std::pow(zeta, k);
        last = term;
        if (term < 1e-18) break;
    }
    return {u_sum, v_sum};
}

constexpr double kLargeZeta = 20.0;

double ai_negative_oscillatory(double x, bool derivative) {
    // Ai(-s) and Ai'(-s) for large s > 0.
    const double s = -x;
    const double zeta = 2.0 / 3.0 * s * std::sqrt(s);
    const double phase = zeta - std::numbers::pi / 4.0;
    double u = 1.0, p = 1.0, q = 0.0, vp = 1.0, vq = 0.0;
    for (int k = 1; k < 30; ++k) {
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
        const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        const double zk = std::pow(zeta, k);
        if (u / zk < 1e-17) break;
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * u / zk;
            vp += sign * v / zk;
        } else {
            q += sign * u / zk;
            vq += sign * v / zk;
        }
    }
    const double root_pi = std::sqrt(std::numbers::pi);
    if (!derivative) {
        return (std::cos(phase) * p + std::sin(phase) * q) / (root_pi * std::pow(s, 0.25));
    }
    return std::pow(s, 0.25) / root_pi * (std::sin(phase) * vp - std::cos(phase) * vq);
}

}  // namespace

double airy_ai_series(double x) {
    const SeriesPair s = airy_series(x);
    const quad c1 = quad(kAi0Hi) + quad(kAi0Lo);
    const quad c2 = quad(kDAi0Hi) + quad(kDAi0Lo);
    return static_cast<double>(c1 * s.f - c2 * s.g);
}

double airy_ai_deriv_series(double x) {
    const SeriesPair s = airy_series(x);
    const quad c1 = quad(kAi0Hi) + quad(kAi0Lo);
    const quad c2 = quad(kDAi0Hi) + quad(kDAi0Lo);
    return static_cast<double>(c1 * s.df - c2 * s.dg);
}

double airy_ai_leading(double x) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25));
}

double airy_ai_asymptotic(double x) {
    if (x <= 0.0) return ai_negative_oscillatory(x, false);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (zeta >= kLargeZeta) return airy_ai_leading(x) * asymptotic_sums(zeta).u_sum;
    return std::exp(-zeta) / std::numbers::pi * laplace_integral(std::sqrt(x), 0);
}

double airy_ai_deriv_asymptotic(double x) {
    if (x <= 0.0) return ai_negative_oscillatory(x, true);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (zeta >= kLargeZeta) {
        return -std::exp(-zeta) * std::pow(x, 0.25) / (2.0 * std::sqrt(std::numbers::pi)) *
               asymptotic_sums(zeta).v_sum;
    }
    const double a = std::sqrt(x);
    return std::exp(-zeta) / std::numbers::pi *
           (-a * laplace_integral(a, 0) - laplace_integral(a, 1) / (2.0 * a));
}

AiryResult airy_ai(double x) {
    if (std::abs(x) <= kAirySwitch) return {airy_ai_series(x), AiryMethod::series};
    return {airy_ai_asymptotic(x), AiryMethod::asymptotic};
}

double airy_ai_deriv(double x) {
    if (std::abs(x) <= kAirySwitch) return airy_ai_deriv_series(x);
    return airy_ai_deriv_asymptotic(x);
}

}  // namespace painleve
