#ifndef PAINLEVE_AIRY_HPP
#define PAINLEVE_AIRY_HPP

namespace painleve {

enum class AiryMethod { series, asymptotic };

struct AiryResult {
    double value;
    AiryMethod method;
};

/// Branch switch: Maclaurin series for |x| <= kAirySwitch, asymptotic forms beyond.
inline constexpr double kAirySwitch = 6.0;

/// Airy function Ai(x). Absolute error below 1e-12 for |x| <= 12 and relative
/// error below 1e-10 for x > 12. Strictly positive for x >= 0.
AiryResult airy_ai(double x);

/// Ai'(x), relative error below 1e-10 for |x| <= 12.
double airy_ai_deriv(double x);

/// Maclaurin series of Ai, summed in quad precision so that the cancellation
/// between the two fundamental series stays harmless up to x ~ 12.
double airy_ai_series(double x);
double airy_ai_deriv_series(double x);

/// Exponential asymptotic form for x > 0:
///   Ai(x) = e^{-zeta} / (2 sqrt(pi) x^{1/4}) * S(zeta),  zeta = (2/3) x^{3/2},
/// with S(zeta) ~ 1 - 5/(72 zeta) + ... . For large zeta S is the truncated
/// series; for moderate zeta the series is replaced by its Laplace integral
///   S = (2 x^{1/4} / sqrt(pi)) * int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt,
/// which the series expands term by term.
double airy_ai_asymptotic(double x);
double airy_ai_deriv_asymptotic(double x);

/// Leading-order decay e^{-zeta} / (2 sqrt(pi) x^{1/4}).
double airy_ai_leading(double x);

}  // namespace painleve

#endif  // PAINLEVE_AIRY_HPP
