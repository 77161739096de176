#include "lieprop/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lieprop/quadrature.hpp"

namespace lieprop {

using cplx = std::complex<double>;
using std::numbers::pi;

BesselOrder BesselOrder::real(double nu) {
    if (!std::isfinite(nu) || nu < 0.0) throw DomainError("BesselOrder: real order must be finite and >= 0");
    return {Kind::real, nu};
}

BesselOrder BesselOrder::imaginary(double rho) {
    if (!std::isfinite(rho) || rho < 0.0) throw DomainError("BesselOrder: imaginary order must be finite and >= 0");
    return {Kind::imaginary, rho};
}

// ---------------------------------------------------------------------------
// Orthogonal polynomials

double gegenbauer_poly(int l, double alpha, double x) {
    if (l < 0) throw DomainError("gegenbauer_poly: negative degree");
    if (!(alpha > -0.5)) throw DomainError("gegenbauer_poly: superscript must exceed -1/2");
    if (l == 0) return 1.0;
    double c0 = 1.0;
    double c1 = 2.0 * alpha * x;
    for (int n = 2; n <= l; ++n) {
        const double c2 = (2.0 * x * (n + alpha - 1.0) * c1 - (n + 2.0 * alpha - 2.0) * c0) / n;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double gegenbauer_poly(GegenbauerIndex index, double x) {
    return gegenbauer_poly(index.degree, index.superscript, x);
}

double gegenbauer_at_one(int l, double alpha) {
    if (l < 0) throw DomainError("gegenbauer_at_one: negative degree");
    double p = 1.0;
    for (int k = 0; k < l; ++k) p *= (2.0 * alpha + k) / (k + 1.0);
    return p;
}

double legendre_p(int l, double x) { return gegenbauer_poly(l, 0.5, x); }

double chebyshev_t(int l, double x) {
    if (l < 0) throw DomainError("chebyshev_t: negative degree");
    if (l == 0) return 1.0;
    double t0 = 1.0, t1 = x;
    for (int n = 2; n <= l; ++n) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

// ---------------------------------------------------------------------------
// Conical functions

namespace {

void check_conical(int d, double rho, double cosh_theta) {
    if (d < 2) throw DomainError("gegenbauer_conical: d must be >= 2");
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("gegenbauer_conical: rho must be finite and >= 0");
    if (!std::isfinite(cosh_theta)) throw DomainError("gegenbauer_conical: non-finite argument");
    if (cosh_theta < 1.0) throw DomainError("gegenbauer_conical: cosh(Theta) < 1");
}

} // namespace

double gegenbauer_conical_series(int d, double rho, double cosh_theta) {
    check_conical(d, rho, cosh_theta);
    const double z = 0.5 * (1.0 - cosh_theta);
    if (z <= -1.0) throw DomainError("gegenbauer_conical_series: outside the disc of convergence");
    const double a = 0.5 * (d - 1);
    const double c = 0.5 * d;
    // (a - i rho)_k (a + i rho)_k is real: prod |a + k + i rho|^2.
    CompensatedSum<double> sum;
    double term = 1.0;
    sum.add(term);
    for (int k = 0; k < 10000; ++k) {
        term *= ((a + k) * (a + k) + rho * rho) / ((c + k) * (k + 1.0)) * z;
        sum.add(term);
        if (std::abs(term) < 1e-17 * std::abs(sum.value()) && k > 2) break;
    }
    return sum.value();
}

double gegenbauer_conical_integral(int d, double rho, double cosh_theta) {
    check_conical(d, rho, cosh_theta);
    if (cosh_theta == 1.0) return 1.0;
    const double theta = std::acosh(cosh_theta);
    const double sinh_theta = std::sqrt((cosh_theta - 1.0) * (cosh_theta + 1.0));
    const double cd = std::exp(std::lgamma(0.5 * d) - std::lgamma(0.5 * (d - 1))) / std::sqrt(pi);
    const double power = 0.5 * (d - 3);
    const double growth = 0.5 * (3 - d);
    // v = -Theta cos(psi) maps psi in [0, pi] onto [-Theta, Theta]; the sin(psi) Jacobian
    // cancels the endpoint singularity of the d = 2 weight.
    const int panels = 2 + static_cast<int>(std::ceil(rho * theta + 0.5 * theta));
    const auto rule = composite_gauss_legendre(0.0, pi, panels);
    CompensatedSum<double> sum;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double psi = rule.nodes[j];
        const double v = -theta * std::cos(psi);
        double weight = 1.0;
        if (power != 0.0) {
            const double lower = std::exp(-theta) * std::expm1(v + theta); // e^v - e^-Theta
            const double upper = std::exp(v) * std::expm1(theta - v);      // e^Theta - e^v
            weight = std::pow(lower * upper, power);
        }
        sum.add(rule.weights[j] * std::exp(growth * v) * std::cos(rho * v) * weight * theta * std::sin(psi));
    }
    return cd * sum.value() / std::pow(sinh_theta, d - 2);
}

double gegenbauer_conical(int d, double rho, double cosh_theta) {
    check_conical(d, rho, cosh_theta);
    if (cosh_theta == 1.0) return 1.0;
    const double half_sinh = std::sqrt(0.5 * (cosh_theta - 1.0)); // sinh(Theta/2)
    // Series terms peak near exp(2 rho sinh(Theta/2)); beyond that the cancellation
    // costs more digits than the integral branch.
    if (cosh_theta < 2.0 && rho * half_sinh <= 3.0) return gegenbauer_conical_series(d, rho, cosh_theta);
    return gegenbauer_conical_integral(d, rho, cosh_theta);
}

double gegenbauer_conical(ConicalIndex index, double cosh_theta) {
    return gegenbauer_conical(index.d, index.rho, cosh_theta);
}

// ---------------------------------------------------------------------------
// Modified Bessel function of the first kind

namespace {

constexpr double kSeriesAsymptoticSeam = 20.0;

template <class T>
T series_scaled(double nu, T z) {
    if (z == T(0)) return nu == 0.0 ? T(1) : T(0);
    const double shift = std::abs(std::real(z));
    // leading term (z/2)^nu / Gamma(nu+1) * exp(-|Re z|), in log form to avoid overflow
    const T lead = std::exp(nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) - shift);
    const T q = 0.25 * z * z;
    CompensatedSum<T> sum;
    T term = lead;
    sum.add(term);
    const double absz = std::abs(z);
    for (int k = 0; k < 100000; ++k) {
        term *= q / ((k + 1.0) * (k + 1.0 + nu));
        sum.add(term);
        if (k + 1 > absz && std::abs(term) <= 1e-17 * std::abs(sum.value())) break;
        if (term == T(0)) break;
    }
    return sum.value();
}

// Hankel expansion for Re z >= 0; empty if the series diverges before converging.
template <class T>
std::optional<T> hankel_scaled(double nu, T z, double tol = 1e-17) {
    const double mu = 4.0 * nu * nu;
    CompensatedSum<T> s1;   // sum (-1)^k a_k / z^k
    CompensatedSum<T> s2;   // sum a_k / z^k
    T term = T(1);
    s1.add(term);
    s2.add(term);
    double prev = 1.0;
    bool converged = false;
    for (int k = 1; k < 400; ++k) {
        const double factor = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= factor / (8.0 * k * z);
        const double mag = std::abs(term);
        if (factor == 0.0 || mag == 0.0) {
            converged = true;
            break;
        }
        if (mag > prev && k > 1) break;
        s1.add((k % 2 == 0) ? term : -term);
        s2.add(term);
        prev = mag;
        if (mag <= tol * std::min(std::abs(s1.value()), std::abs(s2.value()))) {
            converged = true;
            break;
        }
    }
    if (!converged) return std::nullopt;
    if constexpr (std::is_same_v<T, double>) {
        // the second exponential is smaller by exp(-2x) <= exp(-40) on this branch
        return s1.value() / std::sqrt(2.0 * pi * z);
    } else {
        const T root = std::sqrt(2.0 * pi * z);
        const double x = z.real();
        const double y = z.imag();
        const T first = std::exp(T(0, y)) * s1.value() / root;
        const double sign = (y >= 0.0) ? 1.0 : -1.0;
        const T phase = T(0, sign) * std::exp(T(0, sign * nu * pi));
        const T second = phase * std::exp(T(-2.0 * x, -y)) * s2.value() / root;
        return first + second;
    }
}

bool oscillatory(double) { return false; }
bool oscillatory(cplx z) { return std::abs(z.imag()) > std::abs(z.real()); }

// Downward recurrence I_{m-1} = I_{m+1} + (2m/z) I_m from a high starting order.
// Normalization: Hankel at the fractional order nu0 when Re z dominates, otherwise the
// Neumann sum  sum_k (-1)^k (nu0 + 2k) Gamma(nu0 + k) / k! I_{nu0+2k}(z) = (z/2)^nu0.
template <class T>
T miller_scaled(double nu, T z) {
    const double floor_nu = std::floor(nu);
    const double nu0 = nu - floor_nu;
    const double absz = std::abs(z);
    const bool neumann = oscillatory(z) || absz < kSeriesAsymptoticSeam;
    const double reach = std::max(nu, absz);
    const double extra = std::sqrt(120.0 * std::max(reach, 1.0)) + (neumann ? absz : 0.0) + 20.0;
    const int top = static_cast<int>(std::ceil(reach + extra));
    const int target = static_cast<int>(floor_nu);
    auto neumann_coeff = [nu0](int k) {
        if (k == 0) return std::tgamma(nu0 + 1.0);
        return (nu0 + 2.0 * k) * std::exp(std::lgamma(nu0 + k) - std::lgamma(k + 1.0));
    };
    T above = T(0);
    T current = T(1e-30);
    T at_nu = T(0);
    CompensatedSum<T> norm;
    auto accumulate = [&](int k, T value) {
        if (k % 2 == 0) norm.add(((k / 2) % 2 == 0 ? 1.0 : -1.0) * neumann_coeff(k / 2) * value);
    };
    if (top == target) at_nu = current;
    accumulate(top, current);
    for (int k = top; k > 0; --k) {
        const double m = nu0 + k;
        const T below = above + (2.0 * m / z) * current;
        above = current;
        current = below;
        if (k - 1 == target) at_nu = current;
        accumulate(k - 1, current);
        if (std::abs(current) > 1e250) {
            current *= 1e-250;
            above *= 1e-250;
            at_nu *= 1e-250;
            CompensatedSum<T> rescaled;
            rescaled.add(norm.value() * 1e-250);
            norm = rescaled;
        }
    }
    if (neumann) {
        const T lead = std::exp(nu0 * std::log(0.5 * z) - std::abs(std::real(z)));
        return lead * (at_nu / norm.value());
    }
    const auto base = hankel_scaled(nu0, z);
    if (!base) throw ConvergenceError("bessel_i: Hankel expansion failed at fractional order", absz);
    return *base * (at_nu / current);
}

template <class T>
T bessel_i_scaled_core(double nu, T z) {
    if (std::abs(z) < kSeriesAsymptoticSeam) {
        // the power series loses about |Im z| / ln 10 digits to cancellation
        if (oscillatory(z) && std::abs(z) > 2.0) return miller_scaled(nu, z);
        return series_scaled(nu, z);
    }
    if (auto h = hankel_scaled(nu, z)) return *h;
    return miller_scaled(nu, z);
}

} // namespace

cplx bessel_i_series_scaled(double nu, cplx z) {
    if (!(nu >= 0.0)) throw DomainError("bessel_i: order must be >= 0");
    return series_scaled(nu, z);
}

std::optional<cplx> bessel_i_asymptotic_scaled(double nu, cplx z, double tol) {
    if (!(nu >= 0.0)) throw DomainError("bessel_i: order must be >= 0");
    if (z.real() >= 0.0) return hankel_scaled(nu, z, tol);
    // I_nu(z) = exp(+-i pi nu) I_nu(-z)
    const double sign = (z.imag() >= 0.0) ? 1.0 : -1.0;
    auto h = hankel_scaled(nu, -z, tol);
    if (!h) return std::nullopt;
    return std::exp(cplx(0, sign * pi * nu)) * *h;
}

cplx bessel_i_scaled(double nu, cplx z) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("bessel_i: order must be finite and >= 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("bessel_i: non-finite argument");
    if (z.imag() == 0.0 && z.real() >= 0.0) return bessel_i_scaled_core<double>(nu, z.real());
    if (z.real() >= 0.0 || std::abs(z) < kSeriesAsymptoticSeam) return bessel_i_scaled_core<cplx>(nu, z);
    const double sign = (z.imag() >= 0.0) ? 1.0 : -1.0;
    return std::exp(cplx(0, sign * pi * nu)) * bessel_i_scaled_core<cplx>(nu, -z);
}

double bessel_i_scaled(double nu, double x) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("bessel_i: order must be finite and >= 0");
    if (!(x >= 0.0)) throw DomainError("bessel_i_scaled: real argument must be >= 0");
    if (std::isinf(x)) return 0.0;
    return bessel_i_scaled_core<double>(nu, x);
}

cplx bessel_i(BesselOrder order, cplx z) {
    if (order.kind != BesselOrder::Kind::real) throw DomainError("bessel_i: imaginary order is not supported");
    const double shift = std::abs(z.real());
    if (shift > 700.0) {
        throw OverflowError("bessel_i: |Re z| = " + std::to_string(shift) +
                            " saturates double range; use bessel_i_scaled");
    }
    return bessel_i_scaled(order.value, z) * std::exp(shift);
}

cplx bessel_i(double nu, cplx z) { return bessel_i(BesselOrder::real(nu), z); }

double bessel_i(double nu, double x) {
    if (x > 700.0) throw OverflowError("bessel_i: argument saturates double range; use bessel_i_scaled");
    return bessel_i_scaled(nu, x) * std::exp(x);
}

// ---------------------------------------------------------------------------
// K_{i rho}

double bessel_k_imag_scaled(double rho, double x, const EvaluationPolicy& policy) {
    if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("bessel_k_imag: rho must be finite and >= 0");
    if (!(x > 0.0)) throw DomainError("bessel_k_imag: argument must be positive");
    // x (cosh t - 1) = s^2 turns exp(-x cosh t) into exp(-x) exp(-s^2):
    // e^x K = sqrt(2/x) int_0^inf exp(-s^2) cos(2 rho asinh(s / sqrt(2x))) / sqrt(1 + s^2/(2x)) ds
    const double two_x = 2.0 * x;
    const double root = std::sqrt(two_x);
    auto integrand = [&](double s) {
        const double u = s / root;
        return std::exp(-s * s) * std::cos(2.0 * rho * std::asinh(u)) / std::sqrt(1.0 + u * u);
    };
    constexpr double s_max = 6.5; // exp(-s_max^2) ~ 4.5e-19
    const double tol = std::min(policy.rel_tol, 1e-14);
    const auto r = integrate(integrand, 0.0, s_max, tol, 1e-18);
    if (!r.converged && r.error > 1e-12) throw ConvergenceError("bessel_k_imag: quadrature did not converge", r.error);
    return std::sqrt(2.0 / x) * r.value;
}

double bessel_k_imag(double rho, double x, const EvaluationPolicy& policy) {
    return std::exp(-x) * bessel_k_imag_scaled(rho, x, policy);
}

// ---------------------------------------------------------------------------
// Gamma

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log|sin(pi z)| without overflow for large |Im z|
double log_abs_sin_pi(cplx z) {
    const double x = z.real();
    const double y = std::abs(z.imag());
    const double s = std::sin(pi * x);
    if (pi * y > 30.0) {
        // |sin(pi z)|^2 = sin^2(pi x) + sinh^2(pi y)
        const double e = std::exp(-2.0 * pi * y);
        const double sh2_scaled = 0.25 * (1.0 - e) * (1.0 - e); // sinh^2 / exp(2 pi y)
        return pi * y + 0.5 * std::log(s * s * e + sh2_scaled);
    }
    const double sh = std::sinh(pi * y);
    return 0.5 * std::log(s * s + sh * sh);
}

} // namespace

double log_abs_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw DomainError("log_abs_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        return std::log(pi) - log_abs_sin_pi(z) - log_abs_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    const cplx lg = 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
    return lg.real();
}

double log_gamma_abs_sq(double a, double rho) {
    if (rho == 0.0 && a <= 0.0 && a == std::floor(a)) throw DomainError("gamma_abs_sq: pole at non-positive integer");
    if (rho == 0.0) return 2.0 * std::lgamma(a);
    return 2.0 * log_abs_gamma(cplx(a, rho));
}

double gamma_abs_sq(double a, double rho) { return std::exp(log_gamma_abs_sq(a, rho)); }

} // namespace lieprop
