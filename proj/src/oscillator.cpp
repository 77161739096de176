#include "lieprop/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lieprop/quadrature.hpp"
#include "lieprop/specfun.hpp"

namespace lieprop {

using cplx = std::complex<double>;
using std::numbers::pi;

void OscillatorModel::validate() const {
    if (d < 1) throw DomainError("OscillatorModel: d must be >= 1");
    if (!(M > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) throw DomainError("OscillatorModel: M, omega, hbar must be positive");
}

ChannelLabel ChannelLabel::make(int l, int d) {
    if (l < 0) throw DomainError("ChannelLabel: l must be non-negative");
    if (d < 2) throw DomainError("ChannelLabel: partial waves need d >= 2");
    return {l, d};
}

namespace {

void require_euclidean(const OscillatorModel& model, const char* what) {
    model.validate();
    if (model.mode != Mode::euclidean) throw UnsupportedMode(std::string(what) + ": Euclidean mode only");
}

void require_positive(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": time must be positive");
}

void require_radii(double r2, double r1, const char* what) {
    if (!(r2 >= 0.0) || !(r1 >= 0.0)) throw DomainError(std::string(what) + ": radii must be non-negative");
}

double order_of(double J) {
    const double nu = -2.0 * J - 1.0;
    if (nu < 0.0) throw DomainError("v-function: J must be <= -1/2");
    return nu;
}

// (r r')^{-lambda} exp(-c r r') I_nu(c r r'), nu = l + lambda, with the r r' -> 0 limit.
double scaled_radial_bessel(const ChannelLabel& ch, double r2, double r1, double c) {
    const double lambda = 0.5 * (ch.d - 2);
    const double rr = r2 * r1;
    if (rr == 0.0) {
        if (ch.l > 0) return 0.0;
        return std::pow(0.5 * c, lambda) / std::tgamma(lambda + 1.0);
    }
    return std::pow(rr, -lambda) * bessel_i_scaled(ch.bessel_index(), c * rr);
}

} // namespace

double eta_of_r(double r, const OscillatorModel& model) {
    model.validate();
    return model.alpha() * r * r;
}

double v_function(const VArgs& args) {
    const double nu = order_of(args.J);
    if (!(args.phi > 0.0)) throw DomainError("v_function: Euclidean angle must be positive");
    if (args.eta < 0.0 || args.eta_prime < 0.0) throw DomainError("v_function: eta must be non-negative");
    const double s = args.phi;
    const double root = std::sqrt(args.eta * args.eta_prime);
    const double x = 2.0 * root / std::sinh(s);
    const double gap = std::sqrt(args.eta) - std::sqrt(args.eta_prime);
    // -(eta + eta') coth s + x rewritten without cancellation
    const double expo = -gap * gap / std::tanh(s) - 2.0 * root * std::tanh(0.5 * s);
    return std::exp(expo) / std::sinh(s) * bessel_i_scaled(nu, x);
}

cplx v_function_rt(const VArgs& args) {
    const double nu = order_of(args.J);
    if (args.eta < 0.0 || args.eta_prime < 0.0) throw DomainError("v_function_rt: eta must be non-negative");
    const double sn = std::sin(args.phi);
    if (std::abs(sn) < 1e-12) throw DomainError("v_function_rt: singular angle (sin phi = 0)");
    const double cot = std::cos(args.phi) / sn;
    const cplx i(0.0, 1.0);
    const double root = std::sqrt(args.eta * args.eta_prime);
    return -i / sn * std::exp(i * ((args.eta + args.eta_prime) * cot)) * bessel_i(nu, cplx(0.0, -2.0 * root / sn));
}

cplx v_function_group_rt(double J, double eta, double eta_prime, double theta) {
    const double nu = order_of(J);
    const double half = 0.5 * theta;
    const double sn = std::sin(half);
    if (std::abs(sn) < 1e-12) throw DomainError("v_function_group_rt: singular angle");
    const cplx i(0.0, 1.0);
    const cplx isn = i * sn;
    const double cot = 1.0 / std::tan(half);
    return 1.0 / isn * std::exp(i * (eta + eta_prime) * cot) * bessel_i(nu, 2.0 * std::sqrt(eta * eta_prime) / isn);
}

double v_function_group(double J, double eta, double eta_prime, double theta) {
    const double nu = order_of(J);
    if (!(theta > 0.0)) throw DomainError("v_function_group: Euclidean angle must be positive");
    // half-angle functions from the full angle
    const double sh = std::sqrt(0.5 * (std::cosh(theta) - 1.0));
    const double coth = (std::cosh(theta) + 1.0) / std::sinh(theta);
    const double x = 2.0 * std::sqrt(eta * eta_prime) / sh;
    return std::exp(-(eta + eta_prime) * coth + x) * bessel_i_scaled(nu, x) / sh;
}

double v_matrix_element_identity(double J, double eta, double eta_prime, double phi) {
    return std::abs(v_function_group_rt(J, eta, eta_prime, 2.0 * phi) - v_function_rt({J, eta, eta_prime, phi}));
}

double v_matrix_element_identity_euclidean(double J, double eta, double eta_prime, double sigma) {
    return std::abs(v_function_group(J, eta, eta_prime, 2.0 * sigma) - v_function({J, eta, eta_prime, sigma}));
}

double weber_residual(double lambda_idx, double a, double b, double beta, const EvaluationPolicy& policy) {
    policy.validate();
    if (lambda_idx < 0.0) throw DomainError("weber_residual: order must be non-negative");
    if (a < 0.0 || b < 0.0) throw DomainError("weber_residual: a, b must be non-negative");
    if (!(beta > 0.0)) throw DomainError("weber_residual: the Gaussian integral diverges for beta <= 0");
    // both sides carry exp((a+b)^2 / 4 beta); divide it out
    const double r0 = 0.5 * (a + b) / beta;
    const double upper = r0 + std::sqrt(45.0 / beta);
    const auto f = [&](double r) {
        const double g = r - r0;
        return r * std::exp(-beta * g * g) * bessel_i_scaled(lambda_idx, a * r) * bessel_i_scaled(lambda_idx, b * r);
    };
    const auto q = integrate(f, 0.0, upper, policy.rel_tol, 0.0);
    if (!q.converged) throw ConvergenceError("weber_residual: quadrature did not converge", q.error);
    const double rhs = bessel_i_scaled(lambda_idx, 0.5 * a * b / beta) / (2.0 * beta);
    const double scale = std::exp(0.25 * (a + b) * (a + b) / beta);
    return std::abs(q.value - rhs) * scale;
}

double v_semigroup_residual(double J, double eta2, double eta1, double s1, double s2, const EvaluationPolicy& policy) {
    policy.validate();
    if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("v_semigroup_residual: angles must be positive");
    // eta = t^2 removes the square-root behaviour at the origin
    const double upper = std::max(std::sqrt(eta2), std::sqrt(eta1)) + 8.0;
    const auto f = [&](double t) {
        const double eta = t * t;
        return 2.0 * t * v_function({J, eta2, eta, s1}) * v_function({J, eta, eta1, s2});
    };
    const auto q = integrate(f, 0.0, upper, policy.rel_tol, 0.0);
    if (!q.converged) throw ConvergenceError("v_semigroup_residual: quadrature did not converge", q.error);
    return std::abs(q.value - v_function({J, eta2, eta1, s1 + s2}));
}

double short_time_radial(const ChannelLabel& ch, double r, double r_prime, double beta, const OscillatorModel& model) {
    require_euclidean(model, "short_time_radial");
    require_positive(beta, "short_time_radial");
    require_radii(r, r_prime, "short_time_radial");
    const double c = model.M / (model.hbar * beta);
    const double q = 0.5 * model.omega * model.omega * beta * beta;
    const double g = r - r_prime;
    const double expo = -0.5 * c * g * g - 0.5 * c * q * (r * r + r_prime * r_prime);
    return c * std::exp(expo) * scaled_radial_bessel(ch, r, r_prime, c);
}

double short_time_radial_v(const ChannelLabel& ch, double r, double r_prime, double beta, const OscillatorModel& model) {
    require_euclidean(model, "short_time_radial_v");
    require_positive(beta, "short_time_radial_v");
    require_radii(r, r_prime, "short_time_radial_v");
    const double sigma = std::asinh(model.omega * beta);
    return radial_propagator(ch, r, r_prime, sigma / model.omega, model);
}

double radial_propagator(const ChannelLabel& ch, double r2, double r1, double beta, const OscillatorModel& model) {
    require_euclidean(model, "radial_propagator");
    require_positive(beta, "radial_propagator");
    require_radii(r2, r1, "radial_propagator");
    const double alpha = model.alpha();
    const double s = model.omega * beta;
    const double csch = 1.0 / std::sinh(s);
    const double g = r2 - r1;
    const double expo = -alpha * (g * g / std::tanh(s) + 2.0 * r2 * r1 * std::tanh(0.5 * s));
    return 2.0 * alpha * csch * std::exp(expo) * scaled_radial_bessel(ch, r2, r1, 2.0 * alpha * csch);
}

cplx radial_propagator_rt(const ChannelLabel& ch, double r2, double r1, double tau, const OscillatorModel& model) {
    model.validate();
    if (!(r2 > 0.0) || !(r1 > 0.0)) throw DomainError("radial_propagator_rt: radii must be positive");
    const double phi = model.omega * tau;
    if (std::abs(std::sin(phi)) < 1e-12) throw DomainError("radial_propagator_rt: caustic (omega tau is a multiple of pi)");
    const double alpha = model.alpha();
    const double lambda = 0.5 * (ch.d - 2);
    const cplx v = v_function_rt({ch.J(), alpha * r2 * r2, alpha * r1 * r1, phi});
    return 2.0 * alpha * std::pow(r2 * r1, -lambda) * v;
}

double free_radial_kernel(const ChannelLabel& ch, double r2, double r1, double beta, double M, double hbar) {
    require_positive(beta, "free_radial_kernel");
    require_radii(r2, r1, "free_radial_kernel");
    if (!(M > 0.0) || !(hbar > 0.0)) throw DomainError("free_radial_kernel: M, hbar must be positive");
    const double c = M / (hbar * beta);
    const double g = r2 - r1;
    return c * std::exp(-0.5 * c * g * g) * scaled_radial_bessel(ch, r2, r1, c);
}

double mehler_kernel(double x2, double x1, double beta, const OscillatorModel& model) {
    require_euclidean(model, "mehler_kernel");
    require_positive(beta, "mehler_kernel");
    const double alpha = model.alpha();
    const double s = model.omega * beta;
    const double g = x2 - x1;
    const double expo = -alpha * (g * g / std::tanh(s) + 2.0 * x2 * x1 * std::tanh(0.5 * s));
    return std::sqrt(alpha / (pi * std::sinh(s))) * std::exp(expo);
}

double harmonic_dimension(int l, int d) {
    if (l < 0 || d < 2) throw DomainError("harmonic_dimension: need l >= 0, d >= 2");
    if (d == 2) return l == 0 ? 1.0 : 2.0;
    // (2l + d - 2)/(d - 2) * binom(l + d - 3, l)
    double binom = 1.0;
    for (int k = 1; k <= l; ++k) binom *= static_cast<double>(d - 3 + k) / k;
    return (2.0 * l + d - 2) / (d - 2) * binom;
}

PartialWaveSum full_propagator(std::span<const double> x2, std::span<const double> x1, double beta,
                               const OscillatorModel& model, int l_max) {
    require_euclidean(model, "full_propagator");
    require_positive(beta, "full_propagator");
    const int d = model.d;
    if (d < 2) throw DomainError("full_propagator: partial waves need d >= 2");
    if (static_cast<int>(x2.size()) != d || static_cast<int>(x1.size()) != d)
        throw DomainError("full_propagator: points must have d components");
    if (l_max < 0) throw DomainError("full_propagator: l_max must be non-negative");
    double r2 = 0.0, r1 = 0.0, dot = 0.0;
    for (int i = 0; i < d; ++i) {
        r2 += x2[i] * x2[i];
        r1 += x1[i] * x1[i];
        dot += x2[i] * x1[i];
    }
    r2 = std::sqrt(r2);
    r1 = std::sqrt(r1);
    const double cg = (r2 > 0.0 && r1 > 0.0) ? std::clamp(dot / (r2 * r1), -1.0, 1.0) : 1.0;
    const double lambda = 0.5 * (d - 2);
    const double area = 2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d);

    PartialWaveSum out;
    CompensatedSum<double> sum;
    for (int l = 0; l <= l_max; ++l) {
        const auto ch = ChannelLabel::make(l, d);
        const double zonal = d == 2 ? chebyshev_t(l, cg) : gegenbauer_poly(l, lambda, cg) / gegenbauer_at_one(l, lambda);
        const double term = radial_propagator(ch, r2, r1, beta, model) * harmonic_dimension(l, d) * zonal / area;
        sum.add(term);
        out.truncation = std::abs(term);
    }
    out.value = sum.value();
    return out;
}

double plane_wave_expansion_residual(cplx z, double cos_gamma, int d, int l_max) {
    if (d < 2) throw DomainError("plane_wave_expansion_residual: need d >= 2");
    if (std::abs(cos_gamma) > 1.0) throw DomainError("plane_wave_expansion_residual: |cos gamma| must be <= 1");
    if (l_max < 0) throw DomainError("plane_wave_expansion_residual: l_max must be non-negative");
    const cplx exact = std::exp(z * cos_gamma);
    if (z == 0.0) return std::abs(exact - 1.0);
    CompensatedSum<cplx> sum;
    if (d == 2) {
        sum.add(bessel_i(0.0, z));
        for (int l = 1; l <= l_max; ++l) sum.add(2.0 * bessel_i(static_cast<double>(l), z) * chebyshev_t(l, cos_gamma));
        return std::abs(exact - sum.value());
    }
    const double lambda = 0.5 * (d - 2);
    for (int l = 0; l <= l_max; ++l)
        sum.add((l + lambda) * bessel_i(l + lambda, z) * gegenbauer_poly(l, lambda, cos_gamma));
    const cplx pre = std::pow(2.0 / z, lambda) * std::tgamma(lambda);
    return std::abs(exact - pre * sum.value());
}

double spectrum(int n, const OscillatorModel& model) {
    model.validate();
    if (n < 0) throw DomainError("spectrum: n must be non-negative");
    return model.hbar * model.omega * (n + 0.5 * model.d);
}

std::vector<ChannelLevel> level_decomposition(int n) {
    if (n < 0) throw DomainError("level_decomposition: n must be non-negative");
    std::vector<ChannelLevel> out;
    for (int l = n; l >= 0; l -= 2) out.push_back({l, (n - l) / 2});
    return out;
}

double channel_energy(int n, const ChannelLabel& ch, const OscillatorModel& model) {
    model.validate();
    if (n < 0) throw DomainError("channel_energy: n must be non-negative");
    return model.hbar * model.omega * (2.0 * n + ch.l + 0.5 * ch.d);
}

double radial_eigenfunction(int n, const ChannelLabel& ch, double r, const OscillatorModel& model) {
    model.validate();
    if (n < 0 || r < 0.0) throw DomainError("radial_eigenfunction: need n >= 0, r >= 0");
    const double alpha = model.alpha();
    const double a = ch.l + 0.5 * ch.d - 1.0;
    const double x = 2.0 * alpha * r * r;
    // generalized Laguerre polynomial by the three-term recurrence
    double prev = 1.0, cur = 1.0 + a - x;
    if (n == 0) cur = 1.0;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    const double log_norm =
        0.5 * (std::log(2.0) + (a + 1.0) * std::log(2.0 * alpha) + std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0));
    return std::exp(log_norm - alpha * r * r) * std::pow(r, ch.l) * cur;
}

GreenValue radial_green(const ChannelLabel& ch, double r2, double r1, double energy, const OscillatorModel& model,
                        const EvaluationPolicy& policy) {
    require_euclidean(model, "radial_green");
    policy.validate();
    require_radii(r2, r1, "radial_green");
    const double ground = channel_energy(0, ch, model);
    if (!(energy < ground)) throw DomainError("radial_green: energy must lie below the channel ground energy");
    const double hb = model.hbar;
    // The ground-state pole is taken in closed form; the remainder decays at the next level's rate,
    // so a finite interval suffices even just below the ground energy.
    const double pole = radial_eigenfunction(0, ch, r2, model) * radial_eigenfunction(0, ch, r1, model);
    const double gap = channel_energy(1, ch, model) - energy;
    // beta = t^2 tames the beta^{-1/2} behaviour at coincidence
    const auto f = [&](double t) {
        if (!(t > 0.0)) return 0.0;
        const double beta = t * t;
        const double rest = radial_propagator(ch, r2, r1, beta, model) - pole * std::exp(-ground * beta / hb);
        return 2.0 * t * rest * std::exp(energy * beta / hb) / hb;
    };
    const double t_max = std::sqrt(45.0 * hb / gap);
    auto q = integrate(f, 0.0, t_max, policy.rel_tol, 1e-15 * std::abs(pole) / (ground - energy));
    if (!q.converged) throw ConvergenceError("radial_green: quadrature did not converge", q.error);
    q.value += pole / (ground - energy);
    return {q.value, q.error};
}

SlicingAngles slicing_angles(double omega, double eps, long n) {
    if (!(omega > 0.0) || !(eps > 0.0) || n < 1) throw DomainError("slicing_angles: need omega, eps > 0 and N >= 1");
    const double s = omega * eps;
    if (s >= 1.0) throw DomainError("slicing_angles: slicing too coarse (omega eps >= 1)");
    const double phi = std::asin(s);
    return {phi, static_cast<double>(n) * phi};
}

} // namespace lieprop
