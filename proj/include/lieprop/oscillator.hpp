#pragma once

#include <complex>
#include <span>
#include <vector>

#include "lieprop/policy.hpp"

namespace lieprop {

/// d-dimensional isotropic harmonic oscillator. Euclidean functions take an imaginary
/// time beta (kernels of exp(-beta H / hbar)), real-time ones a time tau.
struct OscillatorModel {
    int d = 3;
    double M = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    Mode mode = Mode::euclidean;

    void validate() const;
    double alpha() const { return M * omega / (2.0 * hbar); }
};

/// Partial-wave channel l of the d-dimensional problem.
struct ChannelLabel {
    int l = 0;
    int d = 3;

    static ChannelLabel make(int l, int d);
    /// Bargmann index of the discrete series carried by the channel, -l/2 - d/4.
    double J() const { return -0.5 * l - 0.25 * d; }
    /// Order of the Bessel function in the radial kernel, l + (d-2)/2 = -2J - 1.
    double bessel_index() const { return l + 0.5 * (d - 2); }
};

/// Arguments of the continuous-basis matrix element of exp(-2 i phi J3).
/// phi is the rotation angle in real time, or the Euclidean angle sigma = omega beta.
struct VArgs {
    double J = -0.75;
    double eta = 0.0;
    double eta_prime = 0.0;
    double phi = 0.0;
};

/// eta = (M omega / 2 hbar) r^2.
double eta_of_r(double r, const OscillatorModel& model);

/// Euclidean v-function csch(s) exp(-(eta + eta') coth s) I_{-2J-1}(2 sqrt(eta eta') csch s).
double v_function(const VArgs& args);

/// Real-time v-function -i csc(phi) exp(i (eta + eta') cot phi) I_{-2J-1}(-2i sqrt(eta eta') csc phi).
std::complex<double> v_function_rt(const VArgs& args);

/// The same matrix element written as a function of the group angle theta = 2 phi:
/// (1 / i sin(theta/2)) exp(i (eta + eta') cot(theta/2)) I_{-2J-1}(2 sqrt(eta eta') / (i sin(theta/2))).
std::complex<double> v_function_group_rt(double J, double eta, double eta_prime, double theta);
/// Euclidean group form, theta = 2 sigma.
double v_function_group(double J, double eta, double eta_prime, double theta);

/// |group-angle form at 2 phi - rotation-angle form at phi|, real time.
double v_matrix_element_identity(double J, double eta, double eta_prime, double phi);
/// Same identity for the Euclidean forms.
double v_matrix_element_identity_euclidean(double J, double eta, double eta_prime, double sigma);

/// |int_0^inf r exp(-beta r^2) I_lambda(a r) I_lambda(b r) dr - exp((a^2+b^2)/4beta) I_lambda(ab/2beta) / 2beta|.
double weber_residual(double lambda_idx, double a, double b, double beta, const EvaluationPolicy& policy = {});

/// |int_0^inf v(eta'', eta; s1) v(eta, eta'; s2) d eta - v(eta'', eta'; s1 + s2)|.
double v_semigroup_residual(double J, double eta2, double eta1, double s1, double s2,
                            const EvaluationPolicy& policy = {});

/// Short-time radial kernel from the partial-wave projection of the sliced Euclidean kernel:
/// (M / hbar beta) (r r')^{-(d-2)/2} exp(-(M / 2 hbar beta)(1 + omega^2 beta^2 / 2)(r^2 + r'^2))
///   I_{l+(d-2)/2}(M r r' / hbar beta).
double short_time_radial(const ChannelLabel& channel, double r, double r_prime, double beta,
                         const OscillatorModel& model);

/// Short-time radial kernel as the exact v-function at the Euclidean slicing angle asinh(omega beta).
double short_time_radial_v(const ChannelLabel& channel, double r, double r_prime, double beta,
                           const OscillatorModel& model);

/// Radial propagator 2 alpha (r'' r')^{-(d-2)/2} v(alpha r''^2, alpha r'^2; omega beta).
double radial_propagator(const ChannelLabel& channel, double r2, double r1, double beta, const OscillatorModel& model);

/// Real-time radial propagator; throws DomainError at caustics omega tau in pi Z.
std::complex<double> radial_propagator_rt(const ChannelLabel& channel, double r2, double r1, double tau,
                                          const OscillatorModel& model);

/// Free-particle radial kernel (M / hbar beta)(r r')^{-(d-2)/2} exp(-M (r^2 + r'^2) / 2 hbar beta)
///   I_{l+(d-2)/2}(M r r' / hbar beta).
double free_radial_kernel(const ChannelLabel& channel, double r2, double r1, double beta, double M, double hbar);

struct PartialWaveSum {
    double value = 0.0;
    double truncation = 0.0; // magnitude of the last retained term
};

/// (Gamma(d/2) / 2 pi^{d/2}) sum_{l <= L_max} K_l(r'', r') d_l D_l(cos gamma).
PartialWaveSum full_propagator(std::span<const double> x2, std::span<const double> x1, double beta,
                               const OscillatorModel& model, int l_max);

/// One-dimensional Euclidean Mehler kernel.
double mehler_kernel(double x2, double x1, double beta, const OscillatorModel& model);

/// Number of independent harmonic polynomials of degree l in d variables (d_l).
double harmonic_dimension(int l, int d);

/// |exp(z cos gamma) - (2/z)^lambda Gamma(lambda) sum (l + lambda) I_{l+lambda}(z) C_l^lambda(cos gamma)|,
/// lambda = (d-2)/2; for d = 2 the limiting form I_0(z) + 2 sum I_l(z) T_l(cos gamma).
double plane_wave_expansion_residual(std::complex<double> z, double cos_gamma, int d, int l_max);

/// E_n = hbar omega (n + d/2).
double spectrum(int n, const OscillatorModel& model);

struct ChannelLevel {
    int l = 0;
    int radial = 0; // n = 2 * radial + l
};

/// All (l, radial quantum number) pairs with 2 radial + l = n.
std::vector<ChannelLevel> level_decomposition(int n);

/// Normalized radial eigenfunction R_{n l}(r) with respect to r^{d-1} dr.
double radial_eigenfunction(int n, const ChannelLabel& channel, double r, const OscillatorModel& model);

/// Energy of radial level n in channel l: hbar omega (2n + l + d/2).
double channel_energy(int n, const ChannelLabel& channel, const OscillatorModel& model);

struct GreenValue {
    double value = 0.0;
    double error = 0.0;
};

/// (1/hbar) int_0^inf e^{E beta / hbar} K_l(r2, r1; beta) d beta for E below the channel ground energy.
GreenValue radial_green(const ChannelLabel& channel, double r2, double r1, double energy, const OscillatorModel& model,
                        const EvaluationPolicy& policy = {});

struct SlicingAngles {
    double per_step = 0.0;
    double total = 0.0;
};

/// phi_j = arcsin(omega eps), total N phi_j.
SlicingAngles slicing_angles(double omega, double eps, long n);

} // namespace lieprop
