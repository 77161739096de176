#pragma once

#include <complex>
#include <optional>

#include "lieprop/policy.hpp"

namespace lieprop {

/// Order of a Bessel function: real nu for I_nu, or imaginary i*rho for K_{i rho}.
struct BesselOrder {
    enum class Kind { real, imaginary };
    Kind kind = Kind::real;
    double value = 0.0;

    static BesselOrder real(double nu);
    static BesselOrder imaginary(double rho);
};

/// Integer degree l and superscript alpha > -1/2 of C_l^alpha.
struct GegenbauerIndex {
    int degree = 0;
    double superscript = 0.5;
};

/// Conical label l(rho) = -(d-1)/2 + i rho of the SO(d,1) spherical principal series.
struct ConicalIndex {
    int d = 3;
    double rho = 0.0;
};

// Orthogonal polynomials -------------------------------------------------------

/// C_l^alpha(x) by the three-term recurrence in l. Any real x.
double gegenbauer_poly(GegenbauerIndex index, double x);
double gegenbauer_poly(int l, double alpha, double x);

/// C_l^alpha(1) = Gamma(l + 2 alpha) / (l! Gamma(2 alpha)).
double gegenbauer_at_one(int l, double alpha);

double legendre_p(int l, double x);
double chebyshev_t(int l, double x);

// Conical (SO(d,1) zonal) functions -----------------------------------------------

/// Normalized zonal spherical function of SO(d,1) for the label -(d-1)/2 + i rho,
/// i.e. Gamma(d-1)Gamma(l+1)/Gamma(l+d-1) C_l^{(d-1)/2}(cosh Theta). Equals 1 at Theta = 0.
double gegenbauer_conical(ConicalIndex index, double cosh_theta);
double gegenbauer_conical(int d, double rho, double cosh_theta);

/// Hypergeometric-series branch: 2F1((d-1)/2 - i rho, (d-1)/2 + i rho; d/2; (1 - cosh)/2).
/// Accurate for cosh_theta < 2 with rho * sinh(Theta/2) moderate.
double gegenbauer_conical_series(int d, double rho, double cosh_theta);

/// Integral branch: Harish-Chandra average rewritten over v = log(cosh - sinh cos t).
double gegenbauer_conical_integral(int d, double rho, double cosh_theta);

// Modified Bessel functions -------------------------------------------------------

/// I_nu(z) for real nu >= 0 and complex z (principal branch). Throws OverflowError
/// when |Re z| is too large for a double; use bessel_i_scaled then.
std::complex<double> bessel_i(BesselOrder order, std::complex<double> z);
std::complex<double> bessel_i(double nu, std::complex<double> z);

/// exp(-|Re z|) I_nu(z).
std::complex<double> bessel_i_scaled(double nu, std::complex<double> z);

/// exp(-x) I_nu(x) for real x >= 0.
double bessel_i_scaled(double nu, double x);

/// I_nu(x) for real x >= 0.
double bessel_i(double nu, double x);

/// Power series branch of exp(-|Re z|) I_nu(z) (any z, cancellation grows with |Im z|).
std::complex<double> bessel_i_series_scaled(double nu, std::complex<double> z);

/// Large-argument Hankel expansion of exp(-|Re z|) I_nu(z); empty if the smallest term
/// of the asymptotic series stays above tol relative to the sum.
std::optional<std::complex<double>> bessel_i_asymptotic_scaled(double nu, std::complex<double> z,
                                                               double tol = 1e-17);

/// K_{i rho}(x) for x > 0 from int_0^inf exp(-x cosh t) cos(rho t) dt.
double bessel_k_imag(double rho, double x, const EvaluationPolicy& policy = {});

/// exp(x) K_{i rho}(x).
double bessel_k_imag_scaled(double rho, double x, const EvaluationPolicy& policy = {});

// Gamma function ----------------------------------------------------------------

/// log|Gamma(z)| for complex z (Lanczos with reflection).
double log_abs_gamma(std::complex<double> z);

/// |Gamma(a + i rho)|^2.
double gamma_abs_sq(double a, double rho);

/// log |Gamma(a + i rho)|^2.
double log_gamma_abs_sq(double a, double rho);

} // namespace lieprop
