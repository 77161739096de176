#pragma once

#include <complex>
#include <vector>

#include "lieprop/policy.hpp"
#include "lieprop/zonal.hpp"

namespace lieprop {

/// Free particle on the d-dimensional space of constant curvature -1/R^2.
///
/// Euclidean functions take an imaginary time beta (kernels of exp(-beta H / hbar)),
/// real-time ones a time tau. Kernels are densities with respect to the dimensionless
/// measure sinh^{d-1}(Theta) dTheta dOmega.
struct HyperbolicModel {
    int d = 3;
    double R = 1.0;
    double M = 1.0;
    double hbar = 1.0;
    Mode mode = Mode::euclidean;

    void validate() const;
    /// M R^2 / (hbar beta): the large parameter of the short-time expansion.
    double stiffness(double beta) const { return M * R * R / (hbar * beta); }
    GroupDescriptor descriptor() const { return GroupDescriptor::hyperboloid(d); }
};

/// Geodesic polar coordinates: radial theta and d-1 polar angles (the last one azimuthal).
struct HyperbolicPoint {
    double theta = 0.0;
    std::vector<double> omega;
};

/// Unit direction in R^d from d-1 polar angles.
std::vector<double> direction_from_angles(const std::vector<double>& omega, int d);

/// Geodesic angle from cosh Theta = (x0' x0'' - x'.x'') / R^2 on the embedded hyperboloid.
double geodesic_angle(const HyperbolicPoint& p1, const HyperbolicPoint& p2, const HyperbolicModel& model);

/// (M R^2 / 2 pi hbar beta)^{d/2} exp(-(M R^2 / hbar beta)(cosh Theta - 1) + hbar beta / 8 M R^2).
double short_time_kernel(double theta, double beta, const HyperbolicModel& model);
std::complex<double> short_time_kernel_rt(double theta, double tau, const HyperbolicModel& model);

/// 2 |Gamma((d-1)/2 + i rho)|^2 / (Gamma(d) |Gamma(i rho)|^2).
double plancherel_weight(double rho, int d);

/// Coefficient of the short-time kernel: sqrt(2a/pi) e^{1/8a} e^a K_{i rho}(a), a = M R^2 / hbar beta.
/// Throws UnsupportedMode in real-time mode.
double fourier_coefficient(double rho, double beta, const HyperbolicModel& model, const EvaluationPolicy& policy = {});

/// Gamma((d+1)/2) / (2 pi^{(d+1)/2}) int_0^inf d_rho exp(-hbar beta rho^2 / 2 M R^2) phi_rho(Theta) drho.
double spectral_propagator(double theta, double beta, const HyperbolicModel& model);

/// Real-time propagator; only available for odd d through the continued closed form.
std::complex<double> spectral_propagator_rt(double theta, double tau, const HyperbolicModel& model);

/// Closed form for odd d: (a/2pi)^{1/2} [-(1/2pi sinh Theta) d/dTheta]^{(d-1)/2} exp(-a Theta^2 / 2).
double closed_form_odd(double theta, double beta, const HyperbolicModel& model);
std::complex<double> closed_form_odd_rt(double theta, double tau, const HyperbolicModel& model);

/// Closed form for even d: sqrt(2) (a/2pi)^{3/2} [-(1/2pi sinh Theta) d/dTheta]^{(d-2)/2}
/// int_Theta^inf dz z exp(-a z^2 / 2) / sqrt(cosh z - cosh Theta), integrated after
/// cosh z = cosh Theta + s^2.
double closed_form_even(double theta, double beta, const HyperbolicModel& model, const EvaluationPolicy& policy = {});

/// Zero-point shift (d-1)^2 hbar^2 / 8 M R^2 of the Laplacian spectrum.
double energy_shift(const HyperbolicModel& model);

struct LimitingValue {
    double value = 0.0;
    double target = 0.0;
};

/// [sqrt(2Nz/pi) e^{1/8Nz} e^{Nz} K_{i rho}(Nz)]^N against its limit exp(-rho^2 / 2z).
LimitingValue limiting_relation(double rho, double z, long n);

/// The short-time kernel as a zonal kernel, cut off where it is below 1e-18 of its peak.
KernelOnAngle short_time_zonal_kernel(double beta, const HyperbolicModel& model);

/// The exact propagator (closed form of matching parity) as a zonal kernel.
KernelOnAngle propagator_zonal_kernel(double beta, const HyperbolicModel& model);

} // namespace lieprop
