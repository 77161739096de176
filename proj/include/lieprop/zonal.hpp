#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lieprop/policy.hpp"

namespace lieprop {

enum class Space { sphere, hyperboloid, euclidean };

/// Homogeneous space together with its invariant measure in geodesic polar form.
///
/// sphere:      S^{d-1} of radius R, measure normalized to total mass 1, discrete labels l.
/// hyperboloid: d-dimensional space of curvature -1/R^2, measure R^d sinh^{d-1} dTheta dOmega,
///              continuous labels rho.
/// euclidean:   R^d, measure r^{d-1} dr dOmega, continuous labels k (wave number).
class GroupDescriptor {
public:
    static GroupDescriptor sphere(int d, double radius = 1.0);
    static GroupDescriptor hyperboloid(int d, double radius = 1.0);
    static GroupDescriptor euclidean(int d);

    Space space() const noexcept { return space_; }
    int dimension() const noexcept { return d_; }
    double radius() const noexcept { return radius_; }
    bool discrete() const noexcept { return space_ == Space::sphere; }

    /// Radial measure density w(Theta) including the solid angle, so that for zonal f
    /// the integral over the space is int f(Theta) w(Theta) dTheta.
    double measure(double theta) const;

    /// Upper end of the geodesic variable (pi on spheres, infinite otherwise).
    double theta_max() const noexcept;

    /// Zonal spherical function D_00^label(Theta), equal to 1 at Theta = 0.
    double zonal(double label, double theta) const;

    /// Synthesis weight: d_l on spheres; the full Plancherel density (constants included)
    /// for continuous labels.
    double plancherel(double label) const;

    bool operator==(const GroupDescriptor&) const = default;

private:
    GroupDescriptor(Space s, int d, double r) : space_(s), d_(d), radius_(r) {}
    Space space_;
    int d_;
    double radius_;
};

/// Label set: l = 0..L on spheres, or quadrature nodes rho_j with weights on [0, rho_max].
struct LabelGrid {
    std::vector<double> labels;
    std::vector<double> weights; // all 1 for discrete labels

    static LabelGrid discrete(int l_max);
    /// Composite 16-point Gauss-Legendre on [0, rho_max].
    static LabelGrid continuous(double rho_max, int panels);
    /// Grid for coefficients that decay like exp(-beta rho^2 / 2): rho_max makes the factor < 1e-16.
    static LabelGrid gaussian(double beta);

    bool operator==(const LabelGrid&) const = default;
};

struct ZonalSeries {
    GroupDescriptor desc;
    LabelGrid grid;
    std::vector<double> plancherel;
    std::vector<double> coeffs;
};

/// Zonal kernel as a function of the geodesic angle (or distance on R^d).
struct KernelOnAngle {
    std::function<double(double)> evaluator;
    double theta_max = 0.0; // integration cutoff; kernel assumed negligible beyond
};

struct Synthesis {
    double value = 0.0;
    double truncation = 0.0;
};

/// lambda_l = int kernel(Theta) D_00^l(Theta) dmu(Theta).
ZonalSeries zonal_transform(const KernelOnAngle& kernel, const GroupDescriptor& desc, const LabelGrid& labels,
                            const EvaluationPolicy& policy = {});

/// sum_l d_l lambda_l D_00^l(theta), or the rho-quadrature of the same on continuous labels.
Synthesis zonal_synthesize(const ZonalSeries& series, double theta);

/// Coefficientwise product: the coefficient-space image of kernel convolution.
ZonalSeries series_convolve(const ZonalSeries& s1, const ZonalSeries& s2);

/// lambda -> lambda^N, via exp(N log lambda).
ZonalSeries nfold_power(const ZonalSeries& series, int n);

struct SlopeOptions {
    double hbar = 1.0;
    double step = 1e-3;
    double normalization_tol = 1e-6;
};

/// E = -hbar d lambda / d beta at beta = 0 from Richardson-extrapolated one-sided
/// differences at beta = h, h/2, h/4. Throws DomainError if lambda(0) != 1.
double spectrum_from_slope(const std::function<double(double)>& coefficient_fn, const SlopeOptions& options = {});

/// |int D_l D_l' dmu - delta_ll' / d_l| on a sphere.
double orthogonality_residual(int l, int l_prime, const GroupDescriptor& desc);

struct ConvolutionResult {
    double value = 0.0;
    double error = 0.0;
};

/// Matrix form on a shared grid: out(a, b) = sum_j k1(a, j) w_j k2(j, b).
Eigen::MatrixXd grid_convolve(const Eigen::MatrixXd& k1, std::span<const double> weights, const Eigen::MatrixXd& k2);

/// Radial form: int_0^r_max k1(x2, r) k2(r, x1) r^{d-1} dr on composite Gauss-Legendre panels,
/// with the error estimated against half as many panels.
ConvolutionResult grid_convolve(const std::function<double(double, double)>& k1,
                                const std::function<double(double, double)>& k2, int d, double x2, double x1,
                                double r_max, int panels);

/// Geodesic form: int k1(Theta(q2, q)) k2(Theta(q, q1)) dmu(q) for two points at geodesic
/// separation theta, using the two-point angle formula of the space.
ConvolutionResult grid_convolve(const KernelOnAngle& k1, const KernelOnAngle& k2, const GroupDescriptor& desc,
                                double theta, const EvaluationPolicy& policy = {});

/// Geodesic angle between a point at radial coordinate a and one at b whose directions
/// enclose the angle psi (law of cosines of the space, in a cancellation-free form).
double two_point_angle(const GroupDescriptor& desc, double a, double b, double psi);

/// Area of the unit sphere S^k.
double sphere_area(int k);

/// Plancherel density 2|Gamma((d-1)/2 + i rho)|^2 / (Gamma(d) |Gamma(i rho)|^2) of the
/// spherical principal series of SO(d,1), without the synthesis constant.
double conical_plancherel(int d, double rho);

} // namespace lieprop
