#include "lieprop/zonal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lieprop/quadrature.hpp"
#include "lieprop/specfun.hpp"

namespace lieprop {

using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// int_0^pi sin^k
double sine_power_integral(int k) {
    return std::sqrt(pi) * std::exp(std::lgamma(0.5 * (k + 1)) - std::lgamma(0.5 * k + 1.0));
}

double log_sinh(double x) { return x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0); }

} // namespace

double sphere_area(int k) {
    if (k < 0) throw DomainError("sphere_area: negative dimension");
    return 2.0 * std::pow(pi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

double conical_plancherel(int d, double rho) {
    if (d < 2) throw DomainError("conical_plancherel: d must be >= 2");
    if (!(rho >= 0.0)) throw DomainError("conical_plancherel: rho must be >= 0");
    if (rho == 0.0) return 0.0;
    // 1/|Gamma(i rho)|^2 = rho sinh(pi rho) / pi
    const double log_value = std::log(2.0) + log_gamma_abs_sq(0.5 * (d - 1), rho) + std::log(rho) +
                             log_sinh(pi * rho) - std::log(pi) - std::lgamma(static_cast<double>(d));
    return std::exp(log_value);
}

// ---------------------------------------------------------------------------
// GroupDescriptor

GroupDescriptor GroupDescriptor::sphere(int d, double radius) {
    if (d < 2) throw DomainError("GroupDescriptor: d must be >= 2");
    if (!(radius > 0.0)) throw DomainError("GroupDescriptor: radius must be positive");
    return {Space::sphere, d, radius};
}

GroupDescriptor GroupDescriptor::hyperboloid(int d, double radius) {
    if (d < 2) throw DomainError("GroupDescriptor: d must be >= 2");
    if (!(radius > 0.0)) throw DomainError("GroupDescriptor: radius must be positive");
    return {Space::hyperboloid, d, radius};
}

GroupDescriptor GroupDescriptor::euclidean(int d) {
    if (d < 2) throw DomainError("GroupDescriptor: d must be >= 2");
    return {Space::euclidean, d, 1.0};
}

double GroupDescriptor::measure(double theta) const {
    switch (space_) {
    case Space::sphere:
        return std::pow(std::sin(theta), d_ - 2) / sine_power_integral(d_ - 2);
    case Space::hyperboloid:
        return std::pow(radius_, d_) * sphere_area(d_ - 1) * std::pow(std::sinh(theta), d_ - 1);
    case Space::euclidean:
        return sphere_area(d_ - 1) * std::pow(theta, d_ - 1);
    }
    return 0.0;
}

double GroupDescriptor::theta_max() const noexcept { return space_ == Space::sphere ? pi : kInf; }

double GroupDescriptor::zonal(double label, double theta) const {
    switch (space_) {
    case Space::sphere: {
        const int l = static_cast<int>(label);
        if (d_ == 2) return std::cos(l * theta);
        const double alpha = 0.5 * (d_ - 2);
        return gegenbauer_poly(l, alpha, std::cos(theta)) / gegenbauer_at_one(l, alpha);
    }
    case Space::hyperboloid:
        return gegenbauer_conical(d_, label, std::cosh(theta));
    case Space::euclidean: {
        const double nu = 0.5 * (d_ - 2);
        const double x = label * theta;
        if (x < 1e-4) return 1.0 - x * x / (4.0 * (nu + 1.0));
        return std::tgamma(nu + 1.0) * std::pow(2.0 / x, nu) * std::cyl_bessel_j(nu, x);
    }
    }
    return 0.0;
}

double GroupDescriptor::plancherel(double label) const {
    switch (space_) {
    case Space::sphere: {
        const int l = static_cast<int>(label);
        if (d_ == 2) return l == 0 ? 1.0 : 2.0;
        const double alpha = 0.5 * (d_ - 2);
        return (l + alpha) / alpha * gegenbauer_at_one(l, alpha);
    }
    case Space::hyperboloid: {
        const double c = std::tgamma(0.5 * (d_ + 1)) / (2.0 * std::pow(pi, 0.5 * (d_ + 1)));
        return c * conical_plancherel(d_, label) / std::pow(radius_, d_);
    }
    case Space::euclidean:
        return sphere_area(d_ - 1) * std::pow(label, d_ - 1) / std::pow(2.0 * pi, d_);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Labels

LabelGrid LabelGrid::discrete(int l_max) {
    if (l_max < 0) throw DomainError("LabelGrid: l_max must be >= 0");
    LabelGrid g;
    for (int l = 0; l <= l_max; ++l) {
        g.labels.push_back(l);
        g.weights.push_back(1.0);
    }
    return g;
}

LabelGrid LabelGrid::continuous(double rho_max, int panels) {
    if (!(rho_max > 0.0)) throw DomainError("LabelGrid: rho_max must be positive");
    auto rule = composite_gauss_legendre(0.0, rho_max, panels);
    return {std::move(rule.nodes), std::move(rule.weights)};
}

LabelGrid LabelGrid::gaussian(double beta) {
    if (!(beta > 0.0)) throw DomainError("LabelGrid: beta must be positive");
    const double rho_max = std::sqrt(2.0 * std::log(1e16) / beta);
    return continuous(rho_max, std::max(4, static_cast<int>(std::ceil(1.5 * rho_max))));
}

// ---------------------------------------------------------------------------
// Transform and synthesis

ZonalSeries zonal_transform(const KernelOnAngle& kernel, const GroupDescriptor& desc, const LabelGrid& labels,
                            const EvaluationPolicy& policy) {
    policy.validate();
    if (!kernel.evaluator) throw DomainError("zonal_transform: empty kernel");
    const double upper = std::min(desc.theta_max(), kernel.theta_max);
    if (!(upper > 0.0) || !std::isfinite(upper)) throw DomainError("zonal_transform: kernel needs a finite cutoff");
    ZonalSeries out{desc, labels, {}, {}};
    out.plancherel.reserve(labels.labels.size());
    out.coeffs.reserve(labels.labels.size());
    // |D_l| <= 1, so the mass of |kernel| bounds every coefficient and sets the absolute scale
    const auto mass = integrate([&](double t) { return std::abs(kernel.evaluator(t)) * desc.measure(t); }, 0.0,
                                upper, policy.rel_tol);
    const double abs_tol = std::max(policy.abs_tol, 0.1 * policy.rel_tol * mass.value);
    for (double label : labels.labels) {
        auto integrand = [&](double t) { return kernel.evaluator(t) * desc.zonal(label, t) * desc.measure(t); };
        const auto r = integrate(integrand, 0.0, upper, policy.rel_tol, abs_tol, 4000);
        if (!r.converged) throw ConvergenceError("zonal_transform: quadrature did not converge", r.error);
        out.plancherel.push_back(desc.plancherel(label));
        out.coeffs.push_back(r.value);
    }
    return out;
}

Synthesis zonal_synthesize(const ZonalSeries& series, double theta) {
    const auto& desc = series.desc;
    const std::size_t n = series.coeffs.size();
    CompensatedSum<double> sum;
    Synthesis out;
    if (desc.discrete()) {
        int small = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double c = series.plancherel[j] * series.coeffs[j];
            sum.add(c * desc.zonal(series.grid.labels[j], theta));
            out.truncation = std::abs(c);
            small = (std::abs(c) < 1e-14 * std::abs(sum.value())) ? small + 1 : 0;
            if (small >= 2) break;
        }
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            const double c = series.grid.weights[j] * series.plancherel[j] * series.coeffs[j];
            sum.add(c * desc.zonal(series.grid.labels[j], theta));
        }
        if (n > 0) out.truncation = std::abs(series.plancherel[n - 1] * series.coeffs[n - 1]);
    }
    out.value = sum.value();
    return out;
}

ZonalSeries series_convolve(const ZonalSeries& s1, const ZonalSeries& s2) {
    if (!(s1.desc == s2.desc) || !(s1.grid == s2.grid))
        throw DomainError("series_convolve: series live on different label grids");
    ZonalSeries out = s1;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] = s1.coeffs[j] * s2.coeffs[j];
    return out;
}

ZonalSeries nfold_power(const ZonalSeries& series, int n) {
    if (n < 1) throw DomainError("nfold_power: N must be >= 1");
    ZonalSeries out = series;
    if (n == 1) return out;
    for (double& c : out.coeffs) {
        if (!(c > 0.0)) throw DomainError("nfold_power: non-positive coefficient, kernel is not positive definite");
        c = std::exp(n * std::log(c));
    }
    return out;
}

double spectrum_from_slope(const std::function<double(double)>& coefficient_fn, const SlopeOptions& options) {
    const double h = options.step;
    if (!(h > 0.0)) throw DomainError("spectrum_from_slope: step must be positive");
    const double l1 = coefficient_fn(h);
    const double l2 = coefficient_fn(0.5 * h);
    const double l4 = coefficient_fn(0.25 * h);
    const double at_zero = (8.0 * l4 - 6.0 * l2 + l1) / 3.0;
    if (!(std::abs(at_zero - 1.0) <= options.normalization_tol))
        throw DomainError("spectrum_from_slope: coefficient does not tend to 1 as beta -> 0");
    const double d1 = (l1 - 1.0) / h;
    const double d2 = (l2 - 1.0) / (0.5 * h);
    const double d4 = (l4 - 1.0) / (0.25 * h);
    const double r1 = 2.0 * d2 - d1;
    const double r2 = 2.0 * d4 - d2;
    return -options.hbar * (4.0 * r2 - r1) / 3.0;
}

double orthogonality_residual(int l, int l_prime, const GroupDescriptor& desc) {
    if (!desc.discrete()) throw DomainError("orthogonality_residual: needs discrete labels");
    if (l < 0 || l_prime < 0) throw DomainError("orthogonality_residual: negative label");
    const auto rule = gauss_legendre(l + l_prime + desc.dimension() + 40);
    CompensatedSum<double> sum;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double t = 0.5 * pi * (rule.nodes[j] + 1.0);
        sum.add(0.5 * pi * rule.weights[j] * desc.zonal(l, t) * desc.zonal(l_prime, t) * desc.measure(t));
    }
    const double expected = (l == l_prime) ? 1.0 / desc.plancherel(l) : 0.0;
    return std::abs(sum.value() - expected);
}

// ---------------------------------------------------------------------------
// Convolution

Eigen::MatrixXd grid_convolve(const Eigen::MatrixXd& k1, std::span<const double> weights, const Eigen::MatrixXd& k2) {
    if (k1.cols() != static_cast<Eigen::Index>(weights.size()) || k2.rows() != k1.cols())
        throw DomainError("grid_convolve: grid sizes do not match");
    const Eigen::Map<const Eigen::VectorXd> w(weights.data(), static_cast<Eigen::Index>(weights.size()));
    return k1 * w.asDiagonal() * k2;
}

ConvolutionResult grid_convolve(const std::function<double(double, double)>& k1,
                                const std::function<double(double, double)>& k2, int d, double x2, double x1,
                                double r_max, int panels) {
    if (panels < 2) throw DomainError("grid_convolve: at least two panels needed");
    auto run = [&](int p) {
        const auto rule = composite_gauss_legendre(0.0, r_max, p);
        CompensatedSum<double> sum;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double r = rule.nodes[j];
            sum.add(rule.weights[j] * std::pow(r, d - 1) * k1(x2, r) * k2(r, x1));
        }
        return sum.value();
    };
    const double fine = run(panels);
    const double coarse = run(panels / 2);
    return {fine, std::abs(fine - coarse)};
}

double two_point_angle(const GroupDescriptor& desc, double a, double b, double psi) {
    const double s = std::sin(0.5 * psi);
    const double half_angle_sq = 2.0 * s * s; // 1 - cos psi
    switch (desc.space()) {
    case Space::hyperboloid: {
        const double sh = std::sinh(0.5 * (a - b));
        const double c = 2.0 * sh * sh + std::sinh(a) * std::sinh(b) * half_angle_sq; // cosh Theta - 1
        return 2.0 * std::asinh(std::sqrt(0.5 * std::max(c, 0.0)));
    }
    case Space::sphere: {
        const double sn = std::sin(0.5 * (a - b));
        const double c = 2.0 * sn * sn + std::sin(a) * std::sin(b) * half_angle_sq; // 1 - cos Theta
        return 2.0 * std::asin(std::min(1.0, std::sqrt(0.5 * std::max(c, 0.0))));
    }
    case Space::euclidean:
        return std::sqrt((a - b) * (a - b) + 2.0 * a * b * half_angle_sq);
    }
    return 0.0;
}

ConvolutionResult grid_convolve(const KernelOnAngle& k1, const KernelOnAngle& k2, const GroupDescriptor& desc,
                                double theta, const EvaluationPolicy& policy) {
    policy.validate();
    if (!k1.evaluator || !k2.evaluator) throw DomainError("grid_convolve: empty kernel");
    // directions around the origin form S^k
    const int k = desc.space() == Space::sphere ? desc.dimension() - 2 : desc.dimension() - 1;
    const double upper = std::min({desc.theta_max(), k2.theta_max, theta + k1.theta_max});
    if (!std::isfinite(upper)) throw DomainError("grid_convolve: kernels need a finite cutoff");
    const double inner_tol = 0.1 * policy.rel_tol;

    auto direction_average = [&](double t) {
        if (k == 0) {
            return 0.5 * (k1.evaluator(two_point_angle(desc, theta, t, 0.0)) +
                          k1.evaluator(two_point_angle(desc, theta, t, pi)));
        }
        const double norm = sine_power_integral(k - 1);
        auto f = [&](double psi) {
            return k1.evaluator(two_point_angle(desc, theta, t, psi)) * std::pow(std::sin(psi), k - 1);
        };
        return integrate(f, 0.0, pi, inner_tol, 1e-300).value / norm;
    };
    auto outer = [&](double t) {
        const double w = desc.measure(t);
        if (w == 0.0) return 0.0;
        const double k2v = k2.evaluator(t);
        if (k2v == 0.0) return 0.0;
        return w * k2v * direction_average(t);
    };
    const auto r = integrate(outer, 0.0, upper, policy.rel_tol, 1e-300, 4000);
    return {r.value, r.error};
}

} // namespace lieprop
