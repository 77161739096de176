#include "lieprop/hyperbolic.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "lieprop/quadrature.hpp"
#include "lieprop/specfun.hpp"

namespace lieprop {

using cplx = std::complex<double>;
using std::numbers::pi;

void HyperbolicModel::validate() const {
    if (d < 2) throw DomainError("HyperbolicModel: d must be >= 2");
    if (!(R > 0.0) || !(M > 0.0) || !(hbar > 0.0)) throw DomainError("HyperbolicModel: R, M, hbar must be positive");
}

namespace {

void require_euclidean(const HyperbolicModel& model, const char* what) {
    model.validate();
    if (model.mode != Mode::euclidean) throw UnsupportedMode(std::string(what) + ": Euclidean mode only");
}

void require_positive(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": time must be positive");
}

// Derivative tower [(1/sinh z) d/dz]^m applied to z^i0 csch^k0(z) exp(-c z^2), i.e. m derivatives
// with respect to u = cosh z. Terms are coef * z^i coth^j(z) csch^k(z) exp(-c z^2).
template <class T>
class Tower {
public:
    Tower(T c, int m, int i0, int k0) : c_(c), m_(m) {
        std::map<std::tuple<int, int, int>, T> terms{{{i0, 0, k0}, T(1)}};
        for (int step = 0; step < m; ++step) {
            std::map<std::tuple<int, int, int>, T> next;
            for (const auto& [key, coef] : terms) {
                const auto [i, j, k] = key;
                if (i > 0) next[{i - 1, j, k + 1}] += coef * static_cast<double>(i);
                if (j > 0) next[{i, j - 1, k + 3}] -= coef * static_cast<double>(j);
                if (k > 0) next[{i, j + 1, k + 1}] -= coef * static_cast<double>(k);
                next[{i + 1, j, k + 1}] -= coef * (2.0 * c);
            }
            terms = std::move(next);
        }
        for (const auto& [key, coef] : terms) terms_.push_back({coef, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
        init_series(i0, k0);
    }

    /// m-th u-derivative at u = 1 + w, w = cosh z - 1 >= 0.
    T operator()(double w) const {
        if (w < series_limit_) return from_series(w);
        const double z = 2.0 * std::asinh(std::sqrt(0.5 * w));
        const double coth = 1.0 / std::tanh(z);
        const double csch = 1.0 / std::sinh(z);
        CompensatedSum<T> sum;
        for (const auto& t : terms_)
            sum.add(t.coef * (std::pow(z, t.i) * std::pow(coth, t.j) * std::pow(csch, t.k)));
        return sum.value() * std::exp(-c_ * (z * z));
    }

private:
    struct Term {
        T coef;
        int i, j, k;
    };

    static constexpr int kSeriesTerms = 90;

    // Power series in w of z^2 = acosh^2(1 + w), then exp(-c z^2), times (z / sinh z) if needed.
    void init_series(int i0, int k0) {
        series_limit_ = std::min(0.5, 0.5 / std::max(std::abs(c_), 1e-300));
        std::vector<double> y(kSeriesTerms + 1, 0.0);
        y[1] = 2.0;
        for (int n = 1; n < kSeriesTerms; ++n) y[n + 1] = -static_cast<double>(n) * n * y[n] / ((n + 1.0) * (2.0 * n + 1.0));
        std::vector<T> e(kSeriesTerms + 1, T(0));
        e[0] = T(1);
        for (int n = 1; n <= kSeriesTerms; ++n) {
            T acc(0);
            for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * (-c_ * y[k]) * e[n - k];
            e[n] = acc / static_cast<double>(n);
        }
        coeffs_ = e;
        if (i0 == 1 && k0 == 1) {
            // z / sinh z = sqrt( (z^2 / w) / (2 + w) )
            std::vector<double> r(kSeriesTerms + 1, 0.0);
            for (int n = 0; n <= kSeriesTerms; ++n) {
                const double q = (n + 1 <= kSeriesTerms) ? y[n + 1] : 0.0;
                r[n] = 0.5 * (q - (n > 0 ? r[n - 1] : 0.0));
            }
            std::vector<double> p(kSeriesTerms + 1, 0.0);
            p[0] = std::sqrt(r[0]);
            for (int n = 1; n <= kSeriesTerms; ++n) {
                double acc = r[n];
                for (int k = 1; k < n; ++k) acc -= p[k] * p[n - k];
                p[n] = acc / (2.0 * p[0]);
            }
            for (int n = 0; n <= kSeriesTerms; ++n) {
                T acc(0);
                for (int k = 0; k <= n; ++k) acc += p[k] * e[n - k];
                coeffs_[n] = acc;
            }
        } else if (i0 != 0 || k0 != 0) {
            throw DomainError("Tower: unsupported seed");
        }
        // differentiate m times
        for (int step = 0; step < m_; ++step) {
            for (int n = 0; n + 1 < static_cast<int>(coeffs_.size()); ++n) coeffs_[n] = coeffs_[n + 1] * static_cast<double>(n + 1);
            coeffs_.pop_back();
        }
    }

    T from_series(double w) const {
        T acc(0);
        for (int n = static_cast<int>(coeffs_.size()) - 1; n >= 0; --n) acc = acc * w + coeffs_[n];
        return acc;
    }

    T c_;
    int m_;
    std::vector<Term> terms_;
    std::vector<T> coeffs_;
    double series_limit_ = 0.0;
};

template <class T>
T odd_closed_form(double theta, T a, int d) {
    const int m = (d - 1) / 2;
    const Tower<T> tower(0.5 * a, m, 0, 0);
    const double s = std::sinh(0.5 * theta);
    const T pref = std::sqrt(a / (2.0 * pi)) * std::pow(-1.0 / (2.0 * pi), m);
    return pref * tower(2.0 * s * s);
}

double cutoff_short(double a, int d) {
    double t = 1.0;
    for (int it = 0; it < 30; ++it) t = std::acosh(1.0 + (45.0 + (d - 1) * t) / a);
    return t;
}

double cutoff_propagator(double a, int d) { return ((d - 1) + std::sqrt((d - 1.0) * (d - 1.0) + 90.0 * a)) / a; }

} // namespace

std::vector<double> direction_from_angles(const std::vector<double>& omega, int d) {
    if (static_cast<int>(omega.size()) != d - 1) throw DomainError("direction_from_angles: need d-1 angles");
    std::vector<double> n(d, 0.0);
    double sines = 1.0;
    for (int k = 0; k < d - 1; ++k) {
        n[k] = sines * std::cos(omega[k]);
        sines *= std::sin(omega[k]);
    }
    n[d - 1] = sines;
    return n;
}

double geodesic_angle(const HyperbolicPoint& p1, const HyperbolicPoint& p2, const HyperbolicModel& model) {
    model.validate();
    if (!(p1.theta >= 0.0) || !(p2.theta >= 0.0)) throw DomainError("geodesic_angle: radial coordinate must be >= 0");
    const auto n1 = direction_from_angles(p1.omega, model.d);
    const auto n2 = direction_from_angles(p2.omega, model.d);
    double chord_sq = 0.0; // |n1 - n2|^2 = 2 (1 - n1.n2)
    for (int k = 0; k < model.d; ++k) chord_sq += (n1[k] - n2[k]) * (n1[k] - n2[k]);
    const double sh = std::sinh(0.5 * (p1.theta - p2.theta));
    // cosh Theta - 1, free of cancellation
    const double c = 2.0 * sh * sh + 0.5 * std::sinh(p1.theta) * std::sinh(p2.theta) * chord_sq;
    if (c < -1e-12) throw DomainError("geodesic_angle: cosh Theta below 1");
    return 2.0 * std::asinh(std::sqrt(0.5 * std::max(c, 0.0)));
}

double short_time_kernel(double theta, double beta, const HyperbolicModel& model) {
    require_euclidean(model, "short_time_kernel");
    require_positive(beta, "short_time_kernel");
    const double a = model.stiffness(beta);
    const double s = std::sinh(0.5 * theta);
    return std::pow(a / (2.0 * pi), 0.5 * model.d) * std::exp(-a * 2.0 * s * s + 1.0 / (8.0 * a));
}

cplx short_time_kernel_rt(double theta, double tau, const HyperbolicModel& model) {
    model.validate();
    require_positive(tau, "short_time_kernel_rt");
    const cplx a = model.M * model.R * model.R / (cplx(0.0, 1.0) * model.hbar * tau);
    const double s = std::sinh(0.5 * theta);
    return std::pow(a / (2.0 * pi), 0.5 * model.d) * std::exp(-a * (2.0 * s * s) + 1.0 / (8.0 * a));
}

double plancherel_weight(double rho, int d) { return conical_plancherel(d, rho); }

double fourier_coefficient(double rho, double beta, const HyperbolicModel& model, const EvaluationPolicy& policy) {
    require_euclidean(model, "fourier_coefficient");
    require_positive(beta, "fourier_coefficient");
    const double a = model.stiffness(beta);
    return std::sqrt(2.0 * a / pi) * std::exp(1.0 / (8.0 * a)) * bessel_k_imag_scaled(rho, a, policy);
}

double spectral_propagator(double theta, double beta, const HyperbolicModel& model) {
    require_euclidean(model, "spectral_propagator");
    require_positive(beta, "spectral_propagator");
    const double inv_a = 1.0 / model.stiffness(beta);
    const auto desc = model.descriptor();
    const auto grid = LabelGrid::gaussian(inv_a);
    ZonalSeries series{desc, grid, {}, {}};
    series.plancherel.reserve(grid.labels.size());
    series.coeffs.reserve(grid.labels.size());
    for (double rho : grid.labels) {
        series.plancherel.push_back(desc.plancherel(rho));
        series.coeffs.push_back(std::exp(-0.5 * rho * rho * inv_a));
    }
    return zonal_synthesize(series, theta).value;
}

cplx spectral_propagator_rt(double theta, double tau, const HyperbolicModel& model) {
    model.validate();
    if (model.d % 2 == 0)
        throw UnsupportedMode("spectral_propagator_rt: real time needs the odd-d closed form");
    return closed_form_odd_rt(theta, tau, model);
}

double closed_form_odd(double theta, double beta, const HyperbolicModel& model) {
    require_euclidean(model, "closed_form_odd");
    require_positive(beta, "closed_form_odd");
    if (model.d % 2 == 0) throw DomainError("closed_form_odd: d must be odd");
    if (!(theta >= 0.0)) throw DomainError("closed_form_odd: Theta must be >= 0");
    return odd_closed_form<double>(theta, model.stiffness(beta), model.d);
}

cplx closed_form_odd_rt(double theta, double tau, const HyperbolicModel& model) {
    model.validate();
    require_positive(tau, "closed_form_odd_rt");
    if (model.d % 2 == 0) throw DomainError("closed_form_odd_rt: d must be odd");
    const cplx a = model.M * model.R * model.R / (cplx(0.0, 1.0) * model.hbar * tau);
    return odd_closed_form<cplx>(theta, a, model.d);
}

double closed_form_even(double theta, double beta, const HyperbolicModel& model, const EvaluationPolicy& policy) {
    require_euclidean(model, "closed_form_even");
    require_positive(beta, "closed_form_even");
    if (model.d % 2 != 0) throw DomainError("closed_form_even: d must be even");
    if (!(theta >= 0.0)) throw DomainError("closed_form_even: Theta must be >= 0");
    const double a = model.stiffness(beta);
    const int m = (model.d - 2) / 2;
    const Tower<double> tower(0.5 * a, m, 1, 1);
    const double sh = std::sinh(0.5 * theta);
    const double w0 = 2.0 * sh * sh;
    // cosh z = cosh Theta + s^2 turns dz / sqrt(cosh z - cosh Theta) into 2 ds / sinh z
    auto integrand = [&](double s) { return 2.0 * tower(w0 + s * s); };
    const double scale = std::min(1.0, 3.0 / std::sqrt(a));
    const auto r = integrate_semi_infinite(integrand, 0.0, scale, std::min(policy.rel_tol, 1e-12), 1e-300);
    const double pref = std::sqrt(2.0) * std::pow(a / (2.0 * pi), 1.5) * std::pow(-1.0 / (2.0 * pi), m);
    return pref * r.value;
}

double energy_shift(const HyperbolicModel& model) {
    if (!(model.R > 0.0) || !(model.M > 0.0) || !(model.hbar > 0.0))
        throw DomainError("energy_shift: R, M, hbar must be positive");
    return (model.d - 1.0) * (model.d - 1.0) * model.hbar * model.hbar / (8.0 * model.M * model.R * model.R);
}

LimitingValue limiting_relation(double rho, double z, long n) {
    if (!(z > 0.0)) throw DomainError("limiting_relation: z must be positive");
    if (n < 1) throw DomainError("limiting_relation: N must be >= 1");
    const double x = static_cast<double>(n) * z;
    EvaluationPolicy tight;
    tight.rel_tol = 1e-15;
    const double log_lambda =
        0.5 * std::log(2.0 * x / pi) + 1.0 / (8.0 * x) + std::log(bessel_k_imag_scaled(rho, x, tight));
    return {std::exp(static_cast<double>(n) * log_lambda), std::exp(-rho * rho / (2.0 * z))};
}

KernelOnAngle short_time_zonal_kernel(double beta, const HyperbolicModel& model) {
    require_euclidean(model, "short_time_zonal_kernel");
    require_positive(beta, "short_time_zonal_kernel");
    return {[beta, model](double t) { return short_time_kernel(t, beta, model); },
            cutoff_short(model.stiffness(beta), model.d)};
}

KernelOnAngle propagator_zonal_kernel(double beta, const HyperbolicModel& model) {
    require_euclidean(model, "propagator_zonal_kernel");
    require_positive(beta, "propagator_zonal_kernel");
    const double cutoff = cutoff_propagator(model.stiffness(beta), model.d);
    if (model.d % 2 == 1) return {[beta, model](double t) { return closed_form_odd(t, beta, model); }, cutoff};
    EvaluationPolicy p;
    p.rel_tol = 1e-12;
    return {[beta, model, p](double t) { return closed_form_even(t, beta, model, p); }, cutoff};
}

} // namespace lieprop
