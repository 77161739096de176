#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <span>
#include <vector>

namespace lieprop {

/// Neumaier-compensated accumulator. Results depend only on the order of add() calls.
template <class T>
class CompensatedSum {
public:
    void add(T x) {
        T t = sum_ + x;
        if constexpr (std::is_same_v<T, double>) {
            comp_ += (std::abs(sum_) >= std::abs(x)) ? (sum_ - t) + x : (x - t) + sum_;
        } else {
            comp_ += two_sum_err(sum_.real(), x.real(), t.real()) +
                     T(0, 1) * two_sum_err(sum_.imag(), x.imag(), t.imag());
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    static double two_sum_err(double a, double b, double s) {
        return (std::abs(a) >= std::abs(b)) ? (a - s) + b : (b - s) + a;
    }
    T sum_{};
    T comp_{};
};

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Cached 16-point rule, the panel rule used by the composite integrators.
const GaussRule& gauss_legendre_16();

/// Composite 16-point Gauss-Legendre rule on [a, b] with `panels` equal panels.
GaussRule composite_gauss_legendre(double a, double b, int panels);

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    int evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kKronrodNodes[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kronrod += kKronrodWeights[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
    }
    return Panel{a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7-15) quadrature of f over [a, b].
///
/// Panels with the largest error estimate are bisected until the summed estimate
/// drops below max(abs_tol, rel_tol * |I|). The final value is summed in left-to-right
/// panel order, so repeated calls give identical bits.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol = 1e-12, double abs_tol = 0.0,
                     int max_panels = 4000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Panel> work;
    std::vector<detail::Panel> done;
    const auto first = detail::gauss_kronrod_15(f, a, b);
    work.push(first);
    double total = first.value;
    double err = first.error;
    int panels = 1;
    while (true) {
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (err <= target || panels >= max_panels) break;
        const detail::Panel worst = work.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break; // interval at machine resolution
        work.pop();
        const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        work.push(left);
        work.push(right);
        ++panels;
    }
    while (!work.empty()) {
        done.push_back(work.top());
        work.pop();
    }
    std::sort(done.begin(), done.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    CompensatedSum<double> value;
    CompensatedSum<double> error;
    for (const auto& p : done) {
        value.add(p.value);
        error.add(p.error);
    }
    out.value = value.value();
    out.error = error.value();
    out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
    out.evaluations = 15 * (2 * panels - 1);
    return out;
}

/// Integral over [a, inf) as a sequence of adaptive panels [a, a+s], [a+s, a+3s], ...
/// with doubling widths. Stops once two consecutive panels contribute below tolerance;
/// the last panel's magnitude is added to the error as the tail bound.
template <class F>
QuadResult integrate_semi_infinite(F&& f, double a, double scale, double rel_tol = 1e-12,
                                   double abs_tol = 0.0, int max_blocks = 64) {
    QuadResult out;
    CompensatedSum<double> value;
    double err = 0.0;
    double lo = a;
    double width = scale;
    int quiet = 0;
    double last = 0.0;
    bool all_converged = true;
    for (int block = 0; block < max_blocks; ++block) {
        const auto r = integrate(f, lo, lo + width, rel_tol, abs_tol);
        value.add(r.value);
        err += r.error;
        all_converged = all_converged && r.converged;
        out.evaluations += r.evaluations;
        last = std::abs(r.value);
        const double target = std::max(abs_tol, rel_tol * std::abs(value.value()));
        quiet = (last <= target && block > 0) ? quiet + 1 : 0;
        lo += width;
        width *= 2.0;
        if (quiet >= 2) break;
    }
    out.value = value.value();
    out.error = err + last;
    out.converged = all_converged && quiet >= 2;
    return out;
}

} // namespace lieprop
