#include "lieprop/quadrature.hpp"

#include <numbers>
#include <stdexcept>

namespace lieprop {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const GaussRule& gauss_legendre_16() {
    static const GaussRule rule = gauss_legendre(16);
    return rule;
}

GaussRule composite_gauss_legendre(double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be positive");
    const auto& base = gauss_legendre_16();
    GaussRule out;
    out.nodes.reserve(16 * panels);
    out.weights.reserve(16 * panels);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double c = lo + 0.5 * h;
        for (std::size_t j = 0; j < base.nodes.size(); ++j) {
            out.nodes.push_back(c + 0.5 * h * base.nodes[j]);
            out.weights.push_back(0.5 * h * base.weights[j]);
        }
    }
    return out;
}

} // namespace lieprop
