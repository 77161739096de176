#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "lieprop/quadrature.hpp"
#include "lieprop/specfun.hpp"
#include "lieprop/zonal.hpp"

using namespace lieprop;
using std::numbers::pi;

namespace {

// exp(kappa cos Theta) on S^2 has coefficients i_l(kappa) = sqrt(pi / 2 kappa) I_{l+1/2}(kappa).
KernelOnAngle fisher(double kappa) {
    return {[kappa](double t) { return std::exp(kappa * std::cos(t)); }, pi};
}

double fisher_coefficient(double kappa, int l) {
    // upward-unstable, so sum the defining series of i_l directly
    CompensatedSum<double> s;
    double term = std::pow(kappa, l);
    for (int k = 1; k <= 2 * l + 1; k += 2) term /= k;
    for (int j = 0; j < 200; ++j) {
        s.add(term);
        term *= 0.5 * kappa * kappa / ((j + 1.0) * (2.0 * l + 2.0 * j + 3.0));
    }
    return s.value();
}

} // namespace

TEST_SUITE("descriptors") {
    TEST_CASE("sphere measure has unit mass") {
        for (int d = 2; d <= 6; ++d) {
            const auto desc = GroupDescriptor::sphere(d);
            const auto r = integrate([&](double t) { return desc.measure(t); }, 0.0, pi, 1e-14);
            CHECK(std::abs(r.value - 1.0) < 1e-13);
        }
    }

    TEST_CASE("sphere dimensions of harmonic spaces") {
        const auto s2 = GroupDescriptor::sphere(3);
        for (int l = 0; l < 10; ++l) CHECK(s2.plancherel(l) == doctest::Approx(2 * l + 1).epsilon(1e-14));
        const auto s3 = GroupDescriptor::sphere(4);
        for (int l = 0; l < 10; ++l) CHECK(s3.plancherel(l) == doctest::Approx((l + 1) * (l + 1)).epsilon(1e-14));
        const auto s1 = GroupDescriptor::sphere(2);
        CHECK(s1.plancherel(0) == 1.0);
        CHECK(s1.plancherel(3) == 2.0);
    }

    TEST_CASE("conical plancherel reductions") {
        for (double rho : {0.3, 1.0, 2.0, 7.5}) {
            CHECK(conical_plancherel(3, rho) == doctest::Approx(rho * rho).epsilon(1e-12));
            CHECK(conical_plancherel(2, rho) == doctest::Approx(2 * rho * std::tanh(pi * rho)).epsilon(1e-12));
        }
        CHECK(conical_plancherel(4, 0.0) == 0.0);
    }

    TEST_CASE("two point angle") {
        const auto h = GroupDescriptor::hyperboloid(2);
        CHECK(two_point_angle(h, 1.0, 1.0, pi) == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(two_point_angle(h, 0.0, 0.7, 1.1) == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(two_point_angle(h, 0.4, 0.4, 0.0) == 0.0);
        const double law = std::acosh(std::cosh(0.5) * std::cosh(1.2) - std::sinh(0.5) * std::sinh(1.2) * std::cos(2.0));
        CHECK(two_point_angle(h, 0.5, 1.2, 2.0) == doctest::Approx(law).epsilon(1e-13));
        const auto s = GroupDescriptor::sphere(3);
        const double sl = std::acos(std::cos(0.5) * std::cos(1.2) + std::sin(0.5) * std::sin(1.2) * std::cos(2.0));
        CHECK(two_point_angle(s, 0.5, 1.2, 2.0) == doctest::Approx(sl).epsilon(1e-13));
        const auto e = GroupDescriptor::euclidean(3);
        CHECK(two_point_angle(e, 3.0, 4.0, 0.5 * pi) == doctest::Approx(5.0).epsilon(1e-14));
    }
}

TEST_SUITE("transform and synthesis") {
    TEST_CASE("zonal function is its own transform up to 1/d_l") {
        const auto s2 = GroupDescriptor::sphere(3);
        const KernelOnAngle k{[&](double t) { return s2.zonal(4, t); }, pi};
        const auto series = zonal_transform(k, s2, LabelGrid::discrete(8));
        for (int l = 0; l <= 8; ++l) {
            const double expected = (l == 4) ? 1.0 / 9.0 : 0.0;
            CHECK(std::abs(series.coeffs[l] - expected) < 1e-14);
        }
    }

    TEST_CASE("constant kernel") {
        const auto s2 = GroupDescriptor::sphere(3);
        const auto series = zonal_transform({[](double) { return 1.0; }, pi}, s2, LabelGrid::discrete(5));
        CHECK(std::abs(series.coeffs[0] - 1.0) < 1e-14);
        for (int l = 1; l <= 5; ++l) CHECK(std::abs(series.coeffs[l]) < 1e-14);
    }

    TEST_CASE("fisher kernel coefficients and roundtrip") {
        const auto s2 = GroupDescriptor::sphere(3);
        const double kappa = 2.0;
        const auto series = zonal_transform(fisher(kappa), s2, LabelGrid::discrete(40));
        for (int l = 0; l <= 12; ++l) CHECK(std::abs(series.coeffs[l] - fisher_coefficient(kappa, l)) < 1e-13);
        for (double t : {0.0, 0.3, 1.0, 2.2, pi}) {
            const auto s = zonal_synthesize(series, t);
            CHECK(std::abs(s.value - std::exp(kappa * std::cos(t))) < 1e-10);
            CHECK(s.truncation < 1e-10);
        }
    }

    TEST_CASE("single label synthesizes to d_l at the identity") {
        const auto s2 = GroupDescriptor::sphere(3);
        ZonalSeries s{s2, LabelGrid::discrete(6), {}, std::vector<double>(7, 0.0)};
        for (int l = 0; l <= 6; ++l) s.plancherel.push_back(s2.plancherel(l));
        s.coeffs[5] = 1.0;
        CHECK(zonal_synthesize(s, 0.0).value == doctest::Approx(11.0).epsilon(1e-14));
    }

    TEST_CASE("euclidean gaussian") {
        const auto e3 = GroupDescriptor::euclidean(3);
        const KernelOnAngle g{[](double r) { return std::exp(-0.5 * r * r); }, 12.0};
        const auto grid = LabelGrid::gaussian(1.0);
        const auto series = zonal_transform(g, e3, grid);
        for (std::size_t j = 0; j < grid.labels.size(); j += 17) {
            const double k = grid.labels[j];
            CHECK(std::abs(series.coeffs[j] - std::pow(2 * pi, 1.5) * std::exp(-0.5 * k * k)) < 1e-11);
        }
        for (double r : {0.0, 0.5, 1.7}) CHECK(std::abs(zonal_synthesize(series, r).value - std::exp(-0.5 * r * r)) < 1e-11);
    }

    TEST_CASE("hyperbolic coincidence value from gaussian moment") {
        // d = 3: synthesis at Theta = 0 of exp(-beta rho^2/2) is int rho^2 exp(-beta rho^2/2) / (2 pi^2)
        const auto h3 = GroupDescriptor::hyperboloid(3);
        const double beta = 1.0;
        const auto grid = LabelGrid::gaussian(beta);
        ZonalSeries s{h3, grid, {}, {}};
        for (double rho : grid.labels) {
            s.plancherel.push_back(h3.plancherel(rho));
            s.coeffs.push_back(std::exp(-0.5 * beta * rho * rho));
        }
        const double moment = std::sqrt(pi / 2) / (2 * pi * pi); // int rho^2 e^{-rho^2/2} = sqrt(pi/2)
        CHECK(zonal_synthesize(s, 0.0).value == doctest::Approx(moment).epsilon(1e-13));
    }
}

TEST_SUITE("coefficient algebra") {
    TEST_CASE("identity and powers") {
        const auto s2 = GroupDescriptor::sphere(3);
        const auto s = zonal_transform(fisher(1.5), s2, LabelGrid::discrete(15));
        ZonalSeries ones = s;
        std::fill(ones.coeffs.begin(), ones.coeffs.end(), 1.0);
        CHECK(series_convolve(s, ones).coeffs == s.coeffs);
        CHECK(nfold_power(s, 1).coeffs == s.coeffs);
        const auto sq = nfold_power(s, 2);
        const auto conv = series_convolve(s, s);
        for (std::size_t j = 0; j < s.coeffs.size(); ++j)
            CHECK(std::abs(sq.coeffs[j] - conv.coeffs[j]) <= 1e-13 * std::abs(conv.coeffs[j]));
        auto thrice = series_convolve(series_convolve(s, s), s);
        const auto p3 = nfold_power(s, 3);
        for (std::size_t j = 0; j < s.coeffs.size(); ++j)
            CHECK(std::abs(p3.coeffs[j] - thrice.coeffs[j]) <= 1e-13 * std::abs(thrice.coeffs[j]));
    }

    TEST_CASE("mismatched grids and non-positive coefficients") {
        const auto s2 = GroupDescriptor::sphere(3);
        const auto a = zonal_transform(fisher(1.0), s2, LabelGrid::discrete(5));
        const auto b = zonal_transform(fisher(1.0), s2, LabelGrid::discrete(6));
        CHECK_THROWS_AS(series_convolve(a, b), DomainError);
        auto neg = a;
        neg.coeffs[2] = -0.1;
        CHECK_THROWS_AS(nfold_power(neg, 2), DomainError);
        CHECK_THROWS_AS(nfold_power(a, 0), DomainError);
    }

    TEST_CASE("spectrum from slope") {
        for (double e : {0.0, 0.5, 2.0}) {
            auto lam = [e](double b) { return std::exp(-e * b) * (1.0 + 0.3 * b * b); };
            CHECK(std::abs(spectrum_from_slope(lam) - e) < 1e-8);
        }
        CHECK(std::abs(spectrum_from_slope([](double b) { return std::exp(-3.0 * b); }, {2.0}) - 6.0) < 1e-7);
        CHECK_THROWS_AS(spectrum_from_slope([](double b) { return 0.9 * std::exp(-b); }), DomainError);
    }
}

TEST_SUITE("orthogonality and convolution") {
    TEST_CASE("orthogonality on spheres") {
        for (int d : {2, 3, 4, 5}) {
            const auto desc = GroupDescriptor::sphere(d);
            for (int l = 0; l <= 10; ++l)
                for (int lp = 0; lp <= 10; ++lp) {
                    CAPTURE(d);
                    CAPTURE(l);
                    CAPTURE(lp);
                    CHECK(orthogonality_residual(l, lp, desc) < 1e-12);
                }
        }
        CHECK_THROWS_AS(orthogonality_residual(1, 1, GroupDescriptor::hyperboloid(3)), DomainError);
    }

    TEST_CASE("matrix form with a delta column") {
        Eigen::MatrixXd k1(3, 4);
        k1 << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
        const std::vector<double> w{0.5, 0.25, 2.0, 1.0};
        Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(4, 1);
        delta(2, 0) = 1.0 / w[2];
        const Eigen::MatrixXd out = grid_convolve(k1, w, delta);
        CHECK((out - k1.col(2)).norm() < 1e-15);
    }

    TEST_CASE("euclidean radial gaussians compose") {
        // s-wave heat kernels in R^3: K_t(r, r') = (4 pi t)^{-3/2} 2 pi int exp(-|x-x'|^2/4t) sin = closed form below
        auto heat = [](double t) {
            return [t](double r, double rp) {
                const double pref = 1.0 / (std::pow(4 * pi * t, 1.5)) * 4 * pi;
                const double a = std::exp(-(r - rp) * (r - rp) / (4 * t));
                const double b = std::exp(-(r + rp) * (r + rp) / (4 * t));
                return pref * t * (a - b) / (r * rp) ;
            };
        };
        const auto res = grid_convolve(heat(0.3), heat(0.2), 3, 0.8, 1.1, 12.0, 24);
        CHECK(std::abs(res.value - heat(0.5)(0.8, 1.1)) < 1e-12);
        CHECK(res.error < 1e-10);
    }

    TEST_CASE("convolution theorem on the two-sphere") {
        const auto s2 = GroupDescriptor::sphere(3);
        const auto k1 = fisher(1.2);
        const auto k2 = fisher(0.7);
        EvaluationPolicy tight;
        tight.rel_tol = 1e-12;
        // the label integrals share most abscissae, so memoize the convolved kernel
        std::map<double, double> cache;
        const KernelOnAngle k12{[&](double t) {
                                    auto [it, fresh] = cache.try_emplace(t, 0.0);
                                    if (fresh) it->second = grid_convolve(k1, k2, s2, t, tight).value;
                                    return it->second;
                                },
                                pi};
        EvaluationPolicy outer;
        outer.rel_tol = 1e-10;
        const auto direct = zonal_transform(k12, s2, LabelGrid::discrete(20), outer);
        const auto product = series_convolve(zonal_transform(k1, s2, LabelGrid::discrete(20)),
                                             zonal_transform(k2, s2, LabelGrid::discrete(20)));
        for (int l = 0; l <= 20; ++l) CHECK(std::abs(direct.coeffs[l] - product.coeffs[l]) < 1e-8);
    }

    TEST_CASE("geodesic convolution in flat space reproduces the heat semigroup") {
        for (int d : {2, 3}) {
            const auto e = GroupDescriptor::euclidean(d);
            auto heat = [d](double t) {
                return KernelOnAngle{[d, t](double r) { return std::pow(4 * pi * t, -0.5 * d) * std::exp(-r * r / (4 * t)); },
                                     12.0};
            };
            EvaluationPolicy p;
            p.rel_tol = 1e-10;
            for (double sep : {0.0, 0.6, 1.5}) {
                const auto r = grid_convolve(heat(0.25), heat(0.35), e, sep, p);
                CHECK(std::abs(r.value - heat(0.6).evaluator(sep)) < 1e-9);
            }
        }
    }
}
