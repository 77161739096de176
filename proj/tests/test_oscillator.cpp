#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "lieprop/oscillator.hpp"
#include "lieprop/quadrature.hpp"

using namespace lieprop;
using cplx = std::complex<double>;
using std::numbers::pi;

namespace {

OscillatorModel unit(int d) {
    OscillatorModel m;
    m.d = d;
    return m;
}

// Euclidean one-dimensional kernel written directly from its textbook form.
double mehler_ref(double x, double y, double beta) {
    const double s = std::sinh(beta), c = std::cosh(beta);
    return std::sqrt(1.0 / (2 * pi * s)) * std::exp(-((x * x + y * y) * c - 2 * x * y) / (2 * s));
}

// s-wave in three dimensions: odd extension of r R(r) on the line.
double image_s_wave(double r2, double r1, double beta) {
    return (mehler_ref(r2, r1, beta) - mehler_ref(r2, -r1, beta)) / (r1 * r2);
}

cplx mehler_ref_rt(double x, double y, double phi) {
    const cplx i(0.0, 1.0);
    const double s = std::sin(phi);
    return std::sqrt(1.0 / (2 * pi * i * s)) * std::exp(i * ((x * x + y * y) * std::cos(phi) - 2 * x * y) / (2 * s));
}

} // namespace

TEST_SUITE("labels") {
    TEST_CASE("channel indices") {
        const auto ch = ChannelLabel::make(2, 3);
        CHECK(ch.bessel_index() == 2.5);
        CHECK(ch.J() == -1.75);
        CHECK(-2 * ch.J() - 1 == ch.bessel_index());
        CHECK(ChannelLabel::make(0, 2).bessel_index() == 0.0);
        CHECK_THROWS_AS(ChannelLabel::make(-1, 3), DomainError);
    }

    TEST_CASE("slicing angles") {
        const auto a = slicing_angles(1.0, 0.1, 10);
        CHECK(a.per_step == doctest::Approx(0.100167421161560).epsilon(1e-13));
        CHECK(a.total == doctest::Approx(1.00167421161560).epsilon(1e-13));
        CHECK_THROWS_AS(slicing_angles(1.0, 1.0, 4), DomainError);
        CHECK_THROWS_AS(slicing_angles(2.0, 0.7, 4), DomainError);
    }

    TEST_CASE("eta") { CHECK(eta_of_r(2.0, unit(3)) == 2.0); }

    TEST_CASE("harmonic dimensions") {
        CHECK(harmonic_dimension(3, 3) == 7.0);
        CHECK(harmonic_dimension(0, 2) == 1.0);
        CHECK(harmonic_dimension(5, 2) == 2.0);
        CHECK(harmonic_dimension(2, 4) == 9.0);
        // dim of degree-l harmonics in 5 variables: (l+1)(l+2)(2l+3)/6
        CHECK(harmonic_dimension(3, 5) == doctest::Approx(4.0 * 5.0 * 9.0 / 6.0));
    }
}

TEST_SUITE("v-function") {
    TEST_CASE("group-angle and rotation-angle forms agree") {
        for (double J : {-0.75, -1.25, -2.0})
            for (double phi : {0.3, 1.1, 2.5}) {
                CHECK(v_matrix_element_identity(J, 0.7, 1.3, phi) < 1e-12);
                CHECK(v_matrix_element_identity_euclidean(J, 0.7, 1.3, phi) < 1e-12);
            }
    }

    TEST_CASE("singular angle") {
        CHECK_THROWS_AS(v_function_rt({-0.75, 1.0, 1.0, 0.0}), DomainError);
        CHECK_THROWS_AS(v_function_rt({-0.75, 1.0, 1.0, pi}), DomainError);
        CHECK_THROWS_AS(v_function({-0.25, 1.0, 1.0, 0.5}), DomainError);
    }

    TEST_CASE("Euclidean value against the unscaled expression") {
        const double J = -1.25, e1 = 0.4, e2 = 1.7, s = 0.6;
        const double nu = -2 * J - 1;
        const double x = 2 * std::sqrt(e1 * e2) / std::sinh(s);
        const double direct = std::exp(-(e1 + e2) / std::tanh(s)) * std::cyl_bessel_i(nu, x) / std::sinh(s);
        CHECK(v_function({J, e1, e2, s}) == doctest::Approx(direct).epsilon(1e-13));
    }

    TEST_CASE("Euclidean value is the continuation of the real-time one") {
        // phi = -i sigma; compare by evaluating the real-time formula at complex angle by hand
        const double J = -0.75, e1 = 0.5, e2 = 2.0, s = 0.8;
        const cplx i(0.0, 1.0);
        const cplx phi = -i * s;
        const cplx sn = std::sin(phi);
        const double nu = -2 * J - 1;
        const cplx z = -2.0 * i * std::sqrt(e1 * e2) / sn;
        // z is real here: 2 sqrt(e1 e2) / sinh s
        const cplx v = -i / sn * std::exp(i * (e1 + e2) * std::cos(phi) / sn) * std::cyl_bessel_i(nu, z.real());
        CHECK(std::abs(z.imag()) < 1e-14);
        CHECK(std::abs(v.imag()) < 1e-14);
        CHECK(v_function({J, e1, e2, s}) == doctest::Approx(v.real()).epsilon(1e-13));
    }

    TEST_CASE("semigroup in the angle") {
        for (double J : {-0.75, -1.25, -2.0})
            for (double a : {0.5, 2.0})
                for (double b : {0.5, 1.0}) CHECK(v_semigroup_residual(J, a, b, 0.2, 0.5) < 1e-10);
    }
}

TEST_SUITE("integral identities") {
    TEST_CASE("Gaussian Bessel-product integral") {
        for (double lam : {0.0, 0.5, 1.5, 2.5})
            for (double a : {0.5, 1.5})
                for (double beta : {1.0, 2.0}) CHECK(weber_residual(lam, a, 1.0, beta) < 1e-11);
        CHECK_THROWS_AS(weber_residual(0.5, 1.0, 1.0, 0.0), DomainError);
        CHECK_THROWS_AS(weber_residual(0.5, 1.0, 1.0, -1.0), DomainError);
    }

    TEST_CASE("plane-wave expansion") {
        for (int d : {3, 4, 5})
            for (cplx z : {cplx(0.5, 0.0), cplx(-3.0, 1.0), cplx(0.0, 5.0), cplx(2.0, -4.0)})
                for (double c : {-1.0, -0.3, 0.4, 1.0}) CHECK(plane_wave_expansion_residual(z, c, d, 40) < 1e-11);
        for (double c : {-0.6, 0.9}) CHECK(plane_wave_expansion_residual(cplx(3.0, 2.0), c, 2, 40) < 1e-11);
        // truncation shows up once l_max is too small
        CHECK(plane_wave_expansion_residual(cplx(5.0, 0.0), 0.5, 3, 3) > 1e-3);
    }
}

TEST_SUITE("radial propagator") {
    TEST_CASE("reference value") {
        const auto ch = ChannelLabel::make(0, 3);
        CHECK(radial_propagator(ch, 1.2, 0.8, 1.0, unit(3)) == doctest::Approx(0.17823271715653761).epsilon(1e-13));
    }

    TEST_CASE("s-wave against the image construction") {
        const auto ch = ChannelLabel::make(0, 3);
        std::mt19937_64 gen(7);
        std::uniform_real_distribution<double> rr(0.1, 3.0), bb(0.05, 3.0);
        for (int k = 0; k < 40; ++k) {
            const double r2 = rr(gen), r1 = rr(gen), beta = bb(gen);
            const double ref = image_s_wave(r2, r1, beta);
            CHECK(std::abs(radial_propagator(ch, r2, r1, beta, unit(3)) - ref) < 1e-10 * std::abs(ref));
        }
    }

    TEST_CASE("spectral sum over radial eigenfunctions") {
        for (int d : {2, 3, 4})
            for (int l : {0, 1, 3}) {
                const auto m = unit(d);
                const auto ch = ChannelLabel::make(l, d);
                const double r2 = 0.9, r1 = 1.4, beta = 0.8;
                double sum = 0.0;
                for (int n = 0; n < 80; ++n)
                    sum += std::exp(-channel_energy(n, ch, m) * beta) * radial_eigenfunction(n, ch, r2, m) *
                           radial_eigenfunction(n, ch, r1, m);
                CAPTURE(d);
                CAPTURE(l);
                CHECK(radial_propagator(ch, r2, r1, beta, m) == doctest::Approx(sum).epsilon(1e-12));
            }
    }

    TEST_CASE("eigenfunctions are orthonormal") {
        const auto m = unit(3);
        const auto ch = ChannelLabel::make(1, 3);
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                const auto q = integrate([&](double r) {
                    return r * r * radial_eigenfunction(a, ch, r, m) * radial_eigenfunction(b, ch, r, m);
                }, 0.0, 12.0, 1e-13);
                CHECK(std::abs(q.value - (a == b ? 1.0 : 0.0)) < 1e-12);
            }
    }

    TEST_CASE("semigroup in beta") {
        for (int l : {0, 1}) {
            const auto m = unit(3);
            const auto ch = ChannelLabel::make(l, 3);
            for (double r2 : {0.5, 1.3})
                for (double r1 : {0.7, 2.0}) {
                    const auto q = integrate([&](double r) {
                        return r * r * radial_propagator(ch, r2, r, 0.4, m) * radial_propagator(ch, r, r1, 0.7, m);
                    }, 0.0, 12.0, 1e-13);
                    const double exact = radial_propagator(ch, r2, r1, 1.1, m);
                    CHECK(std::abs(q.value - exact) < 1e-10 * exact);
                }
        }
    }

    TEST_CASE("large-beta slope is the channel ground energy") {
        for (int d : {2, 3})
            for (int l : {0, 1, 2}) {
                const auto m = unit(d);
                const auto ch = ChannelLabel::make(l, d);
                const double slope = (std::log(radial_propagator(ch, 1.0, 1.2, 12.0, m)) -
                                      std::log(radial_propagator(ch, 1.0, 1.2, 8.0, m))) / 4.0;
                CHECK(std::abs(-slope - (l + 0.5 * d)) < 1e-3 * (l + 0.5 * d));
            }
    }

    TEST_CASE("origin limit") {
        const auto m = unit(3);
        const auto s = ChannelLabel::make(0, 3);
        CHECK(radial_propagator(s, 0.0, 0.9, 0.5, m) == doctest::Approx(radial_propagator(s, 1e-7, 0.9, 0.5, m)).epsilon(1e-10));
        CHECK(radial_propagator(ChannelLabel::make(2, 3), 0.0, 0.9, 0.5, m) == 0.0);
    }

    TEST_CASE("weak-binding limit gives the free kernel") {
        auto m = unit(3);
        m.omega = 1e-5;
        for (int l : {0, 2}) {
            const auto ch = ChannelLabel::make(l, 3);
            const double free = free_radial_kernel(ch, 1.1, 0.6, 0.9, 1.0, 1.0);
            CHECK(radial_propagator(ch, 1.1, 0.6, 0.9, m) == doctest::Approx(free).epsilon(1e-8));
        }
    }

    TEST_CASE("real time against the image construction") {
        auto m = unit(3);
        const auto ch = ChannelLabel::make(0, 3);
        for (double tau : {0.3, 1.7, 2.9}) {
            const double r2 = 1.1, r1 = 0.7;
            const cplx ref = (mehler_ref_rt(r2, r1, tau) - mehler_ref_rt(r2, -r1, tau)) / (r1 * r2);
            CHECK(std::abs(radial_propagator_rt(ch, r2, r1, tau, m) - ref) < 1e-12 * std::abs(ref));
        }
        CHECK_THROWS_AS(radial_propagator_rt(ch, 1.0, 1.0, pi, m), DomainError);
        m.mode = Mode::real_time;
        CHECK_THROWS_AS(radial_propagator(ch, 1.0, 1.0, 0.5, m), UnsupportedMode);
    }
}

TEST_SUITE("short-time kernels") {
    TEST_CASE("both forms approach the exact kernel at second order in the step") {
        const auto m = unit(3);
        const auto ch = ChannelLabel::make(1, 3);
        for (double beta : {0.05, 0.1}) {
            const double exact = radial_propagator(ch, 1.0, 1.05, beta, m);
            const double e84 = std::abs(short_time_radial(ch, 1.0, 1.05, beta, m) / exact - 1.0);
            const double e93 = std::abs(short_time_radial_v(ch, 1.0, 1.05, beta, m) / exact - 1.0);
            CHECK(e84 < 2.0 * beta * beta);
            CHECK(e93 < 2.0 * beta * beta);
        }
    }

    TEST_CASE("v form is the exact kernel at the slicing angle") {
        const auto m = unit(2);
        const auto ch = ChannelLabel::make(0, 2);
        const double beta = 0.3;
        CHECK(short_time_radial_v(ch, 0.8, 1.1, beta, m) ==
              doctest::Approx(radial_propagator(ch, 0.8, 1.1, std::asinh(beta), m)).epsilon(1e-14));
    }

    TEST_CASE("direct expression") {
        const auto m = unit(3);
        const auto ch = ChannelLabel::make(1, 3);
        const double r = 0.9, rp = 1.2, beta = 0.2;
        const double c = 1.0 / beta;
        const double direct = c / std::sqrt(r * rp) * std::exp(-0.5 * c * (1 + 0.5 * beta * beta) * (r * r + rp * rp)) *
                              std::cyl_bessel_i(1.5, c * r * rp);
        CHECK(short_time_radial(ch, r, rp, beta, m) == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_SUITE("full propagator") {
    TEST_CASE("partial-wave sum reproduces the product of one-dimensional kernels") {
        std::mt19937_64 gen(11);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int d : {2, 3, 4})
            for (double beta : {0.3, 1.0}) {
                const auto m = unit(d);
                for (int k = 0; k < 5; ++k) {
                    std::vector<double> a(d), b(d);
                    for (int i = 0; i < d; ++i) {
                        a[i] = u(gen);
                        b[i] = u(gen);
                    }
                    double ref = 1.0;
                    for (int i = 0; i < d; ++i) ref *= mehler_ref(a[i], b[i], beta);
                    const auto s = full_propagator(a, b, beta, m, 40);
                    CAPTURE(d);
                    CHECK(std::abs(s.value - ref) < 1e-10 * ref + 1e-15);
                    CHECK(s.truncation < 1e-12);
                    CHECK(mehler_kernel(a[0], b[0], beta, m) == doctest::Approx(mehler_ref(a[0], b[0], beta)).epsilon(1e-13));
                }
            }
    }

    TEST_CASE("dimension mismatch") {
        const std::array<double, 2> a{1, 0};
        const std::array<double, 3> b{1, 0, 0};
        CHECK_THROWS_AS(full_propagator(a, b, 1.0, unit(3), 10), DomainError);
    }
}

TEST_SUITE("spectrum and Green function") {
    TEST_CASE("levels") {
        CHECK(spectrum(0, unit(3)) == 1.5);
        CHECK(spectrum(4, unit(2)) == 5.0);
        const auto lv = level_decomposition(4);
        REQUIRE(lv.size() == 3);
        CHECK(lv[0].l == 4);
        CHECK(lv[2].l == 0);
        CHECK(lv[2].radial == 2);
        for (const auto& c : level_decomposition(5))
            CHECK(channel_energy(c.radial, ChannelLabel::make(c.l, 3), unit(3)) == spectrum(5, unit(3)));
    }

    TEST_CASE("reference values") {
        // independent evaluation: eigenfunction sum beyond a cut plus the one-dimensional kernel near zero
        struct Ref {
            double r1, r2, value;
        };
        const Ref refs[] = {{0.8, 1.2, 0.26944569130622473}, {1.0, 1.0, 0.5470492876327369},
                           {0.5, 1.5, 0.09920948560824225}};
        const auto ch = ChannelLabel::make(0, 3);
        for (const auto& r : refs) {
            const auto g = radial_green(ch, r.r2, r.r1, -1.0, unit(3));
            CHECK(g.value == doctest::Approx(r.value).epsilon(1e-10));
        }
    }

    TEST_CASE("Green function from the eigenfunction expansion") {
        // G = sum_n R_n R_n / (E_n - E)
        const auto m = unit(2);
        const auto ch = ChannelLabel::make(1, 2);
        const double r2 = 0.7, r1 = 1.6, e = 0.5;
        double sum = 0.0;
        for (int n = 0; n < 4000; ++n) {
            const double den = channel_energy(n, ch, m) - e;
            sum += radial_eigenfunction(n, ch, r2, m) * radial_eigenfunction(n, ch, r1, m) / den;
        }
        CHECK(radial_green(ch, r2, r1, e, m).value == doctest::Approx(sum).epsilon(1e-4));
    }

    TEST_CASE("Green function just below the ground level") {
        const auto m = unit(3);
        const auto ch = ChannelLabel::make(0, 3);
        const double r2 = 1.2, r1 = 0.8;
        for (double e : {1.0, 1.4, 1.49, 1.4999}) {
            double sum = 0.0;
            for (int n = 0; n < 4000; ++n)
                sum += radial_eigenfunction(n, ch, r2, m) * radial_eigenfunction(n, ch, r1, m) / (channel_energy(n, ch, m) - e);
            CAPTURE(e);
            CHECK(radial_green(ch, r2, r1, e, m).value == doctest::Approx(sum).epsilon(1e-5));
        }
    }

    TEST_CASE("energy at or above the ground level is refused") {
        const auto ch = ChannelLabel::make(0, 3);
        CHECK_THROWS_AS(radial_green(ch, 1.0, 1.0, 1.5, unit(3)), DomainError);
        CHECK_THROWS_AS(radial_green(ch, 1.0, 1.0, 3.0, unit(3)), DomainError);
    }
}
