#include "checks.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "lieprop/hyperbolic.hpp"
#include "lieprop/oscillator.hpp"
#include "lieprop/quadrature.hpp"
#include "lieprop/su11.hpp"
#include "lieprop/zonal.hpp"

namespace lieprop::cli {

using json = nlohmann::ordered_json;

namespace {

CheckRecord record(std::string name, json params, double residual, double tol) {
    return {std::move(name), std::move(params), residual, tol, residual < tol};
}

std::vector<CheckRecord> weber() {
    std::vector<CheckRecord> out;
    for (double lam : {0.5, 1.5, 2.5})
        for (double a : {0.5, 1.0, 1.5})
            for (double b : {0.5, 1.0, 1.5})
                for (double beta : {1.0, 2.0})
                    out.push_back(record("weber", {{"lambda", lam}, {"a", a}, {"b", b}, {"beta", beta}},
                                         weber_residual(lam, a, b, beta), 1e-9));
    return out;
}

std::vector<CheckRecord> vsemigroup() {
    std::vector<CheckRecord> out;
    for (double J : {-0.75, -1.25, -2.0})
        for (double e2 : {0.5, 1.0, 2.0})
            for (double e1 : {0.5, 1.0, 2.0})
                for (double s1 : {0.2, 0.5})
                    for (double s2 : {0.2, 0.5})
                        out.push_back(record("vsemigroup",
                                             {{"J", J}, {"eta2", e2}, {"eta1", e1}, {"sigma1", s1}, {"sigma2", s2}},
                                             v_semigroup_residual(J, e2, e1, s1, s2), 1e-8));
    return out;
}

std::vector<CheckRecord> ortho() {
    std::vector<CheckRecord> out;
    const auto s2 = GroupDescriptor::sphere(3);
    for (int l = 0; l <= 10; ++l)
        for (int lp = l; lp <= 10; ++lp)
            out.push_back(record("ortho", {{"d", 3}, {"l", l}, {"l_prime", lp}}, orthogonality_residual(l, lp, s2), 1e-12));
    return out;
}

std::vector<CheckRecord> commutators() {
    std::vector<CheckRecord> out;
    const OscillatorModel model;
    for (auto [d, n] : {std::pair{1, 8}, std::pair{2, 8}, std::pair{3, 5}}) {
        const auto r = build_realization(d, n, model);
        const json p{{"d", d}, {"n_max", n}};
        out.push_back(record("commutators.algebra", p, commutator_residual(r), 1e-11));
        out.push_back(record("commutators.heisenberg", p, heisenberg_residual(r), 1e-11));
        out.push_back(record("commutators.hamiltonian", p, hamiltonian_j3_residual(r), 1e-11));
        out.push_back(record("commutators.kplus", p, kplus_residual(r), 1e-11));
    }
    return out;
}

std::vector<CheckRecord> casimir() {
    std::vector<CheckRecord> out;
    const OscillatorModel model;
    for (auto [d, n] : {std::pair{2, 8}, std::pair{3, 5}})
        out.push_back(record("casimir.matrix", {{"d", d}, {"n_max", n}},
                             casimir_relation_residual(build_realization(d, n, model)), 1e-11));
    for (int d : {2, 3, 4})
        for (int l = 0; l <= 5; ++l)
            out.push_back(record("casimir.channel", {{"d", d}, {"l", l}},
                                 std::abs(channel_casimir_eigen(l, d).discrepancy()), 1e-12));
    return out;
}

std::vector<CheckRecord> limit(long n) {
    std::vector<CheckRecord> out;
    for (double rho : {0.5, 1.0})
        for (double z : {0.5, 1.0}) {
            const auto v = limiting_relation(rho, z, n);
            out.push_back(record("limit", {{"rho", rho}, {"z", z}, {"N", n}, {"value", v.value}, {"target", v.target}},
                                 std::abs(v.value - v.target), 1e-3));
        }
    return out;
}

std::vector<CheckRecord> planewave() {
    std::vector<CheckRecord> out;
    using cplx = std::complex<double>;
    const cplx zs[] = {{0.5, 0.0}, {5.0, 0.0}, {-5.0, 0.0}, {0.0, 5.0}, {3.0, 4.0}, {-2.0, -1.5}};
    for (int d : {2, 3, 5})
        for (const cplx z : zs)
            for (double c : {-1.0, -0.5, 0.0, 0.7, 1.0})
                out.push_back(record("planewave", {{"d", d}, {"z_re", z.real()}, {"z_im", z.imag()}, {"cos_gamma", c}, {"l_max", 40}},
                                     plane_wave_expansion_residual(z, c, d, 40), d == 2 ? 1e-8 : 1e-10));
    return out;
}

std::vector<CheckRecord> semigroup() {
    std::vector<CheckRecord> out;
    for (int d : {2, 3}) {
        HyperbolicModel m;
        m.d = d;
        EvaluationPolicy p;
        p.rel_tol = 1e-7;
        const auto k = propagator_zonal_kernel(0.5, m);
        for (double theta : {0.0, 1.0, 3.0}) {
            const double conv = grid_convolve(k, k, m.descriptor(), theta, p).value;
            const double exact = (d % 2) ? closed_form_odd(theta, 1.0, m) : closed_form_even(theta, 1.0, m);
            out.push_back(record("semigroup.hyperbolic", {{"d", d}, {"theta", theta}, {"beta1", 0.5}, {"beta2", 0.5}},
                                 std::abs(conv - exact) / exact, 1e-6));
        }
    }
    OscillatorModel m;
    for (int l : {0, 1}) {
        const auto ch = ChannelLabel::make(l, 3);
        for (double r2 : {0.5, 1.3})
            for (double r1 : {0.7, 2.0}) {
                const auto q = integrate([&](double r) {
                    return r * r * radial_propagator(ch, r2, r, 0.25, m) * radial_propagator(ch, r, r1, 0.25, m);
                }, 0.0, 12.0, 1e-13);
                const double exact = radial_propagator(ch, r2, r1, 0.5, m);
                out.push_back(record("semigroup.oscillator",
                                     {{"d", 3}, {"l", l}, {"r2", r2}, {"r1", r1}, {"beta1", 0.25}, {"beta2", 0.25}},
                                     std::abs(q.value - exact) / exact, 1e-8));
            }
    }
    return out;
}

} // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"weber", "vsemigroup", "ortho", "commutators",
                                                "casimir", "limit", "planewave", "semigroup"};
    return names;
}

std::vector<CheckRecord> run_check(const std::string& name, const CheckOptions& options) {
    if (name == "weber") return weber();
    if (name == "vsemigroup") return vsemigroup();
    if (name == "ortho") return ortho();
    if (name == "commutators") return commutators();
    if (name == "casimir") return casimir();
    if (name == "limit") return limit(options.limit_n);
    if (name == "planewave") return planewave();
    if (name == "semigroup") return semigroup();
    throw std::invalid_argument("unknown check '" + name + "'");
}

json to_json(const std::vector<CheckRecord>& records) {
    auto arr = json::array();
    for (const auto& r : records)
        arr.push_back({{"name", r.name}, {"parameters", r.parameters}, {"residual", r.residual},
                       {"tolerance", r.tolerance}, {"pass", r.pass}});
    return arr;
}

} // namespace lieprop::cli
