// lieprop: evaluate propagators, run consistency checks and slicing convergence studies.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "lieprop/hyperbolic.hpp"
#include "lieprop/oscillator.hpp"
#include "lieprop/slicer.hpp"
#include "table.hpp"

using namespace lieprop;
using lieprop::cli::Cell;
using lieprop::cli::Table;

namespace {

enum Exit { kPass = 0, kTolerance = 1, kUsage = 2 };

struct Options {
    int d = 3;
    double M = 1.0, hbar = 1.0, omega = 1.0, R = 1.0;
    std::optional<std::string> beta, tau, theta, r1, r2, x1, x2, energy, n, n_list;
    int l = 0;
    int grid = 200;
    int l_max = 40;
    std::optional<double> tol;
    std::string out;
    std::string format = "csv";
    std::string method = "both";
    std::string scenario = "oscillator-l0";
    double rho = 1.0, z = 1.0;
    // subcommand positionals
    std::string oscillator_kind;
    std::string check_name;
};

// "a:b:step" (inclusive), "a..b" (integers), "a,b,c" or a single number.
std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const long a = std::stol(text.substr(0, dots)), b = std::stol(text.substr(dots + 2));
        if (b < a) throw std::invalid_argument("empty integer range '" + text + "'");
        for (long k = a; k <= b; ++k) out.push_back(static_cast<double>(k));
        return out;
    }
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        for (std::string item; std::getline(ss, item, ':');) parts.push_back(std::stod(item));
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
            throw std::invalid_argument("range must be start:stop:step with step > 0, got '" + text + "'");
        const long count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
        for (long k = 0; k < count; ++k) out.push_back(parts[0] + k * parts[2]);
        return out;
    }
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw std::invalid_argument("no values in '" + text + "'");
    return out;
}

std::vector<long> parse_counts(const std::string& text) {
    std::vector<long> out;
    for (double v : parse_values(text)) {
        if (v < 1 || v != std::floor(v)) throw std::invalid_argument("counts must be positive integers");
        out.push_back(static_cast<long>(v));
    }
    return out;
}

double single(const std::optional<std::string>& v, double fallback) {
    if (!v) return fallback;
    const auto vals = parse_values(*v);
    if (vals.size() != 1) throw std::invalid_argument("expected a single value, got '" + *v + "'");
    return vals.front();
}

void emit_text(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + o.out + "'");
    f << text;
}

void emit(const Options& o, const Table& t) {
    std::ostringstream ss;
    if (o.format == "json") ss << t.to_json().dump(2) << "\n";
    else t.write_csv(ss);
    emit_text(o, ss.str());
}

HyperbolicModel hyperbolic_model(const Options& o) {
    HyperbolicModel m;
    m.d = o.d;
    m.R = o.R;
    m.M = o.M;
    m.hbar = o.hbar;
    m.mode = o.tau ? Mode::real_time : Mode::euclidean;
    m.validate();
    return m;
}

OscillatorModel oscillator_model(const Options& o) {
    OscillatorModel m;
    m.d = o.d;
    m.M = o.M;
    m.omega = o.omega;
    m.hbar = o.hbar;
    m.validate();
    return m;
}

int cmd_hyperbolic(const Options& o) {
    auto m = hyperbolic_model(o);
    const auto thetas = parse_values(o.theta.value_or("0:3:0.1"));
    const bool odd = m.d % 2 == 1;
    const auto& meth = o.method;
    if (meth != "both" && meth != "spectral" && meth != "closed" && meth != "odd" && meth != "even")
        throw std::invalid_argument("method must be one of both, spectral, closed, odd, even");
    if ((meth == "odd" && !odd) || (meth == "even" && odd))
        throw DomainError("method '" + meth + "' does not match the parity of d = " + std::to_string(m.d));

    Table t;
    if (o.tau) {
        if (meth == "spectral" && !odd) throw UnsupportedMode("real-time propagator is available for odd d only");
        t.columns = {"theta", "tau", "propagator_re", "propagator_im"};
        for (double tau : parse_values(*o.tau))
            for (double th : thetas) {
                const auto v = odd ? closed_form_odd_rt(th, tau, m) : spectral_propagator_rt(th, tau, m);
                t.add({th, tau, v.real(), v.imag()});
            }
        emit(o, t);
        return kPass;
    }

    const auto betas = parse_values(o.beta.value_or("1"));
    const auto closed = [&](double th, double b) { return odd ? closed_form_odd(th, b, m) : closed_form_even(th, b, m); };
    if (meth == "spectral") {
        t.columns = {"theta", "beta", "spectral_value"};
        for (double b : betas)
            for (double th : thetas) t.add({th, b, spectral_propagator(th, b, m)});
    } else if (meth != "both") {
        t.columns = {"theta", "beta", "closed_form_value"};
        for (double b : betas)
            for (double th : thetas) t.add({th, b, closed(th, b)});
    } else {
        t.columns = {"theta", "beta", "spectral_value", "closed_form_value", "abs_diff"};
        double worst = 0.0;
        for (double b : betas)
            for (double th : thetas) {
                const double s = spectral_propagator(th, b, m), c = closed(th, b);
                worst = std::max(worst, std::abs(s - c));
                t.add({th, b, s, c, std::abs(s - c)});
            }
        emit(o, t);
        const double tol = o.tol.value_or(odd ? 1e-6 : 1e-4);
        if (worst >= tol) {
            std::cerr << "max |spectral - closed| = " << worst << " exceeds tolerance " << tol << "\n";
            return kTolerance;
        }
        return kPass;
    }
    emit(o, t);
    return kPass;
}

std::vector<double> point(const std::optional<std::string>& text, std::vector<double> fallback, int d) {
    auto v = text ? parse_values(*text) : std::move(fallback);
    v.resize(static_cast<std::size_t>(d), 0.0);
    if (text && parse_values(*text).size() != static_cast<std::size_t>(d))
        throw std::invalid_argument("points need exactly d components");
    return v;
}

int cmd_oscillator(const Options& o) {
    const auto m = oscillator_model(o);
    Table t;
    const auto& kind = o.oscillator_kind;
    if (kind == "spectrum") {
        t.columns = {"n", "energy", "degeneracy"};
        for (double nv : parse_values(o.n.value_or("0..5"))) {
            const int n = static_cast<int>(nv);
            double deg = 0.0;
            if (m.d == 1) deg = 1.0;
            else
                for (const auto& c : level_decomposition(n)) deg += harmonic_dimension(c.l, m.d);
            t.add({static_cast<long>(n), spectrum(n, m), deg});
        }
    } else if (kind == "radial") {
        const auto ch = ChannelLabel::make(o.l, m.d);
        const auto r2s = parse_values(o.r2.value_or("0.1:3:0.1"));
        const double r1 = single(o.r1, 1.0);
        if (o.tau) {
            t.columns = {"r2", "r1", "tau", "radial_kernel_re", "radial_kernel_im"};
            for (double tau : parse_values(*o.tau))
                for (double r2 : r2s) {
                    const auto v = radial_propagator_rt(ch, r2, r1, tau, m);
                    t.add({r2, r1, tau, v.real(), v.imag()});
                }
        } else {
            t.columns = {"r2", "r1", "beta", "radial_kernel"};
            for (double b : parse_values(o.beta.value_or("0.7")))
                for (double r2 : r2s) t.add({r2, r1, b, radial_propagator(ch, r2, r1, b, m)});
        }
    } else if (kind == "full") {
        if (o.tau) throw UnsupportedMode("full propagator: Euclidean mode only");
        if (m.d < 2) throw DomainError("full propagator: partial waves need d >= 2");
        const auto a = point(o.x2, {0.6, 0.8}, m.d);
        const auto b = point(o.x1, {1.0}, m.d);
        t.columns = {"beta", "partial_wave_sum", "truncation", "mehler_product", "abs_diff"};
        double worst = 0.0;
        for (double beta : parse_values(o.beta.value_or("0.5"))) {
            const auto s = full_propagator(a, b, beta, m, o.l_max);
            double ref = 1.0;
            for (int i = 0; i < m.d; ++i) ref *= mehler_kernel(a[i], b[i], beta, m);
            worst = std::max(worst, std::abs(s.value - ref));
            t.add({beta, s.value, s.truncation, ref, std::abs(s.value - ref)});
        }
        emit(o, t);
        const double tol = o.tol.value_or(1e-8);
        return worst < tol ? kPass : kTolerance;
    } else if (kind == "green") {
        const auto ch = ChannelLabel::make(o.l, m.d);
        const double r1 = single(o.r1, 0.8);
        const auto r2s = parse_values(o.r2.value_or("1.2"));
        EvaluationPolicy p;
        if (o.tol) p.rel_tol = *o.tol;
        t.columns = {"energy", "r2", "r1", "green_value", "error_estimate"};
        for (double e : parse_values(o.energy.value_or("-1")))
            for (double r2 : r2s) {
                const auto g = radial_green(ch, r2, r1, e, m, p);
                t.add({e, r2, r1, g.value, g.error});
            }
    } else {
        throw std::invalid_argument("oscillator needs one of radial, full, spectrum, green");
    }
    emit(o, t);
    return kPass;
}

int cmd_check(const Options& o) {
    cli::CheckOptions co;
    if (o.n_list) co.limit_n = parse_counts(*o.n_list).back();
    const auto records = cli::run_check(o.check_name, co);
    bool all = true;
    for (const auto& r : records) all = all && r.pass;
    if (o.format == "csv") {
        Table t;
        t.columns = {"name", "parameters", "residual", "tolerance", "pass"};
        for (const auto& r : records) t.add({r.name, r.parameters.dump(), r.residual, r.tolerance, static_cast<long>(r.pass)});
        emit(o, t);
    } else {
        emit_text(o, cli::to_json(records).dump(2) + "\n");
    }
    return all ? kPass : kTolerance;
}

int cmd_converge(const Options& o) {
    const auto ns = parse_counts(o.n_list.value_or("16,32,64,128"));
    if (!std::is_sorted(ns.begin(), ns.end())) throw std::invalid_argument("--N list must be ascending");
    std::vector<ConvergenceRow> rows;
    if (o.scenario == "hyperbolic-coeff") {
        for (long n : ns) {
            const auto v = limiting_relation(o.rho, o.z, n);
            rows.push_back({n, std::abs(v.value - v.target), std::nullopt});
        }
        fill_rates(rows);
    } else {
        const double beta = single(o.beta, 0.5);
        int l = o.l;
        std::string base = o.scenario;
        if (const auto dash = o.scenario.rfind("-l"); dash != std::string::npos) {
            l = std::stoi(o.scenario.substr(dash + 2));
            base = o.scenario.substr(0, dash);
        }
        const auto ch = ChannelLabel::make(l, o.d);
        SliceScenario sc;
        if (base == "oscillator") sc = oscillator_slice_scenario(ch, beta, oscillator_model(o), ns.back(), 8.0, o.grid);
        else if (base == "free") sc = free_slice_scenario(ch, beta, o.M, o.hbar, ns.back(), 8.0, o.grid);
        else throw std::invalid_argument("unknown scenario '" + o.scenario + "'");
        rows = convergence_table(sc, ns);
    }
    Table t;
    t.columns = {"N", "max_error", "rate"};
    for (const auto& r : rows) t.add({r.N, r.max_error, r.rate ? Cell{*r.rate} : Cell{}});
    emit(o, t);
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Propagators on homogeneous spaces by harmonic analysis"};
    app.set_config("--config", "", "flat key = value file; flags override it");
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    // comma lists arrive as several values (also from the config file); join them back
    const auto list_option = [&](const char* name, std::optional<std::string>& target, const char* help) {
        return app.add_option(name, target, help)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    };
    app.add_option("--d", o.d, "dimension")->capture_default_str();
    app.add_option("--M", o.M, "mass")->capture_default_str();
    app.add_option("--hbar", o.hbar, "Planck constant")->capture_default_str();
    app.add_option("--omega", o.omega, "oscillator frequency")->capture_default_str();
    app.add_option("--R", o.R, "curvature radius")->capture_default_str();
    auto* beta = list_option("--beta", o.beta, "imaginary time(s): value, list or start:stop:step");
    auto* tau = list_option("--tau", o.tau, "real time(s), selects real-time mode");
    beta->excludes(tau);
    list_option("--theta", o.theta, "geodesic angle(s)");
    app.add_option("--l", o.l, "angular momentum channel")->capture_default_str();
    list_option("--n", o.n, "levels, e.g. 0..5");
    list_option("--N", o.n_list, "slice counts, e.g. 16,32,64,128");
    list_option("--r1", o.r1, "initial radius");
    list_option("--r2", o.r2, "final radius or radii");
    list_option("--x1", o.x1, "initial point, comma separated");
    list_option("--x2", o.x2, "final point, comma separated");
    list_option("--E", o.energy, "energy or energies");
    app.add_option("--lmax", o.l_max, "highest partial wave")->capture_default_str();
    app.add_option("--grid", o.grid, "radial grid nodes (minimum)")->capture_default_str();
    app.add_option("--tol", o.tol, "tolerance override");
    app.add_option("--method", o.method, "both|spectral|closed|odd|even")->capture_default_str();
    app.add_option("--scenario", o.scenario, "oscillator-l<k>|free-l<k>|hyperbolic-coeff")->capture_default_str();
    app.add_option("--rho", o.rho, "spectral label for hyperbolic-coeff")->capture_default_str();
    app.add_option("--z", o.z, "time scale for hyperbolic-coeff")->capture_default_str();
    app.add_option("--out", o.out, "output file (default stdout)");
    app.add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    auto* hyp = app.add_subcommand("hyperbolic", "free particle on the hyperboloid");
    auto* osc = app.add_subcommand("oscillator", "isotropic harmonic oscillator");
    osc->add_option("kind", o.oscillator_kind, "radial|full|spectrum|green")
        ->required()
        ->check(CLI::IsMember({"radial", "full", "spectrum", "green"}));
    auto* chk = app.add_subcommand("check", "consistency checks, JSON report");
    chk->add_option("name", o.check_name, "check name")->required();
    auto* conv = app.add_subcommand("converge", "time-slicing convergence table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*hyp) return cmd_hyperbolic(o);
        if (*osc) return cmd_oscillator(o);
        if (*chk) {
            // JSON is the native report format
            if (app.count("--format") == 0) o.format = "json";
            return cmd_check(o);
        }
        if (*conv) return cmd_converge(o);
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return kTolerance;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
