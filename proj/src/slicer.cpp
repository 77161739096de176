#include "lieprop/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lieprop/quadrature.hpp"

namespace lieprop {

using Eigen::MatrixXd;
using Eigen::VectorXd;

RadialGrid RadialGrid::gauss(int n, double r_max, int d) {
    if (n < 2) throw DomainError("RadialGrid: need at least two nodes");
    if (!(r_max > 0.0)) throw DomainError("RadialGrid: r_max must be positive");
    if (d < 1) throw DomainError("RadialGrid: d must be positive");
    const auto rule = gauss_legendre(n);
    RadialGrid g;
    g.d = d;
    g.r_max = r_max;
    g.nodes.resize(n);
    g.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double r = 0.5 * r_max * (rule.nodes[i] + 1.0);
        g.nodes[i] = r;
        g.weights[i] = 0.5 * r_max * rule.weights[i] * std::pow(r, d - 1);
    }
    // ascending order keeps the tables readable
    std::vector<std::size_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return g.nodes[a] < g.nodes[b]; });
    RadialGrid out = g;
    for (int i = 0; i < n; ++i) {
        out.nodes[i] = g.nodes[idx[i]];
        out.weights[i] = g.weights[idx[i]];
    }
    return out;
}

double RadialGrid::max_spacing() const {
    double h = nodes.front();
    for (std::size_t i = 1; i < nodes.size(); ++i) h = std::max(h, nodes[i] - nodes[i - 1]);
    return std::max(h, r_max - nodes.back());
}

namespace {

void check_run(const SliceRun& run) {
    if (run.N < 1) throw DomainError("SliceRun: N must be >= 1");
    if (!run.short_kernel) throw DomainError("SliceRun: no short-time kernel");
    if (run.grid.nodes.empty()) throw DomainError("SliceRun: empty grid");
}

MatrixXd kernel_matrix(const RadialKernel& k, const std::vector<double>& nodes) {
    const auto n = static_cast<Eigen::Index>(nodes.size());
    MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = k(nodes[i], nodes[j]);
    return m;
}

VectorXd root_weights(const RadialGrid& g) {
    VectorXd w(static_cast<Eigen::Index>(g.weights.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::sqrt(g.weights[i]);
    return w;
}

// S^p by binary powering, S symmetric; p >= 0.
MatrixXd symmetric_power(const MatrixXd& s, long p) {
    MatrixXd result = MatrixXd::Identity(s.rows(), s.cols());
    MatrixXd base = s;
    bool first = true;
    while (p > 0) {
        if (p & 1) {
            result = first ? base : MatrixXd(result * base);
            first = false;
        }
        p >>= 1;
        if (p > 0) base = base * base;
    }
    return 0.5 * (result + result.transpose());
}

void require_resolved(const SliceRun& run) {
    const double width = generator_width(run);
    const double per = width / run.grid.max_spacing();
    if (!(per >= kMinNodesPerWidth))
        throw DomainError("slicer: grid does not resolve the short-time kernel (" + std::to_string(per) +
                          " nodes per standard deviation, need " + std::to_string(kMinNodesPerWidth) + ")");
}

// S^{N-2} sandwiched by sqrt-weights: the interior of every Nystrom evaluation.
MatrixXd interior_product(const SliceRun& run, const MatrixXd& s) { return symmetric_power(s, run.N - 2); }

} // namespace

double generator_width(const SliceRun& run) {
    check_run(run);
    const auto& g = run.grid;
    const double r0 = 0.5 * g.r_max;
    // second moment of K(r0, .) on a fine composite rule, independent of the slicing grid
    const auto rule = composite_gauss_legendre(0.0, g.r_max, 400);
    double m0 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        const double k = run.short_kernel(r0, r) * rule.weights[i] * std::pow(r, g.d - 1);
        m0 += k;
        m2 += k * (r - r0) * (r - r0);
    }
    if (!(m0 > 0.0)) throw DomainError("slicer: short-time kernel has no mass at mid-grid");
    return std::sqrt(m2 / m0);
}

MatrixXd nfold_kernel(const SliceRun& run) {
    check_run(run);
    require_resolved(run);
    const MatrixXd k = kernel_matrix(run.short_kernel, run.grid.nodes);
    if (run.N == 1) return k;
    const VectorXd d = root_weights(run.grid);
    const MatrixXd s = d.asDiagonal() * k * d.asDiagonal();
    const MatrixXd p = symmetric_power(s, run.N);
    const VectorXd inv = d.cwiseInverse();
    return inv.asDiagonal() * p * inv.asDiagonal();
}

double nfold_value(const SliceRun& run, double r2, double r1) {
    check_run(run);
    if (run.N == 1) return run.short_kernel(r2, r1);
    require_resolved(run);
    const auto& nodes = run.grid.nodes;
    const auto n = static_cast<Eigen::Index>(nodes.size());
    const VectorXd d = root_weights(run.grid);
    VectorXd a(n), b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a[i] = d[i] * run.short_kernel(r2, nodes[i]);
        b[i] = d[i] * run.short_kernel(nodes[i], r1);
    }
    if (run.N == 2) return a.dot(b);
    const MatrixXd k = kernel_matrix(run.short_kernel, nodes);
    const MatrixXd s = d.asDiagonal() * k * d.asDiagonal();
    return a.dot(interior_product(run, s) * b);
}

std::vector<double> row_mass(const SliceRun& run) {
    const MatrixXd k = nfold_kernel(run);
    std::vector<double> out(static_cast<std::size_t>(k.rows()));
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        CompensatedSum<double> s;
        for (Eigen::Index j = 0; j < k.cols(); ++j) s.add(k(i, j) * run.grid.weights[j]);
        out[i] = s.value();
    }
    return out;
}

SliceRun SliceScenario::run(long N) const {
    if (N < 1) throw DomainError("SliceScenario: N must be >= 1");
    return {N, grid, short_family(beta / static_cast<double>(N)), exact};
}

namespace {

// Enough Gauss-Legendre nodes that the mid-grid spacing pi r_max / 2n stays below width / 1.5.
int nodes_for_width(double width, double r_max, int floor_nodes) {
    const int need = static_cast<int>(std::ceil(1.5 * std::numbers::pi * r_max / (2.0 * width)));
    return std::max(floor_nodes, need);
}

std::vector<std::pair<double, double>> default_probes() {
    std::vector<std::pair<double, double>> p;
    for (double a : {0.4, 0.8, 1.2, 1.6})
        for (double b : {0.4, 0.8, 1.2, 1.6}) p.emplace_back(a, b);
    return p;
}

} // namespace

SliceScenario oscillator_slice_scenario(const ChannelLabel& channel, double beta, const OscillatorModel& model,
                                        long n_finest, double r_max, int n_nodes) {
    model.validate();
    if (model.mode != Mode::euclidean) throw UnsupportedMode("slicer: Euclidean mode only");
    if (!(beta > 0.0) || n_finest < 1) throw DomainError("oscillator_slice_scenario: need beta > 0, N >= 1");
    const double width = std::sqrt(model.hbar * beta / (model.M * static_cast<double>(n_finest)));
    SliceScenario sc;
    sc.grid = RadialGrid::gauss(nodes_for_width(width, r_max, n_nodes), r_max, channel.d);
    sc.beta = beta;
    sc.short_family = [channel, model](double eps) -> RadialKernel {
        return [channel, model, eps](double r2, double r1) { return short_time_radial(channel, r2, r1, eps, model); };
    };
    sc.exact = [channel, model, beta](double r2, double r1) { return radial_propagator(channel, r2, r1, beta, model); };
    sc.probes = default_probes();
    return sc;
}

SliceScenario free_slice_scenario(const ChannelLabel& channel, double beta, double M, double hbar, long n_finest,
                                  double r_max, int n_nodes) {
    if (!(beta > 0.0) || n_finest < 1) throw DomainError("free_slice_scenario: need beta > 0, N >= 1");
    const double width = std::sqrt(hbar * beta / (M * static_cast<double>(n_finest)));
    SliceScenario sc;
    sc.grid = RadialGrid::gauss(nodes_for_width(width, r_max, n_nodes), r_max, channel.d);
    sc.beta = beta;
    sc.short_family = [channel, M, hbar](double eps) -> RadialKernel {
        return [channel, M, hbar, eps](double r2, double r1) { return free_radial_kernel(channel, r2, r1, eps, M, hbar); };
    };
    sc.exact = [channel, M, hbar, beta](double r2, double r1) { return free_radial_kernel(channel, r2, r1, beta, M, hbar); };
    sc.probes = default_probes();
    return sc;
}

void fill_rates(std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rate.reset();
        if (i == 0) continue;
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        if (a.max_error > 0.0 && b.max_error > 0.0 && b.N != a.N)
            rows[i].rate = std::log(a.max_error / b.max_error) / std::log(static_cast<double>(b.N) / a.N);
    }
}

std::vector<ConvergenceRow> convergence_table(const SliceScenario& scenario, const std::vector<long>& n_list) {
    if (!scenario.exact) throw DomainError("convergence_table: scenario has no exact kernel");
    if (!std::is_sorted(n_list.begin(), n_list.end())) throw DomainError("convergence_table: N list must be ascending");
    std::vector<ConvergenceRow> rows;
    for (long N : n_list) {
        const SliceRun run = scenario.run(N);
        double worst = 0.0;
        if (N == 1) {
            for (const auto& [a, b] : scenario.probes) worst = std::max(worst, std::abs(run.short_kernel(a, b) - scenario.exact(a, b)));
        } else {
            require_resolved(run);
            const auto& nodes = run.grid.nodes;
            const auto n = static_cast<Eigen::Index>(nodes.size());
            const VectorXd d = root_weights(run.grid);
            const MatrixXd k = kernel_matrix(run.short_kernel, nodes);
            const MatrixXd inner = N == 2 ? MatrixXd::Identity(n, n)
                                          : interior_product(run, MatrixXd(d.asDiagonal() * k * d.asDiagonal()));
            for (const auto& [r2, r1] : scenario.probes) {
                VectorXd a(n), b(n);
                for (Eigen::Index i = 0; i < n; ++i) {
                    a[i] = d[i] * run.short_kernel(r2, nodes[i]);
                    b[i] = d[i] * run.short_kernel(nodes[i], r1);
                }
                worst = std::max(worst, std::abs(a.dot(inner * b) - scenario.exact(r2, r1)));
            }
        }
        rows.push_back({N, worst, std::nullopt});
    }
    fill_rates(rows);
    return rows;
}

} // namespace lieprop
