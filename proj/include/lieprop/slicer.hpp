#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieprop/oscillator.hpp"

namespace lieprop {

/// Gauss-Legendre nodes on [0, r_max]; weights include the radial measure r^{d-1}.
struct RadialGrid {
    int d = 3;
    double r_max = 8.0;
    std::vector<double> nodes, weights;

    static RadialGrid gauss(int n, double r_max, int d);
    /// Largest gap between neighbouring nodes.
    double max_spacing() const;
};

using RadialKernel = std::function<double(double r2, double r1)>;

/// One time-sliced evaluation: N copies of the short-time kernel composed on the grid.
struct SliceRun {
    long N = 1;
    RadialGrid grid;
    RadialKernel short_kernel;
    RadialKernel exact_kernel; // may be empty when only the product is wanted
};

/// Nodes per standard deviation of the short-time kernel required before composing.
inline constexpr double kMinNodesPerWidth = 1.25;

/// Standard deviation of the short-time kernel about the middle of the grid (second moment).
double generator_width(const SliceRun& run);

/// Table K^(N)(r_i, r_j) on the grid nodes. Throws DomainError if the grid does not resolve
/// the generator.
Eigen::MatrixXd nfold_kernel(const SliceRun& run);

/// K^(N)(r2, r1) at arbitrary radii by Nystrom extension of the grid product.
double nfold_value(const SliceRun& run, double r2, double r1);

/// int K^(N)(r_i, r) r^{d-1} dr for every node r_i.
std::vector<double> row_mass(const SliceRun& run);

/// Time-slicing scenario: a short-time kernel family indexed by the step, and its exact limit.
struct SliceScenario {
    RadialGrid grid;
    double beta = 1.0;
    std::function<RadialKernel(double eps)> short_family;
    RadialKernel exact;
    std::vector<std::pair<double, double>> probes;

    SliceRun run(long N) const;
};

/// Radial oscillator channel sliced with the projected short-time kernel.
/// Node count is raised above n_nodes when the finest step would not be resolved.
SliceScenario oscillator_slice_scenario(const ChannelLabel& channel, double beta, const OscillatorModel& model,
                                        long n_finest, double r_max = 8.0, int n_nodes = 200);

/// Free radial kernel sliced into itself (Gaussians compose exactly).
SliceScenario free_slice_scenario(const ChannelLabel& channel, double beta, double M, double hbar, long n_finest,
                                  double r_max = 8.0, int n_nodes = 200);

struct ConvergenceRow {
    long N = 0;
    double max_error = 0.0;
    std::optional<double> rate; // log(e_prev / e) / log(N / N_prev)
};

/// Max error over the scenario's probe pairs for each N, with successive observed orders.
std::vector<ConvergenceRow> convergence_table(const SliceScenario& scenario, const std::vector<long>& n_list);

/// Observed orders from (N, error) pairs, same convention as convergence_table.
void fill_rates(std::vector<ConvergenceRow>& rows);

} // namespace lieprop
