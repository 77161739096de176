#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lieprop/oscillator.hpp"

namespace lieprop {

/// Position and momentum of a d-mode oscillator on the number basis cut off at n_max quanta per
/// mode, together with the quadratic generators
///   J1 = -(p^2 - M^2 w^2 x^2) / 4 M hbar w,  J2 = -(x.p + p.x) / 4 hbar,  J3 = (p^2 + M^2 w^2 x^2) / 4 M hbar w.
/// Entries between states with every mode at most n_max - 2 (the interior) are free of truncation error.
struct TruncatedRealization {
    int d = 1;
    int n_max = 0;
    OscillatorModel model;
    std::vector<Eigen::MatrixXcd> x, p;
    Eigen::MatrixXcd J1, J2, J3, Kplus;
    std::vector<int> interior;

    Eigen::Index size() const { return J3.rows(); }
    /// Quanta of mode k in basis state s.
    int quanta(Eigen::Index s, int k) const;
};

/// Throws DomainError unless 1 <= d <= 3 and (n_max + 1)^d <= 4096.
TruncatedRealization build_realization(int d, int n_max, const OscillatorModel& model);

/// Largest |entry| of a over interior rows and columns.
double interior_max_norm(const TruncatedRealization& real, const Eigen::MatrixXcd& a);

/// max of [J1,J2] + iJ3, [J2,J3] - iJ1, [J3,J1] - iJ2 on the interior.
double commutator_residual(const TruncatedRealization& real);
/// Same relations over the whole truncated space (not small: boundary truncation).
double commutator_residual_unmasked(const TruncatedRealization& real);

/// max over i, k of |[x_i, p_k] - i hbar delta_ik| / hbar on the interior.
double heisenberg_residual(const TruncatedRealization& real);

/// |J^2 - L^2 / 4 hbar^2 - d(d-4)/16| on the interior, J^2 = J3^2 - J1^2 - J2^2, L^2 = sum_{i<k} L_ik^2.
double casimir_relation_residual(const TruncatedRealization& real);

/// |H - 2 hbar omega J3| / (hbar omega) on the interior, H assembled from p and x.
double hamiltonian_j3_residual(const TruncatedRealization& real);

/// |J1 + J3 - (M omega / 2 hbar) x^2| over the full matrix.
double kplus_residual(const TruncatedRealization& real);

/// Sorted eigenvalues of 2 hbar omega J3 restricted to the interior block.
std::vector<double> interior_energies(const TruncatedRealization& real);

/// Smallest eigenvalue of J3 on the whole truncated space.
double j3_min_eigenvalue(const TruncatedRealization& real);

struct CasimirPair {
    double from_labels = 0.0; // l(l+d-2)/4 + d(d-4)/16
    double from_index = 0.0;  // J(J+1) with J = -l/2 - d/4
    double discrepancy() const { return from_index - from_labels; }
};

/// Casimir value of channel l by both routes.
CasimirPair channel_casimir_eigen(int l, int d);

} // namespace lieprop
