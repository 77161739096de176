#include "lieprop/su11.hpp"

#include <algorithm>
#include <cmath>

namespace lieprop {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

int TruncatedRealization::quanta(Eigen::Index s, int k) const {
    const int base = n_max + 1;
    for (int j = 0; j < k; ++j) s /= base;
    return static_cast<int>(s % base);
}

TruncatedRealization build_realization(int d, int n_max, const OscillatorModel& model) {
    model.validate();
    if (d < 1 || d > 3) throw DomainError("build_realization: d must be 1, 2 or 3");
    if (n_max < 1) throw DomainError("build_realization: n_max must be >= 1");
    const int base = n_max + 1;
    long size = 1;
    for (int k = 0; k < d; ++k) size *= base;
    if (size > 4096) throw DomainError("build_realization: (n_max+1)^d exceeds 4096");

    TruncatedRealization r;
    r.d = d;
    r.n_max = n_max;
    r.model = model;
    r.model.d = d;
    const double xs = std::sqrt(model.hbar / (2.0 * model.M * model.omega));
    const double ps = std::sqrt(model.hbar * model.M * model.omega / 2.0);

    // single-mode ladder algebra; products are formed per mode, then embedded
    Mat a = Mat::Zero(base, base);
    for (int n = 1; n < base; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Mat x1 = xs * (a + a.adjoint());
    const Mat p1 = cplx(0.0, ps) * (a.adjoint() - a);
    const Mat xx = x1 * x1, pp = p1 * p1, xp1 = x1 * p1 + p1 * x1;

    Mat x2 = Mat::Zero(size, size), p2 = Mat::Zero(size, size), xp = Mat::Zero(size, size);
    long stride = 1;
    for (int k = 0; k < d; ++k, stride *= base) {
        const auto embed = [&](const Mat& m) {
            Mat out = Mat::Zero(size, size);
            for (long s = 0; s < size; ++s) {
                const int n = static_cast<int>((s / stride) % base);
                const long root = s - n * stride;
                for (int j = 0; j < base; ++j) out(s, root + j * stride) = m(n, j);
            }
            return out;
        };
        r.x.push_back(embed(x1));
        r.p.push_back(embed(p1));
        x2 += embed(xx);
        p2 += embed(pp);
        xp += embed(xp1);
    }
    const double mw = model.M * model.omega;
    const double den = 4.0 * mw * model.hbar;
    r.J1 = -(p2 - mw * mw * x2) / den;
    r.J2 = -xp / (4.0 * model.hbar);
    r.J3 = (p2 + mw * mw * x2) / den;
    r.Kplus = r.J1 + r.J3;

    for (long s = 0; s < size; ++s) {
        bool inside = true;
        for (int k = 0; k < d; ++k) inside = inside && r.quanta(s, k) <= n_max - 2;
        if (inside) r.interior.push_back(static_cast<int>(s));
    }
    return r;
}

double interior_max_norm(const TruncatedRealization& real, const Mat& a) {
    double m = 0.0;
    for (int i : real.interior)
        for (int j : real.interior) m = std::max(m, std::abs(a(i, j)));
    return m;
}

namespace {

const cplx I(0.0, 1.0);

Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

std::vector<Mat> algebra_defects(const TruncatedRealization& r) {
    return {comm(r.J1, r.J2) + I * r.J3, comm(r.J2, r.J3) - I * r.J1, comm(r.J3, r.J1) - I * r.J2};
}

} // namespace

double commutator_residual(const TruncatedRealization& real) {
    double m = 0.0;
    for (const auto& e : algebra_defects(real)) m = std::max(m, interior_max_norm(real, e));
    return m;
}

double commutator_residual_unmasked(const TruncatedRealization& real) {
    double m = 0.0;
    for (const auto& e : algebra_defects(real)) m = std::max(m, e.cwiseAbs().maxCoeff());
    return m;
}

double heisenberg_residual(const TruncatedRealization& real) {
    const double hbar = real.model.hbar;
    const auto id = Mat::Identity(real.size(), real.size());
    double m = 0.0;
    for (int i = 0; i < real.d; ++i)
        for (int k = 0; k < real.d; ++k) {
            Mat e = comm(real.x[i], real.p[k]);
            if (i == k) e -= I * hbar * id;
            m = std::max(m, interior_max_norm(real, e) / hbar);
        }
    return m;
}

double casimir_relation_residual(const TruncatedRealization& real) {
    if (real.d < 2) throw DomainError("casimir_relation_residual: d = 1 has no rotation group");
    const double hbar = real.model.hbar;
    const Mat j2 = real.J3 * real.J3 - real.J1 * real.J1 - real.J2 * real.J2;
    Mat l2 = Mat::Zero(real.size(), real.size());
    for (int i = 0; i < real.d; ++i)
        for (int k = i + 1; k < real.d; ++k) {
            const Mat lik = real.x[i] * real.p[k] - real.x[k] * real.p[i];
            l2 += lik * lik;
        }
    const double shift = real.d * (real.d - 4) / 16.0;
    const Mat e = j2 - l2 / (4.0 * hbar * hbar) - shift * Mat::Identity(real.size(), real.size());
    return interior_max_norm(real, e);
}

double hamiltonian_j3_residual(const TruncatedRealization& real) {
    const auto& m = real.model;
    Mat h = Mat::Zero(real.size(), real.size());
    for (int k = 0; k < real.d; ++k)
        h += real.p[k] * real.p[k] / (2.0 * m.M) + 0.5 * m.M * m.omega * m.omega * real.x[k] * real.x[k];
    const double scale = m.hbar * m.omega;
    return interior_max_norm(real, h - 2.0 * scale * real.J3) / scale;
}

double kplus_residual(const TruncatedRealization& real) {
    const auto& m = real.model;
    Mat x2 = Mat::Zero(real.size(), real.size());
    for (int k = 0; k < real.d; ++k) x2 += real.x[k] * real.x[k];
    return (real.Kplus - m.M * m.omega / (2.0 * m.hbar) * x2).cwiseAbs().maxCoeff();
}

std::vector<double> interior_energies(const TruncatedRealization& real) {
    const auto n = static_cast<Eigen::Index>(real.interior.size());
    if (n == 0) return {};
    Mat block(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) block(i, j) = real.J3(real.interior[i], real.interior[j]);
    Eigen::SelfAdjointEigenSolver<Mat> es(block, Eigen::EigenvaluesOnly);
    const double scale = 2.0 * real.model.hbar * real.model.omega;
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (double& v : out) v *= scale;
    return out;
}

double j3_min_eigenvalue(const TruncatedRealization& real) {
    Eigen::SelfAdjointEigenSolver<Mat> es(real.J3, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

CasimirPair channel_casimir_eigen(int l, int d) {
    if (l < 0 || d < 2) throw DomainError("channel_casimir_eigen: need l >= 0, d >= 2");
    const double J = -0.5 * l - 0.25 * d;
    return {0.25 * l * (l + d - 2) + d * (d - 4) / 16.0, J * (J + 1.0)};
}

} // namespace lieprop
