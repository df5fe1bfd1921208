#pragma once

// Metric-aware quantum CNOT gates on tensor products of coherent spaces.
// A gate is stored as its array of matrix elements <A_k (x) B_m| U |A_l (x)
// B_n> in the non-orthogonal coherent product basis; states are coordinate
// vectors, and applying an operator contracts through the inverse metric:
// t = (G_A (x) G_B) U s.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cohsp/coherent_space.hpp"
#include "cohsp/errors.hpp"
#include "cohsp/fock.hpp"
#include "cohsp/report.hpp"

namespace cohsp {

using CoordState = Eigen::VectorXcd;

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
    Eigen::MatrixXcd out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    return out;
}

/// Metric norm of a coordinate vector: sqrt(v^dag g v).
inline double metric_norm(const CoordState& v, const CoherentSpace& space) {
    require_same_dim(v.size(), space.size(), "metric_norm");
    return std::sqrt(std::abs((v.adjoint() * space.g() * v)(0, 0)));
}

inline double metric_norm(const CoordState& v, const CoherentSpace& a, const CoherentSpace& b) {
    require_same_dim(v.size(), a.size() * b.size(), "metric_norm");
    return std::sqrt(std::abs((v.adjoint() * kron(a.g(), b.g()) * v)(0, 0)));
}

/// Coordinates of Theta|s> in one space: t = G Theta s.
inline CoordState metric_apply(const CoherentSpace& space, const Eigen::MatrixXcd& theta,
                               const CoordState& s) {
    require_same_dim(theta.rows(), space.size(), "metric_apply");
    require_same_dim(s.size(), space.size(), "metric_apply");
    return space.g_inverse() * theta * s;
}

/// (Theta Phi)_kl = sum_mn Theta_km G_mn Phi_nl.
inline Eigen::MatrixXcd metric_product(const Eigen::MatrixXcd& theta, const Eigen::MatrixXcd& phi,
                                       const CoherentSpace& space) {
    require_same_dim(theta.cols(), space.size(), "metric_product");
    require_same_dim(phi.rows(), space.size(), "metric_product");
    return theta * space.g_inverse() * phi;
}

inline Eigen::MatrixXcd metric_commutator(const Eigen::MatrixXcd& theta,
                                          const Eigen::MatrixXcd& phi,
                                          const CoherentSpace& space) {
    return metric_product(theta, phi, space) - metric_product(phi, theta, space);
}

/// V(phi_2, ..., phi_n) = gamma_1 E_1 + sum_j e^{i phi_j} gamma_j E_j, the
/// phase family the target maps are drawn from (the first phase is 0).
inline Eigen::MatrixXcd control_phase_op(const CoherentSpace& space,
                                         const std::vector<double>& phases) {
    if (static_cast<Eigen::Index>(phases.size()) + 1 != space.size())
        throw DimensionMismatchError("control_phase_op: need |S|-1 phases");
    Eigen::MatrixXcd v = space.eigenvalues()(0) * space.eigenprojector(0);
    for (Eigen::Index j = 1; j < space.size(); ++j)
        v += std::exp(Complex(0, phases[j - 1])) * space.eigenvalues()(j) *
             space.eigenprojector(j);
    return v;
}

struct GateMatrix {
    CoherentSpace control;
    CoherentSpace target;
    Eigen::MatrixXcd entries;  // <A_k (x) B_m| U |A_l (x) B_n>, row (k,m) = k*nB + m
    std::vector<Eigen::MatrixXcd> target_maps;  // U_jT per control eigenvector
};

/// Coordinates of U|s> on the product space: t = (G_A (x) G_B) U s.
inline CoordState metric_apply(const GateMatrix& gate, const CoordState& s) {
    require_same_dim(s.size(), gate.control.size() * gate.target.size(), "metric_apply");
    return kron(gate.control.g_inverse(), gate.target.g_inverse()) * gate.entries * s;
}

/// Residual of the metric unitarity relation U (G_A (x) G_B) U^dag = g_A (x) g_B.
inline double metric_unitarity_residual(const GateMatrix& gate) {
    const Eigen::MatrixXcd gg = kron(gate.control.g(), gate.target.g());
    const Eigen::MatrixXcd GG = kron(gate.control.g_inverse(), gate.target.g_inverse());
    return (gate.entries * GG * gate.entries.adjoint() - gg).norm();
}

namespace detail {

inline void require_nondegenerate_spectrum(const CoherentSpace& space, const char* which) {
    for (Eigen::Index j = 0; j + 1 < space.size(); ++j)
        if (space.eigenvalues()(j) - space.eigenvalues()(j + 1) <
            1e-8 * space.eigenvalues()(0))
            throw DegenerateSpectrumError(std::string(which) +
                                          " Gram spectrum is degenerate");
}

inline GateMatrix build_cnot(const CoherentSpace& control, const CoherentSpace& target,
                             double unitarity_tol) {
    const Eigen::Index n = control.size();
    GateMatrix gate{control, target, {}, {}};
    gate.entries = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        std::vector<double> phases(n - 1, 0.0);
        if (j > 0) phases[j - 1] = std::numbers::pi;
        const Eigen::MatrixXcd ujt = control_phase_op(target, phases);
        gate.target_maps.push_back(ujt);
        gate.entries += control.eigenvalues()(j) * kron(control.eigenprojector(j), ujt);
    }
    const double resid = metric_unitarity_residual(gate);
    if (resid > unitarity_tol)
        throw IllConditionedError("gate violates metric unitarity, residual " +
                                  std::to_string(resid));
    return gate;
}

}  // namespace detail

/// CNOT on H(A_1,A_2) (x) H(B_1,B_2): U = gamma_1A E_1 (x) V(0) +
/// gamma_2A E_2 (x) V(pi).
inline GateMatrix build_cnot2(const CoherentSpace& control, const CoherentSpace& target,
                              double unitarity_tol = 1e-10) {
    if (control.size() != 2 || target.size() != 2)
        throw DimensionMismatchError("build_cnot2: both spaces must be two-point");
    return detail::build_cnot(control, target, unitarity_tol);
}

/// CNOT on four-point spaces: U = sum_j gamma_jA E_j (x) U_jT with target
/// maps V(0,0,0), V(pi,0,0), V(0,pi,0), V(0,0,pi).
inline GateMatrix build_cnot4(const CoherentSpace& control, const CoherentSpace& target,
                              double unitarity_tol = 1e-10) {
    if (control.size() != 4 || target.size() != 4)
        throw DimensionMismatchError("build_cnot4: both spaces must be four-point");
    // The eigensolver's projectors are only as good as the spectral gaps, so
    // symmetric four-point geometries with coalescing eigenvalues are
    // rejected. Two-point spaces are exempt: their closed-form eigenvectors
    // stay well defined down to mu = 0.
    detail::require_nondegenerate_spectrum(control, "control");
    detail::require_nondegenerate_spectrum(target, "target");
    return detail::build_cnot(control, target, unitarity_tol);
}

/// For each control eigenvector: the induced target map applied twice must
/// be the identity on H(S_B), and must be invertible (bijective).
inline std::vector<CheckResult> involution_check(const GateMatrix& gate, double tol = 1e-12) {
    std::vector<CheckResult> out;
    const Eigen::Index nb = gate.target.size();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(nb, nb);
    for (std::size_t j = 0; j < gate.target_maps.size(); ++j) {
        const Eigen::MatrixXcd m = gate.target.g_inverse() * gate.target_maps[j];
        out.push_back(make_check("target_map_" + std::to_string(j + 1) + "_involution",
                                 (m * m - id).norm(), tol));
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        const double cond = svd.singularValues()(0) / svd.singularValues()(nb - 1);
        out.push_back(make_check("target_map_" + std::to_string(j + 1) + "_condition",
                                 cond, 1e3));
    }
    return out;
}

// ---- lifts into truncated Fock space ---------------------------------------

/// The Fock operator with matrix elements M in the coherent basis of one
/// space: sum_kl (G M G)_kl |A_k><A_l|.
inline FockOperator lift_op(const CoherentSpace& space, const Eigen::MatrixXcd& m,
                            const TruncationPolicy& trunc) {
    require_same_dim(m.rows(), space.size(), "lift_op");
    Eigen::MatrixXcd states(trunc.dim(), space.size());
    for (Eigen::Index j = 0; j < space.size(); ++j)
        states.col(j) = coherent_vector(space.labels()[j], trunc);
    const Eigen::MatrixXcd dual = space.g_inverse() * m * space.g_inverse();
    return states * dual * states.adjoint();
}

/// An operator on two modes kept as a sum of tensor products X_j (x) Y_j;
/// composition, adjoints and Frobenius norms never materialize the full
/// (n_max+1)^2-dimensional matrix.
struct TwoModeOperator {
    std::vector<std::pair<FockOperator, FockOperator>> terms;

    TwoModeOperator adjoint() const {
        TwoModeOperator out;
        for (const auto& [x, y] : terms)
            out.terms.push_back({x.adjoint(), y.adjoint()});
        return out;
    }

    TwoModeOperator compose(const TwoModeOperator& o) const {
        TwoModeOperator out;
        for (const auto& [x1, y1] : terms)
            for (const auto& [x2, y2] : o.terms)
                out.terms.push_back({x1 * x2, y1 * y2});
        return out;
    }

    TwoModeOperator operator-(const TwoModeOperator& o) const {
        TwoModeOperator out = *this;
        for (const auto& [x, y] : o.terms) out.terms.push_back({-x, y});
        return out;
    }

    /// ||sum_j X_j (x) Y_j||_F^2 = sum_jk Tr(X_j^dag X_k) Tr(Y_j^dag Y_k).
    double frobenius_norm() const {
        Complex total = 0.0;
        for (const auto& [xj, yj] : terms)
            for (const auto& [xk, yk] : terms)
                total += (xj.adjoint() * xk).trace() * (yj.adjoint() * yk).trace();
        return std::sqrt(std::max(0.0, total.real()));
    }

    /// Amplitude matrix Psi_MN of U (|u> (x) |v>).
    Eigen::MatrixXcd apply_product(const FockVector& u, const FockVector& v) const {
        Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(u.size(), v.size());
        for (const auto& [x, y] : terms) psi += (x * u) * (y * v).transpose();
        return psi;
    }
};

/// The gate embedded in truncated Fock space, factored along the gate's own
/// sum-of-tensor-products structure.
inline TwoModeOperator lift_gate(const GateMatrix& gate, const TruncationPolicy& trunc) {
    TwoModeOperator out;
    for (std::size_t j = 0; j < gate.target_maps.size(); ++j) {
        const Eigen::MatrixXcd ctrl =
            gate.control.eigenvalues()(j) * gate.control.eigenprojector(j);
        out.terms.push_back({lift_op(gate.control, ctrl, trunc),
                             lift_op(gate.target, gate.target_maps[j], trunc)});
    }
    return out;
}

}  // namespace cohsp
