#pragma once

// Coherent subspaces H(S): the Gram matrix g(S) of coherent overlaps, its
// inverse G(S) and eigensystem, the projector Pi(S), the Gram-Schmidt chain
// of rank-1 projectors, coordinate expansion in the non-orthogonal basis,
// generalized Q-functions, the resolution-of-identity quadrature, and
// orthogonal states built from Bargmann-function zeros.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "cohsp/complex_sets.hpp"
#include "cohsp/errors.hpp"
#include "cohsp/fock.hpp"
#include "cohsp/report.hpp"

namespace cohsp {

/// <A|B> = exp(A^* B - |A|^2/2 - |B|^2/2), evaluated analytically.
inline Complex coherent_overlap(Complex a, Complex b) {
    return std::exp(std::conj(a) * b - 0.5 * std::norm(a) - 0.5 * std::norm(b));
}

inline constexpr double kDefaultConditionGuard = 1e12;

/// An ordered tuple of distinct coherent labels together with the cached
/// Gram metric g, its inverse G, and the eigensystem of g. Eigenvalues are
/// kept in descending order; for two-point spaces the closed forms
/// gamma = 1 +- mu with e_1 = (e^{i theta}, 1)/sqrt(2) are used verbatim.
class CoherentSpace {
  public:
    explicit CoherentSpace(std::vector<Label> labels,
                           double condition_guard = kDefaultConditionGuard)
        : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (distance(labels_[i], labels_[j]) < kDuplicateTolerance)
                    throw DuplicateLabelError("coherent space labels must be pairwise distinct");
        build_gram();
        build_eigensystem();
        if (size() > 0) {
            const double cond = eigvals_(0) / eigvals_(size() - 1);
            if (!(eigvals_(size() - 1) > 0.0) || cond > condition_guard)
                throw IllConditionedError("Gram matrix condition number exceeds guard");
        }
    }

    Eigen::Index size() const { return static_cast<Eigen::Index>(labels_.size()); }
    const std::vector<Label>& labels() const { return labels_; }
    Complex label_value(Eigen::Index j) const { return labels_[j].value(); }

    const Eigen::MatrixXcd& g() const { return g_; }
    const Eigen::MatrixXcd& g_inverse() const { return g_inv_; }
    const Eigen::VectorXd& eigenvalues() const { return eigvals_; }
    /// Column j is the unit coordinate eigenvector e_j.
    const Eigen::MatrixXcd& eigenvectors() const { return eigvecs_; }

    Eigen::MatrixXcd eigenprojector(Eigen::Index j) const {
        return eigvecs_.col(j) * eigvecs_.col(j).adjoint();
    }

    double condition_number() const {
        return size() == 0 ? 1.0 : eigvals_(0) / eigvals_(size() - 1);
    }

    double max_abs_label() const {
        double m = 0.0;
        for (const auto& l : labels_) m = std::max(m, std::abs(l.value()));
        return m;
    }

    // Two-point closed forms: g12 = mu e^{i theta}.
    double mu() const {
        require_two_point();
        return std::exp(-0.5 * std::norm(label_value(0) - label_value(1)));
    }
    double theta() const {
        require_two_point();
        return std::imag(std::conj(label_value(0)) * label_value(1));
    }

    CoherentSpace displaced(Complex z) const { return transformed_labels(z, 1.0); }
    CoherentSpace rotated(double t) const {
        return transformed_labels(0.0, std::exp(Complex(0, t)));
    }

  private:
    void require_two_point() const {
        if (size() != 2) throw DimensionMismatchError("closed form requires a two-point space");
    }

    CoherentSpace transformed_labels(Complex shift, Complex scale) const {
        std::vector<Label> out;
        out.reserve(labels_.size());
        for (const auto& l : labels_) out.push_back(Label(l.value() * scale + shift));
        return CoherentSpace(std::move(out));
    }

    void build_gram() {
        const Eigen::Index n = size();
        g_.resize(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < n; ++k)
                g_(j, k) = coherent_overlap(label_value(j), label_value(k));
    }

    void build_eigensystem() {
        const Eigen::Index n = size();
        eigvals_.resize(n);
        eigvecs_.resize(n, n);
        if (n == 0) {
            g_inv_.resize(0, 0);
            return;
        }
        if (n == 2) {
            // Closed form, with the pairing gamma_1 = 1 + mu <-> e_1.
            const Complex g12 = g_(0, 1);
            const double m = std::abs(g12);
            const Complex phase = m > 0.0 ? g12 / m : Complex(1.0);
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            eigvals_ << 1.0 + m, 1.0 - m;
            eigvecs_.col(0) << phase * inv_sqrt2, inv_sqrt2;
            eigvecs_.col(1) << -phase * inv_sqrt2, inv_sqrt2;
        } else {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g_);
            if (es.info() != Eigen::Success)
                throw IllConditionedError("Gram eigendecomposition failed");
            // Eigen returns ascending order; flip to descending.
            for (Eigen::Index j = 0; j < n; ++j) {
                eigvals_(j) = es.eigenvalues()(n - 1 - j);
                eigvecs_.col(j) = es.eigenvectors().col(n - 1 - j);
            }
        }
        g_inv_ = eigvecs_ *
                 eigvals_.cwiseInverse().cast<Complex>().asDiagonal() *
                 eigvecs_.adjoint();
    }

    std::vector<Label> labels_;
    Eigen::MatrixXcd g_, g_inv_;
    Eigen::VectorXd eigvals_;
    Eigen::MatrixXcd eigvecs_;
};

inline CoherentSpace build_space(std::vector<Label> labels,
                                 double condition_guard = kDefaultConditionGuard) {
    return CoherentSpace(std::move(labels), condition_guard);
}

/// Pi(S) = sum_jk G_jk |A_j><A_k| in the truncated number basis.
inline FockOperator projector(const CoherentSpace& space, const TruncationPolicy& trunc) {
    FockOperator pi = FockOperator::Zero(trunc.dim(), trunc.dim());
    const Eigen::Index n = space.size();
    if (n == 0) return pi;
    Eigen::MatrixXcd states(trunc.dim(), n);
    for (Eigen::Index j = 0; j < n; ++j)
        states.col(j) = coherent_vector(space.labels()[j], trunc);
    pi = states * space.g_inverse() * states.adjoint();
    return pi;
}

inline FockOperator perp_projector(const CoherentSpace& space, const TruncationPolicy& trunc) {
    return FockOperator::Identity(trunc.dim(), trunc.dim()) - projector(space, trunc);
}

/// Gram-Schmidt chain of rank-1 projectors: varpi(A_1), varpi(A_2|A_1), ...
/// built by deflation; each step projects |A_i> off everything before it
/// and renormalizes, so tau_i = 1 / Tr[Pi_perp(A_1..A_{i-1}) Pi(A_i)] is
/// simply 1/|w|^2.
inline std::vector<FockOperator> gs_chain(const CoherentSpace& space,
                                          const TruncationPolicy& trunc) {
    std::vector<FockOperator> chain;
    FockOperator accum = FockOperator::Zero(trunc.dim(), trunc.dim());
    for (Eigen::Index i = 0; i < space.size(); ++i) {
        const FockVector v = coherent_vector(space.labels()[i], trunc);
        FockVector w = v - accum * v;
        const double nrm = w.norm();
        if (!(nrm > 0.0))
            throw IllConditionedError("gs_chain: deflated coherent state vanished");
        w /= nrm;
        FockOperator varpi = w * w.adjoint();
        chain.push_back(varpi);
        accum += varpi;
    }
    return chain;
}

/// Coordinates of |s> in the non-orthogonal basis: s_j = sum_k G_jk <A_k|s>.
/// Rejects states with too large a component outside H(S).
inline Eigen::VectorXcd expand(const FockVector& s, const CoherentSpace& space,
                               const TruncationPolicy& trunc, double residual_tol = 1e-8) {
    const FockOperator pi = projector(space, trunc);
    const double resid = (pi * s - s).norm();
    if (resid > residual_tol * std::max(1.0, s.norm()))
        throw NotInSpaceError("expand: state lies outside H(S), residual " +
                              std::to_string(resid));
    Eigen::VectorXcd overlaps(space.size());
    for (Eigen::Index k = 0; k < space.size(); ++k)
        overlaps(k) = inner(coherent_vector(space.labels()[k], trunc), s);
    return space.g_inverse() * overlaps;
}

inline FockVector reconstruct(const Eigen::VectorXcd& coords, const CoherentSpace& space,
                              const TruncationPolicy& trunc) {
    require_same_dim(coords.size(), space.size(), "reconstruct");
    FockVector s = FockVector::Zero(trunc.dim());
    for (Eigen::Index j = 0; j < space.size(); ++j)
        s += coords(j) * coherent_vector(space.labels()[j], trunc);
    return s;
}

/// s(|A|) = |A|^2 / (e^{|A|^2} - 1), the cross term in Tr[a^dag a Pi(A1,A2)];
/// tends to 1 as |A| -> 0 and to 0 as |A| -> infinity.
inline double two_point_number_cross_term(double dist) {
    const double x = dist * dist;
    if (x < 1e-8) return 1.0 - 0.5 * x;  // series fallback near zero
    return x / std::expm1(x);
}

/// Moment-trace report for one space: Tr[a^l Pi] against sum A_j^l, the l=1
/// quadrature traces, the two-point a^dag a formula, and the chain-projector
/// moment Tr[a^l varpi(A_n|...)] = A_n^l.
inline std::vector<CheckResult> moment_traces(const CoherentSpace& space, int ell,
                                              const TruncationPolicy& trunc,
                                              double tol_moment = 1e-7,
                                              double tol_two_point = 1e-8) {
    if (ell < 1 || ell > 4) throw Error("moment_traces: ell must be in 1..4");
    std::vector<CheckResult> out;
    const FockOperator pi = projector(space, trunc);
    const FockOperator a = annihilation_op(trunc);
    FockOperator apow = FockOperator::Identity(trunc.dim(), trunc.dim());
    for (int k = 0; k < ell; ++k) apow = apow * a;

    Complex analytic = 0.0;
    for (const auto& l : space.labels()) analytic += std::pow(l.value(), ell);
    const Complex numeric = (apow * pi).trace();
    out.push_back(make_check("trace_a^" + std::to_string(ell) + "_projector",
                             std::abs(numeric - analytic), tol_moment));

    if (ell == 1) {
        Complex sum = 0.0;
        for (const auto& l : space.labels()) sum += l.value();
        const Complex tx = (quadrature_x(trunc) * pi).trace();
        const Complex tp = (quadrature_p(trunc) * pi).trace();
        out.push_back(make_check("trace_x_projector",
                                 std::abs(tx - std::sqrt(2.0) * sum.real()), tol_moment));
        out.push_back(make_check("trace_p_projector",
                                 std::abs(tp - std::sqrt(2.0) * sum.imag()), tol_moment));
    }

    if (ell == 1 && space.size() == 2) {
        const Complex a1 = space.label_value(0), a2 = space.label_value(1);
        const double expect = std::norm(a1) + std::norm(a2) +
                              two_point_number_cross_term(std::abs(a1 - a2));
        const Complex tn = (number_op(trunc) * pi).trace();
        out.push_back(make_check("trace_adag_a_two_point", std::abs(tn - expect),
                                 tol_two_point));
    }

    if (space.size() > 0) {
        const auto chain = gs_chain(space, trunc);
        const Complex an = std::pow(space.label_value(space.size() - 1), ell);
        const Complex tv = (apow * chain.back()).trace();
        out.push_back(make_check("trace_a^" + std::to_string(ell) + "_chain",
                                 std::abs(tv - an), tol_moment));
    }
    return out;
}

/// Residuals of varpi a^l varpi = A_{n+1}^l varpi (the extension label is the
/// last one) and Pi_perp a^l Pi = 0.
inline std::vector<CheckResult> eigen_relation_check(const CoherentSpace& extended, int ell,
                                                     const TruncationPolicy& trunc,
                                                     double tol = 1e-7) {
    if (extended.size() < 1) throw Error("eigen_relation_check: space must be non-empty");
    std::vector<CheckResult> out;
    const FockOperator a = annihilation_op(trunc);
    FockOperator apow = FockOperator::Identity(trunc.dim(), trunc.dim());
    for (int k = 0; k < ell; ++k) apow = apow * a;

    const auto chain = gs_chain(extended, trunc);
    const FockOperator& varpi = chain.back();
    const Complex an = std::pow(extended.label_value(extended.size() - 1), ell);
    out.push_back(make_check("chain_eigen_relation",
                             (varpi * apow * varpi - an * varpi).norm(), tol));

    const FockOperator pi = projector(extended, trunc);
    const FockOperator perp = FockOperator::Identity(trunc.dim(), trunc.dim()) - pi;
    out.push_back(make_check("perp_a_projector", (perp * apow * pi).norm(), tol));
    return out;
}

/// Covariance of Pi(S) under displacement and free evolution.
inline std::vector<CheckResult> covariance_check(const CoherentSpace& space, const Label& z,
                                                 double t, const TruncationPolicy& trunc,
                                                 double tol_disp = 1e-7,
                                                 double tol_evol = 1e-9) {
    trunc.require_adequate(space.max_abs_label() + std::abs(z.value()));
    std::vector<CheckResult> out;
    const FockOperator pi = projector(space, trunc);

    const FockOperator d = displacement_op(z, trunc);
    const FockOperator shifted = projector(space.displaced(z.value()), trunc);
    out.push_back(make_check("displacement_covariance",
                             (d * pi * d.adjoint() - shifted).norm(), tol_disp));

    const FockOperator u = evolution_op(t, trunc);
    const FockOperator rotated = projector(space.rotated(t), trunc);
    out.push_back(make_check("evolution_covariance",
                             (u * pi * u.adjoint() - rotated).norm(), tol_evol));
    return out;
}

inline void require_density_matrix(const FockOperator& rho, double tol = 1e-8) {
    if (rho.rows() != rho.cols()) throw NotADensityMatrixError("density matrix is not square");
    if ((rho - FockOperator(rho.adjoint())).norm() > tol)
        throw NotADensityMatrixError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tol)
        throw NotADensityMatrixError("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    if (es.eigenvalues().minCoeff() < -tol)
        throw NotADensityMatrixError("density matrix has a negative eigenvalue");
}

/// Generalized Q-function Q(A_1,...,A_n) = Tr[Pi(S) rho].
inline double q_function(const FockOperator& rho, const CoherentSpace& space,
                         const TruncationPolicy& trunc) {
    require_density_matrix(rho);
    require_same_dim(rho.rows(), trunc.dim(), "q_function");
    return ((projector(space, trunc) * rho).trace()).real();
}

// ---- resolution-of-identity quadrature ----------------------------------

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

/// Visit the polar quadrature nodes of the disk |A| <= radius with the
/// combined weight r * w_r * (2 pi / n_phi); the weights sum to the disk
/// area.
template <typename F>
void for_each_disk_node(double radius, int n_r, int n_phi, F&& f) {
    std::vector<double> xs, ws;
    gauss_legendre(n_r, xs, ws);
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    for (int i = 0; i < n_r; ++i) {
        const double r = 0.5 * radius * (xs[i] + 1.0);
        const double wr = 0.5 * radius * ws[i] * r * dphi;
        for (int k = 0; k < n_phi; ++k) {
            const double phi = dphi * k;
            f(Complex(r * std::cos(phi), r * std::sin(phi)), wr);
        }
    }
}

/// The N <= n_max block of Pi(A + d_1, ..., A + d_n) evaluated directly from
/// the analytic Gram matrix; no truncation guard applies because only a
/// block of the infinite-dimensional projector is requested.
inline FockOperator projector_block(Complex a, const std::vector<Complex>& offsets, int n_max) {
    const int n = static_cast<int>(offsets.size());
    Eigen::MatrixXcd gram(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            gram(j, k) = coherent_overlap(a + offsets[j], a + offsets[k]);
    Eigen::MatrixXcd states(n_max + 1, n);
    for (int j = 0; j < n; ++j) states.col(j) = coherent_amps(a + offsets[j], n_max);
    return states * gram.inverse() * states.adjoint();
}

}  // namespace detail

struct QuadratureGrid {
    int n_r = 200;
    int n_phi = 256;
};

/// Quadrature estimate of int d^2A / (n pi) Pi(A, A+d_2, ..., A+d_n) over
/// the disk |A| <= disk_radius, returned on the N <= trunc.n_max block.
/// `offsets` holds d_2..d_n (empty for plain coherent-state projectors).
inline FockOperator resolution_quadrature(const std::vector<Label>& offsets, double disk_radius,
                                          const QuadratureGrid& grid,
                                          const TruncationPolicy& trunc) {
    std::vector<Complex> offs{0.0};
    for (const auto& d : offsets) offs.push_back(d.value());
    const int n = static_cast<int>(offs.size());
    FockOperator accum = FockOperator::Zero(trunc.dim(), trunc.dim());
    detail::for_each_disk_node(disk_radius, grid.n_r, grid.n_phi, [&](Complex a, double w) {
        accum += w * detail::projector_block(a, offs, trunc.n_max);
    });
    return accum / (n * std::numbers::pi);
}

/// Rank-1 variant: int d^2A / pi varpi(A | A+d_1, ..., A+d_{n-1}) = 1.
/// Here the conditioned-on labels come first and A is appended last, so the
/// chain's final projector is the varpi of interest.
inline FockOperator resolution_quadrature_chain(const std::vector<Label>& offsets,
                                                double disk_radius, const QuadratureGrid& grid,
                                                const TruncationPolicy& trunc) {
    FockOperator accum = FockOperator::Zero(trunc.dim(), trunc.dim());
    detail::for_each_disk_node(disk_radius, grid.n_r, grid.n_phi, [&](Complex a, double w) {
        // varpi(A|A+d_1,...) = Pi(A+d_1,...,A+d_{n-1},A) - Pi(A+d_1,...,A+d_{n-1})
        std::vector<Complex> with{}, without{};
        for (const auto& d : offsets) {
            with.push_back(a + d.value());
            without.push_back(a + d.value());
        }
        with.push_back(a);
        FockOperator varpi = detail::projector_block(Complex(0), with, trunc.n_max);
        if (!without.empty())
            varpi -= detail::projector_block(Complex(0), without, trunc.n_max);
        accum += w * varpi;
    });
    return accum / std::numbers::pi;
}

/// Quadrature of int d^2A/(n pi) Q(A, A+d_2, ..., A+d_n) for a density
/// matrix rho; exact in rho's truncation because Q only probes the block rho
/// is supported on.
inline double q_resolution_integral(const FockOperator& rho, const std::vector<Label>& offsets,
                                    double disk_radius, const QuadratureGrid& grid) {
    require_density_matrix(rho);
    const int n_max = static_cast<int>(rho.rows()) - 1;
    std::vector<Complex> offs{0.0};
    for (const auto& d : offsets) offs.push_back(d.value());
    const int n = static_cast<int>(offs.size());
    double total = 0.0;
    detail::for_each_disk_node(disk_radius, grid.n_r, grid.n_phi, [&](Complex a, double w) {
        total += w * (detail::projector_block(a, offs, n_max) * rho).trace().real();
    });
    return total / (n * std::numbers::pi);
}

/// A normalized state orthogonal to H(S): its Bargmann function is the
/// polynomial prod_j (z - A_j^*), so the amplitudes are s_N = sqrt(N!) b_N
/// with b_N the polynomial coefficients.
inline FockVector orthogonal_state(const CoherentSpace& space, const TruncationPolicy& trunc) {
    const Eigen::Index n = space.size();
    if (4 * n > trunc.n_max)
        throw InadequateTruncationError("orthogonal_state: |S| > n_max/4");
    std::vector<Complex> poly{1.0};  // coefficients of prod (z - A_j^*)
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex root = std::conj(space.label_value(j));
        std::vector<Complex> next(poly.size() + 1, 0.0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= root * poly[k];
        }
        poly = std::move(next);
    }
    FockVector s = FockVector::Zero(trunc.dim());
    double fact = 1.0;  // sqrt(N!)
    for (std::size_t N = 0; N < poly.size(); ++N) {
        if (N > 0) fact *= std::sqrt(double(N));
        s(static_cast<Eigen::Index>(N)) = poly[N] * fact;
    }
    s.normalize();
    return s;
}

}  // namespace cohsp
