#pragma once

// Truncated number-basis linear algebra: coherent-state vectors, ladder and
// quadrature operators, displacement and free-evolution operators. This is
// the numerical oracle the analytic modules are checked against.

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "cohsp/complex_sets.hpp"
#include "cohsp/errors.hpp"

namespace cohsp {

using Complex = std::complex<double>;
using FockVector = Eigen::VectorXcd;    // amplitudes s_0 .. s_{n_max}
using FockOperator = Eigen::MatrixXcd;  // element (M, N) = <M|Theta|N>

/// Where to cut the number basis. A policy is adequate for a coherent
/// amplitude |A| when n_max clears the Poisson mean |A|^2 by ten standard
/// deviations, which keeps the discarded tail below ~1e-12 for |A| up to ~6.
struct TruncationPolicy {
    int n_max = 64;
    double tail_tol = 1e-12;
    bool allow_inadequate = false;  // explicit override for exploratory use

    int dim() const { return n_max + 1; }

    static int required_n_max(double amp) {
        const double mean = amp * amp;
        return static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0)));
    }

    bool adequate_for(double amp) const { return n_max >= required_n_max(amp); }

    void require_adequate(double amp) const {
        if (!adequate_for(amp) && !allow_inadequate)
            throw InadequateTruncationError("n_max=" + std::to_string(n_max) +
                                            " is inadequate for |A|=" + std::to_string(amp) +
                                            " (need >= " + std::to_string(required_n_max(amp)) + ")");
    }
};

namespace detail {

/// Coherent amplitudes e^{-|A|^2/2} A^N / sqrt(N!) up to n, no adequacy
/// guard. The running product keeps every intermediate bounded by 1.
inline FockVector coherent_amps(Complex a, int n_max) {
    FockVector v(n_max + 1);
    v(0) = std::exp(-0.5 * std::norm(a));
    for (int n = 1; n <= n_max; ++n) v(n) = v(n - 1) * a / std::sqrt(double(n));
    return v;
}

}  // namespace detail

inline FockVector coherent_vector(const Label& a, const TruncationPolicy& trunc) {
    trunc.require_adequate(std::abs(a.value()));
    return detail::coherent_amps(a.value(), trunc.n_max);
}

inline FockVector vacuum(const TruncationPolicy& trunc) {
    FockVector v = FockVector::Zero(trunc.dim());
    v(0) = 1.0;
    return v;
}

inline FockVector number_state(int n, const TruncationPolicy& trunc) {
    if (n < 0 || n > trunc.n_max) throw DimensionMismatchError("number_state: N out of range");
    FockVector v = FockVector::Zero(trunc.dim());
    v(n) = 1.0;
    return v;
}

inline FockOperator annihilation_op(const TruncationPolicy& trunc) {
    FockOperator a = FockOperator::Zero(trunc.dim(), trunc.dim());
    for (int n = 1; n <= trunc.n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline FockOperator creation_op(const TruncationPolicy& trunc) {
    return annihilation_op(trunc).adjoint();
}

inline FockOperator quadrature_x(const TruncationPolicy& trunc) {
    const FockOperator a = annihilation_op(trunc);
    return (a + FockOperator(a.adjoint())) / std::sqrt(2.0);
}

inline FockOperator quadrature_p(const TruncationPolicy& trunc) {
    const FockOperator a = annihilation_op(trunc);
    return Complex(0, 1) * (FockOperator(a.adjoint()) - a) / std::sqrt(2.0);
}

inline FockOperator number_op(const TruncationPolicy& trunc) {
    FockOperator n = FockOperator::Zero(trunc.dim(), trunc.dim());
    for (int k = 0; k <= trunc.n_max; ++k) n(k, k) = double(k);
    return n;
}

namespace detail {
/// Associated Laguerre polynomial L_n^(alpha)(x) by the three-term
/// recurrence.
inline double assoc_laguerre(int n, int alpha, double x) {
    if (n == 0) return 1.0;
    double lkm1 = 1.0;
    double lk = 1.0 + alpha - x;
    for (int k = 2; k <= n; ++k) {
        const double lkp1 = ((2.0 * k - 1.0 + alpha - x) * lk - (k - 1.0 + alpha) * lkm1) / k;
        lkm1 = lk;
        lk = lkp1;
    }
    return lk;
}
}  // namespace detail

/// D(z) = exp(z a^dag - z^* a) assembled from the closed-form matrix
/// elements <m|D|n> = sqrt(n!/m!) z^{m-n} e^{-|z|^2/2} L_n^{(m-n)}(|z|^2)
/// (m >= n), rather than from exponentiating the truncated generator.
inline FockOperator displacement_op(const Label& z, const TruncationPolicy& trunc) {
    const Complex zc = z.value();
    trunc.require_adequate(std::abs(zc));
    const int dim = trunc.dim();
    const double x = std::norm(zc);
    const double gauss = std::exp(-0.5 * x);
    FockOperator d(dim, dim);
    for (int m = 0; m < dim; ++m) {
        for (int n = 0; n <= m; ++n) {
            Complex pref = gauss;
            for (int k = n + 1; k <= m; ++k) pref *= zc / std::sqrt(double(k));
            const Complex val = pref * detail::assoc_laguerre(n, m - n, x);
            d(m, n) = val;
            if (m != n) {
                // <n|D|m> = sqrt(n!/m!) (-z^*)^{m-n} e^{-x/2} L_n^{(m-n)}(x)
                Complex pref2 = gauss;
                for (int k = n + 1; k <= m; ++k) pref2 *= -std::conj(zc) / std::sqrt(double(k));
                d(n, m) = pref2 * detail::assoc_laguerre(n, m - n, x);
            }
        }
    }
    return d;
}

/// exp(i t a^dag a), exactly unitary on the retained block.
inline FockOperator evolution_op(double t, const TruncationPolicy& trunc) {
    FockOperator u = FockOperator::Zero(trunc.dim(), trunc.dim());
    for (int n = 0; n <= trunc.n_max; ++n) u(n, n) = std::exp(Complex(0, t * n));
    return u;
}

// ---- plumbing over Eigen with dimension checks --------------------------

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) throw DimensionMismatchError(std::string(what) + ": dimension mismatch");
}

inline Complex inner(const FockVector& f, const FockVector& s) {
    require_same_dim(f.size(), s.size(), "inner");
    return f.dot(s);  // conjugates the left argument
}

inline FockVector apply_op(const FockOperator& op, const FockVector& s) {
    require_same_dim(op.cols(), s.size(), "apply_op");
    return op * s;
}

inline Complex trace(const FockOperator& op) { return op.trace(); }

inline FockOperator compose(const FockOperator& a, const FockOperator& b) {
    require_same_dim(a.cols(), b.rows(), "compose");
    return a * b;
}

inline FockOperator adjoint(const FockOperator& a) { return a.adjoint(); }

inline double frobenius_norm(const FockOperator& a) { return a.norm(); }

inline FockOperator outer(const FockVector& u, const FockVector& v) {
    require_same_dim(u.size(), v.size(), "outer");
    return u * v.adjoint();
}

}  // namespace cohsp
