#pragma once

// Exact residue-calculus engine for the Dirac contour representation.
// Kets are entire functions (finite sums of exponentials for coherent
// superpositions, polynomials for finite Fock superpositions); bras are
// rational functions with simple poles at conjugated labels, plus an
// origin pole of higher order for finite Fock superpositions. Operators are
// sums of exponential-pole kernels c e^{a z1}/(z2 - p), monomial-pole
// kernels c z1^n/(z2 - p), and an optional Cauchy (identity) term
// c/(z2 - z1). Every contour integral of the formalism is evaluated in
// closed form through the residue table; convergence annuli never appear at
// runtime.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cohsp/coherent_space.hpp"
#include "cohsp/complex_sets.hpp"
#include "cohsp/errors.hpp"
#include "cohsp/fock.hpp"

namespace cohsp {

/// Relative threshold below which a coefficient produced by cancellation is
/// treated as an exact zero.
inline constexpr double kCancellationTolerance = 1e-15;

struct ExpTerm {
    Complex c;  // c * exp(a z)
    Complex a;
};

struct PoleTerm {
    Complex c;  // c / (z - p)
    Complex p;
};

namespace detail {

inline bool bit_equal(Complex a, Complex b) {
    return Label(a) == Label(b);
}

inline bool key_less(Complex a, Complex b) { return Label(a) < Label(b); }

}  // namespace detail

/// Ket function s_k(z): entire, stored as exponential terms plus polynomial
/// coefficients (poly[M] multiplies z^M).
class KetFn {
  public:
    KetFn() = default;

    static KetFn exponential(Complex c, Complex a) {
        KetFn k;
        k.exps_.push_back({c, a});
        return k;
    }

    static KetFn polynomial(std::vector<Complex> coeffs) {
        KetFn k;
        k.poly_ = std::move(coeffs);
        k.normalize();
        return k;
    }

    const std::vector<ExpTerm>& exp_terms() const { return exps_; }
    const std::vector<Complex>& poly_coeffs() const { return poly_; }

    Complex operator()(Complex z) const {
        Complex v = 0.0;
        for (const auto& t : exps_) v += t.c * std::exp(t.a * z);
        Complex zp = 1.0;
        for (const auto& c : poly_) {
            v += c * zp;
            zp *= z;
        }
        return v;
    }

    /// Coefficient of z^N in the Taylor expansion at the origin.
    Complex taylor(int n) const {
        Complex v = 0.0;
        for (const auto& t : exps_) {
            Complex term = t.c;
            for (int k = 1; k <= n; ++k) term *= t.a / double(k);
            v += term;
        }
        if (n < static_cast<int>(poly_.size())) v += poly_[n];
        return v;
    }

    KetFn& operator+=(const KetFn& o) {
        exps_.insert(exps_.end(), o.exps_.begin(), o.exps_.end());
        if (o.poly_.size() > poly_.size()) poly_.resize(o.poly_.size(), 0.0);
        for (std::size_t i = 0; i < o.poly_.size(); ++i) poly_[i] += o.poly_[i];
        normalize();
        return *this;
    }

    KetFn& operator*=(Complex s) {
        for (auto& t : exps_) t.c *= s;
        for (auto& c : poly_) c *= s;
        normalize();
        return *this;
    }

    friend KetFn operator+(KetFn a, const KetFn& b) { return a += b; }
    friend KetFn operator*(Complex s, KetFn k) { return k *= s; }

    double max_coeff() const {
        double m = 0.0;
        for (const auto& t : exps_) m = std::max(m, std::abs(t.c));
        for (const auto& c : poly_) m = std::max(m, std::abs(c));
        return m;
    }

    void normalize() {
        std::sort(exps_.begin(), exps_.end(),
                  [](const ExpTerm& x, const ExpTerm& y) { return detail::key_less(x.a, y.a); });
        std::vector<ExpTerm> merged;
        for (const auto& t : exps_) {
            if (!merged.empty() && detail::bit_equal(merged.back().a, t.a))
                merged.back().c += t.c;
            else
                merged.push_back(t);
        }
        double scale = 0.0;
        for (const auto& t : merged) scale = std::max(scale, std::abs(t.c));
        for (const auto& c : poly_) scale = std::max(scale, std::abs(c));
        exps_.clear();
        for (const auto& t : merged)
            if (std::abs(t.c) > kCancellationTolerance * scale) exps_.push_back(t);
        while (!poly_.empty() && std::abs(poly_.back()) <= kCancellationTolerance * scale)
            poly_.pop_back();
    }

  private:
    std::vector<ExpTerm> exps_;
    std::vector<Complex> poly_;
};

/// Bra function s_b(z): simple poles c/(z - p) plus an origin part
/// origin[N] / z^{N+1} for finite Fock superpositions.
class BraFn {
  public:
    BraFn() = default;

    static BraFn pole(Complex c, Complex p) {
        BraFn b;
        b.poles_.push_back({c, p});
        return b;
    }

    static BraFn origin_series(std::vector<Complex> coeffs) {
        BraFn b;
        b.origin_ = std::move(coeffs);
        b.normalize();
        return b;
    }

    const std::vector<PoleTerm>& pole_terms() const { return poles_; }
    const std::vector<Complex>& origin_coeffs() const { return origin_; }

    BraFn& operator+=(const BraFn& o) {
        poles_.insert(poles_.end(), o.poles_.begin(), o.poles_.end());
        if (o.origin_.size() > origin_.size()) origin_.resize(o.origin_.size(), 0.0);
        for (std::size_t i = 0; i < o.origin_.size(); ++i) origin_[i] += o.origin_[i];
        normalize();
        return *this;
    }

    BraFn& operator*=(Complex s) {
        for (auto& t : poles_) t.c *= s;
        for (auto& c : origin_) c *= s;
        normalize();
        return *this;
    }

    friend BraFn operator+(BraFn a, const BraFn& b) { return a += b; }
    friend BraFn operator-(BraFn a, const BraFn& b) {
        BraFn nb = b;
        nb *= Complex(-1.0);
        return a += nb;
    }
    friend BraFn operator*(Complex s, BraFn b) { return b *= s; }

    void normalize() {
        std::sort(poles_.begin(), poles_.end(),
                  [](const PoleTerm& x, const PoleTerm& y) { return detail::key_less(x.p, y.p); });
        std::vector<PoleTerm> merged;
        for (const auto& t : poles_) {
            if (!merged.empty() && detail::bit_equal(merged.back().p, t.p))
                merged.back().c += t.c;
            else
                merged.push_back(t);
        }
        double scale = 0.0;
        for (const auto& t : merged) scale = std::max(scale, std::abs(t.c));
        for (const auto& c : origin_) scale = std::max(scale, std::abs(c));
        poles_.clear();
        for (const auto& t : merged)
            if (std::abs(t.c) > kCancellationTolerance * scale) poles_.push_back(t);
        while (!origin_.empty() && std::abs(origin_.back()) <= kCancellationTolerance * scale)
            origin_.pop_back();
    }

  private:
    std::vector<PoleTerm> poles_;
    std::vector<Complex> origin_;
};

// ---- state constructors ---------------------------------------------------

/// Ket of sum_j coeffs_j |A_j>: sum_j coeffs_j e^{-|A_j|^2/2} e^{A_j z}.
inline KetFn ket_of(const std::vector<Label>& labels, const Eigen::VectorXcd& coeffs) {
    if (static_cast<Eigen::Index>(labels.size()) != coeffs.size())
        throw DimensionMismatchError("ket_of: labels/coefficients size mismatch");
    KetFn k;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        const Complex a = labels[j].value();
        k += KetFn::exponential(coeffs(j) * std::exp(-0.5 * std::norm(a)), a);
    }
    return k;
}

/// Bra of the same superposition: sum_j coeffs_j^* e^{-|A_j|^2/2} / (z - A_j^*).
inline BraFn bra_of(const std::vector<Label>& labels, const Eigen::VectorXcd& coeffs) {
    if (static_cast<Eigen::Index>(labels.size()) != coeffs.size())
        throw DimensionMismatchError("bra_of: labels/coefficients size mismatch");
    BraFn b;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        const Complex a = labels[j].value();
        b += BraFn::pole(std::conj(coeffs(j)) * std::exp(-0.5 * std::norm(a)), std::conj(a));
    }
    return b;
}

/// Ket of a finite Fock superposition sum s_N |N>: s_k(z) = sum s_N z^N/sqrt(N!).
inline KetFn ket_of_fock(const Eigen::VectorXcd& amps) {
    std::vector<Complex> poly(amps.size());
    double fact = 1.0;
    for (Eigen::Index n = 0; n < amps.size(); ++n) {
        if (n > 0) fact *= std::sqrt(double(n));
        poly[n] = amps(n) / fact;
    }
    return KetFn::polynomial(std::move(poly));
}

/// Bra of a finite Fock superposition: sum s_N^* sqrt(N!) / z^{N+1}.
inline BraFn bra_of_fock(const Eigen::VectorXcd& amps) {
    std::vector<Complex> coeffs(amps.size());
    double fact = 1.0;
    for (Eigen::Index n = 0; n < amps.size(); ++n) {
        if (n > 0) fact *= std::sqrt(double(n));
        coeffs[n] = std::conj(amps(n)) * fact;
    }
    return BraFn::origin_series(std::move(coeffs));
}

/// <f|s> as the residue sum over the poles of f_b: simple poles contribute
/// coefficient * s_k(pole); the origin part pairs coefficientwise with the
/// Taylor expansion of s_k.
inline Complex scalar(const BraFn& f, const KetFn& s) {
    Complex v = 0.0;
    for (const auto& t : f.pole_terms()) v += t.c * s(t.p);
    for (std::size_t n = 0; n < f.origin_coeffs().size(); ++n)
        v += f.origin_coeffs()[n] * s.taylor(static_cast<int>(n));
    return v;
}

// ---- operator kernels ------------------------------------------------------

struct KernelExpTerm {
    Complex c;  // c e^{a z1} / (z2 - p)
    Complex a;
    Complex p;
};

struct KernelMonoTerm {
    Complex c;  // c z1^n / (z2 - p)
    int n = 0;
    Complex p;
};

class ContourKernel {
  public:
    ContourKernel() = default;

    static ContourKernel identity(Complex c = 1.0) {
        ContourKernel k;
        k.cauchy_ = c;
        return k;
    }

    Complex cauchy() const { return cauchy_; }
    const std::vector<KernelExpTerm>& exp_terms() const { return terms_; }
    const std::vector<KernelMonoTerm>& mono_terms() const { return mono_; }

    void add_exp_term(Complex c, Complex a, Complex p) { terms_.push_back({c, a, p}); }
    void add_mono_term(Complex c, int n, Complex p) { mono_.push_back({c, n, p}); }
    void add_cauchy(Complex c) { cauchy_ += c; }

    ContourKernel& operator+=(const ContourKernel& o) {
        cauchy_ += o.cauchy_;
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        mono_.insert(mono_.end(), o.mono_.begin(), o.mono_.end());
        normalize();
        return *this;
    }

    ContourKernel& operator*=(Complex s) {
        cauchy_ *= s;
        for (auto& t : terms_) t.c *= s;
        for (auto& t : mono_) t.c *= s;
        return *this;
    }

    friend ContourKernel operator+(ContourKernel a, const ContourKernel& b) { return a += b; }
    friend ContourKernel operator-(ContourKernel a, const ContourKernel& b) {
        ContourKernel nb = b;
        nb *= Complex(-1.0);
        return a += nb;
    }
    friend ContourKernel operator*(Complex s, ContourKernel k) { return k *= s; }

    double max_coeff() const {
        double m = std::abs(cauchy_);
        for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
        for (const auto& t : mono_) m = std::max(m, std::abs(t.c));
        return m;
    }

    /// Merge equal (a, p) / (n, p) keys and prune cancelled coefficients.
    /// Degree-0 monomial terms are folded into a = 0 exponential terms so
    /// that the two encodings of a constant numerator compare equal.
    void normalize() {
        for (auto it = mono_.begin(); it != mono_.end();) {
            if (it->n == 0) {
                terms_.push_back({it->c, Complex(0.0), it->p});
                it = mono_.erase(it);
            } else {
                ++it;
            }
        }
        std::sort(terms_.begin(), terms_.end(), [](const KernelExpTerm& x, const KernelExpTerm& y) {
            if (!detail::bit_equal(x.p, y.p)) return detail::key_less(x.p, y.p);
            return detail::key_less(x.a, y.a);
        });
        std::sort(mono_.begin(), mono_.end(), [](const KernelMonoTerm& x, const KernelMonoTerm& y) {
            if (!detail::bit_equal(x.p, y.p)) return detail::key_less(x.p, y.p);
            return x.n < y.n;
        });
        std::vector<KernelExpTerm> me;
        for (const auto& t : terms_) {
            if (!me.empty() && detail::bit_equal(me.back().p, t.p) &&
                detail::bit_equal(me.back().a, t.a))
                me.back().c += t.c;
            else
                me.push_back(t);
        }
        std::vector<KernelMonoTerm> mm;
        for (const auto& t : mono_) {
            if (!mm.empty() && detail::bit_equal(mm.back().p, t.p) && mm.back().n == t.n)
                mm.back().c += t.c;
            else
                mm.push_back(t);
        }
        double scale = std::abs(cauchy_);
        for (const auto& t : me) scale = std::max(scale, std::abs(t.c));
        for (const auto& t : mm) scale = std::max(scale, std::abs(t.c));
        terms_.clear();
        mono_.clear();
        for (const auto& t : me)
            if (std::abs(t.c) > kCancellationTolerance * scale) terms_.push_back(t);
        for (const auto& t : mm)
            if (std::abs(t.c) > kCancellationTolerance * scale) mono_.push_back(t);
    }

  private:
    Complex cauchy_ = 0.0;
    std::vector<KernelExpTerm> terms_;
    std::vector<KernelMonoTerm> mono_;
};

/// Pi(S) = sum_jk G_jk(S) e^{A_j z1 - |A_j|^2/2 - |A_k|^2/2} / (z2 - A_k^*).
inline ContourKernel kernel_of_projector(const CoherentSpace& space) {
    ContourKernel k;
    for (Eigen::Index j = 0; j < space.size(); ++j) {
        const Complex aj = space.label_value(j);
        for (Eigen::Index l = 0; l < space.size(); ++l) {
            const Complex ak = space.label_value(l);
            k.add_exp_term(space.g_inverse()(j, l) *
                               std::exp(-0.5 * std::norm(aj) - 0.5 * std::norm(ak)),
                           aj, std::conj(ak));
        }
    }
    k.normalize();
    return k;
}

/// sum_jk u_j v_k^* |A_j><B_k| for coherent superpositions u over ket_labels
/// and v over bra_labels.
inline ContourKernel kernel_outer(const std::vector<Label>& ket_labels,
                                  const Eigen::VectorXcd& u,
                                  const std::vector<Label>& bra_labels,
                                  const Eigen::VectorXcd& v) {
    if (static_cast<Eigen::Index>(ket_labels.size()) != u.size() ||
        static_cast<Eigen::Index>(bra_labels.size()) != v.size())
        throw DimensionMismatchError("kernel_outer: labels/coefficients size mismatch");
    ContourKernel k;
    for (std::size_t j = 0; j < ket_labels.size(); ++j) {
        const Complex a = ket_labels[j].value();
        for (std::size_t l = 0; l < bra_labels.size(); ++l) {
            const Complex b = bra_labels[l].value();
            k.add_exp_term(u(j) * std::conj(v(l)) *
                               std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b)),
                           a, std::conj(b));
        }
    }
    k.normalize();
    return k;
}

/// |N><A|, the standard counterexample to the lives-in property: the ket
/// factor is polynomial rather than exponential.
inline ContourKernel kernel_number_outer(int n, const Label& a) {
    ContourKernel k;
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    k.add_mono_term(std::exp(-0.5 * std::norm(a.value())) / std::sqrt(fact), n,
                    std::conj(a.value()));
    k.normalize();
    return k;
}

/// Theta |s>: the Cauchy part reproduces the ket; each kernel term
/// contributes its numerator scaled by s_k evaluated at the term's pole.
inline KetFn kernel_apply_ket(const ContourKernel& k, const KetFn& s) {
    KetFn out;
    if (k.cauchy() != Complex(0.0)) {
        KetFn copy = s;
        copy *= k.cauchy();
        out += copy;
    }
    for (const auto& t : k.exp_terms()) out += KetFn::exponential(t.c * s(t.p), t.a);
    for (const auto& t : k.mono_terms()) {
        std::vector<Complex> poly(t.n + 1, 0.0);
        poly[t.n] = t.c * s(t.p);
        out += KetFn::polynomial(std::move(poly));
    }
    return out;
}

namespace detail {

/// Residue of u_b(zeta) e^{a zeta} over the poles of the bra.
inline Complex bra_pair_exp(const BraFn& u, Complex a) {
    Complex v = 0.0;
    for (const auto& t : u.pole_terms()) v += t.c * std::exp(a * t.p);
    Complex apow = 1.0;
    for (std::size_t n = 0; n < u.origin_coeffs().size(); ++n) {
        v += u.origin_coeffs()[n] * apow;
        apow *= a / double(n + 1);
    }
    return v;
}

/// Residue of u_b(zeta) zeta^n over the poles of the bra.
inline Complex bra_pair_mono(const BraFn& u, int n) {
    Complex v = 0.0;
    for (const auto& t : u.pole_terms()) v += t.c * std::pow(t.p, n);
    if (n < static_cast<int>(u.origin_coeffs().size())) v += u.origin_coeffs()[n];
    return v;
}

}  // namespace detail

/// <u| Theta: each kernel term becomes a simple pole at its own p, weighted
/// by the bra paired against the term's numerator.
inline BraFn bra_apply_kernel(const BraFn& u, const ContourKernel& k) {
    BraFn out;
    if (k.cauchy() != Complex(0.0)) {
        BraFn copy = u;
        copy *= k.cauchy();
        out += copy;
    }
    for (const auto& t : k.exp_terms())
        out += BraFn::pole(t.c * detail::bra_pair_exp(u, t.a), t.p);
    for (const auto& t : k.mono_terms())
        out += BraFn::pole(t.c * detail::bra_pair_mono(u, t.n), t.p);
    return out;
}

/// Theta_1 Theta_2 by residue composition: the left numerator survives, the
/// right numerator is evaluated at the left term's pole, and the right pole
/// is kept. Cauchy terms act as scalars.
inline ContourKernel kernel_product(const ContourKernel& k1, const ContourKernel& k2) {
    ContourKernel out;
    out.add_cauchy(k1.cauchy() * k2.cauchy());
    if (k2.cauchy() != Complex(0.0)) {
        for (const auto& t : k1.exp_terms()) out.add_exp_term(t.c * k2.cauchy(), t.a, t.p);
        for (const auto& t : k1.mono_terms()) out.add_mono_term(t.c * k2.cauchy(), t.n, t.p);
    }
    if (k1.cauchy() != Complex(0.0)) {
        for (const auto& t : k2.exp_terms()) out.add_exp_term(t.c * k1.cauchy(), t.a, t.p);
        for (const auto& t : k2.mono_terms()) out.add_mono_term(t.c * k1.cauchy(), t.n, t.p);
    }
    auto right_factor_at = [&k2](Complex p1, auto&& emit) {
        for (const auto& t2 : k2.exp_terms()) emit(t2.c * std::exp(t2.a * p1), t2.p);
        for (const auto& t2 : k2.mono_terms()) emit(t2.c * std::pow(p1, t2.n), t2.p);
    };
    for (const auto& t1 : k1.exp_terms())
        right_factor_at(t1.p, [&](Complex f, Complex p2) { out.add_exp_term(t1.c * f, t1.a, p2); });
    for (const auto& t1 : k1.mono_terms())
        right_factor_at(t1.p, [&](Complex f, Complex p2) { out.add_mono_term(t1.c * f, t1.n, p2); });
    out.normalize();
    return out;
}

/// Tr Theta: each term contributes its numerator evaluated at its own pole
/// (c e^{a p} or c p^n). The double-contour formula taken literally with the
/// printed |z1| > |z2| ordering produces the opposite sign; the engine fixes
/// the convention so that Tr |A><A| = +1 = sum Theta_NN.
inline Complex kernel_trace(const ContourKernel& k) {
    if (k.cauchy() != Complex(0.0))
        throw NotTraceClassError("kernel_trace: identity component is not trace class");
    Complex v = 0.0;
    for (const auto& t : k.exp_terms()) v += t.c * std::exp(t.a * t.p);
    for (const auto& t : k.mono_terms()) v += t.c * std::pow(t.p, t.n);
    return v;
}

/// Distinct pole locations of the kernel's z2 dependence, as a CSet (the
/// bridge into the Boolean ring of label sets).
inline CSet pole_set(const ContourKernel& k) {
    const double scale = k.max_coeff();
    std::vector<Label> poles;
    auto push = [&](Complex p, Complex c) {
        if (std::abs(c) > kCancellationTolerance * scale) poles.push_back(Label(p));
    };
    for (const auto& t : k.exp_terms()) push(t.p, t.c);
    for (const auto& t : k.mono_terms()) push(t.p, t.c);
    return CSet(std::move(poles));
}

inline CSet pole_set(const BraFn& b) {
    double scale = 0.0;
    for (const auto& t : b.pole_terms()) scale = std::max(scale, std::abs(t.c));
    for (const auto& c : b.origin_coeffs()) scale = std::max(scale, std::abs(c));
    std::vector<Label> poles;
    for (const auto& t : b.pole_terms())
        if (std::abs(t.c) > kCancellationTolerance * scale) poles.push_back(Label(t.p));
    for (const auto& c : b.origin_coeffs()) {
        if (std::abs(c) > kCancellationTolerance * scale) {
            poles.push_back(Label(0.0, 0.0));
            break;
        }
    }
    return CSet(std::move(poles));
}

/// Largest coefficientwise deviation between two kernels, relative to the
/// larger coefficient scale. Both are normalized first, so equal-key terms
/// line up and the two encodings of constants coincide.
inline double kernel_rel_deviation(const ContourKernel& ka, const ContourKernel& kb) {
    ContourKernel a = ka, b = kb;
    a.normalize();
    b.normalize();
    const double scale = std::max({a.max_coeff(), b.max_coeff(), 1e-300});
    ContourKernel diff = a - b;
    // normalize() inside operator+= already merged matching keys
    double dev = std::abs(diff.cauchy());
    for (const auto& t : diff.exp_terms()) dev = std::max(dev, std::abs(t.c));
    for (const auto& t : diff.mono_terms()) dev = std::max(dev, std::abs(t.c));
    return dev / scale;
}

/// Whether Pi(S) Theta Pi(S) = Theta coefficientwise, i.e. Theta lives
/// entirely inside H(S). Kernels with polynomial numerators (|N><A| and
/// friends) fail this even when their pole sits in S^*.
inline bool lives_in_check(const ContourKernel& theta, const CoherentSpace& space,
                           double rel_tol = 1e-9) {
    const ContourKernel pi = kernel_of_projector(space);
    const ContourKernel sandwich = kernel_product(kernel_product(pi, theta), pi);
    return kernel_rel_deviation(sandwich, theta) <= rel_tol;
}

// ---- cross-representation converters --------------------------------------

/// Truncated Fock amplitudes of a ket function.
inline FockVector ket_to_fock(const KetFn& k, const TruncationPolicy& trunc) {
    FockVector v = FockVector::Zero(trunc.dim());
    double fact = 1.0;  // sqrt(N!)
    for (int n = 0; n <= trunc.n_max; ++n) {
        if (n > 0) fact *= std::sqrt(double(n));
        v(n) = k.taylor(n) * fact;
    }
    return v;
}

/// Truncated Fock matrix of a kernel. Theta_MN pairs the numerator's Taylor
/// coefficient at M with the pole's geometric series at N.
inline FockOperator kernel_to_fock(const ContourKernel& k, const TruncationPolicy& trunc) {
    const int dim = trunc.dim();
    FockOperator m = FockOperator::Zero(dim, dim);
    if (k.cauchy() != Complex(0.0)) m += k.cauchy() * FockOperator::Identity(dim, dim);
    std::vector<double> sqrt_fact(dim, 1.0);
    for (int n = 1; n < dim; ++n) sqrt_fact[n] = sqrt_fact[n - 1] * std::sqrt(double(n));
    for (const auto& t : k.exp_terms()) {
        // c e^{a z1}/(z2 - p): Theta_MN = c a^M p^N / (sqrt(M!) sqrt(N!))
        Complex am = t.c;
        for (int M = 0; M < dim; ++M) {
            if (M > 0) am *= t.a / double(M);
            Complex pn = am * sqrt_fact[M];
            for (int N = 0; N < dim; ++N) {
                if (N > 0) pn *= t.p;
                m(M, N) += pn / sqrt_fact[N];
            }
        }
    }
    for (const auto& t : k.mono_terms()) {
        if (t.n >= dim) continue;
        Complex pn = t.c * sqrt_fact[t.n];
        for (int N = 0; N < dim; ++N) {
            if (N > 0) pn *= t.p;
            m(t.n, N) += pn / sqrt_fact[N];
        }
    }
    return m;
}

}  // namespace cohsp
