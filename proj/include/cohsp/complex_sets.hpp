#pragma once

// The Boolean ring of finite sets of complex labels: lattice operations
// (union, intersection, relative complement), ring operations (symmetric
// difference as +, intersection as *), principal ideals and the integer
// codes used by the gate tables.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "cohsp/errors.hpp"

namespace cohsp {

/// A point of the complex plane used as a set element. Identity is exact:
/// two labels are equal iff their (re, im) bit patterns are equal, and the
/// hash is computed from the same bits.
struct Label {
    double re = 0.0;
    double im = 0.0;

    Label() = default;
    Label(double r, double i) : re(r), im(i) {}
    explicit Label(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> value() const { return {re, im}; }
    Label conj() const { return {re, -im}; }

    friend bool operator==(const Label& a, const Label& b) {
        return std::bit_cast<std::uint64_t>(a.re) == std::bit_cast<std::uint64_t>(b.re) &&
               std::bit_cast<std::uint64_t>(a.im) == std::bit_cast<std::uint64_t>(b.im);
    }
    friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

    // Canonical (re, im) lexicographic order used for serialization and for
    // the bit assignment of ideal codes.
    friend bool operator<(const Label& a, const Label& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

inline double distance(const Label& a, const Label& b) {
    return std::hypot(a.re - b.re, a.im - b.im);
}

struct LabelHash {
    std::size_t operator()(const Label& l) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xffu;
                h *= 1099511628211ull;
            }
        };
        mix(std::bit_cast<std::uint64_t>(l.re));
        mix(std::bit_cast<std::uint64_t>(l.im));
        return static_cast<std::size_t>(h);
    }
};

/// Two distinct labels closer than this make downstream Gram matrices
/// numerically singular, so set construction rejects them outright.
inline constexpr double kDuplicateTolerance = 1e-12;

/// A finite set of complex labels, the ring element of the lattice of all
/// finite subsets of the plane. Elements are kept sorted in the canonical
/// (re, im) lexicographic order and are pairwise distinct.
class CSet {
  public:
    CSet() = default;

    explicit CSet(std::vector<Label> labels) : elems_(std::move(labels)) {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
        check_separation();
    }

    CSet(std::initializer_list<Label> labels) : CSet(std::vector<Label>(labels)) {}

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const std::vector<Label>& elements() const { return elems_; }
    const Label& operator[](std::size_t i) const { return elems_[i]; }

    bool contains(const Label& l) const {
        return std::find(elems_.begin(), elems_.end(), l) != elems_.end();
    }

    friend bool operator==(const CSet& a, const CSet& b) { return a.elems_ == b.elems_; }
    friend bool operator!=(const CSet& a, const CSet& b) { return !(a == b); }

    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

  private:
    void check_separation() const {
        for (std::size_t i = 0; i < elems_.size(); ++i)
            for (std::size_t j = i + 1; j < elems_.size(); ++j)
                if (distance(elems_[i], elems_[j]) < kDuplicateTolerance)
                    throw DuplicateLabelError("two distinct labels are closer than 1e-12");
    }

    std::vector<Label> elems_;
};

inline CSet unite(const CSet& s1, const CSet& s2) {
    std::vector<Label> out;
    std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(out));
    return CSet(std::move(out));
}

inline CSet intersect(const CSet& s1, const CSet& s2) {
    std::vector<Label> out;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(out));
    return CSet(std::move(out));
}

inline CSet sym_diff(const CSet& s1, const CSet& s2) {
    std::vector<Label> out;
    std::set_symmetric_difference(s1.begin(), s1.end(), s2.begin(), s2.end(),
                                  std::back_inserter(out));
    return CSet(std::move(out));
}

inline bool is_subset(const CSet& s1, const CSet& s2) {
    return std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
}

/// R \ S, the complement of S inside the interval [∅, R]. Equals R + S.
inline CSet rel_complement(const CSet& s, const CSet& r) {
    if (!is_subset(s, r)) throw NotASubsetError("rel_complement: S is not a subset of R");
    std::vector<Label> out;
    std::set_difference(r.begin(), r.end(), s.begin(), s.end(), std::back_inserter(out));
    return CSet(std::move(out));
}

// Ring notation: + is symmetric difference (XOR), * is intersection (AND).
inline CSet operator+(const CSet& a, const CSet& b) { return sym_diff(a, b); }
inline CSet operator*(const CSet& a, const CSet& b) { return intersect(a, b); }

/// A subset of a base set R addressed by an integer code. Bit i of the code
/// records membership of R's i-th element (in R's canonical order), so codes
/// run over 0 .. 2^|R| - 1 exactly as in the gate tables.
struct IdealIndex {
    CSet base;
    std::uint32_t code = 0;
};

inline constexpr std::size_t kMaxPowersetBase = 20;

inline std::uint32_t encode(const CSet& r, const CSet& s) {
    if (r.size() > kMaxPowersetBase) throw TooLargeError("encode: |R| > 20");
    if (!is_subset(s, r)) throw NotASubsetError("encode: S is not a subset of R");
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (s.contains(r[i])) code |= (1u << i);
    return code;
}

inline CSet decode(const CSet& r, std::uint32_t code) {
    if (r.size() > kMaxPowersetBase) throw TooLargeError("decode: |R| > 20");
    if (r.size() < 32 && code >= (1u << r.size()))
        throw CodeOutOfRangeError("decode: code >= 2^|R|");
    std::vector<Label> out;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (code & (1u << i)) out.push_back(r[i]);
    return CSet(std::move(out));
}

/// All 2^|R| subsets of R in ascending code order.
inline std::vector<CSet> powerset(const CSet& r) {
    if (r.size() > kMaxPowersetBase) throw TooLargeError("powerset: |R| > 20");
    std::vector<CSet> out;
    const std::uint32_t n = 1u << r.size();
    out.reserve(n);
    for (std::uint32_t code = 0; code < n; ++code) out.push_back(decode(r, code));
    return out;
}

}  // namespace cohsp
