#pragma once

// Classical gates over a principal ideal I(R): OR/AND/XOR/NOT/CNOT on
// subsets of a finite base set R, exhaustive truth tables with the
// 2^|R|-ary integer codes, and reversibility checks.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "cohsp/complex_sets.hpp"
#include "cohsp/errors.hpp"

namespace cohsp {

enum class GateKind { Or, And, Xor, Not, Cnot };

inline int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::Not: return 1;
        default: return 2;
    }
}

inline int gate_output_arity(GateKind k) {
    switch (k) {
        case GateKind::Cnot: return 2;
        default: return 1;
    }
}

inline std::string gate_name(GateKind k) {
    switch (k) {
        case GateKind::Or: return "OR";
        case GateKind::And: return "AND";
        case GateKind::Xor: return "XOR";
        case GateKind::Not: return "NOT";
        case GateKind::Cnot: return "CNOT";
    }
    return "?";
}

namespace detail {
inline void require_subset(const CSet& s, const CSet& r, const char* what) {
    if (!is_subset(s, r)) throw NotASubsetError(std::string(what) + ": input is not a subset of R");
}
}  // namespace detail

inline CSet apply_basic(GateKind kind, const CSet& s1, const CSet& s2, const CSet& r) {
    detail::require_subset(s1, r, "apply_basic");
    detail::require_subset(s2, r, "apply_basic");
    switch (kind) {
        case GateKind::Or: return unite(s1, s2);   // = S1 + S2 + S1*S2
        case GateKind::And: return s1 * s2;
        case GateKind::Xor: return s1 + s2;
        default: throw Error("apply_basic: gate is not a two-input one-output gate");
    }
}

inline CSet apply_not(const CSet& s, const CSet& r) {
    detail::require_subset(s, r, "apply_not");
    return rel_complement(s, r);  // R + S
}

/// (control, target) -> (control, control + target).
inline std::pair<CSet, CSet> apply_cnot(const CSet& s1, const CSet& s2, const CSet& r) {
    detail::require_subset(s1, r, "apply_cnot");
    detail::require_subset(s2, r, "apply_cnot");
    return {s1, s1 + s2};
}

struct TruthTable {
    CSet base;
    GateKind kind = GateKind::Or;
    // Rows ordered lexicographically by input codes.
    std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> rows;
};

inline constexpr std::size_t kMaxTableBase = 8;

inline TruthTable truth_table(GateKind kind, const CSet& r) {
    if (r.size() > kMaxTableBase) throw TooLargeError("truth_table: |R| > 8");
    TruthTable t{r, kind, {}};
    const std::uint32_t d = 1u << r.size();
    if (gate_arity(kind) == 1) {
        for (std::uint32_t c = 0; c < d; ++c)
            t.rows.push_back({{c}, {encode(r, apply_not(decode(r, c), r))}});
        return t;
    }
    for (std::uint32_t c1 = 0; c1 < d; ++c1) {
        for (std::uint32_t c2 = 0; c2 < d; ++c2) {
            const CSet s1 = decode(r, c1), s2 = decode(r, c2);
            if (kind == GateKind::Cnot) {
                auto [o1, o2] = apply_cnot(s1, s2, r);
                t.rows.push_back({{c1, c2}, {encode(r, o1), encode(r, o2)}});
            } else {
                t.rows.push_back({{c1, c2}, {encode(r, apply_basic(kind, s1, s2, r))}});
            }
        }
    }
    return t;
}

/// True iff the output tuples are a permutation of the input tuples, i.e.
/// the gate is a bijection on its carrier. Gates whose output arity differs
/// from the input arity cannot be bijective and return false directly.
inline bool check_reversible(const TruthTable& t) {
    if (t.rows.empty()) return true;
    if (t.rows.front().first.size() != t.rows.front().second.size()) return false;
    std::vector<std::vector<std::uint32_t>> ins, outs;
    for (const auto& [in, out] : t.rows) {
        ins.push_back(in);
        outs.push_back(out);
    }
    std::sort(ins.begin(), ins.end());
    std::sort(outs.begin(), outs.end());
    return ins == outs;
}

/// The fixed-control target map S2 -> S1 + S2 as a permutation of codes.
/// It is an involution, which the constructor double-checks.
inline std::vector<std::uint32_t> fixed_control_target_map(const CSet& s1, const CSet& r) {
    detail::require_subset(s1, r, "fixed_control_target_map");
    const std::uint32_t d = 1u << r.size();
    std::vector<std::uint32_t> perm(d);
    for (std::uint32_t c = 0; c < d; ++c) perm[c] = encode(r, s1 + decode(r, c));
    for (std::uint32_t c = 0; c < d; ++c)
        if (perm[perm[c]] != c) throw Error("fixed-control target map is not an involution");
    return perm;
}

/// CSV with header `in_control,in_target,out_control,out_target` (CNOT),
/// `in1,in2,out` (two-input gates) or `in,out` (NOT). With paper_order the
/// two-input rows are emitted with the first input varying fastest, the
/// column order the printed OR/AND/XOR table uses.
inline std::string to_csv(const TruthTable& t, bool paper_order = false) {
    std::ostringstream os;
    auto rows = t.rows;
    if (paper_order && gate_arity(t.kind) == 2 && gate_output_arity(t.kind) == 1) {
        std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.first[1] < b.first[1];
        });
    }
    if (t.kind == GateKind::Cnot) {
        os << "in_control,in_target,out_control,out_target\n";
        for (const auto& [in, out] : rows)
            os << in[0] << ',' << in[1] << ',' << out[0] << ',' << out[1] << '\n';
    } else if (t.kind == GateKind::Not) {
        os << "in,out\n";
        for (const auto& [in, out] : rows) os << in[0] << ',' << out[0] << '\n';
    } else {
        os << "in1,in2,out\n";
        for (const auto& [in, out] : rows)
            os << in[0] << ',' << in[1] << ',' << out[0] << '\n';
    }
    return os.str();
}

}  // namespace cohsp
