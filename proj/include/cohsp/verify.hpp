#pragma once

// Executable verification suites. Each suite turns one family of asserted
// identities into named residual checks with pinned tolerances; the CLI
// `verify` subcommand and the acceptance tests both run these.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cohsp/classical_gates.hpp"
#include "cohsp/coherent_space.hpp"
#include "cohsp/complex_sets.hpp"
#include "cohsp/contour.hpp"
#include "cohsp/fock.hpp"
#include "cohsp/gates.hpp"
#include "cohsp/report.hpp"

namespace cohsp {

inline constexpr std::uint64_t kDefaultSeed = 12345;

namespace fixtures {

// The printed OR/AND/XOR table for R = {A1, A2}, columns in printed order
// (first input varying fastest): in1, in2, OR, AND, XOR.
inline constexpr int kBasicGateTable[16][5] = {
    {0, 0, 0, 0, 0}, {1, 0, 1, 0, 1}, {2, 0, 2, 0, 2}, {3, 0, 3, 0, 3},
    {0, 1, 1, 0, 1}, {1, 1, 1, 1, 0}, {2, 1, 3, 0, 3}, {3, 1, 3, 1, 2},
    {0, 2, 2, 0, 2}, {1, 2, 3, 0, 3}, {2, 2, 2, 2, 0}, {3, 2, 3, 2, 1},
    {0, 3, 3, 0, 3}, {1, 3, 3, 1, 2}, {2, 3, 3, 2, 1}, {3, 3, 3, 3, 0},
};

// The (control, target) rows of the binary CNOT table.
inline constexpr int kCnot1Table[4][4] = {
    {0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 0}};

// The (control, target) rows of the 4-ary CNOT table.
inline constexpr int kCnot2Table[16][4] = {
    {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 2, 0, 2}, {0, 3, 0, 3},
    {1, 0, 1, 1}, {1, 1, 1, 0}, {1, 2, 1, 3}, {1, 3, 1, 2},
    {2, 0, 2, 2}, {2, 1, 2, 3}, {2, 2, 2, 0}, {2, 3, 2, 1},
    {3, 0, 3, 3}, {3, 1, 3, 2}, {3, 2, 3, 1}, {3, 3, 3, 0}};

inline CSet base_r1() { return CSet{{0.0, 0.0}}; }
inline CSet base_r2() { return CSet{{0.0, 0.0}, {1.0, 0.0}}; }

inline std::vector<Label> label_pool8() {
    return {Label(0, 0),  Label(1, 0),  Label(0, 1),  Label(1, 1),
            Label(2, 0),  Label(0, 2),  Label(-1, 0), Label(0, -1)};
}

}  // namespace fixtures

namespace detail {

inline CSet random_subset(const std::vector<Label>& pool, std::mt19937_64& rng) {
    std::vector<Label> out;
    for (const auto& l : pool)
        if (rng() & 1u) out.push_back(l);
    return CSet(std::move(out));
}

/// Labels drawn uniformly from the disk |A| <= radius, kept at least
/// min_sep apart so the Gram conditioning stays moderate.
inline std::vector<Label> random_labels(std::mt19937_64& rng, int count, double radius,
                                        double min_sep = 0.5) {
    std::uniform_real_distribution<double> uni(-radius, radius);
    std::vector<Label> out;
    while (static_cast<int>(out.size()) < count) {
        const Label cand(uni(rng), uni(rng));
        if (std::abs(cand.value()) > radius) continue;
        bool ok = true;
        for (const auto& l : out)
            if (distance(l, cand) < min_sep) ok = false;
        if (ok) out.push_back(cand);
    }
    return out;
}

inline Eigen::VectorXcd random_coeffs(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
}

inline void append(std::vector<CheckResult>& into, const std::string& prefix,
                   const std::vector<CheckResult>& from) {
    for (auto c : from) {
        c.name = prefix + c.name;
        into.push_back(std::move(c));
    }
}

}  // namespace detail

// ---- classical gate tables --------------------------------------------------

inline std::vector<CheckResult> verify_tables() {
    std::vector<CheckResult> out;
    const CSet r1 = fixtures::base_r1();
    const CSet r2 = fixtures::base_r2();

    int basic_mismatches = 0;
    for (const auto& row : fixtures::kBasicGateTable) {
        const CSet s1 = decode(r2, row[0]), s2 = decode(r2, row[1]);
        if (encode(r2, apply_basic(GateKind::Or, s1, s2, r2)) != std::uint32_t(row[2]))
            ++basic_mismatches;
        if (encode(r2, apply_basic(GateKind::And, s1, s2, r2)) != std::uint32_t(row[3]))
            ++basic_mismatches;
        if (encode(r2, apply_basic(GateKind::Xor, s1, s2, r2)) != std::uint32_t(row[4]))
            ++basic_mismatches;
    }
    out.push_back(make_check("table1_or_and_xor", basic_mismatches, 0));

    const TruthTable cnot1 = truth_table(GateKind::Cnot, r1);
    int c1_mismatches = cnot1.rows.size() == 4 ? 0 : 1;
    for (std::size_t i = 0; i < cnot1.rows.size() && c1_mismatches == 0; ++i) {
        const auto& [in, outp] = cnot1.rows[i];
        const auto& exp = fixtures::kCnot1Table[i];
        if (in[0] != std::uint32_t(exp[0]) || in[1] != std::uint32_t(exp[1]) ||
            outp[0] != std::uint32_t(exp[2]) || outp[1] != std::uint32_t(exp[3]))
            ++c1_mismatches;
    }
    out.push_back(make_check("table2_cnot_binary", c1_mismatches, 0));

    const TruthTable cnot2 = truth_table(GateKind::Cnot, r2);
    int c2_mismatches = cnot2.rows.size() == 16 ? 0 : 1;
    for (std::size_t i = 0; i < cnot2.rows.size() && c2_mismatches == 0; ++i) {
        const auto& [in, outp] = cnot2.rows[i];
        const auto& exp = fixtures::kCnot2Table[i];
        if (in[0] != std::uint32_t(exp[0]) || in[1] != std::uint32_t(exp[1]) ||
            outp[0] != std::uint32_t(exp[2]) || outp[1] != std::uint32_t(exp[3]))
            ++c2_mismatches;
    }
    out.push_back(make_check("table3_cnot_4ary", c2_mismatches, 0));

    out.push_back(make_check("cnot_reversible", check_reversible(cnot2) ? 0 : 1, 0));
    out.push_back(make_check("not_reversible",
                             check_reversible(truth_table(GateKind::Not, r2)) ? 0 : 1, 0));
    int irrevocable = 0;
    for (GateKind k : {GateKind::Or, GateKind::And, GateKind::Xor})
        if (check_reversible(truth_table(k, r2))) ++irrevocable;
    out.push_back(make_check("or_and_xor_not_reversible", irrevocable, 0));
    return out;
}

// ---- Boolean ring axioms ----------------------------------------------------

inline std::vector<CheckResult> verify_ring(std::uint64_t seed = kDefaultSeed,
                                            int trials = 10000) {
    std::mt19937_64 rng(seed);
    const auto pool = fixtures::label_pool8();
    const CSet empty;
    int failures = 0;

    for (int t = 0; t < trials; ++t) {
        const CSet s0 = detail::random_subset(pool, rng);
        const CSet s1 = detail::random_subset(pool, rng);
        const CSet s2 = detail::random_subset(pool, rng);
        const CSet s3 = detail::random_subset(pool, rng);

        if (s1 + s2 != s2 + s1) ++failures;
        if (s1 * s2 != s2 * s1) ++failures;
        if ((s1 + s2) + s3 != s1 + (s2 + s3)) ++failures;
        if ((s1 * s2) * s3 != s1 * (s2 * s3)) ++failures;
        if (s1 * (s2 + s3) != (s1 * s2) + (s1 * s3)) ++failures;
        if (s1 + empty != s1) ++failures;
        if (s1 + s1 != empty) ++failures;
        if (s1 * s1 != s1) ++failures;
        if ((s1 * s2) * (s1 + s2) != empty) ++failures;
        if (unite(s1, s2) != s1 + s2 + (s1 * s2)) ++failures;
        if (s1 + s2 != rel_complement(s1 * s2, unite(s1, s2))) ++failures;
        // multiplicative monotonicity on a guaranteed subset pair
        const CSet sub = s1 * s2;
        if (!is_subset(sub * s0, s2 * s0)) ++failures;
    }

    std::vector<CheckResult> out;
    out.push_back(make_check("ring_axioms_random", failures, 0));

    // Additive monotonicity genuinely fails: pick S1 = {} < S2 = {x}, S0 = {x}.
    const CSet x{pool[1]};
    const bool counterexample = is_subset(empty, x) && !is_subset(empty + x, x + x);
    out.push_back(make_check("additive_monotonicity_counterexample",
                             counterexample ? 0 : 1, 0));

    // The ideal I(R) is closed under +, * and complement, with R its unit.
    std::mt19937_64 rng2(seed ^ 0x9e3779b97f4a7c15ull);
    const CSet base(std::vector<Label>(pool.begin(), pool.begin() + 4));
    int ideal_failures = 0;
    for (int t = 0; t < 500; ++t) {
        const CSet a = decode(base, std::uint32_t(rng2() & 15u));
        const CSet b = decode(base, std::uint32_t(rng2() & 15u));
        if (!is_subset(a + b, base)) ++ideal_failures;
        if (!is_subset(a * b, base)) ++ideal_failures;
        if (!is_subset(base + a, base)) ++ideal_failures;
        if (base * a != a) ++ideal_failures;
        if (decode(base, encode(base, a)) != a) ++ideal_failures;
    }
    out.push_back(make_check("ideal_closure", ideal_failures, 0));
    return out;
}

// ---- coherent projector suite ------------------------------------------------

inline std::vector<CheckResult> verify_projectors(std::uint64_t seed = kDefaultSeed) {
    std::mt19937_64 rng(seed);
    const TruncationPolicy trunc{64, 1e-12};
    double idem = 0, tracedev = 0, fixdev = 0, sumdev = 0, orthdev = 0;

    std::vector<std::vector<Label>> spaces;
    spaces.push_back({Label(0, 0), Label(1, 0)});
    for (int size = 1; size <= 4; ++size)
        for (int rep = 0; rep < 3; ++rep)
            spaces.push_back(detail::random_labels(rng, size, 2.0));

    for (const auto& labels : spaces) {
        const CoherentSpace space(labels);
        const FockOperator pi = projector(space, trunc);
        idem = std::max(idem, (pi * pi - pi).norm());
        tracedev = std::max(tracedev, std::abs(pi.trace() - Complex(double(space.size()))));
        for (const auto& l : labels) {
            const FockVector v = coherent_vector(l, trunc);
            fixdev = std::max(fixdev, (pi * v - v).norm());
        }
        const auto chain = gs_chain(space, trunc);
        FockOperator sum = FockOperator::Zero(trunc.dim(), trunc.dim());
        for (const auto& w : chain) sum += w;
        sumdev = std::max(sumdev, (sum - pi).norm());
        for (std::size_t j = 0; j < chain.size(); ++j)
            for (std::size_t k = j + 1; k < chain.size(); ++k)
                orthdev = std::max(orthdev, (chain[j] * chain[k]).norm());
    }

    return {make_check("projector_idempotency", idem, 1e-9),
            make_check("projector_trace_rank", tracedev, 1e-9),
            make_check("projector_fixes_members", fixdev, 1e-9),
            make_check("chain_sums_to_projector", sumdev, 1e-9),
            make_check("chain_mutual_orthogonality", orthdev, 1e-9)};
}

// ---- moment identities --------------------------------------------------------

inline std::vector<CheckResult> verify_moments() {
    const TruncationPolicy trunc{64, 1e-12};
    std::vector<CheckResult> out;
    const std::vector<std::vector<Label>> spaces = {
        {Label(0, 0), Label(1, 0)},
        {Label(0, 0), Label(1, 0), Label(0, 1)},
        {Label(0.5, 0.5), Label(-1, 0), Label(0, 1.5), Label(0.7, -0.3)}};
    for (std::size_t i = 0; i < spaces.size(); ++i) {
        const CoherentSpace space(spaces[i]);
        const std::string prefix = "space" + std::to_string(i) + "_";
        for (int ell = 1; ell <= 3; ++ell) {
            detail::append(out, prefix, moment_traces(space, ell, trunc));
            detail::append(out, prefix + "l" + std::to_string(ell) + "_",
                           eigen_relation_check(space, ell, trunc));
        }
    }
    // The two-point number trace against the closed-form cross term, at a
    // second geometry.
    const CoherentSpace narrow({Label(0.3, 0.2), Label(-0.4, 0.0)});
    detail::append(out, "narrow_", moment_traces(narrow, 1, trunc));
    return out;
}

// ---- covariance ---------------------------------------------------------------

inline std::vector<CheckResult> verify_covariance() {
    const TruncationPolicy trunc{96, 1e-12};
    std::vector<CheckResult> out;
    const CoherentSpace s01({Label(0, 0), Label(1, 0)});
    const CoherentSpace s2({Label(0, 0.5), Label(-0.5, 0), Label(1.0, 1.0)});
    detail::append(out, "s01_", covariance_check(s01, Label(0.5, 0.0), std::numbers::pi / 3, trunc));
    detail::append(out, "s2_",
                   covariance_check(s2, Label(1.0, -1.0), 0.7, trunc));

    // Q-function evolution: Tr[Pi(S) e^{itN} rho e^{-itN}] = Q at labels e^{-it}.
    const double t = 0.9;
    const FockVector psi = coherent_vector(Label(0.7, 0.2), trunc);
    const FockOperator rho = psi * psi.adjoint();
    const FockOperator u = evolution_op(t, trunc);
    const FockOperator rho_t = u * rho * u.adjoint();
    const double q_evolved = q_function(rho_t, s01, trunc);
    const double q_rotated = q_function(rho, s01.rotated(-t), trunc);
    out.push_back(make_check("q_function_evolution", std::abs(q_evolved - q_rotated), 1e-8));

    // Q-function displacement: Tr[Pi(S) D(z) rho D(z)^dag] = Q at labels - z.
    const Label z(0.4, -0.3);
    const FockOperator d = displacement_op(z, trunc);
    const FockOperator rho_d = d * rho * d.adjoint();
    const double q_displaced = q_function(rho_d, s01, trunc);
    const double q_shifted = q_function(rho, s01.displaced(-z.value()), trunc);
    out.push_back(make_check("q_function_displacement", std::abs(q_displaced - q_shifted), 1e-8));
    return out;
}

// ---- resolution of the identity ------------------------------------------------

inline std::vector<CheckResult> verify_resolution(QuadratureGrid grid = {200, 256},
                                                  double disk_radius = 6.0) {
    std::vector<CheckResult> out;
    const TruncationPolicy block{5, 1e-12, true};
    const QuadratureGrid half{grid.n_r / 2, grid.n_phi / 2};

    for (int n = 1; n <= 2; ++n) {
        std::vector<Label> offsets;
        if (n == 2) offsets.push_back(Label(1.0, 0.0));
        const FockOperator full = resolution_quadrature(offsets, disk_radius, grid, block);
        const FockOperator coarse = resolution_quadrature(offsets, disk_radius, half, block);
        const FockOperator id = FockOperator::Identity(block.dim(), block.dim());
        out.push_back(make_check("identity_block_n" + std::to_string(n),
                                 (full - id).cwiseAbs().maxCoeff(), 1e-3));
        out.push_back(make_check("grid_doubling_n" + std::to_string(n),
                                 (full - coarse).cwiseAbs().maxCoeff(), 1e-4));

        const TruncationPolicy rho_trunc{16, 1e-12, true};
        const FockOperator rho = vacuum(rho_trunc) * vacuum(rho_trunc).adjoint();
        const double q_int = q_resolution_integral(rho, offsets, disk_radius, grid);
        out.push_back(make_check("q_integral_n" + std::to_string(n), std::abs(q_int - 1.0),
                                 2e-3));
    }
    return out;
}

// ---- residue engine against the Fock oracle -------------------------------------

inline std::vector<CheckResult> verify_contour(std::uint64_t seed = kDefaultSeed,
                                               int trials = 250) {
    std::mt19937_64 rng(seed);
    const TruncationPolicy trunc{64, 1e-12};
    double scalar_dev = 0, apply_dev = 0, product_dev = 0, trace_dev = 0;
    double idem_dev = 0, corollary_dev = 0;
    std::uniform_int_distribution<int> size_dist(1, 4);

    for (int t = 0; t < trials; ++t) {
        const int n = size_dist(rng);
        const auto labels = detail::random_labels(rng, n, 2.0);
        const CoherentSpace space(labels);

        Eigen::MatrixXcd states(trunc.dim(), n);
        for (int j = 0; j < n; ++j) states.col(j) = coherent_vector(labels[j], trunc);

        // scalar product of two random superpositions
        const Eigen::VectorXcd u = detail::random_coeffs(rng, n);
        const Eigen::VectorXcd v = detail::random_coeffs(rng, n);
        const Complex res_scalar = scalar(bra_of(labels, u), ket_of(labels, v));
        const Complex fock_scalar = inner(FockVector(states * u), FockVector(states * v));
        scalar_dev = std::max(scalar_dev, std::abs(res_scalar - fock_scalar));

        // random operator in A(S) as both a kernel and a Fock matrix
        const Eigen::MatrixXcd lam =
            detail::random_coeffs(rng, n * n).reshaped(n, n).eval();
        ContourKernel theta;
        FockOperator theta_fock = FockOperator::Zero(trunc.dim(), trunc.dim());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Complex aj = labels[j].value(), ak = labels[k].value();
                theta.add_exp_term(lam(j, k) *
                                       std::exp(-0.5 * std::norm(aj) - 0.5 * std::norm(ak)),
                                   aj, std::conj(ak));
                theta_fock += lam(j, k) * states.col(j) * states.col(k).adjoint();
            }
        theta.normalize();

        // application to a random superposition ket
        const FockVector applied_res =
            ket_to_fock(kernel_apply_ket(theta, ket_of(labels, v)), trunc);
        const FockVector applied_fock = theta_fock * (states * v);
        apply_dev = std::max(apply_dev, (applied_res - applied_fock).norm());

        // product against a second random operator
        const Eigen::MatrixXcd lam2 =
            detail::random_coeffs(rng, n * n).reshaped(n, n).eval();
        ContourKernel phi;
        FockOperator phi_fock = FockOperator::Zero(trunc.dim(), trunc.dim());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Complex aj = labels[j].value(), ak = labels[k].value();
                phi.add_exp_term(lam2(j, k) *
                                     std::exp(-0.5 * std::norm(aj) - 0.5 * std::norm(ak)),
                                 aj, std::conj(ak));
                phi_fock += lam2(j, k) * states.col(j) * states.col(k).adjoint();
            }
        phi.normalize();
        const FockOperator prod_res = kernel_to_fock(kernel_product(theta, phi), trunc);
        product_dev = std::max(product_dev, (prod_res - theta_fock * phi_fock).norm());

        // traces
        trace_dev = std::max(trace_dev,
                             std::abs(kernel_trace(theta) - theta_fock.trace()));

        // projector-kernel idempotency, coefficientwise
        const ContourKernel pk = kernel_of_projector(space);
        idem_dev = std::max(idem_dev, kernel_rel_deviation(kernel_product(pk, pk), pk));
    }

    // trace-of-product corollary: closed form vs residue engine vs Fock
    {
        std::mt19937_64 rng2(seed ^ 0xabcdefull);
        const auto la = detail::random_labels(rng2, 3, 2.0);
        const auto lb = detail::random_labels(rng2, 2, 2.0);
        const CoherentSpace sa(la), sb(lb);
        Complex closed = 0.0;
        for (Eigen::Index r = 0; r < sa.size(); ++r)
            for (Eigen::Index s = 0; s < sa.size(); ++s)
                for (Eigen::Index l = 0; l < sb.size(); ++l)
                    for (Eigen::Index m = 0; m < sb.size(); ++m) {
                        const Complex ar = sa.label_value(r), as = sa.label_value(s);
                        const Complex bl = sb.label_value(l), bm = sb.label_value(m);
                        closed += sa.g_inverse()(r, s) * sb.g_inverse()(l, m) *
                                  std::exp(ar * std::conj(bm) + std::conj(as) * bl -
                                           0.5 * std::norm(ar) - 0.5 * std::norm(as) -
                                           0.5 * std::norm(bl) - 0.5 * std::norm(bm));
                    }
        const Complex res =
            kernel_trace(kernel_product(kernel_of_projector(sa), kernel_of_projector(sb)));
        const Complex fock =
            (projector(sa, trunc) * projector(sb, trunc)).trace();
        corollary_dev = std::max(std::abs(res - closed), std::abs(res - fock));
    }

    return {make_check("scalar_residue_vs_fock", scalar_dev, 1e-9),
            make_check("apply_residue_vs_fock", apply_dev, 1e-9),
            make_check("product_residue_vs_fock", product_dev, 1e-9),
            make_check("trace_residue_vs_fock", trace_dev, 1e-9),
            make_check("projector_kernel_idempotency", idem_dev, 1e-12),
            make_check("trace_product_corollary", corollary_dev, 1e-9)};
}

// ---- Bargmann-zero orthogonal states ---------------------------------------------

inline std::vector<CheckResult> verify_zeros(std::uint64_t seed = kDefaultSeed,
                                             int space_count = 100) {
    std::mt19937_64 rng(seed);
    const TruncationPolicy trunc{64, 1e-12};
    std::uniform_int_distribution<int> size_dist(1, 4);
    double dev = 0.0, overlap_dev = 0.0;
    for (int t = 0; t < space_count; ++t) {
        const CoherentSpace space(detail::random_labels(rng, size_dist(rng), 2.0));
        const FockVector s = orthogonal_state(space, trunc);
        dev = std::max(dev, (projector(space, trunc) * s).norm());
        for (const auto& l : space.labels())
            overlap_dev = std::max(overlap_dev,
                                   std::abs(inner(coherent_vector(l, trunc), s)));
    }
    return {make_check("orthogonal_state_projection", dev, 1e-8),
            make_check("orthogonal_state_overlaps", overlap_dev, 1e-9)};
}

// ---- quantum CNOT gates ------------------------------------------------------------

inline std::vector<CheckResult> verify_gates(std::uint64_t seed = kDefaultSeed) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> out;

    const CoherentSpace ctrl2({Label(0, 0), Label(1, 0)});
    const CoherentSpace tgt2({Label(0.5, 0), Label(-0.7, 0.3)});
    const GateMatrix g2 = build_cnot2(ctrl2, tgt2);

    const std::vector<Label> quad{Label(1, 0), Label(0, 1), Label(-1, 0), Label(0, -1)};
    std::vector<Label> quad_t;
    for (const auto& l : quad) quad_t.push_back(Label(0.9 * l.re, 0.9 * l.im));
    const CoherentSpace ctrl4(quad);
    const CoherentSpace tgt4(quad_t);
    const GateMatrix g4 = build_cnot4(ctrl4, tgt4);

    const std::vector<std::pair<std::string, const GateMatrix*>> gates = {{"cnot2_", &g2},
                                                                          {"cnot4_", &g4}};
    for (const auto& [name, gate] : gates) {
        out.push_back(make_check(name + "metric_unitarity",
                                 metric_unitarity_residual(*gate), 1e-12));
        // all target maps commute pairwise (they share the eigenprojectors)
        double comm = 0.0;
        for (std::size_t j = 0; j < gate->target_maps.size(); ++j)
            for (std::size_t k = j + 1; k < gate->target_maps.size(); ++k)
                comm = std::max(comm, metric_commutator(gate->target_maps[j],
                                                        gate->target_maps[k],
                                                        gate->target).norm());
        out.push_back(make_check(name + "target_map_commutators", comm, 1e-12));
        detail::append(out, name, involution_check(*gate));

        // control eigenvector semantics: U(e_j (x) T) = e_j (x) (U_jT T)
        double eig_dev = 0.0;
        for (Eigen::Index j = 0; j < gate->control.size(); ++j) {
            const CoordState tvec = detail::random_coeffs(rng, gate->target.size());
            const CoordState in = kron(gate->control.eigenvectors().col(j), tvec);
            const CoordState got = metric_apply(*gate, in);
            const CoordState expect =
                kron(gate->control.eigenvectors().col(j),
                     metric_apply(gate->target, gate->target_maps[j], tvec));
            eig_dev = std::max(eig_dev,
                               metric_norm(CoordState(got - expect), gate->control,
                                           gate->target));
        }
        out.push_back(make_check(name + "control_eigenvector_semantics", eig_dev, 1e-10));
    }

    // e1-control fixes every target; e2 swaps T_p and T_m.
    {
        const auto& e = tgt2.eigenvectors();
        const CoordState tp = (e.col(0) + e.col(1)) / std::sqrt(2.0);
        const CoordState tm = (e.col(0) - e.col(1)) / std::sqrt(2.0);
        const auto& ce = ctrl2.eigenvectors();
        double fix_dev = 0.0;
        for (const CoordState& t : {tp, tm}) {
            const CoordState in = kron(ce.col(0), t);
            fix_dev = std::max(fix_dev, metric_norm(CoordState(metric_apply(g2, in) - in),
                                                    ctrl2, tgt2));
        }
        const CoordState rand_t = detail::random_coeffs(rng, 2);
        const CoordState in_r = kron(ce.col(0), rand_t);
        fix_dev = std::max(fix_dev, metric_norm(CoordState(metric_apply(g2, in_r) - in_r),
                                                ctrl2, tgt2));
        out.push_back(make_check("cnot2_e1_fixes_targets", fix_dev, 1e-10));

        double swap_dev = metric_norm(
            CoordState(metric_apply(g2, kron(ce.col(1), tp)) - kron(ce.col(1), tm)), ctrl2,
            tgt2);
        swap_dev = std::max(swap_dev,
                            metric_norm(CoordState(metric_apply(g2, kron(ce.col(1), tm)) -
                                                   kron(ce.col(1), tp)),
                                        ctrl2, tgt2));
        out.push_back(make_check("cnot2_e2_swaps_tp_tm", swap_dev, 1e-10));
    }

    // almost-orthogonal limit |A| = 5
    {
        const CoherentSpace ca({Label(5, 0), Label(-5, 0)});
        const CoherentSpace cb({Label(5, 0), Label(-5, 0)});
        const GateMatrix far = build_cnot2(ca, cb);
        out.push_back(make_check("far_gram_near_identity",
                                 (ca.g() - Eigen::MatrixXcd::Identity(2, 2)).norm(), 1e-10));
        const Eigen::MatrixXcd reduced =
            kron(ca.eigenprojector(0), Eigen::MatrixXcd::Identity(2, 2)) +
            kron(ca.eigenprojector(1), far.target_maps[1]);
        out.push_back(make_check("far_reduced_form", (far.entries - reduced).norm(), 1e-9));

        // textbook CNOT in the orthonormalized eigenbasis of the lifted gate
        const TruncationPolicy trunc{96, 1e-12};
        const TwoModeOperator lifted = lift_gate(far, trunc);
        std::vector<FockVector> cbasis, tbasis;
        for (int j = 0; j < 2; ++j) {
            FockVector cv = reconstruct(ca.eigenvectors().col(j), ca, trunc);
            cbasis.push_back(cv.normalized());
        }
        const auto& eb = cb.eigenvectors();
        tbasis.push_back(
            FockVector(reconstruct((eb.col(0) + eb.col(1)) / std::sqrt(2.0), cb, trunc))
                .normalized());
        tbasis.push_back(
            FockVector(reconstruct((eb.col(0) - eb.col(1)) / std::sqrt(2.0), cb, trunc))
                .normalized());
        Eigen::MatrixXcd mat(4, 4);
        for (int col = 0; col < 4; ++col) {
            const Eigen::MatrixXcd psi =
                lifted.apply_product(cbasis[col / 2], tbasis[col % 2]);
            for (int row = 0; row < 4; ++row)
                mat(row, col) =
                    (cbasis[row / 2].adjoint() * psi * tbasis[row % 2].conjugate())(0, 0);
        }
        Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
        cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
        out.push_back(make_check("far_textbook_cnot", (mat - cnot).norm(), 1e-8));
    }
    return out;
}

// ---- everything ---------------------------------------------------------------------

inline std::vector<CheckResult> verify_all(std::uint64_t seed = kDefaultSeed) {
    std::vector<CheckResult> out;
    detail::append(out, "tables/", verify_tables());
    detail::append(out, "ring/", verify_ring(seed));
    detail::append(out, "projectors/", verify_projectors(seed));
    detail::append(out, "moments/", verify_moments());
    detail::append(out, "covariance/", verify_covariance());
    detail::append(out, "resolution/", verify_resolution());
    detail::append(out, "contour/", verify_contour(seed));
    detail::append(out, "zeros/", verify_zeros(seed));
    detail::append(out, "gates/", verify_gates(seed));
    return out;
}

}  // namespace cohsp
