// Command-line front end: ingest JSON specs, run any operation or
// verification suite, emit CSV/JSON artifacts.
//
// Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
// parse error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohsp/classical_gates.hpp"
#include "cohsp/coherent_space.hpp"
#include "cohsp/complex_sets.hpp"
#include "cohsp/contour.hpp"
#include "cohsp/errors.hpp"
#include "cohsp/fock.hpp"
#include "cohsp/gates.hpp"
#include "cohsp/json_io.hpp"
#include "cohsp/report.hpp"
#include "cohsp/verify.hpp"

namespace {

using namespace cohsp;

void print_checks(const std::vector<CheckResult>& checks) {
    for (const auto& c : checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                  << "  residual=" << c.residual << "  tol=" << c.tolerance << "\n";
}

void write_artifact(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open output file " + path);
    os << content;
}

/// Assemble the standard report envelope and emit it.
int emit_report(const std::string& command, const std::string& input_text,
                const std::vector<CheckResult>& checks, json extra,
                const std::string& out_path) {
    extra["command"] = command;
    extra["input_hash"] = input_hash(input_text);
    extra["checks"] = checks_to_json(checks);
    extra["pass"] = all_pass(checks);
    const std::string text = extra.dump(2) + "\n";
    if (!out_path.empty())
        write_artifact(out_path, text);
    else
        std::cout << text;
    print_checks(checks);
    return all_pass(checks) ? 0 : 1;
}

GateKind parse_gate_kind(const std::string& name) {
    if (name == "or") return GateKind::Or;
    if (name == "and") return GateKind::And;
    if (name == "xor") return GateKind::Xor;
    if (name == "not") return GateKind::Not;
    if (name == "cnot") return GateKind::Cnot;
    throw ParseError("unknown gate '" + name + "' (expected or|and|xor|not|cnot)");
}

QuadratureGrid parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos) throw ParseError("--grid: expected N_RxN_PHI, e.g. 200x256");
    QuadratureGrid g;
    try {
        g.n_r = std::stoi(text.substr(0, x));
        g.n_phi = std::stoi(text.substr(x + 1));
    } catch (const std::exception&) {
        throw ParseError("--grid: expected N_RxN_PHI, e.g. 200x256");
    }
    if (g.n_r < 2 || g.n_phi < 4) throw ParseError("--grid: grid is too small");
    return g;
}

FockVector load_state(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ParseError("cannot open state file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("state file: ") + e.what());
    }
    return state_from_json(j);
}

int run_gram(const std::string& labels_text, const std::string& out_path) {
    const CoherentSpace space(labels_from_string(labels_text, "--labels"));
    const Eigen::Index n = space.size();
    std::vector<CheckResult> checks;
    checks.push_back(make_check(
        "gram_inverse_identity",
        (space.g() * space.g_inverse() - Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-10));
    Eigen::MatrixXcd eigsum = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        eigsum += space.eigenvalues()(j) * space.eigenprojector(j);
    checks.push_back(make_check("gram_eigen_reconstruction", (eigsum - space.g()).norm(), 1e-10));

    json data{{"labels", cset_to_json(CSet(space.labels()))},
              {"g", matrix_to_json(space.g())},
              {"G", matrix_to_json(space.g_inverse())},
              {"condition_number", space.condition_number()}};
    json eigs = json::array();
    for (Eigen::Index j = 0; j < n; ++j) eigs.push_back(space.eigenvalues()(j));
    data["eigenvalues"] = eigs;
    if (n == 2) {
        data["mu"] = space.mu();
        data["theta"] = space.theta();
    }
    return emit_report("gram", labels_text, checks, data, out_path);
}

int run_projector(const std::string& labels_text, int n_max, double tol, bool dump,
                  const std::string& out_path) {
    const CoherentSpace space(labels_from_string(labels_text, "--labels"));
    const TruncationPolicy trunc{n_max, 1e-12};
    const FockOperator pi = projector(space, trunc);
    std::vector<CheckResult> checks;
    checks.push_back(make_check("idempotency", (pi * pi - pi).norm(), tol));
    checks.push_back(
        make_check("trace_rank", std::abs(pi.trace() - Complex(double(space.size()))), tol));
    double fix = 0.0;
    for (const auto& l : space.labels()) {
        const FockVector v = coherent_vector(l, trunc);
        fix = std::max(fix, (pi * v - v).norm());
    }
    checks.push_back(make_check("fixes_members", fix, tol));
    json data{{"n_max", n_max}, {"trace", pi.trace().real()}};
    if (dump) data["operator"] = matrix_to_json(pi);
    return emit_report("projector", labels_text + "#" + std::to_string(n_max), checks, data,
                       out_path);
}

int run_chain(const std::string& labels_text, int n_max, double tol,
              const std::string& out_path) {
    const CoherentSpace space(labels_from_string(labels_text, "--labels"));
    const TruncationPolicy trunc{n_max, 1e-12};
    const auto chain = gs_chain(space, trunc);
    const FockOperator pi = projector(space, trunc);
    std::vector<CheckResult> checks;
    double trace_dev = 0.0, orth = 0.0;
    FockOperator sum = FockOperator::Zero(trunc.dim(), trunc.dim());
    for (std::size_t j = 0; j < chain.size(); ++j) {
        trace_dev = std::max(trace_dev, std::abs(chain[j].trace() - Complex(1.0)));
        for (std::size_t k = j + 1; k < chain.size(); ++k)
            orth = std::max(orth, (chain[j] * chain[k]).norm());
        sum += chain[j];
    }
    checks.push_back(make_check("chain_traces", trace_dev, tol));
    checks.push_back(make_check("chain_orthogonality", orth, tol));
    checks.push_back(make_check("chain_sum_is_projector", (sum - pi).norm(), tol));
    return emit_report("chain", labels_text + "#" + std::to_string(n_max), checks,
                       json{{"n_max", n_max}, {"links", chain.size()}}, out_path);
}

int run_truth_table(const std::string& gate_name, const std::string& r_text, bool paper_order,
                    const std::string& out_path) {
    const GateKind kind = parse_gate_kind(gate_name);
    const CSet r = cset_from_string(r_text, "--R");
    const std::string csv = to_csv(truth_table(kind, r), paper_order);
    if (!out_path.empty())
        write_artifact(out_path, csv);
    else
        std::cout << csv;
    return 0;
}

int run_cnot_classical(const std::string& r_text, std::int64_t control,
                       std::optional<std::int64_t> target, const std::string& out_path) {
    const CSet r = cset_from_string(r_text, "--R");
    const std::uint32_t d = 1u << r.size();
    if (control < 0 || control >= d) throw CodeOutOfRangeError("--control: code >= 2^|R|");
    const CSet s1 = decode(r, std::uint32_t(control));
    json data{{"R", cset_to_json(r)}, {"control", control}};
    std::vector<CheckResult> checks;
    if (target) {
        if (*target < 0 || *target >= d) throw CodeOutOfRangeError("--target: code >= 2^|R|");
        auto [o1, o2] = apply_cnot(s1, decode(r, std::uint32_t(*target)), r);
        data["target"] = *target;
        data["out"] = json::array({encode(r, o1), encode(r, o2)});
    } else {
        const auto perm = fixed_control_target_map(s1, r);
        data["target_permutation"] = perm;
        int not_involution = 0;
        for (std::uint32_t c = 0; c < d; ++c)
            if (perm[perm[c]] != c) ++not_involution;
        checks.push_back(make_check("target_map_involution", not_involution, 0));
    }
    return emit_report("cnot-classical", r_text + "#" + std::to_string(control), checks, data,
                       out_path);
}

int run_cnot_quantum(const std::string& a_text, const std::string& b_text,
                     const std::string& out_path) {
    const CoherentSpace control(labels_from_string(a_text, "--labels-a"));
    const CoherentSpace target(labels_from_string(b_text, "--labels-b"));
    GateMatrix gate = [&] {
        if (control.size() == 2 && target.size() == 2) return build_cnot2(control, target);
        if (control.size() == 4 && target.size() == 4) return build_cnot4(control, target);
        throw DimensionMismatchError(
            "cnot-quantum: control and target must both be two-point or both four-point");
    }();
    std::vector<CheckResult> checks;
    checks.push_back(make_check("metric_unitarity", metric_unitarity_residual(gate), 1e-12));
    for (const auto& c : involution_check(gate)) checks.push_back(c);
    return emit_report("cnot-quantum", a_text + "#" + b_text, checks, gate_to_json(gate),
                       out_path);
}

int run_contour(const std::string& labels_text, const std::string& out_path) {
    const CoherentSpace space(labels_from_string(labels_text, "--labels"));
    const ContourKernel k = kernel_of_projector(space);
    std::vector<CheckResult> checks;
    checks.push_back(make_check(
        "pole_count_is_rank",
        std::abs(double(pole_set(k).size()) - double(space.size())), 0));
    checks.push_back(
        make_check("trace_rank", std::abs(kernel_trace(k) - Complex(double(space.size()))),
                   1e-12));
    checks.push_back(
        make_check("idempotency", kernel_rel_deviation(kernel_product(k, k), k), 1e-12));
    return emit_report("contour", labels_text, checks, kernel_to_json(k), out_path);
}

int run_resolution(const std::string& offsets_text, double disk_radius,
                   const std::string& grid_text, int block_n_max,
                   const std::string& out_path) {
    const auto offsets = labels_from_string(offsets_text, "--offsets");
    const QuadratureGrid grid = parse_grid(grid_text);
    const QuadratureGrid half{grid.n_r / 2, grid.n_phi / 2};
    const TruncationPolicy block{block_n_max, 1e-12, true};
    const FockOperator full = resolution_quadrature(offsets, disk_radius, grid, block);
    const FockOperator coarse = resolution_quadrature(offsets, disk_radius, half, block);
    const FockOperator id = FockOperator::Identity(block.dim(), block.dim());
    std::vector<CheckResult> checks;
    checks.push_back(make_check("identity_block", (full - id).cwiseAbs().maxCoeff(), 1e-3));
    checks.push_back(
        make_check("grid_doubling", (full - coarse).cwiseAbs().maxCoeff(), 1e-4));
    const TruncationPolicy rho_trunc{16, 1e-12, true};
    const FockOperator rho = vacuum(rho_trunc) * vacuum(rho_trunc).adjoint();
    checks.push_back(make_check(
        "q_integral",
        std::abs(q_resolution_integral(rho, offsets, disk_radius, grid) - 1.0), 2e-3));
    json data{{"disk_radius", disk_radius},
              {"grid", json::array({grid.n_r, grid.n_phi})},
              {"block_n_max", block_n_max}};
    return emit_report("resolution", offsets_text + "#" + grid_text, checks, data, out_path);
}

int run_qfunction(const std::string& labels_text, const std::string& state_path, int n_max,
                  const std::string& out_path) {
    const CoherentSpace space(labels_from_string(labels_text, "--labels"));
    TruncationPolicy trunc{n_max, 1e-12};
    FockOperator rho;
    if (state_path.empty()) {
        rho = vacuum(trunc) * vacuum(trunc).adjoint();
    } else {
        const FockVector psi = load_state(state_path);
        trunc.n_max = int(psi.size()) - 1;
        const double nrm = psi.norm();
        if (nrm <= 0.0) throw NotADensityMatrixError("state file holds the zero vector");
        rho = (psi / nrm) * (psi / nrm).adjoint();
    }
    const double q = q_function(rho, space, trunc);
    std::vector<CheckResult> checks;
    checks.push_back(make_check("q_lower_bound", std::max(0.0, -q), 1e-8));
    checks.push_back(make_check("q_upper_bound", std::max(0.0, q - 1.0), 1e-8));
    return emit_report("qfunction", labels_text + "#" + state_path, checks,
                       json{{"q", q}, {"n_max", trunc.n_max}}, out_path);
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path) {
    std::vector<CheckResult> checks;
    if (suite == "all")
        checks = verify_all(seed);
    else if (suite == "tables")
        checks = verify_tables();
    else if (suite == "ring")
        checks = verify_ring(seed);
    else if (suite == "projectors")
        checks = verify_projectors(seed);
    else if (suite == "moments")
        checks = verify_moments();
    else if (suite == "covariance")
        checks = verify_covariance();
    else if (suite == "resolution")
        checks = verify_resolution();
    else if (suite == "contour")
        checks = verify_contour(seed);
    else if (suite == "zeros")
        checks = verify_zeros(seed);
    else if (suite == "gates")
        checks = verify_gates(seed);
    else
        throw ParseError("unknown suite '" + suite + "'");
    return emit_report("verify", suite + "#" + std::to_string(seed), checks,
                       json{{"suite", suite}, {"seed", seed}}, out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent-space algebra toolkit"};
    app.require_subcommand(1);

    std::string labels_text, labels_b_text, r_text, gate_name, out_path, state_path;
    std::string offsets_text = "[]";
    std::string grid_text = "200x256";
    std::string suite = "all";
    int n_max = 64;
    int block_n_max = 5;
    double tol = 1e-9;
    double disk_radius = 6.0;
    bool paper_order = false;
    bool dump = false;
    std::int64_t control = 0;
    std::optional<std::int64_t> target;
    std::uint64_t seed = cohsp::kDefaultSeed;

    auto* gram = app.add_subcommand("gram", "Gram matrix, inverse and eigensystem of a label set");
    gram->add_option("--labels", labels_text, "label set as [[re,im],...]")->required();
    gram->add_option("--out", out_path, "write the JSON report here");

    auto* proj = app.add_subcommand("projector", "coherent projector Pi(S) checks");
    proj->add_option("--labels", labels_text)->required();
    proj->add_option("--n-max", n_max, "truncation (default 64)");
    proj->add_option("--tol", tol, "residual tolerance (default 1e-9)");
    proj->add_flag("--dump", dump, "include the operator matrix in the report");
    proj->add_option("--out", out_path);

    auto* chain = app.add_subcommand("chain", "Gram-Schmidt chain projector checks");
    chain->add_option("--labels", labels_text)->required();
    chain->add_option("--n-max", n_max);
    chain->add_option("--tol", tol);
    chain->add_option("--out", out_path);

    auto* table = app.add_subcommand("truth-table", "emit a classical gate table as CSV");
    table->add_option("--gate", gate_name, "or|and|xor|not|cnot")->required();
    table->add_option("--R", r_text, "base set as [[re,im],...]")->required();
    table->add_flag("--paper-order", paper_order,
                    "order two-input rows with the first input varying fastest");
    table->add_option("--out", out_path);

    auto* cc = app.add_subcommand("cnot-classical", "classical CNOT over I(R)");
    cc->add_option("--R", r_text)->required();
    cc->add_option("--control", control, "control code")->required();
    cc->add_option("--target", target, "target code (omit for the whole fixed-control map)");
    cc->add_option("--out", out_path);

    auto* cq = app.add_subcommand("cnot-quantum", "metric-aware quantum CNOT gate");
    cq->add_option("--labels-a", labels_text, "control space labels")->required();
    cq->add_option("--labels-b", labels_b_text, "target space labels")->required();
    cq->add_option("--out", out_path);

    auto* cont = app.add_subcommand("contour", "Dirac contour kernel of Pi(S)");
    cont->add_option("--labels", labels_text)->required();
    cont->add_option("--out", out_path);

    auto* reso = app.add_subcommand("resolution", "resolution-of-identity quadrature");
    reso->add_option("--offsets", offsets_text, "d_2..d_n as [[re,im],...] (default [])");
    reso->add_option("--disk-radius", disk_radius, "integration disk radius (default 6)");
    reso->add_option("--grid", grid_text, "radial x angular grid (default 200x256)");
    reso->add_option("--n-max", block_n_max, "comparison block size (default 5)");
    reso->add_option("--out", out_path);

    auto* qf = app.add_subcommand("qfunction", "generalized Q-function Tr[Pi(S) rho]");
    qf->add_option("--labels", labels_text)->required();
    qf->add_option("--state", state_path, "state JSON {n_max, amps} (default vacuum)");
    qf->add_option("--n-max", n_max);
    qf->add_option("--out", out_path);

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->add_option("--suite", suite,
                    "all|tables|ring|projectors|moments|covariance|resolution|contour|zeros|gates");
    ver->add_option("--seed", seed, "seed for randomized suites");
    ver->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gram->parsed()) return run_gram(labels_text, out_path);
        if (proj->parsed()) return run_projector(labels_text, n_max, tol, dump, out_path);
        if (chain->parsed()) return run_chain(labels_text, n_max, tol, out_path);
        if (table->parsed()) return run_truth_table(gate_name, r_text, paper_order, out_path);
        if (cc->parsed()) return run_cnot_classical(r_text, control, target, out_path);
        if (cq->parsed()) return run_cnot_quantum(labels_text, labels_b_text, out_path);
        if (cont->parsed()) return run_contour(labels_text, out_path);
        if (reso->parsed())
            return run_resolution(offsets_text, disk_radius, grid_text, block_n_max, out_path);
        if (qf->parsed()) return run_qfunction(labels_text, state_path, n_max, out_path);
        if (ver->parsed()) return run_verify(suite, seed, out_path);
    } catch (const cohsp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cohsp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
