#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "authkit/formats.hpp"
#include "authkit/oracle.hpp"
#include "authkit/transform.hpp"
#include "authkit/verify.hpp"

namespace {

using namespace authkit;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

int common_cell_size(const OrderedDesign& d) {
    return static_cast<int>(d.rows.at(0).at(0).size());
}

// Code-consuming commands also take a %DESIGN file, read as an encoding
// matrix with uniform sources, so `gen | order` output feeds straight in.
AuthCode load_authcode(const std::string& path) {
    const std::string text = read_file(path);
    if (sniff_kind(text) == FileKind::design) return make_authcode(parse_design(text));
    return parse_authcode(text);
}

Attack attack_from_name(const std::string& name) {
    if (name == "impersonation") return Attack::impersonation;
    if (name == "message-substitution") return Attack::message_substitution;
    return Attack::key_substitution;  // the option value is pre-checked by CLI11
}

int run_gen(const std::string& base_path, const std::string& out_path) {
    BaseBlocks bases = parse_baseblocks(read_file(base_path));
    OrderedDesign d = develop(bases.bases, bases.n);
    write_output(out_path, emit_design(d));
    return 0;
}

int run_order(const std::string& design_path, long long budget, const std::string& out_path) {
    OrderedDesign d = parse_design(read_file(design_path));
    const int c = common_cell_size(d);
    if (c == 1) {
        std::vector<Cell> blocks;
        for (const Row& row : d.rows) {
            Cell blk;
            for (const Cell& cell : row) blk.push_back(cell[0]);
            std::sort(blk.begin(), blk.end());
            blocks.push_back(std::move(blk));
        }
        write_output(out_path, emit_design(equitable_order(blocks, d.v, d.u)));
        return 0;
    }
    SplittingOrdering result = equitable_order_splitting(d.rows, d.v, d.u, c, budget);
    switch (result.status) {
        case OrderingStatus::found:
            write_output(out_path, emit_design(result.design));
            return 0;
        case OrderingStatus::none_found:
            std::cerr << "no equitable ordering found within the search budget (not a proof of nonexistence)\n";
            return 1;
        case OrderingStatus::infeasible:
            std::cerr << result.error << "\n";
            return 1;
    }
    return 1;
}

int validate_design_object(const OrderedDesign& d) {
    const int c = common_cell_size(d);
    bool ok;
    if (c == 1) {
        BibdCheck check = validate_bibd(d);
        ok = check.ok;
        if (check.ok)
            std::cout << "design: (" << check.params.v << "," << check.params.b << "," << check.params.r << ","
                      << check.params.k << "," << check.params.lambda << ")-BIBD\n";
        else
            std::cout << "design: not a BIBD: " << check.error << "\n";
    } else {
        SplittingCheck check = validate_splitting_bibd(d, d.u, c);
        ok = check.ok;
        if (check.ok)
            std::cout << "design: (" << check.params.v << "," << check.params.u << "x" << check.params.c
                      << ",1)-splitting BIBD with b=" << check.params.b << " r=" << check.params.r << "\n";
        else
            std::cout << "design: not a splitting BIBD: " << check.error << "\n";
    }
    EquitableCheck eq = check_equitable(d);
    if (eq.ok)
        std::cout << "ordering: equitable with multiplicity " << eq.multiplicity << "\n";
    else
        std::cout << "ordering: not equitable (position " << eq.position << ", point " << eq.point << " occurs "
                  << eq.count << " times, elsewhere " << eq.multiplicity << ")\n";
    return ok ? 0 : 1;
}

int validate_baseblocks_object(const BaseBlocks& bases) {
    OrderedDesign d = develop(bases.bases, bases.n);
    bool any_ok = false;
    if (bases.c == 1) {
        BibdCheck check = validate_bibd(d);
        any_ok = check.ok;
        if (check.ok)
            std::cout << "developed design: (" << check.params.v << "," << check.params.b << "," << check.params.r
                      << "," << check.params.k << "," << check.params.lambda << ")-BIBD\n";
        else
            std::cout << "developed design: not a BIBD: " << check.error << "\n";
    } else {
        SplittingCheck check = validate_splitting_bibd(d, bases.u, bases.c);
        any_ok = check.ok;
        if (check.ok)
            std::cout << "developed design: (" << check.params.v << "," << check.params.u << "x" << check.params.c
                      << ",1)-splitting BIBD with b=" << check.params.b << "\n";
        else
            std::cout << "developed design: not a splitting BIBD: " << check.error << "\n";
    }
    if (bases.bases.size() == 1) {
        EdfCheck edf = validate_edf(EdfSpec{bases.n, bases.bases[0]});
        if (edf.ok) {
            std::cout << "base row as difference family: (" << bases.n << "," << bases.u << "," << bases.c << ","
                      << edf.lambda << ") external difference family\n";
            any_ok = true;
        } else {
            std::cout << "base row as difference family: no: " << edf.error << "\n";
        }
    }
    return any_ok ? 0 : 1;
}

int run_validate(const std::string& path) {
    const std::string text = read_file(path);
    ParsedFile parsed = parse_any(text);  // authcode/threshold invariants checked during parse
    if (std::holds_alternative<OrderedDesign>(parsed)) return validate_design_object(std::get<OrderedDesign>(parsed));
    if (std::holds_alternative<BaseBlocks>(parsed)) return validate_baseblocks_object(std::get<BaseBlocks>(parsed));
    if (std::holds_alternative<AuthCode>(parsed)) {
        const AuthCode& code = std::get<AuthCode>(parsed);
        auto c = splitting_number(code);
        std::cout << "authcode: ok, v=" << code.v() << " b=" << code.b() << " u=" << code.u() << " splitting="
                  << (c ? std::to_string(*c) : std::string("nonuniform")) << "\n";
        return 0;
    }
    const ThresholdScheme& scheme = std::get<ThresholdScheme>(parsed);
    std::cout << "threshold: ok, s=" << scheme.secret_count << " a1=" << scheme.share1_count
              << " a2=" << scheme.share2_count << " rules=" << scheme.rules.size() << "\n";
    return 0;
}

int run_analyze(const std::string& path, const std::vector<std::string>& sourcedist) {
    AuthCode code = load_authcode(path);
    if (!sourcedist.empty()) {
        std::vector<Rational> weights;
        for (const std::string& token : sourcedist) weights.push_back(Rational::parse(token));
        code = make_authcode(code.matrix, Distribution::from_weights(std::move(weights)));
    }
    std::cout << analyze(code).to_text();
    return 0;
}

int run_dual(const std::string& path, const std::string& out_path) {
    write_output(out_path, emit_authcode(dual(load_authcode(path))));
    return 0;
}

int run_convert(const std::string& to_threshold, const std::string& to_authcode, const std::string& out_path) {
    if (!to_threshold.empty())
        write_output(out_path, emit_threshold(authcode_to_threshold(load_authcode(to_threshold))));
    else
        write_output(out_path, emit_authcode(threshold_to_authcode(parse_threshold(read_file(to_authcode)))));
    return 0;
}

int run_simulate(const std::string& path, const std::string& attack_name, std::uint64_t trials,
                 std::uint64_t seed) {
    const AuthCode code = load_authcode(path);
    const Attack attack = attack_from_name(attack_name);
    const std::vector<int> strategy = optimal_strategy(code, attack);
    SimResult sim = monte_carlo(code, attack, strategy, trials, seed);
    std::cout << "trials=" << sim.trials << " wins=" << sim.wins << " estimate=" << sim.estimate.str()
              << " stderr<=" << sim.stderr_bound.str() << " seed=" << sim.seed << "\n";
    return 0;
}

int run_verify_paper() {
    auto results = run_reference_suite();
    for (const CriterionResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << "\n";
    }
    bool ok = all_passed(results);
    std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for splitting authentication codes, (2,2)-threshold schemes and the designs behind them"};
    app.require_subcommand(1);

    std::string base_path, out_path, file_path, attack_name = "key-substitution";
    std::string to_threshold_path, to_authcode_path, order_mode = "keep";
    std::vector<std::string> sourcedist;
    long long budget = kDefaultOrderingBudget;
    std::uint64_t trials = 100000, seed = 1;

    CLI::App* gen = app.add_subcommand("gen", "develop base blocks through Z_n into a design");
    gen->add_option("--base", base_path, "base-block file (%BASEBLOCKS)")->required();
    gen->add_option("--order", order_mode, "base cell order handling (only 'keep')")
        ->check(CLI::IsMember({"keep"}));
    gen->add_option("-o,--out", out_path, "output path (default stdout)");

    CLI::App* order = app.add_subcommand("order", "equitably order a design (%DESIGN in, %DESIGN out)");
    order->add_option("file", file_path, "design file")->required();
    order->add_option("--budget", budget, "search node budget for splitting designs");
    order->add_option("-o,--out", out_path, "output path (default stdout)");

    CLI::App* validate = app.add_subcommand("validate", "validate any of the four file kinds");
    validate->add_option("file", file_path, "input file")->required();

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "exact attack values and secrecy verdicts for a code");
    analyze_cmd->add_option("file", file_path, "authcode file")->required();
    analyze_cmd->add_option("--sourcedist", sourcedist, "override source weights (rationals)");

    CLI::App* dual_cmd = app.add_subcommand("dual", "emit the dual code (keys and messages interchanged)");
    dual_cmd->add_option("file", file_path, "authcode file")->required();
    dual_cmd->add_option("-o,--out", out_path, "output path (default stdout)");

    CLI::App* convert = app.add_subcommand("convert", "convert between authcode and threshold scheme");
    convert->add_option("--to-threshold", to_threshold_path, "authcode file to convert");
    convert->add_option("--to-authcode", to_authcode_path, "threshold file to convert");
    convert->add_option("-o,--out", out_path, "output path (default stdout)");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run of the optimal strategy");
    simulate->add_option("file", file_path, "authcode file")->required();
    simulate->add_option("--attack", attack_name, "impersonation | message-substitution | key-substitution")
        ->check(CLI::IsMember({"impersonation", "message-substitution", "key-substitution"}));
    simulate->add_option("--trials", trials, "number of trials");
    simulate->add_option("--seed", seed, "PRNG seed");

    app.add_subcommand("verify-paper", "run every built-in verification criterion and print a pass/fail table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage problems exit 2
    }

    try {
        if (gen->parsed()) return run_gen(base_path, out_path);
        if (order->parsed()) return run_order(file_path, budget, out_path);
        if (validate->parsed()) return run_validate(file_path);
        if (analyze_cmd->parsed()) return run_analyze(file_path, sourcedist);
        if (dual_cmd->parsed()) return run_dual(file_path, out_path);
        if (convert->parsed()) {
            if (to_threshold_path.empty() == to_authcode_path.empty()) {
                std::cerr << "convert: pass exactly one of --to-threshold / --to-authcode\n";
                return 2;
            }
            return run_convert(to_threshold_path, to_authcode_path, out_path);
        }
        if (simulate->parsed()) return run_simulate(file_path, attack_name, trials, seed);
        return run_verify_paper();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
