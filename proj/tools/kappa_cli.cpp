// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// kappa: lower bounds for the p-part of class numbers of p^n-division fields
// of elliptic curves over Q with multiplicative reduction at p.

#include "CLI11.hpp"

#include "kappa/report.hpp"

#include <iostream>

namespace {

std::pair<long, long> parse_range(const std::string& s) {
    size_t dots = s.find("..");
    if (dots == std::string::npos) {
        long n = std::stol(s);
        return {n, n};
    }
    return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kappa: class-number divisibility bounds from Tate curves"};

    std::string curve_str, gens_str, n_str = "1", corpus_path;
    long p_val = 2;
    long precision_guard = 8;
    long prime_budget = 10000;
    bool json_out = false, verify_group_theory = false;

    app.add_option("--curve", curve_str, "a1,a2,a3,a4,a6 (rational entries)");
    app.add_option("--gens", gens_str, "Mordell-Weil generators \"(x1,y1);(x2,y2)\"");
    app.add_option("--p", p_val, "the prime p")->check(CLI::PositiveNumber);
    app.add_option("--n", n_str, "level or range, e.g. 3 or 1..5");
    app.add_flag("--json", json_out, "emit the JSON report");
    app.add_flag("--verify-group-theory", verify_group_theory,
                 "run the exhaustive finite-group verifications");
    app.add_option("--corpus", corpus_path, "run a JSONL corpus and compare");
    app.add_option("--precision-guard", precision_guard, "extra p-adic digits beyond n");
    app.add_option("--prime-budget", prime_budget, "Frobenius sampling bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!corpus_path.empty()) {
            kappa::CorpusOutcome outcome = kappa::run_corpus(corpus_path, std::cout);
            return outcome.failures.empty() ? 0 : 1;
        }

        if (curve_str.empty()) {
            if (verify_group_theory) {
                // Group-theory-only mode needs no curve.
                auto lattice = kappa::verify_submodule_lattice();
                auto hstruct = kappa::verify_h_structure();
                auto inertia = kappa::verify_inertia_matrices();
                std::cout << "submodule lattice: " << lattice.nontrivial_proper_count
                          << " nontrivial proper submodules, "
                          << (lattice.pass ? "pass" : "FAIL") << "\n"
                          << "H structure: [H1:H] = " << hstruct.index_in_h1
                          << ", [H2:H] = " << hstruct.index_in_h2 << ", "
                          << (hstruct.pass ? "pass" : "FAIL") << "\n"
                          << "inertia matrices: span " << inertia.span_size
                          << ", V2(1) intersection " << inertia.intersection_v21_size << ", "
                          << (inertia.pass ? "pass" : "FAIL") << "\n";
                return (lattice.pass && hstruct.pass && inertia.pass) ? 0 : 1;
            }
            std::cerr << "error: --curve (or --corpus) is required\n";
            return 1;
        }

        kappa::RunConfig config;
        config.curve = kappa::parse_curve(curve_str);
        config.mw.generators = kappa::parse_points(gens_str);
        config.mw.rank = static_cast<unsigned>(config.mw.generators.size());
        config.p = kappa::Integer(p_val);
        auto [lo, hi] = parse_range(n_str);
        config.n_min = lo;
        config.n_max = hi;
        config.precision_guard = precision_guard;
        config.prime_budget = prime_budget;
        config.verify_group_theory = verify_group_theory;

        kappa::RunReport report = kappa::run(config);
        std::cout << (json_out ? kappa::to_json(report) : kappa::to_text(report)) << "\n";

        if (!report.hypotheses_met) return 2;
        return report.all_stages_ok() ? 0 : 1;
    } catch (const kappa::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
