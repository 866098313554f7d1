// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include "kappa/bounds.hpp"
#include "kappa/galois.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace kappa {

struct RunConfig {
    WeierstrassModel curve;
    MordellWeilInput mw;
    Integer p = 2;
    long n_min = 1;
    long n_max = 1;
    long precision_guard = 8;
    long prime_budget = 10000;
    bool verify_group_theory = false;

    void validate() const; // throws domain_error on malformed input
};

struct StageStatus {
    std::string name;
    bool ok = false;
    std::string detail; // error text when !ok
};

struct LevelReport {
    long n = 1;
    LocalImageData image;
    BoundReport bound;
    DivisibilityClaim claim;
};

struct RunReport {
    int schema = 1;
    RunConfig config;

    // curve invariants and reduction data
    std::optional<GlobalReductionProfile> profile;
    std::optional<CurveInvariants> inv;
    std::optional<Factorization> delta_fact;
    std::optional<Factorization> conductor_fact;
    unsigned torsion_order = 1;
    bool torsion_flagged = false;

    std::optional<HypothesisReport> hypotheses;
    bool hypotheses_met = false;

    // local data at p (only when the hypotheses hold)
    long ord_q = 0;
    std::optional<BaseFieldTag> field;
    std::optional<FieldLabels> labels; // p = 2
    std::vector<LevelReport> levels;

    std::optional<ImageDiagnostic> image_diag;

    bool group_theory_run = false;
    SubmoduleLatticeReport lattice;
    HStructureReport hstruct;
    InertiaMatrixReport inertia;

    std::vector<StageStatus> stages;

    bool all_stages_ok() const;
};

// Orchestrates invariants -> conductor -> hypotheses -> Tate parameter ->
// local images -> nu tables -> bounds -> image diagnostics. Partial failures
// are recorded per stage, never silently dropped.
RunReport run(const RunConfig& config);

// Deterministic JSON (ordered keys, no timestamps).
std::string to_json(const RunReport& report);
std::string to_text(const RunReport& report);

// "a1,a2,a3,a4,a6" with rational entries.
WeierstrassModel parse_curve(const std::string& s);
// "(x1,y1);(x2,y2)" with rational entries; empty string = no generators.
std::vector<Point> parse_points(const std::string& s);

struct CorpusOutcome {
    size_t total = 0;
    size_t passed = 0;
    std::vector<std::string> failures; // "label: field expected=.. computed=.. [source]"
};

// One JSON object per line; blank lines and #-comments ignored. Entries are
// processed concurrently up to a small worker cap; output order is stable.
CorpusOutcome run_corpus(const std::string& path, std::ostream& out);

} // namespace kappa
