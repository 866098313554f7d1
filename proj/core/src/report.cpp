// Copyright (c) 2026 The kappa authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "kappa/report.hpp"

#include "json.hpp"

#include <fstream>
#include <future>
#include <sstream>

namespace kappa {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (!is_prime(p)) throw domain_error("config: p is not prime");
    if (n_min < 1 || n_max < n_min) throw domain_error("config: need 1 <= n_min <= n_max");
    if (precision_guard < 2) throw domain_error("config: precision guard too small");
    kappa::validate(curve, mw);
}

bool RunReport::all_stages_ok() const {
    for (const auto& s : stages)
        if (!s.ok) return false;
    return true;
}

namespace {

template <class Fn>
bool stage(RunReport& rep, const std::string& name, Fn&& fn) {
    try {
        fn();
        rep.stages.push_back({name, true, ""});
        return true;
    } catch (const std::exception& e) {
        rep.stages.push_back({name, false, e.what()});
        return false;
    }
}

} // namespace

RunReport run(const RunConfig& config) {
    RunReport rep;
    rep.config = config;

    config.validate();

    stage(rep, "invariants", [&] { rep.inv = invariants(config.curve); });

    bool have_profile = stage(rep, "conductor", [&] {
        rep.profile = conductor(config.curve);
        rep.delta_fact = factor(rep.profile->minimal_discriminant);
        rep.conductor_fact = factor(rep.profile->conductor);
    });

    std::vector<Point> torsion_points;
    stage(rep, "torsion", [&] {
        TorsionSubgroup ts = torsion_subgroup(config.curve);
        rep.torsion_order = ts.order;
        rep.torsion_flagged = ts.order > 1;
        torsion_points = ts.generators;
        if (config.mw.torsion_order && *config.mw.torsion_order != ts.order)
            throw domain_error("supplied torsion order " +
                               std::to_string(*config.mw.torsion_order) + " != computed " +
                               std::to_string(ts.order));
    });

    if (!have_profile) return rep;

    stage(rep, "hypotheses", [&] {
        rep.hypotheses = hypothesis_check(*rep.profile, config.p);
        rep.hypotheses_met = rep.hypotheses->pass;
    });
    if (!rep.hypotheses || !rep.hypotheses_met) return rep;

    const LocalReductionData* at_p = rep.profile->at(config.p);

    stage(rep, "local-images", [&] {
        rep.field = base_field(*at_p);
        rep.ord_q = at_p->ord_delta;
        for (long n = config.n_min; n <= config.n_max; ++n) {
            LevelReport lvl;
            lvl.n = n;
            lvl.image = with_precision_retry(n, config.precision_guard, [&](long prec) {
                TateLocalContext ctx(*at_p, prec);
                return ctx.local_image(config.mw.generators, torsion_points, n);
            });
            lvl.bound = assemble_bound(*rep.profile, config.p, n, config.mw.rank, lvl.image);
            lvl.claim = divisibility_claim(lvl.bound);
            rep.levels.push_back(std::move(lvl));
        }
    });

    if (config.p == 2) {
        stage(rep, "field-labels", [&] {
            rep.labels = with_precision_retry(1, config.precision_guard + 2, [&](long prec) {
                TateLocalContext ctx(*at_p, prec);
                std::vector<Point> all = config.mw.generators;
                all.insert(all.end(), torsion_points.begin(), torsion_points.end());
                return local_field_labels(ctx, all, 1);
            });
        });
    }

    stage(rep, "galois-image", [&] {
        rep.image_diag = galois_image_diagnostic(rep.profile->global_minimal_model, config.p,
                                                 config.prime_budget);
    });

    if (config.verify_group_theory) {
        stage(rep, "group-theory", [&] {
            rep.lattice = verify_submodule_lattice();
            rep.hstruct = verify_h_structure();
            rep.inertia = verify_inertia_matrices();
            rep.group_theory_run = true;
        });
    }
    return rep;
}

// ---- serialization ----

namespace {

std::string model_string(const WeierstrassModel& m) {
    return to_string(m.a1) + "," + to_string(m.a2) + "," + to_string(m.a3) + "," +
           to_string(m.a4) + "," + to_string(m.a6);
}

std::string points_string(const std::vector<Point>& pts) {
    std::string out;
    for (const Point& g : pts) {
        if (!out.empty()) out += ";";
        out += "(" + to_string(g.x) + "," + to_string(g.y) + ")";
    }
    return out;
}

std::string field_name(BaseFieldTag tag, const Integer& p) {
    if (tag == BaseFieldTag::Qp) return "Q" + p.get_str();
    return "Q" + p.get_str() + "(unramified quadratic)";
}

ordered_json rational_factored(const Rational& x) {
    ordered_json j;
    j["value"] = to_string(x);
    if (x != 0) {
        j["numerator_factored"] = factor(x.get_num()).to_string();
        if (x.get_den() != 1) j["denominator_factored"] = factor(x.get_den()).to_string();
    }
    return j;
}

} // namespace

std::string to_json(const RunReport& rep) {
    ordered_json j;
    j["schema"] = rep.schema;

    j["input"] = {{"curve", model_string(rep.config.curve)},
                  {"generators", points_string(rep.config.mw.generators)},
                  {"rank", rep.config.mw.rank},
                  {"p", rep.config.p.get_str()},
                  {"n_min", rep.config.n_min},
                  {"n_max", rep.config.n_max},
                  {"precision_guard", rep.config.precision_guard},
                  {"prime_budget", rep.config.prime_budget}};

    if (rep.inv) {
        ordered_json c;
        if (rep.profile) {
            c["conductor"] = rep.profile->conductor.get_str();
            c["conductor_factored"] = rep.conductor_fact->to_string();
            c["delta_min"] = rep.profile->minimal_discriminant.get_str();
            c["delta_min_factored"] = rep.delta_fact->to_string();
            c["global_minimal_model"] = model_string(rep.profile->global_minimal_model);
        }
        c["j"] = rational_factored(rep.inv->j);
        c["torsion_order"] = rep.torsion_order;
        c["torsion_flagged"] = rep.torsion_flagged;
        j["curve"] = c;
    }

    if (rep.hypotheses) {
        ordered_json h;
        h["pass"] = rep.hypotheses->pass;
        h["checks"] = ordered_json::array();
        for (const auto& c : rep.hypotheses->checks)
            h["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        j["hypotheses"] = h;
    }

    if (rep.profile) {
        ordered_json loc;
        loc["reduction"] = ordered_json::array();
        for (const auto& d : rep.profile->local) {
            loc["reduction"].push_back({{"prime", d.prime.get_str()},
                                        {"class", to_string(d.cls)},
                                        {"kodaira", d.kodaira.str()},
                                        {"f", d.conductor_exponent},
                                        {"ord_delta", d.ord_delta},
                                        {"potentially_good", d.potentially_good}});
        }
        if (rep.field) {
            loc["ord_q"] = rep.ord_q;
            loc["base_field"] = field_name(*rep.field, rep.config.p);
        }
        if (rep.labels) {
            loc["k1_completion"] = rep.labels->k1_completion;
            loc["zeta4_in_k1"] = rep.labels->zeta4_in_k1;
            loc["zeta4_in_l1"] = rep.labels->zeta4_in_l1;
            loc["zeta4_decided_at_m_level"] = rep.labels->decided_at_m_level;
        }
        j["local"] = loc;
    }

    if (!rep.levels.empty()) {
        j["theorem1"] = ordered_json::array();
        for (const auto& lvl : rep.levels) {
            ordered_json t;
            t["n"] = lvl.n;
            ordered_json nu;
            for (const auto& e : lvl.bound.nus.entries) nu[e.ell.get_str()] = e.nu;
            t["nu_table"] = nu;
            t["s"] = lvl.bound.nus.s();
            t["r2n"] = lvl.bound.r2n;
            t["delta2"] = lvl.bound.delta2;
            t["nu"] = lvl.bound.nu;
            t["nu_stable"] = lvl.image.nu_stable;
            t["headline"] = lvl.bound.headline;
            t["refined"] = lvl.bound.refined;
            t["kappa_lower_bound"] = lvl.bound.kappa_lower_bound;
            t["claim_exponent"] = lvl.bound.claim_exponent;
            t["claim"] = lvl.claim.text;
            t["clamped"] = lvl.bound.clamped;
            t["inertia_p_exponent"] = lvl.bound.inertia_p_exponent;
            ordered_json ie;
            for (const auto& e : lvl.bound.nus.entries)
                ie[e.ell.get_str()] = inertia_bound_ell_exponent(e.nu);
            t["inertia_ell_exponents"] = ie;
            t["prose_variant_differs"] = lvl.bound.prose_variant_differs;
            if (lvl.bound.prose_variant_differs)
                t["prose_variant_bound"] = lvl.bound.prose_variant_bound;
            ordered_json cls = ordered_json::array();
            for (const auto& c : lvl.image.classes)
                cls.push_back({{"torsion_bit", c.torsion_bit},
                               {"exponent", c.exponent.get_str()}});
            t["generator_classes"] = cls;
            j["theorem1"].push_back(t);
        }

        ordered_json cor;
        bool applicable = !rep.levels.empty() && rep.levels.front().bound.exact;
        cor["applicable"] = applicable;
        if (applicable) {
            cor["exact_kappa"] = ordered_json::array();
            for (const auto& lvl : rep.levels)
                cor["exact_kappa"].push_back(
                    {{"n", lvl.n}, {"kappa", lvl.bound.exact_kappa}});
        }
        j["corollary1"] = cor;
    }

    if (rep.image_diag) {
        ordered_json g;
        if (rep.config.p == 2) {
            g["mod2_type"] = to_string(rep.image_diag->mod2_type);
            g["quartic_obstruction"] = rep.image_diag->quartic_obstruction;
        }
        g["coverage"] = {{"level", rep.image_diag->coverage.n0},
                         {"target", rep.image_diag->coverage.target},
                         {"observed", rep.image_diag->coverage.observed},
                         {"primes_used", rep.image_diag->coverage.primes_used},
                         {"complete", rep.image_diag->coverage.complete}};
        g["verdict"] = rep.image_diag->verdict;
        j["galois_image"] = g;
    }

    if (rep.group_theory_run) {
        j["group_theory"] = {
            {"submodule_lattice",
             {{"nontrivial_proper_count", rep.lattice.nontrivial_proper_count},
              {"pass", rep.lattice.pass}}},
            {"h_structure",
             {{"order", rep.hstruct.h_order},
              {"index_in_h1", rep.hstruct.index_in_h1},
              {"index_in_h2", rep.hstruct.index_in_h2},
              {"pass", rep.hstruct.pass}}},
            {"inertia_matrices",
             {{"span_size", rep.inertia.span_size},
              {"intersection_v21_size", rep.inertia.intersection_v21_size},
              {"pass", rep.inertia.pass}}}};
    }

    j["stages"] = ordered_json::array();
    for (const auto& s : rep.stages)
        j["stages"].push_back({{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});

    return j.dump(2);
}

std::string to_text(const RunReport& rep) {
    std::ostringstream os;
    os << "curve " << model_string(rep.config.curve) << "   p = " << rep.config.p.get_str()
       << "\n";
    if (rep.profile) {
        os << "N = " << rep.profile->conductor.get_str() << " = "
           << rep.conductor_fact->to_string() << "\n";
        os << "Delta_min = " << rep.delta_fact->to_string() << "\n";
        if (rep.inv) os << "j = " << to_string(rep.inv->j) << "\n";
        for (const auto& d : rep.profile->local)
            os << "  at " << d.prime.get_str() << ": " << to_string(d.cls) << " ("
               << d.kodaira.str() << ", f = " << d.conductor_exponent
               << ", ord Delta = " << d.ord_delta << ")\n";
    }
    if (rep.torsion_flagged)
        os << "torsion of order " << rep.torsion_order
           << " present: images include the torsion generators\n";
    if (rep.hypotheses) {
        os << "hypotheses: " << (rep.hypotheses_met ? "met" : "NOT MET") << "\n";
        for (const auto& c : rep.hypotheses->checks)
            if (!c.pass) os << "  failed: " << c.name << " (" << c.detail << ")\n";
    }
    if (!rep.hypotheses_met) {
        os << "bounds suppressed (hypotheses-not-met)\n";
        return os.str();
    }
    if (rep.field)
        os << "Tate parameter: ord_q = " << rep.ord_q << ", M = "
           << field_name(*rep.field, rep.config.p) << "\n";
    if (rep.labels) {
        os << "K1 completion = " << rep.labels->k1_completion
           << ", zeta4 in L1: " << (rep.labels->zeta4_in_l1 ? "yes" : "no");
        if (rep.labels->decided_at_m_level) os << " (decided over M)";
        os << "\n";
    }
    for (const auto& lvl : rep.levels) {
        os << "n = " << lvl.n << ": kappa >= " << lvl.bound.kappa_lower_bound << "  =>  "
           << lvl.claim.text;
        if (lvl.bound.clamped) os << "  [vacuous]";
        if (lvl.bound.exact) os << "  [exact: " << lvl.bound.exact_kappa << "]";
        if (lvl.bound.prose_variant_differs)
            os << "  [alt reading: " << lvl.bound.prose_variant_bound << "]";
        os << "\n";
    }
    if (rep.image_diag) os << "image evidence: " << rep.image_diag->verdict << "\n";
    if (rep.group_theory_run)
        os << "group theory: lattice " << (rep.lattice.pass ? "ok" : "FAIL") << ", H "
           << (rep.hstruct.pass ? "ok" : "FAIL") << ", inertia "
           << (rep.inertia.pass ? "ok" : "FAIL") << "\n";
    for (const auto& s : rep.stages)
        if (!s.ok) os << "stage " << s.name << " failed: " << s.detail << "\n";
    return os.str();
}

// ---- parsing ----

WeierstrassModel parse_curve(const std::string& s) {
    std::vector<Rational> vals;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) throw domain_error("curve parse: empty coefficient in '" + s + "'");
        vals.push_back(rational_from_string(tok));
    }
    if (vals.size() != 5)
        throw domain_error("curve parse: expected 5 coefficients, got " +
                           std::to_string(vals.size()));
    return WeierstrassModel{vals[0], vals[1], vals[2], vals[3], vals[4]};
}

std::vector<Point> parse_points(const std::string& s) {
    std::vector<Point> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t open = s.find('(', pos);
        if (open == std::string::npos) break;
        size_t comma = s.find(',', open);
        size_t close = s.find(')', open);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw domain_error("point parse error at position " + std::to_string(open) +
                               " in '" + s + "'");
        Rational x = rational_from_string(s.substr(open + 1, comma - open - 1));
        Rational y = rational_from_string(s.substr(comma + 1, close - comma - 1));
        out.push_back(Point::affine(x, y));
        pos = close + 1;
    }
    return out;
}

// ---- corpus ----

namespace {

struct Expectation {
    std::string label;
    RunConfig config;
    nlohmann::json expect;
};

void check_field(std::vector<std::string>& failures, const std::string& label,
                 const std::string& field, const std::string& expected,
                 const std::string& computed, const std::string& source) {
    if (expected != computed)
        failures.push_back(label + ": " + field + " expected=" + expected +
                           " computed=" + computed + " [" + source + "]");
}

std::vector<std::string> check_entry(const Expectation& e, const RunReport& rep) {
    std::vector<std::string> failures;
    const nlohmann::json& x = e.expect;
    std::string source = x.value("source", "unspecified");

    if (!rep.profile) {
        failures.push_back(e.label + ": no reduction profile computed");
        return failures;
    }
    if (x.contains("conductor"))
        check_field(failures, e.label, "conductor", x["conductor"].get<std::string>(),
                    rep.profile->conductor.get_str(), source);
    if (x.contains("delta_min"))
        check_field(failures, e.label, "delta_min", x["delta_min"].get<std::string>(),
                    rep.profile->minimal_discriminant.get_str(), source);
    if (x.contains("j") && rep.inv)
        check_field(failures, e.label, "j", x["j"].get<std::string>(), to_string(rep.inv->j),
                    source);
    if (x.contains("reduction")) {
        for (auto& [prime, cls] : x["reduction"].items()) {
            const LocalReductionData* d = rep.profile->at(Integer(prime));
            check_field(failures, e.label, "reduction@" + prime, cls.get<std::string>(),
                        d ? to_string(d->cls) : "(absent)", source);
        }
    }
    if (x.contains("hypotheses_met"))
        check_field(failures, e.label, "hypotheses_met",
                    x["hypotheses_met"].get<bool>() ? "true" : "false",
                    rep.hypotheses_met ? "true" : "false", source);
    if (x.contains("zeta4_in_l1") && rep.labels)
        check_field(failures, e.label, "zeta4_in_l1",
                    x["zeta4_in_l1"].get<bool>() ? "true" : "false",
                    rep.labels->zeta4_in_l1 ? "true" : "false", source);
    if (x.contains("k1_completion") && rep.labels)
        check_field(failures, e.label, "k1_completion", x["k1_completion"].get<std::string>(),
                    rep.labels->k1_completion, source);

    auto per_level = [&](const std::string& key, auto getter) {
        if (!x.contains(key)) return;
        const auto& arr = x[key];
        for (size_t i = 0; i < rep.levels.size() && i < arr.size(); ++i) {
            std::ostringstream expected;
            expected << arr[i];
            std::ostringstream computed;
            computed << getter(rep.levels[i]);
            check_field(failures, e.label, key + "@n=" + std::to_string(rep.levels[i].n),
                        expected.str(), computed.str(), source);
        }
    };
    per_level("kappa", [](const LevelReport& l) { return l.bound.kappa_lower_bound; });
    per_level("claim_exponent", [](const LevelReport& l) { return l.bound.claim_exponent; });
    per_level("r2n", [](const LevelReport& l) { return l.bound.r2n; });
    per_level("nu", [](const LevelReport& l) { return l.bound.nu; });

    if (x.contains("nu_table")) {
        for (auto& [prime, arr] : x["nu_table"].items()) {
            for (size_t i = 0; i < rep.levels.size() && i < arr.size(); ++i) {
                long expected = arr[i].get<long>();
                long computed = -1;
                for (const auto& en : rep.levels[i].bound.nus.entries)
                    if (en.ell == Integer(prime)) computed = en.nu;
                check_field(failures, e.label,
                            "nu_" + prime + "@n=" + std::to_string(rep.levels[i].n),
                            std::to_string(expected), std::to_string(computed), source);
            }
        }
    }
    return failures;
}

} // namespace

CorpusOutcome run_corpus(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw domain_error("corpus: cannot open " + path);

    std::vector<Expectation> entries;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(line);
        } catch (const std::exception& ex) {
            throw domain_error("corpus line " + std::to_string(lineno) + ": " + ex.what());
        }
        Expectation e;
        try {
            e.label = doc.value("label", "line-" + std::to_string(lineno));
            e.config.curve = parse_curve(doc.at("curve").get<std::string>());
            e.config.mw.generators = parse_points(doc.value("gens", ""));
            e.config.mw.rank = static_cast<unsigned>(e.config.mw.generators.size());
            e.config.p = Integer(doc.at("p").get<long>());
            e.config.n_min = doc.value("n_min", 1L);
            e.config.n_max = doc.value("n_max", 1L);
            e.config.prime_budget = doc.value("prime_budget", 10000L);
            e.expect = doc.value("expect", nlohmann::json::object());
        } catch (const std::exception& ex) {
            throw domain_error("corpus line " + std::to_string(lineno) + ": " + ex.what());
        }
        entries.push_back(std::move(e));
    }

    CorpusOutcome outcome;
    outcome.total = entries.size();
    if (entries.empty()) {
        out << "corpus: no entries (vacuous pass)\n";
        return outcome;
    }

    // Fan out with a small worker cap; join in input order.
    const size_t cap = 4;
    std::vector<std::future<RunReport>> futs(entries.size());
    size_t launched = 0, joined = 0;
    std::vector<RunReport> reports(entries.size());
    while (joined < entries.size()) {
        while (launched < entries.size() && launched - joined < cap) {
            const RunConfig& cfg = entries[launched].config;
            futs[launched] = std::async(std::launch::async, [cfg] { return run(cfg); });
            ++launched;
        }
        reports[joined] = futs[joined].get();
        ++joined;
    }

    for (size_t i = 0; i < entries.size(); ++i) {
        std::vector<std::string> failures = check_entry(entries[i], reports[i]);
        if (failures.empty()) {
            ++outcome.passed;
            out << "PASS " << entries[i].label << "\n";
        } else {
            out << "FAIL " << entries[i].label << "\n";
            for (const auto& f : failures) {
                out << "  " << f << "\n";
                outcome.failures.push_back(f);
            }
        }
    }
    out << outcome.passed << "/" << outcome.total << " corpus entries passed\n";
    return outcome;
}

} // namespace kappa
