// Acceptance runner: one PASS/FAIL line per criterion, then a summary.
//
// Exit status is 0 when every criterion passes, except that criterion 7 is a
// known defect of its own statement (depth 2 is too shallow for four states);
// its FAIL line is still printed, and the run only stays green if the
// companion check at depth |S| finds zero disagreements.

#include "support/oracle.hpp"

#include "uekit/equivalence.hpp"
#include "uekit/formula.hpp"
#include "uekit/models.hpp"
#include "uekit/random.hpp"
#include "uekit/semantics.hpp"
#include "uekit/ue.hpp"
#include "uekit/ultrafilter.hpp"

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace uekit;

namespace {

// Zero tolerance everywhere: every criterion counts violations and passes at 0.
constexpr std::size_t tolerance = 0;

constexpr std::uint64_t seed = 20240607;

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome verdict(std::size_t violations, const std::string& detail) {
    return {violations <= tolerance, detail + ", violations=" + std::to_string(violations)};
}

Model load_data(const std::string& name) { return load_model_file(std::string{UEKIT_TEST_DATA} + "/" + name); }

KripkeModel kripke_from_bits(std::size_t n, std::uint64_t rel, std::uint64_t p) {
    std::vector<std::string> states;
    std::vector<StateSet> succ;
    for (std::size_t s = 0; s < n; ++s) {
        states.push_back(std::to_string(s));
        succ.emplace_back(n, (rel >> (s * n)) & ((std::uint64_t{1} << n) - 1));
    }
    return KripkeModel{states, succ, Valuation{{"p", StateSet{n, p}}}};
}

// 1 -----------------------------------------------------------------------

Outcome ultrafilter_enumeration() {
    std::size_t bad = 0;
    std::ostringstream d;
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto ufs = all_ultrafilters(n);
        bad += ufs.size() == n ? 0 : 1;
        for (std::size_t i = 0; i < ufs.size(); ++i) {
            bad += check_ultrafilter(ufs[i].members()).empty() ? 0 : 1;
            bad += ufs[i].members() == Ultrafilter::principal(n, i).members() ? 0 : 1;
        }
        // Independent count: every family of subsets of S, tested by the axioms.
        const std::size_t subsets = std::size_t{1} << n;
        std::size_t found = 0;
        for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
            std::vector<StateSet> members;
            for (std::size_t x = 0; x < subsets; ++x) {
                if (((fam >> x) & 1U) != 0) {
                    members.emplace_back(n, x);
                }
            }
            if (check_ultrafilter(SetFamily{n, members}).empty()) {
                ++found;
            }
        }
        bad += found == n ? 0 : 1;
        d << (n > 1 ? " " : "") << "|S|=" << n << ":" << ufs.size() << "/" << found;
    }
    return verdict(bad, "enumerated/exhaustive " + d.str());
}

// 2 -----------------------------------------------------------------------

Outcome operator_laws() {
    Rng rng{seed + 2};
    std::size_t bad = 0;
    const std::size_t instances = 1000;
    for (std::size_t i = 0; i < instances; ++i) {
        const std::size_t n = 1 + draw(rng, 8);
        const auto k = random_kripke(rng, n, {"p"});
        const auto nb = random_nbhd(rng, n, {"p"});
        const StateSet x = random_set(rng, n);
        const StateSet y = random_set(rng, n);
        const StateSet x2 = random_set(rng, n);
        const auto universe = principal_universe(n);
        const auto h = [&](const StateSet& s) { return hat(s, universe); };

        const std::vector<bool> laws = {
            (m_delta(k, x) & m_delta(k, y)).subset_of(m_delta(k, x & y)),
            (m_nabla(k, x & y) & m_nabla(k, x2 & ~y)).subset_of(m_nabla(k, y)),
            (m_delta(k, x) & m_delta(k, ~x)) == m_delta(k, x),
            m_delta(k, x) == ~m_nabla(k, x),
            m_nabla(k, x) == m_nabla(k, ~x),
            m_c(nb, x) == m_c(nb, ~x),
            h(~x) == ~h(x),
            h(x & y) == (h(x) & h(y)),
            h(x | y) == (h(x) | h(y)),
            h(m_box(k, x)) == m_box(std::get<KripkeModel>(ue_normal(k).structure), h(x)),
            h(m_nabla(k, x)) == m_nabla(std::get<KripkeModel>(ue_contingency_ea(k).structure), h(x)),
            h(m_c(nb, x)) == m_c(std::get<NeighborhoodModel>(ue_contingency_nbhd(nb).structure), h(x)),
            h(m_n(nb, x)) == m_n(std::get<NeighborhoodModel>(ue_classical_nbhd(nb).structure), h(x)),
        };
        for (bool ok : laws) {
            bad += ok ? 0 : 1;
        }
    }
    return verdict(bad, std::to_string(instances) + " instances x 13 laws, |S|<=8");
}

// 3 -----------------------------------------------------------------------

Outcome semantics_coherence() {
    Rng rng{seed + 3};
    std::size_t bad = 0;
    std::size_t formulas = 0;
    const std::vector<std::string> atoms{"p", "q"};
    const std::vector<Op> ops{Op::box, Op::diamond, Op::nabla, Op::delta};
    for (int i = 0; i < 500; ++i) {
        const auto m = random_kripke(rng, 1 + draw(rng, 6), atoms);
        for (int j = 0; j < 4; ++j) {
            const Formula f = random_formula(rng, 2, atoms, ops);
            ++formulas;
            const Formula expanded = Formula::conj(Formula::diamond(f), Formula::diamond(Formula::neg(f)));
            bad += extension(m, Formula::nabla(f)) == extension(m, expanded) ? 0 : 1;
            bad += extension(m, Formula::delta(f)) == extension(m, Formula::neg(Formula::nabla(f))) ? 0 : 1;
        }
    }
    return verdict(bad, "500 Kripke models, " + std::to_string(formulas) + " formulas of depth<=3");
}

// 4 and 5 -----------------------------------------------------------------

struct CorpusEntry {
    UEKind kind;
    Model base;
};

std::vector<CorpusEntry> transfer_corpus() {
    Rng rng{seed + 4};
    std::vector<CorpusEntry> out;
    for (UEKind kind : all_ue_kinds()) {
        const ModelKind mk = applicable(kind, ModelKind::kripke) ? ModelKind::kripke : ModelKind::nbhd;
        for (int i = 0; i < 300; ++i) {
            out.push_back({kind, random_model(rng, mk, 1 + draw(rng, 6), {"p", "q"})});
        }
    }
    return out;
}

// Violations of bounded and unbounded truth transfer for one base.
std::size_t transfer_violations(const Model& m, const UEModel& ue) {
    std::size_t bad = 0;
    for (Lang lang : preserved_languages(ue.kind)) {
        const oracle::Fragment fr = oracle::enumerate_fragment(m, ue.structure, lang, 3);
        for (std::size_t w = 0; w < model_size(m); ++w) {
            bad += fr.agree(w, w) ? 0 : 1;
        }
        bad += canonical_map_check(m, ue, lang).all_equivalent ? 0 : 1;
    }
    return bad;
}

Outcome truth_transfer(const std::vector<CorpusEntry>& corpus) {
    std::size_t bad = 0;
    for (const auto& e : corpus) {
        bad += transfer_violations(e.base, build_ue(e.base, e.kind));
    }
    return verdict(bad, "5 kinds x 300 models, |S|<=6, depth-3 fragment + closure");
}

Outcome finite_collapse(const std::vector<CorpusEntry>& corpus) {
    std::size_t bad = 0;
    std::size_t checked = 0;
    for (const auto& e : corpus) {
        if (e.kind == UEKind::normal || e.kind == UEKind::classical_nbhd) {
            ++checked;
            bad += canonical_map_is_isomorphism(e.base, build_ue(e.base, e.kind)) ? 0 : 1;
        }
    }
    // Named regression: M1 under contingency_ea loses its only edge.
    const Model m1 = load_data("m1.json");
    const UEModel ue = build_ue(m1, UEKind::contingency_ea);
    const bool dropped = std::get<KripkeModel>(ue.structure).relation().empty();
    const bool m1_ok = dropped && transfer_violations(m1, ue) == 0;
    bad += m1_ok ? 0 : 1;
    return verdict(bad, std::to_string(checked) + " isomorphism checks; M1 regression " +
                            (m1_ok ? "ok (rel empty, theory kept)" : "BROKEN"));
}

// 6 -----------------------------------------------------------------------

Outcome equivalence_transfer_pairs() {
    Rng rng{seed + 6};
    std::size_t bad = 0;
    std::size_t instances = 0;
    std::size_t equivalent = 0;
    for (int i = 0; i < 500; ++i) {
        const ModelKind mk = i % 2 == 0 ? ModelKind::kripke : ModelKind::nbhd;
        const Model a = random_model(rng, mk, 1 + draw(rng, 4), {"p"});
        const std::size_t wa = draw(rng, model_size(a));
        Model b = a;
        std::size_t wb = wa;
        if (i % 5 == 0) {
            b = disjoint_union(a, a);
            wb = model_size(a) + wa;
        } else if (i % 5 != 1) {
            b = random_model(rng, mk, 1 + draw(rng, 4), {"p"});
            wb = draw(rng, model_size(b));
        }
        for (UEKind kind : all_ue_kinds()) {
            if (!applicable(kind, mk)) {
                continue;
            }
            for (Lang lang : preserved_languages(kind)) {
                const TransferResult t = equivalence_transfer(a, wa, b, wb, lang, kind);
                ++instances;
                equivalent += t.lhs ? 1 : 0;
                bad += t.lhs == t.rhs ? 0 : 1;
            }
        }
    }
    return verdict(bad, "500 pairs, " + std::to_string(instances) + " (lang, kind) instances, " +
                            std::to_string(equivalent) + " equivalent");
}

// 7 -----------------------------------------------------------------------

struct CrossCheck {
    std::size_t models = 0;
    std::size_t disagreements = 0;
    std::string example;
};

void cross_check_model(CrossCheck& c, const KripkeModel& k, bool full_depth) {
    const Model m = k;
    const std::size_t n = k.size();
    ++c.models;
    for (Lang lang : {Lang::box, Lang::nabla}) {
        const DefinableClosure closure = definable_closure(m, lang);
        const std::size_t depth = full_depth ? n : 2;
        const oracle::Fragment fr = oracle::enumerate_fragment(m, m, lang, depth);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t v = u + 1; v < n; ++v) {
                if (closure.same_class(u, v) != fr.agree_a(u, v)) {
                    if (c.disagreements == 0) {
                        c.example = to_json(m) + " states " + std::to_string(u) + "," + std::to_string(v) + " in " +
                                    to_string(lang);
                    }
                    ++c.disagreements;
                }
            }
        }
    }
}

// All models with |S| <= 3 and one atom, then a seeded sample at |S| = 4.
CrossCheck cross_check(bool full_depth) {
    CrossCheck c;
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << (n * n)); ++rel) {
            for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
                cross_check_model(c, kripke_from_bits(n, rel, p), full_depth);
            }
        }
    }
    Rng rng{seed + 7};
    for (int i = 0; i < 1000; ++i) {
        cross_check_model(c, kripke_from_bits(4, rng() & 0xFFFF, rng() & 0xF), full_depth);
    }
    return c;
}

struct OracleResult {
    Outcome outcome;
    bool companion_clean = false;
};

OracleResult oracle_cross_check() {
    const CrossCheck shallow = cross_check(false);
    const CrossCheck deep = cross_check(true);
    std::string detail = std::to_string(shallow.models) + " models, depth 2: " +
                         std::to_string(shallow.disagreements) + " disagreements";
    if (!shallow.example.empty()) {
        detail += " (first: " + shallow.example + ")";
    }
    detail += "; depth |S|: " + std::to_string(deep.disagreements) + " disagreements";
    return {{shallow.disagreements <= tolerance, detail}, deep.disagreements == 0};
}

// 8 -----------------------------------------------------------------------

Outcome hennessy_milner() {
    Rng rng{seed + 8};
    std::size_t bad = 0;
    std::size_t bisim = 0;
    std::size_t box_only = 0;
    for (int i = 0; i < 500; ++i) {
        const Model a = random_kripke(rng, 1 + draw(rng, 4), {"p"});
        const Model b = i % 4 == 0 ? a : random_kripke(rng, 1 + draw(rng, 4), {"p"});
        const std::size_t wa = draw(rng, model_size(a));
        const std::size_t wb = draw(rng, model_size(b));
        const bool bs = kripke_bisimilar(a, wa, b, wb);
        const bool bx = logically_equivalent(a, wa, b, wb, Lang::box);
        const bool nb = logically_equivalent(a, wa, b, wb, Lang::nabla);
        bisim += bs ? 1 : 0;
        box_only += nb && !bx ? 1 : 0;
        bad += (!bs || bx) ? 0 : 1;
        bad += (!bx || nb) ? 0 : 1;
    }
    const Model refl = load_data("refl.json");
    const Model dead = load_data("dead.json");
    const bool named = logically_equivalent(refl, 0, dead, 0, Lang::nabla) &&
                       !logically_equivalent(refl, 0, dead, 0, Lang::box) && !kripke_bisimilar(refl, 0, dead, 0);
    bad += named ? 0 : 1;
    return verdict(bad, "500 pairs, " + std::to_string(bisim) + " bisimilar, " + std::to_string(box_only) +
                            " nabla-only; reflexive/dead-end pair " + (named ? "ok" : "BROKEN"));
}

// 9 -----------------------------------------------------------------------

std::vector<Formula> depth_two_fragment(Rng& rng, ModelKind kind) {
    const std::vector<std::string> atoms{"p", "q"};
    std::vector<Formula> out{Formula::atom("p"), Formula::atom("q")};
    const auto ops = modalities_for(Lang::nabla, kind);
    while (out.size() < saturation_fragment_cap) {
        Formula f = random_formula(rng, 2, atoms, ops);
        // Keep the fragment at modal depth 2 even when the draw comes out flat.
        if (modal_depth(f) < 2) {
            f = Formula::unary(ops[draw(rng, ops.size())], Formula::unary(ops[draw(rng, ops.size())], f));
            if (modal_depth(f) > 2) {
                continue;
            }
        }
        out.push_back(f);
    }
    return out;
}

Outcome saturation() {
    Rng rng{seed + 9};
    std::size_t bad = 0;
    std::size_t checked = 0;
    for (int i = 0; i < 100; ++i) {
        const auto k = random_kripke(rng, 1 + draw(rng, 6), {"p", "q"});
        const auto r = check_nabla_saturation(std::get<KripkeModel>(ue_contingency_ea(k).structure),
                                              depth_two_fragment(rng, ModelKind::kripke));
        bad += r.violations.size();
        checked += r.checked;
        const auto nb = random_nbhd(rng, 1 + draw(rng, 6), {"p", "q"});
        const auto s = check_delta_saturation(std::get<NeighborhoodModel>(ue_contingency_nbhd(nb).structure),
                                              depth_two_fragment(rng, ModelKind::nbhd));
        bad += s.violations.size();
        checked += s.checked;
    }
    return verdict(bad, "100 bases per kind, fragments of 10 depth-2 formulas, " + std::to_string(checked) +
                            " (target, subset) pairs");
}

// 10 ----------------------------------------------------------------------

Outcome complement_closure() {
    Rng rng{seed + 10};
    std::size_t bad = 0;
    std::size_t rows = 0;
    for (int i = 0; i < 300; ++i) {
        const auto nb = random_nbhd(rng, 1 + draw(rng, 8), {"p"});
        const UEModel ue = ue_contingency_nbhd(nb);
        const auto& s = std::get<NeighborhoodModel>(ue.structure);
        for (std::size_t w = 0; w < s.size(); ++w) {
            ++rows;
            for (const auto& x : s.neighborhood(w).members()) {
                bad += s.neighborhood(w).contains(~x) ? 0 : 1;
            }
        }
    }
    return verdict(bad, "300 neighborhood models, " + std::to_string(rows) + " rows");
}

// 11 ----------------------------------------------------------------------

struct Run {
    std::string out;
    int code = -1;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string{UEKIT_CLI} + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

Outcome round_trip_and_determinism() {
    Rng rng{seed + 11};
    std::size_t bad = 0;
    const std::vector<std::string> atoms{"p", "q", "r1"};
    const std::vector<Op> ops{Op::box, Op::diamond, Op::nabla, Op::delta};
    for (int i = 0; i < 1000; ++i) {
        const Formula f = random_formula(rng, 1 + draw(rng, 4), atoms, ops);
        const std::string text = print_formula(f);
        const Formula g = parse_formula(text);
        bad += g == f ? 0 : 1;
        bad += print_formula(g) == text ? 0 : 1;
    }
    const std::string data = UEKIT_TEST_DATA;
    const std::vector<std::string> commands = {
        "suite --seed 7 --count 200 --max-states 5",
        "ue " + data + "/m0.json contingency_ea",
        "closure " + data + "/m0.json --lang nabla",
        "equiv " + data + "/refl.json x " + data + "/dead.json \"x'\" --lang box",
        "dot " + data + "/m0.json",
    };
    for (const auto& c : commands) {
        const Run first = run_cli(c);
        const Run second = run_cli(c);
        bad += first.code == 0 && !first.out.empty() ? 0 : 1;
        bad += first.out == second.out && first.code == second.code ? 0 : 1;
    }
    return verdict(bad, "1000 formulas; " + std::to_string(commands.size()) + " CLI commands run twice");
}

} // namespace

int main() {
    struct Line {
        int number;
        std::string name;
        Outcome outcome;
        double seconds;
    };
    std::vector<Line> lines;
    const auto timed = [&](int number, const std::string& name, const std::function<Outcome()>& body) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string{"exception: "} + e.what()};
        }
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        lines.push_back({number, name, o, took.count()});
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << number << ". " << name << ": " << o.detail << " ["
                  << took.count() << "s]\n"
                  << std::flush;
    };

    const auto corpus = transfer_corpus();
    bool companion_clean = false;

    timed(1, "ultrafilter enumeration", ultrafilter_enumeration);
    timed(2, "m-operator laws", operator_laws);
    timed(3, "semantics coherence", semantics_coherence);
    timed(4, "truth transfer, five constructions", [&] { return truth_transfer(corpus); });
    timed(5, "finite-model collapse", [&] { return finite_collapse(corpus); });
    timed(6, "equivalence transfer", equivalence_transfer_pairs);
    timed(7, "closure oracle vs depth-2 enumeration", [&] {
        const OracleResult r = oracle_cross_check();
        companion_clean = r.companion_clean;
        return r.outcome;
    });
    timed(8, "Hennessy-Milner direction and strictness", hennessy_milner);
    timed(9, "saturation", saturation);
    timed(10, "complement closure", complement_closure);
    timed(11, "parser round-trip and CLI determinism", round_trip_and_determinism);

    std::size_t failed = 0;
    bool unexpected = false;
    for (const auto& l : lines) {
        if (!l.outcome.pass) {
            ++failed;
            if (!(l.number == 7 && companion_clean)) {
                unexpected = true;
            }
        }
    }
    std::cout << (lines.size() - failed) << "/" << lines.size() << " criteria passed";
    if (failed > 0 && !unexpected) {
        std::cout << " (criterion 7 fails as documented: depth 2 cannot separate some 4-state models;"
                     " at depth |S| the oracles agree)";
    }
    std::cout << '\n';
    return unexpected ? 1 : 0;
}
