// uekit: command-line front end for the ultrafilter-extension toolkit.
//
// Exit codes: 0 ok, 1 parse or load error, 2 semantic error, 3 property failure.

#include "uekit/equivalence.hpp"
#include "uekit/error.hpp"
#include "uekit/formula.hpp"
#include "uekit/models.hpp"
#include "uekit/semantics.hpp"
#include "uekit/suite.hpp"
#include "uekit/ue.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace uekit;
using ordered_json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_parse = 1;
constexpr int exit_semantic = 2;
constexpr int exit_property = 3;

// Load failures exit 1 whatever their ModelErrorKind.
struct LoadFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Model load(const std::string& path) {
    try {
        return load_model_file(path);
    } catch (const ModelError& e) {
        throw LoadFailure{path + ": " + e.what()};
    }
}

std::string state_list(const Model& m, const StateSet& x) {
    std::string out;
    for (std::size_t i : x.indices()) {
        out += (out.empty() ? "" : " ") + state_names(m)[i];
    }
    return out;
}

Lang lang_or_throw(const std::string& text) {
    if (auto lang = parse_lang(text)) {
        return *lang;
    }
    throw SemanticError{"unknown language '" + text + "' (expected box or nabla)"};
}

UEKind kind_or_throw(const std::string& text) {
    if (auto kind = parse_ue_kind(text)) {
        return *kind;
    }
    throw SemanticError{"unknown ultrafilter extension kind '" + text + "'"};
}

struct Options {
    bool json = false;
    std::string model;
    std::string formula;
    std::optional<std::string> at;
    std::string kind;
    std::string mode = "shortcut";
    std::string file1, state1, file2, state2;
    std::string lang = "box";
    std::optional<std::string> via_ue;
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::size_t max_states = 5;
    bool delta_mutant = false;
};

int cmd_eval(const Options& o) {
    const Model m = load(o.model);
    const Formula f = parse_formula(o.formula);
    if (o.at) {
        const bool v = satisfies(m, std::string_view{*o.at}, f);
        std::cout << (o.json ? ordered_json{{"state", *o.at}, {"value", v}}.dump() : (v ? "true" : "false")) << '\n';
        return exit_ok;
    }
    const StateSet ext = extension(m, f);
    if (o.json) {
        ordered_json names = ordered_json::array();
        for (std::size_t i : ext.indices()) {
            names.push_back(state_names(m)[i]);
        }
        std::cout << ordered_json{{"formula", print_formula(f)}, {"extension", names}}.dump() << '\n';
    } else {
        std::cout << state_list(m, ext) << '\n';
    }
    return exit_ok;
}

int cmd_ue(const Options& o) {
    const Model m = load(o.model);
    const UEKind kind = kind_or_throw(o.kind);
    QuantifierMode mode = QuantifierMode::principal_shortcut;
    if (o.mode == "literal") {
        mode = QuantifierMode::literal;
    } else if (o.mode != "shortcut") {
        throw SemanticError{"unknown mode '" + o.mode + "' (expected literal or shortcut)"};
    }
    std::cout << to_json(build_ue(m, kind, mode)) << '\n';
    return exit_ok;
}

int cmd_equiv(const Options& o) {
    const Lang lang = lang_or_throw(o.lang);
    Model m1 = load(o.file1);
    Model m2 = load(o.file2);
    const std::size_t w1 = require_state(m1, o.state1);
    const std::size_t w2 = require_state(m2, o.state2);
    if (o.via_ue) {
        const UEKind kind = kind_or_throw(*o.via_ue);
        m1 = build_ue(m1, kind).structure;
        m2 = build_ue(m2, kind).structure;
    }
    const auto sep = distinguishing_formula(m1, w1, m2, w2, lang);
    if (o.json) {
        ordered_json j{{"equivalent", !sep.has_value()}};
        if (sep) {
            j["witness"] = print_formula(*sep);
        }
        std::cout << j.dump() << '\n';
    } else {
        std::cout << (sep ? "distinguished by " + print_formula(*sep) : std::string{"equivalent"}) << '\n';
    }
    return exit_ok;
}

int cmd_bisim(const Options& o) {
    const Model m1 = load(o.file1);
    const Model m2 = load(o.file2);
    const bool b = kripke_bisimilar(m1, require_state(m1, o.state1), m2, require_state(m2, o.state2));
    if (o.json) {
        std::cout << ordered_json{{"bisimilar", b}}.dump() << '\n';
    } else {
        std::cout << (b ? "bisimilar" : "not bisimilar") << '\n';
    }
    return exit_ok;
}

int cmd_closure(const Options& o) {
    const Model m = load(o.model);
    std::cout << definable_closure(m, lang_or_throw(o.lang)).to_json() << '\n';
    return exit_ok;
}

int cmd_suite(const Options& o) {
    const SuiteResult r = run_suite({o.seed, o.count, o.max_states, o.delta_mutant});
    std::cout << r.json << '\n';
    if (!r.passed) {
        std::cerr << "suite: property failure\n";
        return exit_property;
    }
    return exit_ok;
}

int cmd_dot(const Options& o) {
    std::cout << to_dot(load(o.model));
    return exit_ok;
}

int cmd_validate(const Options& o) {
    const Model m = load(o.model);
    if (o.json) {
        std::cout << ordered_json{{"valid", true}, {"kind", to_string(kind_of(m))}, {"states", model_size(m)}}.dump()
                  << '\n';
    } else {
        std::cout << "valid " << to_string(kind_of(m)) << " model with " << model_size(m) << " states\n";
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ultrafilter extensions of finite Kripke and neighborhood models"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");

    auto* eval = app.add_subcommand("eval", "Truth set of a formula, or its value at one state");
    eval->add_option("model", o.model)->required();
    eval->add_option("formula", o.formula)->required();
    eval->add_option("--at", o.at, "Evaluate at this state only");
    eval->add_flag("--json", o.json);

    auto* ue = app.add_subcommand("ue", "Build an ultrafilter extension");
    ue->add_option("model", o.model)->required();
    ue->add_option("kind", o.kind, "normal | classical_nbhd | contingency_ea | contingency_a | contingency_nbhd")
        ->required();
    ue->add_option("--mode", o.mode, "literal | shortcut");

    auto* equiv = app.add_subcommand("equiv", "Logical equivalence of two pointed models");
    equiv->add_option("file1", o.file1)->required();
    equiv->add_option("state1", o.state1)->required();
    equiv->add_option("file2", o.file2)->required();
    equiv->add_option("state2", o.state2)->required();
    equiv->add_option("--lang", o.lang, "box | nabla");
    equiv->add_option("--via-ue", o.via_ue, "Compare the ultrafilter extensions of this kind instead");
    equiv->add_flag("--json", o.json);

    auto* bisim = app.add_subcommand("bisim", "Kripke bisimilarity of two pointed models");
    bisim->add_option("file1", o.file1)->required();
    bisim->add_option("state1", o.state1)->required();
    bisim->add_option("file2", o.file2)->required();
    bisim->add_option("state2", o.state2)->required();
    bisim->add_flag("--json", o.json);

    auto* closure = app.add_subcommand("closure", "Definable sets of a model as JSON");
    closure->add_option("model", o.model)->required();
    closure->add_option("--lang", o.lang, "box | nabla");

    auto* suite = app.add_subcommand("suite", "Run the law battery on seeded random models");
    suite->add_option("--seed", o.seed);
    suite->add_option("--count", o.count);
    suite->add_option("--max-states", o.max_states);
    suite->add_flag("--delta-mutant", o.delta_mutant)->group("");

    auto* dot = app.add_subcommand("dot", "Graphviz rendering of a model");
    dot->add_option("model", o.model)->required();

    auto* validate = app.add_subcommand("validate", "Check a model file");
    validate->add_option("model", o.model)->required();
    validate->add_flag("--json", o.json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_parse;
    }

    try {
        if (*eval) return cmd_eval(o);
        if (*ue) return cmd_ue(o);
        if (*equiv) return cmd_equiv(o);
        if (*bisim) return cmd_bisim(o);
        if (*closure) return cmd_closure(o);
        if (*suite) return cmd_suite(o);
        if (*dot) return cmd_dot(o);
        if (*validate) return cmd_validate(o);
    } catch (const LoadFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_parse;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_parse;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_semantic;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_semantic;
    }
    return exit_ok;
}
