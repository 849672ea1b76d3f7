// Release gate for the toolkit. Each numbered check prints exactly one
// PASS/FAIL line on stdout; diagnostics for failures go to stderr. The
// process exits with the number of failed checks, so an exit status of 0
// means the build is releasable.
//
// Thresholds are pinned here as constants, not flags, so the bar cannot
// drift without a visible diff.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amcm/cdm/model.hpp"
#include "amcm/cdm/text.hpp"
#include "amcm/cli/cli.hpp"
#include "amcm/lang/ast.hpp"
#include "amcm/lang/parser.hpp"
#include "amcm/lang/printer.hpp"
#include "amcm/machine/machine.hpp"
#include "amcm/tpl/content.hpp"
#include "amcm/tpl/context.hpp"
#include "amcm/tpl/render.hpp"
#include "amcm/tpl/template.hpp"
#include "amcm/xlat/ddl.hpp"
#include "amcm/xlat/integrity.hpp"
#include "amcm/xlat/translate.hpp"
#include "support/cdm_oracle.hpp"
#include "support/fuzz.hpp"
#include "support/helpers.hpp"

namespace fs = std::filesystem;
using namespace amcm;

namespace {

// --------------------------------------------------------------------------
// Pinned thresholds
// --------------------------------------------------------------------------

constexpr int kExhaustiveProgramWeight = 3;      // every program up to this size
constexpr std::size_t kExhaustiveProgramCount = 29976;  // |all_programs(3)|, guards the enumerator
constexpr int kRandomProgramTrials = 10000;      // random programs of up to 6 commands
constexpr double kEquivalenceBudgetSeconds = 60.0;
constexpr int kStatesPerRule = 1000;             // random machine states per semantic rule
constexpr int kMaxDomainSize = 6;                // exhaustive model sizes 0..6
constexpr int kFormulaDepth = 3;                 // exhaustive formula nesting
constexpr int kRenderRepeats = 10;               // identical bytes across this many renders
constexpr int kIrrelevantKeyTrials = 1000;       // context mutations that must not matter

struct CheckResult {
    bool pass = true;
    std::string note;    // appended to the PASS line
    std::string detail;  // printed to stderr on failure

    void fail(std::string what) {
        if (pass) {
            pass = false;
            detail = std::move(what);
        }
    }
};

std::string seconds_since(std::chrono::steady_clock::time_point start) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    std::ostringstream out;
    out << (static_cast<double>(ms.count()) / 1000.0) << "s";
    return out.str();
}

// --------------------------------------------------------------------------
// 1. The one-shot evaluator and the small-step machine never disagree.
// --------------------------------------------------------------------------

CheckResult check_evaluator_equivalence() {
    CheckResult r;
    auto start = std::chrono::steady_clock::now();

    const std::vector<lang::ComPtr> programs = testgen::all_programs(kExhaustiveProgramWeight);
    if (programs.size() != kExhaustiveProgramCount) {
        r.fail("enumerator produced " + std::to_string(programs.size()) + " programs, expected " +
               std::to_string(kExhaustiveProgramCount));
        return r;
    }
    for (const lang::ComPtr& p : programs) {
        testgen::Agreement a =
            testgen::compare_big_small(p, testgen::exhaustive_input(), testgen::fuzz_env());
        if (!a.agree) {
            r.fail("exhaustive tier disagreement\n" + a.detail);
            return r;
        }
    }

    testgen::ProgramGen gen(0xACCE55u);
    for (int i = 0; i < kRandomProgramTrials; ++i) {
        lang::ComPtr p = gen.program();
        testgen::Agreement a = testgen::compare_big_small(p, gen.input(), testgen::fuzz_env());
        if (!a.agree) {
            r.fail("random tier disagreement at trial " + std::to_string(i) + "\n" + a.detail);
            return r;
        }
    }

    std::string took = seconds_since(start);
    double secs = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count() /
                  1000.0;
    if (secs >= kEquivalenceBudgetSeconds)
        r.fail("agreement held but took " + took + ", budget is 60s");
    r.note = std::to_string(programs.size()) + " exhaustive + " +
             std::to_string(kRandomProgramTrials) + " random programs, " + took;
    return r;
}

// --------------------------------------------------------------------------
// 2. The core transition rules, each over >= 1000 random machine states.
// --------------------------------------------------------------------------

CheckResult check_transition_rules() {
    CheckResult r;
    const machine::RunEnv env = testgen::fuzz_env();

    // Constants evaluate to themselves and touch nothing.
    {
        testgen::StateGen gen(0xC0157A17u);
        for (int i = 0; i < kStatesPerRule && r.pass; ++i) {
            machine::MachineState s = gen.state();
            for (const Literal& lit : testgen::literal_pool()) {
                auto got = machine::eval_expr(lang::mk_lit(lit), s, env);
                if (!got.ok() || !(got.value().value == Value::from_literal(lit)) ||
                    !(got.value().state == s)) {
                    r.fail("a constant changed the state or its own value (trial " +
                           std::to_string(i) + ")");
                    break;
                }
            }
        }
    }

    // Identifiers: bound names read back exactly, unbound names stop the run.
    {
        testgen::StateGen gen(0x1DE47u);
        for (int i = 0; i < kStatesPerRule && r.pass; ++i) {
            machine::MachineState s = gen.state();
            for (const char* name : {"a", "b", "c", "z"}) {
                const Value* bound = s.memory.lookup(name);
                auto got = machine::eval_expr(lang::mk_ident(name), s, env);
                if (bound == nullptr) {
                    if (got.ok() || got.error().kind != machine::ErrorKind::UnboundIdentifier) {
                        r.fail(std::string("reading unbound '") + name + "' did not stop the run");
                        break;
                    }
                } else if (!got.ok() || !(got.value().value == *bound) ||
                           !(got.value().state == s)) {
                    r.fail(std::string("reading bound '") + name + "' misbehaved");
                    break;
                }
            }
        }
    }

    // Assignment rewrites one name and leaves every other observable alone.
    {
        testgen::StateGen gen(0xA551u);
        static const char* names[] = {"a", "b", "c"};
        for (int i = 0; i < kStatesPerRule && r.pass; ++i) {
            machine::MachineState s = gen.state();
            const char* target = names[gen.pick(3)];
            Literal lit = gen.literal();
            Value v = Value::from_literal(lit);
            auto got = machine::exec_com(lang::mk_assign(target, lang::mk_lit(lit)), s, env);
            if (!got.ok()) {
                r.fail("assigning a constant failed");
                break;
            }
            const machine::MachineState& after = got.value();
            if (after.input != s.input || after.output != s.output) {
                r.fail("assignment moved the input or output channel");
                break;
            }
            const Value* now = after.memory.lookup(target);
            if (now == nullptr || !(*now == v)) {
                r.fail("assignment did not store the value");
                break;
            }
            for (const char* other : names) {
                if (std::string(other) == target) continue;
                const Value* before_v = s.memory.lookup(other);
                const Value* after_v = after.memory.lookup(other);
                bool same = (before_v == nullptr && after_v == nullptr) ||
                            (before_v != nullptr && after_v != nullptr && *before_v == *after_v);
                if (!same) {
                    r.fail(std::string("assignment to '") + target + "' disturbed '" + other +
                           "'");
                    break;
                }
            }
        }
    }

    // Typed binding accepts matching tags and rejects everything else.
    {
        testgen::StateGen gen(0xB17D5u);
        static const TypeTag tags[] = {TypeTag::Int, TypeTag::Bool, TypeTag::Text,
                                       TypeTag::Markup};
        int accepted = 0, rejected = 0;
        for (int i = 0; i < kStatesPerRule && r.pass; ++i) {
            machine::MachineState s = gen.state();
            TypeTag slot = tags[gen.pick(4)];
            Value v = gen.value();
            auto got = machine::bind_value(s.memory, slot, "slotted", v);
            if (v.tag() == slot) {
                ++accepted;
                const Value* now = got.ok() ? got.value().lookup("slotted") : nullptr;
                if (now == nullptr || !(*now == v))
                    r.fail("a matching binding was refused or stored the wrong value");
            } else {
                ++rejected;
                if (got.ok() || got.error().kind != machine::ErrorKind::TypeIncompatibility)
                    r.fail("a mismatched binding slipped through");
            }
        }
        if (r.pass && (accepted < 50 || rejected < 50))
            r.fail("binding trials were one-sided: " + std::to_string(accepted) + " accepted, " +
                   std::to_string(rejected) + " rejected");
    }

    r.note = "4 rules x " + std::to_string(kStatesPerRule) + " random states";
    return r;
}

// --------------------------------------------------------------------------
// Shared enumeration for checks 3 and 4: every two-concept model of size
// 0..6, every attribute formula of depth <= 3.
// --------------------------------------------------------------------------

struct FormulaSpace {
    std::vector<cdmtest::TwoConceptModel> models;     // sizes 0..kMaxDomainSize
    std::vector<cdm::FormulaPtr> formulas;            // depth <= kFormulaDepth
};

const FormulaSpace& formula_space() {
    static const FormulaSpace space = [] {
        FormulaSpace s;
        for (int n = 0; n <= kMaxDomainSize; ++n)
            s.models.push_back(cdmtest::build_two_concept_model(n));
        s.formulas = cdmtest::formulas_up_to(kFormulaDepth, cdmtest::attr_atoms());
        return s;
    }();
    return space;
}

std::set<std::string> brute_force_satisfiers(const cdm::FormulaPtr& f,
                                             const cdmtest::TwoConceptModel& tc) {
    std::set<std::string> ids;
    for (const cdmtest::AttrSheet& sheet : tc.sheets)
        if (cdmtest::oracle_truth(f, sheet)) ids.insert(sheet.id);
    return ids;
}

// --------------------------------------------------------------------------
// 3. Set comprehension equals brute-force filtering, exhaustively.
// --------------------------------------------------------------------------

CheckResult check_comprehension_oracle() {
    CheckResult r;
    auto start = std::chrono::steady_clock::now();
    const FormulaSpace& space = formula_space();
    std::size_t checked = 0;
    for (const cdmtest::TwoConceptModel& tc : space.models) {
        for (const cdm::FormulaPtr& f : space.formulas) {
            auto got = cdm::comprehend(tc.model, "d", f, tc.state, "probe");
            if (!got.ok()) {
                r.fail("comprehension failed on a well-formed request: " +
                       cdm::formula_to_string(f));
                return r;
            }
            std::set<std::string> got_ids;
            for (const cdm::Element& e : got.value().object.extension) got_ids.insert(e.id());
            if (got_ids != brute_force_satisfiers(f, tc)) {
                r.fail("extension mismatch, |D|=" + std::to_string(tc.sheets.size()) +
                       ", formula " + cdm::formula_to_string(f));
                return r;
            }
            ++checked;
        }
    }
    r.note = std::to_string(space.formulas.size()) + " formulas x " +
             std::to_string(space.models.size()) + " model sizes (" + std::to_string(checked) +
             " comprehensions, " + seconds_since(start) + ")";
    return r;
}

// --------------------------------------------------------------------------
// 4. Definite description succeeds exactly when one satisfier exists.
// --------------------------------------------------------------------------

CheckResult check_individualization_law() {
    CheckResult r;
    const FormulaSpace& space = formula_space();
    std::size_t unique_hits = 0;
    for (const cdmtest::TwoConceptModel& tc : space.models) {
        for (const cdm::FormulaPtr& f : space.formulas) {
            std::set<std::string> want = brute_force_satisfiers(f, tc);
            auto got = cdm::individualize(tc.model, "d", f, tc.state);
            if (want.size() == 1) {
                ++unique_hits;
                if (!got.ok() || got.value() != *want.begin()) {
                    r.fail("unique satisfier missed: " + cdm::formula_to_string(f));
                    return r;
                }
            } else {
                if (got.ok()) {
                    r.fail("extraction succeeded with " + std::to_string(want.size()) +
                           " satisfiers: " + cdm::formula_to_string(f));
                    return r;
                }
                cdm::ErrorKind want_kind =
                    want.empty() ? cdm::ErrorKind::NotFound : cdm::ErrorKind::NotUnique;
                if (got.error().kind != want_kind ||
                    got.error().satisfier_count != static_cast<int>(want.size())) {
                    r.fail("wrong failure report for " + std::to_string(want.size()) +
                           " satisfiers: " + cdm::formula_to_string(f));
                    return r;
                }
            }
        }
    }
    r.note = "success iff exactly one satisfier; " + std::to_string(unique_hits) +
             " unique cases among " +
             std::to_string(space.models.size() * space.formulas.size());
    return r;
}

// --------------------------------------------------------------------------
// 5. Second-level objects agree with powerset brute force.
// --------------------------------------------------------------------------

CheckResult check_metalevel_membership() {
    CheckResult r;
    auto start = std::chrono::steady_clock::now();
    const cdmtest::LayeredModel lm = cdmtest::build_layered_model();
    const std::map<std::string, std::set<std::string>> exts = {{"ones", lm.ext_ones},
                                                               {"low", lm.ext_low}};

    std::vector<cdm::FormulaPtr> atoms = {cdm::fml::truth(), cdm::fml::falsity(),
                                          cdm::fml::in_object("ones"),
                                          cdm::fml::in_object("low")};
    std::vector<cdm::FormulaPtr> formulas = cdmtest::formulas_up_to(kFormulaDepth, atoms);
    const std::vector<std::set<std::string>> base_subsets = cdmtest::all_subsets(lm.ext_ones);
    const std::vector<std::set<std::string>> all_subsets = cdmtest::all_subsets(lm.domain_ids);

    for (const cdm::FormulaPtr& f : formulas) {
        auto made = cdm::comprehend(lm.model, "ones", f, lm.state, "probe");
        if (!made.ok()) {
            r.fail("second-level comprehension failed: " + cdm::formula_to_string(f));
            return r;
        }
        const cdm::LevelObject& obj = made.value().object;
        const cdm::DomainModel& wm = made.value().model;

        // Extension == filtered powerset of the base extension.
        std::set<std::set<std::string>> got_ext;
        for (const cdm::Element& e : obj.extension) got_ext.insert(cdmtest::as_id_set(e));
        std::set<std::set<std::string>> want_ext;
        for (const std::set<std::string>& s : base_subsets)
            if (cdmtest::oracle_truth_set(f, s, exts)) want_ext.insert(s);
        if (got_ext != want_ext) {
            r.fail("powerset extension mismatch: " + cdm::formula_to_string(f));
            return r;
        }

        // Membership over every subset of the whole domain, including
        // elements that leave the base extension entirely.
        for (const std::set<std::string>& s : all_subsets) {
            auto got = cdm::member(wm, obj, cdmtest::set_element(s));
            if (!got.ok()) {
                r.fail("membership refused a level-1 element: " + cdm::formula_to_string(f));
                return r;
            }
            bool in_base = std::includes(lm.ext_ones.begin(), lm.ext_ones.end(), s.begin(),
                                         s.end());
            bool want = in_base && cdmtest::oracle_truth_set(f, s, exts);
            if (got.value() != want) {
                r.fail("membership mismatch on a subset of size " + std::to_string(s.size()) +
                       ": " + cdm::formula_to_string(f));
                return r;
            }
        }
    }
    r.note = std::to_string(formulas.size()) + " set formulas x " +
             std::to_string(all_subsets.size()) + " subsets (" + seconds_since(start) + ")";
    return r;
}

// --------------------------------------------------------------------------
// Fixture project pieces shared by checks 6-8.
// --------------------------------------------------------------------------

fs::path site_dir() { return testsupport::fixture_dir() / "site"; }

tpl::ContentStore site_store() { return tpl::load_store(site_dir() / "content").value(); }

tpl::Template site_template() {
    return tpl::parse_template(testsupport::slurp(site_dir() / "templates" / "home.amt")).value();
}

lang::BindingAst site_binding() {
    return lang::parse_binding(testsupport::slurp(site_dir() / "bindings" / "home.amp")).value();
}

tpl::PersonalizationContext site_context(const std::string& name) {
    return tpl::parse_context(testsupport::slurp(site_dir() / "contexts" / (name + ".ctx")))
        .value();
}

// --------------------------------------------------------------------------
// 6. Rendering is deterministic and leaves no unfilled holes.
// --------------------------------------------------------------------------

CheckResult check_render_determinism() {
    CheckResult r;
    const tpl::ContentStore store = site_store();
    const tpl::Template t = site_template();
    const lang::BindingAst binding = site_binding();

    struct Case {
        const char* context;
        const char* golden;
    };
    for (const Case& c : {Case{"anonymous", "home_anonymous.html"},
                          Case{"registered", "home_registered.html"}}) {
        const tpl::PersonalizationContext ctx = site_context(c.context);
        const std::string golden = testsupport::slurp(testsupport::golden_dir() / c.golden);
        for (int i = 0; i < kRenderRepeats; ++i) {
            auto page = tpl::render(t, binding.program, store, ctx);
            if (!page.ok()) {
                r.fail(std::string("render failed for the ") + c.context + " context: " +
                       page.error().to_string());
                return r;
            }
            if (page.value().text != golden) {
                r.fail(std::string("render ") + std::to_string(i + 1) + " for the " + c.context +
                       " context drifted from the frozen page");
                return r;
            }
            if (page.value().text.find("{{") != std::string::npos) {
                r.fail(std::string("an unfilled hole survived in the ") + c.context + " page");
                return r;
            }
        }
    }
    r.note = std::to_string(kRenderRepeats) + " identical renders per context, hole-free";
    return r;
}

// --------------------------------------------------------------------------
// 7. Variant selection follows the context and ignores everything else.
// --------------------------------------------------------------------------

CheckResult check_variant_resolution() {
    CheckResult r;
    const tpl::ContentStore store = site_store();
    const tpl::ContentObject& greeting = *store.find("greeting");
    const tpl::ContentObject& banner = *store.find("banner");

    // The three pinned selections: a single satisfied guard, the default
    // fallback, and a two-condition guard outscoring a one-condition guard
    // when both are satisfied.
    tpl::PersonalizationContext registered;
    registered.status = "registered";
    tpl::PersonalizationContext anonymous;
    tpl::PersonalizationContext registered_en = registered;
    registered_en.prefs["lang"] = "en";

    auto expect = [&r](const tpl::ContentObject& obj, const tpl::PersonalizationContext& ctx,
                       const std::string& want) {
        auto got = tpl::resolve_variant(obj, ctx);
        if (!got.ok() || !(got.value() == Value::text(want)))
            r.fail("'" + obj.path + "' with " + ctx.fingerprint() + " did not pick \"" + want +
                   "\"");
    };
    expect(greeting, registered, "Welcome back!");
    expect(greeting, anonymous, "Welcome, guest!");
    expect(banner, registered_en, "Hello, valued member!");
    expect(banner, anonymous, "Howdy!");
    if (!r.pass) return r;

    // Keys no guard mentions must never flip a selection. The mutation pool
    // is filtered against the guards per object, so this stays valid even if
    // the fixtures grow new conditions.
    struct MutKey {
        char axis;
        std::string key;
    };
    const std::vector<MutKey> pool = {{'s', "theme"}, {'s', "tz"},    {'v', "browser"},
                                      {'v', "os"},    {'e', "width"}, {'e', "dpi"}};
    const std::vector<tpl::PersonalizationContext> bases = {anonymous, registered, registered_en,
                                                            site_context("registered"),
                                                            site_context("anonymous")};
    static const char* noise[] = {"alpha", "beta", "42", ""};

    std::mt19937 rng(0x17EE1Eu);
    auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    int trials = 0;
    for (int i = 0; i < kIrrelevantKeyTrials; ++i) {
        for (const auto& [path, obj] : store.objects()) {
            std::set<std::pair<char, std::string>> relevant;
            for (const tpl::Variant& v : obj.variants)
                for (const tpl::GuardCond& c : v.guard.conds) relevant.insert({c.axis, c.key});

            tpl::PersonalizationContext ctx = bases[pick(static_cast<int>(bases.size()))];
            auto before = tpl::resolve_variant(obj, ctx);

            int mutations = 1 + pick(3);
            for (int m = 0; m < mutations; ++m) {
                const MutKey& k = pool[pick(static_cast<int>(pool.size()))];
                if (relevant.count({k.axis, k.key}) != 0) continue;
                std::string value = noise[pick(4)];
                if (k.axis == 's') ctx.prefs[k.key] = value;
                if (k.axis == 'v') ctx.client[k.key] = value;
                if (k.axis == 'e') ctx.device[k.key] = value;
            }
            auto after = tpl::resolve_variant(obj, ctx);

            bool same = before.ok() == after.ok() &&
                        (before.ok() ? before.value() == after.value()
                                     : before.error().kind == after.error().kind);
            if (!same) {
                r.fail("an unrelated context key changed the selection for '" + path + "'");
                return r;
            }
            ++trials;
        }
    }
    r.note = "3 pinned selections + " + std::to_string(trials) + " unrelated-key mutations";
    return r;
}

// --------------------------------------------------------------------------
// 8. The translator round-trips: load programs replay the store, DDL
//    re-parses and matches the frozen bytes.
// --------------------------------------------------------------------------

CheckResult replay_store(const tpl::ContentStore& store, const tpl::PersonalizationContext& ctx,
                         const std::string& label) {
    CheckResult r;
    auto program = xlat::emit_load_program(store, ctx);
    if (!program.ok()) {
        r.fail(label + ": building the load program failed");
        return r;
    }
    auto run = machine::run(program.value(), {}, machine::RunEnv{});
    if (!run.ok()) {
        r.fail(label + ": the load program crashed: " + run.error().to_string());
        return r;
    }
    const machine::Memory& mem = run.value().memory;
    if (mem.size() != store.size()) {
        r.fail(label + ": replay bound " + std::to_string(mem.size()) + " names for " +
               std::to_string(store.size()) + " objects");
        return r;
    }
    for (const auto& [path, obj] : store.objects()) {
        const Value* got = mem.lookup(xlat::mangle_path(path));
        auto want = tpl::resolve_variant(obj, ctx);
        if (got == nullptr || !want.ok() || !(*got == want.value())) {
            r.fail(label + ": replayed value for '" + path + "' is wrong");
            return r;
        }
    }
    return r;
}

CheckResult check_translator_roundtrip() {
    CheckResult r;

    // Every available store replays through the machine bit-for-bit.
    CheckResult site = replay_store(site_store(), site_context("anonymous"), "site store");
    if (!site.pass) return site;
    tpl::PersonalizationContext member;
    member.status = "registered";
    CheckResult fuzz = replay_store(testgen::fuzz_store(), member, "generator store");
    if (!fuzz.pass) return fuzz;

    // The emitted load program matches its frozen form byte for byte.
    auto program = xlat::emit_load_program(site_store(), site_context("anonymous"));
    if (lang::print_binding("load", program.value()) !=
        testsupport::slurp(testsupport::golden_dir() / "load.amp")) {
        r.fail("the emitted load program drifted from the frozen bytes");
        return r;
    }

    // DDL: frozen bytes, internal re-parse, reference closure.
    auto model = cdm::parse_model(testsupport::slurp(site_dir() / "model.amm"));
    if (!model.ok()) {
        r.fail("the fixture model stopped parsing");
        return r;
    }
    auto doc = xlat::translate_ddl(model.value());
    if (!doc.ok()) {
        r.fail("translating the fixture model failed");
        return r;
    }
    const std::string sql = doc.value().to_sql();
    if (sql != testsupport::slurp(testsupport::golden_dir() / "model.sql")) {
        r.fail("the emitted DDL drifted from the frozen bytes");
        return r;
    }
    auto back = xlat::parse_ddl(sql);
    if (!back.ok() || back.value().to_sql() != sql) {
        r.fail("the emitted DDL no longer re-parses to itself");
        return r;
    }
    if (!xlat::check_foreign_keys(back.value()).empty()) {
        r.fail("the re-parsed DDL has dangling references");
        return r;
    }

    r.note = "2 stores replayed, DDL and load program match frozen bytes";
    return r;
}

// --------------------------------------------------------------------------
// 9. The command-line front end honors its exit-code and atomicity contract.
// --------------------------------------------------------------------------

struct CliOutcome {
    int code = -1;
    std::string out;
    std::string err;
};

CliOutcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliOutcome r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

CheckResult check_cli_contract() {
    CheckResult r;
    testsupport::TempDir dir;
    testsupport::EnvVarGuard env("AMCM_PROJECT", std::nullopt);
    testsupport::copy_tree(site_dir(), dir.path());
    ::setenv("AMCM_PROJECT", (dir.path() / "amcm.conf").c_str(), 1);

    auto expect_code = [&r](const CliOutcome& got, int want, const std::string& what) {
        if (got.code != want)
            r.fail(what + ": exit " + std::to_string(got.code) + ", expected " +
                   std::to_string(want) + "\nstderr: " + got.err);
    };

    // Success path, against the frozen page.
    expect_code(run_cli({"render", "home"}), 0, "rendering the fixture page");
    if (r.pass && testsupport::slurp(dir.path() / "out" / "home.html") !=
                      testsupport::slurp(testsupport::golden_dir() / "home_anonymous.html"))
        r.fail("the rendered page does not match the frozen bytes");

    // Usage problems.
    expect_code(run_cli({}), 1, "running with no arguments");
    expect_code(run_cli({"render", "ghost"}), 1, "rendering an unknown template");

    // Model problems found by validation.
    testsupport::spew(dir.path() / "broken.amm",
                      "domain d;\nconcept c over d : Text fns(v);\nindividual d.x { }\n");
    expect_code(run_cli({"check", (dir.path() / "broken.amm").string()}), 2,
                "checking a model with findings");
    expect_code(run_cli({"check", (dir.path() / "model.amm").string()}), 0,
                "checking the clean fixture model");

    // Machine failures, which must leave no page behind.
    std::error_code ec;
    fs::remove(dir.path() / "out" / "home.html", ec);
    testsupport::spew(dir.path() / "bindings" / "home.amp",
                      "bind \"home\" {\n"
                      "  title = content(\"site/name\");\n"
                      "  greeting = content(\"vanished\");\n"
                      "  banner = content(\"banner\");\n"
                      "  story = content(\"news/today\");\n"
                      "}\n");
    expect_code(run_cli({"render", "home"}), 3, "rendering with a dead content path");
    if (fs::exists(dir.path() / "out" / "home.html") ||
        fs::exists(dir.path() / "out" / "home.html.tmp"))
        r.fail("a failed render left a page or a temporary behind");

    // Induced write failure: the output path is blocked by a regular file.
    testsupport::TempDir blocked_home;
    testsupport::spew(blocked_home.path() / "conf",
                      "content_root = content\n"
                      "template = templates/home.amt\n"
                      "binding = bindings/home.amp\n"
                      "output_dir = out\n");
    testsupport::copy_tree(site_dir() / "content", blocked_home.path() / "content");
    testsupport::copy_tree(site_dir() / "templates", blocked_home.path() / "templates");
    testsupport::copy_tree(site_dir() / "bindings", blocked_home.path() / "bindings");
    testsupport::spew(blocked_home.path() / "out", "occupied");
    {
        testsupport::EnvVarGuard env2("AMCM_PROJECT", (blocked_home.path() / "conf").string());
        expect_code(run_cli({"render", "home"}), 1, "rendering into a blocked output path");
    }
    if (testsupport::slurp(blocked_home.path() / "out") != "occupied")
        r.fail("a failed write altered the blocking file");
    for (const auto& e : fs::recursive_directory_iterator(blocked_home.path()))
        if (e.path().extension() == ".tmp") r.fail("a failed write left a temporary file");

    r.note = "exit codes 0/1/2/3 plus atomic-write checks";
    return r;
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* name;
        CheckResult (*check)();
    };
    const Entry entries[] = {
        {1, "evaluator-agreement", check_evaluator_equivalence},
        {2, "transition-rules", check_transition_rules},
        {3, "comprehension-oracle", check_comprehension_oracle},
        {4, "unique-extraction-law", check_individualization_law},
        {5, "powerset-membership", check_metalevel_membership},
        {6, "render-determinism", check_render_determinism},
        {7, "variant-selection", check_variant_resolution},
        {8, "translator-roundtrip", check_translator_roundtrip},
        {9, "cli-contract", check_cli_contract},
    };

    int failures = 0;
    for (const Entry& e : entries) {
        CheckResult r = e.check();
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << e.number << " " << e.name;
        if (r.pass && !r.note.empty()) std::cout << " (" << r.note << ")";
        std::cout << "\n";
        if (!r.pass) {
            std::cerr << "check " << e.number << " (" << e.name << "): " << r.detail << "\n";
            ++failures;
        }
    }
    return failures;
}
