#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "amcm/cli/cli.hpp"
#include "support/helpers.hpp"

using namespace amcm;
namespace fs = std::filesystem;

namespace {

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

// A disposable copy of the site fixture with AMCM_PROJECT pointed at it.
struct SiteCopy {
    testsupport::TempDir dir;
    testsupport::EnvVarGuard env;

    SiteCopy()
        : env("AMCM_PROJECT", std::nullopt) {
        testsupport::copy_tree(testsupport::fixture_dir() / "site", dir.path());
        ::setenv("AMCM_PROJECT", (dir.path() / "amcm.conf").c_str(), 1);
    }

    fs::path path(const std::string& rel) const { return dir.path() / rel; }
    std::string spath(const std::string& rel) const { return (dir.path() / rel).string(); }
};

}  // namespace

TEST_CASE("load_config resolves relative paths against the config directory") {
    testsupport::TempDir dir;
    testsupport::spew(dir.path() / "content" / ".keep", "");
    testsupport::spew(dir.path() / "a.amt", "template \"a\" { skeleton <<<x>>> }");
    testsupport::spew(dir.path() / "b.amt", "template \"b\" { skeleton <<<y>>> }");
    testsupport::spew(dir.path() / "p.amp", "bind \"a\" { x = 1; }");
    testsupport::spew(dir.path() / "conf",
                      "# demo\n"
                      "content_root = content\n"
                      "template = a.amt\n"
                      "template = b.amt\n"
                      "binding = p.amp\n"
                      "output_dir = www\n");

    auto cfg = cli::load_config(dir.path() / "conf");
    REQUIRE(cfg.ok());
    CHECK(cfg.value().base_dir == dir.path());
    CHECK(cfg.value().content_root == dir.path() / "content");
    CHECK(cfg.value().templates ==
          std::vector<fs::path>{dir.path() / "a.amt", dir.path() / "b.amt"});
    CHECK(cfg.value().bindings == std::vector<fs::path>{dir.path() / "p.amp"});
    CHECK(!cfg.value().default_context.has_value());
    CHECK(cfg.value().output_dir == dir.path() / "www");
}

TEST_CASE("output_dir defaults to out/ beside the config") {
    testsupport::TempDir dir;
    testsupport::spew(dir.path() / "conf", "\n");
    auto cfg = cli::load_config(dir.path() / "conf");
    REQUIRE(cfg.ok());
    CHECK(cfg.value().output_dir == dir.path() / "out");
    CHECK(!cfg.value().has_content_root());
}

TEST_CASE("load_config rejects unreadable or inconsistent files") {
    testsupport::TempDir dir;
    CHECK(!cli::load_config(dir.path() / "nope.conf").ok());

    testsupport::spew(dir.path() / "bad1", "what is this\n");
    auto bad1 = cli::load_config(dir.path() / "bad1");
    REQUIRE(!bad1.ok());
    CHECK(bad1.error().find(":1:") != std::string::npos);

    testsupport::spew(dir.path() / "bad2", "colour = blue\n");
    auto bad2 = cli::load_config(dir.path() / "bad2");
    REQUIRE(!bad2.ok());
    CHECK(bad2.error().find("colour") != std::string::npos);

    // Referenced inputs must exist when the config loads.
    testsupport::spew(dir.path() / "bad3", "template = missing.amt\n");
    auto bad3 = cli::load_config(dir.path() / "bad3");
    REQUIRE(!bad3.ok());
    CHECK(bad3.error().find("missing.amt") != std::string::npos);
}

TEST_CASE("write_atomic creates directories and replaces whole files") {
    testsupport::TempDir dir;
    fs::path target = dir.path() / "deep" / "nest" / "page.html";
    REQUIRE(cli::write_atomic(target, "first").ok());
    CHECK(testsupport::slurp(target) == "first");

    REQUIRE(cli::write_atomic(target, "second").ok());
    CHECK(testsupport::slurp(target) == "second");
    CHECK(!fs::exists(target.string() + ".tmp"));
}

TEST_CASE("a failed write leaves no debris behind") {
    testsupport::TempDir dir;
    // Occupy a path component with a regular file so directory creation fails.
    testsupport::spew(dir.path() / "blocked", "i am a file");
    auto r = cli::write_atomic(dir.path() / "blocked" / "page.html", "never lands");
    REQUIRE(!r.ok());

    CHECK(testsupport::slurp(dir.path() / "blocked") == "i am a file");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++entries;
    CHECK(entries == 1);  // nothing else appeared, no .tmp anywhere
}

TEST_CASE("usage problems exit 1 and help exits 0") {
    testsupport::EnvVarGuard env("AMCM_PROJECT", std::nullopt);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"conjure"}).code == 1);
    CHECK(run_cli({"check"}).code == 1);     // missing required model argument
    CHECK(run_cli({"render"}).code == 1);    // missing required template argument
    CHECK(run_cli({"translate"}).code == 1);

    auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("render") != std::string::npos);
}

TEST_CASE("check prints findings and exits by severity") {
    SiteCopy site;

    auto clean = run_cli({"check", site.spath("model.amm")});
    CHECK(clean.code == 0);
    CHECK(clean.out == "0 errors, 0 warnings\n");

    testsupport::spew(site.path("broken.amm"),
                      "domain d;\n"
                      "concept c over d : Text fns(v);\n"
                      "individual d.x { }\n"
                      "state s d = { x };\n");
    auto dirty = run_cli({"check", site.spath("broken.amm")});
    CHECK(dirty.code == 2);
    CHECK(dirty.out.find("error missing-attr d.x") != std::string::npos);
    CHECK(dirty.out.find("1 errors, 0 warnings") != std::string::npos);

    testsupport::spew(site.path("garbled.amm"), "domain\n");
    auto garbled = run_cli({"check", site.spath("garbled.amm")});
    CHECK(garbled.code == 1);
    CHECK(garbled.err.find("garbled.amm") != std::string::npos);

    CHECK(run_cli({"check", site.spath("never-written.amm")}).code == 1);
}

TEST_CASE("render writes the page for the configured default context") {
    SiteCopy site;
    auto r = run_cli({"render", "home"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("home.html") != std::string::npos);
    CHECK(testsupport::slurp(site.path("out/home.html")) ==
          testsupport::slurp(testsupport::golden_dir() / "home_anonymous.html"));
}

TEST_CASE("render honors an explicit context over the default") {
    SiteCopy site;
    auto r = run_cli({"render", "home", "--context", site.spath("contexts/registered.ctx")});
    REQUIRE(r.code == 0);
    CHECK(testsupport::slurp(site.path("out/home.html")) ==
          testsupport::slurp(testsupport::golden_dir() / "home_registered.html"));
}

TEST_CASE("render --trace also writes the step log") {
    SiteCopy site;
    auto r = run_cli({"render", "home", "--trace"});
    REQUIRE(r.code == 0);
    std::string trace = testsupport::slurp(site.path("out/home.trace"));
    CHECK(trace.substr(0, trace.find('\n')) == "1 | seq | mem={} in=0 out=0");
    // Step numbers count up from 1, one line per step.
    std::istringstream lines(trace);
    std::string line;
    int expect = 1;
    while (std::getline(lines, line)) {
        CHECK(line.rfind(std::to_string(expect) + " | ", 0) == 0);
        ++expect;
    }
    CHECK(expect > 20);  // the home binding takes a few dozen steps
}

TEST_CASE("repeated renders are byte-identical") {
    SiteCopy site;
    REQUIRE(run_cli({"render", "home"}).code == 0);
    std::string first = testsupport::slurp(site.path("out/home.html"));
    REQUIRE(run_cli({"render", "home"}).code == 0);
    CHECK(testsupport::slurp(site.path("out/home.html")) == first);
}

TEST_CASE("render without a project or template fails with a clear message") {
    testsupport::EnvVarGuard env("AMCM_PROJECT", std::nullopt);
    testsupport::TempDir bare;
    testsupport::CwdGuard cwd(bare.path());  // no amcm.conf anywhere in sight

    auto r = run_cli({"render", "home"});
    CHECK(r.code == 1);
    CHECK(r.err.find("project config") != std::string::npos);

    SiteCopy site;
    auto missing = run_cli({"render", "ghost"});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("ghost") != std::string::npos);
}

TEST_CASE("pointing AMCM_PROJECT at a missing config is an error, not a fallback") {
    testsupport::EnvVarGuard env("AMCM_PROJECT", "/definitely/not/here.conf");
    auto r = run_cli({"render", "home"});
    CHECK(r.code == 1);
    CHECK(r.err.find("here.conf") != std::string::npos);
}

TEST_CASE("two bindings claiming one template is ambiguous") {
    SiteCopy site;
    std::string second = testsupport::slurp(site.path("bindings/home.amp"));
    testsupport::spew(site.path("bindings/home2.amp"), second);
    testsupport::spew(site.path("amcm.conf"),
                      testsupport::slurp(site.path("amcm.conf")) +
                          "binding = bindings/home2.amp\n");
    auto r = run_cli({"render", "home"});
    CHECK(r.code == 1);
    CHECK(r.err.find("two bindings") != std::string::npos);
}

TEST_CASE("a machine failure during render exits 3 and writes nothing") {
    SiteCopy site;
    testsupport::spew(site.path("bindings/home.amp"),
                      "bind \"home\" {\n"
                      "  title = content(\"site/name\");\n"
                      "  greeting = content(\"vanished\");\n"
                      "  banner = content(\"banner\");\n"
                      "  story = content(\"news/today\");\n"
                      "}\n");
    auto r = run_cli({"render", "home"});
    CHECK(r.code == 3);
    CHECK(r.err.find("machine error") != std::string::npos);
    CHECK(r.err.find("vanished") != std::string::npos);
    CHECK(!fs::exists(site.path("out/home.html")));
    CHECK(!fs::exists(site.path("out/home.html.tmp")));
}

TEST_CASE("an occupied output directory fails cleanly") {
    SiteCopy site;
    testsupport::spew(site.path("outfile"), "");
    fs::rename(site.path("outfile"), site.path("out"));  // out is now a regular file
    auto r = run_cli({"render", "home"});
    CHECK(r.code == 1);
    CHECK(testsupport::slurp(site.path("out")).empty());  // untouched
}

TEST_CASE("translate writes both artifacts and validates first") {
    SiteCopy site;
    auto r = run_cli({"translate", site.spath("model.amm"), "--ddl", site.spath("gen/m.sql"),
                      "--load", site.spath("gen/load.amp")});
    REQUIRE(r.code == 0);
    CHECK(testsupport::slurp(site.path("gen/m.sql")) ==
          testsupport::slurp(testsupport::golden_dir() / "model.sql"));
    CHECK(testsupport::slurp(site.path("gen/load.amp")) ==
          testsupport::slurp(testsupport::golden_dir() / "load.amp"));

    // Integrity failures block both outputs with exit 2.
    testsupport::spew(site.path("broken.amm"),
                      "domain d;\nconcept c over d : Text fns(v);\nindividual d.x { }\n");
    auto dirty = run_cli({"translate", site.spath("broken.amm"), "--ddl", site.spath("gen/b.sql")});
    CHECK(dirty.code == 2);
    CHECK(dirty.err.find("missing-attr") != std::string::npos);
    CHECK(!fs::exists(site.path("gen/b.sql")));

    // So do model files that fail to parse at all.
    testsupport::spew(site.path("garbled.amm"), "object = {\n");
    CHECK(run_cli({"translate", site.spath("garbled.amm")}).code == 2);
    CHECK(run_cli({"translate", site.spath("missing.amm")}).code == 1);
}

TEST_CASE("eval prints the final memory and output") {
    SiteCopy site;
    testsupport::spew(site.path("prog.amp"), "x = 1;\nemit x;\nemit read();\n");
    testsupport::spew(site.path("input.txt"), "7\n");
    auto r = run_cli({"eval", site.spath("prog.amp"), "--input", site.spath("input.txt")});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "mem={x=Int(1)}\n"
          "out=[Int(1), Int(7)]\n");
}

TEST_CASE("eval accepts bind-wrapped programs and project content") {
    SiteCopy site;
    testsupport::spew(site.path("prog.amp"),
                      "bind \"anything\" { x = content(\"site/name\"); emit x; }\n");
    auto r = run_cli({"eval", site.spath("prog.amp")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x=Text(\"AMCM Portal\")") != std::string::npos);
}

TEST_CASE("eval input files take one literal per line, including booleans") {
    SiteCopy site;
    testsupport::spew(site.path("prog.amp"), "a = read(); b = read(); c = read();");
    testsupport::spew(site.path("input.txt"), "true\n\"hi\"\n-4\n");
    auto r = run_cli({"eval", site.spath("prog.amp"), "--input", site.spath("input.txt")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("a=Bool(true)") != std::string::npos);
    CHECK(r.out.find("b=Text(\"hi\")") != std::string::npos);
    CHECK(r.out.find("c=Int(-4)") != std::string::npos);

    testsupport::spew(site.path("badinput.txt"), "seven\n");
    auto bad = run_cli({"eval", site.spath("prog.amp"), "--input", site.spath("badinput.txt")});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("seven") != std::string::npos);
}

TEST_CASE("eval distinguishes parse failures from machine failures") {
    SiteCopy site;
    testsupport::spew(site.path("syntax.amp"), "x = ;\n");
    CHECK(run_cli({"eval", site.spath("syntax.amp")}).code == 1);

    testsupport::spew(site.path("crash.amp"), "emit nowhere;\n");
    auto crash = run_cli({"eval", site.spath("crash.amp")});
    CHECK(crash.code == 3);
    CHECK(crash.err.find("UnboundIdentifier") != std::string::npos);

    testsupport::spew(site.path("dry.amp"), "x = read();\n");
    CHECK(run_cli({"eval", site.spath("dry.amp")}).code == 3);
}

TEST_CASE("--verbose adds a timing line on stderr") {
    SiteCopy site;
    testsupport::spew(site.path("prog.amp"), "x = 1;");
    auto r = run_cli({"--verbose", "eval", site.spath("prog.amp")});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("elapsed ") != std::string::npos);
    CHECK(r.err.find(" ms") != std::string::npos);

    auto quiet = run_cli({"eval", site.spath("prog.amp")});
    CHECK(quiet.err.empty());
}

TEST_CASE("eval runs of the same program agree run over run") {
    SiteCopy site;
    testsupport::spew(site.path("prog.amp"),
                      "greet = content(\"greeting\");\n"
                      "if (greet == \"Welcome back!\") { emit 1; } else { emit 2; }\n");
    auto first = run_cli({"eval", site.spath("prog.amp")});
    auto second = run_cli({"eval", site.spath("prog.amp")});
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.find("out=[Int(2)]") != std::string::npos);  // anonymous default context
}
