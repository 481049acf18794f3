#include "decsym/cli.hh"
#include "decsym/config.hh"
#include "decsym/specification.hh"

#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace decsym;
namespace fs = std::filesystem;

namespace {

// run the cli with stdout/stderr captured so test logs stay readable
int run_cli(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream co, ce;
    auto* old_out = std::cout.rdbuf(co.rdbuf());
    auto* old_err = std::cerr.rdbuf(ce.rdbuf());
    int rc = cli_main(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    if (out) *out = co.str() + ce.str();
    return rc;
}

fs::path fresh_dir(const std::string& tag) {
    fs::path d = fs::temp_directory_path() / ("decsym_test_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

const char* kRingPlant =
    "plant thermal_ring\n"
    "rooms 3\n"
    "alpha 0.45\nbeta 0.045\ngamma 0.09\nt_ext -1\nt_heat 50\n"
    "input_grid 0 0.003125 1\n"
    "end\n"
    "certificate\n"
    "weight 1\n"
    "alpha_lo linear 1\nalpha_hi linear 1\n"
    "rho linear 0.045\nsigma linear 1\n"
    "end\n";

const char* kRingSpec =
    "word q\n"
    "19 18 18\n19 18.5 18.5\n19 19 19\n19 19.5 19.5\n19 20 20\n19 20 20\n"
    "19 20 20\n19 19.5 19.5\n19 19 19\n19 18.5 18.5\n19 18.25 18.25\n19 18 18\n"
    "end\n"
    "top word_plus q\n";

std::string ring_cfg(const std::string& extra) {
    return "plant ring.plant\nspec ring.spec\ntheta 0.5\nplan aligned\n"
           "preset corner\nsamples 20\nseed 3\nfalsify 2000 0 50\n" +
           extra;
}

} // namespace

TEST_CASE("plant files round trip through the parser") {
    PlantFile pf = parse_plant_text(kRingPlant, "probe");
    CHECK(pf.model.n_comp == 3);
    CHECK(pf.model.inputs[0].size() == 321);
    REQUIRE(pf.cert.has_value());
    CHECK(pf.cert->rho.eval(1.0) == doctest::Approx(0.045));
}

TEST_CASE("parse errors name the origin and line") {
    std::string broken = kRingPlant;
    broken.insert(broken.find("beta"), "alpha oops\n"); // line 4 goes bad
    try {
        parse_plant_text(broken, "probe");
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("probe:4") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_spec_text("word q\n1 2\n", "s"), std::runtime_error);
    CHECK_THROWS_AS(parse_project_text("theta\n", "c"), std::runtime_error);
    CHECK_THROWS_AS(load_plant_file("/nonexistent/x.plant"), std::runtime_error);
}

TEST_CASE("project files carry every run knob") {
    std::string text =
        "plant a.plant\nspec b.spec\ntheta 0.25\nplan explicit 0.2 0.0125\n"
        "mode cen\nword unroll 3\npreset center\nsamples 7\nseed 42\n"
        "falsify 500 -1 2\nreference ref.json\noutdir somewhere\nslack 2\n";
    ProjectConfig cfg = parse_project_text(text, "/tmp/deep/run.cfg");
    CHECK(cfg.plant_path == "a.plant");
    CHECK(cfg.theta.str() == "0.25");
    CHECK(cfg.plan == PlanChoice::explicit_pair);
    REQUIRE(cfg.mu_explicit.has_value());
    CHECK(cfg.mu_explicit->str() == "0.2");
    CHECK(cfg.eta_explicit->str() == "0.0125");
    CHECK(cfg.mode == RunMode::cen);
    CHECK(cfg.word.kind == WordSelect::Kind::unroll);
    CHECK(cfg.word.arg == 3);
    CHECK(cfg.preset == "center");
    CHECK(cfg.samples == 7);
    CHECK(cfg.seed == 42);
    CHECK(cfg.falsify_samples == 500);
    CHECK(cfg.falsify_lo == -1);
    CHECK(cfg.falsify_hi == 2);
    CHECK(cfg.reference == "ref.json");
    CHECK(cfg.slack == 2);
    CHECK(resolve_path(cfg, "a.plant") == "/tmp/deep/a.plant");
    CHECK(resolve_path(cfg, "/abs/a.plant") == "/abs/a.plant");
}

TEST_CASE("spec files build the declared expression") {
    SpecExpr e = parse_spec_text(kRingSpec, "probe");
    SpecAutomaton a = build_spec(e);
    auto words = marked_input_words(a.ts, 12);
    CHECK(words.size() == 1); // exactly the 12-step schedule at that length
}

TEST_CASE("cli drives a feasible instance end to end") {
    fs::path d = fresh_dir("ok");
    put(d / "ring.plant", kRingPlant);
    put(d / "ring.spec", kRingSpec);
    put(d / "run.cfg", ring_cfg("mode both\noutdir " + (d / "out").string() + "\n"));
    std::string log;
    CHECK(run_cli({"check", (d / "run.cfg").string()}, &log) == exit_ok);
    CHECK(log.find("plan: mu") != std::string::npos);
    CHECK(log.find("all on cell centers") != std::string::npos);
    CHECK(run_cli({"synthesize", (d / "run.cfg").string()}, &log) == exit_ok);
    CHECK(log.find("retained") != std::string::npos);
    CHECK(fs::exists(d / "out" / "controllers.txt"));
    CHECK(fs::exists(d / "out" / "synthesis.json"));
    CHECK(run_cli({"simulate", (d / "run.cfg").string()}, &log) == exit_ok);
    CHECK(log.find("20/20") != std::string::npos);

    // artifacts are byte-stable across reruns
    auto slurp = [](const fs::path& p) {
        std::ifstream f(p);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    };
    std::string first = slurp(d / "out" / "synthesis.json");
    CHECK(run_cli({"synthesize", (d / "run.cfg").string()}) == exit_ok);
    CHECK(slurp(d / "out" / "synthesis.json") == first);
}

TEST_CASE("cli reports unenforceable specs with diagnosis") {
    fs::path d = fresh_dir("coarse");
    std::string coarse = kRingPlant;
    coarse.replace(coarse.find("0 0.003125 1"), 12, "0 0.025 1");
    put(d / "ring.plant", coarse);
    put(d / "ring.spec", kRingSpec);
    put(d / "run.cfg", ring_cfg("mode dec\noutdir " + (d / "out").string() + "\n"));
    std::string log;
    CHECK(run_cli({"synthesize", (d / "run.cfg").string()}, &log) == exit_unenforceable);
    CHECK(log.find("UNENFORCEABLE") != std::string::npos);
    CHECK(fs::exists(d / "out" / "diagnosis.txt"));
    CHECK(run_cli({"simulate", (d / "run.cfg").string()}, &log) == exit_unenforceable);
}

TEST_CASE("cli stops on a falsified certificate unless forced") {
    fs::path d = fresh_dir("falsified");
    put(d / "bad.plant",
        "plant linear_coupled\ncomponents 2\ndims 1 1\ninput_dims 1 1\n"
        "block 1 1 -2\nblock 2 2 -2\ngain 1 1\ngain 2 1\n"
        "inputs 1 grid -1 0.5 1\ninputs 2 grid -1 0.5 1\n"
        "end\n"
        "certificate\nweight 1\nalpha_lo linear 1\nalpha_hi linear 1\n"
        "rho linear 0.5\nsigma linear 1\nend\n");
    put(d / "two.spec", "word a\n0 0\n1 1\nend\ntop word a\n");
    put(d / "run.cfg",
        "plant bad.plant\nspec two.spec\ntheta 0.1\nplan split\nmode cen\n"
        "samples 5\nfalsify 200 -2 2\noutdir " + (d / "out").string() + "\n");
    std::string log;
    CHECK(run_cli({"check", (d / "run.cfg").string()}, &log) == exit_falsified);
    CHECK(log.find("VIOLATED") != std::string::npos);
    CHECK(run_cli({"synthesize", (d / "run.cfg").string()}, &log) == exit_falsified);
}

TEST_CASE("cli rejects broken invocations with the config exit code") {
    fs::path d = fresh_dir("bad");
    std::string log;
    CHECK(run_cli({"check", (d / "missing.cfg").string()}, &log) == exit_bad_config);
    put(d / "run.cfg", "plant nowhere.plant\nspec nowhere.spec\ntheta 0.5\n");
    CHECK(run_cli({"check", (d / "run.cfg").string()}, &log) == exit_bad_config);
    CHECK(run_cli({"synthesize", "--no-such-flag"}, &log) == exit_bad_config);
    CHECK(run_cli({"frobnicate"}, &log) == exit_bad_config);
    CHECK(run_cli({"--help"}, &log) == exit_ok);
    CHECK(log.find("synthesize") != std::string::npos);
}
