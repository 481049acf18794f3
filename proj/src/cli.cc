#include "decsym/cli.hh"

#include "decsym/automaton_io.hh"
#include "decsym/config.hh"
#include "decsym/heating.hh"
#include "decsym/reporting.hh"

#include "CLI11.hpp"
#include "json.hpp"

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

namespace decsym {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommandError {
    int code;
    std::string message;
};

int env_workers() {
    if (const char* w = std::getenv("DECSYM_WORKERS"))
        if (int v = std::atoi(w); v >= 1) return v;
    return omp_get_max_threads();
}

void collect_coords(const SpecExpr& e, std::set<Decimal>& out) {
    for (const DecVec& p : e.word)
        for (const Decimal& d : p) out.insert(d);
    if (e.automaton && e.automaton->alphabet) {
        const SymbolTable& tab = *e.automaton->alphabet;
        for (std::size_t s = 0; s < tab.size(); ++s)
            for (const Decimal& d : tab.point(static_cast<SymbolId>(s))) out.insert(d);
    }
    for (const auto& c : e.children) collect_coords(*c, out);
}

// the word literal behind the top expression, when there is one
std::optional<std::vector<DecVec>> top_word(const SpecExpr& e) {
    if (e.kind == SpecExpr::Kind::word || e.kind == SpecExpr::Kind::word_plus) return e.word;
    return std::nullopt;
}

struct Loaded {
    ProjectConfig cfg;
    PlantFile plant;
    SpecExpr spec;
    std::vector<Decimal> coords; // distinct specification coordinates
    std::string outdir;
};

Loaded load_all(const std::string& path) {
    Loaded L;
    try {
        L.cfg = load_project_file(path);
        L.plant = load_plant_file(resolve_path(L.cfg, L.cfg.plant_path));
        L.spec = load_spec_file(resolve_path(L.cfg, L.cfg.spec_path));
    } catch (const std::exception& e) {
        throw CommandError{exit_bad_config, e.what()};
    }
    std::set<Decimal> coords;
    collect_coords(L.spec, coords);
    L.coords.assign(coords.begin(), coords.end());
    L.outdir = resolve_path(L.cfg, L.cfg.outdir);
    return L;
}

const GasCertificate& need_cert(const Loaded& L) {
    if (!L.plant.cert)
        throw CommandError{exit_bad_config, "plant file has no certificate block"};
    return *L.plant.cert;
}

AccuracyPlan resolve_plan(const Loaded& L) {
    const GasCertificate& cert = need_cert(L);
    if (L.cfg.plan == PlanChoice::explicit_pair) {
        AccuracyPlan plan;
        plan.mu_exact = *L.cfg.mu_explicit;
        plan.mu = plan.mu_exact->to_double();
        plan.eta = *L.cfg.eta_explicit;
        plan.bound = quantization_bound(cert, *plan.mu_exact);
        // the pair must clear either admissibility route
        auto bad_aligned = validate_accuracy(cert, L.cfg.theta, plan.mu, plan.eta,
                                             L.coords, PlanMode::aligned);
        if (!bad_aligned) {
            plan.feasible = true;
            plan.notes.push_back("explicit pair admissible via grid alignment");
            return plan;
        }
        auto bad_split = validate_accuracy(cert, L.cfg.theta, plan.mu, plan.eta,
                                           L.coords, PlanMode::split);
        if (!bad_split) {
            plan.feasible = true;
            plan.notes.push_back("explicit pair admissible via margin split");
            return plan;
        }
        plan.binding = *bad_aligned + "; " + *bad_split;
        return plan;
    }
    PlanMode mode = L.cfg.plan == PlanChoice::split ? PlanMode::split : PlanMode::aligned;
    return accuracy_plan(cert, L.cfg.theta, L.coords, mode);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CommandError{1, "cannot write " + path};
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CommandError{exit_bad_config, "cannot open " + path};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string plan_line(const AccuracyPlan& plan) {
    std::ostringstream out;
    out << "plan: mu ";
    if (plan.mu_exact) out << plan.mu_exact->str();
    else out << plan.mu;
    out << ", eta " << plan.eta.str() << ", bound ";
    if (plan.bound.exact) out << plan.bound.exact->str();
    else out << plan.bound.value;
    return out.str();
}

json plan_json(const AccuracyPlan& plan) {
    json pj;
    pj["feasible"] = plan.feasible;
    if (!plan.binding.empty()) pj["binding"] = plan.binding;
    pj["mu"] = plan.mu;
    if (plan.mu_exact) pj["mu_exact"] = plan.mu_exact->str();
    pj["eta"] = plan.eta.str();
    pj["bound"] = plan.bound.value;
    if (plan.bound.exact) pj["bound_exact"] = plan.bound.exact->str();
    pj["notes"] = plan.notes;
    return pj;
}

bool coords_on_grid(const std::vector<Decimal>& coords, const Decimal& eta) {
    for (const Decimal& c : coords)
        if (!eta.divides(c)) return false;
    return true;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& config, int workers,
              std::optional<std::uint64_t> samples_flag,
              std::optional<std::uint64_t> seed_flag) {
    Loaded L = load_all(config);
    const GasCertificate& cert = need_cert(L);
    const NetworkModel& m = L.plant.model;
    std::uint64_t samples = samples_flag.value_or(L.cfg.falsify_samples);
    std::uint64_t seed = seed_flag.value_or(L.cfg.seed);

    json report;
    std::cout << "plant: " << m.n_comp << " components, state dimension " << m.state_dim()
              << "\n";
    if (const auto* ring = std::get_if<ThermalRing>(&m.dynamics)) {
        Decimal a = thermal_contraction(ring->alpha, ring->beta, ring->gamma);
        std::cout << "contraction modulus: " << a.str() << "\n";
        report["contraction_modulus"] = a.str();
    }
    std::vector<double> lo(m.state_dim(), L.cfg.falsify_lo);
    std::vector<double> hi(m.state_dim(), L.cfg.falsify_hi);
    FalsifyResult fr = falsify_certificate(m, cert, lo, hi, samples, seed, workers);
    report["falsify_samples"] = fr.samples_run;
    fs::create_directories(L.outdir);
    if (fr.found) {
        std::cout << "certificate: VIOLATED, condition " << fr.condition << " at sample "
                  << fr.sample_index << " (lhs " << fr.lhs << ", rhs " << fr.rhs << ")\n";
        report["violation"] = {{"condition", fr.condition},
                               {"sample", fr.sample_index},
                               {"x", fr.x},
                               {"lhs", fr.lhs},
                               {"rhs", fr.rhs}};
        write_file(L.outdir + "/check.json", report.dump(2));
        return exit_falsified;
    }
    std::cout << "certificate: no violation in " << fr.samples_run << " samples\n";

    AccuracyPlan plan = resolve_plan(L);
    report["plan"] = plan_json(plan);
    std::cout << "accuracy: theta " << L.cfg.theta.str() << "\n";
    for (const std::string& n : plan.notes) std::cout << "note: " << n << "\n";
    if (!plan.feasible) {
        std::cout << "plan: infeasible (" << plan.binding << ")\n";
        write_file(L.outdir + "/check.json", report.dump(2));
        return exit_unenforceable;
    }
    std::cout << plan_line(plan) << "\n";
    bool on_grid = coords_on_grid(L.coords, plan.eta);
    report["coords_on_grid"] = on_grid;
    std::cout << "grid: specification coordinates "
              << (on_grid ? "all on cell centers" : "NOT all on cell centers") << "\n";
    write_file(L.outdir + "/check.json", report.dump(2));
    return exit_ok;
}

// ----------------------------------------------------------- synthesize

WordPolicy to_policy(const WordSelect& ws) {
    switch (ws.kind) {
    case WordSelect::Kind::shortest: return WordPolicy::shortest;
    case WordSelect::Kind::unroll: return WordPolicy::unroll;
    case WordSelect::Kind::index: return WordPolicy::index;
    }
    return WordPolicy::shortest;
}

WordSelect parse_word_policy(const std::string& s) {
    WordSelect ws;
    if (s == "shortest") return ws;
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    int arg = colon == std::string::npos ? -1 : std::atoi(s.c_str() + colon + 1);
    if (head == "unroll" && arg >= 1) {
        ws.kind = WordSelect::Kind::unroll;
        ws.arg = arg;
        return ws;
    }
    if (head == "index" && arg >= 0) {
        ws.kind = WordSelect::Kind::index;
        ws.arg = arg;
        return ws;
    }
    throw CommandError{exit_bad_config,
                       "word policy must be shortest, unroll:R or index:K, got '" + s + "'"};
}

struct SynthOutcome {
    AccuracyPlan plan;
    TransitionSpec sq;
    Quantizer quant{std::vector<Decimal>{Decimal(1, 0)}};
    std::optional<ControlledSpec> dec_res, cen_res;
    std::optional<WordChoice> wc;
    std::optional<DecControllers> dcs;
    std::optional<CenController> ccs;
    bool faithful = true;
};

// shared by synthesize and simulate; throws CommandError on gate failures
SynthOutcome run_pipeline(const Loaded& L, RunMode mode, const WordSelect& ws, int workers,
                          bool literal, std::uint64_t literal_cap, bool force) {
    const GasCertificate& cert = need_cert(L);
    const NetworkModel& m = L.plant.model;
    SynthOutcome S;
    S.faithful = L.cfg.slack == 0;

    std::vector<double> lo(m.state_dim(), L.cfg.falsify_lo);
    std::vector<double> hi(m.state_dim(), L.cfg.falsify_hi);
    FalsifyResult fr =
        falsify_certificate(m, cert, lo, hi, L.cfg.falsify_samples, L.cfg.seed, workers);
    if (fr.found) {
        if (!force)
            throw CommandError{exit_falsified, "certificate violated, condition " +
                                                   fr.condition + " at sample " +
                                                   std::to_string(fr.sample_index)};
        std::cerr << "warning: certificate violated, continuing under --force\n";
        S.faithful = false;
    }
    S.plan = resolve_plan(L);
    if (!S.plan.feasible) {
        bool have_pair = L.cfg.plan == PlanChoice::explicit_pair;
        if (!force || !have_pair)
            throw CommandError{exit_unenforceable,
                               "accuracy plan infeasible: " + S.plan.binding};
        std::cerr << "warning: accuracy pair rejected, continuing under --force\n";
        S.faithful = false;
    }

    SpecAutomaton spec = [&] {
        try {
            return build_spec(L.spec);
        } catch (const std::exception& e) {
            throw CommandError{exit_bad_config, std::string("specification: ") + e.what()};
        }
    }();
    S.sq = to_transition_spec(spec);
    S.quant = Quantizer::uniform(m.n_comp, S.plan.eta);

    if (mode != RunMode::cen)
        S.dec_res = synthesize_dec(m, S.quant, S.sq, workers, L.cfg.slack);
    if (mode != RunMode::dec)
        S.cen_res = synthesize_cen(m, S.quant, S.sq, workers, literal, literal_cap, L.cfg.slack);
    if (S.dec_res && S.cen_res) {
        if (!(S.dec_res->trimmed == S.cen_res->trimmed &&
              S.dec_res->retained == S.cen_res->retained))
            throw std::logic_error("centralized and decentralized trims disagree");
    }
    const ControlledSpec& base = S.dec_res ? *S.dec_res : *S.cen_res;
    if (is_empty(base.trimmed)) return S; // caller reports and diagnoses

    S.wc = select_word(S.sq, base, to_policy(ws), ws.arg);
    if (!S.wc) return S;
    if (S.dec_res)
        S.dcs = extract_dec_controllers(m, S.quant, cert, S.plan.mu, S.plan.mu_exact,
                                        L.cfg.theta, S.sq, *S.dec_res, *S.wc);
    if (S.cen_res)
        S.ccs = extract_cen_controller(m, S.quant, cert, S.plan.mu, S.plan.mu_exact,
                                       L.cfg.theta, S.sq, *S.cen_res);
    return S;
}

int cmd_synthesize(const std::string& config, const std::string& mode_flag,
                   const std::string& word_flag, bool literal, std::uint64_t literal_cap,
                   bool force, int workers) {
    Loaded L = load_all(config);
    RunMode mode = L.cfg.mode;
    if (!mode_flag.empty()) {
        if (mode_flag == "dec") mode = RunMode::dec;
        else if (mode_flag == "cen") mode = RunMode::cen;
        else if (mode_flag == "both") mode = RunMode::both;
        else throw CommandError{exit_bad_config, "mode must be dec, cen or both"};
    }
    WordSelect ws = word_flag.empty() ? L.cfg.word : parse_word_policy(word_flag);

    SynthOutcome S = run_pipeline(L, mode, ws, workers, literal, literal_cap, force);
    const NetworkModel& m = L.plant.model;
    fs::create_directories(L.outdir);

    std::cout << plan_line(S.plan) << "\n";
    if (S.dec_res)
        std::cout << "dec: " << S.dec_res->eval_count << " indicator evaluations\n";
    if (S.cen_res)
        std::cout << "cen: enumeration size " << S.cen_res->nominal_count.str() << " ("
                  << S.cen_res->eval_count << " evaluations run)\n";
    if (S.dec_res && S.cen_res) std::cout << "dec/cen trims identical\n";
    const ControlledSpec& base = S.dec_res ? *S.dec_res : *S.cen_res;
    std::cout << "retained "
              << std::count(base.retained.begin(), base.retained.end(), char(1)) << "/"
              << base.retained.size() << " spec transitions; trim "
              << base.trimmed.states.size() << " states, "
              << base.trimmed.transitions.size() << " transitions\n";

    RunStamp stamp{config, L.cfg.seed, workers, S.faithful};
    std::string report = synthesis_report_json(
        stamp, m, L.cfg.theta, S.plan, S.dec_res ? &*S.dec_res : nullptr,
        S.cen_res ? &*S.cen_res : nullptr, S.dcs ? &*S.dcs : nullptr,
        S.ccs ? &*S.ccs : nullptr);
    write_file(L.outdir + "/synthesis.json", report);

    if (is_empty(base.trimmed)) {
        auto diag = diagnose(m, S.quant, S.sq, base);
        write_file(L.outdir + "/diagnosis.json", diagnosis_json(diag));
        write_file(L.outdir + "/diagnosis.txt", diagnosis_text(diag));
        std::cout << "UNENFORCEABLE: controlled behavior is empty; see "
                  << L.outdir + "/diagnosis.txt" << "\n";
        return exit_unenforceable;
    }
    if (!S.wc) {
        std::cout << "UNENFORCEABLE: word policy selected no word\n";
        return exit_unenforceable;
    }

    std::cout << "word: " << S.wc->word.size() << " points\n";
    if (S.dcs) {
        write_file(L.outdir + "/controllers.txt", controller_table_text(m, *S.dcs));
        write_file(L.outdir + "/controllers.json", controller_table_json(m, *S.dcs));
        std::cout << "X0: " << region_text(S.dcs->x0) << "\n";
        std::cout << "Xf: " << region_text(S.dcs->xf) << "\n";
        write_file(L.outdir + "/regions.txt", "X0: " + region_text(S.dcs->x0) + "\nXf: " +
                                                  region_text(S.dcs->xf) + "\n");
    }
    if (S.ccs) save_automaton_file(S.ccs->trimmed, L.outdir + "/cen_trimmed.aut");

    if (!L.cfg.reference.empty()) {
        auto schedule = top_word(L.spec);
        if (!schedule) {
            std::cerr << "warning: reference comparison needs a word-based specification\n";
        } else {
            std::string ref = read_file(resolve_path(L.cfg, L.cfg.reference));
            std::string rj =
                reference_report_json(ref, m, *schedule, S.dcs ? &*S.dcs : nullptr);
            write_file(L.outdir + "/reference_report.json", rj);
            write_file(L.outdir + "/reference_report.txt", reference_report_text(rj));
            json parsed = json::parse(rj);
            std::cout << "reference comparison: " << parsed["discrepancies"].size()
                      << " discrepancies documented\n";
        }
    }
    if (!S.faithful) std::cout << "WARNING: artifacts tainted (relaxation or override)\n";
    std::cout << "artifacts in " << L.outdir << "\n";
    return exit_ok;
}

// ------------------------------------------------------------- simulate

std::vector<double> preset_state(const NetworkModel& m, const GasCertificate& cert,
                                 const RegionSpec& x0, const std::string& preset) {
    std::vector<double> x;
    int j = 0;
    for (int i = 0; i < m.n_comp; ++i) {
        // corner start: the first component and its two ring neighbors at
        // the upper face, everyone else at the lower face
        bool hi = i == 0 || i == 1 || i == m.n_comp - 1;
        for (int c = 0; c < m.dims[i]; ++c, ++j) {
            double center = x0.center_point[j].to_double();
            double rad = x0.radius / cert.weight_at(j);
            x.push_back(preset == "corner" ? (hi ? center + rad : center - rad) : center);
        }
    }
    return x;
}

int cmd_simulate(const std::string& config, const std::string& preset_flag,
                 std::optional<std::uint64_t> samples_flag,
                 std::optional<std::uint64_t> seed_flag, int workers) {
    Loaded L = load_all(config);
    if (!preset_flag.empty() && preset_flag != "center" && preset_flag != "corner")
        throw CommandError{exit_bad_config, "preset must be center or corner"};
    std::string preset = preset_flag.empty() ? L.cfg.preset : preset_flag;
    std::uint64_t samples = samples_flag.value_or(L.cfg.samples);
    std::uint64_t seed = seed_flag.value_or(L.cfg.seed);

    SynthOutcome S = run_pipeline(L, L.cfg.mode == RunMode::cen ? RunMode::both : L.cfg.mode,
                                  L.cfg.word, workers, false, 10000, false);
    const NetworkModel& m = L.plant.model;
    const GasCertificate& cert = need_cert(L);
    if (!S.dcs)
        throw CommandError{exit_unenforceable, "no controllers: specification unenforceable"};
    fs::create_directories(L.outdir);

    bool all_ok = true;

    std::vector<double> x0 = preset_state(m, cert, S.dcs->x0, preset);
    Trace tr = run_dec(m, *S.dcs, x0, InputPick::min, seed);
    write_file(L.outdir + "/trace_" + preset + ".csv", trace_csv(tr));
    VerifyResult v =
        verify_enforcement(cert, tr, S.dcs->wc.word, L.cfg.theta, S.dcs->x0, S.dcs->xf);
    std::cout << "preset " << preset << " trace: "
              << (v.ok ? "enforced" : "VIOLATION: " + v.violation) << "\n";
    all_ok = all_ok && v.ok;

    if (S.ccs) {
        Trace ct = run_cen(m, *S.ccs, x0, InputPick::min, SuccessorPick::smallest, seed);
        write_file(L.outdir + "/trace_cen_" + preset + ".csv", trace_csv(ct));
        double dev = 0;
        for (const TraceRow& r : ct.rows) dev = std::max(dev, r.deviation);
        bool cok = !ct.blocked && dev <= L.cfg.theta.to_double();
        std::cout << "cen trace: " << (cok ? "enforced" : "VIOLATION") << ", max deviation "
                  << dev << "\n";
        all_ok = all_ok && cok;
    }

    BatchResult batch =
        simulate_batch(m, cert, *S.dcs, samples, seed, InputPick::min, workers);
    RunStamp stamp{config, seed, workers, S.faithful};
    write_file(L.outdir + "/simulation.json", batch_report_json(stamp, L.cfg.theta, batch));
    std::cout << "monte carlo: " << batch.n_ok << "/" << batch.n_traces
              << " enforced, max deviation " << batch.max_deviation << "\n";
    if (batch.n_ok != batch.n_traces)
        std::cout << "first failure: trace " << batch.first_failure << " ("
                  << batch.first_violation << ")\n";
    all_ok = all_ok && batch.n_ok == batch.n_traces;
    return all_ok ? exit_ok : exit_unenforceable;
}

// ---------------------------------------------------------------- bench

int cmd_bench(const std::string& config, const std::string& n_list, int workers) {
    std::vector<int> ns;
    std::stringstream ss(n_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int v = std::atoi(item.c_str());
        if (v < 3) throw CommandError{exit_bad_config, "bench needs ring sizes >= 3"};
        ns.push_back(v);
    }
    if (ns.empty()) throw CommandError{exit_bad_config, "empty n-list"};

    // base parameters: builtin ring, or a thermal_ring plant file via --config
    std::vector<DecVec> inputs =
        decimal_range(Decimal(0, 0), Decimal::parse("0.025"), Decimal(1, 0));
    GasCertificate cert = heating_certificate();
    Decimal theta = Decimal::parse("0.5");
    if (!config.empty()) {
        Loaded L = load_all(config);
        if (!std::holds_alternative<ThermalRing>(L.plant.model.dynamics))
            throw CommandError{exit_bad_config, "bench scales ring models only"};
        inputs = L.plant.model.inputs[0];
        cert = need_cert(L);
        theta = L.cfg.theta;
    }

    std::cout << "n spec_transitions dec_evals cen_nominal serial_s parallel_s speedup "
                 "identical\n";
    for (int n : ns) {
        NetworkModel m = heating_model(n, inputs);
        SpecAutomaton spec = build_word_plus(heating_schedule(n, ScheduleVariant::uniform_first));
        TransitionSpec sq = to_transition_spec(spec);
        std::set<Decimal> coords;
        for (StateId s : sq.ts.states)
            for (const Decimal& d : sq.ts.outputs[s].point()) coords.insert(d);
        AccuracyPlan plan = accuracy_plan(
            cert, theta, std::vector<Decimal>(coords.begin(), coords.end()),
            PlanMode::aligned);
        if (!plan.feasible)
            throw CommandError{exit_unenforceable, "bench plan infeasible: " + plan.binding};
        Quantizer quant = Quantizer::uniform(n, plan.eta);

        ControlledSpec serial = synthesize_dec_serial(m, quant, sq);
        ControlledSpec parallel = synthesize_dec(m, quant, sq, workers);
        BigCount cen_nominal(sq.ts.transitions.size());
        for (int i = 0; i < n; ++i) cen_nominal.mul(m.inputs[i].size());

        double speedup =
            parallel.wall_seconds > 0 ? serial.wall_seconds / parallel.wall_seconds : 0.0;
        std::cout << n << " " << sq.ts.transitions.size() << " " << serial.eval_count << " "
                  << cen_nominal.str() << " " << serial.wall_seconds << " "
                  << parallel.wall_seconds << " " << speedup << " "
                  << (serial.same_result(parallel) ? "yes" : "NO") << "\n";
    }
    return exit_ok;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"supervisory controller synthesis for networks of control systems"};
    app.require_subcommand(1);
    int workers = env_workers();
    app.add_option("--workers", workers, "worker count (default: DECSYM_WORKERS or cores)");

    std::string config, mode_flag, word_flag, preset_flag, n_list;
    bool literal = false, force = false;
    std::uint64_t literal_cap = 10000;
    std::optional<std::uint64_t> samples_flag, seed_flag;

    CLI::App* check = app.add_subcommand("check", "validate model, certificate and accuracy plan");
    check->add_option("config,--config", config, "project file")->required();
    check->add_option("--samples", samples_flag, "falsification samples");
    check->add_option("--seed", seed_flag, "random seed");

    CLI::App* synth = app.add_subcommand("synthesize", "synthesize controllers");
    synth->add_option("config,--config", config, "project file")->required();
    synth->add_option("--mode", mode_flag, "dec, cen or both");
    synth->add_option("--word-policy", word_flag, "shortest, unroll:R or index:K");
    synth->add_flag("--literal", literal, "materialize joint input sets (centralized)");
    synth->add_option("--literal-cap", literal_cap, "joint tuple cap for --literal");
    synth->add_flag("--force", force, "continue past failed gates, tainting artifacts");

    CLI::App* sim = app.add_subcommand("simulate", "run closed-loop traces");
    sim->add_option("config,--config", config, "project file")->required();
    sim->add_option("--preset", preset_flag, "center or corner start");
    sim->add_option("--samples", samples_flag, "monte carlo trace count");
    sim->add_option("--seed", seed_flag, "random seed");

    CLI::App* bench = app.add_subcommand("bench", "scale the ring family over N");
    bench->add_option("config,--config", config, "thermal ring project file (optional)");
    bench->add_option("--n-list", n_list, "comma-separated ring sizes")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_bad_config;
    }

    try {
        if (check->parsed()) return cmd_check(config, workers, samples_flag, seed_flag);
        if (synth->parsed())
            return cmd_synthesize(config, mode_flag, word_flag, literal, literal_cap, force,
                                  workers);
        if (sim->parsed())
            return cmd_simulate(config, preset_flag, samples_flag, seed_flag, workers);
        if (bench->parsed()) return cmd_bench(config, n_list, workers);
    } catch (const CommandError& ce) {
        std::cerr << "error: " << ce.message << "\n";
        return ce.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_bad_config;
}

int cli_main(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("decsym");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

} // namespace decsym
