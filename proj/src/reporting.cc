#include "decsym/reporting.hh"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace decsym {

using nlohmann::json;

namespace {

json decvec_json(const DecVec& v) {
    json a = json::array();
    for (const Decimal& d : v) a.push_back(d.str());
    return a;
}

json region_json(const RegionSpec& r) {
    json j;
    j["center"] = decvec_json(r.center_point);
    j["radius"] = r.radius;
    if (r.radius_exact) j["radius_exact"] = r.radius_exact->str();
    if (r.box_lo && r.box_hi) {
        j["box_lo"] = decvec_json(*r.box_lo);
        j["box_hi"] = decvec_json(*r.box_hi);
    }
    return j;
}

json inputs_cell(const NetworkModel& m, int comp, const std::vector<int>& idx) {
    json a = json::array();
    for (int k : idx) a.push_back(str(m.inputs[comp][k]));
    return a;
}

std::string cell_text(const NetworkModel& m, int comp, const std::vector<int>& idx) {
    std::string s = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += ", ";
        s += str(m.inputs[comp][idx[k]]);
    }
    return s + "}";
}

json controlled_json(const ControlledSpec& cs) {
    json j;
    j["centralized"] = cs.centralized;
    j["eval_count"] = cs.eval_count;
    j["nominal_count"] = cs.nominal_count.str();
    j["trim_states"] = cs.trimmed.states.size();
    j["trim_transitions"] = cs.trimmed.transitions.size();
    j["retained"] = std::count(cs.retained.begin(), cs.retained.end(), char(1));
    j["spec_transitions"] = cs.retained.size();
    // wall time and worker count stay out: artifacts are byte-stable
    j["boundary_risk"] = cs.boundary_risk;
    return j;
}

json stamp_json(const RunStamp& s) {
    json j;
    j["config"] = s.config;
    j["seed"] = s.seed;
    j["workers"] = s.workers;
    j["faithful"] = s.faithful;
    return j;
}

} // namespace

std::string controller_table_text(const NetworkModel& m, const DecControllers& dc) {
    std::ostringstream out;
    out << "step";
    for (int i = 0; i < m.n_comp; ++i) out << "\tC" << i + 1;
    out << "\n";
    for (std::size_t t = 0; t < dc.h.size(); ++t) {
        out << t;
        for (int i = 0; i < m.n_comp; ++i) out << "\t" << cell_text(m, i, dc.h[t][i]);
        out << "\n";
    }
    return out.str();
}

std::string controller_table_json(const NetworkModel& m, const DecControllers& dc) {
    json j;
    j["steps"] = dc.h.size();
    j["components"] = m.n_comp;
    j["word"] = json::array();
    for (const DecVec& p : dc.wc.word) j["word"].push_back(decvec_json(p));
    j["rows"] = json::array();
    for (std::size_t t = 0; t < dc.h.size(); ++t) {
        json row;
        row["t"] = t;
        row["inputs"] = json::array();
        for (int i = 0; i < m.n_comp; ++i) row["inputs"].push_back(inputs_cell(m, i, dc.h[t][i]));
        j["rows"].push_back(std::move(row));
    }
    return j.dump(2);
}

std::string region_text(const RegionSpec& r) {
    std::ostringstream out;
    if (r.box_lo && r.box_hi) {
        for (std::size_t jx = 0; jx < r.box_lo->size(); ++jx) {
            if (jx) out << " x ";
            out << "[" << (*r.box_lo)[jx].str() << "," << (*r.box_hi)[jx].str() << "]";
        }
    } else {
        out << "ball of radius " << r.radius << " around " << str(r.center_point);
    }
    return out.str();
}

std::string synthesis_report_json(const RunStamp& stamp, const NetworkModel& m,
                                  const Decimal& theta, const AccuracyPlan& plan,
                                  const ControlledSpec* dec_result,
                                  const ControlledSpec* cen_result,
                                  const DecControllers* dec_ctrl,
                                  const CenController* cen_ctrl) {
    json j;
    j["run"] = stamp_json(stamp);
    j["theta"] = theta.str();
    j["components"] = m.n_comp;
    json pj;
    pj["feasible"] = plan.feasible;
    if (!plan.binding.empty()) pj["binding"] = plan.binding;
    pj["mu"] = plan.mu;
    if (plan.mu_exact) pj["mu_exact"] = plan.mu_exact->str();
    pj["eta"] = plan.eta.str();
    pj["bound"] = plan.bound.value;
    if (plan.bound.exact) pj["bound_exact"] = plan.bound.exact->str();
    pj["notes"] = plan.notes;
    j["plan"] = std::move(pj);
    if (dec_result) j["dec"] = controlled_json(*dec_result);
    if (cen_result) j["cen"] = controlled_json(*cen_result);
    if (dec_ctrl) {
        json c;
        c["word_length"] = dec_ctrl->wc.word.size();
        c["word"] = json::array();
        for (const DecVec& p : dec_ctrl->wc.word) c["word"].push_back(decvec_json(p));
        c["x0"] = region_json(dec_ctrl->x0);
        c["xf"] = region_json(dec_ctrl->xf);
        j["dec_controllers"] = std::move(c);
    }
    if (cen_ctrl) {
        json c;
        c["trim_states"] = cen_ctrl->trimmed.states.size();
        c["x0"] = json::array();
        for (const RegionSpec& r : cen_ctrl->x0) c["x0"].push_back(region_json(r));
        c["xf"] = json::array();
        for (const RegionSpec& r : cen_ctrl->xf) c["xf"].push_back(region_json(r));
        j["cen_controller"] = std::move(c);
    }
    return j.dump(2);
}

std::string batch_report_json(const RunStamp& stamp, const Decimal& theta,
                              const BatchResult& b) {
    json j;
    j["run"] = stamp_json(stamp);
    j["theta"] = theta.str();
    j["traces"] = b.n_traces;
    j["ok"] = b.n_ok;
    j["all_pass"] = b.n_ok == b.n_traces;
    j["max_deviation"] = b.max_deviation;
    if (b.n_ok < b.n_traces) {
        j["first_failure"] = b.first_failure;
        j["first_violation"] = b.first_violation;
    }
    return j.dump(2);
}

std::string diagnosis_text(const std::vector<DiagnosisEntry>& entries) {
    std::ostringstream out;
    for (const DiagnosisEntry& e : entries) {
        out << "transition " << e.trans_idx << " component " << e.component + 1
            << ": target cell";
        for (auto c : e.target_cell) out << " " << c;
        out << ", nearest achievable distance " << e.min_cell_distance
            << " cells, widest successor gap " << e.max_gap << "\n  " << e.suggestion << "\n";
    }
    if (entries.empty()) out << "every indicator holds\n";
    return out.str();
}

std::string diagnosis_json(const std::vector<DiagnosisEntry>& entries) {
    json j = json::array();
    for (const DiagnosisEntry& e : entries) {
        json d;
        d["transition"] = e.trans_idx;
        d["component"] = e.component + 1;
        d["target_cell"] = e.target_cell;
        d["achievable_cells"] = e.achievable_cells;
        d["min_cell_distance"] = e.min_cell_distance;
        d["max_gap"] = e.max_gap;
        d["suggestion"] = e.suggestion;
        j.push_back(std::move(d));
    }
    return j.dump(2);
}

namespace {

// (first, edge, middle) column triple -> one value per room
std::vector<double> expand_triple(double first, double edge, double middle, int n) {
    std::vector<double> x(n, middle);
    x[0] = first;
    x[1] = edge;
    x[n - 1] = edge;
    return x;
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

struct RefRow {
    int label = 0;
    Decimal first, edge, middle;
};

Decimal ref_dec(const json& j, const char* key) {
    if (!j.contains(key)) throw std::runtime_error(std::string("reference bundle: missing ") + key);
    return Decimal::parse(j.at(key).get<std::string>());
}

std::vector<double> row_values(const RefRow& r, int n) {
    return expand_triple(r.first.to_double(), r.edge.to_double(), r.middle.to_double(), n);
}

// index of the printed value in U_i, or -1 when it is off the input set
int input_index_of(const NetworkModel& m, int comp, const Decimal& v) {
    for (std::size_t k = 0; k < m.inputs[comp].size(); ++k)
        if (m.inputs[comp][k] == DecVec{v}) return static_cast<int>(k);
    return -1;
}

} // namespace

std::string reference_report_json(const std::string& reference_text,
                                  const NetworkModel& m,
                                  const std::vector<DecVec>& schedule,
                                  const DecControllers* ours) {
    json ref;
    try {
        ref = json::parse(reference_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("reference bundle: ") + e.what());
    }
    const int n = m.n_comp;
    const std::size_t T = schedule.size();
    json rep;
    rep["instance"] = ref.value("instance", "");
    json discrepancies = json::array();

    // -- step-size alignment of the published accuracy pair ---------------
    Decimal claimed_theta = ref_dec(ref.at("claimed"), "theta");
    Decimal claimed_eta = ref_dec(ref.at("claimed"), "eta");
    Decimal claimed_mu = ref_dec(ref.at("claimed"), "mu");
    std::set<Decimal> coords;
    for (const DecVec& p : schedule)
        for (const Decimal& d : p) coords.insert(d);
    json galign;
    galign["claimed_eta"] = claimed_eta.str();
    galign["values"] = json::array();
    bool all_on = true;
    for (const Decimal& c : coords) {
        bool on = claimed_eta.divides(c);
        all_on = all_on && on;
        galign["values"].push_back({{"value", c.str()}, {"on_grid", on}});
    }
    galign["all_on_grid"] = all_on;
    GasCertificate cert_unit; // published pair is checked against unit forms
    cert_unit.weight = {Decimal(1, 0)};
    cert_unit.alpha_lo = cert_unit.alpha_hi = cert_unit.sigma = KinfFn::linear(Decimal(1, 0));
    cert_unit.rho = KinfFn::linear(Decimal::parse("0.045"));
    std::vector<Decimal> coord_list(coords.begin(), coords.end());
    if (auto bad = validate_accuracy(cert_unit, claimed_theta, claimed_mu.to_double(),
                                     claimed_eta, coord_list, PlanMode::aligned))
        galign["pair_check"] = *bad;
    if (!all_on)
        discrepancies.push_back("published step size does not put every schedule "
                                "value on a grid center");
    rep["grid_alignment"] = std::move(galign);

    // -- published controller rows: label order and replay score ----------
    std::vector<RefRow> rows;
    for (const json& r : ref.at("controller_rows")) {
        RefRow row;
        row.label = r.at("label").get<int>();
        row.first = ref_dec(r, "first");
        row.edge = ref_dec(r, "edge");
        row.middle = ref_dec(r, "middle");
        rows.push_back(row);
    }
    json rl;
    rl["printed_order"] = json::array();
    bool ascending = true;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rl["printed_order"].push_back(rows[k].label);
        if (k && rows[k].label < rows[k - 1].label) ascending = false;
    }
    rl["ascending"] = ascending;
    if (!ascending)
        discrepancies.push_back("published controller rows are not in ascending label order");
    rl["rows"] = json::array();
    for (const RefRow& row : rows) {
        std::vector<double> u = row_values(row, n);
        int best = -1;
        double best_dev = 0, label_dev = -1;
        for (std::size_t t = 0; t < T; ++t) {
            std::vector<double> src;
            for (const Decimal& d : schedule[t]) src.push_back(d.to_double());
            std::vector<double> tgt;
            for (const Decimal& d : schedule[(t + 1) % T]) tgt.push_back(d.to_double());
            double dev = sup_dist(step(m, src, u), tgt);
            if (best < 0 || dev < best_dev) {
                best = static_cast<int>(t);
                best_dev = dev;
            }
            if (static_cast<int>(t) == row.label) label_dev = dev;
        }
        json r;
        r["label"] = row.label;
        r["best_step"] = best;
        r["best_deviation"] = best_dev;
        r["label_deviation"] = label_dev;
        r["label_is_best"] = best == row.label;
        if (ours && row.label >= 0 && row.label < static_cast<int>(ours->h.size())) {
            json mine = json::array();
            Decimal vals[3] = {row.first, row.edge, row.middle};
            int comps[3] = {0, 1, n >= 4 ? 2 : 1};
            const char* names[3] = {"first", "edge", "middle"};
            for (int c = 0; c < 3; ++c) {
                int idx = input_index_of(m, comps[c], vals[c]);
                const auto& h = ours->h[row.label][comps[c]];
                json e;
                e["column"] = names[c];
                e["published"] = vals[c].str();
                e["in_synthesized_set"] =
                    idx >= 0 && std::find(h.begin(), h.end(), idx) != h.end();
                e["synthesized_set"] = inputs_cell(m, comps[c], h);
                mine.push_back(std::move(e));
            }
            r["versus_synthesized"] = std::move(mine);
        }
        rl["rows"].push_back(std::move(r));
    }
    rep["row_labels"] = std::move(rl);

    // -- published trace, replayed step by step ---------------------------
    json tr;
    tr["rows"] = json::array();
    double max_mismatch = 0;
    std::vector<RefRow> traces;
    for (const json& r : ref.at("trace_rows")) {
        RefRow row;
        row.label = r.at("t").get<int>();
        row.first = ref_dec(r, "first");
        row.edge = ref_dec(r, "edge");
        row.middle = ref_dec(r, "middle");
        traces.push_back(row);
    }
    auto row_by_label = [&](int label) -> const RefRow* {
        for (const RefRow& r : rows)
            if (r.label == label) return &r;
        return nullptr;
    };
    for (std::size_t k = 0; k + 1 < traces.size(); ++k) {
        const RefRow* u_row = row_by_label(traces[k].label % static_cast<int>(T));
        if (!u_row) continue;
        std::vector<double> x = row_values(traces[k], n);
        std::vector<double> next = step(m, x, row_values(*u_row, n));
        double mm = sup_dist(next, row_values(traces[k + 1], n));
        max_mismatch = std::max(max_mismatch, mm);
        json r;
        r["t"] = traces[k].label;
        r["replayed_next"] = next;
        r["published_next"] = row_values(traces[k + 1], n);
        r["mismatch"] = mm;
        tr["rows"].push_back(std::move(r));
    }
    tr["max_mismatch"] = max_mismatch;
    // far beyond print rounding -> the published trace cannot be replayed
    tr["replayable"] = max_mismatch <= 1e-3;
    if (max_mismatch > 1e-3)
        discrepancies.push_back("replaying the published inputs from the published states "
                                "does not reproduce the published trace");
    rep["trace_replay"] = std::move(tr);

    rep["discrepancies"] = std::move(discrepancies);
    return rep.dump(2);
}

std::string reference_report_text(const std::string& report_json) {
    json rep = json::parse(report_json);
    std::ostringstream out;
    out << "reference comparison";
    if (rep.contains("instance") && !rep["instance"].get<std::string>().empty())
        out << " (" << rep["instance"].get<std::string>() << ")";
    out << "\n\n";
    const json& ga = rep["grid_alignment"];
    out << "grid alignment, published step " << ga["claimed_eta"].get<std::string>() << ":\n";
    for (const json& v : ga["values"])
        out << "  " << v["value"].get<std::string>() << " "
            << (v["on_grid"].get<bool>() ? "on grid" : "OFF GRID") << "\n";
    if (ga.contains("pair_check"))
        out << "  pair check: " << ga["pair_check"].get<std::string>() << "\n";
    const json& rl = rep["row_labels"];
    out << "\npublished row labels:";
    for (const json& l : rl["printed_order"]) out << " " << l.get<int>();
    out << (rl["ascending"].get<bool>() ? " (ascending)" : " (NOT ascending)") << "\n";
    for (const json& r : rl["rows"]) {
        out << "  label " << r["label"].get<int>() << ": best step "
            << r["best_step"].get<int>() << " (dev " << r["best_deviation"].get<double>()
            << "), own step dev " << r["label_deviation"].get<double>() << "\n";
    }
    const json& tr = rep["trace_replay"];
    out << "\ntrace replay: max step mismatch " << tr["max_mismatch"].get<double>()
        << (tr["replayable"].get<bool>() ? " (replayable)" : " (NOT replayable)") << "\n";
    out << "\ndiscrepancies:\n";
    for (const json& d : rep["discrepancies"]) out << "  - " << d.get<std::string>() << "\n";
    if (rep["discrepancies"].empty()) out << "  none\n";
    return out.str();
}

} // namespace decsym
