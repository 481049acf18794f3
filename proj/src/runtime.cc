#include "decsym/runtime.hh"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace decsym {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double sup_deviation(const std::vector<double>& x, const DecVec& q) {
    double m = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        m = std::max(m, std::abs(x[j] - q[j].to_double()));
    return m;
}

int pick_from(const std::vector<int>& cand, InputPick pick, std::mt19937_64& eng) {
    switch (pick) {
    case InputPick::min: return cand.front(); // sorted by canonical input order
    case InputPick::max: return cand.back();
    case InputPick::random: {
        std::uniform_int_distribution<std::size_t> d(0, cand.size() - 1);
        return cand[d(eng)];
    }
    }
    return cand.front();
}

std::vector<double> input_values(const NetworkModel& m, const std::vector<int>& u_idx) {
    std::vector<double> v;
    for (int i = 0; i < m.n_comp; ++i)
        v.insert(v.end(), m.inputs_dbl[i][u_idx[i]].begin(), m.inputs_dbl[i][u_idx[i]].end());
    return v;
}

} // namespace

Trace run_dec(const NetworkModel& m, const DecControllers& dc,
              const std::vector<double>& x0, InputPick pick, std::uint64_t seed) {
    if (static_cast<int>(x0.size()) != m.state_dim())
        throw std::invalid_argument("initial state arity mismatch");
    std::mt19937_64 eng(splitmix64(seed));
    Trace tr;
    std::vector<double> x = x0;
    std::size_t t_f = dc.h.size(); // chain length = word length - 1
    for (std::size_t t = 0; t <= t_f; ++t) {
        TraceRow row;
        row.t = static_cast<int>(t);
        row.x = x;
        row.q = dc.wc.word[t];
        row.deviation = sup_deviation(x, row.q);
        if (t < t_f) {
            std::vector<int> u(m.n_comp);
            for (int i = 0; i < m.n_comp; ++i) {
                if (dc.h[t][i].empty()) {
                    tr.blocked = true;
                    tr.blocked_t = static_cast<int>(t);
                    tr.blocked_comp = i;
                    tr.rows.push_back(std::move(row));
                    return tr;
                }
                u[i] = pick_from(dc.h[t][i], pick, eng);
            }
            row.u_idx = u;
            row.u_vals = input_values(m, u);
            x = step_idx(m, x, u);
        }
        tr.rows.push_back(std::move(row));
    }
    return tr;
}

Trace run_cen(const NetworkModel& m, const CenController& cc,
              const std::vector<double>& x0, InputPick pick, SuccessorPick succ,
              std::uint64_t seed, std::size_t max_steps) {
    if (static_cast<int>(x0.size()) != m.state_dim())
        throw std::invalid_argument("initial state arity mismatch");
    if (is_empty(cc.trimmed))
        throw std::invalid_argument("centralized controller has no behavior");
    std::mt19937_64 eng(splitmix64(seed));
    auto is_marked = [&](StateId s) {
        return std::binary_search(cc.trimmed.marked.begin(), cc.trimmed.marked.end(), s);
    };
    std::vector<std::vector<int>> out_edges(cc.trimmed.universe); // trimmed transition idx
    for (std::size_t k = 0; k < cc.trimmed.transitions.size(); ++k)
        out_edges[cc.trimmed.transitions[k].src].push_back(static_cast<int>(k));

    StateId s = cc.trimmed.initial.front();
    if (succ == SuccessorPick::random && cc.trimmed.initial.size() > 1) {
        std::uniform_int_distribution<std::size_t> d(0, cc.trimmed.initial.size() - 1);
        s = cc.trimmed.initial[d(eng)];
    }
    Trace tr;
    std::vector<double> x = x0;
    for (std::size_t t = 0; t < max_steps; ++t) {
        TraceRow row;
        row.t = static_cast<int>(t);
        row.x = x;
        row.q = cc.trimmed.outputs[s].point();
        row.deviation = sup_deviation(x, row.q);
        if (is_marked(s)) {
            tr.rows.push_back(std::move(row));
            return tr;
        }
        const auto& edges = out_edges[s];
        if (edges.empty()) throw std::logic_error("trimmed behavior blocks before marking");
        int e = edges.front();
        if (succ == SuccessorPick::random && edges.size() > 1) {
            std::uniform_int_distribution<std::size_t> d(0, edges.size() - 1);
            e = edges[d(eng)];
        }
        std::vector<int> u(m.n_comp);
        for (int i = 0; i < m.n_comp; ++i) {
            const auto& cand = cc.feas.candidates[cc.trans_index[e]][i];
            if (cand.empty()) {
                tr.blocked = true;
                tr.blocked_t = static_cast<int>(t);
                tr.blocked_comp = i;
                tr.rows.push_back(std::move(row));
                return tr;
            }
            u[i] = pick_from(cand, pick, eng);
        }
        row.u_idx = u;
        row.u_vals = input_values(m, u);
        x = step_idx(m, x, u);
        s = cc.trimmed.transitions[e].dst;
        tr.rows.push_back(std::move(row));
    }
    throw std::runtime_error("centralized run exceeded the step limit");
}

VerifyResult verify_enforcement(const GasCertificate& cert, const Trace& trace,
                                const std::vector<DecVec>& word, const Decimal& theta,
                                const RegionSpec& x0, const RegionSpec& xf) {
    if (trace.rows.size() != word.size())
        throw std::invalid_argument("trace and word lengths differ");
    VerifyResult r;
    if (trace.blocked) {
        r.violation = "controller blocked at t=" + std::to_string(trace.blocked_t) +
                      ", component " + std::to_string(trace.blocked_comp + 1);
        r.t = trace.blocked_t;
        return r;
    }
    if (!x0.contains(cert, trace.rows.front().x)) {
        r.violation = "initial state outside X_0";
        r.t = 0;
        return r;
    }
    double th = theta.to_double();
    for (const TraceRow& row : trace.rows)
        if (row.deviation > th) {
            r.violation = "deviation above theta";
            r.t = row.t;
            r.deviation = row.deviation;
            return r;
        }
    if (!xf.contains(cert, trace.rows.back().x)) {
        r.violation = "final state outside X_f";
        r.t = trace.rows.back().t;
        return r;
    }
    r.ok = true;
    return r;
}

std::string trace_csv(const Trace& trace) {
    std::ostringstream out;
    out.precision(17);
    if (trace.rows.empty()) return "t\n";
    std::size_t n = trace.rows.front().x.size();
    std::size_t mu = 0;
    for (const TraceRow& r : trace.rows) mu = std::max(mu, r.u_vals.size());
    out << "t";
    for (std::size_t j = 0; j < n; ++j) out << ",x" << j + 1;
    for (std::size_t j = 0; j < mu; ++j) out << ",u" << j + 1;
    for (std::size_t j = 0; j < n; ++j) out << ",q" << j + 1;
    out << ",deviation\n";
    for (const TraceRow& r : trace.rows) {
        out << r.t;
        for (double v : r.x) out << "," << v;
        for (std::size_t j = 0; j < mu; ++j) {
            out << ",";
            if (j < r.u_vals.size()) out << r.u_vals[j];
        }
        for (const Decimal& d : r.q) out << "," << d.str();
        out << "," << r.deviation << "\n";
    }
    if (trace.blocked)
        out << "# blocked at t=" << trace.blocked_t << " component "
            << trace.blocked_comp + 1 << "\n";
    return out.str();
}

std::set<Word> enforced_language(const CenController& cc, std::size_t max_len) {
    return marked_words(cc.trimmed, max_len);
}

std::vector<double> sample_region(const RegionSpec& r, const GasCertificate& cert,
                                  std::uint64_t seed, std::uint64_t index) {
    std::mt19937_64 eng(splitmix64(seed ^ splitmix64(index + 1)));
    std::vector<double> x;
    x.reserve(r.center_point.size());
    for (std::size_t j = 0; j < r.center_point.size(); ++j) {
        double c = r.center_point[j].to_double();
        // shaving a rounding margin keeps every sample strictly inside
        double rad = r.radius / cert.weight_at(static_cast<int>(j)) * (1 - 1e-9);
        std::uniform_real_distribution<double> d(c - rad, c + rad);
        x.push_back(d(eng));
    }
    return x;
}

namespace {

struct BatchSlot {
    bool ok = false;
    double deviation = 0;
    std::string violation;
};

BatchResult reduce_batch(const std::vector<BatchSlot>& slots) {
    BatchResult b;
    b.n_traces = slots.size();
    bool failed = false;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        b.max_deviation = std::max(b.max_deviation, slots[i].deviation);
        if (slots[i].ok) {
            ++b.n_ok;
        } else if (!failed) {
            failed = true;
            b.first_failure = i;
            b.first_violation = slots[i].violation;
        }
    }
    return b;
}

BatchSlot one_trace(const NetworkModel& m, const GasCertificate& cert,
                    const DecControllers& dc, std::uint64_t seed, std::uint64_t idx,
                    InputPick pick) {
    std::vector<double> x0 = sample_region(dc.x0, cert, seed, idx);
    Trace tr = run_dec(m, dc, x0, pick, splitmix64(seed) ^ idx);
    VerifyResult v = verify_enforcement(cert, tr, dc.wc.word, dc.theta, dc.x0, dc.xf);
    BatchSlot s;
    s.ok = v.ok;
    s.violation = v.violation;
    for (const TraceRow& r : tr.rows) s.deviation = std::max(s.deviation, r.deviation);
    return s;
}

} // namespace

BatchResult simulate_batch_serial(const NetworkModel& m, const GasCertificate& cert,
                                  const DecControllers& dc, std::uint64_t count,
                                  std::uint64_t seed, InputPick pick) {
    std::vector<BatchSlot> slots(count);
    for (std::uint64_t i = 0; i < count; ++i) slots[i] = one_trace(m, cert, dc, seed, i, pick);
    return reduce_batch(slots);
}

BatchResult simulate_batch(const NetworkModel& m, const GasCertificate& cert,
                           const DecControllers& dc, std::uint64_t count,
                           std::uint64_t seed, InputPick pick, int workers) {
    if (workers < 1) workers = 1;
    std::vector<BatchSlot> slots(count);
    #pragma omp parallel for schedule(static) num_threads(workers)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        slots[i] = one_trace(m, cert, dc, seed, i, pick);
    return reduce_batch(slots);
}

} // namespace decsym
