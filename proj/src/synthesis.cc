#include "decsym/synthesis.hh"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>

namespace decsym {

namespace {

// quantized spec slices: cells[k][i] is the cell of component i under the
// point emitted by spec state k
struct SpecCells {
    std::vector<std::vector<GridPoint>> cells;
    bool boundary_risk = false;
};

SpecCells quantize_spec(const NetworkModel& m, const Quantizer& q, const TransitionSpec& sq) {
    SpecCells out;
    out.cells.resize(sq.ts.universe);
    for (StateId k : sq.ts.states) {
        const DecVec& y = sq.ts.outputs[k].point();
        out.cells[k].resize(m.n_comp);
        for (int i = 0; i < m.n_comp; ++i) {
            DecVec slice = project_output(y, m, i);
            std::vector<double> z;
            for (const Decimal& d : slice) z.push_back(d.to_double());
            out.cells[k][i] = q.quantize(i, z, &out.boundary_risk);
        }
    }
    return out;
}

// equality up to `slack` cells per coordinate (slack 0 is equality)
bool within_cells(const GridPoint& a, const GridPoint& b, int slack) {
    if (a.k.size() != b.k.size()) return false;
    for (std::size_t j = 0; j < a.k.size(); ++j)
        if (std::llabs(a.k[j] - b.k[j]) > slack) return false;
    return true;
}

std::vector<int> candidates_for(const NetworkModel& m, const Quantizer& q,
                                const SpecCells& sc, const Transition& t, int i,
                                int slack) {
    std::vector<GridPoint> w;
    for (int j : m.neighbors(i)) w.push_back(sc.cells[t.src][j]);
    const GridPoint& target = sc.cells[t.dst][i];
    std::vector<int> cand;
    for (std::size_t u = 0; u < m.inputs[i].size(); ++u)
        if (within_cells(symbolic_succ(m, q, i, sc.cells[t.src][i], w, static_cast<int>(u)),
                         target, slack))
            cand.push_back(static_cast<int>(u));
    return cand;
}

void assemble(const TransitionSpec& sq, ControlledSpec& cs) {
    std::size_t n_trans = sq.ts.transitions.size();
    cs.retained.assign(n_trans, 1);
    for (std::size_t t = 0; t < n_trans; ++t)
        for (const auto& cand : cs.feas.candidates[t])
            if (cand.empty()) {
                cs.retained[t] = 0;
                break;
            }
    cs.full = sq.ts;
    cs.full.transitions.clear();
    for (std::size_t t = 0; t < n_trans; ++t)
        if (cs.retained[t]) cs.full.transitions.push_back(sq.ts.transitions[t]);
    cs.trimmed = trim(cs.full);
}

std::uint64_t sum_inputs(const NetworkModel& m) {
    std::uint64_t s = 0;
    for (int i = 0; i < m.n_comp; ++i) s += m.inputs[i].size();
    return s;
}

} // namespace

std::vector<int> indicator_candidates(const NetworkModel& m, const Quantizer& q,
                                      const TransitionSpec& sq, int trans_idx, int comp,
                                      int slack) {
    if (trans_idx < 0 || trans_idx >= static_cast<int>(sq.ts.transitions.size()))
        throw std::out_of_range("spec transition index out of range");
    if (comp < 0 || comp >= m.n_comp) throw std::out_of_range("component index out of range");
    SpecCells sc = quantize_spec(m, q, sq);
    return candidates_for(m, q, sc, sq.ts.transitions[trans_idx], comp, slack);
}

bool ControlledSpec::same_result(const ControlledSpec& o) const {
    return full == o.full && trimmed == o.trimmed && feas == o.feas &&
           retained == o.retained && centralized == o.centralized &&
           eval_count == o.eval_count && nominal_count == o.nominal_count &&
           boundary_risk == o.boundary_risk && slack == o.slack;
}

ControlledSpec synthesize_dec_serial(const NetworkModel& m, const Quantizer& q,
                                     const TransitionSpec& sq, int slack) {
    double t0 = omp_get_wtime();
    ControlledSpec cs;
    cs.slack = slack;
    SpecCells sc = quantize_spec(m, q, sq);
    cs.boundary_risk = sc.boundary_risk;
    std::size_t n_trans = sq.ts.transitions.size();
    cs.feas.candidates.assign(n_trans, std::vector<std::vector<int>>(m.n_comp));
    for (std::size_t t = 0; t < n_trans; ++t)
        for (int i = 0; i < m.n_comp; ++i)
            cs.feas.candidates[t][i] = candidates_for(m, q, sc, sq.ts.transitions[t], i, slack);
    cs.eval_count = n_trans * sum_inputs(m);
    cs.nominal_count = BigCount(cs.eval_count);
    assemble(sq, cs);
    cs.wall_seconds = omp_get_wtime() - t0;
    return cs;
}

ControlledSpec synthesize_dec(const NetworkModel& m, const Quantizer& q,
                              const TransitionSpec& sq, int workers, int slack) {
    if (workers < 1) workers = 1;
    double t0 = omp_get_wtime();
    ControlledSpec cs;
    cs.slack = slack;
    SpecCells sc = quantize_spec(m, q, sq);
    cs.boundary_risk = sc.boundary_risk;
    std::size_t n_trans = sq.ts.transitions.size();
    cs.feas.candidates.assign(n_trans, std::vector<std::vector<int>>(m.n_comp));
    // one slot per (transition, component): writes never overlap, so the
    // result cannot depend on the worker count
    long long flat = static_cast<long long>(n_trans) * m.n_comp;
    #pragma omp parallel for schedule(static) num_threads(workers)
    for (long long f = 0; f < flat; ++f) {
        std::size_t t = static_cast<std::size_t>(f) / m.n_comp;
        int i = static_cast<int>(f % m.n_comp);
        cs.feas.candidates[t][i] = candidates_for(m, q, sc, sq.ts.transitions[t], i, slack);
    }
    cs.eval_count = n_trans * sum_inputs(m);
    cs.nominal_count = BigCount(cs.eval_count);
    assemble(sq, cs);
    cs.wall_seconds = omp_get_wtime() - t0;
    cs.workers = workers;
    return cs;
}

ControlledSpec synthesize_cen(const NetworkModel& m, const Quantizer& q,
                              const TransitionSpec& sq, int workers, bool literal,
                              std::uint64_t literal_cap, int slack) {
    ControlledSpec cs = synthesize_dec(m, q, sq, workers, slack);
    cs.centralized = true;
    std::size_t n_trans = sq.ts.transitions.size();
    cs.nominal_count = BigCount(n_trans);
    for (int i = 0; i < m.n_comp; ++i) cs.nominal_count.mul(m.inputs[i].size());
    if (!literal) return cs;

    std::uint64_t tuples = 1;
    for (int i = 0; i < m.n_comp; ++i) {
        if (tuples > literal_cap / m.inputs[i].size() + 1)
            throw std::invalid_argument("joint input set too large for literal mode");
        tuples *= m.inputs[i].size();
    }
    if (tuples > literal_cap)
        throw std::invalid_argument("joint input set too large for literal mode");

    SpecCells sc = quantize_spec(m, q, sq);
    std::uint64_t literal_evals = 0;
    for (std::size_t t = 0; t < n_trans; ++t) {
        const Transition& tr = sq.ts.transitions[t];
        bool any = false;
        for (std::uint64_t tup = 0; tup < tuples; ++tup) {
            std::vector<int> u(m.n_comp);
            std::uint64_t rest = tup;
            for (int i = m.n_comp; i-- > 0;) {
                u[i] = static_cast<int>(rest % m.inputs[i].size());
                rest /= m.inputs[i].size();
            }
            bool joint = true, factored = true;
            for (int i = 0; i < m.n_comp && (joint || factored); ++i) {
                std::vector<GridPoint> w;
                for (int j : m.neighbors(i)) w.push_back(sc.cells[tr.src][j]);
                joint = joint && within_cells(symbolic_succ(m, q, i, sc.cells[tr.src][i],
                                                            w, u[i]),
                                              sc.cells[tr.dst][i], slack);
                const auto& cand = cs.feas.candidates[t][i];
                factored = factored && std::binary_search(cand.begin(), cand.end(), u[i]);
            }
            if (joint != factored)
                throw std::logic_error("joint admissible set disagrees with factored form");
            any = any || joint;
            ++literal_evals;
        }
        if (any != static_cast<bool>(cs.retained[t]))
            throw std::logic_error("joint feasibility disagrees with retained set");
    }
    cs.eval_count = literal_evals;
    return cs;
}

namespace {

std::vector<std::vector<Transition>> adjacency(const TransitionSystem& ts) {
    std::vector<std::vector<Transition>> adj(ts.universe);
    for (const Transition& t : ts.transitions) adj[t.src].push_back(t);
    return adj;
}

int spec_transition_index(const TransitionSpec& sq, const Transition& t) {
    auto it = std::lower_bound(sq.ts.transitions.begin(), sq.ts.transitions.end(), t);
    if (it == sq.ts.transitions.end() || !(*it == t))
        throw std::logic_error("transition missing from the specification");
    return static_cast<int>(it - sq.ts.transitions.begin());
}

WordChoice package_path(const TransitionSpec& sq, const std::vector<StateId>& path) {
    WordChoice wc;
    wc.sq_path = path;
    for (StateId s : path) wc.word.push_back(sq.ts.outputs[s].point());
    for (std::size_t t = 0; t + 1 < path.size(); ++t)
        wc.sq_trans_path.push_back(spec_transition_index(sq, {path[t], 0, path[t + 1]}));
    wc.chain.universe = static_cast<StateId>(path.size());
    wc.chain.num_inputs = 1;
    for (StateId s = 0; s < wc.chain.universe; ++s) {
        wc.chain.states.push_back(s);
        wc.chain.outputs.push_back(OutputLabel::of_point(wc.word[s]));
        if (s + 1 < wc.chain.universe) wc.chain.transitions.push_back({s, 0, s + 1});
    }
    wc.chain.initial = {0};
    wc.chain.marked = {wc.chain.universe - 1};
    wc.chain.normalize();
    return wc;
}

// breadth-first layers processed in ascending state id; the first parent
// written is therefore the smallest, which pins the choice deterministically
std::optional<std::vector<StateId>> shortest_marked_path(const TransitionSystem& ts) {
    if (ts.initial.empty()) return std::nullopt;
    auto adj = adjacency(ts);
    std::vector<int> dist(ts.universe, -1);
    std::vector<StateId> parent(ts.universe, 0);
    std::vector<StateId> layer = ts.initial; // sorted
    for (StateId x : layer) dist[x] = 0;
    auto marked_in = [&](const std::vector<StateId>& l) -> std::optional<StateId> {
        for (StateId x : l)
            if (std::binary_search(ts.marked.begin(), ts.marked.end(), x)) return x;
        return std::nullopt;
    };
    int depth = 0;
    while (!layer.empty()) {
        if (auto hit = marked_in(layer)) {
            std::vector<StateId> path(depth + 1);
            StateId cur = *hit;
            for (int d = depth; d >= 0; --d) {
                path[d] = cur;
                cur = parent[cur];
            }
            return path;
        }
        std::vector<StateId> next;
        for (StateId x : layer)
            for (const Transition& t : adj[x])
                if (dist[t.dst] < 0) {
                    dist[t.dst] = depth + 1;
                    parent[t.dst] = x;
                    next.push_back(t.dst);
                }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        layer = std::move(next);
        ++depth;
    }
    return std::nullopt;
}

// layered search counting arrivals at marked states; stops at the r-th
std::optional<std::vector<StateId>> unroll_path(const TransitionSystem& ts, int r) {
    if (r < 1 || ts.initial.empty()) return std::nullopt;
    auto adj = adjacency(ts);
    auto is_marked = [&](StateId x) {
        return std::binary_search(ts.marked.begin(), ts.marked.end(), x);
    };
    using Node = std::pair<StateId, int>; // (state, marked arrivals so far)
    std::map<Node, Node> parent;
    std::map<Node, int> dist;
    std::vector<Node> layer;
    for (StateId x : ts.initial) {
        Node n{x, is_marked(x) ? 1 : 0};
        if (!dist.count(n)) {
            dist[n] = 0;
            parent[n] = n;
            layer.push_back(n);
        }
    }
    int depth = 0;
    while (!layer.empty()) {
        for (const Node& n : layer)
            if (n.second == r && is_marked(n.first)) {
                std::vector<StateId> path(depth + 1);
                Node cur = n;
                for (int d = depth; d >= 0; --d) {
                    path[d] = cur.first;
                    cur = parent[cur];
                }
                return path;
            }
        std::vector<Node> next;
        for (const Node& n : layer)
            for (const Transition& t : adj[n.first]) {
                int c = n.second + (is_marked(t.dst) ? 1 : 0);
                if (c > r) continue;
                Node m{t.dst, c};
                if (!dist.count(m)) {
                    dist[m] = depth + 1;
                    parent[m] = n;
                    next.push_back(m);
                }
            }
        std::sort(next.begin(), next.end());
        layer = std::move(next);
        ++depth;
    }
    return std::nullopt;
}

// k-th word of the marked output language in length-lexicographic order,
// realized by its smallest state-id path
std::optional<std::vector<StateId>> indexed_path(const TransitionSystem& ts, int k) {
    if (k < 0 || ts.initial.empty()) return std::nullopt;
    auto adj = adjacency(ts);
    auto is_marked = [&](StateId x) {
        return std::binary_search(ts.marked.begin(), ts.marked.end(), x);
    };
    std::size_t cap_len = static_cast<std::size_t>(k + 2) * std::max<std::size_t>(ts.universe, 1) + 2;
    int skipped = 0;
    for (std::size_t len = 1; len <= cap_len; ++len) {
        std::map<Word, std::vector<StateId>> found; // word -> smallest path
        std::vector<StateId> path;
        Word word;
        auto dfs = [&](auto&& self, StateId x) -> void {
            path.push_back(x);
            word.push_back(ts.outputs[x]);
            if (path.size() == len) {
                if (is_marked(x)) {
                    auto it = found.find(word);
                    if (it == found.end() || path < it->second) found[word] = path;
                }
            } else {
                for (const Transition& t : adj[x]) self(self, t.dst);
            }
            path.pop_back();
            word.pop_back();
        };
        for (StateId x : ts.initial) dfs(dfs, x);
        if (k - skipped < static_cast<int>(found.size())) {
            auto it = found.begin();
            std::advance(it, k - skipped);
            return it->second;
        }
        skipped += static_cast<int>(found.size());
    }
    return std::nullopt;
}

} // namespace

std::optional<WordChoice> select_word(const TransitionSpec& sq, const ControlledSpec& cs,
                                      WordPolicy policy, int param) {
    std::optional<std::vector<StateId>> path;
    switch (policy) {
    case WordPolicy::shortest: path = shortest_marked_path(cs.trimmed); break;
    case WordPolicy::unroll: path = unroll_path(cs.trimmed, param); break;
    case WordPolicy::index: path = indexed_path(cs.trimmed, param); break;
    }
    if (!path) return std::nullopt;
    return package_path(sq, *path);
}

DecControllers extract_dec_controllers(const NetworkModel& m, const Quantizer& q,
                                       const GasCertificate& cert, double mu,
                                       const std::optional<Decimal>& mu_exact,
                                       const Decimal& theta, const TransitionSpec& sq,
                                       const ControlledSpec& cs, const WordChoice& wc) {
    DecControllers dc;
    dc.wc = wc;
    dc.mu = mu;
    dc.mu_exact = mu_exact;
    dc.eta = q.etas();
    dc.theta = theta;
    SpecCells sc = quantize_spec(m, q, sq);
    for (std::size_t t = 0; t < wc.sq_trans_path.size(); ++t) {
        int ti = wc.sq_trans_path[t];
        if (!cs.retained[ti])
            throw std::invalid_argument("chain transition missing from the feasibility table");
        const Transition& tr = sq.ts.transitions[ti];
        std::vector<std::vector<int>> row;
        for (int i = 0; i < m.n_comp; ++i) {
            const auto& cand = cs.feas.candidates[ti][i];
            if (cand.empty())
                throw std::invalid_argument("chain transition missing from the feasibility table");
            // replay each admissible input before trusting the stored set
            std::vector<GridPoint> w;
            for (int j : m.neighbors(i)) w.push_back(sc.cells[tr.src][j]);
            for (int u : cand)
                if (!within_cells(symbolic_succ(m, q, i, sc.cells[tr.src][i], w, u),
                                  sc.cells[tr.dst][i], cs.slack))
                    throw std::logic_error("stored candidate fails replay");
            row.push_back(cand);
        }
        dc.h.push_back(std::move(row));
    }
    dc.x0 = make_region(cert, mu, mu_exact, m, q, sc.cells[wc.sq_path.front()]);
    dc.xf = make_region(cert, mu, mu_exact, m, q, sc.cells[wc.sq_path.back()]);
    return dc;
}

CenController extract_cen_controller(const NetworkModel& m, const Quantizer& q,
                                     const GasCertificate& cert, double mu,
                                     const std::optional<Decimal>& mu_exact,
                                     const Decimal& theta, const TransitionSpec& sq,
                                     const ControlledSpec& cs) {
    CenController cc;
    cc.trimmed = cs.trimmed;
    cc.feas = cs.feas;
    cc.mu = mu;
    cc.mu_exact = mu_exact;
    cc.eta = q.etas();
    cc.theta = theta;
    for (const Transition& t : cs.trimmed.transitions)
        cc.trans_index.push_back(spec_transition_index(sq, t));
    SpecCells sc = quantize_spec(m, q, sq);
    for (StateId s : cs.trimmed.initial)
        cc.x0.push_back(make_region(cert, mu, mu_exact, m, q, sc.cells[s]));
    for (StateId s : cs.trimmed.marked)
        cc.xf.push_back(make_region(cert, mu, mu_exact, m, q, sc.cells[s]));
    return cc;
}

StaticCheck check_static_feedback(const NetworkModel& m, const DecControllers& dc) {
    StaticCheck out;
    const auto& q = dc.wc.word;
    // incremental map point -> (successor, latest defining position)
    std::map<DecVec, std::pair<DecVec, int>, bool (*)(const DecVec&, const DecVec&)>
        succ_of(&decvec_less);
    for (std::size_t t = 0; t + 1 < q.size(); ++t) {
        auto it = succ_of.find(q[t]);
        if (it == succ_of.end()) {
            succ_of.emplace(q[t], std::make_pair(q[t + 1], static_cast<int>(t)));
            continue;
        }
        if (cmp(it->second.first, q[t + 1]) != 0) {
            out.witness_t = it->second.second;
            out.witness_tp = static_cast<int>(t);
            return out;
        }
        it->second.second = static_cast<int>(t);
    }
    out.ok = true;
    out.maps.resize(m.n_comp);
    std::set<DecVec, bool (*)(const DecVec&, const DecVec&)> emitted(&decvec_less);
    for (std::size_t t = 0; t + 1 < q.size(); ++t) {
        if (!emitted.insert(q[t]).second) {
            // repeated point: identical successor implies identical input sets
            for (int i = 0; i < m.n_comp; ++i) {
                int first = -1;
                for (const StaticEntry& e : out.maps[i])
                    if (cmp(project_output(q[t], m, i), e.center) == 0 &&
                        e.inputs == dc.h[t][i])
                        first = e.t;
                if (first < 0) throw std::logic_error("static map is not well defined");
            }
            continue;
        }
        for (int i = 0; i < m.n_comp; ++i) {
            StaticEntry e;
            e.t = static_cast<int>(t);
            e.center = project_output(q[t], m, i);
            for (int j : m.neighbors(i)) e.neighbor_centers.push_back(project_output(q[t], m, j));
            e.inputs = dc.h[t][i];
            out.maps[i].push_back(std::move(e));
        }
    }
    return out;
}

std::vector<DiagnosisEntry> diagnose(const NetworkModel& m, const Quantizer& q,
                                     const TransitionSpec& sq, const ControlledSpec& cs) {
    std::vector<DiagnosisEntry> out;
    SpecCells sc = quantize_spec(m, q, sq);
    for (std::size_t t = 0; t < sq.ts.transitions.size(); ++t) {
        if (cs.retained[t]) continue;
        const Transition& tr = sq.ts.transitions[t];
        for (int i = 0; i < m.n_comp; ++i) {
            if (!cs.feas.candidates[t][i].empty()) continue;
            DiagnosisEntry e;
            e.trans_idx = static_cast<int>(t);
            e.component = i;
            e.target_cell = sc.cells[tr.dst][i].k;
            std::vector<GridPoint> w;
            for (int j : m.neighbors(i)) w.push_back(sc.cells[tr.src][j]);
            std::set<std::vector<std::int64_t>> cells;
            std::vector<std::vector<double>> values; // continuous successors
            for (std::size_t u = 0; u < m.inputs[i].size(); ++u) {
                GridPoint g = symbolic_succ(m, q, i, sc.cells[tr.src][i], w,
                                            static_cast<int>(u));
                cells.insert(g.k);
                values.push_back(psi_eval_idx(m, i, q.dequantize_dbl(i, sc.cells[tr.src][i]),
                                              [&] {
                                                  std::vector<double> wf;
                                                  for (std::size_t jj = 0; jj < w.size(); ++jj) {
                                                      auto b = q.dequantize_dbl(
                                                          m.neighbors(i)[jj], w[jj]);
                                                      wf.insert(wf.end(), b.begin(), b.end());
                                                  }
                                                  return wf;
                                              }(),
                                              static_cast<int>(u)));
            }
            e.achievable_cells.assign(cells.begin(), cells.end());
            e.min_cell_distance = -1;
            for (const auto& c : e.achievable_cells) {
                std::int64_t d = 0;
                for (std::size_t j = 0; j < c.size(); ++j)
                    d = std::max<std::int64_t>(d, std::llabs(c[j] - e.target_cell[j]));
                if (e.min_cell_distance < 0 || d < e.min_cell_distance)
                    e.min_cell_distance = d;
            }
            // spacing of the reachable continuous values, per coordinate
            bool in_hull = true;
            double max_gap = 0;
            DecVec target_center = q.dequantize(i, sc.cells[tr.dst][i]);
            for (int c = 0; c < m.dims[i]; ++c) {
                std::vector<double> vs;
                for (const auto& v : values) vs.push_back(v[c]);
                std::sort(vs.begin(), vs.end());
                for (std::size_t j = 1; j < vs.size(); ++j)
                    max_gap = std::max(max_gap, vs[j] - vs[j - 1]);
                double tc = target_center[c].to_double();
                in_hull = in_hull && tc >= vs.front() - q.eta(i).to_double() / 2 &&
                          tc <= vs.back() + q.eta(i).to_double() / 2;
            }
            e.max_gap = max_gap;
            if (!in_hull) {
                e.suggestion = "target cell lies outside the reachable range of U_" +
                               std::to_string(i + 1) +
                               "; enlarge the input set or revisit the specification";
            } else {
                e.suggestion = "no input lands in the target cell: successor spacing up to " +
                               std::to_string(max_gap) + " exceeds the cell width " +
                               q.eta(i).str() + "; refine U_" + std::to_string(i + 1) +
                               " or coarsen the grid to at least that spacing";
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace decsym
