#include "decsym/abstraction.hh"

#include <stdexcept>

namespace decsym {

GridPoint symbolic_succ(const NetworkModel& m, const Quantizer& q, int i,
                        const GridPoint& xi, const std::vector<GridPoint>& w,
                        int u_index, bool* boundary_risk) {
    const auto& nbs = m.neighbors(i);
    if (w.size() != nbs.size())
        throw std::invalid_argument("neighbor cell count mismatch");
    std::vector<double> x_i = q.dequantize_dbl(i, xi);
    std::vector<double> w_flat;
    for (std::size_t j = 0; j < nbs.size(); ++j) {
        auto block = q.dequantize_dbl(nbs[j], w[j]);
        w_flat.insert(w_flat.end(), block.begin(), block.end());
    }
    return q.quantize(i, psi_eval_idx(m, i, x_i, w_flat, u_index), boundary_risk);
}

std::vector<GridPoint> network_symbolic_succ(const NetworkModel& m, const Quantizer& q,
                                             const std::vector<GridPoint>& xi,
                                             const std::vector<int>& u_idx,
                                             bool* boundary_risk) {
    if (static_cast<int>(xi.size()) != m.n_comp ||
        static_cast<int>(u_idx.size()) != m.n_comp)
        throw std::invalid_argument("need one cell and one input per component");
    std::vector<GridPoint> out(m.n_comp);
    for (int i = 0; i < m.n_comp; ++i) {
        std::vector<GridPoint> w;
        for (int j : m.neighbors(i)) w.push_back(xi[j]);
        out[i] = symbolic_succ(m, q, i, xi[i], w, u_idx[i], boundary_risk);
    }
    return out;
}

EnumeratedAbstraction enumerate_abstraction(const NetworkModel& m, const Quantizer& q,
                                            const GridBox& box, std::size_t cap) {
    if (static_cast<int>(box.range.size()) != m.n_comp)
        throw std::invalid_argument("box needs one range list per component");
    // flatten coordinate ranges; states are mixed-radix numbers over them
    std::vector<std::int64_t> lo, hi;
    for (int i = 0; i < m.n_comp; ++i) {
        if (static_cast<int>(box.range[i].size()) != m.dims[i])
            throw std::invalid_argument("box range arity mismatch");
        for (auto& [l, h] : box.range[i]) {
            if (h < l) throw std::invalid_argument("empty box range");
            lo.push_back(l);
            hi.push_back(h);
        }
    }
    std::size_t n_states = 1;
    for (std::size_t c = 0; c < lo.size(); ++c) {
        std::size_t w = static_cast<std::size_t>(hi[c] - lo[c] + 1);
        if (n_states > cap / w)
            throw std::invalid_argument("abstraction box exceeds the state cap");
        n_states *= w;
    }

    EnumeratedAbstraction out;
    auto cells_of = [&](std::size_t id) {
        std::vector<GridPoint> cells(m.n_comp);
        for (std::size_t c = lo.size(); c-- > 0;) {
            std::size_t w = static_cast<std::size_t>(hi[c] - lo[c] + 1);
            std::int64_t k = lo[c] + static_cast<std::int64_t>(id % w);
            id /= w;
            // coordinate c belongs to the component owning that offset
            int comp = 0;
            while (static_cast<std::size_t>(m.offsets[comp + 1]) <= c) ++comp;
            cells[comp].k.insert(cells[comp].k.begin(), k);
        }
        return cells;
    };
    auto id_of = [&](const std::vector<GridPoint>& cells) -> std::optional<std::size_t> {
        std::size_t id = 0, c = 0;
        for (int i = 0; i < m.n_comp; ++i)
            for (std::int64_t k : cells[i].k) {
                if (k < lo[c] || k > hi[c]) return std::nullopt;
                id = id * static_cast<std::size_t>(hi[c] - lo[c] + 1) +
                     static_cast<std::size_t>(k - lo[c]);
                ++c;
            }
        return id;
    };

    // joint input tuples in mixed-radix order over the sorted U_i
    std::size_t n_tuples = 1;
    for (int i = 0; i < m.n_comp; ++i) n_tuples *= m.inputs[i].size();
    auto table = std::make_shared<SymbolTable>();
    for (std::size_t t = 0; t < n_tuples; ++t) {
        std::vector<int> tup(m.n_comp);
        std::size_t rest = t;
        for (int i = m.n_comp; i-- > 0;) {
            tup[i] = static_cast<int>(rest % m.inputs[i].size());
            rest /= m.inputs[i].size();
        }
        DecVec concat;
        for (int i = 0; i < m.n_comp; ++i)
            for (const Decimal& d : m.inputs[i][tup[i]]) concat.push_back(d);
        table->intern(concat);
        out.input_tuples.push_back(std::move(tup));
    }

    out.ts.universe = static_cast<StateId>(n_states);
    out.ts.num_inputs = static_cast<std::uint32_t>(n_tuples);
    out.ts.alphabet = table;
    out.ts.outputs.resize(n_states);
    for (std::size_t s = 0; s < n_states; ++s) {
        out.ts.states.push_back(static_cast<StateId>(s));
        auto cells = cells_of(s);
        DecVec point;
        for (int i = 0; i < m.n_comp; ++i)
            for (const Decimal& d : q.dequantize(i, cells[i])) point.push_back(d);
        out.ts.outputs[s] = OutputLabel::of_point(std::move(point));
        out.state_cells.push_back(std::move(cells));
    }
    for (std::size_t s = 0; s < n_states; ++s)
        for (std::size_t t = 0; t < n_tuples; ++t) {
            auto succ = network_symbolic_succ(m, q, out.state_cells[s], out.input_tuples[t]);
            if (auto dst = id_of(succ))
                out.ts.transitions.push_back({static_cast<StateId>(s),
                                              static_cast<SymbolId>(t),
                                              static_cast<StateId>(*dst)});
        }
    out.ts.normalize();
    out.ts.validate();
    return out;
}

bool in_relation_mu(const GasCertificate& cert, double mu, const NetworkModel& m,
                    const Quantizer& q, const std::vector<double>& x,
                    const std::vector<GridPoint>& xi) {
    std::vector<double> c;
    for (int i = 0; i < m.n_comp; ++i) {
        auto block = q.dequantize_dbl(i, xi[i]);
        c.insert(c.end(), block.begin(), block.end());
    }
    if (c.size() != x.size()) throw std::invalid_argument("state arity mismatch");
    return cert.v(x, c) <= cert.alpha_lo.eval(mu);
}

bool RegionSpec::contains(const GasCertificate& cert, const std::vector<double>& x) const {
    std::vector<double> c;
    c.reserve(center_point.size());
    for (const Decimal& d : center_point) c.push_back(d.to_double());
    return cert.v(x, c) <= radius;
}

RegionSpec make_region(const GasCertificate& cert, double mu,
                       const std::optional<Decimal>& mu_exact, const NetworkModel& m,
                       const Quantizer& q, const std::vector<GridPoint>& center) {
    RegionSpec r;
    r.center = center;
    for (int i = 0; i < m.n_comp; ++i)
        for (const Decimal& d : q.dequantize(i, center[i])) r.center_point.push_back(d);
    r.radius = cert.alpha_lo.eval(mu);
    if (mu_exact && cert.alpha_lo.is_linear()) {
        r.radius_exact = cert.alpha_lo.linear_coeff() * *mu_exact;
        r.radius = r.radius_exact->to_double();
    }
    if (r.radius_exact) {
        DecVec lo, hi;
        bool exact = true;
        for (std::size_t j = 0; j < r.center_point.size() && exact; ++j) {
            const Decimal& w = cert.weight.size() == 1 ? cert.weight[0]
                                                       : cert.weight[j];
            if (auto rj = r.radius_exact->try_div(w)) {
                lo.push_back(r.center_point[j] - *rj);
                hi.push_back(r.center_point[j] + *rj);
            } else {
                exact = false;
            }
        }
        if (exact) {
            r.box_lo = std::move(lo);
            r.box_hi = std::move(hi);
        }
    }
    return r;
}

} // namespace decsym
