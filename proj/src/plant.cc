#include "decsym/plant.hh"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace decsym {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool is_zero_vec(const DecVec& v) {
    for (const Decimal& d : v)
        if (!d.is_zero()) return false;
    return true;
}

double sup_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// shared update kernel; u given by value, membership already established
std::vector<double> psi_dispatch(const NetworkModel& m, int i,
                                 const std::vector<double>& x_i,
                                 const std::vector<double>& w,
                                 const std::vector<double>& u) {
    if (auto* tr = std::get_if<ThermalRing>(&m.dynamics)) {
        double a = tr->alpha.to_double(), b = tr->beta.to_double(),
               g = tr->gamma.to_double(), te = tr->t_ext.to_double(),
               th = tr->t_heat.to_double();
        double t = x_i[0];
        return {t + a * (w[0] + w[1] - 2 * t) + b * (te - t) + g * (th - t) * u[0]};
    }
    const LinearCoupled* lin = std::get_if<LinearCoupled>(&m.dynamics);
    const ControlAffineCoupled* aff = std::get_if<ControlAffineCoupled>(&m.dynamics);
    if (lin || aff) {
        const LinearCoupled& d = lin ? *lin : aff->drift;
        int ni = m.dims[i];
        std::vector<double> acc = d.offset[i];
        auto add_block = [&](const Matrix& blk, const double* xs) {
            for (int r = 0; r < blk.rows; ++r)
                for (int c = 0; c < blk.cols; ++c) acc[r] += blk.at(r, c) * xs[c];
        };
        auto self = d.blocks[i].find(i);
        if (self != d.blocks[i].end()) add_block(self->second, x_i.data());
        int wpos = 0;
        for (int j : m.neighbors(i)) {
            add_block(d.blocks[i].at(j), w.data() + wpos);
            wpos += m.dims[j];
        }
        if (lin) {
            add_block(d.gain[i], u.data());
        } else {
            Matrix gain = aff->gain0[i];
            if (!aff->gain1[i].empty())
                for (int k = 0; k < ni; ++k)
                    for (int r = 0; r < gain.rows; ++r)
                        for (int c = 0; c < gain.cols; ++c)
                            gain.at(r, c) += x_i[k] * aff->gain1[i][k].at(r, c);
            add_block(gain, u.data());
        }
        return acc;
    }
    return std::get<ExternDynamics>(m.dynamics).psi(i, x_i, w, u);
}

int find_input_index(const NetworkModel& m, int i, const double* u) {
    const auto& cands = m.inputs_dbl[i];
    for (std::size_t k = 0; k < cands.size(); ++k) {
        bool eq = true;
        for (std::size_t c = 0; c < cands[k].size(); ++c) eq = eq && cands[k][c] == u[c];
        if (eq) return static_cast<int>(k);
    }
    throw std::invalid_argument("input value not in U_" + std::to_string(i + 1));
}

} // namespace

void NetworkModel::finalize() {
    if (n_comp <= 0) throw std::invalid_argument("model needs at least one component");
    if (static_cast<int>(dims.size()) != n_comp ||
        static_cast<int>(input_dims.size()) != n_comp ||
        static_cast<int>(inputs.size()) != n_comp)
        throw std::invalid_argument("per-component arrays must have length N");
    offsets.assign(1, 0);
    for (int i = 0; i < n_comp; ++i) {
        if (dims[i] <= 0 || input_dims[i] <= 0)
            throw std::invalid_argument("state and input dimensions must be positive");
        offsets.push_back(offsets.back() + dims[i]);
    }

    inputs_dbl.assign(n_comp, {});
    for (int i = 0; i < n_comp; ++i) {
        auto& ui = inputs[i];
        if (ui.empty()) throw std::invalid_argument("U_" + std::to_string(i + 1) + " is empty");
        std::sort(ui.begin(), ui.end(), &decvec_less);
        bool has_zero = false;
        for (std::size_t k = 0; k < ui.size(); ++k) {
            if (ui[k].size() != static_cast<std::size_t>(input_dims[i]))
                throw std::invalid_argument("input arity mismatch in U_" + std::to_string(i + 1));
            if (k && cmp(ui[k - 1], ui[k]) == 0)
                throw std::invalid_argument("duplicate input in U_" + std::to_string(i + 1));
            has_zero = has_zero || is_zero_vec(ui[k]);
            std::vector<double> d;
            for (const Decimal& c : ui[k]) d.push_back(c.to_double());
            inputs_dbl[i].push_back(std::move(d));
        }
        if (!has_zero)
            throw std::invalid_argument("U_" + std::to_string(i + 1) + " must contain the zero input");
    }

    neighbor_lists.assign(n_comp, {});
    if (auto* tr = std::get_if<ThermalRing>(&dynamics)) {
        if (n_comp < 3) throw std::invalid_argument("thermal ring needs N >= 3");
        for (int i = 0; i < n_comp; ++i)
            if (dims[i] != 1 || input_dims[i] != 1)
                throw std::invalid_argument("thermal ring components are scalar");
        if (!(tr->alpha > Decimal()) || !(tr->beta > Decimal()) || !(tr->gamma > Decimal()))
            throw std::invalid_argument("thermal ring coefficients must be positive");
        for (int i = 0; i < n_comp; ++i) {
            int left = (i + n_comp - 1) % n_comp, right = (i + 1) % n_comp;
            neighbor_lists[i] = {std::min(left, right), std::max(left, right)};
        }
    } else if (auto* lin = std::get_if<LinearCoupled>(&dynamics)) {
        if (static_cast<int>(lin->blocks.size()) != n_comp ||
            static_cast<int>(lin->gain.size()) != n_comp ||
            static_cast<int>(lin->offset.size()) != n_comp)
            throw std::invalid_argument("linear dynamics arrays must have length N");
        for (int i = 0; i < n_comp; ++i) {
            for (auto& [j, blk] : lin->blocks[i]) {
                if (j < 0 || j >= n_comp) throw std::invalid_argument("block index out of range");
                if (blk.rows != dims[i] || blk.cols != dims[j])
                    throw std::invalid_argument("block shape mismatch");
                if (j != i) neighbor_lists[i].push_back(j);
            }
            if (lin->gain[i].rows != dims[i] || lin->gain[i].cols != input_dims[i])
                throw std::invalid_argument("gain shape mismatch");
            if (static_cast<int>(lin->offset[i].size()) != dims[i])
                throw std::invalid_argument("offset shape mismatch");
            std::sort(neighbor_lists[i].begin(), neighbor_lists[i].end());
        }
    } else if (auto* aff = std::get_if<ControlAffineCoupled>(&dynamics)) {
        const LinearCoupled& d = aff->drift;
        if (static_cast<int>(d.blocks.size()) != n_comp ||
            static_cast<int>(d.offset.size()) != n_comp ||
            static_cast<int>(aff->gain0.size()) != n_comp ||
            static_cast<int>(aff->gain1.size()) != n_comp)
            throw std::invalid_argument("affine dynamics arrays must have length N");
        for (int i = 0; i < n_comp; ++i) {
            for (auto& [j, blk] : d.blocks[i]) {
                if (j < 0 || j >= n_comp) throw std::invalid_argument("block index out of range");
                if (blk.rows != dims[i] || blk.cols != dims[j])
                    throw std::invalid_argument("block shape mismatch");
                if (j != i) neighbor_lists[i].push_back(j);
            }
            if (aff->gain0[i].rows != dims[i] || aff->gain0[i].cols != input_dims[i])
                throw std::invalid_argument("gain0 shape mismatch");
            if (!aff->gain1[i].empty() &&
                static_cast<int>(aff->gain1[i].size()) != dims[i])
                throw std::invalid_argument("gain1 needs one matrix per local coordinate");
            for (const Matrix& g1 : aff->gain1[i])
                if (g1.rows != dims[i] || g1.cols != input_dims[i])
                    throw std::invalid_argument("gain1 shape mismatch");
            if (static_cast<int>(d.offset[i].size()) != dims[i])
                throw std::invalid_argument("offset shape mismatch");
            std::sort(neighbor_lists[i].begin(), neighbor_lists[i].end());
        }
    } else {
        auto& ex = std::get<ExternDynamics>(dynamics);
        if (!ex.psi) throw std::invalid_argument("extern dynamics without update function");
        if (static_cast<int>(ex.neighbors.size()) != n_comp)
            throw std::invalid_argument("extern dynamics must declare neighbor lists");
        for (int i = 0; i < n_comp; ++i) {
            auto nb = ex.neighbors[i];
            for (int j : nb)
                if (j < 0 || j >= n_comp || j == i)
                    throw std::invalid_argument("bad neighbor declaration");
            if (!std::is_sorted(nb.begin(), nb.end()))
                throw std::invalid_argument("neighbor lists must be ascending");
            neighbor_lists[i] = std::move(nb);
        }
    }
}

const std::vector<int>& NetworkModel::neighbors(int i) const {
    if (i < 0 || i >= n_comp) throw std::out_of_range("component index out of range");
    return neighbor_lists[i];
}

std::vector<double> psi_eval(const NetworkModel& m, int i, const std::vector<double>& x_i,
                             const std::vector<double>& w_i, const std::vector<double>& u_i) {
    if (i < 0 || i >= m.n_comp) throw std::out_of_range("component index out of range");
    if (static_cast<int>(x_i.size()) != m.dims[i])
        throw std::invalid_argument("state block arity mismatch");
    std::size_t wlen = 0;
    for (int j : m.neighbors(i)) wlen += m.dims[j];
    if (w_i.size() != wlen) throw std::invalid_argument("neighbor block arity mismatch");
    if (static_cast<int>(u_i.size()) != m.input_dims[i])
        throw std::invalid_argument("input arity mismatch");
    find_input_index(m, i, u_i.data());
    return psi_dispatch(m, i, x_i, w_i, u_i);
}

std::vector<double> psi_eval_idx(const NetworkModel& m, int i, const std::vector<double>& x_i,
                                 const std::vector<double>& w_i, int u_index) {
    if (u_index < 0 || u_index >= static_cast<int>(m.inputs_dbl[i].size()))
        throw std::out_of_range("input index out of range");
    return psi_dispatch(m, i, x_i, w_i, m.inputs_dbl[i][u_index]);
}

std::vector<double> gather_neighbors(const NetworkModel& m, int i, const std::vector<double>& x) {
    std::vector<double> w;
    for (int j : m.neighbors(i))
        w.insert(w.end(), x.begin() + m.offsets[j], x.begin() + m.offsets[j + 1]);
    return w;
}

std::vector<double> step(const NetworkModel& m, const std::vector<double>& x,
                         const std::vector<double>& u) {
    if (static_cast<int>(x.size()) != m.state_dim())
        throw std::invalid_argument("state arity mismatch");
    std::size_t m_total = 0;
    for (int i = 0; i < m.n_comp; ++i) m_total += m.input_dims[i];
    if (u.size() != m_total) throw std::invalid_argument("input arity mismatch");
    std::vector<double> next;
    next.reserve(x.size());
    std::size_t upos = 0;
    for (int i = 0; i < m.n_comp; ++i) {
        std::vector<double> xi(x.begin() + m.offsets[i], x.begin() + m.offsets[i + 1]);
        std::vector<double> ui(u.begin() + upos, u.begin() + upos + m.input_dims[i]);
        upos += m.input_dims[i];
        find_input_index(m, i, ui.data());
        auto xn = psi_dispatch(m, i, xi, gather_neighbors(m, i, x), ui);
        next.insert(next.end(), xn.begin(), xn.end());
    }
    return next;
}

std::vector<double> step_idx(const NetworkModel& m, const std::vector<double>& x,
                             const std::vector<int>& u_idx) {
    if (static_cast<int>(u_idx.size()) != m.n_comp)
        throw std::invalid_argument("need one input index per component");
    std::vector<double> next;
    next.reserve(x.size());
    for (int i = 0; i < m.n_comp; ++i) {
        std::vector<double> xi(x.begin() + m.offsets[i], x.begin() + m.offsets[i + 1]);
        auto xn = psi_eval_idx(m, i, xi, gather_neighbors(m, i, x), u_idx[i]);
        next.insert(next.end(), xn.begin(), xn.end());
    }
    return next;
}

void GasCertificate::validate(int state_dim) const {
    if (weight.size() != 1 && weight.size() != static_cast<std::size_t>(state_dim))
        throw std::invalid_argument("weight vector must have size 1 or n");
    for (const Decimal& w : weight)
        if (!(w > Decimal())) throw std::invalid_argument("weights must be positive");
}

double GasCertificate::weight_at(int j) const {
    return (weight.size() == 1 ? weight[0] : weight[j]).to_double();
}

double GasCertificate::v(const std::vector<double>& x, const std::vector<double>& y) const {
    double m = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
        m = std::max(m, weight_at(static_cast<int>(j)) * std::abs(x[j] - y[j]));
    return m;
}

Decimal thermal_contraction(const Decimal& alpha, const Decimal& beta, const Decimal& gamma) {
    Decimal one(1, 0);
    Decimal base = one - alpha.mul_int(2) - beta;
    Decimal a1 = (base - gamma).abs(), a2 = base.abs();
    return (a1 > a2 ? a1 : a2) + alpha.mul_int(2);
}

namespace {

struct Sample {
    std::vector<double> x, x2, x3, u_vals;
    std::vector<int> u_idx;
};

Sample draw_sample(const NetworkModel& m, const std::vector<double>& lo,
                   const std::vector<double>& hi, std::uint64_t seed, std::uint64_t idx) {
    std::mt19937_64 eng(splitmix64(seed ^ splitmix64(idx + 1)));
    Sample s;
    auto draw_point = [&] {
        std::vector<double> p(lo.size());
        for (std::size_t j = 0; j < lo.size(); ++j) {
            std::uniform_real_distribution<double> d(lo[j], hi[j]);
            p[j] = d(eng);
        }
        return p;
    };
    s.x = draw_point();
    s.x2 = draw_point();
    s.x3 = draw_point();
    for (int i = 0; i < m.n_comp; ++i) {
        std::uniform_int_distribution<int> d(0, static_cast<int>(m.inputs_dbl[i].size()) - 1);
        int k = d(eng);
        s.u_idx.push_back(k);
        s.u_vals.insert(s.u_vals.end(), m.inputs_dbl[i][k].begin(), m.inputs_dbl[i][k].end());
    }
    return s;
}

// checks one sample; fills r and returns true on violation
bool check_sample(const NetworkModel& m, const GasCertificate& cert, const Sample& s,
                  std::uint64_t idx, FalsifyResult& r) {
    auto violated = [&](const char* cond, double lhs, double rhs) {
        double tol = 1e-9 * std::max(1.0, std::abs(rhs));
        if (lhs <= rhs + tol) return false;
        r.found = true;
        r.sample_index = idx;
        r.condition = cond;
        r.x = s.x;
        r.x2 = s.x2;
        r.x3 = s.x3;
        r.u = s.u_vals;
        r.lhs = lhs;
        r.rhs = rhs;
        return true;
    };
    double dist = sup_dist(s.x, s.x2);
    double vv = cert.v(s.x, s.x2);
    if (violated("lower-bound", cert.alpha_lo.eval(dist), vv)) return true;
    if (violated("upper-bound", vv, cert.alpha_hi.eval(dist))) return true;
    auto xp = step_idx(m, s.x, s.u_idx);
    auto x2p = step_idx(m, s.x2, s.u_idx);
    if (violated("decrease", cert.v(xp, x2p) - vv, -cert.rho.eval(vv))) return true;
    double lhs = std::abs(cert.v(s.x, s.x2) - cert.v(s.x, s.x3));
    if (violated("v-continuity", lhs, cert.sigma.eval(sup_dist(s.x2, s.x3)))) return true;
    return false;
}

} // namespace

FalsifyResult falsify_certificate_serial(const NetworkModel& m, const GasCertificate& cert,
                                         const std::vector<double>& lo,
                                         const std::vector<double>& hi,
                                         std::uint64_t samples, std::uint64_t seed) {
    FalsifyResult r;
    for (std::uint64_t idx = 0; idx < samples; ++idx) {
        Sample s = draw_sample(m, lo, hi, seed, idx);
        if (check_sample(m, cert, s, idx, r)) {
            r.samples_run = idx + 1;
            return r;
        }
    }
    r.samples_run = samples;
    return r;
}

FalsifyResult falsify_certificate(const NetworkModel& m, const GasCertificate& cert,
                                  const std::vector<double>& lo,
                                  const std::vector<double>& hi,
                                  std::uint64_t samples, std::uint64_t seed, int workers) {
    if (workers < 1) workers = 1;
    std::vector<FalsifyResult> local(workers);
    // samples are seeded by index, so sharding cannot change what any one
    // sample sees; keeping the lowest violating index matches the serial scan
    #pragma omp parallel for schedule(static) num_threads(workers)
    for (long long idx = 0; idx < static_cast<long long>(samples); ++idx) {
        FalsifyResult& mine = local[omp_get_thread_num()];
        if (mine.found && mine.sample_index < static_cast<std::uint64_t>(idx)) continue;
        Sample s = draw_sample(m, lo, hi, seed, idx);
        FalsifyResult cand;
        if (check_sample(m, cert, s, idx, cand))
            if (!mine.found || cand.sample_index < mine.sample_index) mine = cand;
    }
    FalsifyResult best;
    for (const FalsifyResult& r : local)
        if (r.found && (!best.found || r.sample_index < best.sample_index)) best = r;
    best.samples_run = best.found ? best.sample_index + 1 : samples;
    return best;
}

QuantBound quantization_bound(const GasCertificate& cert, const Decimal& mu) {
    QuantBound out;
    out.value = quantization_bound(cert, mu.to_double()).value;
    if (cert.alpha_lo.is_linear() && cert.alpha_hi.is_linear() && cert.rho.is_linear() &&
        cert.sigma.is_linear()) {
        Decimal a = cert.alpha_lo.linear_coeff() * mu;
        auto v1 = (cert.rho.linear_coeff() * a).try_div(cert.sigma.linear_coeff());
        auto v2 = a.try_div(cert.alpha_hi.linear_coeff());
        if (v1 && v2) {
            out.exact = *v1 < *v2 ? *v1 : *v2;
            out.value = out.exact->to_double();
        }
    }
    return out;
}

QuantBound quantization_bound(const GasCertificate& cert, double mu) {
    QuantBound out;
    double a = cert.alpha_lo.eval(mu);
    out.value = std::min(cert.sigma.inv(cert.rho.eval(a)), cert.alpha_hi.inv(a));
    return out;
}

namespace {

// descending k*10^e ladder, k in {1, 2, 2.5, 5}
std::vector<Decimal> nice_ladder() {
    std::vector<Decimal> v;
    for (int e = 3; e >= -9; --e) {
        v.emplace_back(5, e);
        v.emplace_back(25, e - 1);
        v.emplace_back(2, e);
        v.emplace_back(1, e);
    }
    return v;
}

bool leq_bound(const Decimal& cand, const QuantBound& b) {
    if (b.exact) return cand <= *b.exact;
    return cand.to_double() <= b.value * (1 + 1e-12);
}

const Decimal* divisibility_gap(const Decimal& eta, const std::vector<Decimal>& coords) {
    for (const Decimal& c : coords)
        if (!eta.divides(c)) return &c;
    return nullptr;
}

} // namespace

AccuracyPlan accuracy_plan(const GasCertificate& cert, const Decimal& theta,
                           const std::vector<Decimal>& spec_coords, PlanMode mode) {
    AccuracyPlan plan;
    if (!(theta > Decimal())) {
        plan.binding = "accuracy theta must be positive";
        return plan;
    }
    if (mode == PlanMode::aligned) {
        plan.mu_exact = theta;
        plan.mu = theta.to_double();
        plan.bound = quantization_bound(cert, theta);
    } else {
        double th = theta.to_double();
        if (quantization_bound(cert, th).value <= 0) {
            plan.binding = "quantization bound vanishes at mu = theta";
            return plan;
        }
        double lo = 0, hi = th;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            double g = mid + quantization_bound(cert, mid).value / 2;
            (g <= th ? lo : hi) = mid;
        }
        plan.mu = lo;
        plan.bound = quantization_bound(cert, lo);
    }
    if (plan.bound.value <= 0) {
        plan.binding = "quantization bound nonpositive at chosen mu";
        return plan;
    }
    if (mode == PlanMode::aligned && plan.bound.exact) {
        if (const Decimal* c = divisibility_gap(*plan.bound.exact, spec_coords))
            plan.notes.push_back("bound " + plan.bound.exact->str() +
                                 " itself is not grid-compatible: coordinate " + c->str() +
                                 " is not a multiple");
    }
    for (const Decimal& cand : nice_ladder()) {
        if (!leq_bound(cand, plan.bound)) continue;
        if (mode == PlanMode::aligned) {
            if (const Decimal* c = divisibility_gap(cand, spec_coords)) {
                plan.notes.push_back("candidate " + cand.str() + " rejected: coordinate " +
                                     c->str() + " is not a multiple");
                continue;
            }
        }
        plan.eta = cand;
        plan.feasible = true;
        break;
    }
    if (!plan.feasible) {
        plan.binding = mode == PlanMode::aligned
                           ? "no nice decimal <= bound divides every specification coordinate"
                           : "no nice decimal <= bound above the search floor";
        return plan;
    }
    if (auto bad = validate_accuracy(cert, theta, plan.mu, plan.eta, spec_coords, mode)) {
        plan.feasible = false;
        plan.binding = *bad;
    }
    return plan;
}

std::optional<std::string> validate_accuracy(const GasCertificate& cert, const Decimal& theta,
                                             double mu, const Decimal& eta,
                                             const std::vector<Decimal>& spec_coords,
                                             PlanMode mode) {
    if (!(eta > Decimal())) return "eta must be positive";
    if (mu <= 0 || mu > theta.to_double() * (1 + 1e-12))
        return "mu must lie in (0, theta]";
    QuantBound b = quantization_bound(cert, mu);
    bool ok = b.exact ? eta <= *b.exact : eta.to_double() <= b.value * (1 + 1e-12);
    if (!ok)
        return "eta " + eta.str() + " exceeds the quantization bound at mu";
    if (mode == PlanMode::split) {
        if (mu + eta.to_double() / 2 > theta.to_double() * (1 + 1e-12))
            return "accuracy margin violated: mu + eta/2 > theta";
    } else {
        if (const Decimal* c = divisibility_gap(eta, spec_coords))
            return "specification coordinate " + c->str() + " is not on the eta grid";
    }
    return std::nullopt;
}

} // namespace decsym
