#include "decsym/config.hh"

#include "decsym/automaton_io.hh"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace decsym {

namespace {

struct Line {
    int no = 0;
    std::vector<std::string> tok;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream ls(raw);
        Line l;
        l.no = no;
        std::string t;
        while (ls >> t) l.tok.push_back(t);
        if (!l.tok.empty()) out.push_back(std::move(l));
    }
    return out;
}

Decimal dec(const std::string& origin, const Line& l, std::size_t k) {
    if (k >= l.tok.size()) fail(origin, l.no, "missing value");
    try {
        return Decimal::parse(l.tok[k]);
    } catch (const std::invalid_argument& e) {
        fail(origin, l.no, std::string("bad decimal '") + l.tok[k] + "': " + e.what());
    }
}

double num(const std::string& origin, const Line& l, std::size_t k) {
    if (k >= l.tok.size()) fail(origin, l.no, "missing value");
    try {
        std::size_t used = 0;
        double v = std::stod(l.tok[k], &used);
        if (used != l.tok[k].size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        fail(origin, l.no, "bad number '" + l.tok[k] + "'");
    }
}

long integer(const std::string& origin, const Line& l, std::size_t k) {
    if (k >= l.tok.size()) fail(origin, l.no, "missing value");
    try {
        std::size_t used = 0;
        long v = std::stol(l.tok[k], &used);
        if (used != l.tok[k].size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        fail(origin, l.no, "bad integer '" + l.tok[k] + "'");
    }
}

// 1-based component index from the file, 0-based in the API
int comp_index(const std::string& origin, const Line& l, std::size_t k, int n_comp) {
    long v = integer(origin, l, k);
    if (v < 1 || v > n_comp) fail(origin, l.no, "component index out of range");
    return static_cast<int>(v - 1);
}

KinfFn parse_kinf(const std::string& origin, const Line& l) {
    if (l.tok.size() < 2) fail(origin, l.no, "missing function form");
    const std::string& form = l.tok[1];
    if (form == "linear") return KinfFn::linear(dec(origin, l, 2));
    if (form == "power") return KinfFn::power(num(origin, l, 2), num(origin, l, 3));
    if (form == "table") {
        std::vector<std::pair<double, double>> pts;
        if ((l.tok.size() - 2) % 2 != 0) fail(origin, l.no, "table needs (s, v) pairs");
        for (std::size_t k = 2; k + 1 < l.tok.size(); k += 2)
            pts.emplace_back(num(origin, l, k), num(origin, l, k + 1));
        try {
            return KinfFn::table(std::move(pts));
        } catch (const std::invalid_argument& e) {
            fail(origin, l.no, e.what());
        }
    }
    fail(origin, l.no, "unknown function form '" + form + "'");
}

GasCertificate parse_certificate(const std::string& origin, const std::vector<Line>& lines,
                                 std::size_t& at) {
    GasCertificate c;
    bool have[4] = {false, false, false, false};
    for (++at; at < lines.size(); ++at) {
        const Line& l = lines[at];
        const std::string& k = l.tok[0];
        if (k == "end") {
            if (c.weight.empty()) fail(origin, l.no, "certificate is missing weight");
            for (int j = 0; j < 4; ++j)
                if (!have[j]) fail(origin, l.no, "certificate block is incomplete");
            ++at;
            return c;
        }
        if (k == "weight") {
            for (std::size_t j = 1; j < l.tok.size(); ++j) c.weight.push_back(dec(origin, l, j));
            if (c.weight.empty()) fail(origin, l.no, "weight needs at least one value");
        } else if (k == "alpha_lo") {
            c.alpha_lo = parse_kinf(origin, l);
            have[0] = true;
        } else if (k == "alpha_hi") {
            c.alpha_hi = parse_kinf(origin, l);
            have[1] = true;
        } else if (k == "rho") {
            c.rho = parse_kinf(origin, l);
            have[2] = true;
        } else if (k == "sigma") {
            c.sigma = parse_kinf(origin, l);
            have[3] = true;
        } else {
            fail(origin, l.no, "unknown certificate key '" + k + "'");
        }
    }
    throw std::runtime_error(origin + ": certificate block never ends");
}

std::vector<DecVec> grid_points(const std::string& origin, const Line& l, std::size_t k) {
    Decimal start = dec(origin, l, k), step = dec(origin, l, k + 1), stop = dec(origin, l, k + 2);
    if (!(Decimal(0, 0) < step)) fail(origin, l.no, "grid step must be positive");
    if (stop < start) fail(origin, l.no, "empty grid");
    std::vector<DecVec> pts;
    for (Decimal v = start; !(stop < v); v = v + step) pts.push_back(DecVec{v});
    return pts;
}

} // namespace

PlantFile parse_plant_text(const std::string& text, const std::string& origin) {
    std::vector<Line> lines = tokenize(text);
    PlantFile pf;
    bool have_plant = false;
    std::size_t at = 0;
    while (at < lines.size()) {
        const Line& head = lines[at];
        if (head.tok[0] == "certificate") {
            if (pf.cert) fail(origin, head.no, "duplicate certificate block");
            pf.cert = parse_certificate(origin, lines, at);
            continue;
        }
        if (head.tok[0] != "plant" || head.tok.size() < 2)
            fail(origin, head.no, "expected a 'plant <kind>' or 'certificate' block");
        if (have_plant) fail(origin, head.no, "duplicate plant block");
        have_plant = true;
        const std::string kind = head.tok[1];

        NetworkModel& m = pf.model;
        ThermalRing ring{Decimal::parse("0.45"), Decimal::parse("0.045"),
                         Decimal::parse("0.09"), Decimal::parse("-1"), Decimal::parse("50")};
        LinearCoupled lin;
        ControlAffineCoupled aff;
        bool sized = false;
        auto need_size = [&](const Line& l) {
            if (!sized) fail(origin, l.no, "components/dims must come first");
        };
        auto mat = [&](const Line& l, std::size_t k, int r, int c) {
            Matrix out(r, c);
            if (l.tok.size() != k + std::size_t(r) * c)
                fail(origin, l.no, "expected " + std::to_string(r * c) + " matrix entries");
            for (int idx = 0; idx < r * c; ++idx)
                out.a[idx] = num(origin, l, k + idx);
            return out;
        };

        bool closed = false;
        for (++at; at < lines.size() && !closed; ++at) {
            const Line& l = lines[at];
            const std::string& key = l.tok[0];
            if (key == "end") {
                closed = true;
                break;
            }
            if (kind == "thermal_ring") {
                if (key == "rooms" || key == "n") {
                    long n = integer(origin, l, 1);
                    if (n < 3) fail(origin, l.no, "the ring needs at least 3 rooms");
                    m.n_comp = static_cast<int>(n);
                    m.dims.assign(m.n_comp, 1);
                    m.input_dims.assign(m.n_comp, 1);
                    m.inputs.resize(m.n_comp);
                    sized = true;
                } else if (key == "alpha") ring.alpha = dec(origin, l, 1);
                else if (key == "beta") ring.beta = dec(origin, l, 1);
                else if (key == "gamma") ring.gamma = dec(origin, l, 1);
                else if (key == "t_ext") ring.t_ext = dec(origin, l, 1);
                else if (key == "t_heat") ring.t_heat = dec(origin, l, 1);
                else if (key == "input_grid") {
                    need_size(l);
                    auto pts = grid_points(origin, l, 1);
                    for (auto& u : m.inputs) u = pts;
                } else if (key == "input_list") {
                    need_size(l);
                    std::vector<DecVec> pts;
                    for (std::size_t j = 1; j < l.tok.size(); ++j)
                        pts.push_back(DecVec{dec(origin, l, j)});
                    for (auto& u : m.inputs) u = pts;
                } else fail(origin, l.no, "unknown thermal_ring key '" + key + "'");
                continue;
            }
            // linear_coupled and control_affine share the shape keys
            if (key == "components") {
                long n = integer(origin, l, 1);
                if (n < 1) fail(origin, l.no, "need at least one component");
                m.n_comp = static_cast<int>(n);
                m.inputs.resize(m.n_comp);
            } else if (key == "dims") {
                if (m.n_comp == 0) fail(origin, l.no, "components must come first");
                if (l.tok.size() != std::size_t(m.n_comp) + 1)
                    fail(origin, l.no, "need one dim per component");
                m.dims.clear();
                for (int i = 0; i < m.n_comp; ++i)
                    m.dims.push_back(static_cast<int>(integer(origin, l, 1 + i)));
            } else if (key == "input_dims") {
                if (m.n_comp == 0) fail(origin, l.no, "components must come first");
                if (l.tok.size() != std::size_t(m.n_comp) + 1)
                    fail(origin, l.no, "need one input dim per component");
                m.input_dims.clear();
                for (int i = 0; i < m.n_comp; ++i)
                    m.input_dims.push_back(static_cast<int>(integer(origin, l, 1 + i)));
                sized = !m.dims.empty();
                if (sized) {
                    lin.blocks.resize(m.n_comp);
                    lin.gain.resize(m.n_comp);
                    lin.offset.resize(m.n_comp);
                    aff.gain0.resize(m.n_comp);
                    aff.gain1.resize(m.n_comp);
                    for (int i = 0; i < m.n_comp; ++i) {
                        lin.gain[i] = Matrix(m.dims[i], m.input_dims[i]);
                        lin.offset[i].assign(m.dims[i], 0.0);
                        aff.gain0[i] = Matrix(m.dims[i], m.input_dims[i]);
                        aff.gain1[i].assign(m.dims[i], Matrix(m.dims[i], m.input_dims[i]));
                    }
                }
            } else if (key == "block" || key == "edge") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                int j = comp_index(origin, l, 2, m.n_comp);
                lin.blocks[i][j] = key == "edge" ? Matrix(m.dims[i], m.dims[j])
                                                 : mat(l, 3, m.dims[i], m.dims[j]);
            } else if (key == "gain") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                lin.gain[i] = mat(l, 2, m.dims[i], m.input_dims[i]);
            } else if (key == "gain0") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                aff.gain0[i] = mat(l, 2, m.dims[i], m.input_dims[i]);
            } else if (key == "gain1") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                long k = integer(origin, l, 2);
                if (k < 1 || k > m.dims[i]) fail(origin, l.no, "state coordinate out of range");
                aff.gain1[i][k - 1] = mat(l, 3, m.dims[i], m.input_dims[i]);
            } else if (key == "offset") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                if (l.tok.size() != std::size_t(m.dims[i]) + 2)
                    fail(origin, l.no, "need one offset entry per state coordinate");
                lin.offset[i].clear();
                for (int r = 0; r < m.dims[i]; ++r)
                    lin.offset[i].push_back(num(origin, l, 2 + r));
            } else if (key == "inputs") {
                need_size(l);
                int i = comp_index(origin, l, 1, m.n_comp);
                if (l.tok.size() < 3) fail(origin, l.no, "inputs needs grid/list/point");
                const std::string& mode = l.tok[2];
                if (mode == "grid") {
                    if (m.input_dims[i] != 1) fail(origin, l.no, "grid inputs must be scalar");
                    m.inputs[i] = grid_points(origin, l, 3);
                } else if (mode == "list") {
                    if (m.input_dims[i] != 1) fail(origin, l.no, "list inputs must be scalar");
                    m.inputs[i].clear();
                    for (std::size_t j = 3; j < l.tok.size(); ++j)
                        m.inputs[i].push_back(DecVec{dec(origin, l, j)});
                } else if (mode == "point") {
                    if (l.tok.size() != std::size_t(m.input_dims[i]) + 3)
                        fail(origin, l.no, "point arity mismatch");
                    DecVec p;
                    for (int j = 0; j < m.input_dims[i]; ++j) p.push_back(dec(origin, l, 3 + j));
                    m.inputs[i].push_back(std::move(p));
                } else fail(origin, l.no, "unknown inputs mode '" + mode + "'");
            } else {
                fail(origin, l.no, "unknown " + kind + " key '" + key + "'");
            }
        }
        if (!closed) throw std::runtime_error(origin + ": plant block never ends");
        ++at;

        if (!sized) throw std::runtime_error(origin + ": plant block never sized");
        if (kind == "thermal_ring") {
            m.dynamics = ring;
        } else if (kind == "linear_coupled") {
            m.dynamics = lin;
        } else if (kind == "control_affine") {
            aff.drift = lin;
            m.dynamics = aff;
        } else {
            fail(origin, head.no, "unknown plant kind '" + kind + "'");
        }
        try {
            m.finalize();
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(origin + ": " + e.what());
        }
    }
    if (!have_plant) throw std::runtime_error(origin + ": no plant block");
    if (pf.cert) {
        try {
            pf.cert->validate(pf.model.state_dim());
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(origin + ": " + e.what());
        }
    }
    return pf;
}

PlantFile load_plant_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plant file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plant_text(buf.str(), path);
}

namespace {

SpecExpr node_from(const std::string& origin, const Line& l, std::size_t from,
                   const std::map<std::string, SpecExpr>& named);

SpecExpr named_node(const std::string& origin, const Line& l, const std::string& name,
                    const std::map<std::string, SpecExpr>& named) {
    auto it = named.find(name);
    if (it == named.end()) fail(origin, l.no, "unknown name '" + name + "'");
    return it->second;
}

SpecExpr node_from(const std::string& origin, const Line& l, std::size_t from,
                   const std::map<std::string, SpecExpr>& named) {
    if (from >= l.tok.size()) fail(origin, l.no, "missing expression");
    const std::string& op = l.tok[from];
    auto args = [&](std::size_t at_least) {
        if (l.tok.size() - from - 1 < at_least)
            fail(origin, l.no, "'" + op + "' needs more arguments");
    };
    if (op == "word" || op == "word_plus") {
        args(1);
        SpecExpr base = named_node(origin, l, l.tok[from + 1], named);
        if (base.kind != SpecExpr::Kind::word)
            fail(origin, l.no, "'" + op + "' takes a word literal");
        return op == "word" ? base : SpecExpr::make_word_plus(base.word);
    }
    if (op == "star") {
        args(1);
        SpecExpr e;
        e.kind = SpecExpr::Kind::star;
        e.children.push_back(
            std::make_shared<SpecExpr>(named_node(origin, l, l.tok[from + 1], named)));
        return e;
    }
    if (op == "union" || op == "concat") {
        args(2);
        SpecExpr e;
        e.kind = op == "union" ? SpecExpr::Kind::union_ : SpecExpr::Kind::concat;
        for (std::size_t k = from + 1; k < l.tok.size(); ++k)
            e.children.push_back(
                std::make_shared<SpecExpr>(named_node(origin, l, l.tok[k], named)));
        return e;
    }
    // a bare name refers to an already defined node
    if (l.tok.size() == from + 1) return named_node(origin, l, op, named);
    fail(origin, l.no, "unknown operator '" + op + "'");
}

} // namespace

SpecExpr parse_spec_text(const std::string& text, const std::string& origin) {
    std::vector<Line> lines = tokenize(text);
    std::map<std::string, SpecExpr> named;
    std::optional<SpecExpr> top;
    std::size_t at = 0;
    while (at < lines.size()) {
        const Line& head = lines[at];
        const std::string& key = head.tok[0];
        if (key == "word") {
            if (head.tok.size() != 2) fail(origin, head.no, "word needs a name");
            std::vector<DecVec> w;
            bool closed = false;
            for (++at; at < lines.size(); ++at) {
                const Line& l = lines[at];
                if (l.tok[0] == "end") {
                    closed = true;
                    ++at;
                    break;
                }
                DecVec p;
                for (std::size_t j = 0; j < l.tok.size(); ++j) p.push_back(dec(origin, l, j));
                if (!w.empty() && w.back().size() != p.size())
                    fail(origin, l.no, "word rows must share one dimension");
                w.push_back(std::move(p));
            }
            if (!closed) throw std::runtime_error(origin + ": word block never ends");
            if (w.empty()) fail(origin, head.no, "empty word literal");
            named[head.tok[1]] = SpecExpr::make_word(std::move(w));
        } else if (key == "automaton") {
            if (head.tok.size() != 2) fail(origin, head.no, "automaton needs a name");
            std::ostringstream body;
            body << "automaton\n";
            bool closed = false;
            for (++at; at < lines.size(); ++at) {
                const Line& l = lines[at];
                if (l.tok.size() == 1 && l.tok[0] == "end") {
                    closed = true;
                    ++at;
                    break;
                }
                for (std::size_t j = 0; j < l.tok.size(); ++j)
                    body << (j ? " " : "") << l.tok[j];
                body << "\n";
            }
            if (!closed) throw std::runtime_error(origin + ": automaton block never ends");
            body << "end\n";
            SpecExpr e;
            e.kind = SpecExpr::Kind::automaton;
            try {
                e.automaton =
                    std::make_shared<TransitionSystem>(load_automaton_text(body.str()));
            } catch (const std::invalid_argument& err) {
                throw std::runtime_error(origin + ": embedded automaton: " + err.what());
            }
            named[head.tok[1]] = std::move(e);
        } else if (key == "expr") {
            if (head.tok.size() < 3) fail(origin, head.no, "expr needs a name and a body");
            named[head.tok[1]] = node_from(origin, head, 2, named);
            ++at;
        } else if (key == "top") {
            if (top) fail(origin, head.no, "duplicate top");
            top = node_from(origin, head, 1, named);
            ++at;
        } else {
            fail(origin, head.no, "unknown key '" + key + "'");
        }
    }
    if (!top) throw std::runtime_error(origin + ": no top expression");
    return *top;
}

SpecExpr load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str(), path);
}

ProjectConfig parse_project_text(const std::string& text, const std::string& origin) {
    ProjectConfig cfg;
    cfg.origin = origin;
    bool have_theta = false;
    for (const Line& l : tokenize(text)) {
        const std::string& key = l.tok[0];
        auto one = [&]() -> const std::string& {
            if (l.tok.size() < 2) fail(origin, l.no, "'" + key + "' needs a value");
            return l.tok[1];
        };
        if (key == "plant") cfg.plant_path = one();
        else if (key == "spec") cfg.spec_path = one();
        else if (key == "theta") {
            cfg.theta = dec(origin, l, 1);
            have_theta = true;
        } else if (key == "plan") {
            const std::string& v = one();
            if (v == "aligned") cfg.plan = PlanChoice::aligned;
            else if (v == "split") cfg.plan = PlanChoice::split;
            else if (v == "explicit") {
                cfg.plan = PlanChoice::explicit_pair;
                cfg.mu_explicit = dec(origin, l, 2);
                cfg.eta_explicit = dec(origin, l, 3);
            } else fail(origin, l.no, "plan must be aligned, split or explicit");
        } else if (key == "mode") {
            const std::string& v = one();
            if (v == "dec") cfg.mode = RunMode::dec;
            else if (v == "cen") cfg.mode = RunMode::cen;
            else if (v == "both") cfg.mode = RunMode::both;
            else fail(origin, l.no, "mode must be dec, cen or both");
        } else if (key == "word") {
            const std::string& v = one();
            if (v == "shortest") cfg.word.kind = WordSelect::Kind::shortest;
            else if (v == "unroll") {
                cfg.word.kind = WordSelect::Kind::unroll;
                cfg.word.arg = static_cast<int>(integer(origin, l, 2));
                if (cfg.word.arg < 1) fail(origin, l.no, "unroll count must be positive");
            } else if (v == "index") {
                cfg.word.kind = WordSelect::Kind::index;
                cfg.word.arg = static_cast<int>(integer(origin, l, 2));
                if (cfg.word.arg < 0) fail(origin, l.no, "word index must be nonnegative");
            } else fail(origin, l.no, "word must be shortest, unroll or index");
        } else if (key == "preset") {
            const std::string& v = one();
            if (v != "center" && v != "corner")
                fail(origin, l.no, "preset must be center or corner");
            cfg.preset = v;
        } else if (key == "samples") {
            cfg.samples = static_cast<std::uint64_t>(integer(origin, l, 1));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(integer(origin, l, 1));
        } else if (key == "outdir") cfg.outdir = one();
        else if (key == "reference") cfg.reference = one();
        else if (key == "falsify") {
            cfg.falsify_samples = static_cast<std::uint64_t>(integer(origin, l, 1));
            if (l.tok.size() > 2) {
                cfg.falsify_lo = num(origin, l, 2);
                cfg.falsify_hi = num(origin, l, 3);
                if (!(cfg.falsify_lo < cfg.falsify_hi))
                    fail(origin, l.no, "empty falsification box");
            }
        } else if (key == "slack") {
            cfg.slack = static_cast<int>(integer(origin, l, 1));
            if (cfg.slack < 0) fail(origin, l.no, "slack must be nonnegative");
        } else {
            fail(origin, l.no, "unknown key '" + key + "'");
        }
    }
    if (cfg.plant_path.empty()) throw std::runtime_error(origin + ": missing plant path");
    if (cfg.spec_path.empty()) throw std::runtime_error(origin + ": missing spec path");
    if (!have_theta) throw std::runtime_error(origin + ": missing theta");
    if (!(Decimal(0, 0) < cfg.theta))
        throw std::runtime_error(origin + ": theta must be positive");
    return cfg;
}

ProjectConfig load_project_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open project file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_project_text(buf.str(), path);
}

std::string resolve_path(const ProjectConfig& cfg, const std::string& p) {
    if (p.empty() || p.front() == '/') return p;
    auto slash = cfg.origin.find_last_of('/');
    if (slash == std::string::npos) return p;
    return cfg.origin.substr(0, slash + 1) + p;
}

} // namespace decsym
