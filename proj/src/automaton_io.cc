#include "decsym/automaton_io.hh"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace decsym {

namespace {

std::string ids_line(const char* key, const std::vector<StateId>& v) {
    std::string out = key;
    for (StateId s : v) {
        out += ' ';
        out += std::to_string(s);
    }
    out += '\n';
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("automaton line " + std::to_string(line) + ": " + msg);
}

} // namespace

std::string save_automaton(const TransitionSystem& s) {
    std::string out = "automaton\n";
    out += "universe " + std::to_string(s.universe) + "\n";
    out += "inputs " + std::to_string(s.num_inputs) + "\n";
    if (s.alphabet) {
        out += "dim " + std::to_string(s.alphabet->dim()) + "\n";
        for (SymbolId i = 0; i < s.alphabet->size(); ++i)
            out += "symbol " + str(s.alphabet->point(i)) + "\n";
    }
    out += ids_line("states", s.states);
    out += ids_line("initial", s.initial);
    out += ids_line("marked", s.marked);
    for (const Transition& t : s.transitions)
        out += "trans " + std::to_string(t.src) + " " + std::to_string(t.input) +
               " " + std::to_string(t.dst) + "\n";
    for (StateId x : s.states) {
        const OutputLabel& o = s.outputs[x];
        if (o.is_point())
            out += "output " + std::to_string(x) + " point " + str(o.point()) + "\n";
        else
            out += "output " + std::to_string(x) + " tag " + o.tag() + "\n";
    }
    out += "end\n";
    return out;
}

void save_automaton_file(const TransitionSystem& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << save_automaton(s);
}

TransitionSystem load_automaton(std::istream& in) {
    TransitionSystem s;
    auto table = std::make_shared<SymbolTable>();
    bool in_block = false, done = false, has_dim = false;
    std::size_t dim = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (!in_block) {
            if (key != "automaton") fail(lineno, "expected 'automaton'");
            in_block = true;
            continue;
        }
        if (key == "end") { done = true; break; }
        if (key == "universe") {
            if (!(ls >> s.universe)) fail(lineno, "bad universe");
        } else if (key == "inputs") {
            if (!(ls >> s.num_inputs)) fail(lineno, "bad inputs");
        } else if (key == "dim") {
            if (!(ls >> dim)) fail(lineno, "bad dim");
            has_dim = true;
        } else if (key == "states" || key == "initial" || key == "marked") {
            std::vector<StateId>& v = key == "states" ? s.states
                                     : key == "initial" ? s.initial : s.marked;
            StateId id;
            while (ls >> id) v.push_back(id);
        } else if (key == "symbol") {
            DecVec p;
            std::string tok;
            while (ls >> tok) p.push_back(Decimal::parse(tok));
            if (p.size() != dim) fail(lineno, "symbol arity does not match dim");
            table->intern(p);
        } else if (key == "trans") {
            Transition t;
            if (!(ls >> t.src >> t.input >> t.dst)) fail(lineno, "bad transition");
            s.transitions.push_back(t);
        } else if (key == "output") {
            StateId x;
            std::string kind;
            if (!(ls >> x >> kind)) fail(lineno, "bad output");
            if (s.outputs.size() <= x) s.outputs.resize(x + 1);
            if (kind == "point") {
                DecVec p;
                std::string tok;
                while (ls >> tok) p.push_back(Decimal::parse(tok));
                s.outputs[x] = OutputLabel::of_point(std::move(p));
            } else if (kind == "tag") {
                std::string tag;
                std::getline(ls, tag);
                auto b = tag.find_first_not_of(" \t");
                s.outputs[x] = OutputLabel::of_tag(
                    b == std::string::npos ? std::string() : tag.substr(b));
            } else {
                fail(lineno, "output kind must be point or tag");
            }
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (!in_block || !done) throw std::invalid_argument("automaton block not closed");
    if (has_dim) s.alphabet = table;
    s.outputs.resize(s.universe);
    s.normalize();
    s.validate();
    return s;
}

TransitionSystem load_automaton_text(const std::string& text) {
    std::istringstream in(text);
    return load_automaton(in);
}

TransitionSystem load_automaton_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read " + path);
    return load_automaton(f);
}

} // namespace decsym
