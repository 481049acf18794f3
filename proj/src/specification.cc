#include "decsym/specification.hh"

#include <algorithm>
#include <stdexcept>

namespace decsym {

namespace {

void check_spec_shape(const TransitionSystem& ts) {
    ts.validate();
    if (is_empty(ts)) throw std::invalid_argument("specification has no initial state");
    if (!ts.alphabet) throw std::invalid_argument("specification needs a decimal alphabet");
    if (!is_deterministic(ts)) throw std::invalid_argument("specification must be deterministic");
    if (!(accessible_part(ts) == ts))
        throw std::invalid_argument("specification must be accessible");
    if (!is_nonblocking(ts)) throw std::invalid_argument("specification must be nonblocking");
    if (ts.marked.empty()) throw std::invalid_argument("specification marks no state");
}

TransitionSystem chain_skeleton(const std::vector<DecVec>& word) {
    if (word.empty()) throw std::invalid_argument("empty specification word");
    auto table = std::make_shared<SymbolTable>();
    TransitionSystem ts;
    ts.universe = static_cast<StateId>(word.size() + 1);
    for (StateId s = 0; s < ts.universe; ++s) {
        ts.states.push_back(s);
        ts.outputs.push_back(OutputLabel::of_tag("s" + std::to_string(s)));
    }
    for (std::size_t t = 0; t < word.size(); ++t) {
        SymbolId sym = table->intern(word[t]);
        ts.transitions.push_back({static_cast<StateId>(t), sym, static_cast<StateId>(t + 1)});
    }
    ts.num_inputs = static_cast<std::uint32_t>(table->size());
    ts.alphabet = table;
    ts.initial = {0};
    ts.marked = {static_cast<StateId>(word.size())};
    ts.normalize();
    return ts;
}

} // namespace

SpecAutomaton make_spec(TransitionSystem ts) {
    check_spec_shape(ts);
    return SpecAutomaton{std::move(ts)};
}

SpecAutomaton build_word(const std::vector<DecVec>& word) {
    return make_spec(chain_skeleton(word));
}

SpecAutomaton build_word_plus(const std::vector<DecVec>& q) {
    TransitionSystem ts = chain_skeleton(q);
    // repeat: after the marked end the word starts over at its second state
    SymbolId first = ts.alphabet->find(q[0]).value();
    ts.transitions.push_back({static_cast<StateId>(q.size()), first, 1});
    ts.normalize();
    return make_spec(std::move(ts));
}

SpecExpr SpecExpr::make_word(std::vector<DecVec> w) {
    SpecExpr e;
    e.kind = Kind::word;
    e.word = std::move(w);
    return e;
}

SpecExpr SpecExpr::make_word_plus(std::vector<DecVec> w) {
    SpecExpr e;
    e.kind = Kind::word_plus;
    e.word = std::move(w);
    return e;
}

namespace {

// every literal in the tree is interned into one shared table first, so
// combinator operands agree on symbol ids
void collect_points(const SpecExpr& e, SymbolTable& table) {
    for (const DecVec& p : e.word) table.intern(p);
    if (e.automaton && e.automaton->alphabet)
        for (SymbolId s = 0; s < e.automaton->alphabet->size(); ++s)
            table.intern(e.automaton->alphabet->point(s));
    for (const auto& c : e.children) collect_points(*c, table);
}

TransitionSystem build_node(const SpecExpr& e, const std::shared_ptr<SymbolTable>& table) {
    switch (e.kind) {
    case SpecExpr::Kind::word:
    case SpecExpr::Kind::word_plus: {
        TransitionSystem ts = e.kind == SpecExpr::Kind::word
                                  ? build_word(e.word).ts
                                  : build_word_plus(e.word).ts;
        // re-key the chain onto the shared table
        TransitionSystem out = ts;
        out.alphabet = table;
        out.num_inputs = static_cast<std::uint32_t>(table->size());
        out.transitions.clear();
        for (const Transition& t : ts.transitions)
            out.transitions.push_back(
                {t.src, table->find(ts.alphabet->point(t.input)).value(), t.dst});
        out.normalize();
        return out;
    }
    case SpecExpr::Kind::automaton: {
        if (!e.automaton) throw std::invalid_argument("empty automaton node");
        TransitionSystem ts = *e.automaton;
        if (!ts.alphabet) throw std::invalid_argument("automaton node needs a decimal alphabet");
        TransitionSystem out = ts;
        out.alphabet = table;
        out.num_inputs = static_cast<std::uint32_t>(table->size());
        out.transitions.clear();
        for (const Transition& t : ts.transitions)
            out.transitions.push_back(
                {t.src, table->find(ts.alphabet->point(t.input)).value(), t.dst});
        out.normalize();
        return out;
    }
    case SpecExpr::Kind::union_:
    case SpecExpr::Kind::concat: {
        if (e.children.size() < 2)
            throw std::invalid_argument("union/concat need at least two operands");
        TransitionSystem acc = build_node(*e.children[0], table);
        for (std::size_t i = 1; i < e.children.size(); ++i) {
            TransitionSystem rhs = build_node(*e.children[i], table);
            acc = e.kind == SpecExpr::Kind::union_ ? combine_union(acc, rhs)
                                                   : combine_concat(acc, rhs);
        }
        return acc;
    }
    case SpecExpr::Kind::star:
        if (e.children.size() != 1) throw std::invalid_argument("star is unary");
        return combine_star(build_node(*e.children[0], table));
    }
    throw std::logic_error("unhandled spec node");
}

} // namespace

SpecAutomaton build_spec(const SpecExpr& e) {
    auto table = std::make_shared<SymbolTable>();
    collect_points(e, *table);
    if (table->size() == 0) throw std::invalid_argument("specification uses no symbols");
    return make_spec(build_node(e, table));
}

std::set<InputWord> expected_words(const SpecExpr& e, const SymbolTable& table,
                                   std::size_t max_len) {
    switch (e.kind) {
    case SpecExpr::Kind::word: {
        std::set<InputWord> out;
        if (e.word.size() <= max_len) {
            InputWord w;
            for (const DecVec& p : e.word) w.push_back(table.find(p).value());
            out.insert(std::move(w));
        }
        return out;
    }
    case SpecExpr::Kind::word_plus: {
        std::set<InputWord> out;
        InputWord period;
        for (const DecVec& p : e.word) period.push_back(table.find(p).value());
        InputWord w;
        while (w.size() + period.size() <= max_len) {
            w.insert(w.end(), period.begin(), period.end());
            out.insert(w);
        }
        return out;
    }
    case SpecExpr::Kind::automaton:
        return marked_input_words(build_node(e, std::make_shared<SymbolTable>(table)), max_len);
    case SpecExpr::Kind::union_: {
        std::set<InputWord> out;
        for (const auto& c : e.children) {
            auto part = expected_words(*c, table, max_len);
            out.insert(part.begin(), part.end());
        }
        return out;
    }
    case SpecExpr::Kind::concat: {
        std::set<InputWord> acc = {{}};
        for (const auto& c : e.children) {
            auto part = expected_words(*c, table, max_len);
            std::set<InputWord> next;
            for (const InputWord& a : acc)
                for (const InputWord& b : part)
                    if (a.size() + b.size() <= max_len) {
                        InputWord w = a;
                        w.insert(w.end(), b.begin(), b.end());
                        next.insert(std::move(w));
                    }
            acc = std::move(next);
        }
        return acc;
    }
    case SpecExpr::Kind::star: {
        auto base = expected_words(*e.children[0], table, max_len);
        std::set<InputWord> out = {{}};
        bool grew = true;
        while (grew) {
            grew = false;
            std::set<InputWord> next = out;
            for (const InputWord& a : out)
                for (const InputWord& b : base)
                    if (!b.empty() && a.size() + b.size() <= max_len) {
                        InputWord w = a;
                        w.insert(w.end(), b.begin(), b.end());
                        if (next.insert(std::move(w)).second) grew = true;
                    }
            out = std::move(next);
        }
        return out;
    }
    }
    throw std::logic_error("unhandled spec node");
}

TransitionSpec to_transition_spec(const SpecAutomaton& spec) {
    const TransitionSystem& s = spec.ts;
    TransitionSpec out;
    out.housed = s.transitions; // already sorted canonically
    StateId n = static_cast<StateId>(out.housed.size());
    out.ts.universe = n;
    out.ts.num_inputs = 1;
    out.ts.outputs.resize(n);
    auto initial_mask = [&](StateId x) {
        return std::binary_search(s.initial.begin(), s.initial.end(), x);
    };
    auto marked_mask = [&](StateId x) {
        return std::binary_search(s.marked.begin(), s.marked.end(), x);
    };
    for (StateId k = 0; k < n; ++k) {
        out.ts.states.push_back(k);
        const Transition& t = out.housed[k];
        if (initial_mask(t.src)) out.ts.initial.push_back(k);
        if (marked_mask(t.dst)) out.ts.marked.push_back(k);
        out.ts.outputs[k] = OutputLabel::of_point(s.alphabet->point(t.input));
        for (StateId l = 0; l < n; ++l)
            if (out.housed[k].dst == out.housed[l].src)
                out.ts.transitions.push_back({k, 0, l});
    }
    out.ts.normalize();
    out.ts.validate();
    return out;
}

DecVec project_output(const DecVec& y, const NetworkModel& m, int i) {
    if (i < 0 || i >= m.n_comp) throw std::out_of_range("component index out of range");
    if (static_cast<int>(y.size()) != m.state_dim())
        throw std::invalid_argument("output point arity mismatch");
    return DecVec(y.begin() + m.offsets[i], y.begin() + m.offsets[i + 1]);
}

} // namespace decsym
