#include "decsym/transition_system.hh"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace decsym {

namespace {

void sort_unique(std::vector<StateId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<StateId>& sorted, StateId x) {
    return std::binary_search(sorted.begin(), sorted.end(), x);
}

std::vector<char> member_mask(const std::vector<StateId>& ids, StateId universe) {
    std::vector<char> m(universe, 0);
    for (StateId s : ids) m[s] = 1;
    return m;
}

std::vector<std::vector<const Transition*>> out_index(const TransitionSystem& s) {
    std::vector<std::vector<const Transition*>> idx(s.universe);
    for (const Transition& t : s.transitions) idx[t.src].push_back(&t);
    return idx;
}

std::vector<char> forward_reach(const TransitionSystem& s) {
    auto idx = out_index(s);
    std::vector<char> seen(s.universe, 0);
    std::deque<StateId> queue;
    for (StateId x : s.initial) {
        seen[x] = 1;
        queue.push_back(x);
    }
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        for (const Transition* t : idx[x])
            if (!seen[t->dst]) {
                seen[t->dst] = 1;
                queue.push_back(t->dst);
            }
    }
    return seen;
}

std::vector<char> backward_reach(const TransitionSystem& s) {
    std::vector<std::vector<StateId>> rev(s.universe);
    for (const Transition& t : s.transitions) rev[t.dst].push_back(t.src);
    std::vector<char> seen(s.universe, 0);
    std::deque<StateId> queue;
    for (StateId x : s.marked) {
        seen[x] = 1;
        queue.push_back(x);
    }
    while (!queue.empty()) {
        StateId x = queue.front();
        queue.pop_front();
        for (StateId p : rev[x])
            if (!seen[p]) {
                seen[p] = 1;
                queue.push_back(p);
            }
    }
    return seen;
}

std::vector<OutputLabel> fresh_tags(StateId universe, const char* prefix) {
    std::vector<OutputLabel> out(universe);
    for (StateId i = 0; i < universe; ++i)
        out[i] = OutputLabel::of_tag(prefix + std::to_string(i));
    return out;
}

void require_same_alphabet(const TransitionSystem& a, const TransitionSystem& b) {
    if (a.num_inputs != b.num_inputs)
        throw std::invalid_argument("combine: input alphabet sizes differ");
    bool ha = a.alphabet != nullptr, hb = b.alphabet != nullptr;
    if (ha != hb || (ha && !(*a.alphabet == *b.alphabet)))
        throw std::invalid_argument("combine: operands do not share a symbol table");
}

} // namespace

SymbolId SymbolTable::intern(const DecVec& p) {
    if (!points_.empty() && p.size() != points_[0].size())
        throw std::invalid_argument("symbol dimension mismatch");
    auto it = index_.find(p);
    if (it != index_.end()) return it->second;
    SymbolId id = static_cast<SymbolId>(points_.size());
    points_.push_back(p);
    index_.emplace(p, id);
    return id;
}

std::optional<SymbolId> SymbolTable::find(const DecVec& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const DecVec& SymbolTable::point(SymbolId id) const {
    if (id >= points_.size()) throw std::out_of_range("symbol id out of range");
    return points_[id];
}

bool SymbolTable::operator==(const SymbolTable& o) const {
    if (points_.size() != o.points_.size()) return false;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (cmp(points_[i], o.points_[i]) != 0) return false;
    return true;
}

bool OutputLabel::operator==(const OutputLabel& o) const {
    if (v.index() != o.v.index()) return false;
    if (is_point()) return cmp(point(), o.point()) == 0;
    return tag() == o.tag();
}

bool OutputLabel::operator<(const OutputLabel& o) const {
    if (v.index() != o.v.index()) return v.index() < o.v.index();
    if (is_point()) return cmp(point(), o.point()) < 0;
    return tag() < o.tag();
}

std::string OutputLabel::str() const {
    return is_point() ? decsym::str(point()) : tag();
}

void TransitionSystem::normalize() {
    sort_unique(states);
    sort_unique(initial);
    sort_unique(marked);
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()),
                      transitions.end());
}

void TransitionSystem::validate() const {
    for (StateId s : states)
        if (s >= universe) throw std::invalid_argument("state id outside universe");
    for (StateId s : initial)
        if (!contains(states, s)) throw std::invalid_argument("initial state not in state set");
    for (StateId s : marked)
        if (!contains(states, s)) throw std::invalid_argument("marked state not in state set");
    for (const Transition& t : transitions) {
        if (!contains(states, t.src) || !contains(states, t.dst))
            throw std::invalid_argument("transition endpoint not in state set");
        if (t.input >= num_inputs) throw std::invalid_argument("transition input out of range");
    }
    if (outputs.size() != universe)
        throw std::invalid_argument("outputs not total on the state universe");
    if (alphabet && alphabet->size() < num_inputs)
        throw std::invalid_argument("symbol table smaller than input count");
}

bool TransitionSystem::operator==(const TransitionSystem& o) const {
    if (universe != o.universe || states != o.states || initial != o.initial ||
        marked != o.marked || num_inputs != o.num_inputs || transitions != o.transitions)
        return false;
    bool ha = alphabet != nullptr, hb = o.alphabet != nullptr;
    if (ha != hb || (ha && !(*alphabet == *o.alphabet))) return false;
    for (StateId s : states)
        if (!(outputs[s] == o.outputs[s])) return false;
    return true;
}

bool is_empty(const TransitionSystem& s) { return s.initial.empty(); }

bool is_deterministic(const TransitionSystem& s) {
    if (s.initial.size() > 1) return false;
    for (std::size_t i = 1; i < s.transitions.size(); ++i) {
        const Transition &a = s.transitions[i - 1], &b = s.transitions[i];
        if (a.src == b.src && a.input == b.input) return false;
    }
    return true;
}

TransitionSystem accessible_part(const TransitionSystem& s) {
    std::vector<char> seen = forward_reach(s);
    TransitionSystem r = s;
    r.states.clear();
    for (StateId x : s.states)
        if (seen[x]) r.states.push_back(x);
    r.marked.clear();
    for (StateId x : s.marked)
        if (seen[x]) r.marked.push_back(x);
    r.transitions.clear();
    for (const Transition& t : s.transitions)
        if (seen[t.src]) r.transitions.push_back(t); // dst reachable by closure
    return r;
}

TransitionSystem coaccessible_part(const TransitionSystem& s) {
    std::vector<char> seen = backward_reach(s);
    TransitionSystem r = s;
    r.states.clear();
    for (StateId x : s.states)
        if (seen[x]) r.states.push_back(x);
    r.initial.clear();
    for (StateId x : s.initial)
        if (seen[x]) r.initial.push_back(x);
    r.transitions.clear();
    for (const Transition& t : s.transitions)
        if (seen[t.dst]) r.transitions.push_back(t); // src coaccessible by closure
    return r;
}

TransitionSystem trim(const TransitionSystem& s) {
    return coaccessible_part(accessible_part(s));
}

bool is_nonblocking(const TransitionSystem& s) {
    std::vector<char> fwd = forward_reach(s), bwd = backward_reach(s);
    for (StateId x = 0; x < s.universe; ++x)
        if (fwd[x] && !bwd[x]) return false;
    return true;
}

std::set<Word> marked_words(const TransitionSystem& s, std::size_t max_len,
                            std::size_t path_cap) {
    std::set<Word> words;
    if (max_len == 0) return words;
    auto idx = out_index(s);
    auto is_marked = member_mask(s.marked, s.universe);
    std::size_t visited = 0;
    Word word;
    // depth first over runs; a run of k states yields a k-label word
    auto walk = [&](auto&& self, StateId x) -> void {
        if (++visited > path_cap)
            throw std::runtime_error("marked_words: enumeration cap exceeded");
        word.push_back(s.outputs[x]);
        if (is_marked[x]) words.insert(word);
        if (word.size() < max_len)
            for (const Transition* t : idx[x]) self(self, t->dst);
        word.pop_back();
    };
    for (StateId x : s.initial) walk(walk, x);
    return words;
}

std::set<InputWord> marked_input_words(const TransitionSystem& s, std::size_t max_len,
                                       std::size_t path_cap) {
    std::set<InputWord> words;
    auto idx = out_index(s);
    auto is_marked = member_mask(s.marked, s.universe);
    std::size_t visited = 0;
    InputWord word;
    auto walk = [&](auto&& self, StateId x) -> void {
        if (++visited > path_cap)
            throw std::runtime_error("marked_input_words: enumeration cap exceeded");
        if (is_marked[x]) words.insert(word);
        if (word.size() < max_len)
            for (const Transition* t : idx[x]) {
                word.push_back(t->input);
                self(self, t->dst);
                word.pop_back();
            }
    };
    for (StateId x : s.initial) walk(walk, x);
    return words;
}

TransitionSystem determinize(const TransitionSystem& s) {
    TransitionSystem d;
    d.num_inputs = s.num_inputs;
    d.alphabet = s.alphabet;
    if (s.initial.empty()) {
        d.outputs.clear();
        return d;
    }
    auto idx = out_index(s);
    auto is_marked = member_mask(s.marked, s.universe);
    std::map<std::vector<StateId>, StateId> id_of;
    std::vector<std::vector<StateId>> subsets;
    std::deque<StateId> queue;
    auto get_id = [&](std::vector<StateId> sub) {
        auto it = id_of.find(sub);
        if (it != id_of.end()) return it->second;
        StateId id = static_cast<StateId>(subsets.size());
        id_of.emplace(sub, id);
        subsets.push_back(std::move(sub));
        queue.push_back(id);
        return id;
    };
    get_id(s.initial); // already sorted
    while (!queue.empty()) {
        StateId cur = queue.front();
        queue.pop_front();
        std::map<SymbolId, std::vector<StateId>> succ;
        for (StateId x : subsets[cur])
            for (const Transition* t : idx[x]) succ[t->input].push_back(t->dst);
        for (auto& [sym, dsts] : succ) {
            sort_unique(dsts);
            StateId nxt = get_id(dsts);
            d.transitions.push_back({cur, sym, nxt});
        }
    }
    d.universe = static_cast<StateId>(subsets.size());
    for (StateId i = 0; i < d.universe; ++i) {
        d.states.push_back(i);
        bool m = false;
        for (StateId x : subsets[i]) m = m || is_marked[x];
        if (m) d.marked.push_back(i);
    }
    d.initial = {0};
    d.outputs = fresh_tags(d.universe, "d");
    d.normalize();
    return d;
}

namespace {

// disjoint union with b's states shifted; no language semantics by itself
TransitionSystem shifted_merge(const TransitionSystem& a, const TransitionSystem& b,
                               StateId extra) {
    TransitionSystem r;
    r.universe = a.universe + b.universe + extra;
    r.num_inputs = a.num_inputs;
    r.alphabet = a.alphabet;
    for (StateId x : a.states) r.states.push_back(x);
    for (StateId x : b.states) r.states.push_back(x + a.universe);
    r.transitions = a.transitions;
    for (const Transition& t : b.transitions)
        r.transitions.push_back({t.src + a.universe, t.input, t.dst + a.universe});
    r.outputs = fresh_tags(r.universe, "u");
    return r;
}

bool accepts_epsilon(const TransitionSystem& s) {
    for (StateId x : s.initial)
        if (contains(s.marked, x)) return true;
    return false;
}

} // namespace

TransitionSystem combine_union(const TransitionSystem& a, const TransitionSystem& b) {
    require_same_alphabet(a, b);
    TransitionSystem r = shifted_merge(a, b, 0);
    r.initial = a.initial;
    for (StateId x : b.initial) r.initial.push_back(x + a.universe);
    r.marked = a.marked;
    for (StateId x : b.marked) r.marked.push_back(x + a.universe);
    r.normalize();
    return trim(determinize(r));
}

TransitionSystem combine_concat(const TransitionSystem& a, const TransitionSystem& b) {
    require_same_alphabet(a, b);
    TransitionSystem r = shifted_merge(a, b, 0);
    r.initial = a.initial;
    if (accepts_epsilon(a))
        for (StateId x : b.initial) r.initial.push_back(x + a.universe);
    for (StateId x : b.marked) r.marked.push_back(x + a.universe);
    if (accepts_epsilon(b))
        for (StateId x : a.marked) r.marked.push_back(x);
    // bridge: leaving a marked a-state behaves like leaving b's initial set
    for (const Transition& t : b.transitions)
        if (contains(b.initial, t.src))
            for (StateId m : a.marked)
                r.transitions.push_back({m, t.input, t.dst + a.universe});
    r.normalize();
    return trim(determinize(r));
}

TransitionSystem combine_star(const TransitionSystem& a) {
    TransitionSystem r = a;
    StateId hub = a.universe; // fresh initial+marked state, accepts epsilon
    r.universe = a.universe + 1;
    r.states.push_back(hub);
    r.outputs = fresh_tags(r.universe, "u");
    r.initial = {hub};
    r.marked.push_back(hub);
    for (const Transition& t : a.transitions)
        if (contains(a.initial, t.src)) {
            r.transitions.push_back({hub, t.input, t.dst});
            for (StateId m : a.marked) r.transitions.push_back({m, t.input, t.dst});
        }
    r.normalize();
    return trim(determinize(r));
}

TransitionSystem combine_product(const TransitionSystem& a0, const TransitionSystem& b0) {
    require_same_alphabet(a0, b0);
    TransitionSystem a = determinize(a0), b = determinize(b0);
    TransitionSystem r;
    r.num_inputs = a0.num_inputs;
    r.alphabet = a0.alphabet;
    if (is_empty(a) || is_empty(b)) {
        r.outputs.clear();
        return r;
    }
    auto ia = out_index(a), ib = out_index(b);
    std::map<std::pair<StateId, StateId>, StateId> id_of;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::deque<StateId> queue;
    auto get_id = [&](StateId x, StateId y) {
        auto it = id_of.find({x, y});
        if (it != id_of.end()) return it->second;
        StateId id = static_cast<StateId>(pairs.size());
        id_of.emplace(std::make_pair(x, y), id);
        pairs.emplace_back(x, y);
        queue.push_back(id);
        return id;
    };
    get_id(a.initial[0], b.initial[0]);
    while (!queue.empty()) {
        StateId cur = queue.front();
        queue.pop_front();
        auto [x, y] = pairs[cur];
        for (const Transition* ta : ia[x])
            for (const Transition* tb : ib[y])
                if (ta->input == tb->input)
                    r.transitions.push_back({cur, ta->input, get_id(ta->dst, tb->dst)});
    }
    r.universe = static_cast<StateId>(pairs.size());
    for (StateId i = 0; i < r.universe; ++i) {
        r.states.push_back(i);
        if (contains(a.marked, pairs[i].first) && contains(b.marked, pairs[i].second))
            r.marked.push_back(i);
    }
    r.initial = {0};
    r.outputs = fresh_tags(r.universe, "p");
    r.normalize();
    return trim(r);
}

TransitionSystem combine_complement(const TransitionSystem& a) {
    TransitionSystem d = determinize(a);
    // completion: route every missing (state, input) pair into a sink so the
    // flipped marking recognizes exactly the complement language
    StateId sink = d.universe;
    d.universe += 1;
    d.states.push_back(sink);
    d.outputs.push_back(OutputLabel::of_tag("sink"));
    if (d.initial.empty()) d.initial = {sink};
    std::vector<std::vector<char>> has(d.universe, std::vector<char>(d.num_inputs, 0));
    for (const Transition& t : d.transitions) has[t.src][t.input] = 1;
    for (StateId x : d.states)
        for (SymbolId u = 0; u < d.num_inputs; ++u)
            if (!has[x][u]) d.transitions.push_back({x, u, sink});
    std::vector<StateId> flipped;
    for (StateId x : d.states)
        if (!contains(d.marked, x)) flipped.push_back(x);
    d.marked = std::move(flipped);
    d.normalize();
    return trim(d);
}

} // namespace decsym
