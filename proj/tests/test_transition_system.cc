#include "decsym/automaton_io.hh"
#include "decsym/transition_system.hh"

#include "doctest.h"

#include <algorithm>
#include <queue>
#include <random>

using namespace decsym;

namespace {

// random system over a small universe; ~half the states kept
TransitionSystem random_system(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> uni(4, 9);
    TransitionSystem s;
    s.universe = static_cast<StateId>(uni(rng));
    s.num_inputs = 2 + rng() % 2;
    for (StateId x = 0; x < s.universe; ++x)
        if (rng() % 4) s.states.push_back(x);
    if (s.states.empty()) s.states.push_back(0);
    for (StateId x : s.states) {
        if (rng() % 3 == 0) s.initial.push_back(x);
        if (rng() % 3 == 0) s.marked.push_back(x);
    }
    std::uniform_int_distribution<std::size_t> pick(0, s.states.size() - 1);
    int n_trans = static_cast<int>(rng() % (2 * s.states.size() + 1));
    for (int k = 0; k < n_trans; ++k)
        s.transitions.push_back({s.states[pick(rng)],
                                 static_cast<SymbolId>(rng() % s.num_inputs),
                                 s.states[pick(rng)]});
    s.outputs.resize(s.universe);
    for (StateId x = 0; x < s.universe; ++x)
        s.outputs[x] = OutputLabel::of_tag("s" + std::to_string(x));
    s.normalize();
    return s;
}

// independent reachability oracle
std::vector<StateId> bfs_forward(const TransitionSystem& s) {
    std::vector<char> seen(s.universe, 0);
    std::queue<StateId> q;
    for (StateId x : s.initial) { seen[x] = 1; q.push(x); }
    while (!q.empty()) {
        StateId x = q.front(); q.pop();
        for (const Transition& t : s.transitions)
            if (t.src == x && !seen[t.dst]) { seen[t.dst] = 1; q.push(t.dst); }
    }
    std::vector<StateId> out;
    for (StateId x : s.states) if (seen[x]) out.push_back(x);
    return out;
}

std::vector<StateId> bfs_backward(const TransitionSystem& s) {
    std::vector<char> seen(s.universe, 0);
    std::queue<StateId> q;
    for (StateId x : s.marked) { seen[x] = 1; q.push(x); }
    while (!q.empty()) {
        StateId x = q.front(); q.pop();
        for (const Transition& t : s.transitions)
            if (t.dst == x && !seen[t.src]) { seen[t.src] = 1; q.push(t.src); }
    }
    std::vector<StateId> out;
    for (StateId x : s.states) if (seen[x]) out.push_back(x);
    return out;
}

} // namespace

TEST_CASE("accessible and coaccessible parts match the BFS oracles") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 100; ++it) {
        TransitionSystem s = random_system(rng);
        CHECK(accessible_part(s).states == bfs_forward(s));
        CHECK(coaccessible_part(s).states == bfs_backward(s));
    }
}

TEST_CASE("trim algebra holds on random systems") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 100; ++it) {
        TransitionSystem s = random_system(rng);
        TransitionSystem ab = coaccessible_part(accessible_part(s));
        TransitionSystem ba = accessible_part(coaccessible_part(s));
        TransitionSystem tr = trim(s);
        CHECK(ab == ba);
        CHECK(tr == ab);
        CHECK(trim(tr) == tr); // idempotent
        if (!is_empty(tr)) {
            CHECK(accessible_part(tr) == tr);
            CHECK(is_nonblocking(tr));
        }
        // subsystem operations keep universe ids stable
        CHECK(tr.universe == s.universe);
        CHECK(std::includes(s.states.begin(), s.states.end(), tr.states.begin(),
                            tr.states.end()));
        // trimming never changes the marked language
        CHECK(marked_words(tr, 10) == marked_words(s, 10));
        CHECK(marked_input_words(tr, 10) == marked_input_words(s, 10));
    }
}

TEST_CASE("marked word semantics on a fixed chain") {
    // 0 -a-> 1 -b-> 2(marked), initial 0 also marked
    TransitionSystem s;
    s.universe = 3;
    s.states = {0, 1, 2};
    s.initial = {0};
    s.marked = {0, 2};
    s.num_inputs = 2;
    s.transitions = {{0, 0, 1}, {1, 1, 2}};
    s.outputs = {OutputLabel::of_tag("p"), OutputLabel::of_tag("q"), OutputLabel::of_tag("r")};
    s.normalize();
    s.validate();

    // output words count states: marked initial alone gives the 1-letter word
    auto words = marked_words(s, 3);
    CHECK(words.size() == 2);
    CHECK(words.count({OutputLabel::of_tag("p")}) == 1);
    CHECK(words.count({OutputLabel::of_tag("p"), OutputLabel::of_tag("q"),
                       OutputLabel::of_tag("r")}) == 1);

    // input words count transitions: marked initial contributes epsilon
    auto inputs = marked_input_words(s, 2);
    CHECK(inputs.size() == 2);
    CHECK(inputs.count({}) == 1);
    CHECK(inputs.count({0, 1}) == 1);
    CHECK(marked_input_words(s, 1).size() == 1); // only epsilon fits
}

TEST_CASE("validate rejects broken invariants") {
    TransitionSystem s;
    s.universe = 2;
    s.states = {0, 1};
    s.initial = {0};
    s.num_inputs = 1;
    s.outputs.resize(2);
    s.transitions = {{0, 0, 1}};
    s.normalize();
    s.validate();

    TransitionSystem bad = s;
    bad.initial = {5}; // outside the universe
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.transitions = {{0, 3, 1}}; // input id beyond num_inputs
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("text format round trips") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 30; ++it) {
        TransitionSystem s = random_system(rng);
        TransitionSystem back = load_automaton_text(save_automaton(s));
        CHECK(back == s);
    }

    // point outputs and an interned alphabet survive as exact decimals
    TransitionSystem s;
    s.universe = 2;
    s.states = {0, 1};
    s.initial = {0};
    s.marked = {1};
    auto tab = std::make_shared<SymbolTable>();
    SymbolId a = tab->intern({Decimal::parse("18.25"), Decimal::parse("19.5")});
    s.alphabet = tab;
    s.num_inputs = static_cast<std::uint32_t>(tab->size());
    s.transitions = {{0, a, 1}};
    s.outputs = {OutputLabel::of_point({Decimal::parse("0.0225")}),
                 OutputLabel::of_point({Decimal::parse("-1")})};
    s.normalize();
    s.validate();
    TransitionSystem back = load_automaton_text(save_automaton(s));
    CHECK(back == s);
    CHECK(back.alphabet->point(a)[0] == Decimal::parse("18.25"));
}

TEST_CASE("loader reports the offending line") {
    std::string text = "automaton\nuniverse 2\nbogus_key 1\nend\n";
    try {
        load_automaton_text(text);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
}
