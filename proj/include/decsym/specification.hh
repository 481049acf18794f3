/*
 * specification.hh
 *
 * Regular specifications over exact-decimal output points. A
 * SpecAutomaton is a deterministic, accessible, nonblocking recognizer
 * whose marked input language is the specification; to_transition_spec
 * rebuilds it with transitions as states so that synthesis can reason
 * about one emitted point per state.
 */

#pragma once

#include "decsym/plant.hh"
#include "decsym/transition_system.hh"

#include <memory>
#include <set>
#include <vector>

namespace decsym {

struct SpecAutomaton {
    TransitionSystem ts; // validated: deterministic, accessible, nonblocking
};

// wraps an existing recognizer; throws when the required shape is missing
SpecAutomaton make_spec(TransitionSystem ts);

// recognizer of the single word w0...wL (one path, marked end)
SpecAutomaton build_word(const std::vector<DecVec>& word);
// recognizer of { q, qq, qqq, ... }: the word chain closed by a loop
// from the marked end back to the second state on the first symbol
SpecAutomaton build_word_plus(const std::vector<DecVec>& q);

// builder expression tree, also the on-disk specification format
struct SpecExpr {
    enum class Kind { word, word_plus, union_, concat, star, automaton };
    Kind kind = Kind::word;
    std::vector<DecVec> word;                       // word / word_plus
    std::vector<std::shared_ptr<SpecExpr>> children;
    std::shared_ptr<TransitionSystem> automaton;    // explicit recognizer

    static SpecExpr make_word(std::vector<DecVec> w);
    static SpecExpr make_word_plus(std::vector<DecVec> w);
};

SpecAutomaton build_spec(const SpecExpr& e);

// language the expression describes, up to input-word length max_len,
// written in the symbol ids of `table`; the oracle build_spec is checked
// against
std::set<InputWord> expected_words(const SpecExpr& e, const SymbolTable& table,
                                   std::size_t max_len);

struct TransitionSpec {
    TransitionSystem ts;            // states house spec transitions; outputs are points
    std::vector<Transition> housed; // housed[k] = spec transition behind state k
};

TransitionSpec to_transition_spec(const SpecAutomaton& spec);

// slice of an output point belonging to component i
DecVec project_output(const DecVec& y, const NetworkModel& m, int i);

} // namespace decsym
