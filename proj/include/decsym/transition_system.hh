/*
 * transition_system.hh
 *
 * Finite transition systems with marked states, exact-decimal input
 * alphabets and per-state output labels. State ids live in a fixed
 * universe [0, universe); subsystem operations (accessible part,
 * coaccessible part, trim) keep ids stable so that results of different
 * pipelines can be compared state-for-state.
 */

#pragma once

#include "decsym/decimal.hh"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace decsym {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

// bijection between symbol ids and exact decimal points
class SymbolTable {
public:
    SymbolId intern(const DecVec& p);
    std::optional<SymbolId> find(const DecVec& p) const;
    const DecVec& point(SymbolId id) const;
    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return points_.empty() ? 0 : points_[0].size(); }
    bool operator==(const SymbolTable& o) const;

private:
    std::vector<DecVec> points_;
    std::map<DecVec, SymbolId, bool (*)(const DecVec&, const DecVec&)> index_{&decvec_less};
};

// per-state output: either an exact point in R^n or an opaque tag
struct OutputLabel {
    std::variant<std::string, DecVec> v = std::string();

    static OutputLabel of_tag(std::string t) { return {std::move(t)}; }
    static OutputLabel of_point(DecVec p) { return {std::move(p)}; }

    bool is_point() const { return v.index() == 1; }
    const DecVec& point() const { return std::get<DecVec>(v); }
    const std::string& tag() const { return std::get<std::string>(v); }

    bool operator==(const OutputLabel& o) const;
    bool operator<(const OutputLabel& o) const;
    std::string str() const;
};

struct Transition {
    StateId src;
    SymbolId input;
    StateId dst;

    friend bool operator==(const Transition&, const Transition&) = default;
    friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct TransitionSystem {
    StateId universe = 0;
    std::vector<StateId> states;   // sorted subset of [0, universe)
    std::vector<StateId> initial;  // sorted subset of states
    std::vector<StateId> marked;   // sorted subset of states
    std::uint32_t num_inputs = 0;
    std::shared_ptr<const SymbolTable> alphabet; // null = anonymous inputs
    std::vector<Transition> transitions;         // sorted, duplicate free
    std::vector<OutputLabel> outputs;            // indexed by state id, size universe

    void normalize();
    void validate() const; // throws std::invalid_argument on broken invariants

    // outputs compared on `states` only, alphabet compared by value
    bool operator==(const TransitionSystem& o) const;
};

// a system is empty when it has no initial state
bool is_empty(const TransitionSystem& s);
bool is_deterministic(const TransitionSystem& s);

TransitionSystem accessible_part(const TransitionSystem& s);
TransitionSystem coaccessible_part(const TransitionSystem& s);
TransitionSystem trim(const TransitionSystem& s);
bool is_nonblocking(const TransitionSystem& s);

// marked output language: words H(x0)...H(xl) over runs ending in a marked
// state, word length (number of labels) <= max_len
using Word = std::vector<OutputLabel>;
std::set<Word> marked_words(const TransitionSystem& s, std::size_t max_len,
                            std::size_t path_cap = 4000000);

// marked input language: words of input symbols, length (number of
// transitions) <= max_len; the empty word appears iff some initial state
// is marked
using InputWord = std::vector<SymbolId>;
std::set<InputWord> marked_input_words(const TransitionSystem& s, std::size_t max_len,
                                       std::size_t path_cap = 4000000);

// combinators on marked input languages; operands must share the alphabet
// (value equality); results are determinized and trimmed
TransitionSystem determinize(const TransitionSystem& s);
TransitionSystem combine_union(const TransitionSystem& a, const TransitionSystem& b);
TransitionSystem combine_concat(const TransitionSystem& a, const TransitionSystem& b);
TransitionSystem combine_star(const TransitionSystem& a);
TransitionSystem combine_product(const TransitionSystem& a, const TransitionSystem& b);
TransitionSystem combine_complement(const TransitionSystem& a);

} // namespace decsym
