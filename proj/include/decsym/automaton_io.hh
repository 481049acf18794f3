/*
 * automaton_io.hh
 *
 * Line-oriented text format for transition systems. Symbols are written
 * as exact decimals, so save/load round-trips are lossless. '#' starts a
 * comment, blank lines are ignored.
 *
 *   automaton
 *   universe 13
 *   inputs 6
 *   dim 4                      # alphabet point dimension, absent if anonymous
 *   states 0 1 2 ...
 *   initial 0
 *   marked 12
 *   symbol 19 18 18 18         # ids assigned in file order
 *   trans 0 0 1                # src input dst
 *   output 0 point 19 18 18 18
 *   output 1 tag s1
 *   end
 */

#pragma once

#include "decsym/transition_system.hh"

#include <iosfwd>
#include <string>

namespace decsym {

std::string save_automaton(const TransitionSystem& s);
void save_automaton_file(const TransitionSystem& s, const std::string& path);

// reads one `automaton ... end` block; throws std::invalid_argument with a
// line number on malformed input
TransitionSystem load_automaton(std::istream& in);
TransitionSystem load_automaton_text(const std::string& text);
TransitionSystem load_automaton_file(const std::string& path);

} // namespace decsym
