#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "hornfall/formula.hpp"
#include "hornfall/rng.hpp"

namespace hornfall {

enum class AutomatonKind { word, tree };

// Word transition: reading symbol in state from may move to state to.
struct WordTransition {
  std::uint32_t from;
  std::uint32_t symbol;
  std::uint32_t to;
  bool operator==(const WordTransition&) const = default;
};

// Tree transition: a parent node labelled symbol may expand into the
// ordered children (left, right).
struct TreeTransition {
  std::uint32_t parent;
  std::uint32_t symbol;
  std::uint32_t left;
  std::uint32_t right;
  bool operator==(const TreeTransition&) const = default;
};

// Nondeterministic word or binary-tree automaton. States are 1..states,
// symbols 1..alphabet. Exactly one of the transition vectors is populated,
// matching kind.
struct Automaton {
  AutomatonKind kind = AutomatonKind::word;
  std::uint32_t states = 1;
  std::uint32_t alphabet = 1;
  std::uint32_t start = 1;
  std::vector<std::uint32_t> finals;
  std::vector<WordTransition> word_transitions;
  std::vector<TreeTransition> tree_transitions;
};

// Throws OutOfRange if any state or symbol reference is outside bounds or
// a transition vector of the wrong kind is populated.
void validate_automaton(const Automaton& a);

// Where each clause of the translated formula came from.
struct ClauseProvenance {
  enum class Kind { start, final_state, transition };
  Kind kind;
  std::size_t index;  // final index or transition index; 0 for start
};

// State-to-variable bijection plus per-clause provenance. The start state
// always maps to variable 1 so the translated formula has the ensemble's
// shape (unique negative unit on variable 1).
struct TranslationMap {
  std::vector<Var> state_to_var;  // index s-1 -> variable
  std::vector<ClauseProvenance> provenance;
};

// Emptiness-as-satisfiability translation over one variable per state:
//   - the start state contributes the negative unit;
//   - each final state contributes a positive unit;
//   - a word transition (q, a, r) contributes (not r or q);
//   - a tree transition (q, a, l, r) contributes (not l or not r or q).
// Symbols do not appear in the output (the construction is
// symbol-oblivious). Clauses that would be tautologies (a self-loop puts
// the same variable on both sides) are dropped and a repeated child state
// contributes one negative literal; both normalizations preserve logical
// equivalence. The language is nonempty exactly when the formula is
// unsatisfiable. provenance[i] names the source of clause i.
std::pair<HornFormula, TranslationMap> to_horn(const Automaton& a);

// Independent emptiness decision, used as the cross-check oracle for
// to_horn: computes the least fixpoint of "productive" states (final, or
// word-steps to a productive state, or tree-expands into two productive
// children) and reports true (empty) when the start state is not
// productive. The empty word/one-node tree is accepted when start is
// final, so start in finals means nonempty.
bool emptiness_direct(const Automaton& a);

// Text format:
//   aut word|tree <states> <alphabet>
//   start <s>
//   final [<s> ...]
//   trans <from> <symbol> <to>              (word)
//   trans <parent> <symbol> <left> <right>  (tree)
// Throws SyntaxError with position on malformed input.
Automaton parse_automaton(std::istream& in);
void serialize_automaton(const Automaton& a, std::ostream& out);

// Uniformly random small automaton for fuzzing: state count in
// 1..max_states, alphabet in 1..max_alphabet, each state final with
// probability 1/2, transition count uniform in 0..(3*states), endpoints
// uniform.
Automaton random_automaton(AutomatonKind kind, std::uint32_t max_states,
                           std::uint32_t max_alphabet, Xoshiro256ss& rng);

}  // namespace hornfall
