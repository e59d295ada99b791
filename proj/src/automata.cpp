#include "hornfall/automata.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hornfall/errors.hpp"

namespace hornfall {

namespace {

void check_state(std::uint32_t s, std::uint32_t states, const char* what) {
  if (s < 1 || s > states) {
    throw OutOfRange(std::string(what) + " state " + std::to_string(s) +
                     " outside 1.." + std::to_string(states));
  }
}

void check_symbol(std::uint32_t a, std::uint32_t alphabet) {
  if (a < 1 || a > alphabet) {
    throw OutOfRange("symbol " + std::to_string(a) + " outside 1.." +
                     std::to_string(alphabet));
  }
}

}  // namespace

void validate_automaton(const Automaton& a) {
  if (a.states < 1) throw OutOfRange("automaton needs at least one state");
  if (a.alphabet < 1) throw OutOfRange("automaton needs a nonempty alphabet");
  check_state(a.start, a.states, "start");
  for (std::uint32_t f : a.finals) check_state(f, a.states, "final");
  if (a.kind == AutomatonKind::word) {
    if (!a.tree_transitions.empty()) {
      throw OutOfRange("word automaton carries tree transitions");
    }
    for (const auto& t : a.word_transitions) {
      check_state(t.from, a.states, "transition");
      check_state(t.to, a.states, "transition");
      check_symbol(t.symbol, a.alphabet);
    }
  } else {
    if (!a.word_transitions.empty()) {
      throw OutOfRange("tree automaton carries word transitions");
    }
    for (const auto& t : a.tree_transitions) {
      check_state(t.parent, a.states, "transition");
      check_state(t.left, a.states, "transition");
      check_state(t.right, a.states, "transition");
      check_symbol(t.symbol, a.alphabet);
    }
  }
}

std::pair<HornFormula, TranslationMap> to_horn(const Automaton& a) {
  validate_automaton(a);

  TranslationMap map;
  map.state_to_var.assign(a.states, 0);
  map.state_to_var[a.start - 1] = 1;
  Var next = 2;
  for (std::uint32_t s = 1; s <= a.states; ++s) {
    if (s != a.start) map.state_to_var[s - 1] = next++;
  }
  const auto var = [&map](std::uint32_t s) { return map.state_to_var[s - 1]; };

  HornFormula f(a.states);
  f.add(make_clause(std::nullopt, {var(a.start)}));
  map.provenance.push_back({ClauseProvenance::Kind::start, 0});

  for (std::size_t i = 0; i < a.finals.size(); ++i) {
    f.add(make_clause(var(a.finals[i]), {}));
    map.provenance.push_back({ClauseProvenance::Kind::final_state, i});
  }

  if (a.kind == AutomatonKind::word) {
    for (std::size_t i = 0; i < a.word_transitions.size(); ++i) {
      const auto& t = a.word_transitions[i];
      if (t.to == t.from) continue;  // tautology
      f.add(make_clause(var(t.from), {var(t.to)}));
      map.provenance.push_back({ClauseProvenance::Kind::transition, i});
    }
  } else {
    for (std::size_t i = 0; i < a.tree_transitions.size(); ++i) {
      const auto& t = a.tree_transitions[i];
      if (t.left == t.parent || t.right == t.parent) continue;  // tautology
      std::vector<Var> negs{var(t.left)};
      if (t.right != t.left) negs.push_back(var(t.right));
      f.add(make_clause(var(t.parent), std::move(negs)));
      map.provenance.push_back({ClauseProvenance::Kind::transition, i});
    }
  }
  return {std::move(f), std::move(map)};
}

bool emptiness_direct(const Automaton& a) {
  validate_automaton(a);
  std::vector<char> productive(a.states + 1, 0);
  for (std::uint32_t s : a.finals) productive[s] = 1;

  // Least fixpoint by repeated passes; each pass either finishes or marks
  // at least one new state, so at most `states` passes run.
  bool changed = true;
  while (changed) {
    changed = false;
    if (a.kind == AutomatonKind::word) {
      for (const auto& t : a.word_transitions) {
        if (productive[t.to] && !productive[t.from]) {
          productive[t.from] = 1;
          changed = true;
        }
      }
    } else {
      for (const auto& t : a.tree_transitions) {
        if (productive[t.left] && productive[t.right] &&
            !productive[t.parent]) {
          productive[t.parent] = 1;
          changed = true;
        }
      }
    }
  }
  return !productive[a.start];
}

namespace {

// Whitespace-separated fields of one line, with 1-based start columns for
// error reporting.
struct Fields {
  std::vector<std::string> tok;
  std::vector<std::size_t> col;
};

Fields split_line(const std::string& line) {
  Fields f;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    f.tok.push_back(line.substr(start, i - start));
    f.col.push_back(start + 1);
  }
  return f;
}

std::uint32_t parse_u32(const std::string& tok, std::size_t line,
                        std::size_t col) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw SyntaxError("expected an unsigned integer", line, col);
  }
  try {
    const unsigned long v = std::stoul(tok);
    if (v > 0xffffffffUL) throw std::out_of_range("");
    return static_cast<std::uint32_t>(v);
  } catch (const std::out_of_range&) {
    throw SyntaxError("integer too large", line, col);
  }
}

}  // namespace

Automaton parse_automaton(std::istream& in) {
  Automaton a;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false, saw_start = false, saw_final = false;

  while (std::getline(in, line)) {
    ++lineno;
    const Fields f = split_line(line);
    if (f.tok.empty() || f.tok[0][0] == '#') continue;
    const std::string& kw = f.tok[0];

    if (!saw_header) {
      if (kw != "aut") throw SyntaxError("expected 'aut' header", lineno, f.col[0]);
      if (f.tok.size() != 4) {
        throw SyntaxError("header needs: aut word|tree <states> <alphabet>",
                          lineno, f.col[0]);
      }
      if (f.tok[1] == "word") {
        a.kind = AutomatonKind::word;
      } else if (f.tok[1] == "tree") {
        a.kind = AutomatonKind::tree;
      } else {
        throw SyntaxError("kind must be 'word' or 'tree'", lineno, f.col[1]);
      }
      a.states = parse_u32(f.tok[2], lineno, f.col[2]);
      a.alphabet = parse_u32(f.tok[3], lineno, f.col[3]);
      saw_header = true;
    } else if (kw == "start") {
      if (saw_start) throw SyntaxError("duplicate start line", lineno, f.col[0]);
      if (f.tok.size() != 2) {
        throw SyntaxError("start needs one state", lineno, f.col[0]);
      }
      a.start = parse_u32(f.tok[1], lineno, f.col[1]);
      saw_start = true;
    } else if (kw == "final") {
      if (saw_final) throw SyntaxError("duplicate final line", lineno, f.col[0]);
      for (std::size_t i = 1; i < f.tok.size(); ++i) {
        a.finals.push_back(parse_u32(f.tok[i], lineno, f.col[i]));
      }
      saw_final = true;
    } else if (kw == "trans") {
      if (!saw_start || !saw_final) {
        throw SyntaxError("transitions must follow start and final lines",
                          lineno, f.col[0]);
      }
      if (a.kind == AutomatonKind::word) {
        if (f.tok.size() != 4) {
          throw SyntaxError("word transition needs <from> <symbol> <to>",
                            lineno, f.col[0]);
        }
        a.word_transitions.push_back({parse_u32(f.tok[1], lineno, f.col[1]),
                                      parse_u32(f.tok[2], lineno, f.col[2]),
                                      parse_u32(f.tok[3], lineno, f.col[3])});
      } else {
        if (f.tok.size() != 5) {
          throw SyntaxError(
              "tree transition needs <parent> <symbol> <left> <right>", lineno,
              f.col[0]);
        }
        a.tree_transitions.push_back({parse_u32(f.tok[1], lineno, f.col[1]),
                                      parse_u32(f.tok[2], lineno, f.col[2]),
                                      parse_u32(f.tok[3], lineno, f.col[3]),
                                      parse_u32(f.tok[4], lineno, f.col[4])});
      }
    } else {
      throw SyntaxError("unknown keyword '" + kw + "'", lineno, f.col[0]);
    }
  }
  if (!saw_header) throw SyntaxError("missing 'aut' header", lineno + 1, 1);
  if (!saw_start) throw SyntaxError("missing start line", lineno + 1, 1);
  if (!saw_final) throw SyntaxError("missing final line", lineno + 1, 1);
  validate_automaton(a);
  return a;
}

void serialize_automaton(const Automaton& a, std::ostream& out) {
  out << "aut " << (a.kind == AutomatonKind::word ? "word" : "tree") << ' '
      << a.states << ' ' << a.alphabet << '\n';
  out << "start " << a.start << '\n';
  out << "final";
  for (std::uint32_t f : a.finals) out << ' ' << f;
  out << '\n';
  if (a.kind == AutomatonKind::word) {
    for (const auto& t : a.word_transitions) {
      out << "trans " << t.from << ' ' << t.symbol << ' ' << t.to << '\n';
    }
  } else {
    for (const auto& t : a.tree_transitions) {
      out << "trans " << t.parent << ' ' << t.symbol << ' ' << t.left << ' '
          << t.right << '\n';
    }
  }
}

Automaton random_automaton(AutomatonKind kind, std::uint32_t max_states,
                           std::uint32_t max_alphabet, Xoshiro256ss& rng) {
  if (max_states < 1 || max_alphabet < 1) {
    throw DomainError("need max_states >= 1 and max_alphabet >= 1");
  }
  Automaton a;
  a.kind = kind;
  a.states = 1 + static_cast<std::uint32_t>(rng.below(max_states));
  a.alphabet = 1 + static_cast<std::uint32_t>(rng.below(max_alphabet));
  a.start = 1 + static_cast<std::uint32_t>(rng.below(a.states));
  for (std::uint32_t s = 1; s <= a.states; ++s) {
    if (rng.below(2) == 0) a.finals.push_back(s);
  }
  const std::uint64_t ntrans = rng.below(3ULL * a.states + 1);
  const auto state = [&] {
    return 1 + static_cast<std::uint32_t>(rng.below(a.states));
  };
  const auto symbol = [&] {
    return 1 + static_cast<std::uint32_t>(rng.below(a.alphabet));
  };
  for (std::uint64_t i = 0; i < ntrans; ++i) {
    if (kind == AutomatonKind::word) {
      a.word_transitions.push_back({state(), symbol(), state()});
    } else {
      a.tree_transitions.push_back({state(), symbol(), state(), state()});
    }
  }
  return a;
}

}  // namespace hornfall
