#include "hornfall/formula_io.hpp"

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hornfall/errors.hpp"

namespace hornfall {

namespace {

// Line-oriented tokenizer that tracks the column of each token.
struct Cursor {
  const std::string& line;
  int line_no;
  std::size_t at = 0;

  void skip_space() {
    while (at < line.size() && std::isspace(static_cast<unsigned char>(line[at])))
      ++at;
  }
  bool done() {
    skip_space();
    return at >= line.size();
  }
  // Reads one signed integer token; column reported 1-based.
  long long integer() {
    skip_space();
    const int col = static_cast<int>(at) + 1;
    std::size_t end = at;
    if (end < line.size() && (line[end] == '-' || line[end] == '+')) ++end;
    std::size_t digits = end;
    while (end < line.size() &&
           std::isdigit(static_cast<unsigned char>(line[end])))
      ++end;
    if (end == digits ||
        (end < line.size() &&
         !std::isspace(static_cast<unsigned char>(line[end])))) {
      throw SyntaxError("expected integer", line_no, col);
    }
    long long value = 0;
    try {
      value = std::stoll(line.substr(at, end - at));
    } catch (const std::exception&) {
      throw SyntaxError("integer out of range", line_no, col);
    }
    at = end;
    return value;
  }
};

}  // namespace

HornFormula parse_formula(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1, m = -1;

  // Header: first line that is neither blank nor a comment must be
  // "p hcnf <n> <m>".
  while (std::getline(in, line)) {
    ++line_no;
    Cursor cur{line, line_no};
    if (cur.done() || line[cur.at] == 'c') continue;
    std::istringstream hdr(line);
    std::string p, fmt;
    hdr >> p >> fmt >> n >> m;
    if (p != "p" || fmt != "hcnf" || hdr.fail() || n < 1 || m < 0) {
      throw SyntaxError("expected header 'p hcnf <n> <m>'", line_no, 1);
    }
    break;
  }
  if (n < 0) throw SyntaxError("missing header", line_no + 1, 1);

  HornFormula f(static_cast<Var>(n));
  long long clauses = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Cursor cur{line, line_no};
    if (cur.done()) continue;
    if (line[cur.at] == 'c') continue;

    std::optional<Var> positive;
    int positive_col = 0;
    std::vector<Var> negatives;
    bool terminated = false;
    while (!cur.done()) {
      const int col = static_cast<int>(cur.at) + 1;
      const long long lit = cur.integer();
      if (terminated) throw SyntaxError("literal after 0", line_no, col);
      if (lit == 0) {
        terminated = true;
        continue;
      }
      const long long v = lit > 0 ? lit : -lit;
      if (v > n) {
        throw SyntaxError("variable " + std::to_string(v) + " exceeds n=" +
                          std::to_string(n), line_no, col);
      }
      if (lit > 0) {
        if (positive) throw NonHornClause("two positive literals", line_no);
        positive = static_cast<Var>(v);
        positive_col = col;
      } else {
        negatives.push_back(static_cast<Var>(v));
      }
    }
    if (!terminated) throw SyntaxError("clause not 0-terminated", line_no,
                                       static_cast<int>(line.size()) + 1);
    try {
      f.add(make_clause(positive, std::move(negatives)));
    } catch (const DuplicateVariable& e) {
      throw SyntaxError(e.what(), line_no, positive_col ? positive_col : 1);
    }
    ++clauses;
  }
  if (clauses != m) {
    throw SyntaxError("header declares " + std::to_string(m) +
                      " clauses, found " + std::to_string(clauses),
                      line_no + 1, 1);
  }
  return f;
}

HornFormula parse_formula(const std::string& text) {
  std::istringstream in(text);
  return parse_formula(in);
}

void serialize_formula(const HornFormula& f, std::ostream& out) {
  out << "p hcnf " << f.n() << ' ' << f.clause_count() << '\n';
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    bool first = true;
    if (const Var p = f.positive_raw(i)) {
      out << p;
      first = false;
    }
    for (const Var v : f.negatives(i)) {
      if (!first) out << ' ';
      out << '-' << v;
      first = false;
    }
    out << (first ? "0\n" : " 0\n");
  }
}

std::string serialize_formula(const HornFormula& f) {
  std::ostringstream out;
  serialize_formula(f, out);
  return out.str();
}

}  // namespace hornfall
