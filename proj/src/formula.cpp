#include "hornfall/formula.hpp"

#include <algorithm>
#include <string>

#include "hornfall/errors.hpp"

namespace hornfall {

HornClause make_clause(std::optional<Var> positive,
                       std::vector<Var> negatives) {
  if (positive && *positive == 0) throw OutOfRange("variable id 0");
  for (Var v : negatives) {
    if (v == 0) throw OutOfRange("variable id 0");
  }
  std::sort(negatives.begin(), negatives.end());
  for (std::size_t i = 1; i < negatives.size(); ++i) {
    if (negatives[i] == negatives[i - 1]) {
      throw DuplicateVariable("variable " + std::to_string(negatives[i]) +
                              " repeated among negatives");
    }
  }
  if (positive &&
      std::binary_search(negatives.begin(), negatives.end(), *positive)) {
    throw DuplicateVariable("variable " + std::to_string(*positive) +
                            " is both positive and negative");
  }
  return HornClause{positive, std::move(negatives)};
}

HornClause clause_from_literals(const std::vector<long long>& literals) {
  std::optional<Var> positive;
  std::vector<Var> negatives;
  for (long long lit : literals) {
    if (lit == 0) throw OutOfRange("literal 0 inside clause");
    if (lit > 0) {
      if (positive) {
        throw HornViolation("two positive literals: " +
                            std::to_string(*positive) + " and " +
                            std::to_string(lit));
      }
      positive = static_cast<Var>(lit);
    } else {
      negatives.push_back(static_cast<Var>(-lit));
    }
  }
  return make_clause(positive, std::move(negatives));
}

DensityVector DensityVector::of(std::vector<double> values) {
  if (values.empty()) throw DomainError("density vector needs k >= 1");
  if (!(values[0] >= 0.0) || !(values[0] < 1.0)) {
    throw DomainError("d1 must satisfy 0 <= d1 < 1");
  }
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (!(values[j] >= 0.0)) throw DomainError("densities must be >= 0");
  }
  return DensityVector{std::move(values)};
}

HornFormula::HornFormula(Var n) : n_(n) { neg_begin_.push_back(0); }

void HornFormula::add(const HornClause& clause) {
  if (clause.positive && *clause.positive > n_) {
    throw OutOfRange("variable " + std::to_string(*clause.positive) +
                     " exceeds n=" + std::to_string(n_));
  }
  for (Var v : clause.negatives) {
    if (v > n_) {
      throw OutOfRange("variable " + std::to_string(v) +
                       " exceeds n=" + std::to_string(n_));
    }
  }
  positive_.push_back(clause.positive ? *clause.positive : 0);
  neg_flat_.insert(neg_flat_.end(), clause.negatives.begin(),
                   clause.negatives.end());
  neg_begin_.push_back(static_cast<std::uint32_t>(neg_flat_.size()));
}

std::size_t HornFormula::literal_count() const {
  std::size_t positives = 0;
  for (Var p : positive_) positives += (p != 0);
  return positives + neg_flat_.size();
}

HornClause HornFormula::clause(std::size_t i) const {
  HornClause c;
  if (positive_[i] != 0) c.positive = positive_[i];
  auto negs = negatives(i);
  c.negatives.assign(negs.begin(), negs.end());
  return c;
}

bool HornFormula::same_clauses(const HornFormula& other) const {
  if (n_ != other.n_ || clause_count() != other.clause_count()) return false;
  auto keys = [](const HornFormula& f) {
    std::vector<std::vector<Var>> out;
    out.reserve(f.clause_count());
    for (std::size_t i = 0; i < f.clause_count(); ++i) {
      std::vector<Var> key;
      key.push_back(f.positive_raw(i));
      auto negs = f.negatives(i);
      key.insert(key.end(), negs.begin(), negs.end());
      out.push_back(std::move(key));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  return keys(*this) == keys(other);
}

}  // namespace hornfall
