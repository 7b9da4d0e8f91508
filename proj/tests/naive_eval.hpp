#pragma once

// Reference semantics, written as plainly as possible and kept independent
// of the library's evaluators: direct recursion over finite words, no
// memoization, no scan shortcuts. Tests compare the real evaluators against
// these on randomly generated inputs.

#include <algorithm>
#include <map>
#include <string>

#include "tempoef/formula.hpp"
#include "tempoef/word.hpp"

namespace tempoef::testing {

inline bool naive_mtl(const DataWord& w, std::size_t i, const MtlPtr& f) {
  std::size_t len = w.finite_length();
  switch (f->kind) {
    case MtlFormula::Kind::True: return true;
    case MtlFormula::Kind::False: return false;
    case MtlFormula::Kind::Prop: {
      const LabelSet& ls = w.labels_at(i);
      return std::find(ls.begin(), ls.end(), f->prop) != ls.end();
    }
    case MtlFormula::Kind::Not: return !naive_mtl(w, i, f->lhs);
    case MtlFormula::Kind::And: return naive_mtl(w, i, f->lhs) && naive_mtl(w, i, f->rhs);
    case MtlFormula::Kind::Or: return naive_mtl(w, i, f->lhs) || naive_mtl(w, i, f->rhs);
    case MtlFormula::Kind::Until: {
      for (std::size_t j = i + 1; j < len; ++j) {
        if (!naive_mtl(w, j, f->rhs)) continue;
        if (!f->interval.contains(w.data_at(j) - w.data_at(i))) continue;
        bool chain = true;
        for (std::size_t m = i + 1; m < j; ++m) chain = chain && naive_mtl(w, m, f->lhs);
        if (chain) return true;
      }
      return false;
    }
  }
  return false;
}

inline bool naive_tptl(const DataWord& w, std::size_t i,
                       std::map<std::string, std::int64_t> nu, const TptlPtr& f) {
  std::size_t len = w.finite_length();
  switch (f->kind) {
    case TptlFormula::Kind::True: return true;
    case TptlFormula::Kind::False: return false;
    case TptlFormula::Kind::Prop: {
      const LabelSet& ls = w.labels_at(i);
      return std::find(ls.begin(), ls.end(), f->name) != ls.end();
    }
    case TptlFormula::Kind::Constraint:
      return f->interval.contains(w.data_at(i) - nu.at(f->name));
    case TptlFormula::Kind::Not: return !naive_tptl(w, i, nu, f->lhs);
    case TptlFormula::Kind::And:
      return naive_tptl(w, i, nu, f->lhs) && naive_tptl(w, i, nu, f->rhs);
    case TptlFormula::Kind::Or:
      return naive_tptl(w, i, nu, f->lhs) || naive_tptl(w, i, nu, f->rhs);
    case TptlFormula::Kind::Freeze: {
      nu[f->name] = w.data_at(i);
      return naive_tptl(w, i, nu, f->lhs);
    }
    case TptlFormula::Kind::Until: {
      for (std::size_t j = i + 1; j < len; ++j) {
        if (!naive_tptl(w, j, nu, f->rhs)) continue;
        bool chain = true;
        for (std::size_t m = i + 1; m < j; ++m) chain = chain && naive_tptl(w, m, nu, f->lhs);
        if (chain) return true;
      }
      return false;
    }
  }
  return false;
}

// Fills every register of the formula, so the map-based reference never
// faults on lookups.
inline std::map<std::string, std::int64_t> naive_initial(const DataWord& w, const TptlPtr& f) {
  std::map<std::string, std::int64_t> nu;
  for (const auto& r : registers_of(f)) nu[r] = w.data_at(0);
  return nu;
}

}  // namespace tempoef::testing
