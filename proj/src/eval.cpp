#include "tempoef/eval.hpp"

#include <algorithm>
#include <unordered_map>

namespace tempoef {

Valuation Valuation::constant(std::int64_t v) {
  Valuation nu;
  nu.fallback_ = v;
  return nu;
}

Valuation Valuation::with(const std::string& reg, std::int64_t v) const {
  Valuation nu = *this;
  nu.vals_[reg] = v;
  return nu;
}

std::int64_t Valuation::at(const std::string& reg) const {
  auto it = vals_.find(reg);
  if (it != vals_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw UnboundRegister(reg);
}

bool Valuation::bound(const std::string& reg) const {
  return fallback_.has_value() || vals_.count(reg) > 0;
}

Valuation Valuation::shifted(std::int64_t c) const {
  Valuation nu = *this;
  for (auto& [k, v] : nu.vals_) v += c;
  if (nu.fallback_) *nu.fallback_ += c;
  return nu;
}

std::string Valuation::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : vals_) {
    if (!first) out += ", ";
    out += k + "=" + std::to_string(v);
    first = false;
  }
  if (fallback_) {
    if (!first) out += ", ";
    out += "*=" + std::to_string(*fallback_);
  }
  return out + "}";
}

Valuation initial_valuation(const DataWord& w) { return Valuation::constant(w.data_at(0)); }

// -------------------------------------------------------------- horizon ----

namespace {

struct LassoShape {
  std::size_t prefix, loop;
  std::int64_t delta;
  std::int64_t data_range;
};

LassoShape shape_of(const DataWord& w) {
  LassoShape s{w.prefix().size(), w.loop().size(), w.delta(), 0};
  std::int64_t lo = w.loop().front().data, hi = lo;
  for (const auto& p : w.prefix()) {
    lo = std::min(lo, p.data);
    hi = std::max(hi, p.data);
  }
  for (const auto& p : w.loop()) {
    lo = std::min(lo, p.data);
    hi = std::max(hi, p.data);
  }
  s.data_range = hi - lo;
  return s;
}

std::size_t horizon_bound(const DataWord& w, int depth, std::int64_t max_const) {
  if (w.is_finite()) return w.finite_length();
  LassoShape s = shape_of(w);
  std::size_t d = static_cast<std::size_t>(std::max(depth, 0));
  if (s.delta == 0) return s.prefix + 2 * s.loop * (d + 1);
  // Divergent tail: one settle window per nesting level. Each level must be
  // able to outrun every finite endpoint relative to its anchor, so the
  // window scales with the endpoint magnitudes plus the in-loop data range.
  std::size_t span = static_cast<std::size_t>(max_const + s.data_range) + 1;
  return s.prefix + s.loop * ((d + 1) * (span + 3) + 2);
}

}  // namespace

std::size_t lasso_horizon(const DataWord& w, const MtlPtr& f) {
  return horizon_bound(w, until_rank(f), constants_of(f).max_abs());
}

std::size_t lasso_horizon(const DataWord& w, const TptlPtr& f) {
  return horizon_bound(w, until_rank(f), constants_of(f).max_abs());
}

// ----------------------------------------------------------- evaluation ----

namespace {

// Shared scan machinery for the strict until over a (possibly lasso) word.
// Callbacks supply the subformula values; `stop` encodes when no witness can
// exist beyond the scanned range (word shape and interval settlement).
struct WordView {
  const DataWord& w;
  std::size_t cap;  // exclusive scan bound
  bool lasso;
  std::size_t prefix, loop;
  std::int64_t delta;

  explicit WordView(const DataWord& word, std::size_t horizon)
      : w(word),
        cap(word.is_finite() ? word.finite_length() : horizon),
        lasso(!word.is_finite()),
        prefix(word.prefix().size()),
        loop(word.loop().size()),
        delta(word.delta()) {}
};

// Tracks whether every future data value provably exceeds `bound`:
// once `loop` consecutive tail positions lie above it, all later ones do,
// because each loop pass adds a non-negative delta to its phase.
struct AboveRun {
  std::int64_t bound;
  std::size_t need;
  std::size_t run = 0;
  bool settled = false;
  void feed(bool in_tail, std::int64_t data) {
    if (settled) return;
    if (in_tail && data > bound) {
      if (++run >= need) settled = true;
    } else {
      run = 0;
    }
  }
};

// One full loop period scanned past both the anchor and the prefix: for a
// periodic (or settled) tail, anything the scan would still meet repeats a
// position already seen.
std::size_t period_stop(const WordView& v, std::size_t anchor) {
  return std::max(anchor + 1, v.prefix) + v.loop;
}

}  // namespace

// ------------------------------------------------------------------ MTL ----

namespace {

class MtlEvaluator {
public:
  MtlEvaluator(const DataWord& w, std::size_t horizon) : v_(w, horizon) {}

  bool value(const MtlPtr& f, std::size_t i) {
    Key k{f.get(), i};
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    bool r = compute(f, i);
    memo_.emplace(k, r);
    return r;
  }

private:
  struct Key {
    const MtlFormula* node;
    std::size_t pos;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>()(k.node) * 1000003u ^ std::hash<std::size_t>()(k.pos);
    }
  };

  bool compute(const MtlPtr& f, std::size_t i) {
    switch (f->kind) {
      case MtlFormula::Kind::True: return true;
      case MtlFormula::Kind::False: return false;
      case MtlFormula::Kind::Prop: {
        const LabelSet& ls = v_.w.labels_at(i);
        return std::binary_search(ls.begin(), ls.end(), f->prop);
      }
      case MtlFormula::Kind::Not: return !value(f->lhs, i);
      case MtlFormula::Kind::And: return value(f->lhs, i) && value(f->rhs, i);
      case MtlFormula::Kind::Or: return value(f->lhs, i) || value(f->rhs, i);
      case MtlFormula::Kind::Until: return until_value(f, i);
    }
    return false;
  }

  bool until_value(const MtlPtr& f, std::size_t i) {
    const Interval& I = f->interval;
    std::int64_t di = v_.w.data_at(i);

    bool hi_bounded = I.upper().has_value();
    bool lo_bounded = I.lower().has_value();
    AboveRun out_of_reach{hi_bounded ? di + *I.upper() : 0, v_.loop};
    AboveRun settled_in{lo_bounded ? di + *I.lower() : 0, v_.loop};
    std::size_t after_settle = 0;
    bool unconstrained = !hi_bounded && !lo_bounded;

    for (std::size_t j = i + 1; j < v_.cap; ++j) {
      std::int64_t dj = v_.w.data_at(j);
      if (value(f->rhs, j) && I.contains(dj - di)) return true;
      if (!value(f->lhs, j)) return false;
      if (!v_.lasso) continue;

      bool in_tail = j >= v_.prefix;
      if (v_.delta == 0 || unconstrained) {
        // Periodic tail (or no data constraint at all): one full period past
        // anchor and prefix exhausts every distinct continuation.
        if (j + 1 >= period_stop(v_, i)) return false;
        continue;
      }
      if (hi_bounded) {
        out_of_reach.feed(in_tail, dj);
        if (out_of_reach.settled) return false;  // differences exceed the interval for good
      } else {
        settled_in.feed(in_tail, dj);
        if (settled_in.settled && ++after_settle >= v_.loop) return false;
      }
    }
    return false;
  }

  WordView v_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

bool eval_mtl(const DataWord& w, std::size_t i, const MtlPtr& f, std::size_t horizon) {
  if (w.is_finite() && i >= w.finite_length())
    throw std::out_of_range("eval: position past the end of the word");
  MtlEvaluator ev(w, std::max(horizon, i + 1));
  return ev.value(f, i);
}

bool eval_mtl(const DataWord& w, std::size_t i, const MtlPtr& f) {
  return eval_mtl(w, i, f, lasso_horizon(w, f) + (w.is_finite() ? 0 : i));
}

bool sat_mtl(const DataWord& w, const MtlPtr& f) { return eval_mtl(w, 0, f); }

// ----------------------------------------------------------------- TPTL ----

namespace {

class TptlEvaluator {
public:
  TptlEvaluator(const DataWord& w, std::size_t horizon, std::int64_t max_const)
      : v_(w, horizon), max_const_(max_const) {}

  bool value(const TptlPtr& f, std::size_t i, const Valuation& nu) {
    Key k{f.get(), i, free_values(f, nu)};
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    bool r = compute(f, i, nu);
    memo_.emplace(std::move(k), r);
    return r;
  }

private:
  struct Key {
    const TptlFormula* node;
    std::size_t pos;
    std::vector<std::int64_t> regs;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::size_t h = std::hash<const void*>()(k.node) * 1000003u ^ k.pos;
      for (auto v : k.regs) h = h * 1000003u ^ std::hash<std::int64_t>()(static_cast<std::int64_t>(v));
      return h;
    }
  };

  const std::vector<std::string>& free_regs(const TptlPtr& f) {
    auto it = free_cache_.find(f.get());
    if (it == free_cache_.end()) {
      auto s = free_registers_of(f);
      it = free_cache_.emplace(f.get(), std::vector<std::string>(s.begin(), s.end())).first;
    }
    return it->second;
  }

  std::vector<std::int64_t> free_values(const TptlPtr& f, const Valuation& nu) {
    std::vector<std::int64_t> out;
    for (const auto& r : free_regs(f)) out.push_back(nu.at(r));
    return out;
  }

  bool compute(const TptlPtr& f, std::size_t i, const Valuation& nu) {
    switch (f->kind) {
      case TptlFormula::Kind::True: return true;
      case TptlFormula::Kind::False: return false;
      case TptlFormula::Kind::Prop: {
        const LabelSet& ls = v_.w.labels_at(i);
        return std::binary_search(ls.begin(), ls.end(), f->name);
      }
      case TptlFormula::Kind::Constraint:
        return f->interval.contains(v_.w.data_at(i) - nu.at(f->name));
      case TptlFormula::Kind::Not: return !value(f->lhs, i, nu);
      case TptlFormula::Kind::And: return value(f->lhs, i, nu) && value(f->rhs, i, nu);
      case TptlFormula::Kind::Or: return value(f->lhs, i, nu) || value(f->rhs, i, nu);
      case TptlFormula::Kind::Freeze:
        return value(f->lhs, i, nu.with(f->name, v_.w.data_at(i)));
      case TptlFormula::Kind::Until: return until_value(f, i, nu);
    }
    return false;
  }

  bool until_value(const TptlPtr& f, std::size_t i, const Valuation& nu) {
    // The only position dependence of the operands is through constraints on
    // the registers free here; once every such difference is permanently
    // above all endpoints, operand values repeat with the loop period.
    std::int64_t bound = 0;
    bool have_regs = false;
    for (const auto& r : free_regs(f)) {
      bound = have_regs ? std::max(bound, nu.at(r)) : nu.at(r);
      have_regs = true;
    }
    AboveRun settled{have_regs ? bound + max_const_ : 0, v_.loop};
    std::size_t after_settle = 0;

    for (std::size_t j = i + 1; j < v_.cap; ++j) {
      if (value(f->rhs, j, nu)) return true;
      if (!value(f->lhs, j, nu)) return false;
      if (!v_.lasso) continue;

      if (v_.delta == 0 || !have_regs) {
        if (j + 1 >= period_stop(v_, i)) return false;
        continue;
      }
      settled.feed(j >= v_.prefix, v_.w.data_at(j));
      if (settled.settled && ++after_settle >= v_.loop) return false;
    }
    return false;
  }

  WordView v_;
  std::int64_t max_const_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  std::unordered_map<const TptlFormula*, std::vector<std::string>> free_cache_;
};

}  // namespace

bool eval_tptl(const DataWord& w, std::size_t i, const Valuation& nu, const TptlPtr& f,
               std::size_t horizon) {
  if (w.is_finite() && i >= w.finite_length())
    throw std::out_of_range("eval: position past the end of the word");
  for (const auto& r : free_registers_of(f))
    if (!nu.bound(r)) throw UnboundRegister(r);
  TptlEvaluator ev(w, std::max(horizon, i + 1), constants_of(f).max_abs());
  return ev.value(f, i, nu);
}

bool eval_tptl(const DataWord& w, std::size_t i, const Valuation& nu, const TptlPtr& f) {
  return eval_tptl(w, i, nu, f, lasso_horizon(w, f) + (w.is_finite() ? 0 : i));
}

bool sat_tptl(const DataWord& w, const TptlPtr& f) {
  return eval_tptl(w, 0, initial_valuation(w), f);
}

}  // namespace tempoef
