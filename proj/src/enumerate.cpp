#include "tempoef/enumerate.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "tempoef/eval.hpp"
#include "tempoef/game_mtl.hpp"
#include "tempoef/game_tptl.hpp"

namespace tempoef {

namespace {

using Fingerprint = std::vector<std::uint64_t>;

struct BitWriter {
  Fingerprint bits;
  explicit BitWriter(std::size_t n) : bits((n + 63) / 64, 0) {}
  void set(std::size_t i, bool v) {
    if (v) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  bool get(std::size_t i) const { return bits[i >> 6] & (std::uint64_t{1} << (i & 63)); }
};

bool fp_get(const Fingerprint& fp, std::size_t i) {
  return fp[i >> 6] & (std::uint64_t{1} << (i & 63));
}

Fingerprint fp_not(const Fingerprint& a, std::size_t n) {
  Fingerprint r(a);
  for (auto& w : r) w = ~w;
  if (n & 63) r.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  return r;
}
Fingerprint fp_and(const Fingerprint& a, const Fingerprint& b) {
  Fingerprint r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] &= b[i];
  return r;
}
Fingerprint fp_or(const Fingerprint& a, const Fingerprint& b) {
  Fingerprint r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] |= b[i];
  return r;
}

// ------------------------------------------------------------------ MTL ----

// Anchor layout: one bit per (probe word, position), words concatenated.
struct MtlProbe {
  std::vector<DataWord> words;
  std::vector<std::size_t> base;  // offset of each word's first position
  std::size_t total = 0;

  explicit MtlProbe(const std::vector<DataWord>& ws) : words(ws) {
    for (const auto& w : words) {
      base.push_back(total);
      total += w.finite_length();
    }
  }

  Fingerprint atom(const std::function<bool(const DataWord&, std::size_t)>& pred) const {
    BitWriter out(total);
    for (std::size_t wi = 0; wi < words.size(); ++wi)
      for (std::size_t j = 0; j < words[wi].finite_length(); ++j)
        out.set(base[wi] + j, pred(words[wi], j));
    return out.bits;
  }

  Fingerprint until(const Fingerprint& lhs, const Interval& in, const Fingerprint& rhs) const {
    BitWriter out(total);
    for (std::size_t wi = 0; wi < words.size(); ++wi) {
      const DataWord& w = words[wi];
      std::size_t len = w.finite_length(), b = base[wi];
      for (std::size_t i = 0; i < len; ++i) {
        bool val = false;
        for (std::size_t j = i + 1; j < len; ++j) {
          if (fp_get(rhs, b + j) && in.contains(w.data_at(j) - w.data_at(i))) {
            val = true;
            break;
          }
          if (!fp_get(lhs, b + j)) break;
        }
        out.set(b + i, val);
      }
    }
    return out.bits;
  }
};

struct MtlCand {
  MtlPtr f;
  Fingerprint fp;
  int rank;
  std::string text;
};

// Size-stratified enumeration with semantic dedup; calls `sink` for every
// kept formula in (size, print) order. `sink` returning true stops early.
bool enumerate_mtl_core(const EnumBudget& budget,
                        const std::function<bool(const MtlCand&)>& sink) {
  for (const auto& w : budget.probe_words)
    if (!w.is_finite()) throw std::invalid_argument("enumerate: probe words must be finite");
  MtlProbe probe(budget.probe_words);
  std::vector<Interval> intervals = budget.constants.region_intervals();
  std::set<Fingerprint> seen;
  std::vector<std::vector<MtlCand>> pool(budget.max_size + 1);
  std::size_t generated = 0;

  auto guard = [&]() {
    if (++generated > budget.pool_ceiling) throw BudgetExceeded(generated);
  };

  for (std::size_t size = 1; size <= budget.max_size; ++size) {
    std::vector<MtlCand> cands;
    auto add = [&](MtlPtr f, Fingerprint fp, int rank) {
      guard();
      cands.push_back({std::move(f), std::move(fp), rank, ""});
    };

    if (size == 1) {
      add(mtl::tt(), probe.atom([](const DataWord&, std::size_t) { return true; }), 0);
      add(mtl::ff(), probe.atom([](const DataWord&, std::size_t) { return false; }), 0);
      for (const auto& p : budget.props)
        add(mtl::prop(p), probe.atom([&p](const DataWord& w, std::size_t j) {
              const LabelSet& ls = w.labels_at(j);
              return std::binary_search(ls.begin(), ls.end(), p);
            }),
            0);
    } else {
      for (const auto& c : pool[size - 1]) {
        if (c.f->kind == MtlFormula::Kind::Not) continue;  // skip double negation
        add(mtl::negate(c.f), fp_not(c.fp, probe.total), c.rank);
      }
      for (std::size_t s1 = 1; s1 + 2 <= size; ++s1) {
        std::size_t s2 = size - 1 - s1;
        for (const auto& a : pool[s1]) {
          bool a_const = a.f->kind == MtlFormula::Kind::True || a.f->kind == MtlFormula::Kind::False;
          for (const auto& b : pool[s2]) {
            bool b_const =
                b.f->kind == MtlFormula::Kind::True || b.f->kind == MtlFormula::Kind::False;
            if (s1 <= s2 && !a_const && !b_const) {
              add(mtl::conj(a.f, b.f), fp_and(a.fp, b.fp), std::max(a.rank, b.rank));
              add(mtl::disj(a.f, b.f), fp_or(a.fp, b.fp), std::max(a.rank, b.rank));
            }
            int urank = std::max(a.rank, b.rank) + 1;
            if (urank <= budget.max_rank && b.f->kind != MtlFormula::Kind::False) {
              for (const auto& in : intervals) {
                MtlPtr u = a.f->kind == MtlFormula::Kind::True ? mtl::eventually(in, b.f)
                           : a.f->kind == MtlFormula::Kind::False
                               ? mtl::next(in, b.f)
                               : mtl::until(a.f, in, b.f);
                add(std::move(u), probe.until(a.fp, in, b.fp), urank);
              }
            }
          }
        }
      }
    }

    for (auto& c : cands) c.text = to_string(c.f);
    std::sort(cands.begin(), cands.end(),
              [](const MtlCand& a, const MtlCand& b) { return a.text < b.text; });
    for (auto& c : cands) {
      if (!seen.insert(c.fp).second) continue;
      pool[size].push_back(c);
      if (sink(c)) return true;
    }
  }
  return false;
}

// ----------------------------------------------------------------- TPTL ----

// Anchor layout per word: (position, register valuation) pairs, where each
// register ranges over the word's distinct data values; freezing therefore
// stays inside the grid.
struct TptlProbe {
  struct WordGrid {
    DataWord w;
    std::vector<std::int64_t> values;  // distinct data values, sorted
    std::size_t base = 0;
    std::size_t n_ctx = 0;  // len * values^n
  };
  std::vector<WordGrid> grids;
  std::size_t total = 0;
  int regs;

  TptlProbe(const std::vector<DataWord>& ws, int n) : regs(n) {
    for (const auto& w : ws) {
      WordGrid g{w, {}, total, 0};
      for (std::size_t j = 0; j < w.finite_length(); ++j) g.values.push_back(w.data_at(j));
      std::sort(g.values.begin(), g.values.end());
      g.values.erase(std::unique(g.values.begin(), g.values.end()), g.values.end());
      std::size_t combos = 1;
      for (int r = 0; r < n; ++r) combos *= g.values.size();
      g.n_ctx = w.finite_length() * combos;
      total += g.n_ctx;
      grids.push_back(std::move(g));
    }
  }

  std::size_t value_index(const WordGrid& g, std::int64_t v) const {
    return static_cast<std::size_t>(
        std::lower_bound(g.values.begin(), g.values.end(), v) - g.values.begin());
  }

  // context id = ((pos * V + v_{n-1}) * V + ... ) * V + v_0
  std::size_t ctx(const WordGrid& g, std::size_t pos, const std::vector<std::size_t>& vi) const {
    std::size_t id = pos;
    for (int r = regs - 1; r >= 0; --r) id = id * g.values.size() + vi[static_cast<std::size_t>(r)];
    return id;
  }

  template <typename Fn>  // fn(grid, pos, value-indices, ctx-id)
  void for_each_ctx(Fn&& fn) const {
    for (const auto& g : grids) {
      std::vector<std::size_t> vi(static_cast<std::size_t>(regs), 0);
      for (std::size_t pos = 0; pos < g.w.finite_length(); ++pos) {
        std::fill(vi.begin(), vi.end(), 0);
        for (;;) {
          fn(g, pos, vi, g.base + ctx(g, pos, vi));
          int r = 0;
          for (; r < regs; ++r) {
            if (++vi[static_cast<std::size_t>(r)] < g.values.size()) break;
            vi[static_cast<std::size_t>(r)] = 0;
          }
          if (r == regs) break;
        }
      }
    }
  }

  Fingerprint atom(const std::function<bool(const WordGrid&, std::size_t,
                                            const std::vector<std::size_t>&)>& pred) const {
    BitWriter out(total);
    for_each_ctx([&](const WordGrid& g, std::size_t pos, const std::vector<std::size_t>& vi,
                     std::size_t id) { out.set(id, pred(g, pos, vi)); });
    return out.bits;
  }

  Fingerprint freeze(int reg, const Fingerprint& body) const {
    BitWriter out(total);
    for_each_ctx([&](const WordGrid& g, std::size_t pos, const std::vector<std::size_t>& vi,
                     std::size_t id) {
      std::vector<std::size_t> vj = vi;
      vj[static_cast<std::size_t>(reg)] = value_index(g, g.w.data_at(pos));
      out.set(id, fp_get(body, g.base + ctx(g, pos, vj)));
    });
    return out.bits;
  }

  Fingerprint until(const Fingerprint& lhs, const Fingerprint& rhs) const {
    BitWriter out(total);
    for_each_ctx([&](const WordGrid& g, std::size_t pos, const std::vector<std::size_t>& vi,
                     std::size_t id) {
      bool val = false;
      for (std::size_t j = pos + 1; j < g.w.finite_length(); ++j) {
        std::size_t jd = g.base + ctx(g, j, vi);
        if (fp_get(rhs, jd)) {
          val = true;
          break;
        }
        if (!fp_get(lhs, jd)) break;
      }
      out.set(id, val);
    });
    return out.bits;
  }
};

struct TptlCand {
  TptlPtr f;
  Fingerprint fp;
  int rank;
  std::string text;
};

bool enumerate_tptl_core(const EnumBudget& budget,
                         const std::function<bool(const TptlCand&)>& sink) {
  for (const auto& w : budget.probe_words)
    if (!w.is_finite()) throw std::invalid_argument("enumerate: probe words must be finite");
  if (budget.registers < 1) throw std::invalid_argument("enumerate: TPTL needs registers >= 1");
  TptlProbe probe(budget.probe_words, budget.registers);
  std::vector<Interval> intervals = budget.fragment.equality_only
                                        ? std::vector<Interval>{Interval::singleton(0)}
                                        : budget.constants.region_intervals();
  std::set<Fingerprint> seen;
  std::vector<std::vector<TptlCand>> pool(budget.max_size + 1);
  std::size_t generated = 0;
  auto guard = [&]() {
    if (++generated > budget.pool_ceiling) throw BudgetExceeded(generated);
  };

  for (std::size_t size = 1; size <= budget.max_size; ++size) {
    std::vector<TptlCand> cands;
    auto add = [&](TptlPtr f, Fingerprint fp, int rank) {
      guard();
      cands.push_back({std::move(f), std::move(fp), rank, ""});
    };

    if (size == 1) {
      add(tptl::tt(), probe.atom([](const auto&, std::size_t, const auto&) { return true; }), 0);
      add(tptl::ff(), probe.atom([](const auto&, std::size_t, const auto&) { return false; }), 0);
      for (const auto& p : budget.props)
        add(tptl::prop(p), probe.atom([&p](const auto& g, std::size_t pos, const auto&) {
              const LabelSet& ls = g.w.labels_at(pos);
              return std::binary_search(ls.begin(), ls.end(), p);
            }),
            0);
      for (int r = 0; r < budget.registers; ++r)
        for (const auto& in : intervals)
          add(tptl::constraint("x" + std::to_string(r + 1), in),
              probe.atom([&](const auto& g, std::size_t pos, const auto& vi) {
                return in.contains(g.w.data_at(pos) -
                                   g.values[vi[static_cast<std::size_t>(r)]]);
              }),
              0);
    } else {
      for (const auto& c : pool[size - 1]) {
        if (c.f->kind != TptlFormula::Kind::Not)
          add(tptl::negate(c.f), fp_not(c.fp, probe.total), c.rank);
        for (int r = 0; r < budget.registers; ++r)
          add(tptl::freeze("x" + std::to_string(r + 1), c.f), probe.freeze(r, c.fp), c.rank);
      }
      // F and X are until with a constant left side; they price at size+2.
      if (size >= 3) {
        for (const auto& b : pool[size - 2]) {
          if (b.rank + 1 > budget.max_rank) continue;
          add(tptl::eventually(b.f), probe.until(probe.atom([](const auto&, std::size_t,
                                                              const auto&) { return true; }),
                                                 b.fp),
              b.rank + 1);
          add(tptl::next(b.f),
              probe.until(probe.atom([](const auto&, std::size_t, const auto&) { return false; }),
                          b.fp),
              b.rank + 1);
        }
      }
      for (std::size_t s1 = 1; s1 + 2 <= size; ++s1) {
        std::size_t s2 = size - 1 - s1;
        for (const auto& a : pool[s1]) {
          bool a_const =
              a.f->kind == TptlFormula::Kind::True || a.f->kind == TptlFormula::Kind::False;
          for (const auto& b : pool[s2]) {
            bool b_const =
                b.f->kind == TptlFormula::Kind::True || b.f->kind == TptlFormula::Kind::False;
            if (s1 <= s2 && !a_const && !b_const) {
              add(tptl::conj(a.f, b.f), fp_and(a.fp, b.fp), std::max(a.rank, b.rank));
              add(tptl::disj(a.f, b.f), fp_or(a.fp, b.fp), std::max(a.rank, b.rank));
            }
            if (!budget.fragment.unary_only && !a_const &&
                b.f->kind != TptlFormula::Kind::False &&
                std::max(a.rank, b.rank) + 1 <= budget.max_rank)
              add(tptl::until(a.f, b.f), probe.until(a.fp, b.fp), std::max(a.rank, b.rank) + 1);
          }
        }
      }
    }

    for (auto& c : cands) c.text = to_string(c.f);
    std::sort(cands.begin(), cands.end(),
              [](const TptlCand& a, const TptlCand& b) { return a.text < b.text; });
    for (auto& c : cands) {
      if (!seen.insert(c.fp).second) continue;
      pool[size].push_back(c);
      if (sink(c)) return true;
    }
  }
  return false;
}

std::vector<DataWord> default_probe_extension(const std::vector<std::string>& props,
                                              std::int64_t max_data) {
  // Deterministic filler probes; the configurations under test always come
  // first and carry the distinguishing bits.
  std::mt19937 rng(0x7e11u);
  std::vector<DataWord> out;
  for (int i = 0; i < 8; ++i) {
    std::size_t len = 2 + rng() % 4;
    std::vector<DataPoint> pts;
    for (std::size_t j = 0; j < len; ++j) {
      DataPoint p;
      for (const auto& q : props)
        if (rng() % 2) p.labels.push_back(q);
      std::sort(p.labels.begin(), p.labels.end());
      p.data = static_cast<std::int64_t>(rng() % static_cast<unsigned>(max_data + 1));
      pts.push_back(std::move(p));
    }
    out.push_back(DataWord::finite(props, std::move(pts)));
  }
  return out;
}

void prepare_probes(EnumBudget& budget, const DataWord& w0, const DataWord& w1) {
  if (!w0.is_finite() || !w1.is_finite())
    throw std::invalid_argument("find_distinguisher: finite words only");
  std::vector<DataWord> probes{w0, w1};
  if (budget.probe_words.empty()) {
    std::int64_t max_data = budget.constants.max_abs() + 2;
    for (std::size_t j = 0; j < w0.finite_length(); ++j) max_data = std::max(max_data, w0.data_at(j));
    for (std::size_t j = 0; j < w1.finite_length(); ++j) max_data = std::max(max_data, w1.data_at(j));
    auto extra = default_probe_extension(budget.props, max_data);
    probes.insert(probes.end(), extra.begin(), extra.end());
  } else {
    probes.insert(probes.end(), budget.probe_words.begin(), budget.probe_words.end());
  }
  budget.probe_words = std::move(probes);
}

}  // namespace

std::vector<MtlPtr> enumerate_mtl(const EnumBudget& budget) {
  std::vector<MtlPtr> out;
  enumerate_mtl_core(budget, [&](const MtlCand& c) {
    out.push_back(c.f);
    return false;
  });
  return out;
}

std::vector<TptlPtr> enumerate_tptl(const EnumBudget& budget) {
  std::vector<TptlPtr> out;
  enumerate_tptl_core(budget, [&](const TptlCand& c) {
    out.push_back(c.f);
    return false;
  });
  return out;
}

std::optional<MtlPtr> find_distinguisher_mtl(const DataWord& w0, std::size_t i0,
                                             const DataWord& w1, std::size_t i1,
                                             EnumBudget budget) {
  prepare_probes(budget, w0, w1);
  std::size_t a0 = i0;                       // anchor of (w0, i0)
  std::size_t a1 = w0.finite_length() + i1;  // anchor of (w1, i1)
  std::optional<MtlPtr> found;
  enumerate_mtl_core(budget, [&](const MtlCand& c) {
    if (fp_get(c.fp, a0) != fp_get(c.fp, a1)) {
      found = c.f;
      return true;
    }
    return false;
  });
  return found;
}

std::optional<TptlPtr> find_distinguisher_tptl(const DataWord& w0, std::size_t i0,
                                               const DataWord& w1, std::size_t i1,
                                               EnumBudget budget) {
  prepare_probes(budget, w0, w1);
  TptlProbe probe(budget.probe_words, budget.registers);
  // Anchor contexts: the initial valuation maps every register to d0.
  const auto& g0 = probe.grids[0];
  const auto& g1 = probe.grids[1];
  std::vector<std::size_t> v0(static_cast<std::size_t>(budget.registers),
                              probe.value_index(g0, w0.data_at(0)));
  std::vector<std::size_t> v1(static_cast<std::size_t>(budget.registers),
                              probe.value_index(g1, w1.data_at(0)));
  std::size_t a0 = g0.base + probe.ctx(g0, i0, v0);
  std::size_t a1 = g1.base + probe.ctx(g1, i1, v1);
  std::optional<TptlPtr> found;
  enumerate_tptl_core(budget, [&](const TptlCand& c) {
    if (fp_get(c.fp, a0) != fp_get(c.fp, a1)) {
      found = c.f;
      return true;
    }
    return false;
  });
  return found;
}

// ------------------------------------------------------- witness search ----

namespace {

std::vector<DataWord> all_small_words(const WitnessSearchBudget& budget) {
  std::vector<LabelSet> labelings{{}};
  for (const auto& p : budget.props) {
    std::size_t n = labelings.size();
    for (std::size_t i = 0; i < n; ++i) {
      LabelSet ls = labelings[i];
      ls.push_back(p);
      std::sort(ls.begin(), ls.end());
      labelings.push_back(std::move(ls));
    }
  }
  std::vector<DataPoint> points;
  for (const auto& ls : labelings)
    for (std::int64_t d = 0; d <= budget.max_data; ++d) points.push_back({ls, d});

  std::vector<DataWord> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> build = [&](std::size_t len) {
    if (idx.size() == len) {
      std::vector<DataPoint> pts;
      for (auto i : idx) pts.push_back(points[i]);
      out.push_back(DataWord::finite(budget.props, std::move(pts)));
      return;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      idx.push_back(i);
      build(len);
      idx.pop_back();
    }
  };
  for (std::size_t len = 1; len <= budget.max_len; ++len) build(len);
  return out;
}

template <typename Formula, typename EvalFn>
std::optional<std::pair<DataWord, DataWord>> search_witness_impl(
    const Formula& f, const WitnessTarget& target, const WitnessSearchBudget& budget,
    const EvalFn& holds) {
  std::vector<DataWord> words = all_small_words(budget);
  std::vector<char> value(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) value[i] = holds(words[i]);

  std::size_t tried = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!value[i]) continue;
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (value[j]) continue;
      if (++tried > budget.max_pairs) return std::nullopt;
      Player winner;
      if (target.tptl_game) {
        TptlGameConfig cfg{words[i], words[j], target.constants, target.registers,
                           target.rounds,  0,        target.fragment};
        winner = solve_tg(cfg);
      } else {
        MtlGameConfig cfg{words[i], words[j], target.constants, target.rounds, 0};
        winner = solve_mg(cfg);
      }
      if (winner == Player::Duplicator) return std::make_pair(words[i], words[j]);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<DataWord, DataWord>> search_witness_pair(
    const MtlPtr& f, const WitnessTarget& target, const WitnessSearchBudget& budget) {
  return search_witness_impl(f, target, budget,
                             [&](const DataWord& w) { return sat_mtl(w, f); });
}

std::optional<std::pair<DataWord, DataWord>> search_witness_pair(
    const TptlPtr& f, const WitnessTarget& target, const WitnessSearchBudget& budget) {
  return search_witness_impl(f, target, budget,
                             [&](const DataWord& w) { return sat_tptl(w, f); });
}

}  // namespace tempoef
