#include "tempoef/selfcheck.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>

#include "tempoef/corpus.hpp"
#include "tempoef/enumerate.hpp"
#include "tempoef/eval.hpp"
#include "tempoef/game_mtl.hpp"
#include "tempoef/game_tptl.hpp"
#include "tempoef/gen.hpp"
#include "tempoef/parse.hpp"

namespace tempoef {

namespace {

struct Check {
  int failures = 0;
  std::string first;
  void expect(bool ok, const std::function<std::string()>& describe) {
    if (ok) return;
    if (failures == 0) first = describe();
    ++failures;
  }
  bool pass() const { return failures == 0; }
  std::string detail() const {
    if (failures == 0) return "";
    return std::to_string(failures) + " failure(s); first: " + first;
  }
};

std::string show_pair(const DataWord& a, const DataWord& b) {
  return "w0=" + a.to_json_string() + " w1=" + b.to_json_string();
}

// 1. Region oracle: the worked example plus the coarsening property,
// exhaustive over constant sets of up to four constants in [-10,10].
Check criterion_region(std::uint64_t) {
  Check c;
  ConstantSet example({1, 3, 8});
  c.expect(!example.same_region(1, 2), [] { return std::string("1 ~ 2 wrt {1,3,8}"); });
  c.expect(example.same_region(4, 5), [] { return std::string("4 !~ 5 wrt {1,3,8}"); });

  std::vector<std::int64_t> values;
  for (std::int64_t v = -10; v <= 10; ++v) values.push_back(v);

  std::vector<std::vector<std::int64_t>> sets{{}};
  for (std::size_t pick = 0; pick < 4; ++pick) {
    std::size_t end = sets.size();
    for (std::size_t i = 0; i < end; ++i)
      for (std::int64_t v : values)
        if (sets[i].empty() || sets[i].back() < v) {
          auto s = sets[i];
          s.push_back(v);
          sets.push_back(std::move(s));
        }
    // sets now holds all ascending tuples of length <= pick+1 (plus shorter)
  }

  for (const auto& s : sets) {
    ConstantSet cs(s);
    std::vector<Interval> intervals;
    std::vector<std::optional<std::int64_t>> ends{std::nullopt};
    for (auto v : s) ends.push_back(v);
    for (const auto& lo : ends)
      for (const auto& hi : ends)
        for (int lc = 0; lc < 2; ++lc)
          for (int hc = 0; hc < 2; ++hc) {
            if (!lo && lc) continue;
            if (!hi && hc) continue;
            if (lo && hi && (*lo > *hi || (*lo == *hi && !(lc && hc)))) continue;
            intervals.push_back(Interval::make(lo, lc, hi, hc));
          }
    for (std::int64_t m : values)
      for (std::int64_t n : values) {
        if (!cs.same_region(m, n)) continue;
        for (const auto& in : intervals)
          c.expect(in.contains(m) == in.contains(n), [&] {
            std::ostringstream os;
            os << "same_region(" << m << "," << n << ") wrt " << cs.to_string()
               << " but " << in.to_string() << " separates them";
            return os.str();
          });
      }
  }
  return c;
}

Check check_family(const std::string& family, const FamilyParams& params, std::size_t horizon) {
  Check c;
  ClaimReport r = run_claim(family, params, horizon);
  for (const auto& item : r.items)
    c.expect(item.pass, [&] { return family + ": " + item.name + " " + item.detail; });
  return c;
}

// 2. First separation pair: the three-step revisit formula.
Check criterion_xfff(std::uint64_t) {
  Check c;
  for (int k = 1; k <= 3; ++k) {
    FamilyParams p;
    p.r = 2;
    p.s = 4;
    p.k = k;
    p.constants = ConstantSet({-1, 0, 1});
    Check sub = check_family("prop4.2-xfff", p, 12);
    c.expect(sub.pass(), [&] { return "k=" + std::to_string(k) + ": " + sub.first; });
  }
  return c;
}

// 3. Second separation pair: b-then-c with a bounded rise.
Check criterion_xfbc(std::uint64_t) {
  Check c;
  for (int k = 1; k <= 2; ++k) {
    FamilyParams p;
    p.r = 3;
    p.s = 9;
    p.k = k;
    p.constants = ConstantSet({-1, 0, 1});
    Check sub = check_family("prop4.2-xfbc", p, 12);
    c.expect(sub.pass(), [&] { return "k=" + std::to_string(k) + ": " + sub.first; });
  }
  return c;
}

std::vector<std::pair<DataWord, DataWord>> random_pairs(std::uint64_t seed, int count) {
  Gen g(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<std::pair<DataWord, DataWord>> pairs;
  for (int i = 0; i < count; ++i)
    pairs.emplace_back(g.finite_word(1, 5, 4, {"p"}), g.finite_word(1, 5, 4, {"p"}));
  return pairs;
}

// 4. Game-vs-logic cross check on random finite pairs: a Spoiler win yields
// a verified distinguisher, a Duplicator win defeats the budgeted search.
Check criterion_game_logic(std::uint64_t seed) {
  Check c;
  ConstantSet zero({0});
  for (auto& [wa, wb] : random_pairs(seed, 200)) {
    MtlGameConfig cfg{wa, wb, zero, 2, 8};
    MtlGame game(cfg);
    for (int k = 0; k <= 2; ++k) {
      if (!game.duplicator_wins(k, 0, 0)) {
        MtlGameConfig kcfg{wa, wb, zero, k, 8};
        MtlPtr f = MtlGame(kcfg).extract_formula({0, 0});
        bool ok = eval_mtl(wa, 0, f) && !eval_mtl(wb, 0, f) && until_rank(f) <= k &&
                  constants_of(f).subset_of(zero);
        c.expect(ok, [&, k] {
          return "extracted " + to_string(f) + " fails at k=" + std::to_string(k) + " on " +
                 show_pair(wa, wb);
        });
      } else {
        EnumBudget budget;
        budget.max_rank = k;
        budget.constants = zero;
        budget.max_size = 7;
        budget.props = {"p"};
        budget.pool_ceiling = 4000000;
        auto found = find_distinguisher_mtl(wa, 0, wb, 0, budget);
        c.expect(!found, [&, k] {
          return "duplicator wins at k=" + std::to_string(k) + " but " + to_string(*found) +
                 " separates " + show_pair(wa, wb);
        });
      }
    }
  }
  return c;
}

// 5. Until hierarchy, interval and register versions.
Check criterion_until_hierarchy(std::uint64_t) {
  Check c;
  for (int k = 1; k <= 2; ++k) {
    FamilyParams p;
    p.r = 2;
    p.k = k;
    Check a = check_family("prop4.8-until", p, 0);
    c.expect(a.pass(), [&] { return a.first; });
    FamilyParams q;
    q.k = k;
    Check b = check_family("prop5.8-until-zero", q, 0);
    c.expect(b.pass(), [&] { return b.first; });
  }
  return c;
}

// 6. Two registers beat one.
Check criterion_two_registers(std::uint64_t) {
  Check c;
  for (int k = 1; k <= 2; ++k) {
    FamilyParams p;
    p.r = 2;
    p.k = k;
    Check sub = check_family("prop5.10", p, 0);
    c.expect(sub.pass(), [&] { return sub.first; });
  }
  return c;
}

// 7. Shift invariance: adding a constant to every data value changes no
// game, with valuations shifted alongside for the register game.
Check criterion_shift(std::uint64_t seed) {
  Check c;
  Gen g(seed ^ 0xa5a5a5a5ull);
  ConstantSet cs({-1, 0, 2});
  for (int i = 0; i < 100; ++i) {
    DataWord w = g.finite_word(1, 6, 6, {"p", "q"});
    for (std::int64_t shift : {std::int64_t{1}, std::int64_t{5}}) {
      DataWord v = w.shifted(shift);
      MtlGameConfig cfg{w, v, cs, 3, 8};
      MtlGame game(cfg);
      for (int k = 0; k <= 3; ++k)
        c.expect(game.duplicator_wins(k, 0, 0), [&, k, shift] {
          return "MG k=" + std::to_string(k) + " shift=" + std::to_string(shift) + " on " +
                 w.to_json_string();
        });
      TptlGameConfig tcfg{w, v, cs, 1, 2, 8, {}};
      TptlGame tgame(tcfg);
      for (int k = 0; k <= 2; ++k)
        c.expect(tgame.duplicator_wins(k, {0, 0}), [&, k, shift] {
          return "TG k=" + std::to_string(k) + " shift=" + std::to_string(shift) + " on " +
                 w.to_json_string();
        });
    }
  }
  return c;
}

// 8. The one-register translation agrees with direct evaluation.
Check criterion_translation(std::uint64_t seed) {
  Check c;
  Gen g(seed ^ 0x51edull);
  for (int i = 0; i < 100; ++i) {
    DataWord w = g.finite_word(1, 6, 6, {"p", "q"});
    MtlPtr f = g.mtl_formula(2, 3, {"p", "q"}, 7);
    TptlPtr t = mtl_to_tptl1(f);
    std::size_t pos = static_cast<std::size_t>(
        g.range(0, static_cast<std::int64_t>(w.finite_length()) - 1));
    bool lhs = eval_mtl(w, pos, f);
    bool rhs = eval_tptl(w, pos, Valuation::constant(w.data_at(pos)), t);
    c.expect(lhs == rhs, [&] {
      return to_string(f) + " vs " + to_string(t) + " at " + std::to_string(pos) + " on " +
             w.to_json_string();
    });
    c.expect(until_rank(f) == until_rank(t),
             [&] { return "rank drift in " + to_string(t); });
    c.expect(constants_of(f) == constants_of(t),
             [&] { return "constant drift in " + to_string(t); });
  }
  return c;
}

// 9. Lasso evaluation is stable in the scan window.
Check criterion_lasso_stability(std::uint64_t seed) {
  Check c;
  Gen g(seed ^ 0x1a550ull);
  for (int i = 0; i < 50; ++i) {
    DataWord w = g.lasso_word(3, 3, 5, 3, {"p"});
    if (i % 2 == 0) {
      MtlPtr f = g.mtl_formula(2, 3, {"p"}, 7);
      std::size_t h = lasso_horizon(w, f);
      c.expect(eval_mtl(w, 0, f, h) == eval_mtl(w, 0, f, 2 * h), [&] {
        return "MTL " + to_string(f) + " unstable at H=" + std::to_string(h) + " on " +
               w.to_json_string();
      });
    } else {
      TptlPtr f = g.tptl_formula(2, 3, {"p"}, 2, 7);
      std::size_t h = lasso_horizon(w, f);
      Valuation ev = initial_valuation(w);
      c.expect(eval_tptl(w, 0, ev, f, h) == eval_tptl(w, 0, ev, f, 2 * h), [&] {
        return "TPTL " + to_string(f) + " unstable at H=" + std::to_string(h) + " on " +
               w.to_json_string();
      });
    }
  }
  return c;
}

// 10. The ramp family: a word against its own one-step suffix.
Check criterion_ramp(std::uint64_t) {
  Check c;
  for (int k = 1; k <= 3; ++k)
    for (const char* suffix : {"arith", "flat", "steep"}) {
      FamilyParams p;
      p.k = k;
      p.suffix = suffix;
      Check sub = check_family("lemma4.3", p, 0);
      c.expect(sub.pass(), [&] { return std::string(suffix) + ": " + sub.first; });
    }
  return c;
}

// 11. Cross-logic soundness: the register game with one register is never
// easier for Spoiler than the interval game.
Check criterion_cross_logic(std::uint64_t seed) {
  Check c;
  ConstantSet zero({0});
  for (auto& [wa, wb] : random_pairs(seed, 200)) {
    MtlGameConfig mcfg{wa, wb, zero, 2, 8};
    MtlGame mg(mcfg);
    TptlGameConfig tcfg{wa, wb, zero, 1, 2, 8, {}};
    TptlGame tg(tcfg);
    for (int k = 0; k <= 2; ++k) {
      bool dup_tg = tg.duplicator_wins(k, {0, 0});
      bool dup_mg = mg.duplicator_wins(k, 0, 0);
      c.expect(!(dup_tg && !dup_mg), [&, k] {
        return "k=" + std::to_string(k) + ": Duplicator survives TG but not MG on " +
               show_pair(wa, wb);
      });
    }
  }
  return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::set<int>& only) {
  struct Entry {
    int id;
    const char* name;
    Check (*fn)(std::uint64_t);
  };
  const Entry entries[] = {
      {1, "region oracle and coarsening", criterion_region},
      {2, "separation pair: three-step revisit", criterion_xfff},
      {3, "separation pair: b then c with bounded rise", criterion_xfbc},
      {4, "game vs bounded logic search on random pairs", criterion_game_logic},
      {5, "until hierarchy (interval and register games)", criterion_until_hierarchy},
      {6, "two registers vs one", criterion_two_registers},
      {7, "shift invariance of both games", criterion_shift},
      {8, "translation equivalence", criterion_translation},
      {9, "lasso horizon stability", criterion_lasso_stability},
      {10, "ramp vs suffix machine check", criterion_ramp},
      {11, "cross-logic soundness", criterion_cross_logic},
  };
  std::vector<CriterionResult> out;
  for (const auto& e : entries) {
    if (!only.empty() && !only.count(e.id)) continue;
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Check c = e.fn(seed);
      r.pass = c.pass();
      r.detail = c.detail();
    } catch (const std::exception& ex) {
      r.pass = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name;
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.2fs)", r.seconds);
    out << buf;
    if (!r.pass) out << " -- " << r.detail;
    out << "\n";
    all = all && r.pass;
  }
  return all;
}

}  // namespace tempoef
