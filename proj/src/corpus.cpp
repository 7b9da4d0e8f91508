#include "tempoef/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tempoef/enumerate.hpp"
#include "tempoef/eval.hpp"
#include "tempoef/game_mtl.hpp"
#include "tempoef/game_tptl.hpp"
#include "tempoef/parse.hpp"

namespace tempoef {

MtlPtr until_chain_mtl(int k) {
  if (k < 1) throw std::invalid_argument("until chain: k >= 1");
  MtlPtr f = mtl::prop("p");
  for (int i = 0; i < k; ++i) f = mtl::conj(mtl::prop("p"), mtl::next(Interval::all(), f));
  return f;
}

TptlPtr until_chain_tptl(int k) {
  if (k < 1) throw std::invalid_argument("until chain: k >= 1");
  TptlPtr f = tptl::prop("p");
  for (int i = 0; i < k; ++i) f = tptl::conj(tptl::prop("p"), tptl::next(f));
  return f;
}

namespace {

[[noreturn]] void violated(const std::string& family, const std::string& condition) {
  throw std::invalid_argument("family " + family + ": side condition violated: " + condition);
}

ConstantSet default_constants(const FamilyParams& p, std::int64_t r, const std::string& family) {
  ConstantSet c = p.constants ? *p.constants : ConstantSet({-1, 0, 1});
  if (c.max_abs() >= r) violated(family, "all game constants must lie strictly inside (-r,+r)");
  return c;
}

DataPoint pt(std::initializer_list<const char*> labels, std::int64_t data) {
  return make_point(labels, data);
}

// Tail with all data >= base, in the requested style. All styles use a
// one-point loop: the two words sit one position apart, so a loop whose
// label or data pattern has a longer period leaves the last window
// positions out of phase, and the horizon-bounded game then genuinely
// diverges from the infinite one (Spoiler wins near the window edge).
std::pair<std::vector<DataPoint>, std::int64_t> tail(const std::string& style, std::int64_t base,
                                                     std::int64_t r) {
  if (style == "arith") return {{pt({"q"}, base)}, r};
  if (style == "flat") return {{pt({"q"}, base)}, 0};
  if (style == "steep") return {{pt({"q"}, base + r)}, 3 * r};
  throw std::invalid_argument("unknown suffix style '" + style + "' (arith|flat|steep)");
}

FamilyInstance xfff(const FamilyParams& p) {
  std::int64_t r = p.r.value_or(2), s = p.s.value_or(2 * r);
  if (r < 1) violated("prop4.2-xfff", "r >= 1");
  if (s < 2 * r) violated("prop4.2-xfff", "s >= 2r");
  FamilyInstance fi;
  fi.family = "prop4.2-xfff";
  fi.constants = default_constants(p, r, fi.family);
  fi.w0 = DataWord::lasso({}, {pt({}, s), pt({}, s - 2 * r), pt({}, s - r)}, {pt({}, s)}, r);
  fi.w1 = DataWord::lasso({}, {pt({}, s), pt({}, s - r)}, {pt({}, s)}, r);
  fi.tptl_formula = parse_tptl("x1. F F F (x1 = 0)");
  fi.rounds = p.k;
  fi.tptl_game = false;
  fi.horizon = 12;
  fi.summary = "a value recurs after three or more steps; one word revisits the start value "
               "late, the other never does, yet the interval game cannot tell them apart";
  return fi;
}

FamilyInstance xfbc(const FamilyParams& p) {
  std::int64_t r = p.r.value_or(3), s = p.s.value_or(3 * r);
  if (r < 3) violated("prop4.2-xfbc", "r >= 3 (the formula's bound of 2 must fall inside (-r,+r))");
  if (s < 3 * r) violated("prop4.2-xfbc", "s >= 3r");
  FamilyInstance fi;
  fi.family = "prop4.2-xfbc";
  fi.constants = default_constants(p, r, fi.family);
  fi.w0 = DataWord::lasso({"b", "c"},
                          {pt({}, s), pt({"c"}, s - 3 * r), pt({"b"}, s - 2 * r),
                           pt({"c"}, s - r)},
                          {pt({"b"}, s + r), pt({"c"}, s + 2 * r)}, 2 * r);
  fi.w1 = DataWord::lasso({"b", "c"},
                          {pt({}, s), pt({"c"}, s - 2 * r), pt({"b"}, s - r)},
                          {pt({"c"}, s + r), pt({"b"}, s + 2 * r)}, 2 * r);
  fi.tptl_formula = parse_tptl("x1. F (b & F (c & x1 <= 2))");
  fi.rounds = p.k;
  fi.tptl_game = false;
  fi.horizon = 12;
  fi.summary = "b then later c with a small total increase separates the words; the interval "
               "game does not";
  return fi;
}

FamilyInstance ramp(const FamilyParams& p, const std::string& family, bool with_dip) {
  // Shared shape of lemma4.3 (plain ramp) and thm4.4 (ramp with a dip at the
  // second position): k+2 equal-label steps of +r, then a free suffix high
  // above the ramp; the second word drops the extra early position.
  std::int64_t r = p.r.value_or(2), s = p.s.value_or(with_dip ? 2 * r : 0);
  int k = p.k;
  if (r < 1) violated(family, "r >= 1");
  if (s < 0) violated(family, "s >= 0");
  if (with_dip && s < 2 * r) violated(family, "s >= 2r");
  FamilyInstance fi;
  fi.family = family;
  fi.constants = default_constants(p, r, fi.family);
  std::vector<DataPoint> prefix;
  if (with_dip) {
    prefix.push_back(pt({}, s));
    prefix.push_back(pt({}, s - 2 * r));
    prefix.push_back(pt({}, s - r));
    for (int j = 0; j <= k; ++j) prefix.push_back(pt({}, s + j * r));
    auto [loop, delta] = tail(p.suffix, s + (k + 1) * r, r);
    for (auto& q : loop) q.labels.clear();  // no propositions in this family
    fi.w0 = DataWord::lasso({}, prefix, loop, delta);
    std::vector<DataPoint> pruned = prefix;
    pruned.erase(pruned.begin() + 1);  // the second word skips the deep dip
    fi.w1 = DataWord::lasso({}, pruned, loop, delta);
  } else {
    for (int j = 0; j <= k + 1; ++j) prefix.push_back(pt({"p"}, s + j * r));
    auto [loop, delta] = tail(p.suffix, s + (k + 2) * r, r);
    fi.w0 = DataWord::lasso({"p", "q"}, prefix, loop, delta);
    fi.w1 = fi.w0.suffix(1);
  }
  fi.rounds = k;
  fi.tptl_game = false;
  fi.horizon = static_cast<std::size_t>(k) + 10;
  fi.summary = with_dip ? "ramp words with an early dip spliced onto a shared high suffix"
                        : "a +r ramp of equal-label points against its own one-step suffix";
  return fi;
}

FamilyInstance until_hierarchy(const FamilyParams& p, bool tptl_version) {
  std::int64_t r = p.r.value_or(2);
  int k = p.k;
  if (k < 1) violated(tptl_version ? "prop5.8-until-zero" : "prop4.8-until", "k >= 1");
  if (!tptl_version && r < 1) violated("prop4.8-until", "r >= 1");
  FamilyInstance fi;
  fi.family = tptl_version ? "prop5.8-until-zero" : "prop4.8-until";
  std::vector<DataPoint> prefix;
  for (int j = 0; j <= k + 1; ++j)
    prefix.push_back(pt({"p"}, tptl_version ? 0 : j * r));
  std::vector<DataPoint> loop{pt({"q"}, tptl_version ? 0 : (k + 2) * r)};
  fi.w0 = DataWord::lasso({"p", "q"}, prefix, loop, tptl_version ? 0 : r);
  fi.w1 = fi.w0.suffix(1);
  if (tptl_version) {
    fi.constants = p.constants ? *p.constants : ConstantSet({0});
    fi.tptl_formula = until_chain_tptl(k + 1);
    fi.tptl_game = true;
    fi.registers = 1;
  } else {
    fi.constants = default_constants(p, r, fi.family);
    fi.mtl_formula = until_chain_mtl(k + 1);
    fi.tptl_game = false;
  }
  fi.rounds = k;
  fi.spoiler_wins_next_round = true;
  fi.horizon = static_cast<std::size_t>(k) + 10;
  fi.summary = "nesting depth is needed: k+2 consecutive p-positions cannot be asserted with "
               "k nested steps";
  return fi;
}

FamilyInstance two_registers(const FamilyParams& p) {
  std::int64_t r = p.r.value_or(2);
  int k = p.k;
  std::int64_t s = p.s.value_or(static_cast<std::int64_t>(k) * r);
  if (r < 1) violated("prop5.10", "r >= 1");
  if (k < 1) violated("prop5.10", "k >= 1");
  if (s - k * r < 0) violated("prop5.10", "s - k*r >= 0");
  FamilyInstance fi;
  fi.family = "prop5.10";
  fi.constants = default_constants(p, r, fi.family);
  std::vector<DataPoint> prefix{pt({}, s), pt({}, s + 2 * r)};
  for (int j = 0; j < k; ++j) prefix.push_back(pt({}, s - (k - j) * r));
  std::vector<DataPoint> w1_prefix = prefix;  // without the s+r element
  prefix.push_back(pt({}, s + r));
  std::vector<DataPoint> loop{pt({}, s + 3 * r)};
  fi.w0 = DataWord::lasso({}, prefix, loop, r);
  fi.w1 = DataWord::lasso({}, w1_prefix, loop, r);
  fi.tptl_formula = parse_tptl("x1. F (x1 > 0 & x2. F (x1 > 0 & x2 < 0))");
  fi.rounds = k;
  fi.registers = 1;
  fi.tptl_game = true;
  fi.horizon = static_cast<std::size_t>(k) + 12;
  fi.summary = "tracking two reference values at once: a rise, then a later point above the "
               "first anchor but below the second";
  return fi;
}

FamilyInstance singleton_constant(const FamilyParams& p, bool tptl_version) {
  std::string family = tptl_version ? "lemma5.7" : "lemma4.5";
  std::int64_t n = p.n;
  ConstantSet blocked = p.constants ? *p.constants : ConstantSet({0});
  // A neighbor of n inside the same region of the blocked set; without one
  // the blocked set can express the exact-n test after all.
  std::int64_t neighbor;
  if (blocked.same_region(n, n - 1))
    neighbor = n - 1;
  else if (blocked.same_region(n, n + 1))
    neighbor = n + 1;
  else
    violated(family, "the blocked constant set must not isolate n (needs n-1 or n+1 in the "
                     "same region)");
  std::int64_t s0 = std::max<std::int64_t>(0, -std::min(n, neighbor));
  std::int64_t top = s0 + std::max({n, neighbor, std::int64_t{0}}) + blocked.max_abs() + 3;
  FamilyInstance fi;
  fi.family = family;
  fi.constants = blocked;
  fi.w0 = DataWord::lasso({}, {pt({}, s0), pt({}, s0 + n)}, {pt({}, top)}, 1);
  fi.w1 = DataWord::lasso({}, {pt({}, s0), pt({}, s0 + neighbor)}, {pt({}, top)}, 1);
  if (tptl_version) {
    fi.tptl_formula = tptl::freeze(
        "x1", tptl::eventually(tptl::constraint("x1", Interval::singleton(n))));
    fi.tptl_game = true;
    fi.registers = 1;
  } else {
    fi.mtl_formula = mtl::eventually(Interval::singleton(n), mtl::tt());
    fi.tptl_game = false;
  }
  fi.rounds = p.k;
  fi.horizon = 10;
  fi.distinguisher_size_budget = 7;
  fi.summary = "an exact step of n is expressible with the constant n but not against a "
               "constant set whose regions merge n with a neighbor";
  return fi;
}

}  // namespace

std::vector<std::string> corpus_families() {
  return {"prop4.2-xfff", "prop4.2-xfbc",      "lemma4.3", "prop4.8-until",
          "prop5.8-until-zero", "prop5.10",    "lemma4.5", "lemma5.7",
          "thm4.4"};
}

std::string corpus_family_help(const std::string& family) {
  FamilyParams p;
  return make_family(family, p).summary;
}

FamilyInstance make_family(const std::string& family, const FamilyParams& params) {
  if (family == "prop4.2-xfff") return xfff(params);
  if (family == "prop4.2-xfbc") return xfbc(params);
  if (family == "lemma4.3") return ramp(params, "lemma4.3", false);
  if (family == "thm4.4") return ramp(params, "thm4.4", true);
  if (family == "prop4.8-until") return until_hierarchy(params, false);
  if (family == "prop5.8-until-zero") return until_hierarchy(params, true);
  if (family == "prop5.10") return two_registers(params);
  if (family == "lemma4.5") return singleton_constant(params, false);
  if (family == "lemma5.7") return singleton_constant(params, true);
  throw std::invalid_argument("unknown family '" + family + "'");
}

namespace {

Player family_winner(const FamilyInstance& fi, int rounds) {
  if (fi.tptl_game) {
    TptlGameConfig cfg{fi.w0, fi.w1, fi.constants, fi.registers,
                       rounds, fi.horizon, fi.fragment};
    return solve_tg(cfg);
  }
  MtlGameConfig cfg{fi.w0, fi.w1, fi.constants, rounds, fi.horizon};
  return solve_mg(cfg);
}

}  // namespace

ClaimReport run_claim(const std::string& family, const FamilyParams& params,
                      std::size_t horizon) {
  FamilyInstance fi = make_family(family, params);
  if (horizon > 0) fi.horizon = horizon;
  ClaimReport report;
  report.family = family;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    report.items.push_back({name, pass, detail});
  };

  auto holds = [&](const DataWord& w) {
    return fi.mtl_formula ? sat_mtl(w, fi.mtl_formula) : sat_tptl(w, fi.tptl_formula);
  };
  if (fi.mtl_formula || fi.tptl_formula) {
    std::string text =
        fi.mtl_formula ? to_string(fi.mtl_formula) : to_string(fi.tptl_formula);
    add("w0 satisfies " + text, holds(fi.w0));
    add("w1 falsifies " + text, !holds(fi.w1));
  }

  std::string game_name = fi.tptl_game ? "TG" : "MG";
  add("duplicator wins " + game_name + " at k=" + std::to_string(fi.rounds),
      family_winner(fi, fi.rounds) == Player::Duplicator);

  if (fi.spoiler_wins_next_round)
    add("spoiler wins " + game_name + " at k=" + std::to_string(fi.rounds + 1),
        family_winner(fi, fi.rounds + 1) == Player::Spoiler);

  if (fi.distinguisher_size_budget > 0) {
    // The budgeted search runs on the materialized pair, matching the
    // horizon-bounded game above.
    DataWord m0 = fi.w0.materialize(fi.horizon);
    DataWord m1 = fi.w1.materialize(fi.horizon);
    EnumBudget budget;
    budget.max_rank = fi.rounds;
    budget.constants = fi.constants;
    budget.max_size = fi.distinguisher_size_budget;
    budget.props = m0.props();
    bool none;
    std::ostringstream detail;
    if (fi.tptl_game) {
      budget.registers = fi.registers;
      auto found = find_distinguisher_tptl(m0, 0, m1, 0, budget);
      none = !found;
      if (found) detail << "found " << to_string(*found);
    } else {
      auto found = find_distinguisher_mtl(m0, 0, m1, 0, budget);
      none = !found;
      if (found) detail << "found " << to_string(*found);
    }
    add("no distinguisher within rank " + std::to_string(fi.rounds) + ", size " +
            std::to_string(fi.distinguisher_size_budget),
        none, detail.str());
  }
  return report;
}

}  // namespace tempoef
