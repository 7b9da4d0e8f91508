#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tempoef/formula.hpp"
#include "tempoef/game_common.hpp"
#include "tempoef/interval.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

/// Knobs shared by the corpus families. r is the region-escape constant
/// (every game constant must lie strictly between -r and r), s the base
/// data value, k the round/rank parameter, n the singleton constant of the
/// two constant-hierarchy families. Families validate their own side
/// conditions and name the violated one.
struct FamilyParams {
  std::optional<std::int64_t> r;  // family default when unset
  std::optional<std::int64_t> s;
  int k = 1;
  std::int64_t n = 2;
  std::string suffix = "arith";  // arith | flat | steep (tail style)
  std::optional<ConstantSet> constants;
};

/// A runnable scenario: the word pair, the named formula (in one logic or
/// the other), and the game parameters under which Duplicator should win.
struct FamilyInstance {
  std::string family;
  DataWord w0, w1;
  MtlPtr mtl_formula;    // null when the family's formula is TPTL-only
  TptlPtr tptl_formula;  // null when MTL-only
  ConstantSet constants;
  int rounds = 1;
  int registers = 1;
  bool tptl_game = false;  // which game the survival claim is about
  FragmentSpec fragment;
  std::size_t horizon = 12;
  bool spoiler_wins_next_round = false;  // until-hierarchy families
  std::size_t distinguisher_size_budget = 0;  // >0: also claim "no formula within budget"
  std::string summary;
};

std::vector<std::string> corpus_families();
std::string corpus_family_help(const std::string& family);

FamilyInstance make_family(const std::string& family, const FamilyParams& params);

struct ClaimReport {
  struct Item {
    std::string name;
    bool pass = false;
    std::string detail;
  };
  std::string family;
  std::vector<Item> items;
  bool all_pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
};

/// Evaluates the named formula on both words, solves the named game, and
/// reports pass/fail per sub-claim. horizon 0 keeps the family default.
ClaimReport run_claim(const std::string& family, const FamilyParams& params,
                      std::size_t horizon = 0);

/// The until-hierarchy witness p & X(p & X(... p & X p)): rank k, k+2
/// consecutive p-positions required.
MtlPtr until_chain_mtl(int k);
TptlPtr until_chain_tptl(int k);

}  // namespace tempoef
