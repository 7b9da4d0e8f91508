#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tempoef/formula.hpp"
#include "tempoef/game_common.hpp"
#include "tempoef/interval.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(std::size_t estimate)
      : std::runtime_error("enumeration budget exceeded; candidate pool around " +
                           std::to_string(estimate)),
        estimate(estimate) {}
  std::size_t estimate;
};

/// Bounds for formula enumeration. Intervals are restricted to the region
/// intervals of the constant set (singletons and open spans); every formula
/// over these constants is a boolean combination of such forms, so nothing
/// expressible is lost, only re-priced in size. Formulas are deduplicated by
/// their evaluation fingerprint over every position of every probe word
/// (with every register-value combination drawn from the word, for TPTL).
struct EnumBudget {
  int max_rank = 1;
  ConstantSet constants;
  std::size_t max_size = 5;
  int registers = 0;  // 0 selects MTL enumeration, >= 1 TPTL
  std::vector<std::string> props;
  std::vector<DataWord> probe_words;  // finite words only
  std::size_t pool_ceiling = 200000;
  FragmentSpec fragment;  // honored by TPTL enumeration
};

/// All fingerprint-distinct formulas within the budget, sorted by size and
/// then by print string. Throws BudgetExceeded past the ceiling.
std::vector<MtlPtr> enumerate_mtl(const EnumBudget& budget);
std::vector<TptlPtr> enumerate_tptl(const EnumBudget& budget);

/// First enumerated formula separating the two configurations, or nullopt
/// when the budget is exhausted. Finite words only. The two words are
/// prepended to the probe set, so fingerprint dedup can never discard a
/// separating formula in favor of a non-separating one.
std::optional<MtlPtr> find_distinguisher_mtl(const DataWord& w0, std::size_t i0,
                                             const DataWord& w1, std::size_t i1,
                                             EnumBudget budget);
std::optional<TptlPtr> find_distinguisher_tptl(const DataWord& w0, std::size_t i0,
                                               const DataWord& w1, std::size_t i1,
                                               EnumBudget budget);

// ------------------------------------------------------- witness search ----

/// The game a witness pair has to survive: Duplicator must win it while the
/// formula under test tells the pair apart.
struct WitnessTarget {
  bool tptl_game = true;
  int rounds = 1;
  int registers = 1;  // TPTL game only
  ConstantSet constants;
  FragmentSpec fragment;
};

struct WitnessSearchBudget {
  std::size_t max_len = 3;
  std::int64_t max_data = 2;
  std::vector<std::string> props;
  std::size_t max_pairs = 2000000;
};

std::optional<std::pair<DataWord, DataWord>> search_witness_pair(
    const MtlPtr& f, const WitnessTarget& target, const WitnessSearchBudget& budget);
std::optional<std::pair<DataWord, DataWord>> search_witness_pair(
    const TptlPtr& f, const WitnessTarget& target, const WitnessSearchBudget& budget);

}  // namespace tempoef
