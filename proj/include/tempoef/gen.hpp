#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tempoef/formula.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

/// Seeded instance generator for the randomized suites. The TEMPO_EF_SEED
/// environment variable overrides the default seed, so runs are reproducible
/// by construction.
class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  static std::uint64_t seed_from_env(std::uint64_t fallback = 20240817);

  std::uint64_t u64() { return rng_(); }
  std::int64_t range(std::int64_t lo, std::int64_t hi);  // inclusive
  bool flip() { return rng_() & 1; }

  LabelSet labels(const std::vector<std::string>& props);
  DataWord finite_word(std::size_t min_len, std::size_t max_len, std::int64_t max_data,
                       const std::vector<std::string>& props);
  DataWord lasso_word(std::size_t max_prefix, std::size_t max_loop, std::int64_t max_data,
                      std::int64_t max_delta, const std::vector<std::string>& props);

  Interval interval(std::int64_t max_const);
  MtlPtr mtl_formula(int max_rank, std::int64_t max_const,
                     const std::vector<std::string>& props, int size_budget);
  TptlPtr tptl_formula(int max_rank, std::int64_t max_const,
                       const std::vector<std::string>& props, int registers, int size_budget);

private:
  std::mt19937_64 rng_;
};

}  // namespace tempoef
