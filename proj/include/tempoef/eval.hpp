#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "tempoef/formula.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

struct UnboundRegister : std::runtime_error {
  explicit UnboundRegister(const std::string& reg)
      : std::runtime_error("unbound register: " + reg), reg(reg) {}
  std::string reg;
};

/// A register valuation: a finite map plus an optional fallback that stands
/// for "every other register". The initial valuation of a word maps every
/// register to the first data value.
class Valuation {
public:
  Valuation() = default;

  /// Every register maps to v.
  static Valuation constant(std::int64_t v);

  Valuation with(const std::string& reg, std::int64_t v) const;
  std::int64_t at(const std::string& reg) const;  // throws UnboundRegister
  bool bound(const std::string& reg) const;

  const std::map<std::string, std::int64_t>& bindings() const { return vals_; }
  const std::optional<std::int64_t>& fallback() const { return fallback_; }

  Valuation shifted(std::int64_t c) const;

  std::string to_string() const;

private:
  std::map<std::string, std::int64_t> vals_;
  std::optional<std::int64_t> fallback_;
};

/// The valuation mapping every register to the word's first data value.
Valuation initial_valuation(const DataWord& w);

// -------------------------------------------------------------- horizon ----

/// A scan window large enough that bounded evaluation on the lasso word (see
/// below) equals the infinite-word value. The bound is deliberately loose;
/// the H-vs-2H stability property test is the correctness oracle. Returns
/// the word length for finite words.
std::size_t lasso_horizon(const DataWord& w, const MtlPtr& f);
std::size_t lasso_horizon(const DataWord& w, const TptlPtr& f);

// ----------------------------------------------------------- evaluation ----

/// Satisfaction at a position. Strict-until semantics: the witness position
/// is strictly later, and the left argument must hold at every position
/// strictly in between. (Some statements of the TPTL until repeat the right
/// argument in the between clause; we use the left argument, the standard
/// reading, for both logics.) On finite words quantifiers range over the
/// positions that exist. On lasso words the result is exact for the infinite
/// word whenever the scan window is at least lasso_horizon(w, f); scans that
/// would pass the window resolve to "no witness".
bool eval_mtl(const DataWord& w, std::size_t i, const MtlPtr& f);
bool eval_mtl(const DataWord& w, std::size_t i, const MtlPtr& f, std::size_t horizon);

bool eval_tptl(const DataWord& w, std::size_t i, const Valuation& nu, const TptlPtr& f);
bool eval_tptl(const DataWord& w, std::size_t i, const Valuation& nu, const TptlPtr& f,
               std::size_t horizon);

/// Top-level satisfaction: position 0, and for TPTL the initial valuation.
bool sat_mtl(const DataWord& w, const MtlPtr& f);
bool sat_tptl(const DataWord& w, const TptlPtr& f);

}  // namespace tempoef
