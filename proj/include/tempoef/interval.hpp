#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tempoef {

/// An interval over the integers. Endpoints may be unbounded (nullopt stands
/// for -inf on the left and +inf on the right); an unbounded endpoint is
/// always open. Intervals are validated on construction and never empty as
/// rational intervals, although an open integer interval such as (0,1) may
/// still contain no integer.
class Interval {
public:
  static Interval all();
  static Interval singleton(std::int64_t v);
  static Interval closed(std::int64_t lo, std::int64_t hi);
  static Interval open(std::int64_t lo, std::int64_t hi);
  static Interval at_least(std::int64_t lo);   // [lo, +inf)
  static Interval greater(std::int64_t lo);    // (lo, +inf)
  static Interval at_most(std::int64_t hi);    // (-inf, hi]
  static Interval less(std::int64_t hi);       // (-inf, hi)
  static Interval make(std::optional<std::int64_t> lo, bool lo_closed,
                       std::optional<std::int64_t> hi, bool hi_closed);

  bool contains(std::int64_t v) const;
  bool is_all() const { return !lo_ && !hi_; }

  const std::optional<std::int64_t>& lower() const { return lo_; }
  const std::optional<std::int64_t>& upper() const { return hi_; }
  bool lower_closed() const { return lo_closed_; }
  bool upper_closed() const { return hi_closed_; }

  /// Pseudo-arithmetic rendering: "=2", ">=1", "<0", "[a,b)", "" for Z.
  /// The empty string is what formula printers splice in after an operator.
  std::string to_string() const;

  bool operator==(const Interval& o) const = default;

private:
  Interval(std::optional<std::int64_t> lo, bool lc,
           std::optional<std::int64_t> hi, bool hc);

  std::optional<std::int64_t> lo_, hi_;
  bool lo_closed_ = false, hi_closed_ = false;
};

/// The region index of an integer with respect to a constant set: either an
/// exact hit on constant #index, or the open gap below constant #index (the
/// gap above the last constant has index = size of the set).
struct Region {
  std::size_t index = 0;
  bool exact = false;
  bool operator==(const Region&) const = default;
};

/// A finite set of integer constants, implicitly joined with -inf and +inf.
/// Parameterizes games and formula fragments; induces the region equivalence
/// used by the win conditions.
class ConstantSet {
public:
  ConstantSet() = default;
  explicit ConstantSet(std::vector<std::int64_t> constants);

  /// Parses "-1,0,1"; an empty string gives the empty set {-inf,+inf}.
  static ConstantSet parse(const std::string& text);

  const std::vector<std::int64_t>& constants() const { return cs_; }
  bool empty() const { return cs_.empty(); }
  std::size_t size() const { return cs_.size(); }
  bool contains(std::int64_t v) const;
  std::int64_t max_abs() const;  // 0 when empty

  Region region_of(std::int64_t v) const;
  bool same_region(std::int64_t m, std::int64_t n) const;

  /// The region of v as an interval: [c,c] on an exact hit, otherwise the
  /// open span between the adjacent constants (unbounded at the ends).
  Interval region_interval(std::int64_t v) const;

  /// All regions in increasing order: (-inf,c0), [c0,c0], (c0,c1), ...,
  /// (ck,+inf). For the empty set this is just (-inf,+inf).
  std::vector<Interval> region_intervals() const;

  ConstantSet united(const ConstantSet& o) const;
  bool subset_of(const ConstantSet& o) const;
  void insert(std::int64_t v);

  std::string to_string() const;  // "{-inf,1,3,8,+inf}"

  bool operator==(const ConstantSet&) const = default;

private:
  std::vector<std::int64_t> cs_;  // sorted, deduplicated
};

}  // namespace tempoef
