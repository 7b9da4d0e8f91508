#include "tempoef/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tempoef {

Interval::Interval(std::optional<std::int64_t> lo, bool lc,
                   std::optional<std::int64_t> hi, bool hc)
    : lo_(lo), hi_(hi), lo_closed_(lc), hi_closed_(hc) {
  if (!lo_ && lo_closed_) throw std::invalid_argument("interval: -inf endpoint cannot be closed");
  if (!hi_ && hi_closed_) throw std::invalid_argument("interval: +inf endpoint cannot be closed");
  if (lo_ && hi_) {
    if (*lo_ > *hi_ || (*lo_ == *hi_ && !(lo_closed_ && hi_closed_)))
      throw std::invalid_argument("interval: empty");
  }
}

Interval Interval::all() { return Interval(std::nullopt, false, std::nullopt, false); }
Interval Interval::singleton(std::int64_t v) { return Interval(v, true, v, true); }
Interval Interval::closed(std::int64_t lo, std::int64_t hi) { return Interval(lo, true, hi, true); }
Interval Interval::open(std::int64_t lo, std::int64_t hi) { return Interval(lo, false, hi, false); }
Interval Interval::at_least(std::int64_t lo) { return Interval(lo, true, std::nullopt, false); }
Interval Interval::greater(std::int64_t lo) { return Interval(lo, false, std::nullopt, false); }
Interval Interval::at_most(std::int64_t hi) { return Interval(std::nullopt, false, hi, true); }
Interval Interval::less(std::int64_t hi) { return Interval(std::nullopt, false, hi, false); }

Interval Interval::make(std::optional<std::int64_t> lo, bool lo_closed,
                        std::optional<std::int64_t> hi, bool hi_closed) {
  return Interval(lo, lo_closed, hi, hi_closed);
}

bool Interval::contains(std::int64_t v) const {
  if (lo_ && (lo_closed_ ? v < *lo_ : v <= *lo_)) return false;
  if (hi_ && (hi_closed_ ? v > *hi_ : v >= *hi_)) return false;
  return true;
}

std::string Interval::to_string() const {
  if (is_all()) return "";
  if (lo_ && hi_ && *lo_ == *hi_) return "=" + std::to_string(*lo_);
  if (!hi_) return (lo_closed_ ? ">=" : ">") + std::to_string(*lo_);
  if (!lo_) return (hi_closed_ ? "<=" : "<") + std::to_string(*hi_);
  std::ostringstream os;
  os << (lo_closed_ ? '[' : '(') << *lo_ << ',' << *hi_ << (hi_closed_ ? ']' : ')');
  return os.str();
}

ConstantSet::ConstantSet(std::vector<std::int64_t> constants) : cs_(std::move(constants)) {
  std::sort(cs_.begin(), cs_.end());
  cs_.erase(std::unique(cs_.begin(), cs_.end()), cs_.end());
}

ConstantSet ConstantSet::parse(const std::string& text) {
  std::vector<std::int64_t> cs;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    tok = tok.substr(b, e - b + 1);
    if (tok == "-inf" || tok == "+inf" || tok == "inf") continue;  // implicit anyway
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("constant set: bad entry '" + tok + "'");
    cs.push_back(v);
  }
  return ConstantSet(std::move(cs));
}

bool ConstantSet::contains(std::int64_t v) const {
  return std::binary_search(cs_.begin(), cs_.end(), v);
}

std::int64_t ConstantSet::max_abs() const {
  std::int64_t m = 0;
  for (auto c : cs_) m = std::max(m, c < 0 ? -c : c);
  return m;
}

Region ConstantSet::region_of(std::int64_t v) const {
  auto it = std::lower_bound(cs_.begin(), cs_.end(), v);
  std::size_t idx = static_cast<std::size_t>(it - cs_.begin());
  if (it != cs_.end() && *it == v) return Region{idx, true};
  return Region{idx, false};
}

bool ConstantSet::same_region(std::int64_t m, std::int64_t n) const {
  return region_of(m) == region_of(n);
}

Interval ConstantSet::region_interval(std::int64_t v) const {
  Region r = region_of(v);
  if (r.exact) return Interval::singleton(cs_[r.index]);
  std::optional<std::int64_t> lo, hi;
  if (r.index > 0) lo = cs_[r.index - 1];
  if (r.index < cs_.size()) hi = cs_[r.index];
  return Interval::make(lo, false, hi, false);
}

std::vector<Interval> ConstantSet::region_intervals() const {
  std::vector<Interval> out;
  std::optional<std::int64_t> prev;
  for (std::size_t i = 0; i < cs_.size(); ++i) {
    if (!prev || *prev + 1 < cs_[i])  // skip empty gaps between adjacent integers
      out.push_back(Interval::make(prev, false, cs_[i], false));
    out.push_back(Interval::singleton(cs_[i]));
    prev = cs_[i];
  }
  out.push_back(Interval::make(prev, false, std::nullopt, false));
  return out;
}

ConstantSet ConstantSet::united(const ConstantSet& o) const {
  std::vector<std::int64_t> cs = cs_;
  cs.insert(cs.end(), o.cs_.begin(), o.cs_.end());
  return ConstantSet(std::move(cs));
}

bool ConstantSet::subset_of(const ConstantSet& o) const {
  return std::includes(o.cs_.begin(), o.cs_.end(), cs_.begin(), cs_.end());
}

void ConstantSet::insert(std::int64_t v) {
  auto it = std::lower_bound(cs_.begin(), cs_.end(), v);
  if (it == cs_.end() || *it != v) cs_.insert(it, v);
}

std::string ConstantSet::to_string() const {
  std::ostringstream os;
  os << "{-inf";
  for (auto c : cs_) os << ',' << c;
  os << ",+inf}";
  return os.str();
}

}  // namespace tempoef
