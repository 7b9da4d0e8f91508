#include "tempoef/gen.hpp"

#include <algorithm>
#include <cstdlib>

namespace tempoef {

std::uint64_t Gen::seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("TEMPO_EF_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return v;
  }
  return fallback;
}

std::int64_t Gen::range(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

LabelSet Gen::labels(const std::vector<std::string>& props) {
  LabelSet ls;
  for (const auto& p : props)
    if (flip()) ls.push_back(p);
  std::sort(ls.begin(), ls.end());
  return ls;
}

DataWord Gen::finite_word(std::size_t min_len, std::size_t max_len, std::int64_t max_data,
                          const std::vector<std::string>& props) {
  std::size_t len = static_cast<std::size_t>(range(static_cast<std::int64_t>(min_len),
                                                   static_cast<std::int64_t>(max_len)));
  std::vector<DataPoint> pts;
  for (std::size_t j = 0; j < len; ++j) pts.push_back({labels(props), range(0, max_data)});
  return DataWord::finite(props, std::move(pts));
}

DataWord Gen::lasso_word(std::size_t max_prefix, std::size_t max_loop, std::int64_t max_data,
                         std::int64_t max_delta, const std::vector<std::string>& props) {
  std::size_t np = static_cast<std::size_t>(range(0, static_cast<std::int64_t>(max_prefix)));
  std::size_t nl = static_cast<std::size_t>(range(1, static_cast<std::int64_t>(max_loop)));
  std::vector<DataPoint> prefix, loop;
  for (std::size_t j = 0; j < np; ++j) prefix.push_back({labels(props), range(0, max_data)});
  for (std::size_t j = 0; j < nl; ++j) loop.push_back({labels(props), range(0, max_data)});
  return DataWord::lasso(props, std::move(prefix), std::move(loop), range(0, max_delta));
}

Interval Gen::interval(std::int64_t max_const) {
  std::int64_t a = range(-max_const, max_const);
  switch (range(0, 5)) {
    case 0: return Interval::all();
    case 1: return Interval::singleton(a);
    case 2: return Interval::at_least(a);
    case 3: return Interval::at_most(a);
    case 4: return Interval::greater(a);
    default: {
      std::int64_t b = range(a, max_const + 1);
      if (a == b) return Interval::singleton(a);
      return flip() ? Interval::closed(a, b) : Interval::open(a, b);
    }
  }
}

MtlPtr Gen::mtl_formula(int max_rank, std::int64_t max_const,
                        const std::vector<std::string>& props, int size_budget) {
  if (size_budget <= 1) {
    std::int64_t pick = range(0, static_cast<std::int64_t>(props.size()) + 1);
    if (pick == 0) return mtl::tt();
    if (pick == 1) return mtl::ff();
    return mtl::prop(props[static_cast<std::size_t>(pick - 2)]);
  }
  switch (range(0, max_rank > 0 ? 5 : 2)) {
    case 0:
    case 1: {
      if (range(0, 2) == 0) return mtl_formula(max_rank, max_const, props, 1);
      return mtl::negate(mtl_formula(max_rank, max_const, props, size_budget - 1));
    }
    case 2: {
      int left = size_budget / 2;
      MtlPtr a = mtl_formula(max_rank, max_const, props, left);
      MtlPtr b = mtl_formula(max_rank, max_const, props, size_budget - 1 - left);
      return flip() ? mtl::conj(a, b) : mtl::disj(a, b);
    }
    case 3: {
      Interval in = interval(max_const);
      MtlPtr b = mtl_formula(max_rank - 1, max_const, props, size_budget - 2);
      return flip() ? mtl::eventually(in, b) : mtl::next(in, b);
    }
    default: {
      Interval in = interval(max_const);
      int left = size_budget / 2;
      MtlPtr a = mtl_formula(max_rank - 1, max_const, props, left);
      MtlPtr b = mtl_formula(max_rank - 1, max_const, props, size_budget - 1 - left);
      return mtl::until(a, in, b);
    }
  }
}

TptlPtr Gen::tptl_formula(int max_rank, std::int64_t max_const,
                          const std::vector<std::string>& props, int registers,
                          int size_budget) {
  auto reg = [&] { return "x" + std::to_string(range(1, registers)); };
  if (size_budget <= 1) {
    std::int64_t pick = range(0, static_cast<std::int64_t>(props.size()) + 2);
    if (pick == 0) return tptl::tt();
    if (pick == 1) return tptl::ff();
    if (pick == 2) return tptl::constraint(reg(), interval(max_const));
    return tptl::prop(props[static_cast<std::size_t>(pick - 3)]);
  }
  switch (range(0, max_rank > 0 ? 6 : 3)) {
    case 0:
    case 1: {
      if (range(0, 2) == 0) return tptl_formula(max_rank, max_const, props, registers, 1);
      return tptl::negate(tptl_formula(max_rank, max_const, props, registers, size_budget - 1));
    }
    case 2: {
      int left = size_budget / 2;
      TptlPtr a = tptl_formula(max_rank, max_const, props, registers, left);
      TptlPtr b = tptl_formula(max_rank, max_const, props, registers, size_budget - 1 - left);
      return flip() ? tptl::conj(a, b) : tptl::disj(a, b);
    }
    case 3:
      return tptl::freeze(reg(),
                          tptl_formula(max_rank, max_const, props, registers, size_budget - 1));
    case 4: {
      TptlPtr b = tptl_formula(max_rank - 1, max_const, props, registers, size_budget - 2);
      return flip() ? tptl::eventually(b) : tptl::next(b);
    }
    default: {
      int left = size_budget / 2;
      TptlPtr a = tptl_formula(max_rank - 1, max_const, props, registers, left);
      TptlPtr b = tptl_formula(max_rank - 1, max_const, props, registers, size_budget - 1 - left);
      return tptl::until(a, b);
    }
  }
}

}  // namespace tempoef
