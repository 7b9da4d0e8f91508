#include "tempoef/game_tptl.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tempoef {

namespace {

std::vector<std::string> shared_universe(const DataWord& a, const DataWord& b) {
  std::vector<std::string> u = a.props();
  u.insert(u.end(), b.props().begin(), b.props().end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

std::string reg_name(int index) { return "x" + std::to_string(index + 1); }

}  // namespace

TptlGame::TptlGame(TptlGameConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.registers < 1) throw std::invalid_argument("game: at least one register");
  if (cfg_.registers > 16) throw std::invalid_argument("game: too many registers");
  if (cfg_.rounds < 0) throw std::invalid_argument("game: rounds must be non-negative");
  if ((!cfg_.w0.is_finite() || !cfg_.w1.is_finite()) && cfg_.horizon < 1)
    throw std::invalid_argument("game: horizon must be at least 1");
  len0_ = cfg_.w0.bounded_length(cfg_.horizon);
  len1_ = cfg_.w1.bounded_length(cfg_.horizon);
  universe_ = shared_universe(cfg_.w0, cfg_.w1);

  std::map<LabelSet, int> intern_labels;
  auto tabulate = [&](const DataWord& w, std::size_t len, std::vector<int>& labels,
                      std::vector<std::int64_t>& data) {
    for (std::size_t j = 0; j < len; ++j) {
      auto [it, _] = intern_labels.emplace(w.labels_at(j), static_cast<int>(intern_labels.size()));
      labels.push_back(it->second);
      data.push_back(w.data_at(j));
    }
  };
  tabulate(cfg_.w0, len0_, label0_, data0_);
  tabulate(cfg_.w1, len1_, label1_, data1_);
}

TptlGamePosition TptlGame::normalized(TptlGamePosition pos) const {
  auto fill = [&](std::vector<std::int64_t>& nu, const std::vector<std::int64_t>& data) {
    if (nu.empty()) nu.assign(static_cast<std::size_t>(cfg_.registers), data[0]);
    if (nu.size() != static_cast<std::size_t>(cfg_.registers))
      throw std::invalid_argument("game: valuation must cover x1..xn");
  };
  fill(pos.nu0, data0_);
  fill(pos.nu1, data1_);
  if (pos.i0 >= len0_ || pos.i1 >= len1_) throw std::out_of_range("game: position out of range");
  return pos;
}

bool TptlGame::atomic_agree(std::size_t i0, std::size_t i1, const std::vector<std::int64_t>& nu0,
                            const std::vector<std::int64_t>& nu1) const {
  if (label0_[i0] != label1_[i1]) return false;
  for (int x = 0; x < cfg_.registers; ++x) {
    std::int64_t d0 = data0_[i0] - nu0[static_cast<std::size_t>(x)];
    std::int64_t d1 = data1_[i1] - nu1[static_cast<std::size_t>(x)];
    if (cfg_.fragment.equality_only) {
      if ((d0 == 0) != (d1 == 0)) return false;
    } else if (!cfg_.constants.same_region(d0, d1)) {
      return false;
    }
  }
  return true;
}

int TptlGame::intern(VP vp) {
  auto it = vp_index_.find(vp);
  if (it != vp_index_.end()) return it->second;
  int id = static_cast<int>(vps_.size());
  vp_index_.emplace(vp, id);
  vps_.push_back(std::move(vp));
  return id;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> TptlGame::frozen(
    const TptlGamePosition& pos, unsigned mask) const {
  auto nu0 = pos.nu0, nu1 = pos.nu1;
  for (int x = 0; x < cfg_.registers; ++x)
    if (mask & (1u << x)) {
      nu0[static_cast<std::size_t>(x)] = data0_[pos.i0];
      nu1[static_cast<std::size_t>(x)] = data1_[pos.i1];
    }
  return {std::move(nu0), std::move(nu1)};
}

std::vector<int> TptlGame::distinct_freezes(std::size_t i0, std::size_t i1, int vpid,
                                            std::vector<unsigned>* masks) {
  const VP vp = vps_[static_cast<std::size_t>(vpid)];
  TptlGamePosition pos{i0, i1, vp.nu0, vp.nu1};
  std::vector<int> out;
  for (unsigned mask = 0; mask < (1u << cfg_.registers); ++mask) {
    auto [nu0, nu1] = frozen(pos, mask);
    int id = intern(VP{std::move(nu0), std::move(nu1)});
    if (std::find(out.begin(), out.end(), id) == out.end()) {
      out.push_back(id);
      if (masks) masks->push_back(mask);
    }
  }
  return out;
}

namespace {
std::uint64_t state_key(int rounds, std::size_t i0, std::size_t i1, int vpid) {
  return static_cast<std::uint64_t>(rounds) | (static_cast<std::uint64_t>(i0) << 8) |
         (static_cast<std::uint64_t>(i1) << 22) | (static_cast<std::uint64_t>(vpid) << 36);
}
}  // namespace

bool TptlGame::between_ok(int rounds_left, std::size_t i0, std::size_t i1, int side,
                          std::size_t to, std::size_t reply, int vpid) {
  std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
  for (std::size_t b = io + 1; b < reply; ++b) {
    bool answered = false;
    for (std::size_t a = il + 1; a < to && !answered; ++a)
      answered = dup_wins(rounds_left, side == 0 ? a : b, side == 0 ? b : a, vpid);
    if (!answered) return false;
  }
  return true;
}

bool TptlGame::dup_wins(int rounds, std::size_t i0, std::size_t i1, int vpid) {
  const VP& vp = vps_[static_cast<std::size_t>(vpid)];
  if (!atomic_agree(i0, i1, vp.nu0, vp.nu1)) return false;
  if (rounds == 0) return true;
  std::uint64_t key = state_key(rounds, i0, i1, vpid);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  memo_.emplace(key, 2);  // marker against accidental reentry; overwritten below

  bool dup = true;
  auto freezes = distinct_freezes(i0, i1, vpid, nullptr);
  for (int fz : freezes) {
    if (!dup) break;
    for (int side = 0; side < 2 && dup; ++side) {
      std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
      std::size_t lenl = length(side), leno = length(1 - side);
      if (cfg_.fragment.unary_only && il + 1 < lenl) {
        // Forced successor move: Duplicator must step to io+1.
        if (io + 1 >= leno || !dup_wins(rounds - 1, i0 + 1, i1 + 1, fz)) {
          dup = false;
          break;
        }
      }
      for (std::size_t to = il + 1; to < lenl && dup; ++to) {
        bool found = false;
        for (std::size_t r = io + 1; r < leno && !found; ++r) {
          std::size_t p0 = side == 0 ? to : r, p1 = side == 0 ? r : to;
          if (!dup_wins(rounds - 1, p0, p1, fz)) continue;
          if (!cfg_.fragment.unary_only && !between_ok(rounds - 1, i0, i1, side, to, r, fz))
            continue;
          found = true;
        }
        dup = found;
      }
    }
  }
  memo_[key] = dup;
  return dup;
}

bool TptlGame::duplicator_wins(int rounds, const TptlGamePosition& pos) {
  if (rounds < 0 || rounds > cfg_.rounds) throw std::out_of_range("game: rounds out of range");
  TptlGamePosition p = normalized(pos);
  return dup_wins(rounds, p.i0, p.i1, intern(VP{p.nu0, p.nu1}));
}

Player TptlGame::winner(const TptlGamePosition& pos) {
  return duplicator_wins(cfg_.rounds, pos) ? Player::Duplicator : Player::Spoiler;
}

bool TptlGame::reply_is_winning(int rounds, const TptlGamePosition& pos, const SpoilerMove& mv,
                                std::size_t reply) {
  TptlGamePosition p = normalized(pos);
  auto [nu0, nu1] = frozen(p, mv.freeze_mask);
  int fz = intern(VP{std::move(nu0), std::move(nu1)});
  if (mv.forced_next) return reply == (mv.side == 0 ? p.i1 : p.i0) + 1 &&
                             dup_wins(rounds - 1, p.i0 + 1, p.i1 + 1, fz);
  std::size_t p0 = mv.side == 0 ? mv.to : reply, p1 = mv.side == 0 ? reply : mv.to;
  if (!dup_wins(rounds - 1, p0, p1, fz)) return false;
  if (!cfg_.fragment.unary_only && !between_ok(rounds - 1, p.i0, p.i1, mv.side, mv.to, reply, fz))
    return false;
  return true;
}

bool TptlGame::move_wins_for_spoiler(int rounds, const TptlGamePosition& pos,
                                     const SpoilerMove& mv) {
  TptlGamePosition p = normalized(pos);
  std::size_t io = mv.side == 0 ? p.i1 : p.i0;
  std::size_t leno = length(1 - mv.side);
  if (mv.forced_next) return io + 1 >= leno || !reply_is_winning(rounds, p, mv, io + 1);
  for (std::size_t r = io + 1; r < leno; ++r)
    if (reply_is_winning(rounds, p, mv, r)) return false;
  return true;
}

std::optional<TptlGame::SpoilerMove> TptlGame::spoiler_winning_move(int rounds,
                                                                    const TptlGamePosition& pos) {
  TptlGamePosition p = normalized(pos);
  int vpid = intern(VP{p.nu0, p.nu1});
  const VP& vp = vps_[static_cast<std::size_t>(vpid)];
  if (!atomic_agree(p.i0, p.i1, vp.nu0, vp.nu1)) return std::nullopt;  // already decided
  if (rounds <= 0 || dup_wins(rounds, p.i0, p.i1, vpid)) return std::nullopt;

  std::vector<unsigned> masks;
  distinct_freezes(p.i0, p.i1, vpid, &masks);
  std::size_t maxlen = std::max(len0_, len1_);
  for (std::size_t to = 1; to < maxlen; ++to)
    for (int side = 0; side < 2; ++side) {
      std::size_t il = side == 0 ? p.i0 : p.i1;
      if (to <= il || to >= length(side)) continue;
      for (unsigned mask : masks) {
        if (cfg_.fragment.unary_only && to == il + 1) {
          SpoilerMove mv{mask, side, to, true};
          if (move_wins_for_spoiler(rounds, p, mv)) return mv;
        }
        SpoilerMove mv{mask, side, to, false};
        if (move_wins_for_spoiler(rounds, p, mv)) return mv;
      }
    }
  return std::nullopt;
}

std::optional<std::size_t> TptlGame::duplicator_reply(int rounds, const TptlGamePosition& pos,
                                                      const SpoilerMove& mv) {
  TptlGamePosition p = normalized(pos);
  std::size_t io = mv.side == 0 ? p.i1 : p.i0;
  std::size_t leno = length(1 - mv.side);
  if (mv.forced_next) {
    if (io + 1 >= leno) return std::nullopt;
    return reply_is_winning(rounds, p, mv, io + 1) ? std::optional(io + 1) : std::nullopt;
  }
  for (std::size_t r = io + 1; r < leno; ++r)
    if (reply_is_winning(rounds, p, mv, r)) return r;
  return std::nullopt;
}

std::optional<std::size_t> TptlGame::duplicator_between_reply(int rounds,
                                                              const TptlGamePosition& pos,
                                                              const SpoilerMove& mv,
                                                              std::size_t /*reply*/,
                                                              std::size_t b) {
  TptlGamePosition p = normalized(pos);
  auto [nu0, nu1] = frozen(p, mv.freeze_mask);
  int fz = intern(VP{std::move(nu0), std::move(nu1)});
  std::size_t il = mv.side == 0 ? p.i0 : p.i1;
  for (std::size_t a = il + 1; a < mv.to; ++a)
    if (dup_wins(rounds - 1, mv.side == 0 ? a : b, mv.side == 0 ? b : a, fz)) return a;
  return std::nullopt;
}

std::optional<std::size_t> TptlGame::spoiler_between_move(int rounds, const TptlGamePosition& pos,
                                                          const SpoilerMove& mv,
                                                          std::size_t reply) {
  TptlGamePosition p = normalized(pos);
  auto [nu0, nu1] = frozen(p, mv.freeze_mask);
  int fz = intern(VP{std::move(nu0), std::move(nu1)});
  std::size_t il = mv.side == 0 ? p.i0 : p.i1, io = mv.side == 0 ? p.i1 : p.i0;
  for (std::size_t b = io + 1; b < reply; ++b) {
    bool refutes = true;
    for (std::size_t a = il + 1; a < mv.to && refutes; ++a)
      refutes = !dup_wins(rounds - 1, mv.side == 0 ? a : b, mv.side == 0 ? b : a, fz);
    if (refutes) return b;
  }
  return std::nullopt;
}

// ---------------------------------------------------------- extraction ----

namespace {

TptlPtr label_pin(const std::vector<std::string>& universe, const LabelSet& labels) {
  std::vector<TptlPtr> parts;
  for (const auto& p : universe) {
    bool present = std::binary_search(labels.begin(), labels.end(), p);
    parts.push_back(present ? tptl::prop(p) : tptl::negate(tptl::prop(p)));
  }
  return tptl::conj_all(std::move(parts));
}

TptlPtr make_until(TptlPtr lhs, TptlPtr rhs) {
  if (lhs->kind == TptlFormula::Kind::True) return tptl::eventually(std::move(rhs));
  if (lhs->kind == TptlFormula::Kind::False) return tptl::next(std::move(rhs));
  return tptl::until(std::move(lhs), std::move(rhs));
}

}  // namespace

TptlPtr TptlGame::extract(int rounds, std::size_t i0, std::size_t i1, int vpid) {
  auto memo_key = std::make_pair(rounds, state_key(0, i0, i1, vpid));
  auto mit = extract_memo_.find(memo_key);
  if (mit != extract_memo_.end()) return mit->second;

  const VP vp = vps_[static_cast<std::size_t>(vpid)];

  // Atomic disagreement decides immediately.
  if (label0_[i0] != label1_[i1]) {
    const LabelSet& l0 = cfg_.w0.labels_at(i0);
    const LabelSet& l1 = cfg_.w1.labels_at(i1);
    for (const auto& p : universe_) {
      bool in0 = std::binary_search(l0.begin(), l0.end(), p);
      bool in1 = std::binary_search(l1.begin(), l1.end(), p);
      if (in0 != in1) {
        TptlPtr f = in0 ? tptl::prop(p) : tptl::negate(tptl::prop(p));
        extract_memo_.emplace(memo_key, f);
        return f;
      }
    }
    throw std::logic_error("game: label ids disagree but no witness proposition");
  }
  for (int x = 0; x < cfg_.registers; ++x) {
    std::int64_t d0 = data0_[i0] - vp.nu0[static_cast<std::size_t>(x)];
    std::int64_t d1 = data1_[i1] - vp.nu1[static_cast<std::size_t>(x)];
    TptlPtr f;
    if (cfg_.fragment.equality_only) {
      if ((d0 == 0) == (d1 == 0)) continue;
      TptlPtr zero = tptl::constraint(reg_name(x), Interval::singleton(0));
      f = d0 == 0 ? zero : tptl::negate(zero);
    } else {
      if (cfg_.constants.same_region(d0, d1)) continue;
      f = tptl::constraint(reg_name(x), cfg_.constants.region_interval(d0));
    }
    extract_memo_.emplace(memo_key, f);
    return f;
  }

  if (rounds <= 0 || dup_wins(rounds, i0, i1, vpid))
    throw std::logic_error("extract_formula: Duplicator wins this position");

  TptlGamePosition pos{i0, i1, vp.nu0, vp.nu1};
  auto mv = spoiler_winning_move(rounds, pos);
  if (!mv) throw std::logic_error("extract_formula: no winning move found");
  auto [nu0f, nu1f] = frozen(pos, mv->freeze_mask);
  int fz = intern(VP{nu0f, nu1f});
  int side = mv->side;
  std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
  std::size_t leno = length(1 - side);
  const std::vector<std::int64_t>& nul = side == 0 ? nu0f : nu1f;
  const DataWord& wl = word(side);

  auto oriented = [&](std::size_t a, std::size_t b) {
    // a on the moving side, b on the other
    TptlPtr f = extract(rounds - 1, side == 0 ? a : b, side == 0 ? b : a, fz);
    return side == 0 ? f : tptl::negate(f);
  };

  TptlPtr core;
  if (mv->forced_next) {
    core = io + 1 >= leno ? tptl::next(tptl::tt()) : tptl::next(oriented(il + 1, io + 1));
  } else {
    std::size_t to = mv->to;
    std::vector<TptlPtr> witness_parts{label_pin(universe_, wl.labels_at(to))};
    for (int x = 0; x < cfg_.registers; ++x) {
      std::int64_t diff = wl.data_at(to) - nul[static_cast<std::size_t>(x)];
      if (cfg_.fragment.equality_only) {
        TptlPtr zero = tptl::constraint(reg_name(x), Interval::singleton(0));
        witness_parts.push_back(diff == 0 ? zero : tptl::negate(zero));
      } else {
        witness_parts.push_back(
            tptl::constraint(reg_name(x), cfg_.constants.region_interval(diff)));
      }
    }
    std::vector<TptlPtr> chain_parts;
    const VP& fzvp = vps_[static_cast<std::size_t>(fz)];
    for (std::size_t r = io + 1; r < leno; ++r) {
      std::size_t p0 = side == 0 ? to : r, p1 = side == 0 ? r : to;
      if (!atomic_agree(p0, p1, fzvp.nu0, fzvp.nu1)) continue;  // excluded by the pins
      if (!dup_wins(rounds - 1, p0, p1, fz)) {
        witness_parts.push_back(oriented(to, r));
        continue;
      }
      auto b = spoiler_between_move(rounds, pos, *mv, r);
      if (!b) throw std::logic_error("extract_formula: reply is not refutable");
      std::vector<TptlPtr> answers;
      for (std::size_t a = il + 1; a < to; ++a) answers.push_back(oriented(a, *b));
      chain_parts.push_back(tptl::disj_all(std::move(answers)));
    }
    TptlPtr witness = tptl::conj_all(std::move(witness_parts));
    core = cfg_.fragment.unary_only ? tptl::eventually(std::move(witness))
                                    : make_until(tptl::conj_all(std::move(chain_parts)),
                                                 std::move(witness));
  }

  for (int x = cfg_.registers - 1; x >= 0; --x)
    if (mv->freeze_mask & (1u << x)) core = tptl::freeze(reg_name(x), std::move(core));
  TptlPtr out = side == 0 ? core : tptl::negate(core);
  extract_memo_.emplace(memo_key, out);
  return out;
}

TptlPtr TptlGame::extract_formula(const TptlGamePosition& pos) {
  TptlGamePosition p = normalized(pos);
  return extract(cfg_.rounds, p.i0, p.i1, intern(VP{p.nu0, p.nu1}));
}

Player solve_tg(const TptlGameConfig& cfg, TptlGamePosition pos) {
  TptlGame g(cfg);
  return g.winner(pos);
}

// ------------------------------------------------------------ strategy ----

TptlStrategyTree solve_tg_tree(const TptlGameConfig& cfg, TptlGamePosition pos) {
  TptlGame game(cfg);
  TptlGamePosition root = game.normalized(pos);
  TptlStrategyTree tree;
  if (game.winner(root) == Player::Spoiler) {
    tree.winner = Player::Spoiler;
    tree.nodes.push_back({cfg.rounds, root.i0, root.i1, root.nu0, root.nu1, {}});
    tree.root = 0;
    return tree;
  }
  tree.winner = Player::Duplicator;
  std::map<std::tuple<int, std::size_t, std::size_t, std::vector<std::int64_t>,
                      std::vector<std::int64_t>>,
           int>
      index;

  std::function<int(int, TptlGamePosition)> build = [&](int rounds,
                                                        TptlGamePosition p) -> int {
    auto key = std::make_tuple(rounds, p.i0, p.i1, p.nu0, p.nu1);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(tree.nodes.size());
    index.emplace(key, id);
    tree.nodes.push_back({rounds, p.i0, p.i1, p.nu0, p.nu1, {}});
    if (rounds == 0) return id;
    std::vector<TptlStrategyTree::Entry> entries;
    for (unsigned mask = 0; mask < (1u << cfg.registers); ++mask) {
      auto [nu0, nu1] = game.frozen(p, mask);
      for (int side = 0; side < 2; ++side) {
        std::size_t il = side == 0 ? p.i0 : p.i1, io = side == 0 ? p.i1 : p.i0;
        std::size_t lenl = game.length(side);
        auto add_move = [&](std::size_t to, bool forced) {
          TptlGame::SpoilerMove mv{mask, side, to, forced};
          TptlStrategyTree::Entry e;
          e.freeze_mask = mask;
          e.side = side;
          e.spoiler_to = to;
          e.forced_next = forced;
          e.reply = game.duplicator_reply(rounds, p, mv);
          if (e.reply) {
            std::size_t p0 = side == 0 ? to : *e.reply, p1 = side == 0 ? *e.reply : to;
            if (forced) {
              p0 = p.i0 + 1;
              p1 = p.i1 + 1;
            }
            e.forward_child = build(rounds - 1, {p0, p1, nu0, nu1});
            if (!cfg.fragment.unary_only && !forced) {
              for (std::size_t b = io + 1; b < *e.reply; ++b) {
                auto a = game.duplicator_between_reply(rounds, p, mv, *e.reply, b);
                int child = -1;
                if (a) {
                  std::size_t q0 = side == 0 ? *a : b, q1 = side == 0 ? b : *a;
                  child = build(rounds - 1, {q0, q1, nu0, nu1});
                }
                e.between.emplace_back(b, std::make_pair(a, child));
              }
            }
          }
          entries.push_back(std::move(e));
        };
        if (cfg.fragment.unary_only && il + 1 < lenl) add_move(il + 1, true);
        for (std::size_t to = il + 1; to < lenl; ++to) add_move(to, false);
      }
    }
    tree.nodes[static_cast<std::size_t>(id)].entries = std::move(entries);
    return id;
  };
  tree.root = build(cfg.rounds, root);
  return tree;
}

std::string strategy_to_text(const TptlStrategyTree& tree) {
  std::ostringstream os;
  os << "winner: " << to_string(tree.winner) << "\n";
  auto nu_text = [](const std::vector<std::int64_t>& nu) {
    std::string s = "[";
    for (std::size_t i = 0; i < nu.size(); ++i) s += (i ? "," : "") + std::to_string(nu[i]);
    return s + "]";
  };
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& n = tree.nodes[id];
    os << "node " << id << ": rounds=" << n.rounds << " i0=" << n.i0 << " i1=" << n.i1
       << " nu0=" << nu_text(n.nu0) << " nu1=" << nu_text(n.nu1) << "\n";
    for (const auto& e : n.entries) {
      os << "  S(freeze=" << e.freeze_mask << (e.forced_next ? ",next" : "") << ",w" << e.side
         << "->" << e.spoiler_to << ")";
      if (e.reply)
        os << " D(w" << (1 - e.side) << "->" << *e.reply << ") node " << e.forward_child;
      else
        os << " D(uncovered)";
      os << "\n";
      for (const auto& [b, rec] : e.between) {
        os << "    between b=" << b;
        if (rec.first)
          os << " answer " << *rec.first << " node " << rec.second;
        else
          os << " (uncovered)";
        os << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace tempoef
