#include "tempoef/game_mtl.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tempoef {

namespace {

// Small dynamic bitset: one bit per position of a word.
struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool any_strictly_between(std::size_t lo, std::size_t hi) const {
    // any set bit i with lo < i < hi
    if (hi <= lo + 1) return false;
    for (std::size_t i = lo + 1; i < hi; ++i)  // words are short; keep it plain
      if (w[i >> 6] & (std::uint64_t{1} << (i & 63))) return true;
    return false;
  }
};

std::vector<std::string> shared_universe(const DataWord& a, const DataWord& b) {
  std::vector<std::string> u = a.props();
  u.insert(u.end(), b.props().begin(), b.props().end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  return u;
}

}  // namespace

MtlGame::MtlGame(MtlGameConfig cfg) : cfg_(std::move(cfg)) {
  if (!cfg_.w0.is_finite() || !cfg_.w1.is_finite()) {
    if (cfg_.horizon < 1) throw std::invalid_argument("game: horizon must be at least 1");
  }
  if (cfg_.rounds < 0) throw std::invalid_argument("game: rounds must be non-negative");
  len0_ = cfg_.w0.bounded_length(cfg_.horizon);
  len1_ = cfg_.w1.bounded_length(cfg_.horizon);
  universe_ = shared_universe(cfg_.w0, cfg_.w1);

  std::map<LabelSet, int> intern;
  auto tabulate = [&](const DataWord& w, std::size_t len, std::vector<int>& labels,
                      std::vector<std::int64_t>& data) {
    labels.reserve(len);
    data.reserve(len);
    for (std::size_t j = 0; j < len; ++j) {
      auto [it, _] = intern.emplace(w.labels_at(j), static_cast<int>(intern.size()));
      labels.push_back(it->second);
      data.push_back(w.data_at(j));
    }
  };
  tabulate(cfg_.w0, len0_, label0_, data0_);
  tabulate(cfg_.w1, len1_, label1_, data1_);

  // Solve every pair for every round count, bottom-up.
  win_.assign(static_cast<std::size_t>(cfg_.rounds) + 1, std::vector<char>(len0_ * len1_, 0));
  for (std::size_t i0 = 0; i0 < len0_; ++i0)
    for (std::size_t i1 = 0; i1 < len1_; ++i1)
      win_[0][i0 * len1_ + i1] = label0_[i0] == label1_[i1];

  for (int k = 1; k <= cfg_.rounds; ++k) {
    const std::vector<char>& prev = win_[static_cast<std::size_t>(k) - 1];
    // For the between challenge: per position b of the replying word, the
    // set of positions a on the other side that stay Duplicator-won.
    std::vector<Bits> good0(len1_, Bits(len0_));  // side 0 moved: a in w0, b in w1
    std::vector<Bits> good1(len0_, Bits(len1_));  // side 1 moved: a in w1, b in w0
    for (std::size_t a = 0; a < len0_; ++a)
      for (std::size_t b = 0; b < len1_; ++b)
        if (prev[a * len1_ + b]) {
          good0[b].set(a);
          good1[a].set(b);
        }

    for (std::size_t i0 = 0; i0 < len0_; ++i0)
      for (std::size_t i1 = 0; i1 < len1_; ++i1) {
        if (!win_[0][i0 * len1_ + i1]) continue;  // proposition mismatch loses every round
        bool dup = true;
        for (int l = 0; l < 2 && dup; ++l) {
          std::size_t il = l == 0 ? i0 : i1, io = l == 0 ? i1 : i0;
          std::size_t lenl = length(l), leno = length(1 - l);
          for (std::size_t to = il + 1; to < lenl && dup; ++to) {
            bool found = false;
            for (std::size_t r = io + 1; r < leno && !found; ++r) {
              std::size_t p0 = l == 0 ? to : r, p1 = l == 0 ? r : to;
              if (label0_[p0] != label1_[p1]) continue;
              if (!regions_match(i0, i1, p0, p1)) continue;
              if (!prev[p0 * len1_ + p1]) continue;
              bool ok = true;
              for (std::size_t b = io + 1; b < r && ok; ++b)
                ok = (l == 0 ? good0[b] : good1[b]).any_strictly_between(il, to);
              found = ok;
            }
            dup = found;
          }
        }
        win_[static_cast<std::size_t>(k)][i0 * len1_ + i1] = dup;
      }
  }
}

bool MtlGame::props_agree(std::size_t i0, std::size_t i1) const {
  return label0_[i0] == label1_[i1];
}

bool MtlGame::regions_match(std::size_t i0, std::size_t i1, std::size_t to0,
                            std::size_t to1) const {
  return cfg_.constants.same_region(data0_[to0] - data0_[i0], data1_[to1] - data1_[i1]);
}

bool MtlGame::duplicator_wins(int rounds, std::size_t i0, std::size_t i1) const {
  if (rounds < 0 || rounds > cfg_.rounds) throw std::out_of_range("game: rounds out of range");
  if (i0 >= len0_ || i1 >= len1_) throw std::out_of_range("game: position out of range");
  return win_[static_cast<std::size_t>(rounds)][i0 * len1_ + i1];
}

Player MtlGame::winner(const MtlGamePosition& pos) const {
  return duplicator_wins(cfg_.rounds, pos.i0, pos.i1) ? Player::Duplicator : Player::Spoiler;
}

bool MtlGame::between_ok(int rounds_left, MtlGamePosition pos, int side, std::size_t to,
                         std::size_t reply) const {
  std::size_t il = side == 0 ? pos.i0 : pos.i1, io = side == 0 ? pos.i1 : pos.i0;
  const std::vector<char>& prev = win_[static_cast<std::size_t>(rounds_left)];
  for (std::size_t b = io + 1; b < reply; ++b) {
    bool answered = false;
    for (std::size_t a = il + 1; a < to && !answered; ++a) {
      std::size_t p0 = side == 0 ? a : b, p1 = side == 0 ? b : a;
      answered = prev[p0 * len1_ + p1];
    }
    if (!answered) return false;
  }
  return true;
}

bool MtlGame::reply_is_winning(int rounds, MtlGamePosition pos, int side, std::size_t to,
                               std::size_t reply) const {
  std::size_t p0 = side == 0 ? to : reply, p1 = side == 0 ? reply : to;
  if (!props_agree(p0, p1)) return false;
  if (!regions_match(pos.i0, pos.i1, p0, p1)) return false;
  if (!win_[static_cast<std::size_t>(rounds) - 1][p0 * len1_ + p1]) return false;
  return between_ok(rounds - 1, pos, side, to, reply);
}

std::optional<std::size_t> MtlGame::duplicator_reply(int rounds, MtlGamePosition pos, int side,
                                                     std::size_t to) const {
  std::size_t io = side == 0 ? pos.i1 : pos.i0;
  std::size_t leno = length(1 - side);
  for (std::size_t r = io + 1; r < leno; ++r)
    if (reply_is_winning(rounds, pos, side, to, r)) return r;
  return std::nullopt;
}

std::optional<std::size_t> MtlGame::duplicator_between_reply(int rounds, MtlGamePosition pos,
                                                             int side, std::size_t to,
                                                             std::size_t /*reply*/,
                                                             std::size_t b) const {
  std::size_t il = side == 0 ? pos.i0 : pos.i1;
  const std::vector<char>& prev = win_[static_cast<std::size_t>(rounds) - 1];
  for (std::size_t a = il + 1; a < to; ++a) {
    std::size_t p0 = side == 0 ? a : b, p1 = side == 0 ? b : a;
    if (prev[p0 * len1_ + p1]) return a;
  }
  return std::nullopt;
}

bool MtlGame::move_wins_for_spoiler(int rounds, MtlGamePosition pos, int side,
                                    std::size_t to) const {
  std::size_t io = side == 0 ? pos.i1 : pos.i0;
  std::size_t leno = length(1 - side);
  for (std::size_t r = io + 1; r < leno; ++r)
    if (reply_is_winning(rounds, pos, side, to, r)) return false;
  return true;
}

std::optional<std::pair<int, std::size_t>> MtlGame::spoiler_winning_move(
    int rounds, MtlGamePosition pos) const {
  if (!props_agree(pos.i0, pos.i1)) return std::nullopt;  // already decided
  if (rounds <= 0 || duplicator_wins(rounds, pos.i0, pos.i1)) return std::nullopt;
  std::size_t maxlen = std::max(len0_, len1_);
  for (std::size_t to = 1; to < maxlen; ++to)
    for (int l = 0; l < 2; ++l) {
      std::size_t il = l == 0 ? pos.i0 : pos.i1;
      if (to <= il || to >= length(l)) continue;
      if (move_wins_for_spoiler(rounds, pos, l, to)) return std::make_pair(l, to);
    }
  return std::nullopt;
}

std::optional<std::size_t> MtlGame::spoiler_between_move(int rounds, MtlGamePosition pos, int side,
                                                         std::size_t to, std::size_t reply) const {
  std::size_t il = side == 0 ? pos.i0 : pos.i1, io = side == 0 ? pos.i1 : pos.i0;
  const std::vector<char>& prev = win_[static_cast<std::size_t>(rounds) - 1];
  for (std::size_t b = io + 1; b < reply; ++b) {
    bool refutes = true;
    for (std::size_t a = il + 1; a < to && refutes; ++a) {
      std::size_t p0 = side == 0 ? a : b, p1 = side == 0 ? b : a;
      refutes = !prev[p0 * len1_ + p1];
    }
    if (refutes) return b;
  }
  return std::nullopt;
}

// ---------------------------------------------------------- extraction ----

namespace {

MtlPtr label_pin(const std::vector<std::string>& universe, const LabelSet& labels) {
  std::vector<MtlPtr> parts;
  for (const auto& p : universe) {
    bool present = std::binary_search(labels.begin(), labels.end(), p);
    parts.push_back(present ? mtl::prop(p) : mtl::negate(mtl::prop(p)));
  }
  return mtl::conj_all(std::move(parts));
}

MtlPtr make_until(MtlPtr lhs, Interval i, MtlPtr rhs) {
  if (lhs->kind == MtlFormula::Kind::True) return mtl::eventually(i, std::move(rhs));
  if (lhs->kind == MtlFormula::Kind::False) return mtl::next(i, std::move(rhs));
  return mtl::until(std::move(lhs), i, std::move(rhs));
}

}  // namespace

MtlPtr MtlGame::extract(int rounds, std::size_t i0, std::size_t i1,
                        std::vector<std::vector<MtlPtr>>& memo) const {
  MtlPtr& slot = memo[static_cast<std::size_t>(rounds)][i0 * len1_ + i1];
  if (slot) return slot;

  // Proposition mismatch: a literal decides, at any round count.
  if (!props_agree(i0, i1)) {
    const LabelSet& l0 = cfg_.w0.labels_at(i0);
    const LabelSet& l1 = cfg_.w1.labels_at(i1);
    for (const auto& p : universe_) {
      bool in0 = std::binary_search(l0.begin(), l0.end(), p);
      bool in1 = std::binary_search(l1.begin(), l1.end(), p);
      if (in0 != in1) return slot = in0 ? mtl::prop(p) : mtl::negate(mtl::prop(p));
    }
    throw std::logic_error("game: label ids disagree but no witness proposition");
  }
  if (rounds <= 0 || duplicator_wins(rounds, i0, i1))
    throw std::logic_error("extract_formula: Duplicator wins this position");

  MtlGamePosition pos{i0, i1};
  auto move = spoiler_winning_move(rounds, pos);
  if (!move) throw std::logic_error("extract_formula: no winning move found");
  auto [side, to] = *move;
  std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
  const DataWord& wl = word(side);
  std::int64_t diff = wl.data_at(to) - wl.data_at(il);
  Interval region = cfg_.constants.region_interval(diff);

  // Orient a sub-distinguisher to be true on the moving side.
  auto oriented = [&](std::size_t a, std::size_t b) {
    // a lives in the moving word, b in the other one
    std::size_t p0 = side == 0 ? a : b, p1 = side == 0 ? b : a;
    MtlPtr f = extract(rounds - 1, p0, p1, memo);
    return side == 0 ? f : mtl::negate(f);
  };

  std::vector<MtlPtr> witness_parts{label_pin(universe_, wl.labels_at(to))};
  std::vector<MtlPtr> chain_parts;
  const std::vector<char>& prev = win_[static_cast<std::size_t>(rounds) - 1];
  std::size_t leno = length(1 - side);
  for (std::size_t r = io + 1; r < leno; ++r) {
    std::size_t p0 = side == 0 ? to : r, p1 = side == 0 ? r : to;
    if (!props_agree(p0, p1)) continue;          // excluded by the label pin
    if (!regions_match(i0, i1, p0, p1)) continue;  // excluded by the interval
    if (!prev[p0 * len1_ + p1]) {
      witness_parts.push_back(oriented(to, r));  // beat by recursing forward
      continue;
    }
    auto b = spoiler_between_move(rounds, pos, side, to, r);
    if (!b) throw std::logic_error("extract_formula: reply is not refutable");
    std::vector<MtlPtr> answers;
    for (std::size_t a = il + 1; a < to; ++a) answers.push_back(oriented(a, *b));
    chain_parts.push_back(mtl::disj_all(std::move(answers)));
  }

  MtlPtr f = make_until(mtl::conj_all(std::move(chain_parts)), region,
                        mtl::conj_all(std::move(witness_parts)));
  return slot = side == 0 ? f : mtl::negate(f);
}

MtlPtr MtlGame::extract_formula(const MtlGamePosition& pos) const {
  std::vector<std::vector<MtlPtr>> memo(static_cast<std::size_t>(cfg_.rounds) + 1,
                                        std::vector<MtlPtr>(len0_ * len1_));
  return extract(cfg_.rounds, pos.i0, pos.i1, memo);
}

Player solve_mg(const MtlGameConfig& cfg, MtlGamePosition pos) {
  return MtlGame(cfg).winner(pos);
}

// ------------------------------------------------------------ strategy ----

namespace {

struct TreeBuilder {
  const MtlGameConfig& cfg;
  std::size_t len0, len1;
  const DupReplyFn& reply;
  const DupBetweenFn& between;
  MtlStrategyTree tree;
  std::map<std::tuple<int, std::size_t, std::size_t>, int> index;

  int node(int rounds, std::size_t i0, std::size_t i1) {
    auto key = std::make_tuple(rounds, i0, i1);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(tree.nodes.size());
    index.emplace(key, id);
    tree.nodes.push_back({rounds, i0, i1, {}});
    if (rounds == 0) return id;
    MtlGamePosition pos{i0, i1};
    std::vector<MtlStrategyTree::Entry> entries;
    for (int side = 0; side < 2; ++side) {
      std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
      std::size_t lenl = side == 0 ? len0 : len1;
      for (std::size_t to = il + 1; to < lenl; ++to) {
        MtlStrategyTree::Entry e;
        e.side = side;
        e.spoiler_to = to;
        e.reply = reply(rounds, pos, side, to);
        if (e.reply) {
          std::size_t p0 = side == 0 ? to : *e.reply, p1 = side == 0 ? *e.reply : to;
          e.forward_child = node(rounds - 1, p0, p1);
          for (std::size_t b = io + 1; b < *e.reply; ++b) {
            auto a = between(rounds, pos, side, to, *e.reply, b);
            int child = -1;
            if (a) {
              std::size_t q0 = side == 0 ? *a : b, q1 = side == 0 ? b : *a;
              child = node(rounds - 1, q0, q1);
            }
            e.between.emplace_back(b, std::make_pair(a, child));
          }
        }
        entries.push_back(std::move(e));
      }
    }
    tree.nodes[static_cast<std::size_t>(id)].entries = std::move(entries);
    return id;
  }
};

}  // namespace

MtlStrategyTree encode_duplicator_strategy(const MtlGameConfig& cfg, MtlGamePosition pos,
                                           const DupReplyFn& reply, const DupBetweenFn& between) {
  TreeBuilder b{cfg, cfg.w0.bounded_length(cfg.horizon), cfg.w1.bounded_length(cfg.horizon),
                reply, between, {}, {}};
  b.tree.winner = Player::Duplicator;
  b.tree.root = b.node(cfg.rounds, pos.i0, pos.i1);
  return b.tree;
}

MtlStrategyTree solve_mg_tree(const MtlGameConfig& cfg, MtlGamePosition pos) {
  MtlGame game(cfg);
  if (game.winner(pos) == Player::Spoiler) {
    MtlStrategyTree t;
    t.winner = Player::Spoiler;
    t.nodes.push_back({cfg.rounds, pos.i0, pos.i1, {}});
    t.root = 0;
    return t;
  }
  auto reply = [&game](int rounds, MtlGamePosition p, int side, std::size_t to) {
    return game.duplicator_reply(rounds, p, side, to);
  };
  auto between = [&game](int rounds, MtlGamePosition p, int side, std::size_t to, std::size_t r,
                         std::size_t b) {
    return game.duplicator_between_reply(rounds, p, side, to, r, b);
  };
  return encode_duplicator_strategy(cfg, pos, reply, between);
}

VerifyResult verify_duplicator_strategy(const MtlGameConfig& cfg, MtlGamePosition pos,
                                        const MtlStrategyTree& strategy) {
  if (strategy.winner != Player::Duplicator)
    return {false, "strategy does not claim a Duplicator win"};
  if (strategy.root < 0 || strategy.root >= static_cast<int>(strategy.nodes.size()))
    return {false, "strategy has no root node"};
  const auto& rootnode = strategy.nodes[static_cast<std::size_t>(strategy.root)];
  if (rootnode.rounds != cfg.rounds || rootnode.i0 != pos.i0 || rootnode.i1 != pos.i1)
    return {false, "root node does not match the requested game"};

  std::size_t len0 = cfg.w0.bounded_length(cfg.horizon);
  std::size_t len1 = cfg.w1.bounded_length(cfg.horizon);
  std::vector<char> checked(strategy.nodes.size(), 0);

  std::function<VerifyResult(int)> walk = [&](int id) -> VerifyResult {
    const auto& n = strategy.nodes[static_cast<std::size_t>(id)];
    if (checked[static_cast<std::size_t>(id)]) return {true, ""};
    checked[static_cast<std::size_t>(id)] = 1;
    std::ostringstream at;
    at << "at rounds=" << n.rounds << " (i0=" << n.i0 << ",i1=" << n.i1 << ")";
    if (!agree_propositions(cfg.w0, n.i0, cfg.w1, n.i1))
      return {false, "propositions disagree " + at.str()};
    if (n.rounds == 0) return {true, ""};

    auto child_state = [&](int child, int rounds, std::size_t p0,
                           std::size_t p1) -> VerifyResult {
      if (child < 0 || child >= static_cast<int>(strategy.nodes.size()))
        return {false, "missing continuation node " + at.str()};
      const auto& c = strategy.nodes[static_cast<std::size_t>(child)];
      if (c.rounds != rounds || c.i0 != p0 || c.i1 != p1)
        return {false, "continuation node mismatch " + at.str()};
      return walk(child);
    };

    for (int side = 0; side < 2; ++side) {
      std::size_t il = side == 0 ? n.i0 : n.i1, io = side == 0 ? n.i1 : n.i0;
      std::size_t lenl = side == 0 ? len0 : len1, leno = side == 0 ? len1 : len0;
      for (std::size_t to = il + 1; to < lenl; ++to) {
        std::ostringstream mv;
        mv << "Spoiler move w" << side << " -> " << to << " " << at.str();
        const MtlStrategyTree::Entry* entry = nullptr;
        for (const auto& e : n.entries)
          if (e.side == side && e.spoiler_to == to) {
            entry = &e;
            break;
          }
        if (!entry || !entry->reply) return {false, "uncovered: " + mv.str()};
        std::size_t r = *entry->reply;
        if (r <= io || r >= leno) return {false, "reply out of range for " + mv.str()};
        std::size_t p0 = side == 0 ? to : r, p1 = side == 0 ? r : to;
        if (!agree_propositions(cfg.w0, p0, cfg.w1, p1))
          return {false, "reply violates proposition agreement for " + mv.str()};
        std::int64_t d0 = cfg.w0.data_at(p0) - cfg.w0.data_at(n.i0);
        std::int64_t d1 = cfg.w1.data_at(p1) - cfg.w1.data_at(n.i1);
        if (!cfg.constants.same_region(d0, d1))
          return {false, "reply violates the region condition for " + mv.str()};
        if (auto res = child_state(entry->forward_child, n.rounds - 1, p0, p1); !res.ok)
          return res;
        for (std::size_t b = io + 1; b < r; ++b) {
          const std::pair<std::optional<std::size_t>, int>* ans = nullptr;
          for (const auto& [bb, rec] : entry->between)
            if (bb == b) {
              ans = &rec;
              break;
            }
          std::ostringstream bm;
          bm << "between challenge b=" << b << " after " << mv.str();
          if (!ans || !ans->first) return {false, "uncovered: " + bm.str()};
          std::size_t a = *ans->first;
          if (a <= il || a >= to) return {false, "between answer out of range for " + bm.str()};
          std::size_t q0 = side == 0 ? a : b, q1 = side == 0 ? b : a;
          if (!agree_propositions(cfg.w0, q0, cfg.w1, q1))
            return {false, "between answer violates proposition agreement for " + bm.str()};
          if (auto res = child_state(ans->second, n.rounds - 1, q0, q1); !res.ok) return res;
        }
      }
    }
    return {true, ""};
  };
  return walk(strategy.root);
}

std::string strategy_to_text(const MtlStrategyTree& tree) {
  std::ostringstream os;
  os << "winner: " << to_string(tree.winner) << "\n";
  for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
    const auto& n = tree.nodes[id];
    os << "node " << id << ": rounds=" << n.rounds << " i0=" << n.i0 << " i1=" << n.i1 << "\n";
    for (const auto& e : n.entries) {
      os << "  S(w" << e.side << "->" << e.spoiler_to << ")";
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
