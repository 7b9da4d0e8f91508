#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tempoef/eval.hpp"
#include "tempoef/formula.hpp"
#include "tempoef/game_common.hpp"
#include "tempoef/interval.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

/// The k-round register game over n registers x1..xn. The fragment spec
/// selects the game variant: equality_only swaps the atomic agreement for
/// zero-tests, unary_only drops the between challenge and adds a forced
/// successor move.
struct TptlGameConfig {
  DataWord w0, w1;
  ConstantSet constants;
  int registers = 1;
  int rounds = 0;
  std::size_t horizon = 24;
  FragmentSpec fragment;
};

/// Register values are indexed x1 -> 0, x2 -> 1, ... An empty valuation
/// vector stands for the initial valuation (every register holds the word's
/// first data value).
struct TptlGamePosition {
  std::size_t i0 = 0, i1 = 0;
  std::vector<std::int64_t> nu0, nu1;
};

class TptlGame {
public:
  explicit TptlGame(TptlGameConfig cfg);

  const TptlGameConfig& config() const { return cfg_; }
  std::size_t length(int side) const { return side == 0 ? len0_ : len1_; }
  const DataWord& word(int side) const { return side == 0 ? cfg_.w0 : cfg_.w1; }

  /// Agreement on every atomic formula available to the game: propositions,
  /// and per register the region of (data - register) with respect to the
  /// constants — just the zero test under the equality fragment.
  bool atomic_agree(std::size_t i0, std::size_t i1, const std::vector<std::int64_t>& nu0,
                    const std::vector<std::int64_t>& nu1) const;

  bool duplicator_wins(int rounds, const TptlGamePosition& pos);
  Player winner(const TptlGamePosition& pos);

  struct SpoilerMove {
    unsigned freeze_mask = 0;  // registers Spoiler resets before moving
    int side = 0;
    std::size_t to = 0;
    bool forced_next = false;  // unary variant: the successor move
  };

  std::optional<SpoilerMove> spoiler_winning_move(int rounds, const TptlGamePosition& pos);
  std::optional<std::size_t> duplicator_reply(int rounds, const TptlGamePosition& pos,
                                              const SpoilerMove& mv);
  std::optional<std::size_t> duplicator_between_reply(int rounds, const TptlGamePosition& pos,
                                                      const SpoilerMove& mv, std::size_t reply,
                                                      std::size_t b);
  std::optional<std::size_t> spoiler_between_move(int rounds, const TptlGamePosition& pos,
                                                  const SpoilerMove& mv, std::size_t reply);
  bool move_wins_for_spoiler(int rounds, const TptlGamePosition& pos, const SpoilerMove& mv);
  bool reply_is_winning(int rounds, const TptlGamePosition& pos, const SpoilerMove& mv,
                        std::size_t reply);

  /// Applies the freeze set to both valuations at the current positions.
  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> frozen(
      const TptlGamePosition& pos, unsigned mask) const;

  /// A rank <= rounds distinguishing formula within the game's fragment and
  /// register budget; requires a Spoiler win.
  TptlPtr extract_formula(const TptlGamePosition& pos);

  TptlGamePosition normalized(TptlGamePosition pos) const;  // fills initial valuations

private:
  struct VP {
    std::vector<std::int64_t> nu0, nu1;
    bool operator<(const VP& o) const {
      return std::tie(nu0, nu1) < std::tie(o.nu0, o.nu1);
    }
  };
  int intern(VP vp);
  bool dup_wins(int rounds, std::size_t i0, std::size_t i1, int vpid);
  bool between_ok(int rounds_left, std::size_t i0, std::size_t i1, int side, std::size_t to,
                  std::size_t reply, int vpid);
  TptlPtr extract(int rounds, std::size_t i0, std::size_t i1, int vpid);
  std::vector<int> distinct_freezes(std::size_t i0, std::size_t i1, int vpid,
                                    std::vector<unsigned>* masks);

  TptlGameConfig cfg_;
  std::size_t len0_ = 0, len1_ = 0;
  std::vector<int> label0_, label1_;
  std::vector<std::int64_t> data0_, data1_;
  std::vector<std::string> universe_;
  std::vector<VP> vps_;
  std::map<VP, int> vp_index_;
  std::unordered_map<std::uint64_t, char> memo_;
  std::map<std::pair<int, std::uint64_t>, TptlPtr> extract_memo_;
};

Player solve_tg(const TptlGameConfig& cfg, TptlGamePosition pos = {});

/// Explicit Duplicator strategy tree, as for the interval game; entries are
/// per Spoiler option (freeze set + move).
struct TptlStrategyTree {
  Player winner = Player::Duplicator;
  struct Entry {
    unsigned freeze_mask = 0;
    int side = 0;
    std::size_t spoiler_to = 0;
    bool forced_next = false;
    std::optional<std::size_t> reply;
    int forward_child = -1;
    std::vector<std::pair<std::size_t, std::pair<std::optional<std::size_t>, int>>> between;
  };
  struct Node {
    int rounds = 0;
    std::size_t i0 = 0, i1 = 0;
    std::vector<std::int64_t> nu0, nu1;
    std::vector<Entry> entries;
  };
  std::vector<Node> nodes;
  int root = -1;
};

TptlStrategyTree solve_tg_tree(const TptlGameConfig& cfg, TptlGamePosition pos = {});
std::string strategy_to_text(const TptlStrategyTree& tree);

}  // namespace tempoef
