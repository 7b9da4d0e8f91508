#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tempoef/formula.hpp"
#include "tempoef/game_common.hpp"
#include "tempoef/interval.hpp"
#include "tempoef/word.hpp"

namespace tempoef {

/// The k-round game on a pair of words with respect to a constant set.
/// Lasso words are played on the positions below `horizon`; finite words on
/// their own positions (the horizon is ignored for them).
struct MtlGameConfig {
  DataWord w0, w1;
  ConstantSet constants;
  int rounds = 0;
  std::size_t horizon = 24;
};

struct MtlGamePosition {
  std::size_t i0 = 0, i1 = 0;
};

/// A solved game. Construction solves every position pair for every round
/// count up to the configured one, bottom-up; queries are table lookups.
class MtlGame {
public:
  explicit MtlGame(MtlGameConfig cfg);

  const MtlGameConfig& config() const { return cfg_; }
  std::size_t length(int side) const { return side == 0 ? len0_ : len1_; }
  const DataWord& word(int side) const { return side == 0 ? cfg_.w0 : cfg_.w1; }

  bool props_agree(std::size_t i0, std::size_t i1) const;
  bool regions_match(std::size_t i0, std::size_t i1, std::size_t to0, std::size_t to1) const;

  bool duplicator_wins(int rounds, std::size_t i0, std::size_t i1) const;
  Player winner(const MtlGamePosition& pos) const;

  /// Duplicator's optimal answer to the forward move (side, to), if any:
  /// smallest reply that satisfies the round conditions and keeps a win.
  std::optional<std::size_t> duplicator_reply(int rounds, MtlGamePosition pos, int side,
                                              std::size_t to) const;

  /// Duplicator's answer to the between challenge b after the exchange
  /// (side,to) -> reply: smallest winning position strictly inside her side.
  std::optional<std::size_t> duplicator_between_reply(int rounds, MtlGamePosition pos, int side,
                                                      std::size_t to, std::size_t reply,
                                                      std::size_t b) const;

  /// Spoiler's winning forward move at a Spoiler-won position (smallest
  /// target position, word 0 preferred on ties); nullopt if Duplicator wins
  /// or the win is already decided by a proposition mismatch.
  std::optional<std::pair<int, std::size_t>> spoiler_winning_move(int rounds,
                                                                  MtlGamePosition pos) const;

  /// After a legal Duplicator reply that Spoiler cannot beat by recursing,
  /// his refuting between position (smallest), if that is how he wins.
  std::optional<std::size_t> spoiler_between_move(int rounds, MtlGamePosition pos, int side,
                                                  std::size_t to, std::size_t reply) const;

  /// True iff every Duplicator answer to (side,to) loses for her.
  bool move_wins_for_spoiler(int rounds, MtlGamePosition pos, int side, std::size_t to) const;

  /// A rank <= rounds formula over the game constants that holds at
  /// (w0,i0) and fails at (w1,i1). Requires a Spoiler win at the position.
  MtlPtr extract_formula(const MtlGamePosition& pos) const;

private:
  bool between_ok(int rounds_left, MtlGamePosition pos, int side, std::size_t to,
                  std::size_t reply) const;
  bool reply_is_winning(int rounds, MtlGamePosition pos, int side, std::size_t to,
                        std::size_t reply) const;
  MtlPtr extract(int rounds, std::size_t i0, std::size_t i1,
                 std::vector<std::vector<MtlPtr>>& memo) const;

  MtlGameConfig cfg_;
  std::size_t len0_ = 0, len1_ = 0;
  std::vector<int> label0_, label1_;       // interned label-set ids over the shared universe
  std::vector<std::int64_t> data0_, data1_;
  std::vector<std::string> universe_;
  std::vector<std::vector<char>> win_;     // win_[k][i0 * len1_ + i1]
};

/// Solves and reports just the winner from (0,0) — the everyday entry point.
Player solve_mg(const MtlGameConfig& cfg, MtlGamePosition pos = {});

// ------------------------------------------------------------ strategy ----

/// An explicit Duplicator strategy: every Spoiler forward move maps to a
/// reply with a continuation node, and every between challenge against that
/// exchange maps to an answer with its own continuation. Nodes are shared
/// by game state.
struct MtlStrategyTree {
  Player winner = Player::Duplicator;  // the claim at the root
  struct Entry {
    int side = 0;
    std::size_t spoiler_to = 0;
    std::optional<std::size_t> reply;
    int forward_child = -1;
    // Between answers, indexed by Spoiler's choice b (reply side), sparse:
    std::vector<std::pair<std::size_t, std::pair<std::optional<std::size_t>, int>>> between;
  };
  struct Node {
    int rounds = 0;
    std::size_t i0 = 0, i1 = 0;
    std::vector<Entry> entries;
  };
  std::vector<Node> nodes;
  int root = -1;
};

/// Builds the full Duplicator strategy tree from a solved game (the winner
/// may also be Spoiler, in which case the tree only records the root claim
/// and extract_formula is the useful artifact).
MtlStrategyTree solve_mg_tree(const MtlGameConfig& cfg, MtlGamePosition pos = {});

/// Reply callbacks for encoding a hand-written strategy (such as a tabulated
/// one) into an explicit tree: given the state and Spoiler's move, produce
/// Duplicator's answer, or nullopt for "not covered".
using DupReplyFn = std::function<std::optional<std::size_t>(
    int rounds, MtlGamePosition pos, int side, std::size_t to)>;
using DupBetweenFn = std::function<std::optional<std::size_t>(
    int rounds, MtlGamePosition pos, int side, std::size_t to, std::size_t reply, std::size_t b)>;

MtlStrategyTree encode_duplicator_strategy(const MtlGameConfig& cfg, MtlGamePosition pos,
                                           const DupReplyFn& reply, const DupBetweenFn& between);

/// Exhaustively replays every Spoiler option against the tree; reports the
/// first uncovered or condition-violating branch.
VerifyResult verify_duplicator_strategy(const MtlGameConfig& cfg, MtlGamePosition pos,
                                        const MtlStrategyTree& strategy);

std::string strategy_to_text(const MtlStrategyTree& tree);

}  // namespace tempoef
