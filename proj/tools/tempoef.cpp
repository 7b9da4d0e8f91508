#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tempoef/corpus.hpp"
#include "tempoef/enumerate.hpp"
#include "tempoef/eval.hpp"
#include "tempoef/game_mtl.hpp"
#include "tempoef/game_tptl.hpp"
#include "tempoef/gen.hpp"
#include "tempoef/parse.hpp"
#include "tempoef/selfcheck.hpp"

using namespace tempoef;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitUsage = 2;

DataWord load_word(const std::string& path) { return DataWord::load(path); }

// ------------------------------------------------------------- witness ----

void witness_mtl(const DataWord& w, std::size_t i, const MtlPtr& f, std::size_t horizon,
                 int depth, std::ostream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (!eval_mtl(w, i, f, horizon)) return;
  switch (f->kind) {
    case MtlFormula::Kind::And:
      witness_mtl(w, i, f->lhs, horizon, depth, out);
      witness_mtl(w, i, f->rhs, horizon, depth, out);
      break;
    case MtlFormula::Kind::Or:
      if (eval_mtl(w, i, f->lhs, horizon))
        witness_mtl(w, i, f->lhs, horizon, depth, out);
      else
        witness_mtl(w, i, f->rhs, horizon, depth, out);
      break;
    case MtlFormula::Kind::Until: {
      std::size_t limit = w.is_finite() ? w.finite_length() : horizon;
      for (std::size_t j = i + 1; j < limit; ++j) {
        if (eval_mtl(w, j, f->rhs, horizon) && f->interval.contains(w.data_at(j) - w.data_at(i))) {
          out << pad << "witness position " << j << " (data " << w.data_at(j)
              << ", difference " << (w.data_at(j) - w.data_at(i)) << ") for " << to_string(f)
              << "\n";
          witness_mtl(w, j, f->rhs, horizon, depth + 1, out);
          return;
        }
        if (!eval_mtl(w, j, f->lhs, horizon)) return;
      }
      break;
    }
    default: break;
  }
}

void witness_tptl(const DataWord& w, std::size_t i, const Valuation& nu, const TptlPtr& f,
                  std::size_t horizon, int depth, std::ostream& out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (!eval_tptl(w, i, nu, f, horizon)) return;
  switch (f->kind) {
    case TptlFormula::Kind::And:
      witness_tptl(w, i, nu, f->lhs, horizon, depth, out);
      witness_tptl(w, i, nu, f->rhs, horizon, depth, out);
      break;
    case TptlFormula::Kind::Or:
      if (eval_tptl(w, i, nu, f->lhs, horizon))
        witness_tptl(w, i, nu, f->lhs, horizon, depth, out);
      else
        witness_tptl(w, i, nu, f->rhs, horizon, depth, out);
      break;
    case TptlFormula::Kind::Freeze:
      out << pad << f->name << " := " << w.data_at(i) << " at position " << i << "\n";
      witness_tptl(w, i, nu.with(f->name, w.data_at(i)), f->lhs, horizon, depth, out);
      break;
    case TptlFormula::Kind::Until: {
      std::size_t limit = w.is_finite() ? w.finite_length() : horizon;
      for (std::size_t j = i + 1; j < limit; ++j) {
        if (eval_tptl(w, j, nu, f->rhs, horizon)) {
          out << pad << "witness position " << j << " (data " << w.data_at(j) << ") for "
              << to_string(f) << "\n";
          witness_tptl(w, j, nu, f->rhs, horizon, depth + 1, out);
          return;
        }
        if (!eval_tptl(w, j, nu, f->lhs, horizon)) return;
      }
      break;
    }
    default: break;
  }
}

// ----------------------------------------------------------------- eval ----

struct EvalOpts {
  std::string word_path, formula, logic = "auto";
  std::size_t pos = 0;
  std::size_t horizon = 0;
  bool want_witness = false, as_json = false;
};

int cmd_eval(const EvalOpts& o) {
  DataWord w = load_word(o.word_path);
  std::string logic = o.logic;
  if (logic == "auto") logic = looks_like_tptl(o.formula) ? "tptl" : "mtl";
  bool result;
  std::size_t horizon;
  std::ostringstream trace;
  if (logic == "mtl") {
    MtlPtr f = parse_mtl(o.formula);
    horizon = o.horizon ? o.horizon : lasso_horizon(w, f) + (w.is_finite() ? 0 : o.pos);
    result = eval_mtl(w, o.pos, f, horizon);
    if (o.want_witness && result) witness_mtl(w, o.pos, f, horizon, 0, trace);
  } else {
    TptlPtr f = parse_tptl(o.formula);
    horizon = o.horizon ? o.horizon : lasso_horizon(w, f) + (w.is_finite() ? 0 : o.pos);
    Valuation nu = initial_valuation(w);
    result = eval_tptl(w, o.pos, nu, f, horizon);
    if (o.want_witness && result) witness_tptl(w, o.pos, nu, f, horizon, 0, trace);
  }
  if (o.as_json) {
    json j{{"logic", logic}, {"position", o.pos}, {"result", result}};
    if (!w.is_finite()) j["horizon"] = horizon;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "logic: " << logic << "\n";
    if (!w.is_finite()) std::cout << "horizon: " << horizon << "\n";
    std::cout << "result: " << (result ? "true" : "false") << "\n";
    if (o.want_witness) {
      if (result)
        std::cout << trace.str();
      else
        std::cout << "no witness: the formula does not hold here\n";
    }
  }
  return result ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------- game ----

struct GameOpts {
  std::string w0_path, w1_path, constants;
  int k = 1, n = 1;
  std::size_t i0 = 0, i1 = 0;
  std::size_t horizon = 24;
  std::string fragment;
  bool extract = false, strategy = false, as_json = false;
};

int cmd_game_mtl(const GameOpts& o) {
  MtlGameConfig cfg{load_word(o.w0_path), load_word(o.w1_path), ConstantSet::parse(o.constants),
                    o.k, o.horizon};
  MtlGame game(cfg);
  Player winner = game.winner({o.i0, o.i1});
  std::optional<std::string> formula;
  if (o.extract && winner == Player::Spoiler)
    formula = to_string(game.extract_formula({o.i0, o.i1}));
  bool lasso = !cfg.w0.is_finite() || !cfg.w1.is_finite();
  if (o.as_json) {
    json j{{"game", "mtl"},
           {"rounds", o.k},
           {"constants", cfg.constants.to_string()},
           {"winner", to_string(winner)}};
    if (lasso) j["horizon"] = o.horizon;
    if (formula) j["distinguishing_formula"] = *formula;
    if (o.strategy) j["strategy"] = strategy_to_text(solve_mg_tree(cfg, {o.i0, o.i1}));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "game: MG rounds=" << o.k << " constants=" << cfg.constants.to_string() << "\n";
    if (lasso) std::cout << "horizon: " << o.horizon << " (lasso words solved on this window)\n";
    std::cout << "winner: " << to_string(winner) << "\n";
    if (o.extract && winner == Player::Duplicator)
      std::cout << "no distinguishing formula: Duplicator wins\n";
    if (formula) std::cout << "distinguishing formula: " << *formula << "\n";
    if (o.strategy) std::cout << strategy_to_text(solve_mg_tree(cfg, {o.i0, o.i1}));
  }
  return kExitPass;
}

int cmd_game_tptl(const GameOpts& o) {
  TptlGameConfig cfg{load_word(o.w0_path),          load_word(o.w1_path),
                     ConstantSet::parse(o.constants), o.n,
                     o.k,                            o.horizon,
                     FragmentSpec::parse(o.fragment)};
  TptlGame game(cfg);
  Player winner = game.winner({o.i0, o.i1});
  std::optional<std::string> formula;
  if (o.extract && winner == Player::Spoiler)
    formula = to_string(game.extract_formula({o.i0, o.i1}));
  bool lasso = !cfg.w0.is_finite() || !cfg.w1.is_finite();
  if (o.as_json) {
    json j{{"game", "tptl"},
           {"rounds", o.k},
           {"registers", o.n},
           {"fragment", cfg.fragment.to_string()},
           {"constants", cfg.constants.to_string()},
           {"winner", to_string(winner)}};
    if (lasso) j["horizon"] = o.horizon;
    if (formula) j["distinguishing_formula"] = *formula;
    if (o.strategy) j["strategy"] = strategy_to_text(solve_tg_tree(cfg, {o.i0, o.i1}));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "game: TG rounds=" << o.k << " registers=" << o.n
              << " fragment=" << cfg.fragment.to_string()
              << " constants=" << cfg.constants.to_string() << "\n";
    if (lasso) std::cout << "horizon: " << o.horizon << " (lasso words solved on this window)\n";
    std::cout << "winner: " << to_string(winner) << "\n";
    if (o.extract && winner == Player::Duplicator)
      std::cout << "no distinguishing formula: Duplicator wins\n";
    if (formula) std::cout << "distinguishing formula: " << *formula << "\n";
    if (o.strategy) std::cout << strategy_to_text(solve_tg_tree(cfg, {o.i0, o.i1}));
  }
  return kExitPass;
}

// ----------------------------------------------------------------- enum ----

struct EnumOpts {
  std::string logic = "mtl", constants, props;
  int k = 1, n = 1;
  std::size_t max_size = 5;
  std::vector<std::string> probe_paths;
  std::size_t ceiling = 200000;
  bool as_json = false;
};

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

EnumBudget make_budget(const EnumOpts& o) {
  EnumBudget b;
  b.max_rank = o.k;
  b.constants = ConstantSet::parse(o.constants);
  b.max_size = o.max_size;
  b.props = split_names(o.props);
  b.pool_ceiling = o.ceiling;
  if (o.logic == "tptl") b.registers = o.n;
  for (const auto& p : o.probe_paths) b.probe_words.push_back(load_word(p));
  if (b.probe_words.empty()) {
    Gen g(7);
    for (int i = 0; i < 6; ++i)
      b.probe_words.push_back(
          g.finite_word(2, 4, std::max<std::int64_t>(3, b.constants.max_abs() + 1), b.props));
  }
  return b;
}

int cmd_enum(const EnumOpts& o) {
  EnumBudget b = make_budget(o);
  std::vector<std::string> lines;
  if (o.logic == "tptl")
    for (const auto& f : enumerate_tptl(b)) lines.push_back(to_string(f));
  else
    for (const auto& f : enumerate_mtl(b)) lines.push_back(to_string(f));
  if (o.as_json) {
    std::cout << json(lines).dump(2) << "\n";
  } else {
    std::cout << "formulas: " << lines.size() << "\n";
    for (const auto& l : lines) std::cout << l << "\n";
  }
  return kExitPass;
}

struct DistinguishOpts {
  std::string w0_path, w1_path, logic = "mtl", constants, props;
  int k = 1, n = 1;
  std::size_t i0 = 0, i1 = 0, max_size = 7, ceiling = 200000;
  bool as_json = false;
};

int cmd_distinguish(const DistinguishOpts& o) {
  DataWord w0 = load_word(o.w0_path), w1 = load_word(o.w1_path);
  EnumOpts eo;
  eo.logic = o.logic;
  eo.constants = o.constants;
  eo.props = o.props;
  eo.k = o.k;
  eo.n = o.n;
  eo.max_size = o.max_size;
  eo.ceiling = o.ceiling;
  EnumBudget b = make_budget(eo);
  if (b.props.empty()) {
    b.props = w0.props();
    for (const auto& p : w1.props()) b.props.push_back(p);
    std::sort(b.props.begin(), b.props.end());
    b.props.erase(std::unique(b.props.begin(), b.props.end()), b.props.end());
  }
  b.probe_words.clear();  // default: the pair plus filler probes
  std::optional<std::string> found;
  if (o.logic == "tptl") {
    auto f = find_distinguisher_tptl(w0, o.i0, w1, o.i1, b);
    if (f) found = to_string(*f);
  } else {
    auto f = find_distinguisher_mtl(w0, o.i0, w1, o.i1, b);
    if (f) found = to_string(*f);
  }
  if (o.as_json) {
    json j{{"found", found.has_value()}};
    if (found) j["formula"] = *found;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (found ? "formula: " + *found : std::string("none within budget")) << "\n";
  }
  return found ? kExitPass : kExitFail;
}

// --------------------------------------------------------------- corpus ----

int cmd_corpus_list(bool as_json) {
  if (as_json) {
    json j = json::array();
    for (const auto& f : corpus_families())
      j.push_back({{"family", f}, {"about", corpus_family_help(f)}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& f : corpus_families())
      std::cout << f << "\n    " << corpus_family_help(f) << "\n";
  }
  return kExitPass;
}

struct CorpusOpts {
  std::string family, out_dir, suffix = "arith", constants;
  std::optional<std::int64_t> r, s;
  int k = 1;
  std::int64_t n = 2;
  std::size_t horizon = 0;
  bool as_json = false;
};

FamilyParams corpus_params(const CorpusOpts& o) {
  FamilyParams p;
  p.r = o.r;
  p.s = o.s;
  p.k = o.k;
  p.n = o.n;
  p.suffix = o.suffix;
  if (!o.constants.empty()) p.constants = ConstantSet::parse(o.constants);
  return p;
}

int cmd_corpus_gen(const CorpusOpts& o) {
  FamilyInstance fi = make_family(o.family, corpus_params(o));
  std::string dir = o.out_dir.empty() ? "." : o.out_dir;
  fi.w0.save(dir + "/w0.json");
  fi.w1.save(dir + "/w1.json");
  json meta{{"family", fi.family},
            {"constants", fi.constants.to_string()},
            {"rounds", fi.rounds},
            {"game", fi.tptl_game ? "tptl" : "mtl"},
            {"registers", fi.registers},
            {"horizon", fi.horizon},
            {"summary", fi.summary}};
  if (fi.mtl_formula) meta["formula"] = to_string(fi.mtl_formula);
  if (fi.tptl_formula) meta["formula"] = to_string(fi.tptl_formula);
  std::ofstream(dir + "/meta.json") << meta.dump(2) << "\n";
  std::cout << "wrote " << dir << "/w0.json, w1.json, meta.json\n";
  return kExitPass;
}

int cmd_corpus_check(const CorpusOpts& o) {
  ClaimReport r = run_claim(o.family, corpus_params(o), o.horizon);
  if (o.as_json) {
    json items = json::array();
    for (const auto& i : r.items)
      items.push_back({{"claim", i.name}, {"pass", i.pass}, {"detail", i.detail}});
    std::cout << json{{"family", r.family}, {"pass", r.all_pass()}, {"claims", items}}.dump(2)
              << "\n";
  } else {
    std::cout << "family: " << r.family << "\n";
    for (const auto& i : r.items) {
      std::cout << (i.pass ? "[pass] " : "[FAIL] ") << i.name;
      if (!i.detail.empty()) std::cout << " -- " << i.detail;
      std::cout << "\n";
    }
  }
  return r.all_pass() ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------- play ----

struct PlayOpts {
  std::string logic = "mtl", w0_path, w1_path, constants, fragment;
  int k = 1, n = 1;
  std::size_t horizon = 12;
  std::string role = "spoiler";
  std::string transcript_path, replay_path;
};

struct MoveSource {
  std::istream* in;
  std::ostream* prompt;  // null when replaying
  std::vector<std::string> record;

  std::optional<std::string> ask(const std::string& question) {
    if (prompt) *prompt << question << std::flush;
    std::string line;
    while (std::getline(*in, line)) {
      auto b = line.find_first_not_of(" \t");
      if (b == std::string::npos) continue;
      auto e = line.find_last_not_of(" \t");
      line = line.substr(b, e - b + 1);
      if (line.empty() || line[0] == '#') continue;
      record.push_back(line);
      return line;
    }
    return std::nullopt;
  }
};

void render_board(std::ostream& out, const DataWord& w0, const DataWord& w1, std::size_t len0,
                  std::size_t len1, std::size_t i0, std::size_t i1) {
  auto row = [&](const DataWord& w, std::size_t len, std::size_t cur, const std::string& name) {
    std::ostringstream l1, l2;
    l1 << name << " labels:";
    l2 << name << " data:  ";
    for (std::size_t j = 0; j < len; ++j) {
      std::string ls;
      for (const auto& p : w.labels_at(j)) ls += p;
      if (ls.empty()) ls = "-";
      if (j == cur) ls = "[" + ls + "]";
      l1 << ' ' << ls;
      std::string d = std::to_string(w.data_at(j));
      if (j == cur) d = "[" + d + "]";
      l2 << ' ' << d;
    }
    out << l1.str() << "\n" << l2.str() << "\n";
  };
  row(w0, len0, i0, "w0");
  row(w1, len1, i1, "w1");
}

// The interactive loop enforces exactly the round conditions; the engine
// side plays from the solved game. Returns the winner.
int cmd_play(const PlayOpts& o) {
  bool human_spoiler = o.role == "spoiler";
  std::ifstream replay_file;
  MoveSource src{&std::cin, &std::cout, {}};
  if (!o.replay_path.empty()) {
    replay_file.open(o.replay_path);
    if (!replay_file) throw std::runtime_error("cannot open replay file: " + o.replay_path);
    src = MoveSource{&replay_file, nullptr, {}};
  }
  std::ostream& out = std::cout;

  auto ask_size = [&](const std::string& q, std::size_t lo, std::size_t hi,
                      const std::string& why) -> std::optional<std::size_t> {
    for (;;) {
      auto line = src.ask(q);
      if (!line) return std::nullopt;
      try {
        std::size_t v = static_cast<std::size_t>(std::stoull(*line));
        if (v >= lo && v <= hi) return v;
      } catch (...) {
      }
      out << "illegal move: " << why << "\n";
      if (!src.prompt) throw std::runtime_error("replay contains an illegal move");
    }
  };

  std::vector<std::string> transcript;
  auto note = [&](const std::string& line) {
    transcript.push_back(line);
    out << line << "\n";
  };

  Player winner;
  if (o.logic == "mtl") {
    MtlGameConfig cfg{load_word(o.w0_path), load_word(o.w1_path),
                      ConstantSet::parse(o.constants), o.k, o.horizon};
    MtlGame game(cfg);
    std::size_t len0 = cfg.w0.bounded_length(o.horizon), len1 = cfg.w1.bounded_length(o.horizon);
    std::size_t i0 = 0, i1 = 0;
    int k = o.k;
    winner = Player::Duplicator;
    for (;;) {
      if (!game.props_agree(i0, i1)) {
        note("propositions disagree: Spoiler wins");
        winner = Player::Spoiler;
        break;
      }
      if (k == 0) {
        note("no rounds left: Duplicator wins");
        break;
      }
      if (i0 + 1 >= len0 && i1 + 1 >= len1) {
        note("no forward moves exist: Duplicator wins");
        break;
      }
      render_board(out, cfg.w0, cfg.w1, len0, len1, i0, i1);
      out << "round with " << k << " left, position (" << i0 << "," << i1 << ")\n";

      int side;
      std::size_t to;
      if (human_spoiler) {
        for (;;) {
          auto s = ask_size("spoiler: choose word (0/1): ", 0, 1, "word must be 0 or 1");
          if (!s) return kExitUsage;
          side = static_cast<int>(*s);
          std::size_t il = side == 0 ? i0 : i1;
          std::size_t lenl = side == 0 ? len0 : len1;
          if (il + 1 >= lenl) {
            out << "illegal move: no position beyond " << il << " in w" << side << "\n";
            if (!src.prompt) throw std::runtime_error("replay contains an illegal move");
            continue;
          }
          auto t = ask_size("spoiler: choose position: ", il + 1, lenl - 1,
                            "position must lie strictly beyond the current one, within the window");
          if (!t) return kExitUsage;
          to = *t;
          break;
        }
      } else {
        auto best = game.spoiler_winning_move(k, {i0, i1});
        if (best) {
          side = best->first;
          to = best->second;
        } else {  // losing position for the engine: play the first legal move
          side = i0 + 1 < len0 ? 0 : 1;
          to = (side == 0 ? i0 : i1) + 1;
        }
      }
      note("spoiler: w" + std::to_string(side) + " -> " + std::to_string(to));

      std::size_t il = side == 0 ? i0 : i1, io = side == 0 ? i1 : i0;
      std::size_t leno = side == 0 ? len1 : len0;
      std::optional<std::size_t> reply;
      if (human_spoiler) {
        reply = game.duplicator_reply(k, {i0, i1}, side, to);
        if (!reply)  // no winning answer; give the least legal one if any
          for (std::size_t r = io + 1; r < leno && !reply; ++r) {
            std::size_t p0 = side == 0 ? to : r, p1 = side == 0 ? r : to;
            if (game.props_agree(p0, p1) && game.regions_match(i0, i1, p0, p1)) reply = r;
          }
        if (!reply) {
          note("duplicator: no legal reply (propositions or regions fail everywhere): Spoiler wins");
          winner = Player::Spoiler;
          break;
        }
      } else {
        for (;;) {
          auto r = ask_size("duplicator: reply position in w" + std::to_string(1 - side) + ": ",
                            io + 1, leno - 1, "position must lie strictly beyond the current one");
          if (!r) return kExitUsage;
          std::size_t p0 = side == 0 ? to : *r, p1 = side == 0 ? *r : to;
          if (!game.props_agree(p0, p1)) {
            out << "illegal move: propositions disagree at that pair\n";
            if (!src.prompt) throw std::runtime_error("replay contains an illegal move");
            continue;
          }
          if (!game.regions_match(i0, i1, p0, p1)) {
            out << "illegal move: the data differences are not in the same region\n";
            if (!src.prompt) throw std::runtime_error("replay contains an illegal move");
            continue;
          }
          reply = *r;
          break;
        }
      }
      note("duplicator: w" + std::to_string(1 - side) + " -> " + std::to_string(*reply));
      std::size_t f0 = side == 0 ? to : *reply, f1 = side == 0 ? *reply : to;

      // Spoiler now either continues from the new pair or challenges between.
      bool go_between = false;
      std::size_t b = 0;
      if (io + 1 < *reply) {
        if (human_spoiler) {
          auto choice =
              src.ask("spoiler: continue at the new pair (c) or challenge between (b)? ");
          if (!choice) return kExitUsage;
          go_between = *choice == "b";
          if (go_between) {
            auto bb = ask_size("spoiler: between position in w" + std::to_string(1 - side) + ": ",
                               io + 1, *reply - 1, "must lie strictly between the old and new position");
            if (!bb) return kExitUsage;
            b = *bb;
          }
        } else {
          if (!game.duplicator_wins(k - 1, f0, f1)) {
            go_between = false;  // recursing already wins
          } else if (auto bb = game.spoiler_between_move(k, {i0, i1}, side, to, *reply)) {
            go_between = true;
            b = *bb;
          }
        }
      }
      if (!go_between) {
        note("spoiler: continue");
        i0 = f0;
        i1 = f1;
        --k;
        continue;
      }
      note("spoiler: between w" + std::to_string(1 - side) + " -> " + std::to_string(b));
      std::optional<std::size_t> answer;
      if (human_spoiler) {
        answer = game.duplicator_between_reply(k, {i0, i1}, side, to, *reply, b);
        if (!answer)
          for (std::size_t a = il + 1; a < to && !answer; ++a) {
            std::size_t q0 = side == 0 ? a : b, q1 = side == 0 ? b : a;
            if (game.props_agree(q0, q1)) answer = a;
          }
        if (!answer) {
          note("duplicator: no legal between answer: Spoiler wins");
          winner = Player::Spoiler;
          break;
        }
      } else {
        for (;;) {
          auto a = ask_size("duplicator: between answer in w" + std::to_string(side) + ": ",
                            il + 1, to - 1, "must lie strictly between the old and new position");
          if (!a) return kExitUsage;
          std::size_t q0 = side == 0 ? *a : b, q1 = side == 0 ? b : *a;
          if (!game.props_agree(q0, q1)) {
            out << "illegal move: propositions disagree at that pair\n";
            if (!src.prompt) throw std::runtime_error("replay contains an illegal move");
            continue;
          }
          answer = *a;
          break;
        }
      }
      note("duplicator: between w" + std::to_string(side) + " -> " + std::to_string(*answer));
      i0 = side == 0 ? *answer : b;
      i1 = side == 0 ? b : *answer;
      --k;
    }
    note("winner: " + to_string(winner));
  } else {
    throw CLI::ValidationError("play currently drives the interval game; use --logic mtl");
  }

  if (!o.transcript_path.empty()) {
    std::ofstream f(o.transcript_path);
    for (const auto& l : transcript) f << l << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTL/TPTL evaluation and distinguishing games over data words"};
  app.require_subcommand(1);

  EvalOpts eval_opts;
  auto* c_eval = app.add_subcommand("eval", "evaluate a formula on a word");
  c_eval->add_option("--word", eval_opts.word_path, "word file (JSON)")->required();
  c_eval->add_option("--formula", eval_opts.formula, "formula text")->required();
  c_eval->add_option("--logic", eval_opts.logic, "mtl|tptl|auto")->default_str("auto");
  c_eval->add_option("--pos", eval_opts.pos, "evaluation position");
  c_eval->add_option("--horizon", eval_opts.horizon, "scan window for lasso words (0 = derive)");
  c_eval->add_flag("--witness", eval_opts.want_witness, "print a witness position trace");
  c_eval->add_flag("--json", eval_opts.as_json, "machine-readable report");

  GameOpts game_opts;
  auto* c_game = app.add_subcommand("game", "solve a distinguishing game");
  c_game->require_subcommand(1);
  auto add_game_common = [&](CLI::App* g) {
    g->add_option("--w0", game_opts.w0_path, "first word file")->required();
    g->add_option("--w1", game_opts.w1_path, "second word file")->required();
    g->add_option("--k", game_opts.k, "number of rounds")->required();
    g->add_option("--constants", game_opts.constants, "comma-separated constants, e.g. \"-1,0,1\"");
    g->add_option("--i0", game_opts.i0, "start position in w0");
    g->add_option("--i1", game_opts.i1, "start position in w1");
    g->add_option("--horizon", game_opts.horizon, "window for lasso words");
    g->add_flag("--extract", game_opts.extract, "derive a distinguishing formula on Spoiler wins");
    g->add_flag("--strategy", game_opts.strategy, "dump the solved strategy");
    g->add_flag("--json", game_opts.as_json, "machine-readable report");
  };
  auto* c_game_mtl = c_game->add_subcommand("mtl", "interval game");
  add_game_common(c_game_mtl);
  auto* c_game_tptl = c_game->add_subcommand("tptl", "register game");
  add_game_common(c_game_tptl);
  c_game_tptl->add_option("--n", game_opts.n, "number of registers");
  c_game_tptl->add_option("--fragment", game_opts.fragment, "eq|unary|eq+unary");

  EnumOpts enum_opts;
  auto* c_enum = app.add_subcommand("enum", "enumerate formulas up to a budget");
  c_enum->add_option("--logic", enum_opts.logic, "mtl|tptl")->default_str("mtl");
  c_enum->add_option("--k", enum_opts.k, "maximum until rank")->required();
  c_enum->add_option("--constants", enum_opts.constants, "allowed constants");
  c_enum->add_option("--props", enum_opts.props, "comma-separated propositions");
  c_enum->add_option("--max-size", enum_opts.max_size, "maximum node count");
  c_enum->add_option("--n", enum_opts.n, "registers (tptl)");
  c_enum->add_option("--probe", enum_opts.probe_paths, "probe word files for dedup");
  c_enum->add_option("--ceiling", enum_opts.ceiling, "candidate pool guard");
  c_enum->add_flag("--json", enum_opts.as_json, "machine-readable report");

  DistinguishOpts dist_opts;
  auto* c_dist = app.add_subcommand("distinguish", "search for a separating formula");
  c_dist->add_option("--w0", dist_opts.w0_path)->required();
  c_dist->add_option("--w1", dist_opts.w1_path)->required();
  c_dist->add_option("--i0", dist_opts.i0);
  c_dist->add_option("--i1", dist_opts.i1);
  c_dist->add_option("--k", dist_opts.k, "maximum until rank")->required();
  c_dist->add_option("--constants", dist_opts.constants);
  c_dist->add_option("--props", dist_opts.props);
  c_dist->add_option("--max-size", dist_opts.max_size);
  c_dist->add_option("--logic", dist_opts.logic, "mtl|tptl");
  c_dist->add_option("--n", dist_opts.n, "registers (tptl)");
  c_dist->add_option("--ceiling", dist_opts.ceiling);
  c_dist->add_flag("--json", dist_opts.as_json);

  CorpusOpts corpus_opts;
  auto* c_corpus = app.add_subcommand("corpus", "built-in word families");
  c_corpus->require_subcommand(1);
  auto* c_list = c_corpus->add_subcommand("list", "list families");
  c_list->add_flag("--json", corpus_opts.as_json);
  auto add_family_params = [&](CLI::App* g) {
    g->add_option("--family", corpus_opts.family, "family name")->required();
    g->add_option("--r", corpus_opts.r, "region-escape constant");
    g->add_option("--s", corpus_opts.s, "base value");
    g->add_option("--k", corpus_opts.k, "round/rank parameter");
    g->add_option("--n", corpus_opts.n, "singleton constant (hierarchy families)");
    g->add_option("--suffix", corpus_opts.suffix, "tail style: arith|flat|steep");
    g->add_option("--constants", corpus_opts.constants, "game constants override");
    g->add_option("--horizon", corpus_opts.horizon, "window override");
  };
  auto* c_gen = c_corpus->add_subcommand("gen", "write a family's words to files");
  add_family_params(c_gen);
  c_gen->add_option("--out", corpus_opts.out_dir, "output directory")->required();
  auto* c_check = c_corpus->add_subcommand("check", "run a family's claims");
  add_family_params(c_check);
  c_check->add_flag("--json", corpus_opts.as_json);

  PlayOpts play_opts;
  auto* c_play = app.add_subcommand("play", "interactive game against the solved engine");
  c_play->add_option("--logic", play_opts.logic, "mtl")->default_str("mtl");
  c_play->add_option("--w0", play_opts.w0_path)->required();
  c_play->add_option("--w1", play_opts.w1_path)->required();
  c_play->add_option("--k", play_opts.k)->required();
  c_play->add_option("--constants", play_opts.constants);
  c_play->add_option("--horizon", play_opts.horizon);
  c_play->add_option("--as", play_opts.role, "spoiler|duplicator")->required();
  c_play->add_option("--transcript", play_opts.transcript_path, "write the transcript here");
  c_play->add_option("--replay", play_opts.replay_path, "replay moves from a file");

  std::string only_list;
  std::uint64_t seed = Gen::seed_from_env();
  auto* c_self = app.add_subcommand("selfcheck", "run the full property suite");
  c_self->add_option("--only", only_list, "criteria subset, e.g. \"1,2,9\"");
  c_self->add_option("--seed", seed, "seed override (default: TEMPO_EF_SEED or built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*c_eval) return cmd_eval(eval_opts);
    if (*c_game_mtl) return cmd_game_mtl(game_opts);
    if (*c_game_tptl) return cmd_game_tptl(game_opts);
    if (*c_enum) return cmd_enum(enum_opts);
    if (*c_dist) return cmd_distinguish(dist_opts);
    if (*c_list) return cmd_corpus_list(corpus_opts.as_json);
    if (*c_gen) return cmd_corpus_gen(corpus_opts);
    if (*c_check) return cmd_corpus_check(corpus_opts);
    if (*c_play) return cmd_play(play_opts);
    if (*c_self) {
      std::set<int> only;
      for (const auto& t : split_names(only_list)) only.insert(std::stoi(t));
      auto results = run_acceptance(seed, only);
      bool ok = print_acceptance(results, std::cout);
      return ok ? kExitPass : kExitFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
