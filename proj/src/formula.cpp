#include "tempoef/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempoef {

// ---------------------------------------------------------------- MTL ----

namespace mtl {

static MtlPtr node(MtlFormula f) { return std::make_shared<const MtlFormula>(std::move(f)); }

MtlPtr tt() {
  static const MtlPtr t = node({MtlFormula::Kind::True});
  return t;
}
MtlPtr ff() {
  static const MtlPtr f = node({MtlFormula::Kind::False});
  return f;
}
MtlPtr prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("formula: empty proposition name");
  MtlFormula f{MtlFormula::Kind::Prop};
  f.prop = std::move(name);
  return node(std::move(f));
}
MtlPtr negate(MtlPtr f) {
  MtlFormula n{MtlFormula::Kind::Not};
  n.lhs = std::move(f);
  return node(std::move(n));
}
MtlPtr conj(MtlPtr a, MtlPtr b) {
  MtlFormula n{MtlFormula::Kind::And};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return node(std::move(n));
}
MtlPtr disj(MtlPtr a, MtlPtr b) {
  MtlFormula n{MtlFormula::Kind::Or};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return node(std::move(n));
}
MtlPtr until(MtlPtr a, Interval i, MtlPtr b) {
  MtlFormula n{MtlFormula::Kind::Until};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  n.interval = i;
  return node(std::move(n));
}
MtlPtr eventually(Interval i, MtlPtr f) {
  MtlFormula n{MtlFormula::Kind::Until};
  n.lhs = tt();
  n.rhs = std::move(f);
  n.interval = i;
  n.sugar = TemporalSugar::Finally;
  return node(std::move(n));
}
MtlPtr next(Interval i, MtlPtr f) {
  MtlFormula n{MtlFormula::Kind::Until};
  n.lhs = ff();
  n.rhs = std::move(f);
  n.interval = i;
  n.sugar = TemporalSugar::Next;
  return node(std::move(n));
}

MtlPtr conj_all(std::vector<MtlPtr> fs) {
  std::vector<MtlPtr> kept;
  std::vector<std::string> seen;
  for (auto& f : fs) {
    if (f->kind == MtlFormula::Kind::True) continue;
    if (f->kind == MtlFormula::Kind::False) return ff();
    std::string key = to_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return tt();
  MtlPtr out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) out = conj(kept[i], out);
  return out;
}

MtlPtr disj_all(std::vector<MtlPtr> fs) {
  std::vector<MtlPtr> kept;
  std::vector<std::string> seen;
  for (auto& f : fs) {
    if (f->kind == MtlFormula::Kind::False) continue;
    if (f->kind == MtlFormula::Kind::True) return tt();
    std::string key = to_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return ff();
  MtlPtr out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) out = disj(kept[i], out);
  return out;
}

}  // namespace mtl

bool equal(const MtlPtr& a, const MtlPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->prop != b->prop || a->sugar != b->sugar) return false;
  if (a->kind == MtlFormula::Kind::Until && !(a->interval == b->interval)) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

// Precedence levels for printing: atoms 0, unary 1, & 2, | 3, U 4.
static int prec(const MtlFormula& f) {
  switch (f.kind) {
    case MtlFormula::Kind::Not: return 1;
    case MtlFormula::Kind::And: return 2;
    case MtlFormula::Kind::Or: return 3;
    case MtlFormula::Kind::Until: return f.sugar == TemporalSugar::None ? 4 : 1;
    default: return 0;
  }
}

static void print(const MtlPtr& f, int max_prec, std::string& out) {
  int p = prec(*f);
  if (p > max_prec) out += '(';
  switch (f->kind) {
    case MtlFormula::Kind::True: out += "true"; break;
    case MtlFormula::Kind::False: out += "false"; break;
    case MtlFormula::Kind::Prop: out += f->prop; break;
    case MtlFormula::Kind::Not:
      out += '!';
      print(f->lhs, 1, out);
      break;
    case MtlFormula::Kind::And:
      print(f->lhs, 2, out);
      out += " & ";
      print(f->rhs, 1, out);
      break;
    case MtlFormula::Kind::Or:
      print(f->lhs, 3, out);
      out += " | ";
      print(f->rhs, 2, out);
      break;
    case MtlFormula::Kind::Until:
      if (f->sugar == TemporalSugar::None) {
        print(f->lhs, 3, out);
        out += " U";
        out += f->interval.to_string();
        out += ' ';
        print(f->rhs, 4, out);
      } else {
        out += f->sugar == TemporalSugar::Finally ? 'F' : 'X';
        out += f->interval.to_string();
        out += ' ';
        print(f->rhs, 1, out);
      }
      break;
  }
  if (p > max_prec) out += ')';
}

std::string to_string(const MtlPtr& f) {
  std::string out;
  print(f, 4, out);
  return out;
}

int until_rank(const MtlPtr& f) {
  if (!f) return 0;
  int sub = std::max(until_rank(f->lhs), until_rank(f->rhs));
  return f->kind == MtlFormula::Kind::Until ? sub + 1 : sub;
}

static void collect_constants(const MtlPtr& f, ConstantSet& out) {
  if (!f) return;
  if (f->kind == MtlFormula::Kind::Until) {
    if (f->interval.lower()) out.insert(*f->interval.lower());
    if (f->interval.upper()) out.insert(*f->interval.upper());
  }
  collect_constants(f->lhs, out);
  collect_constants(f->rhs, out);
}

ConstantSet constants_of(const MtlPtr& f) {
  ConstantSet out;
  collect_constants(f, out);
  return out;
}

std::size_t node_count(const MtlPtr& f) {
  if (!f) return 0;
  return 1 + node_count(f->lhs) + node_count(f->rhs);
}

// --------------------------------------------------------------- TPTL ----

namespace tptl {

static TptlPtr node(TptlFormula f) { return std::make_shared<const TptlFormula>(std::move(f)); }

TptlPtr tt() {
  static const TptlPtr t = node({TptlFormula::Kind::True});
  return t;
}
TptlPtr ff() {
  static const TptlPtr f = node({TptlFormula::Kind::False});
  return f;
}
TptlPtr prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("formula: empty proposition name");
  TptlFormula f{TptlFormula::Kind::Prop};
  f.name = std::move(name);
  return node(std::move(f));
}
TptlPtr constraint(std::string reg, Interval i) {
  TptlFormula f{TptlFormula::Kind::Constraint};
  f.name = std::move(reg);
  f.interval = i;
  return node(std::move(f));
}
TptlPtr negate(TptlPtr f) {
  TptlFormula n{TptlFormula::Kind::Not};
  n.lhs = std::move(f);
  return node(std::move(n));
}
TptlPtr conj(TptlPtr a, TptlPtr b) {
  TptlFormula n{TptlFormula::Kind::And};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return node(std::move(n));
}
TptlPtr disj(TptlPtr a, TptlPtr b) {
  TptlFormula n{TptlFormula::Kind::Or};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return node(std::move(n));
}
TptlPtr until(TptlPtr a, TptlPtr b) {
  TptlFormula n{TptlFormula::Kind::Until};
  n.lhs = std::move(a);
  n.rhs = std::move(b);
  return node(std::move(n));
}
TptlPtr eventually(TptlPtr f) {
  TptlFormula n{TptlFormula::Kind::Until};
  n.lhs = tt();
  n.rhs = std::move(f);
  n.sugar = TemporalSugar::Finally;
  return node(std::move(n));
}
TptlPtr next(TptlPtr f) {
  TptlFormula n{TptlFormula::Kind::Until};
  n.lhs = ff();
  n.rhs = std::move(f);
  n.sugar = TemporalSugar::Next;
  return node(std::move(n));
}
TptlPtr freeze(std::string reg, TptlPtr body) {
  TptlFormula n{TptlFormula::Kind::Freeze};
  n.name = std::move(reg);
  n.lhs = std::move(body);
  return node(std::move(n));
}

TptlPtr conj_all(std::vector<TptlPtr> fs) {
  std::vector<TptlPtr> kept;
  std::vector<std::string> seen;
  for (auto& f : fs) {
    if (f->kind == TptlFormula::Kind::True) continue;
    if (f->kind == TptlFormula::Kind::False) return ff();
    std::string key = to_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return tt();
  TptlPtr out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) out = conj(kept[i], out);
  return out;
}

TptlPtr disj_all(std::vector<TptlPtr> fs) {
  std::vector<TptlPtr> kept;
  std::vector<std::string> seen;
  for (auto& f : fs) {
    if (f->kind == TptlFormula::Kind::False) continue;
    if (f->kind == TptlFormula::Kind::True) return tt();
    std::string key = to_string(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    kept.push_back(std::move(f));
  }
  if (kept.empty()) return ff();
  TptlPtr out = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) out = disj(kept[i], out);
  return out;
}

}  // namespace tptl

bool equal(const TptlPtr& a, const TptlPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->sugar != b->sugar) return false;
  if (a->kind == TptlFormula::Kind::Constraint && !(a->interval == b->interval)) return false;
  return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

static int prec(const TptlFormula& f) {
  switch (f.kind) {
    case TptlFormula::Kind::Not:
    case TptlFormula::Kind::Freeze: return 1;
    case TptlFormula::Kind::And: return 2;
    case TptlFormula::Kind::Or: return 3;
    case TptlFormula::Kind::Until: return f.sugar == TemporalSugar::None ? 4 : 1;
    default: return 0;
  }
}

static std::string constraint_text(const std::string& reg, const Interval& i) {
  std::string sugar = i.to_string();
  if (!sugar.empty() && sugar[0] != '[' && sugar[0] != '(') return reg + sugar;
  std::string lo = i.lower() ? std::to_string(*i.lower()) : "-inf";
  std::string hi = i.upper() ? std::to_string(*i.upper()) : "+inf";
  return reg + " in " + (i.lower_closed() ? '[' : '(') + lo + "," + hi +
         (i.upper_closed() ? ']' : ')');
}

static void print(const TptlPtr& f, int max_prec, std::string& out) {
  int p = prec(*f);
  if (p > max_prec) out += '(';
  switch (f->kind) {
    case TptlFormula::Kind::True: out += "true"; break;
    case TptlFormula::Kind::False: out += "false"; break;
    case TptlFormula::Kind::Prop: out += f->name; break;
    case TptlFormula::Kind::Constraint: out += constraint_text(f->name, f->interval); break;
    case TptlFormula::Kind::Not:
      out += '!';
      print(f->lhs, 1, out);
      break;
    case TptlFormula::Kind::Freeze:
      out += f->name;
      out += '.';
      print(f->lhs, 1, out);
      break;
    case TptlFormula::Kind::And:
      print(f->lhs, 2, out);
      out += " & ";
      print(f->rhs, 1, out);
      break;
    case TptlFormula::Kind::Or:
      print(f->lhs, 3, out);
      out += " | ";
      print(f->rhs, 2, out);
      break;
    case TptlFormula::Kind::Until:
      if (f->sugar == TemporalSugar::None) {
        print(f->lhs, 3, out);
        out += " U ";
        print(f->rhs, 4, out);
      } else {
        out += f->sugar == TemporalSugar::Finally ? 'F' : 'X';
        out += ' ';
        print(f->rhs, 1, out);
      }
      break;
  }
  if (p > max_prec) out += ')';
}

std::string to_string(const TptlPtr& f) {
  std::string out;
  print(f, 4, out);
  return out;
}

int until_rank(const TptlPtr& f) {
  if (!f) return 0;
  int sub = std::max(until_rank(f->lhs), until_rank(f->rhs));
  return f->kind == TptlFormula::Kind::Until ? sub + 1 : sub;
}

static void collect_constants(const TptlPtr& f, ConstantSet& out) {
  if (!f) return;
  if (f->kind == TptlFormula::Kind::Constraint) {
    if (f->interval.lower()) out.insert(*f->interval.lower());
    if (f->interval.upper()) out.insert(*f->interval.upper());
  }
  collect_constants(f->lhs, out);
  collect_constants(f->rhs, out);
}

ConstantSet constants_of(const TptlPtr& f) {
  ConstantSet out;
  collect_constants(f, out);
  return out;
}

std::size_t node_count(const TptlPtr& f) {
  if (!f) return 0;
  return 1 + node_count(f->lhs) + node_count(f->rhs);
}

static void collect_registers(const TptlPtr& f, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == TptlFormula::Kind::Constraint || f->kind == TptlFormula::Kind::Freeze)
    out.insert(f->name);
  collect_registers(f->lhs, out);
  collect_registers(f->rhs, out);
}

std::set<std::string> registers_of(const TptlPtr& f) {
  std::set<std::string> out;
  collect_registers(f, out);
  return out;
}

static void collect_free(const TptlPtr& f, std::set<std::string> bound, std::set<std::string>& out) {
  if (!f) return;
  if (f->kind == TptlFormula::Kind::Constraint) {
    if (!bound.count(f->name)) out.insert(f->name);
    return;
  }
  if (f->kind == TptlFormula::Kind::Freeze) {
    bound.insert(f->name);
    collect_free(f->lhs, std::move(bound), out);
    return;
  }
  collect_free(f->lhs, bound, out);
  collect_free(f->rhs, bound, out);
}

std::set<std::string> free_registers_of(const TptlPtr& f) {
  std::set<std::string> out;
  collect_free(f, {}, out);
  return out;
}

// ---------------------------------------------------------- fragments ----

FragmentSpec FragmentSpec::parse(const std::string& text) {
  FragmentSpec s;
  std::string tok;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      if (tok == "eq") s.equality_only = true;
      else if (tok == "unary") s.unary_only = true;
      else if (!tok.empty()) throw std::invalid_argument("fragment: unknown part '" + tok + "'");
      tok.clear();
    } else if (!std::isspace(static_cast<unsigned char>(text[i]))) {
      tok += text[i];
    }
  }
  return s;
}

std::string FragmentSpec::to_string() const {
  std::string out;
  if (equality_only) out = "eq";
  if (unary_only) out += out.empty() ? "unary" : "+unary";
  if (max_registers) out += (out.empty() ? "" : ",") + std::string("n<=") + std::to_string(*max_registers);
  return out.empty() ? "full" : out;
}

bool fragment_check(const TptlPtr& f, const FragmentSpec& spec) {
  if (spec.max_registers && static_cast<int>(registers_of(f).size()) > *spec.max_registers)
    return false;
  // Walk once for the structural restrictions.
  struct Walk {
    const FragmentSpec& spec;
    bool ok = true;
    void go(const TptlPtr& g) {
      if (!g || !ok) return;
      if (g->kind == TptlFormula::Kind::Until && spec.unary_only &&
          g->sugar == TemporalSugar::None) {
        ok = false;
        return;
      }
      if (g->kind == TptlFormula::Kind::Constraint && spec.equality_only &&
          !(g->interval == Interval::singleton(0))) {
        ok = false;
        return;
      }
      go(g->lhs);
      go(g->rhs);
    }
  } walk{spec};
  walk.go(f);
  return walk.ok;
}

// -------------------------------------------------------- translation ----

TptlPtr mtl_to_tptl1(const MtlPtr& f) {
  switch (f->kind) {
    case MtlFormula::Kind::True: return tptl::tt();
    case MtlFormula::Kind::False: return tptl::ff();
    case MtlFormula::Kind::Prop: return tptl::prop(f->prop);
    case MtlFormula::Kind::Not: return tptl::negate(mtl_to_tptl1(f->lhs));
    case MtlFormula::Kind::And: return tptl::conj(mtl_to_tptl1(f->lhs), mtl_to_tptl1(f->rhs));
    case MtlFormula::Kind::Or: return tptl::disj(mtl_to_tptl1(f->lhs), mtl_to_tptl1(f->rhs));
    case MtlFormula::Kind::Until: break;
  }
  TptlPtr body = mtl_to_tptl1(f->rhs);
  if (!f->interval.is_all()) body = tptl::conj(tptl::constraint("x1", f->interval), body);
  TptlPtr u;
  switch (f->sugar) {
    case TemporalSugar::Finally: u = tptl::eventually(std::move(body)); break;
    case TemporalSugar::Next: u = tptl::next(std::move(body)); break;
    case TemporalSugar::None: u = tptl::until(mtl_to_tptl1(f->lhs), std::move(body)); break;
  }
  return tptl::freeze("x1", std::move(u));
}

}  // namespace tempoef
