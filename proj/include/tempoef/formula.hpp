#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tempoef/interval.hpp"

namespace tempoef {

/// Records whether an until node was written as a derived unary operator.
/// F phi stands for (true U phi), X phi for (false U phi); the marker keeps
/// the surface form so printing round-trips and the unary fragment check can
/// stay syntactic: a hand-written `false U phi` is not an X.
enum class TemporalSugar { None, Finally, Next };

// ---------------------------------------------------------------- MTL ----

struct MtlFormula;
using MtlPtr = std::shared_ptr<const MtlFormula>;

struct MtlFormula {
  enum class Kind { True, False, Prop, Not, And, Or, Until };
  Kind kind;
  std::string prop;                      // Kind::Prop
  Interval interval = Interval::all();   // Kind::Until
  TemporalSugar sugar = TemporalSugar::None;
  MtlPtr lhs, rhs;                       // Not uses lhs only
};

namespace mtl {
MtlPtr tt();
MtlPtr ff();
MtlPtr prop(std::string name);
MtlPtr negate(MtlPtr f);
MtlPtr conj(MtlPtr a, MtlPtr b);
MtlPtr disj(MtlPtr a, MtlPtr b);
MtlPtr until(MtlPtr a, Interval i, MtlPtr b);
MtlPtr eventually(Interval i, MtlPtr f);  // F_I f  ==  true U_I f
MtlPtr next(Interval i, MtlPtr f);        // X_I f  ==  false U_I f

// Folding constructors used by extraction: drop duplicates and units.
MtlPtr conj_all(std::vector<MtlPtr> fs);
MtlPtr disj_all(std::vector<MtlPtr> fs);
}  // namespace mtl

bool equal(const MtlPtr& a, const MtlPtr& b);
std::string to_string(const MtlPtr& f);
int until_rank(const MtlPtr& f);
ConstantSet constants_of(const MtlPtr& f);
std::size_t node_count(const MtlPtr& f);

// --------------------------------------------------------------- TPTL ----

struct TptlFormula;
using TptlPtr = std::shared_ptr<const TptlFormula>;

struct TptlFormula {
  enum class Kind { True, False, Prop, Constraint, Not, And, Or, Until, Freeze };
  Kind kind;
  std::string name;                      // Prop: proposition; Constraint/Freeze: register
  Interval interval = Interval::all();   // Kind::Constraint
  TemporalSugar sugar = TemporalSugar::None;
  TptlPtr lhs, rhs;                      // Not/Freeze use lhs only
};

namespace tptl {
TptlPtr tt();
TptlPtr ff();
TptlPtr prop(std::string name);
TptlPtr constraint(std::string reg, Interval i);  // reg in I
TptlPtr negate(TptlPtr f);
TptlPtr conj(TptlPtr a, TptlPtr b);
TptlPtr disj(TptlPtr a, TptlPtr b);
TptlPtr until(TptlPtr a, TptlPtr b);
TptlPtr eventually(TptlPtr f);
TptlPtr next(TptlPtr f);
TptlPtr freeze(std::string reg, TptlPtr body);    // reg.body

TptlPtr conj_all(std::vector<TptlPtr> fs);
TptlPtr disj_all(std::vector<TptlPtr> fs);
}  // namespace tptl

bool equal(const TptlPtr& a, const TptlPtr& b);
std::string to_string(const TptlPtr& f);
int until_rank(const TptlPtr& f);
ConstantSet constants_of(const TptlPtr& f);
std::size_t node_count(const TptlPtr& f);

/// All register names occurring in the formula (bound or free).
std::set<std::string> registers_of(const TptlPtr& f);

/// Registers read by a constraint not below a rebinding freeze.
std::set<std::string> free_registers_of(const TptlPtr& f);

// ---------------------------------------------------------- fragments ----

/// A syntactic TPTL fragment: a register budget, the unary restriction
/// (temporal operators limited to F and X), and the equality restriction
/// (constraints limited to reg in [0,0]).
struct FragmentSpec {
  std::optional<int> max_registers;  // nullopt = unbounded
  bool unary_only = false;
  bool equality_only = false;

  static FragmentSpec parse(const std::string& text);  // "eq", "unary", "eq+unary", ""
  std::string to_string() const;
};

bool fragment_check(const TptlPtr& f, const FragmentSpec& spec);

// -------------------------------------------------------- translation ----

/// Structural translation into the one-register fragment: atoms map to
/// themselves, boolean connectives are homomorphic, and
/// a U_I b  ->  x1.( T(a) U (x1 in I & T(b)) ).
/// A vacuous interval (all of Z) drops the constraint. Until rank and
/// constants are preserved; the output uses at most the register x1.
TptlPtr mtl_to_tptl1(const MtlPtr& f);

}  // namespace tempoef
