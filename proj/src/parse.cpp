#include "tempoef/parse.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace tempoef {

namespace {

enum class Tok { Ident, Int, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { next(); }

  const Token& peek(int ahead = 0) {
    while (static_cast<int>(buf_.size()) <= ahead) buf_.push_back(lex());
    return buf_[static_cast<std::size_t>(ahead)];
  }
  Token take() {
    Token t = peek();
    buf_.erase(buf_.begin());
    return t;
  }

private:
  void next() {}

  Token lex() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        t.text += text_[pos_];
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      std::string num;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_];
        advance();
      }
      t.value = std::stoll(num);
      t.text = num;
      return t;
    }
    t.kind = Tok::Sym;
    t.text = c;
    advance();
    if ((c == '<' || c == '>') && pos_ < text_.size() && text_[pos_] == '=') {
      t.text += '=';
      advance();
    }
    return t;
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  std::vector<Token> buf_;
};

bool is_register_name(const std::string& s) {
  if (s.size() < 2 || s[0] != 'x') return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

bool is_keyword(const std::string& s) {
  return s == "true" || s == "false" || s == "in" || s == "inf" || s == "U" || s == "F" ||
         s == "X" || s == "G";
}

// One parser drives both logics; `tptl_mode` toggles which constructs are
// admitted, so the two entry points stay in sync on the shared grammar.
class Parser {
public:
  Parser(const std::string& text, bool tptl_mode) : lx_(text), tptl_(tptl_mode) {}

  MtlPtr run_mtl() {
    MtlPtr f = mtl_formula();
    expect_end();
    return f;
  }
  TptlPtr run_tptl() {
    TptlPtr f = tptl_formula();
    expect_end();
    return f;
  }

private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(t.line, t.col, msg);
  }
  void expect_end() {
    const Token& t = lx_.peek();
    if (t.kind != Tok::End) fail(t, "unexpected '" + t.text + "'");
  }
  bool at_sym(const std::string& s, int ahead = 0) {
    const Token& t = lx_.peek(ahead);
    return t.kind == Tok::Sym && t.text == s;
  }
  bool at_ident(const std::string& s, int ahead = 0) {
    const Token& t = lx_.peek(ahead);
    return t.kind == Tok::Ident && t.text == s;
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) fail(lx_.peek(), "expected '" + s + "'");
    lx_.take();
  }

  // --- intervals ---

  std::int64_t endpoint_number() {
    bool neg = false;
    if (at_sym("-")) {
      lx_.take();
      neg = true;
    }
    const Token t = lx_.take();
    if (t.kind != Tok::Int) fail(t, "expected a number");
    return neg ? -t.value : t.value;
  }

  // Does an interval start here? Used after U/F/X/G where '(' could also
  // open a subformula; a '(' opens an interval only if a number follows.
  bool interval_follows() {
    if (at_sym("<") || at_sym("<=") || at_sym(">") || at_sym(">=") || at_sym("=") || at_sym("["))
      return true;
    if (!at_sym("(")) return false;
    const Token& t = lx_.peek(1);
    return t.kind == Tok::Int || (t.kind == Tok::Sym && (t.text == "-" || t.text == "+")) ||
           (t.kind == Tok::Ident && t.text == "inf");
  }

  std::optional<std::int64_t> bracket_endpoint() {
    if (at_sym("-") && at_ident("inf", 1)) {
      lx_.take();
      lx_.take();
      return std::nullopt;
    }
    if (at_sym("+") && at_ident("inf", 1)) {
      lx_.take();
      lx_.take();
      return std::nullopt;
    }
    if (at_ident("inf")) {
      lx_.take();
      return std::nullopt;
    }
    return endpoint_number();
  }

  Interval interval() {
    const Token& t = lx_.peek();
    try {
      if (at_sym("=")) {
        lx_.take();
        return Interval::singleton(endpoint_number());
      }
      if (at_sym("<=")) {
        lx_.take();
        return Interval::at_most(endpoint_number());
      }
      if (at_sym("<")) {
        lx_.take();
        return Interval::less(endpoint_number());
      }
      if (at_sym(">=")) {
        lx_.take();
        return Interval::at_least(endpoint_number());
      }
      if (at_sym(">")) {
        lx_.take();
        return Interval::greater(endpoint_number());
      }
      bool lo_closed = at_sym("[");
      if (!lo_closed && !at_sym("(")) fail(t, "expected an interval");
      lx_.take();
      auto lo = bracket_endpoint();
      expect_sym(",");
      auto hi = bracket_endpoint();
      bool hi_closed = at_sym("]");
      if (!hi_closed && !at_sym(")")) fail(lx_.peek(), "expected ']' or ')'");
      lx_.take();
      return Interval::make(lo, lo_closed && lo.has_value(), hi, hi_closed && hi.has_value());
    } catch (const std::invalid_argument& e) {
      fail(t, e.what());
    }
  }

  Interval optional_interval() { return interval_follows() ? interval() : Interval::all(); }

  // --- MTL ---

  MtlPtr mtl_formula() {
    MtlPtr lhs = mtl_or();
    if (at_ident("U")) {
      lx_.take();
      Interval i = optional_interval();
      return mtl::until(std::move(lhs), i, mtl_formula());
    }
    return lhs;
  }
  MtlPtr mtl_or() {
    MtlPtr f = mtl_and();
    while (at_sym("|")) {
      lx_.take();
      f = mtl::disj(std::move(f), mtl_and());
    }
    return f;
  }
  MtlPtr mtl_and() {
    MtlPtr f = mtl_unary();
    while (at_sym("&")) {
      lx_.take();
      f = mtl::conj(std::move(f), mtl_unary());
    }
    return f;
  }
  MtlPtr mtl_unary() {
    const Token& t = lx_.peek();
    if (at_sym("!")) {
      lx_.take();
      return mtl::negate(mtl_unary());
    }
    if (at_ident("F") || at_ident("X") || at_ident("G")) {
      std::string op = lx_.take().text;
      Interval i = optional_interval();
      MtlPtr body = mtl_unary();
      if (op == "F") return mtl::eventually(i, std::move(body));
      if (op == "X") return mtl::next(i, std::move(body));
      return mtl::negate(mtl::eventually(i, mtl::negate(std::move(body))));
    }
    if (t.kind == Tok::Ident && is_register_name(t.text))
      fail(t, "register syntax is not allowed in MTL formulas");
    return mtl_atom();
  }
  MtlPtr mtl_atom() {
    const Token& t = lx_.peek();
    if (at_sym("(")) {
      lx_.take();
      MtlPtr f = mtl_formula();
      expect_sym(")");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        lx_.take();
        return mtl::tt();
      }
      if (t.text == "false") {
        lx_.take();
        return mtl::ff();
      }
      if (is_keyword(t.text)) fail(t, "'" + t.text + "' cannot be used as a proposition");
      return mtl::prop(lx_.take().text);
    }
    fail(t, "expected a formula");
  }

  // --- TPTL ---

  TptlPtr tptl_formula() {
    TptlPtr lhs = tptl_or();
    if (at_ident("U")) {
      Token u = lx_.take();
      if (interval_follows())
        fail(lx_.peek(), "TPTL temporal operators take no interval annotation");
      (void)u;
      return tptl::until(std::move(lhs), tptl_formula());
    }
    return lhs;
  }
  TptlPtr tptl_or() {
    TptlPtr f = tptl_and();
    while (at_sym("|")) {
      lx_.take();
      f = tptl::disj(std::move(f), tptl_and());
    }
    return f;
  }
  TptlPtr tptl_and() {
    TptlPtr f = tptl_unary();
    while (at_sym("&")) {
      lx_.take();
      f = tptl::conj(std::move(f), tptl_unary());
    }
    return f;
  }
  TptlPtr tptl_unary() {
    const Token& t = lx_.peek();
    if (at_sym("!")) {
      lx_.take();
      return tptl::negate(tptl_unary());
    }
    if (at_ident("F") || at_ident("X") || at_ident("G")) {
      std::string op = lx_.take().text;
      if (interval_follows())
        fail(lx_.peek(), "TPTL temporal operators take no interval annotation");
      TptlPtr body = tptl_unary();
      if (op == "F") return tptl::eventually(std::move(body));
      if (op == "X") return tptl::next(std::move(body));
      return tptl::negate(tptl::eventually(tptl::negate(std::move(body))));
    }
    if (t.kind == Tok::Ident && is_register_name(t.text) && at_sym(".", 1)) {
      std::string reg = lx_.take().text;
      lx_.take();  // '.'
      return tptl::freeze(std::move(reg), tptl_unary());
    }
    return tptl_atom();
  }
  TptlPtr tptl_atom() {
    const Token& t = lx_.peek();
    if (at_sym("(")) {
      lx_.take();
      TptlPtr f = tptl_formula();
      expect_sym(")");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") {
        lx_.take();
        return tptl::tt();
      }
      if (t.text == "false") {
        lx_.take();
        return tptl::ff();
      }
      if (is_register_name(t.text)) {
        std::string reg = lx_.take().text;
        if (at_ident("in")) {
          lx_.take();
          return tptl::constraint(std::move(reg), interval());
        }
        if (at_sym("=") || at_sym("<") || at_sym("<=") || at_sym(">") || at_sym(">="))
          return tptl::constraint(std::move(reg), interval());
        fail(lx_.peek(), "register '" + reg + "' needs a comparison, 'in', or '.'");
      }
      if (is_keyword(t.text)) fail(t, "'" + t.text + "' cannot be used as a proposition");
      return tptl::prop(lx_.take().text);
    }
    fail(t, "expected a formula");
  }

  Lexer lx_;
  bool tptl_ = false;
};

}  // namespace

MtlPtr parse_mtl(const std::string& text) { return Parser(text, false).run_mtl(); }
TptlPtr parse_tptl(const std::string& text) { return Parser(text, true).run_tptl(); }

bool looks_like_tptl(const std::string& text) {
  Lexer lx(text);
  for (;;) {
    const Token& t = lx.peek();
    if (t.kind == Tok::End) return false;
    if (t.kind == Tok::Ident && is_register_name(t.text)) return true;
    lx.take();
  }
}

}  // namespace tempoef
