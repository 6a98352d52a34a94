#include "kg2/formula.hpp"
#include "kg2/errors.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

namespace kg2 {

bool is_unary(Op op) {
  return op == Op::Neg || op == Op::GNeg || op == Op::Delta || op == Op::Box || op == Op::Dia;
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Impl || op == Op::Coimpl;
}

bool is_modal(Op op) { return op == Op::Box || op == Op::Dia; }

bool is_core(Op op) {
  return op != Op::Or && op != Op::Coimpl && op != Op::GNeg && op != Op::Delta;
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->kids = std::move(kids);
  n->hash = mix(static_cast<std::size_t>(op) + 1, std::hash<std::string>{}(n->name));
  for (const auto& k : n->kids) {
    n->size += k.size();
    n->hash = mix(n->hash, k.hash());
  }
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), {}); }
Formula Formula::top() { return make(Op::Top, "", {}); }
Formula Formula::bot() { return make(Op::Bot, "", {}); }

Formula Formula::unary(Op op, Formula arg) {
  if (!is_unary(op)) throw std::invalid_argument("not a unary connective");
  return make(op, "", {std::move(arg)});
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary connective");
  return make(op, "", {std::move(lhs), std::move(rhs)});
}

const Formula& Formula::arg() const {
  if (node_->kids.empty()) throw std::logic_error("formula has no arguments");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2) throw std::logic_error("formula is not binary");
  return node_->kids[1];
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->size != b.node_->size) return false;
  return a.node_->op == b.node_->op && a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->op <=> b.node_->op; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  return std::lexicographical_compare_three_way(a.node_->kids.begin(), a.node_->kids.end(),
                                                b.node_->kids.begin(), b.node_->kids.end());
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Atom, Zero, One, Neg, GNeg, Delta, Box, Dia, And, Or, Impl, Coimpl, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

const std::vector<std::string> kOperandStart = {"atom", "'0'", "'1'", "'('", "'!'", "'~'", "'^'", "'[]'", "'<>'"};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { lex(); }

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End || bad_char_) fail({"'&'", "'|'", "'-<'", "'->'", "end of input"});
    return f;
  }

 private:
  void lex() {
    std::size_t i = 0;
    while (i < src_.size()) {
      unsigned char c = static_cast<unsigned char>(src_[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      auto two = src_.substr(i, 2);
      auto push = [&](Tok k, std::size_t len) {
        toks_.push_back({k, i, std::string(src_.substr(i, len))});
        i += len;
      };
      if (c >= 'a' && c <= 'z') {
        std::size_t j = i + 1;
        while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
        push(Tok::Atom, j - i);
      } else if (two == "[]") {
        push(Tok::Box, 2);
      } else if (two == "<>") {
        push(Tok::Dia, 2);
      } else if (two == "->") {
        push(Tok::Impl, 2);
      } else if (two == "-<") {
        push(Tok::Coimpl, 2);
      } else if (c == '0') {
        push(Tok::Zero, 1);
      } else if (c == '1') {
        push(Tok::One, 1);
      } else if (c == '!') {
        push(Tok::Neg, 1);
      } else if (c == '~') {
        push(Tok::GNeg, 1);
      } else if (c == '^') {
        push(Tok::Delta, 1);
      } else if (c == '&') {
        push(Tok::And, 1);
      } else if (c == '|') {
        push(Tok::Or, 1);
      } else if (c == '(') {
        push(Tok::LParen, 1);
      } else if (c == ')') {
        push(Tok::RParen, 1);
      } else {
        // Unknown character: stop lexing here so the parser reports it in context.
        toks_.push_back({Tok::End, i, std::string(1, src_[i])});
        bad_char_ = true;
        return;
      }
    }
    toks_.push_back({Tok::End, src_.size(), ""});
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found;
    if (t.kind == Tok::End)
      found = bad_char_ && t.offset < src_.size() ? "'" + t.text + "'" : "end of input";
    else
      found = "'" + t.text + "'";
    throw ParseError(t.offset, std::move(expected), found);
  }

  Formula formula() {
    Formula lhs = coimpl();
    if (peek().kind == Tok::Impl) {
      next();
      return Formula::impl(std::move(lhs), formula());
    }
    return lhs;
  }

  Formula coimpl() {
    Formula f = disj();
    while (peek().kind == Tok::Coimpl) {
      next();
      f = Formula::coimpl(std::move(f), disj());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(std::move(f), conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Neg: next(); return Formula::neg(unary());
      case Tok::GNeg: next(); return Formula::gneg(unary());
      case Tok::Delta: next(); return Formula::delta(unary());
      case Tok::Box: next(); return Formula::box(unary());
      case Tok::Dia: next(); return Formula::dia(unary());
      case Tok::Atom: return Formula::atom(next().text);
      case Tok::Zero: next(); return Formula::bot();
      case Tok::One: next(); return Formula::top();
      case Tok::LParen: {
        next();
        Formula f = formula();
        if (peek().kind != Tok::RParen) fail({"'&'", "'|'", "'-<'", "'->'", "')'"});
        next();
        return f;
      }
      default: fail(kOperandStart);
    }
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool bad_char_ = false;
};

// Binding strength; higher binds tighter.
int precedence(Op op) {
  switch (op) {
    case Op::Impl: return 1;
    case Op::Coimpl: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Neg: case Op::GNeg: case Op::Delta: case Op::Box: case Op::Dia: return 5;
    default: return 6;
  }
}

const char* symbol(Op op) {
  switch (op) {
    case Op::Neg: return "!";
    case Op::GNeg: return "~";
    case Op::Delta: return "^";
    case Op::Box: return "[]";
    case Op::Dia: return "<>";
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Impl: return " -> ";
    case Op::Coimpl: return " -< ";
    case Op::Top: return "1";
    case Op::Bot: return "0";
    case Op::Atom: break;
  }
  return "";
}

void print_into(const Formula& f, std::string& out) {
  Op op = f.op();
  if (op == Op::Atom) {
    out += f.name();
    return;
  }
  if (op == Op::Top || op == Op::Bot) {
    out += symbol(op);
    return;
  }
  auto sub = [&](const Formula& g, bool parens) {
    if (parens) out += '(';
    print_into(g, out);
    if (parens) out += ')';
  };
  int p = precedence(op);
  if (is_unary(op)) {
    out += symbol(op);
    sub(f.arg(), precedence(f.arg().op()) < p);
    return;
  }
  int pl = precedence(f.lhs().op()), pr = precedence(f.rhs().op());
  bool right_assoc = op == Op::Impl;
  sub(f.lhs(), right_assoc ? pl <= p : pl < p);
  out += symbol(op);
  sub(f.rhs(), right_assoc ? pr < p : pr <= p);
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out);
  return out;
}

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      return f;
    case Op::Neg:
    case Op::Box:
    case Op::Dia:
      return Formula::unary(f.op(), desugar(f.arg()));
    case Op::And:
    case Op::Impl:
      return Formula::binary(f.op(), desugar(f.lhs()), desugar(f.rhs()));
    case Op::Or:
      return Formula::neg(Formula::conj(Formula::neg(desugar(f.lhs())), Formula::neg(desugar(f.rhs()))));
    case Op::Coimpl:
      return Formula::neg(Formula::impl(Formula::neg(desugar(f.rhs())), Formula::neg(desugar(f.lhs()))));
    case Op::GNeg:
      return Formula::impl(desugar(f.arg()), Formula::bot());
    case Op::Delta:
      return desugar(Formula::coimpl(Formula::top(), Formula::coimpl(Formula::top(), f.arg())));
  }
  throw std::logic_error("unhandled connective");
}

bool is_core(const Formula& f) {
  if (!is_core(f.op())) return false;
  if (is_unary(f.op())) return is_core(f.arg());
  if (is_binary(f.op())) return is_core(f.lhs()) && is_core(f.rhs());
  return true;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.count(g)) return;
    if (is_unary(g.op())) walk(g.arg());
    if (is_binary(g.op())) {
      walk(g.lhs());
      walk(g.rhs());
    }
    seen.insert(g);
    out.push_back(g);
  };
  walk(f);
  return out;
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  for (const auto& g : subformulas(f))
    if (g.op() == Op::Atom) out.push_back(g.name());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

ModalMetrics metrics_of(const Formula& f) {
  ModalMetrics m;
  if (is_unary(f.op()) || is_binary(f.op())) {
    ModalMetrics a = metrics_of(f.arg());
    m = a;
    if (is_binary(f.op())) {
      ModalMetrics b = metrics_of(f.rhs());
      m.count += b.count;
      m.depth = std::max(m.depth, b.depth);
    }
  }
  if (is_modal(f.op())) {
    ++m.count;
    ++m.depth;
  }
  return m;
}

}  // namespace

ModalMetrics modal_metrics(const Formula& f) { return metrics_of(desugar(f)); }

}  // namespace kg2
