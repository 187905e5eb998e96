#include "imp/parser.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>

namespace imp {

namespace {

std::string describe(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

std::string format_error(const std::string& message, const SourceSpan& span,
                         const std::vector<std::string>& expected) {
  std::string out = std::to_string(span.start_line) + ":" +
                    std::to_string(span.start_col) + ": " + message;
  if (!expected.empty()) out += " (expected " + describe(expected) + ")";
  return out;
}

}  // namespace

ParseError::ParseError(std::string message, SourceSpan span,
                       std::vector<std::string> expected)
    : std::runtime_error(format_error(message, span, expected)),
      message_(std::move(message)),
      span_(span),
      expected_(std::move(expected)) {}

namespace {

constexpr std::array kKeywords = {"skip",  "if",        "else",   "while",
                                  "true",  "false",     "invariant", "measure"};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses an optionally negative decimal literal; nullopt on overflow.
std::optional<Value> parse_integer(std::string_view text) {
  bool negative = !text.empty() && text.front() == '-';
  if (negative) text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  std::uint64_t magnitude = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), magnitude);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<Value>::max());
  if (negative) {
    if (magnitude > kMax + 1) return std::nullopt;
    return static_cast<Value>(0 - magnitude);
  }
  if (magnitude > kMax) return std::nullopt;
  return static_cast<Value>(magnitude);
}

enum class Tok { Ident, Int, Keyword, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  Value value = 0;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (at_end()) {
        out.push_back(Token{Tok::End, "end of input", 0, span_here(0)});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
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

  void skip_blank() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  SourceSpan span_here(int width) const {
    return SourceSpan{line_, col_, line_, col_ + width};
  }

  Token next() {
    int line = line_;
    int col = col_;
    std::size_t start = pos_;
    auto finish = [&](Tok kind) {
      Token t{kind, std::string(text_.substr(start, pos_ - start)), 0,
              SourceSpan{line, col, line_, col_}};
      return t;
    };

    char c = peek();
    if (is_ident_start(c)) {
      while (!at_end() && is_ident_char(peek())) advance();
      Token t = finish(Tok::Ident);
      if (is_keyword(t.text)) t.kind = Tok::Keyword;
      return t;
    }
    if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
      advance();
      while (!at_end() && is_digit(peek())) advance();
      Token t = finish(Tok::Int);
      auto v = parse_integer(t.text);
      if (!v) throw ParseError("integer literal out of range", t.span);
      t.value = *v;
      return t;
    }
    static constexpr std::array<std::string_view, 5> kTwoChar = {
        ":=", "<=", "&&", "||", "->"};
    for (std::string_view sym : kTwoChar) {
      if (text_.substr(pos_, 2) == sym) {
        advance();
        advance();
        return finish(Tok::Symbol);
      }
    }
    static constexpr std::string_view kOneChar = ";(){}+<=!";
    if (kOneChar.find(c) != std::string_view::npos) {
      advance();
      return finish(Tok::Symbol);
    }
    std::string shown = (static_cast<unsigned char>(c) < 0x20 ||
                         static_cast<unsigned char>(c) >= 0x7f)
                            ? "byte " + std::to_string(static_cast<unsigned char>(c))
                            : std::string("'") + c + "'";
    throw ParseError("unexpected character " + shown, span_here(1));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  AnnotatedCom program() {
    Com c = com_seq();
    expect_end();
    AnnotatedCom out(c);
    for (auto& [loop, annotation] : loops_) out.annotate(loop, std::move(annotation));
    return out;
  }

  Assertion assertion_only() {
    Assertion a = assertion();
    expect_end();
    return a;
  }

  AExp aexp_only() {
    AExp a = aexp();
    expect_end();
    return a;
  }

  BExp bexp_only() {
    BExp b = bexp();
    expect_end();
    return b;
  }

 private:
  static constexpr int kMaxNesting = 1000;

  struct NestingGuard {
    explicit NestingGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) {
        throw ParseError("nesting too deep", parser.peek().span);
      }
    }
    ~NestingGuard() { --parser.depth_; }
    Parser& parser;
  };

  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_symbol(std::string_view s) const {
    return peek().kind == Tok::Symbol && peek().text == s;
  }
  bool at_keyword(std::string_view k) const {
    return peek().kind == Tok::Keyword && peek().text == k;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string what = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + what, t.span, std::move(expected));
  }

  const Token& expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail({"'" + std::string(s) + "'"});
    return take();
  }

  const Token& expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail({"'" + std::string(k) + "'"});
    return take();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  Identifier identifier() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail({"identifier"});
    if (t.text.rfind("__", 0) == 0) {
      throw ParseError("identifier '" + t.text + "' uses the reserved '__' prefix",
                       t.span);
    }
    return take().text;
  }

  // Runs `first`; if it throws, rewinds and runs `second`.
  template <class T, class First, class Second>
  T either(First first, Second second) {
    std::size_t saved = pos_;
    try {
      return first();
    } catch (const ParseError&) {
      pos_ = saved;
    }
    return second();
  }

  Com com_seq() {
    std::vector<Com> items{com_item()};
    while (at_symbol(";")) {
      take();
      items.push_back(com_item());
    }
    Com out = std::move(items.back());
    for (std::size_t i = items.size() - 1; i-- > 0;) {
      out = Com::seq(std::move(items[i]), std::move(out));
    }
    return out;
  }

  Com com_item() {
    NestingGuard guard(*this);
    const Token& t = peek();
    if (at_keyword("skip")) {
      take();
      return Com::skip();
    }
    if (at_keyword("if")) {
      take();
      expect_symbol("(");
      BExp cond = bexp();
      expect_symbol(")");
      Com then_branch = block();
      expect_keyword("else");
      Com else_branch = block();
      return Com::if_then_else(std::move(cond), std::move(then_branch),
                               std::move(else_branch));
    }
    if (at_keyword("while")) {
      SourceSpan start = take().span;
      expect_symbol("(");
      BExp cond = bexp();
      expect_symbol(")");
      LoopAnnotation annotation;
      if (at_keyword("invariant")) {
        take();
        expect_symbol("(");
        annotation.invariant = assertion();
        expect_symbol(")");
        if (at_keyword("measure")) {
          take();
          expect_symbol("(");
          annotation.measure = aexp();
          expect_symbol(")");
        }
      }
      expect_symbol("{");
      Com body = com_seq();
      const Token& close = expect_symbol("}");
      annotation.span = SourceSpan{start.start_line, start.start_col,
                                   close.span.end_line, close.span.end_col};
      Com loop = Com::while_loop(std::move(cond), std::move(body));
      loops_.emplace_back(loop, std::move(annotation));
      return loop;
    }
    if (at_symbol("{")) return block();
    if (t.kind == Tok::Ident) {
      Identifier target = identifier();
      expect_symbol(":=");
      return Com::assign(std::move(target), aexp());
    }
    fail({"'skip'", "'if'", "'while'", "'{'", "identifier"});
  }

  Com block() {
    expect_symbol("{");
    Com c = com_seq();
    expect_symbol("}");
    return c;
  }

  AExp aexp() {
    AExp out = aatom();
    while (at_symbol("+")) {
      take();
      out = AExp::plus(std::move(out), aatom());
    }
    return out;
  }

  AExp aatom() {
    NestingGuard guard(*this);
    const Token& t = peek();
    if (t.kind == Tok::Int) return AExp::num(take().value);
    if (t.kind == Tok::Ident) return AExp::var(identifier());
    if (at_symbol("(")) {
      take();
      AExp inner = aexp();
      expect_symbol(")");
      return inner;
    }
    fail({"integer", "identifier", "'('"});
  }

  BExp bexp() {
    BExp out = batom();
    while (at_symbol("&&")) {
      take();
      out = BExp::conj(std::move(out), batom());
    }
    return out;
  }

  BExp less_atom() {
    AExp left = aexp();
    expect_symbol("<");
    return BExp::less(std::move(left), aexp());
  }

  BExp batom() {
    NestingGuard guard(*this);
    if (at_keyword("true")) {
      take();
      return BExp::lit(true);
    }
    if (at_keyword("false")) {
      take();
      return BExp::lit(false);
    }
    if (at_symbol("!")) {
      take();
      return BExp::negate(batom());
    }
    if (at_symbol("(")) {
      return either<BExp>([&] { return less_atom(); },
                          [&] {
                            take();
                            BExp inner = bexp();
                            expect_symbol(")");
                            return inner;
                          });
    }
    if (peek().kind == Tok::Int || peek().kind == Tok::Ident) return less_atom();
    fail({"'true'", "'false'", "'!'", "'('", "arithmetic expression"});
  }

  Assertion assertion() {
    NestingGuard guard(*this);
    Assertion left = disjunction();
    if (at_symbol("->")) {
      take();
      return Assertion::implies(std::move(left), assertion());
    }
    return left;
  }

  Assertion disjunction() {
    Assertion out = conjunction();
    while (at_symbol("||")) {
      take();
      out = Assertion::disj(std::move(out), conjunction());
    }
    return out;
  }

  Assertion conjunction() {
    Assertion out = unary();
    while (at_symbol("&&")) {
      take();
      out = Assertion::conj(std::move(out), unary());
    }
    return out;
  }

  Assertion comparison() {
    AExp left = aexp();
    CmpOp op;
    if (at_symbol("<")) {
      op = CmpOp::Lt;
    } else if (at_symbol("<=")) {
      op = CmpOp::Le;
    } else if (at_symbol("=")) {
      op = CmpOp::Eq;
    } else {
      fail({"'<'", "'<='", "'='"});
    }
    take();
    return Assertion::cmp(op, std::move(left), aexp());
  }

  Assertion unary() {
    NestingGuard guard(*this);
    if (at_symbol("!")) {
      take();
      return Assertion::negate(unary());
    }
    if (at_keyword("true")) {
      take();
      return Assertion::truth();
    }
    if (at_keyword("false")) {
      take();
      return Assertion::falsity();
    }
    if (at_symbol("(")) {
      return either<Assertion>([&] { return comparison(); },
                               [&] {
                                 take();
                                 Assertion inner = assertion();
                                 expect_symbol(")");
                                 return inner;
                               });
    }
    if (peek().kind == Tok::Int || peek().kind == Tok::Ident) return comparison();
    fail({"'true'", "'false'", "'!'", "'('", "arithmetic expression"});
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::vector<std::pair<Com, LoopAnnotation>> loops_;
};

// Precedence levels for assertion printing.
constexpr int kImpLevel = 0;
constexpr int kOrLevel = 1;
constexpr int kAndLevel = 2;
constexpr int kUnaryLevel = 3;

int level_of(const Assertion& a) {
  return std::visit(overloaded{
                        [](const assn::Imp&) { return kImpLevel; },
                        [](const assn::Or&) { return kOrLevel; },
                        [](const assn::And&) { return kAndLevel; },
                        [](const auto&) { return kUnaryLevel; },
                    },
                    a.node().v);
}

std::string pretty_at(const Assertion& a, int level) {
  std::string body = pretty(a);
  return level_of(a) < level ? "(" + body + ")" : body;
}

const char* symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Lt:
      return "<";
    case CmpOp::Le:
      return "<=";
    case CmpOp::Eq:
      return "=";
  }
  return "?";
}

void pretty_into(const Com& c, std::string& out);

void pretty_block(const Com& c, std::string& out) {
  out += "{ ";
  pretty_into(c, out);
  out += " }";
}

void pretty_into(const Com& c, std::string& out) {
  const Com* cur = &c;
  while (const auto* s = std::get_if<com::Seq>(&cur->node().v)) {
    if (std::holds_alternative<com::Seq>(s->first.node().v)) {
      pretty_block(s->first, out);
    } else {
      pretty_into(s->first, out);
    }
    out += "; ";
    cur = &s->second;
  }
  std::visit(overloaded{
                 [&](const com::Skip&) { out += "skip"; },
                 [](const com::Seq&) {},
                 [&](const com::Assign& a) {
                   out += a.target;
                   out += " := ";
                   out += pretty(a.rhs);
                 },
                 [&](const com::If& i) {
                   out += "if (" + pretty(i.cond) + ") ";
                   pretty_block(i.then_branch, out);
                   out += " else ";
                   pretty_block(i.else_branch, out);
                 },
                 [&](const com::While& w) {
                   out += "while (" + pretty(w.cond) + ") ";
                   pretty_block(w.body, out);
                 },
             },
             cur->node().v);
}

}  // namespace

Com parse_com(std::string_view text) { return Parser(text).program().erase(); }

AnnotatedCom parse_annotated_com(std::string_view text) {
  return Parser(text).program();
}

Assertion parse_assertion(std::string_view text) {
  return Parser(text).assertion_only();
}

AExp parse_aexp(std::string_view text) { return Parser(text).aexp_only(); }

BExp parse_bexp(std::string_view text) { return Parser(text).bexp_only(); }

std::string pretty(const AExp& a) {
  return std::visit(
      overloaded{
          [](const aexp::Num& n) { return std::to_string(n.value); },
          [](const aexp::Var& v) { return v.name; },
          [](const aexp::Plus& p) {
            std::string right = pretty(p.right);
            if (std::holds_alternative<aexp::Plus>(p.right.node().v)) {
              right = "(" + right + ")";
            }
            return pretty(p.left) + " + " + right;
          },
      },
      a.node().v);
}

std::string pretty(const BExp& b) {
  auto atom = [](const BExp& x) {
    std::string s = pretty(x);
    return std::holds_alternative<bexp::And>(x.node().v) ? "(" + s + ")" : s;
  };
  return std::visit(
      overloaded{
          [](const bexp::Lit& l) -> std::string { return l.value ? "true" : "false"; },
          [&](const bexp::Not& n) { return "!" + atom(n.inner); },
          [&](const bexp::And& x) { return pretty(x.left) + " && " + atom(x.right); },
          [](const bexp::Less& x) { return pretty(x.left) + " < " + pretty(x.right); },
      },
      b.node().v);
}

std::string pretty(const Assertion& a) {
  return std::visit(
      overloaded{
          [](const assn::True&) -> std::string { return "true"; },
          [](const assn::False&) -> std::string { return "false"; },
          [](const assn::Cmp& c) {
            return pretty(c.left) + " " + symbol(c.op) + " " + pretty(c.right);
          },
          [](const assn::Not& n) { return "!" + pretty_at(n.inner, kUnaryLevel); },
          [](const assn::And& x) {
            return pretty_at(x.left, kAndLevel) + " && " +
                   pretty_at(x.right, kUnaryLevel);
          },
          [](const assn::Or& x) {
            return pretty_at(x.left, kOrLevel) + " || " +
                   pretty_at(x.right, kAndLevel);
          },
          [](const assn::Imp& x) {
            return pretty_at(x.premise, kOrLevel) + " -> " +
                   pretty_at(x.conclusion, kImpLevel);
          },
      },
      a.node().v);
}

std::string pretty_com(const Com& c) {
  std::string out;
  pretty_into(c, out);
  return out;
}

Program parse_asm(std::string_view text) {
  Program program;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto comment = line.find("//"); comment != std::string_view::npos) {
      line = line.substr(0, comment);
    }
    // Split into whitespace-separated fields, remembering columns.
    std::vector<std::pair<std::string_view, int>> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      fields.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
      i = j;
    }
    if (fields.empty()) continue;

    auto span_of = [&](std::size_t field) {
      auto [word, col] = fields[field];
      return SourceSpan{line_no, col, line_no, col + static_cast<int>(word.size())};
    };
    const std::string mnemonic(fields[0].first);
    auto arity_error = [&](std::size_t want) {
      // Point at the first surplus operand, or at the mnemonic if one is missing.
      return ParseError(mnemonic + " takes " + std::to_string(want) + " operand" +
                            (want == 1 ? "" : "s"),
                        span_of(fields.size() > want + 1 ? want + 1 : 0));
    };
    auto int_operand = [&]() {
      if (fields.size() != 2) throw arity_error(1);
      auto v = parse_integer(fields[1].first);
      if (!v) throw ParseError("malformed integer operand", span_of(1), {"integer"});
      return *v;
    };
    auto name_operand = [&]() {
      if (fields.size() != 2) throw arity_error(1);
      if (!is_valid_identifier(fields[1].first)) {
        throw ParseError("malformed identifier operand", span_of(1), {"identifier"});
      }
      return Identifier(fields[1].first);
    };

    if (mnemonic == "LOADI") {
      program.emplace_back(instr::LoadI{int_operand()});
    } else if (mnemonic == "LOAD") {
      program.emplace_back(instr::Load{name_operand()});
    } else if (mnemonic == "ADD") {
      if (fields.size() != 1) throw arity_error(0);
      program.emplace_back(instr::Add{});
    } else if (mnemonic == "STORE") {
      program.emplace_back(instr::Store{name_operand()});
    } else if (mnemonic == "JMP") {
      program.emplace_back(instr::Jmp{int_operand()});
    } else if (mnemonic == "JMPLESS") {
      program.emplace_back(instr::JmpLess{int_operand()});
    } else if (mnemonic == "JMPGE") {
      program.emplace_back(instr::JmpGe{int_operand()});
    } else {
      throw ParseError("unknown mnemonic '" + mnemonic + "'", span_of(0),
                       {"LOADI", "LOAD", "ADD", "STORE", "JMP", "JMPLESS", "JMPGE"});
    }
  }
  return program;
}

std::string pretty(const Instr& ins) {
  return std::visit(
      overloaded{
          [](const instr::LoadI& i) { return "LOADI " + std::to_string(i.value); },
          [](const instr::Load& i) { return "LOAD " + i.name; },
          [](const instr::Add&) { return std::string("ADD"); },
          [](const instr::Store& i) { return "STORE " + i.name; },
          [](const instr::Jmp& i) { return "JMP " + std::to_string(i.offset); },
          [](const instr::JmpLess& i) { return "JMPLESS " + std::to_string(i.offset); },
          [](const instr::JmpGe& i) { return "JMPGE " + std::to_string(i.offset); },
      },
      ins);
}

std::string pretty_asm(std::span<const Instr> program) {
  std::string out;
  for (const Instr& ins : program) {
    out += pretty(ins);
    out += '\n';
  }
  return out;
}

}  // namespace imp
