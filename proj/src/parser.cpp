#include <cctype>

#include "incsyn/spec.hpp"

namespace incsyn {

namespace {

struct Token {
  enum Kind { Ident, Keyword, Punct, End } kind;
  std::string text;
  int line, col;
};

const char* kKeywords[] = {"input", "output", "assume", "guarantee",
                           "X",     "U",      "W",      "F",
                           "G",     "GF"};

bool is_keyword(const std::string& s) {
  for (const char* k : kKeywords)
    if (s == k) return true;
  return false;
}

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    while (pos < src.size()) {
      char c = src[pos];
      if (isspace(static_cast<unsigned char>(c))) {
        advance(c);
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') advance(src[pos]);
        continue;
      }
      break;
    }
    if (pos >= src.size()) return {Token::End, "", line, col};
    int l = line, c0 = col;
    char c = src[pos];
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos < src.size() &&
             (isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        s += src[pos];
        advance(src[pos]);
      }
      return {is_keyword(s) ? Token::Keyword : Token::Ident, s, l, c0};
    }
    if (c == '&' || c == '|') {
      if (pos + 1 < src.size() && src[pos + 1] == c) {
        advance(c);
        advance(c);
        return {Token::Punct, std::string(2, c), l, c0};
      }
      throw ParseError(std::string("unexpected character '") + c + "'", l, c0);
    }
    if (c == '-') {
      if (pos + 1 < src.size() && src[pos + 1] == '>') {
        advance('-');
        advance('>');
        return {Token::Punct, "->", l, c0};
      }
      throw ParseError("unexpected character '-'", l, c0);
    }
    if (c == '(' || c == ')' || c == ';' || c == '!') {
      advance(c);
      return {Token::Punct, std::string(1, c), l, c0};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", l, c0);
  }
};

struct Parser {
  Lexer lex;
  Token tok;
  const Vocab* vocab;

  explicit Parser(const std::string& s, const Vocab* v) : lex(s), vocab(v) {
    tok = lex.next();
  }

  void bump() { tok = lex.next(); }

  bool accept(Token::Kind k, const std::string& text) {
    if (tok.kind == k && tok.text == text) {
      bump();
      return true;
    }
    return false;
  }

  void expect(Token::Kind k, const std::string& text) {
    if (!accept(k, text))
      throw ParseError("expected '" + text + "', found '" + tok.text + "'", tok.line,
                       tok.col);
  }

  Node parse_ltl() {
    Node a = parse_or();
    if (accept(Token::Punct, "->")) return f::implies(a, parse_ltl());
    return a;
  }

  Node parse_or() {
    Node a = parse_and();
    while (accept(Token::Punct, "||")) a = f::or_(a, parse_and());
    return a;
  }

  Node parse_and() {
    Node a = parse_bin();
    while (accept(Token::Punct, "&&")) a = f::and_(a, parse_bin());
    return a;
  }

  Node parse_bin() {
    Node a = parse_unary();
    if (accept(Token::Keyword, "U")) return f::until(a, parse_bin());
    if (accept(Token::Keyword, "W")) return f::wuntil(a, parse_bin());
    return a;
  }

  Node parse_unary() {
    if (accept(Token::Punct, "!")) return f::not_(parse_unary());
    if (accept(Token::Keyword, "X")) return f::next(parse_unary());
    if (accept(Token::Keyword, "F")) return f::ev(parse_unary());
    if (accept(Token::Keyword, "G")) return f::alw(parse_unary());
    if (accept(Token::Keyword, "GF")) return f::alwev(parse_unary());
    if (accept(Token::Punct, "(")) {
      Node a = parse_ltl();
      expect(Token::Punct, ")");
      return a;
    }
    if (tok.kind == Token::Ident) {
      int v = vocab->find(tok.text);
      if (v < 0)
        throw ParseError("undeclared variable '" + tok.text + "'", tok.line, tok.col);
      bump();
      return f::atom(v);
    }
    throw ParseError("expected formula, found '" + tok.text + "'", tok.line, tok.col);
  }
};

void split_conjuncts(Node a, std::vector<Node>& out) {
  if (a->op == Op::And) {
    split_conjuncts(a->lhs, out);
    split_conjuncts(a->rhs, out);
  } else {
    out.push_back(a);
  }
}

}  // namespace

Spec parse_spec(const std::string& text) {
  Spec spec;
  Parser p(text, &spec.vocab);
  while (p.tok.kind != Token::End) {
    if (p.tok.kind != Token::Keyword)
      throw ParseError("expected declaration or conjunct, found '" + p.tok.text + "'",
                       p.tok.line, p.tok.col);
    std::string kw = p.tok.text;
    if (kw == "input" || kw == "output") {
      p.bump();
      if (p.tok.kind != Token::Ident)
        throw ParseError("expected variable name, found '" + p.tok.text + "'",
                         p.tok.line, p.tok.col);
      std::string name = p.tok.text;
      if (spec.vocab.find(name) >= 0)
        throw ParseError("variable '" + name + "' declared twice", p.tok.line,
                         p.tok.col);
      int v = spec.vocab.add(name, kw == "input" ? VarKind::Input : VarKind::Output);
      (kw == "input" ? spec.inputs : spec.outputs).push_back(v);
      p.bump();
      p.expect(Token::Punct, ";");
    } else if (kw == "assume" || kw == "guarantee") {
      p.bump();
      Node a = to_nnf(p.parse_ltl());
      p.expect(Token::Punct, ";");
      split_conjuncts(a, kw == "assume" ? spec.assumptions : spec.guarantees);
    } else {
      throw ParseError("unexpected keyword '" + kw + "'", p.tok.line, p.tok.col);
    }
  }
  if (spec.guarantees.empty())
    throw ParseError("specification has no guarantee conjuncts", p.tok.line, p.tok.col);
  return spec;
}

Node parse_formula(const std::string& text, const Vocab& vocab) {
  Parser p(text, &vocab);
  Node a = p.parse_ltl();
  if (p.tok.kind != Token::End)
    throw ParseError("trailing input '" + p.tok.text + "'", p.tok.line, p.tok.col);
  return a;
}

std::string print_spec(const Spec& spec) {
  std::string out;
  for (int v : spec.inputs) out += "input " + spec.vocab.name(v) + ";\n";
  for (int v : spec.outputs) out += "output " + spec.vocab.name(v) + ";\n";
  for (Node a : spec.assumptions)
    out += "assume " + to_string(a, spec.vocab) + ";\n";
  for (Node a : spec.guarantees)
    out += "guarantee " + to_string(a, spec.vocab) + ";\n";
  return out;
}

std::vector<int> liveness_outputs(const Spec& spec) {
  uint32_t mask = 0;
  for (Node a : spec.all_conjuncts())
    if (has_liveness_operator(a)) mask |= vars_of(a);
  std::vector<int> r;
  for (int v : spec.outputs)
    if (mask & Vocab::bit(v)) r.push_back(v);
  return r;
}

}  // namespace incsyn
