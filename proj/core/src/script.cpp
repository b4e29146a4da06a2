#include "lcc/script.hpp"

#include <cctype>
#include <sstream>

#include "lcc/syntax.hpp"

namespace lcc {

namespace {

enum class STok { LParen, RParen, Eq, Str, Atom, End };

struct SToken {
  STok kind;
  std::string text;
  int line, col;
};

struct ScriptLexer {
  const std::string& src;
  std::size_t i = 0;
  int line = 1, col = 1;

  explicit ScriptLexer(const std::string& s) : src(s) {}

  void advance() {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < src.size()) {
      char c = src[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
        while (i < src.size() && src[i] != '\n') advance();
      } else {
        break;
      }
    }
  }

  SToken next() {
    skip();
    if (i >= src.size()) return {STok::End, "", line, col};
    int l = line, c = col;
    char ch = src[i];
    if (ch == '(') {
      advance();
      return {STok::LParen, "(", l, c};
    }
    if (ch == ')') {
      advance();
      return {STok::RParen, ")", l, c};
    }
    if (ch == '=') {
      advance();
      return {STok::Eq, "=", l, c};
    }
    if (ch == '"') {
      advance();
      std::string out;
      while (i < src.size() && src[i] != '"') {
        out += src[i];
        advance();
      }
      if (i >= src.size()) throw ParseError("unterminated string", l, c);
      advance();
      return {STok::Str, out, l, c};
    }
    std::string out;
    while (i < src.size()) {
      char a = src[i];
      if (std::isspace(static_cast<unsigned char>(a)) || a == '(' || a == ')' ||
          a == '=' || a == '"')
        break;
      out += a;
      advance();
    }
    return {STok::Atom, out, l, c};
  }
};

struct ScriptParser {
  ScriptLexer lex;
  SToken tok;

  explicit ScriptParser(const std::string& src) : lex(src) { tok = lex.next(); }

  void bump() { tok = lex.next(); }

  [[noreturn]] void err(const std::string& msg) {
    throw ParseError(msg, tok.line, tok.col);
  }

  Derivation node() {
    if (tok.kind != STok::LParen) err("expected '('");
    bump();
    if (tok.kind != STok::Atom) err("expected a rule name");
    Derivation d;
    d.rule = tok.text;
    bump();
    if (tok.kind != STok::Str) err("expected a quoted judgment");
    try {
      d.conclusion = parse_judgment(tok.text);
    } catch (const ParseError& e) {
      throw ParseError(std::string("in judgment: ") + e.what(), tok.line, tok.col);
    }
    bump();
    while (tok.kind == STok::Atom) {
      std::string key = tok.text;
      int kl = tok.line, kc = tok.col;
      bump();
      if (tok.kind != STok::Eq) err("expected '=' after witness key " + key);
      bump();
      if (tok.kind != STok::Str && tok.kind != STok::Atom)
        err("expected a witness value for " + key);
      set_witness(d.witness, key, tok, kl, kc);
      bump();
    }
    while (tok.kind == STok::LParen) d.premises.push_back(node());
    if (tok.kind != STok::RParen) err("expected ')'");
    bump();
    return d;
  }

  void set_witness(Witness& w, const std::string& key, const SToken& val, int kl,
                   int kc) {
    auto dup = [&](bool already) {
      if (already) throw ParseError("duplicate witness key " + key, kl, kc);
    };
    if (key == "ty") {
      dup(w.ty.has_value());
      if (val.kind != STok::Str)
        throw ParseError("ty expects a quoted type", val.line, val.col);
      try {
        w.ty = parse_type(val.text);
      } catch (const ParseError& e) {
        throw ParseError(std::string("in witness type: ") + e.what(), val.line,
                         val.col);
      }
    } else if (key == "tv") {
      dup(w.tv.has_value());
      if (val.kind != STok::Atom || val.text.size() < 2 ||
          (val.text[0] != '$' && val.text[0] != '@'))
        throw ParseError("tv expects $Name or @name", val.line, val.col);
      w.tv = TypeVar{val.text[0] == '@', val.text.substr(1)};
    } else if (key == "var") {
      dup(w.var.has_value());
      if (val.kind != STok::Atom)
        throw ParseError("var expects a bare identifier", val.line, val.col);
      w.var = val.text;
    } else if (key == "i0") {
      dup(w.i0.has_value());
      try {
        std::size_t pos = 0;
        int n = std::stoi(val.text, &pos);
        if (pos != val.text.size()) throw std::invalid_argument("trailing");
        w.i0 = n;
      } catch (const std::exception&) {
        throw ParseError("i0 expects an integer", val.line, val.col);
      }
    } else if (key == "vec") {
      dup(w.vec.has_value());
      if (val.kind != STok::Str)
        throw ParseError("vec expects a quoted type vector", val.line, val.col);
      try {
        w.vec = parse_type_vector(val.text);
      } catch (const ParseError& e) {
        throw ParseError(std::string("in witness vector: ") + e.what(), val.line,
                         val.col);
      }
    } else {
      throw ParseError("unknown witness key " + key, kl, kc);
    }
  }
};

void print_rec(std::ostringstream& out, const Derivation& d, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << '(' << d.rule << " \""
      << print_judgment(d.conclusion) << '"';
  if (d.witness.ty) out << " ty=\"" << print_type(*d.witness.ty) << '"';
  if (d.witness.tv)
    out << " tv=" << (d.witness.tv->is_data ? "@" : "$") << d.witness.tv->name;
  if (d.witness.var) out << " var=" << *d.witness.var;
  if (d.witness.i0) out << " i0=" << *d.witness.i0;
  if (d.witness.vec) out << " vec=\"" << print_type_vector(*d.witness.vec) << '"';
  for (const auto& p : d.premises) {
    out << '\n';
    print_rec(out, p, indent + 2);
  }
  out << ')';
}

}  // namespace

Derivation parse_script(const std::string& src) {
  ScriptParser p(src);
  Derivation d = p.node();
  if (p.tok.kind != STok::End) p.err("expected end of script");
  return d;
}

std::string print_script(const Derivation& d) {
  std::ostringstream out;
  print_rec(out, d, 0);
  out << '\n';
  return out.str();
}

}  // namespace lcc
