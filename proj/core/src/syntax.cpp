#include "lcc/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace lcc {

namespace {

enum class Tok {
  Ident,
  UIdent,
  OrdVarTok,
  DataVarTok,
  Lambda,
  Dot,
  LParen,
  RParen,
  OpenCase,
  CloseCase,
  Semi,
  Arrow,
  Bang,
  Amp,
  Pipe,
  Forall,
  Exists,
  Le,
  Comma,
  Colon,
  Turnstile,
  End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    auto push = [&](Tok kind, std::string text, std::size_t len) {
      out.push_back({kind, std::move(text), tl, tc});
      advance(len);
    };
    if (c == '\\') { push(Tok::Lambda, "\\", 1); continue; }
    if (c == '.') { push(Tok::Dot, ".", 1); continue; }
    if (c == '(') { push(Tok::LParen, "(", 1); continue; }
    if (c == ')') { push(Tok::RParen, ")", 1); continue; }
    if (c == ';') { push(Tok::Semi, ";", 1); continue; }
    if (c == '!') { push(Tok::Bang, "!", 1); continue; }
    if (c == '&') { push(Tok::Amp, "&", 1); continue; }
    if (c == ',') { push(Tok::Comma, ",", 1); continue; }
    if (c == ':') { push(Tok::Colon, ":", 1); continue; }
    if (c == '{') {
      if (i + 1 < src.size() && src[i + 1] == '|') { push(Tok::OpenCase, "{|", 2); continue; }
      throw ParseError("expected '{|'", tl, tc);
    }
    if (c == '|') {
      if (i + 1 < src.size() && src[i + 1] == '}') { push(Tok::CloseCase, "|}", 2); continue; }
      if (i + 1 < src.size() && src[i + 1] == '-') { push(Tok::Turnstile, "|-", 2); continue; }
      push(Tok::Pipe, "|", 1);
      continue;
    }
    if (c == '-') {
      if (i + 1 < src.size() && src[i + 1] == '>') { push(Tok::Arrow, "->", 2); continue; }
      throw ParseError("stray '-'", tl, tc);
    }
    if (c == '<') {
      if (i + 1 < src.size() && src[i + 1] == '=') { push(Tok::Le, "<=", 2); continue; }
      throw ParseError("stray '<'", tl, tc);
    }
    if (c == '$' || c == '@') {
      std::size_t j = i + 1;
      if (j >= src.size() || !ident_start(src[j]))
        throw ParseError(std::string("expected identifier after '") + c + "'", tl, tc);
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string name = src.substr(i + 1, j - i - 1);
      push(c == '$' ? Tok::OrdVarTok : Tok::DataVarTok, name, j - i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      std::string name = src.substr(i, j - i);
      Tok kind;
      if (name == "forall")
        kind = Tok::Forall;
      else if (name == "exists")
        kind = Tok::Exists;
      else if (std::isupper(static_cast<unsigned char>(name[0])))
        kind = Tok::UIdent;
      else
        kind = Tok::Ident;
      push(kind, std::move(name), j - i);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

const char* tok_label(Tok t) {
  switch (t) {
    case Tok::Ident: return "variable";
    case Tok::UIdent: return "constructor";
    case Tok::OrdVarTok: return "$-variable";
    case Tok::DataVarTok: return "@-variable";
    case Tok::Lambda: return "'\\'";
    case Tok::Dot: return "'.'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::OpenCase: return "'{|'";
    case Tok::CloseCase: return "'|}'";
    case Tok::Semi: return "';'";
    case Tok::Arrow: return "'->'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Forall: return "'forall'";
    case Tok::Exists: return "'exists'";
    case Tok::Le: return "'<='";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Turnstile: return "'|-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = pos + ahead;
    return k < toks.size() ? toks[k] : toks.back();
  }
  bool at(Tok t) const { return peek().kind == t; }
  Token take() { return toks[pos++]; }
  Token expect(Tok t, const char* what) {
    if (!at(t))
      throw ParseError(std::string("expected ") + what + ", found " +
                           tok_label(peek().kind),
                       peek().line, peek().col);
    return take();
  }

  // terms ---------------------------------------------------------------

  bool at_term_atom() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::UIdent:
      case Tok::Bang:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  TermPtr p_term() {
    if (at(Tok::Lambda)) {
      take();
      Token binder = expect(Tok::Ident, "binder");
      expect(Tok::Dot, "'.'");
      return lam(binder.text, p_term());
    }
    if (at(Tok::OpenCase)) {
      CaseBinding b = p_binding();
      expect(Tok::Dot, "'.' after case binding");
      return case_of(std::move(b), p_term());
    }
    return p_app();
  }

  TermPtr p_app() {
    TermPtr t = p_atom();
    while (at_term_atom()) t = app(t, p_atom());
    return t;
  }

  TermPtr p_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Ident:
        return var(take().text);
      case Tok::UIdent:
        return constr(take().text);
      case Tok::Bang:
        take();
        return daimon();
      case Tok::LParen: {
        take();
        TermPtr t = p_term();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        throw ParseError(std::string("expected a term, found ") + tok_label(tok.kind),
                         tok.line, tok.col);
    }
  }

  CaseBinding p_binding() {
    expect(Tok::OpenCase, "'{|'");
    std::vector<std::pair<std::string, TermPtr>> branches;
    if (!at(Tok::CloseCase)) {
      while (true) {
        Token key = expect(Tok::UIdent, "constructor branch key");
        expect(Tok::Arrow, "'->'");
        TermPtr body = p_term();
        for (const auto& [k, unused] : branches)
          if (k == key.text)
            throw ParseError("duplicate branch key " + key.text, key.line, key.col);
        branches.emplace_back(key.text, body);
        if (!at(Tok::Semi)) break;
        take();
      }
    }
    expect(Tok::CloseCase, "'|}'");
    return make_binding(std::move(branches));
  }

  // types ---------------------------------------------------------------

  bool at_type_atom() const {
    switch (peek().kind) {
      case Tok::OrdVarTok:
      case Tok::DataVarTok:
      case Tok::UIdent:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  TypePtr p_type() {
    if (at(Tok::Forall) || at(Tok::Exists)) {
      bool is_forall = take().kind == Tok::Forall;
      const Token& v = peek();
      if (v.kind != Tok::OrdVarTok && v.kind != Tok::DataVarTok)
        throw ParseError("expected $-variable or @-variable after quantifier",
                         v.line, v.col);
      Token binder = take();
      expect(Tok::Dot, "'.'");
      TypePtr body = p_type();
      if (binder.kind == Tok::OrdVarTok)
        return is_forall ? forall_ord(binder.text, body) : exists_ord(binder.text, body);
      return is_forall ? forall_data(binder.text, body) : exists_data(binder.text, body);
    }
    TypePtr lhs = p_union();
    if (at(Tok::Arrow)) {
      take();
      return arrow(lhs, p_type());
    }
    return lhs;
  }

  TypePtr p_union() {
    TypePtr t = p_inter();
    while (at(Tok::Pipe)) {
      take();
      t = type_union(t, p_inter());
    }
    return t;
  }

  TypePtr p_inter() {
    TypePtr t = p_tapp();
    while (at(Tok::Amp)) {
      take();
      t = type_inter(t, p_tapp());
    }
    return t;
  }

  TypePtr p_tapp() {
    TypePtr t = p_tatom();
    while (at_type_atom()) t = tapp(t, p_tatom());
    return t;
  }

  TypePtr p_tatom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::OrdVarTok:
        return ord_var(take().text);
      case Tok::DataVarTok:
        return data_var(take().text);
      case Tok::UIdent:
        return tconst(take().text);
      case Tok::LParen: {
        take();
        TypePtr t = p_type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        throw ParseError(std::string("expected a type, found ") + tok_label(tok.kind),
                         tok.line, tok.col);
    }
  }

  // judgments -----------------------------------------------------------

  void verify_wf(const TypePtr& t, const Token& where) {
    auto wf = check_wellformed(t);
    if (!wf.ok) {
      std::string pos = "[";
      for (std::size_t i = 0; i < wf.position.size(); ++i) {
        if (i) pos += ",";
        pos += std::to_string(wf.position[i]);
      }
      pos += "]";
      throw ParseError("application head is not a data type (position " + pos +
                           " of the type starting",
                       where.line, where.col);
    }
  }

  TypePtr p_checked_type() {
    Token start = peek();
    TypePtr t = p_type();
    verify_wf(t, start);
    return t;
  }

  Judgment p_judgment() {
    if (at(Tok::Turnstile) || (at(Tok::Ident) && peek(1).kind == Tok::Colon)) {
      Judgment j;
      if (at(Tok::Ident)) {
        while (true) {
          Token name = expect(Tok::Ident, "context variable");
          expect(Tok::Colon, "':'");
          TypePtr ty = p_checked_type();
          for (const auto& [k, unused] : j.ctx.entries)
            if (k == name.text)
              throw ParseError("duplicate context variable " + name.text,
                               name.line, name.col);
          j.ctx.entries.emplace_back(name.text, ty);
          if (!at(Tok::Comma)) break;
          take();
        }
      }
      expect(Tok::Turnstile, "'|-'");
      if (at(Tok::OpenCase)) {
        CaseBinding b = p_binding();
        if (at(Tok::Dot)) {
          take();
          j.kind = Judgment::Kind::TermTyping;
          j.subject = case_of(std::move(b), p_term());
        } else {
          j.kind = Judgment::Kind::BindingTyping;
          j.binding = std::move(b);
        }
      } else {
        j.kind = Judgment::Kind::TermTyping;
        j.subject = p_term();
      }
      expect(Tok::Colon, "':'");
      j.ty = p_checked_type();
      return j;
    }
    Judgment j;
    j.kind = Judgment::Kind::Subtype;
    j.lhs = p_checked_type();
    expect(Tok::Le, "'<='");
    j.rhs = p_checked_type();
    return j;
  }

  void expect_end() {
    if (!at(Tok::End))
      throw ParseError(std::string("trailing input, found ") + tok_label(peek().kind),
                       peek().line, peek().col);
  }
};

Parser make_parser(const std::string& src) { return Parser{tokenize(src), 0}; }

}  // namespace

TermPtr parse_term(const std::string& src) {
  Parser p = make_parser(src);
  TermPtr t = p.p_term();
  p.expect_end();
  return t;
}

TypePtr parse_type(const std::string& src) {
  Parser p = make_parser(src);
  TypePtr t = p.p_checked_type();
  p.expect_end();
  return t;
}

std::vector<TypePtr> parse_type_vector(const std::string& src) {
  Parser p = make_parser(src);
  std::vector<TypePtr> out;
  if (p.at(Tok::End)) return out;
  while (true) {
    out.push_back(p.p_checked_type());
    if (!p.at(Tok::Semi)) break;
    p.take();
  }
  p.expect_end();
  return out;
}

Judgment parse_judgment(const std::string& src) {
  Parser p = make_parser(src);
  Judgment j = p.p_judgment();
  p.expect_end();
  return j;
}

namespace {

// 0 covers lambda and case bodies, 1 application functions, 2 arguments.
void print_term_rec(const TermPtr& t, int min_level, std::string& out);

void print_binding_rec(const CaseBinding& b, std::string& out) {
  out += "{|";
  if (b.empty()) {
    out += " |}";
    return;
  }
  bool first = true;
  for (const auto& [key, body] : b.branches) {
    out += first ? " " : " ; ";
    first = false;
    out += key;
    out += " -> ";
    print_term_rec(body, 0, out);
  }
  out += " |}";
}

void print_term_rec(const TermPtr& t, int min_level, std::string& out) {
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Constr:
      out += t->name;
      return;
    case TermKind::Daimon:
      out += "!";
      return;
    case TermKind::Lam: {
      bool paren = min_level > 0;
      if (paren) out += "(";
      out += "\\" + t->bound + ". ";
      print_term_rec(t->sub0, 0, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::Case: {
      bool paren = min_level > 0;
      if (paren) out += "(";
      print_binding_rec(t->binding, out);
      out += ". ";
      print_term_rec(t->sub0, 0, out);
      if (paren) out += ")";
      return;
    }
    case TermKind::App: {
      bool paren = min_level > 1;
      if (paren) out += "(";
      print_term_rec(t->sub0, 1, out);
      out += " ";
      print_term_rec(t->sub1, 2, out);
      if (paren) out += ")";
      return;
    }
  }
}

// Binding strength: quantifiers 0, arrow 1, union 2, intersection 3,
// application 4, atoms 5. Arrow codomains print at 0 so a quantifier or
// chained arrow continues without parentheses.
int type_strength(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::ForallOrd:
    case TypeKind::ForallData:
    case TypeKind::ExistsOrd:
    case TypeKind::ExistsData:
      return 0;
    case TypeKind::Arrow:
      return 1;
    case TypeKind::Union:
      return 2;
    case TypeKind::Inter:
      return 3;
    case TypeKind::App:
      return 4;
    default:
      return 5;
  }
}

void print_type_rec(const TypePtr& t, int min_level, std::string& out) {
  bool paren = type_strength(t) < min_level;
  if (paren) out += "(";
  switch (t->kind) {
    case TypeKind::OrdVar:
      out += "$" + t->name;
      break;
    case TypeKind::DataVar:
      out += "@" + t->name;
      break;
    case TypeKind::Const:
      out += t->name;
      break;
    case TypeKind::App:
      print_type_rec(t->sub0, 4, out);
      out += " ";
      print_type_rec(t->sub1, 5, out);
      break;
    case TypeKind::Arrow:
      print_type_rec(t->sub0, 2, out);
      out += " -> ";
      print_type_rec(t->sub1, 0, out);
      break;
    case TypeKind::Union:
      print_type_rec(t->sub0, 2, out);
      out += " | ";
      print_type_rec(t->sub1, 3, out);
      break;
    case TypeKind::Inter:
      print_type_rec(t->sub0, 3, out);
      out += " & ";
      print_type_rec(t->sub1, 4, out);
      break;
    case TypeKind::ForallOrd:
    case TypeKind::ForallData:
    case TypeKind::ExistsOrd:
    case TypeKind::ExistsData: {
      bool is_forall =
          t->kind == TypeKind::ForallOrd || t->kind == TypeKind::ForallData;
      bool is_data =
          t->kind == TypeKind::ForallData || t->kind == TypeKind::ExistsData;
      out += is_forall ? "forall " : "exists ";
      out += (is_data ? "@" : "$") + t->name + ". ";
      print_type_rec(t->sub0, 0, out);
      break;
    }
  }
  if (paren) out += ")";
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_term_rec(t, 0, out);
  return out;
}

std::string print_binding(const CaseBinding& b) {
  std::string out;
  print_binding_rec(b, out);
  return out;
}

std::string print_type(const TypePtr& t) {
  std::string out;
  print_type_rec(t, 0, out);
  return out;
}

std::string print_type_vector(const std::vector<TypePtr>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += "; ";
    out += print_type(v[i]);
  }
  return out;
}

std::string print_context(const Context& c) {
  std::string out;
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    if (i) out += ", ";
    out += c.entries[i].first + ": " + print_type(c.entries[i].second);
  }
  return out;
}

std::string print_judgment(const Judgment& j) {
  switch (j.kind) {
    case Judgment::Kind::Subtype:
      return print_type(j.lhs) + " <= " + print_type(j.rhs);
    case Judgment::Kind::TermTyping:
      return (j.ctx.empty() ? "|- " : print_context(j.ctx) + " |- ") +
             print_term(j.subject) + " : " + print_type(j.ty);
    case Judgment::Kind::BindingTyping:
      return (j.ctx.empty() ? "|- " : print_context(j.ctx) + " |- ") +
             print_binding(j.binding) + " : " + print_type(j.ty);
  }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace lcc
