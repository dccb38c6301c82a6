#include "ghcfix/program.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace ghcfix {

// ---------------------------------------------------------------------------
// Terms

Term Term::variable(std::string name) {
  Term t;
  t.kind = Kind::variable;
  t.name = std::move(name);
  return t;
}

Term Term::integer_lit(long long v) {
  Term t;
  t.kind = Kind::integer;
  t.integer = v;
  return t;
}

Term Term::float_lit(double v) {
  Term t;
  t.kind = Kind::floating;
  t.floating = v;
  return t;
}

Term Term::string_lit(std::string s) {
  Term t;
  t.kind = Kind::string;
  t.name = std::move(s);
  return t;
}

Term Term::nil() {
  Term t;
  t.kind = Kind::nil;
  return t;
}

Term Term::cons(Term head, Term tail) {
  Term t;
  t.kind = Kind::list;
  t.args.push_back(std::move(head));
  t.args.push_back(std::move(tail));
  return t;
}

Term Term::vector_of(std::vector<Term> elems) {
  Term t;
  t.kind = Kind::vector;
  t.args = std::move(elems);
  return t;
}

Term Term::functor(std::string name, std::vector<Term> args) {
  Term t;
  t.kind = Kind::functor;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

bool is_arithmetic_operator(const Term& t) {
  return t.kind == Term::Kind::functor && t.args.size() == 2 &&
         (t.name == "+" || t.name == "-" || t.name == "*" || t.name == "/");
}

std::string Clause::predicate_key() const {
  return head.name + "/" + std::to_string(head.args.size());
}

void Program::reindex() {
  predicates.clear();
  for (int i = 0; i < static_cast<int>(clauses.size()); ++i) {
    auto& list = predicates[clauses[i].predicate_key()];
    list.push_back(i);
    clauses[i].number = static_cast<int>(list.size());
  }
}

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

enum class Tok : std::uint8_t { var, atom, integer, floating, string, punct, op, end, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  long long integer = 0;
  double floating = 0.0;
  int line = 1;
  int column = 1;
};

bool symbol_char(char c) {
  return std::string_view("+-*/\\^<>=~:.?@#&$").find(c) != std::string_view::npos;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_layout();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= text_.size()) {
        t.kind = Tok::eof;
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::var;
        t.text = take_word();
      } else if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = Tok::atom;
        t.text = take_word();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(t);
      } else if (c == '\'') {
        t.kind = Tok::atom;
        t.text = take_quoted('\'');
      } else if (c == '"') {
        t.kind = Tok::string;
        t.text = take_quoted('"');
      } else if (std::string_view("()[]{}|,").find(c) != std::string_view::npos) {
        t.kind = Tok::punct;
        t.text = std::string(1, c);
        advance();
      } else if (symbol_char(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && symbol_char(text_[pos_])) {
          // a '.' followed by layout ends the run (clause terminator)
          if (text_[pos_] == '.' && pos_ > start && end_dot_at(pos_)) break;
          advance();
        }
        t.text = std::string(text_.substr(start, pos_ - start));
        if (t.text == "." && end_dot_at(start)) {
          t.kind = Tok::end;
        } else {
          t.kind = Tok::op;
        }
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool end_dot_at(std::size_t i) const {
    if (text_[i] != '.') return false;
    if (i + 1 >= text_.size()) return true;
    char n = text_[i + 1];
    return std::isspace(static_cast<unsigned char>(n)) || n == '%';
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

  void skip_layout() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        int line = line_, col = col_;
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= text_.size()) throw ParseError("unterminated comment", line, col);
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string take_word() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string take_quoted(char q) {
    int line = line_, col = col_;
    advance();
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != q) {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        advance();
        char e = text_[pos_];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          default: out += e; break;
        }
      } else {
        out += c;
      }
      advance();
    }
    if (pos_ >= text_.size()) throw ParseError("unterminated quoted item", line, col);
    advance();
    return out;
  }

  void lex_number(Token& t) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
    bool is_float = false;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      is_float = true;
      advance();
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_;
        int sl = line_, sc = col_;
        advance();
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
        } else {
          pos_ = save;
          line_ = sl;
          col_ = sc;
        }
      }
    }
    std::string s(text_.substr(start, pos_ - start));
    t.text = s;
    if (is_float) {
      t.kind = Tok::floating;
      t.floating = std::stod(s);
    } else {
      t.kind = Tok::integer;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), t.integer);
      if (ec != std::errc()) throw ParseError("integer out of range", t.line, t.column);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser

const std::set<std::string, std::less<>>& compare_ops() {
  static const std::set<std::string, std::less<>> ops{">", "<", ">=", "=<", "=:=", "=\\="};
  return ops;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program run() {
    Program prog;
    while (peek().kind != Tok::eof) {
      if (is_op(":-")) {
        const Token& at = next();
        const Token& kw = next();
        if (kw.kind != Tok::atom || kw.text != "module")
          throw ParseError("expected 'module' directive", at.line, at.column);
        if (!prog.module_name.empty())
          throw ParseError("more than one module declaration", at.line, at.column);
        const Token& name = next();
        if (name.kind != Tok::atom) throw ParseError("expected module name", name.line, name.column);
        prog.module_name = name.text;
        expect_end();
        continue;
      }
      prog.clauses.push_back(parse_clause());
    }
    prog.reindex();
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::punct && peek().text == p; }
  bool is_op(std::string_view p) const { return peek().kind == Tok::op && peek().text == p; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, peek().line, peek().column);
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }
  void expect_end() {
    if (peek().kind != Tok::end) fail("expected '.' at end of clause");
    next();
  }

  Clause parse_clause() {
    Clause c;
    c.span = SourceSpan{peek().line, peek().column};
    Term head = parse_expr();
    if (head.kind != Term::Kind::functor || is_arithmetic_operator(head))
      throw ParseError("clause head must be an atom", c.span.line, c.span.column);
    c.head.kind = GoalKind::user;
    c.head.name = head.name;
    c.head.args = std::move(head.args);
    if (is_op(":-")) {
      next();
      auto first = parse_goal_terms();
      if (is_punct("|")) {
        next();
        auto second = parse_goal_terms();
        for (auto& [t, tok] : first) add_guard(c, std::move(t), tok);
        for (auto& [t, tok] : second) add_body(c, std::move(t), tok);
      } else {
        for (auto& [t, tok] : first) add_body(c, std::move(t), tok);
      }
    }
    expect_end();
    return c;
  }

  // A goal before classification: the left/right operands and relation.
  struct RawGoal {
    std::string rel;  // empty for a plain callable
    Term lhs;
    Term rhs;
  };

  std::vector<std::pair<RawGoal, Token>> parse_goal_terms() {
    std::vector<std::pair<RawGoal, Token>> goals;
    for (;;) {
      Token at = peek();
      RawGoal g;
      g.lhs = parse_expr();
      if (peek().kind == Tok::op &&
          (peek().text == "=" || peek().text == ":=" || compare_ops().count(peek().text))) {
        g.rel = next().text;
        g.rhs = parse_expr();
      }
      goals.emplace_back(std::move(g), at);
      if (!is_punct(",")) break;
      next();
    }
    return goals;
  }

  void add_guard(Clause& c, RawGoal g, const Token& at) {
    if (g.rel.empty()) {
      if (g.lhs.kind == Term::Kind::functor && g.lhs.name == "true" && g.lhs.args.empty()) return;
      throw ParseError("unknown guard predicate", at.line, at.column);
    }
    if (!compare_ops().count(g.rel)) throw ParseError("unknown guard predicate '" + g.rel + "'", at.line, at.column);
    Goal goal;
    goal.kind = GoalKind::compare;
    goal.name = g.rel;
    goal.args = {std::move(g.lhs), std::move(g.rhs)};
    goal.site = ++builtin_sites_;
    c.guard.push_back(std::move(goal));
  }

  void add_body(Clause& c, RawGoal g, const Token& at) {
    Goal goal;
    if (g.rel.empty()) {
      if (g.lhs.kind != Term::Kind::functor || is_arithmetic_operator(g.lhs))
        throw ParseError("non-goal in body position", at.line, at.column);
      if (g.lhs.name == "true" && g.lhs.args.empty()) return;
      goal.kind = GoalKind::user;
      goal.name = g.lhs.name;
      goal.args = std::move(g.lhs.args);
    } else if (g.rel == "=") {
      goal.kind = GoalKind::unify;
      goal.name = "=";
      goal.args = {std::move(g.lhs), std::move(g.rhs)};
      goal.site = ++unify_sites_;
    } else if (g.rel == ":=") {
      goal.kind = GoalKind::assign;
      goal.name = ":=";
      goal.args = {std::move(g.lhs), std::move(g.rhs)};
      goal.site = ++builtin_sites_;
    } else {
      throw ParseError("guard test '" + g.rel + "' in body position", at.line, at.column);
    }
    c.body.push_back(std::move(goal));
  }

  // expr := term { ("+"|"-") term }
  Term parse_expr() {
    Term left = parse_mul();
    while (peek().kind == Tok::op && (peek().text == "+" || peek().text == "-")) {
      std::string op = next().text;
      Term right = parse_mul();
      left = Term::functor(op, {std::move(left), std::move(right)});
    }
    return left;
  }

  Term parse_mul() {
    Term left = parse_primary();
    while (peek().kind == Tok::op && (peek().text == "*" || peek().text == "/")) {
      std::string op = next().text;
      Term right = parse_primary();
      left = Term::functor(op, {std::move(left), std::move(right)});
    }
    return left;
  }

  std::vector<Term> parse_args(std::string_view close) {
    std::vector<Term> args;
    if (is_punct(close)) {
      next();
      return args;
    }
    for (;;) {
      args.push_back(parse_expr());
      if (is_punct(",")) {
        next();
        continue;
      }
      expect_punct(close);
      return args;
    }
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::var:
        return Term::variable(next().text);
      case Tok::integer:
        return Term::integer_lit(next().integer);
      case Tok::floating:
        return Term::float_lit(next().floating);
      case Tok::string:
        return Term::string_lit(next().text);
      case Tok::atom: {
        std::string name = next().text;
        if (is_punct("(")) {
          next();
          return Term::functor(std::move(name), parse_args(")"));
        }
        return Term::functor(std::move(name), {});
      }
      case Tok::op:
        if (t.text == "-" && (peek(1).kind == Tok::integer || peek(1).kind == Tok::floating)) {
          next();
          const Token& n = next();
          return n.kind == Tok::integer ? Term::integer_lit(-n.integer) : Term::float_lit(-n.floating);
        }
        fail("unexpected operator '" + t.text + "'");
      case Tok::punct:
        if (t.text == "(") {
          next();
          Term inner = parse_expr();
          expect_punct(")");
          return inner;
        }
        if (t.text == "[") {
          next();
          return parse_list();
        }
        if (t.text == "{") {
          next();
          return Term::vector_of(parse_args("}"));
        }
        fail("unexpected '" + t.text + "'");
      case Tok::end:
        fail("unexpected end of clause");
      case Tok::eof:
        fail("unexpected end of input");
    }
    fail("unexpected token");
  }

  Term parse_list() {
    if (is_punct("]")) {
      next();
      return Term::nil();
    }
    std::vector<Term> elems;
    elems.push_back(parse_expr());
    while (is_punct(",")) {
      next();
      elems.push_back(parse_expr());
    }
    Term tail = Term::nil();
    if (is_punct("|")) {
      next();
      tail = parse_expr();
    }
    expect_punct("]");
    for (auto it = elems.rbegin(); it != elems.rend(); ++it) tail = Term::cons(std::move(*it), std::move(tail));
    return tail;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int unify_sites_ = 0;
  int builtin_sites_ = 0;
};

}  // namespace

Program parse_program(std::string_view text) {
  Lexer lexer(text);
  Parser parser(lexer.run());
  return parser.run();
}

Program parse_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + filename);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_program(ss.str());
}

// ---------------------------------------------------------------------------
// Paths and occurrences

Feature head_feature(const Goal& head, int arg) {
  return Feature{intern(Symbol{SymbolKind::predicate, head.name, static_cast<int>(head.args.size()), 0}), arg};
}

Feature goal_feature(const Goal& goal, int arg) {
  switch (goal.kind) {
    case GoalKind::user:
      return head_feature(goal, arg);
    case GoalKind::unify:
      return Feature{intern(Symbol{SymbolKind::unify, "=", 2, goal.site}), arg};
    case GoalKind::assign:
    case GoalKind::compare:
      return Feature{intern(Symbol{SymbolKind::builtin, goal.name, 2, goal.site}), arg};
  }
  return {};
}

Feature term_feature(const Term& t, int arg) {
  switch (t.kind) {
    case Term::Kind::list:
      return cons_feature(arg);
    case Term::Kind::vector:
      return Feature{intern(Symbol{SymbolKind::functor, "{}", static_cast<int>(t.args.size()), 0}), arg};
    default:
      return Feature{intern(Symbol{SymbolKind::functor, t.name, static_cast<int>(t.args.size()), 0}), arg};
  }
}

std::string VarOccurrence::key() const {
  return anonymous ? "_#" + std::to_string(id) : name;
}

std::vector<int> occurrence_offsets(const Program& p) {
  std::vector<int> offsets;
  offsets.reserve(p.clauses.size() + 1);
  int n = 0;
  for (const auto& c : p.clauses) {
    offsets.push_back(n);
    visit_clause_symbols(c, [&](const SymbolVisit& v) {
      if (v.term->is_variable()) ++n;
    });
  }
  offsets.push_back(n);
  return offsets;
}

namespace {
void collect_occurrences(const Clause& c, int clause, int& next_id, std::vector<VarOccurrence>& out) {
  visit_clause_symbols(c, [&](const SymbolVisit& v) {
    if (!v.term->is_variable()) return;
    VarOccurrence o;
    o.id = next_id++;
    o.clause = clause;
    o.region = v.region;
    o.goal = v.goal;
    o.path = v.path;
    o.name = v.term->name;
    o.anonymous = anonymous_name(v.term->name);
    out.push_back(std::move(o));
  });
}
}  // namespace

std::vector<VarOccurrence> enumerate_occurrences(const Program& p) {
  std::vector<VarOccurrence> out;
  int id = 0;
  for (int i = 0; i < static_cast<int>(p.clauses.size()); ++i) collect_occurrences(p.clauses[i], i, id, out);
  return out;
}

std::vector<VarOccurrence> enumerate_clause_occurrences(const Program& p, int clause) {
  int id = 0;
  for (int i = 0; i < clause; ++i)
    visit_clause_symbols(p.clauses[i], [&](const SymbolVisit& v) {
      if (v.term->is_variable()) ++id;
    });
  std::vector<VarOccurrence> out;
  collect_occurrences(p.clauses.at(clause), clause, id, out);
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

namespace {

template <class F>
void for_each_variable(Term& t, F& f) {
  if (t.is_variable()) {
    f(t);
    return;
  }
  for (auto& a : t.args) for_each_variable(a, f);
}

template <class F>
void for_each_variable(Clause& c, F&& f) {
  for (auto& a : c.head.args) for_each_variable(a, f);
  for (auto& g : c.guard)
    for (auto& a : g.args) for_each_variable(a, f);
  for (auto& g : c.body)
    for (auto& a : g.args) for_each_variable(a, f);
}

bool legal_variable_name(std::string_view n) {
  if (n.empty()) return false;
  if (!(std::isupper(static_cast<unsigned char>(n[0])) || n[0] == '_')) return false;
  return std::all_of(n.begin(), n.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

Program rewrite_occurrences(const Program& p, const std::map<int, Replacement>& plan) {
  Program out = p;
  if (plan.empty()) return out;
  auto offsets = occurrence_offsets(p);
  if (plan.begin()->first < 0 || plan.rbegin()->first >= offsets.back())
    throw RewriteError("unknown occurrence id");
  for (const auto& [id, r] : plan)
    if (!legal_variable_name(r.name) || anonymous_name(r.name))
      throw RewriteError("illegal variable name '" + r.name + "'");

  for (std::size_t ci = 0; ci < out.clauses.size(); ++ci) {
    int lo = offsets[ci], hi = offsets[ci + 1];
    auto first = plan.lower_bound(lo);
    if (first == plan.end() || first->first >= hi) continue;
    auto& clause = out.clauses[ci];

    std::set<std::string> rewritten_fresh;
    for (auto it = first; it != plan.end() && it->first < hi; ++it)
      if (it->second.fresh) rewritten_fresh.insert(it->second.name);
    if (!rewritten_fresh.empty()) {
      int id = lo;
      for_each_variable(clause, [&](Term& t) {
        bool replaced = plan.count(id++) > 0;
        if (!replaced && rewritten_fresh.count(t.name))
          throw RewriteError("fresh variable '" + t.name + "' collides with an existing variable");
      });
    }
    int id = lo;
    for_each_variable(clause, [&](Term& t) {
      if (auto it = plan.find(id); it != plan.end()) t.name = it->second.name;
      ++id;
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int operator_precedence(const Term& t) {
  if (!is_arithmetic_operator(t)) return 0;
  return (t.name == "+" || t.name == "-") ? 500 : 400;
}

bool plain_atom(std::string_view n) {
  if (n.empty() || !std::islower(static_cast<unsigned char>(n[0]))) return n == "[]";
  return std::all_of(n.begin(), n.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void render_to(const Term& t, std::string& out);

void render_operand(const Term& t, int limit, std::string& out) {
  int prec = operator_precedence(t);
  bool negative_literal = (t.kind == Term::Kind::integer && t.integer < 0) ||
                          (t.kind == Term::Kind::floating && t.floating < 0);
  bool paren = (prec != 0 && prec > limit) || negative_literal;
  if (paren) out += '(';
  render_to(t, out);
  if (paren) out += ')';
}

std::string render_float(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

void render_to(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::variable:
      out += t.name;
      return;
    case Term::Kind::integer:
      out += std::to_string(t.integer);
      return;
    case Term::Kind::floating:
      out += render_float(t.floating);
      return;
    case Term::Kind::string:
      out += '"';
      for (char c : t.name) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        out += c;
      }
      out += '"';
      return;
    case Term::Kind::nil:
      out += "[]";
      return;
    case Term::Kind::list: {
      out += '[';
      const Term* cell = &t;
      bool first = true;
      while (cell->kind == Term::Kind::list) {
        if (!first) out += ',';
        first = false;
        render_to(cell->args[0], out);
        cell = &cell->args[1];
      }
      if (cell->kind != Term::Kind::nil) {
        out += '|';
        render_to(*cell, out);
      }
      out += ']';
      return;
    }
    case Term::Kind::vector:
      out += '{';
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ',';
        render_to(t.args[i], out);
      }
      out += '}';
      return;
    case Term::Kind::functor:
      if (is_arithmetic_operator(t)) {
        int prec = operator_precedence(t);
        render_operand(t.args[0], prec, out);
        out += t.name;
        render_operand(t.args[1], prec - 1, out);
        return;
      }
      if (plain_atom(t.name)) {
        out += t.name;
      } else {
        out += '\'';
        for (char c : t.name) {
          if (c == '\'' || c == '\\') out += '\\';
          out += c;
        }
        out += '\'';
      }
      if (!t.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < t.args.size(); ++i) {
          if (i) out += ',';
          render_to(t.args[i], out);
        }
        out += ')';
      }
      return;
  }
}

}  // namespace

std::string render_term(const Term& t) {
  std::string out;
  render_to(t, out);
  return out;
}

std::string render_goal(const Goal& g) {
  if (g.kind == GoalKind::user) {
    return render_term(Term::functor(g.name, g.args));
  }
  return render_term(g.args[0]) + g.name + render_term(g.args[1]);
}

namespace {
std::string render_goals(const std::vector<Goal>& goals) {
  if (goals.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (i) out += ',';
    out += render_goal(goals[i]);
  }
  return out;
}
}  // namespace

std::string render_clause(const Clause& c) {
  return render_goal(c.head) + ":-" + render_goals(c.guard) + "|" + render_goals(c.body);
}

std::string render_program(const Program& p) {
  std::string out;
  if (!p.module_name.empty()) out += ":- module " + p.module_name + ".\n";
  for (const auto& c : p.clauses) out += render_clause(c) + ".\n";
  return out;
}

std::string clause_location(const Program& p, int clause) {
  const auto& c = p.clauses.at(clause);
  std::string out;
  if (!p.module_name.empty()) out += p.module_name + ":";
  out += c.predicate_key() + ", clause No." + std::to_string(c.number);
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence

std::string canonical_clause(const Clause& c) {
  std::vector<std::size_t> unify_goals;
  for (std::size_t i = 0; i < c.body.size(); ++i)
    if (c.body[i].kind == GoalKind::unify) unify_goals.push_back(i);

  std::string best;
  const std::size_t masks = std::size_t{1} << unify_goals.size();
  for (std::size_t mask = 0; mask < masks; ++mask) {
    Clause v = c;
    for (std::size_t j = 0; j < unify_goals.size(); ++j)
      if (mask & (std::size_t{1} << j)) std::swap(v.body[unify_goals[j]].args[0], v.body[unify_goals[j]].args[1]);
    std::map<std::string, std::string> names;
    int fresh = 0;
    for_each_variable(v, [&](Term& t) {
      if (anonymous_name(t.name)) {
        t.name = "V" + std::to_string(++fresh);
        return;
      }
      auto [it, inserted] = names.emplace(t.name, std::string());
      if (inserted) it->second = "V" + std::to_string(++fresh);
      t.name = it->second;
    });
    // unification ordinals are not part of the text
    std::string text = render_clause(v);
    if (mask == 0 || text < best) best = std::move(text);
  }
  return best;
}

bool equivalent_programs(const Program& a, const Program& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    if (a.clauses[i].predicate_key() != b.clauses[i].predicate_key()) return false;
    if (canonical_clause(a.clauses[i]) != canonical_clause(b.clauses[i])) return false;
  }
  return true;
}

}  // namespace ghcfix
