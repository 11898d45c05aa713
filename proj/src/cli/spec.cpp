#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "fk/cli.hpp"
#include "fk/core.hpp"

namespace fk::cli {

namespace {

struct Token {
  enum class Type { Ident, Int, Sym, End };
  Type type = Type::End;
  std::string text;
  int line = 1, col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '-' || s[j] == '\''))
        ++j;
      t.type = Token::Type::Ident;
      t.text = s.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      std::size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.type = Token::Type::Int;
      t.text = s.substr(i, j - i);
      advance(j - i);
    } else if (std::string("{}[]()=;,/").find(c) != std::string::npos) {
      t.type = Token::Type::Sym;
      t.text = std::string(1, c);
      advance(1);
    } else {
      fail_at(line, col, std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  SpecDocument document() {
    SpecDocument d;
    while (peek().type != Token::Type::End) d.blocks.push_back(block());
    return d;
  }

 private:
  std::vector<Token> t_;
  std::size_t p_ = 0;

  const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  const Token& next() { return t_[std::min(p_++, t_.size() - 1)]; }
  bool is_sym(const Token& t, const char* s) const { return t.type == Token::Type::Sym && t.text == s; }
  const Token& expect_sym(const char* s) {
    const Token& t = peek();
    if (!is_sym(t, s)) fail_at(t.line, t.col, std::string("expected '") + s + "'" + found(t));
    return next();
  }
  static std::string found(const Token& t) {
    if (t.type == Token::Type::End) return ", found end of input";
    return ", found '" + t.text + "'";
  }
  const Token& expect_ident(const char* what) {
    const Token& t = peek();
    if (t.type != Token::Type::Ident) fail_at(t.line, t.col, std::string("expected ") + what + found(t));
    return next();
  }

  Block block() {
    const Token& k = expect_ident("a block kind");
    Block b;
    b.kind = k.text;
    b.line = k.line;
    b.col = k.col;
    b.name = expect_ident("a block name").text;
    expect_sym("{");
    b.stmts = statements();
    expect_sym("}");
    return b;
  }

  std::vector<Stmt> statements() {
    std::vector<Stmt> out;
    while (true) {
      const Token& t = peek();
      if (is_sym(t, ";")) {
        next();
        continue;
      }
      if (is_sym(t, "}") || t.type == Token::Type::End) break;
      out.push_back(statement());
    }
    return out;
  }

  Stmt statement() {
    const Token& k = expect_ident("a statement key");
    Stmt s;
    s.key = k.text;
    s.line = k.line;
    s.col = k.col;
    const Token& t = peek();
    if (is_sym(t, "=")) {
      next();
      s.assign = true;
      s.has_value = true;
      s.value = value();
    } else if (is_sym(t, "{")) {
      next();
      s.has_block = true;
      s.children = statements();
      expect_sym("}");
    } else if (t.line == k.line && starts_value(t)) {
      s.has_value = true;
      s.value = value();
    }
    return s;
  }

  bool starts_value(const Token& t) const {
    if (t.type == Token::Type::Int) return true;
    if (is_sym(t, "(") || is_sym(t, "[")) return true;
    // A bare name value must not itself start a key=value statement.
    if (t.type == Token::Type::Ident) return !is_sym(peek(1), "=") && !is_sym(peek(1), "{");
    return false;
  }

  std::string perm_text(int key_line) {
    std::string out;
    while (is_sym(peek(), "(") && (out.empty() || peek().line == key_line)) {
      next();
      std::string cyc = "(";
      bool first = true;
      while (peek().type == Token::Type::Int) {
        if (!first) cyc += " ";
        cyc += next().text;
        first = false;
      }
      expect_sym(")");
      out += cyc + ")";
    }
    return out;
  }

  std::string rational_text() {
    const Token& a = peek();
    if (a.type != Token::Type::Int) fail_at(a.line, a.col, "expected an integer" + found(a));
    std::string s = next().text;
    if (is_sym(peek(), "/")) {
      next();
      const Token& b = peek();
      if (b.type != Token::Type::Int || b.text[0] == '-') fail_at(b.line, b.col, "expected a positive denominator");
      s += "/" + next().text;
    }
    return s;
  }

  Value value() {
    const Token& t = peek();
    Value v;
    v.line = t.line;
    v.col = t.col;
    if (is_sym(t, "[")) {
      next();
      v.kind = Value::Kind::List;
      if (!is_sym(peek(), "]")) {
        v.items.push_back(value());
        while (is_sym(peek(), ",")) {
          next();
          v.items.push_back(value());
        }
      }
      expect_sym("]");
      return v;
    }
    if (is_sym(t, "(")) {
      v.kind = Value::Kind::Perm;
      v.text = perm_text(t.line);
      return v;
    }
    if (t.type == Token::Type::Int) {
      std::string r = rational_text();
      v.kind = r.find('/') == std::string::npos ? Value::Kind::Int : Value::Kind::Rational;
      v.text = r;
      return v;
    }
    if (t.type == Token::Type::Ident) {
      next();
      if (t.text == "t" && is_sym(peek(), "(")) {
        int line = t.line;
        next();
        std::string s = "t(" + rational_text();
        while (is_sym(peek(), ",")) {
          next();
          s += "," + rational_text();
        }
        expect_sym(")");
        s += ")";
        if (is_sym(peek(), "(") && peek().line == line) s += perm_text(line);
        v.kind = Value::Kind::Elt;
        v.text = s;
        return v;
      }
      v.kind = Value::Kind::Name;
      v.text = t.text;
      return v;
    }
    fail_at(t.line, t.col, "expected a value" + found(t));
  }
};

// Allowed statements per block kind: key -> expected value shape.
enum class Shape { Name, Int, Perm, List, Flag, Block, NameOrList };

const std::map<std::string, std::map<std::string, Shape>>& schema() {
  static const std::map<std::string, std::map<std::string, Shape>> s{
      {"group", {{"perm", Shape::Perm}, {"degree", Shape::Int}}},
      {"ptoral", {{"p", Shape::Int}, {"rank", Shape::Int}, {"pi", Shape::List}, {"act", Shape::List}, {"degree", Shape::Int}}},
      {"fusion",
       {{"ambient", Shape::Name}, {"sylow", Shape::Name}, {"over", Shape::Name}, {"p", Shape::Int}, {"W", Shape::List},
        {"morphism", Shape::Block}, {"conjugation", Shape::Name}}},
      {"family", {{"over", Shape::Name}, {"all", Shape::Flag}, {"sub", Shape::NameOrList}}},
      {"pair", {{"ambient", Shape::Name}, {"normal", Shape::Name}, {"p", Shape::Int}}},
  };
  return s;
}

const std::map<std::string, Shape>& morphism_schema() {
  static const std::map<std::string, Shape> s{
      {"src", Shape::List}, {"img", Shape::List}, {"dst", Shape::List}, {"src_div", Shape::List}, {"L", Shape::List}};
  return s;
}

const std::map<std::string, Shape>& sub_schema() {
  static const std::map<std::string, Shape> s{{"gens", Shape::List}, {"div", Shape::List}};
  return s;
}

void check_shape(const Stmt& st, Shape sh, const std::map<std::string, Shape>* children) {
  auto bad = [&](const char* what) { fail_at(st.line, st.col, "'" + st.key + "' expects " + what); };
  switch (sh) {
    case Shape::Name:
      if (!st.has_value || st.value.kind != Value::Kind::Name) bad("a name");
      break;
    case Shape::Int:
      if (!st.has_value || st.value.kind != Value::Kind::Int) bad("an integer");
      break;
    case Shape::Perm:
      if (!st.has_value || st.value.kind != Value::Kind::Perm) bad("a permutation");
      break;
    case Shape::List:
      if (!st.has_value || st.value.kind != Value::Kind::List) bad("a list");
      break;
    case Shape::Flag:
      if (st.has_value || st.has_block) bad("no value");
      break;
    case Shape::Block:
      if (!st.has_block) bad("a { } block");
      break;
    case Shape::NameOrList:
      if (st.has_block) {
        for (const Stmt& c : st.children) {
          auto it = sub_schema().find(c.key);
          if (it == sub_schema().end()) fail_at(c.line, c.col, "unknown key '" + c.key + "' in " + st.key);
          check_shape(c, it->second, nullptr);
        }
      } else if (!st.has_value || (st.value.kind != Value::Kind::Name && st.value.kind != Value::Kind::List)) {
        bad("a name, a list of generators or a { } block");
      }
      break;
  }
  if (sh == Shape::Block && children)
    for (const Stmt& c : st.children) {
      auto it = children->find(c.key);
      if (it == children->end()) fail_at(c.line, c.col, "unknown key '" + c.key + "' in " + st.key);
      check_shape(c, it->second, nullptr);
    }
}

void resolve(const SpecDocument& d) {
  std::map<std::string, const Block*> names;
  for (const Block& b : d.blocks) {
    auto it = schema().find(b.kind);
    if (it == schema().end()) fail_at(b.line, b.col, "unknown block kind '" + b.kind + "'");
    if (names.count(b.name)) fail_at(b.line, b.col, "duplicate name '" + b.name + "'");
    names[b.name] = &b;
    for (const Stmt& st : b.stmts) {
      auto k = it->second.find(st.key);
      if (k == it->second.end()) fail_at(st.line, st.col, "unknown key '" + st.key + "' in " + b.kind + " block");
      check_shape(st, k->second, st.key == "morphism" ? &morphism_schema() : nullptr);
    }
  }
  // References point at earlier or later blocks of the right kind; kinds only reference
  // lower kinds, so there are no cycles.
  auto ref = [&](const Block& b, const char* key, std::set<std::string> kinds) {
    for (const Stmt& st : b.stmts) {
      if (st.key != key) continue;
      auto it = names.find(st.value.text);
      if (it == names.end()) fail_at(st.value.line, st.value.col, "undefined reference '" + st.value.text + "'");
      if (!kinds.count(it->second->kind))
        fail_at(st.value.line, st.value.col, "'" + st.value.text + "' is a " + it->second->kind + " block");
    }
  };
  auto require = [&](const Block& b, const char* key) {
    if (!b.find(key)) fail_at(b.line, b.col, b.kind + " '" + b.name + "' needs '" + key + "'");
  };
  for (const Block& b : d.blocks) {
    if (b.kind == "fusion") {
      ref(b, "ambient", {"group"});
      ref(b, "sylow", {"group"});
      ref(b, "over", {"group", "ptoral"});
      if (b.find("ambient") && b.find("over")) fail_at(b.line, b.col, "fusion block has both 'ambient' and 'over'");
      if (!b.find("ambient") && !b.find("over")) fail_at(b.line, b.col, "fusion block needs 'ambient' or 'over'");
      if (b.find("ambient")) require(b, "p");
    } else if (b.kind == "family") {
      require(b, "over");
      ref(b, "over", {"fusion"});
    } else if (b.kind == "pair") {
      require(b, "ambient");
      require(b, "normal");
      require(b, "p");
      ref(b, "ambient", {"group"});
      ref(b, "normal", {"group"});
    } else if (b.kind == "ptoral") {
      require(b, "p");
      require(b, "rank");
      require(b, "pi");
    }
  }
}

void render_value(std::ostream& os, const Value& v) {
  if (v.kind != Value::Kind::List) {
    os << v.text;
    return;
  }
  os << "[";
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    if (i) os << ", ";
    render_value(os, v.items[i]);
  }
  os << "]";
}

void render_stmts(std::ostream& os, const std::vector<Stmt>& stmts, int indent) {
  for (const Stmt& s : stmts) {
    os << std::string(indent, ' ') << s.key;
    if (s.has_value) {
      os << (s.assign ? "=" : " ");
      render_value(os, s.value);
    }
    if (s.has_block) {
      os << " {\n";
      render_stmts(os, s.children, indent + 2);
      os << std::string(indent, ' ') << "}";
    }
    os << "\n";
  }
}

}  // namespace

const Stmt* Block::find(const std::string& key) const {
  for (const Stmt& s : stmts)
    if (s.key == key) return &s;
  return nullptr;
}

const Block* SpecDocument::find(const std::string& name) const {
  for (const Block& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

std::vector<const Block*> SpecDocument::of_kind(const std::string& kind) const {
  std::vector<const Block*> out;
  for (const Block& b : blocks)
    if (b.kind == kind) out.push_back(&b);
  return out;
}

SpecDocument parse_spec(const std::string& text) {
  SpecDocument d = Parser(tokenize(text)).document();
  resolve(d);
  return d;
}

std::string render_spec(const SpecDocument& doc) {
  std::ostringstream os;
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    const Block& b = doc.blocks[i];
    if (i) os << "\n";
    os << b.kind << " " << b.name << " {\n";
    render_stmts(os, b.stmts, 2);
    os << "}\n";
  }
  return os.str();
}

}  // namespace fk::cli
