#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace fk::cli {

// Spec text format, line oriented:
//
//   # comment
//   group S4 { perm (1 2 3 4); perm (1 2) }
//   ptoral Dinf { p=2 rank=1 pi=[(1 2)] act=[[-1]] }
//   fusion F { ambient=S4 sylow=D8 p=2 }
//   fusion Z9F { over=Z9 p=3 morphism { src=[(1 4 7)(2 5 8)(3 6 9)] img=[(1 7 4)(2 8 5)(3 9 6)] } }
//   family fam { over=F; all }
//   pair P { ambient=S4 normal=A4 p=2 }
//
// A statement is `key=value`, `key value` (value on the same line), `key { ... }` or a bare
// `key`. Values: names, integers, rationals a/b, permutations in cycle notation, torus
// elements t(a/b, ...) optionally followed by a permutation, and [lists].
struct Value {
  enum class Kind { Name, Int, Rational, Perm, Elt, List };
  Kind kind = Kind::Name;
  std::string text;           // canonical text for scalars
  std::vector<Value> items;   // List
  int line = 0, col = 0;

  bool operator==(const Value& o) const { return kind == o.kind && text == o.text && items == o.items; }
};

struct Stmt {
  std::string key;
  bool assign = false;   // written key=value
  bool has_value = false;
  Value value;
  bool has_block = false;
  std::vector<Stmt> children;
  int line = 0, col = 0;

  bool operator==(const Stmt& o) const {
    return key == o.key && assign == o.assign && has_value == o.has_value && (!has_value || value == o.value) &&
           has_block == o.has_block && children == o.children;
  }
};

struct Block {
  std::string kind, name;
  std::vector<Stmt> stmts;
  int line = 0, col = 0;

  bool operator==(const Block& o) const { return kind == o.kind && name == o.name && stmts == o.stmts; }
  const Stmt* find(const std::string& key) const;  // first statement with that key
};

struct SpecDocument {
  std::vector<Block> blocks;

  bool operator==(const SpecDocument& o) const { return blocks == o.blocks; }
  const Block* find(const std::string& name) const;
  std::vector<const Block*> of_kind(const std::string& kind) const;
};

// Parses and resolves references. InputError "line L, column C: ..." on failure.
SpecDocument parse_spec(const std::string& text);
std::string render_spec(const SpecDocument& doc);

struct Options {
  std::string command;
  std::string spec_path;             // for the echo only
  std::string family;                // family block name, or empty
  int truncation = 4;
  std::uint64_t seed = 1;
  std::vector<std::string> what;     // dump selection
  std::string out_dir = ".";         // dump target
};

struct Report {
  int exit_code = 0;                 // 0 ok, 1 violation
  nlohmann::ordered_json json;
  std::string table;
};

inline constexpr const char* kSchema = "fusionkit.report/1";
const std::vector<std::string>& commands();

// Runs a command over the document. InputError and BoundExceeded propagate.
Report run_report(const SpecDocument& doc, const std::string& spec_text, const Options& opt);

// Whole command line: parses arguments, reads the spec, prints the table, writes --json.
// Returns the process exit code (2 input error, 3 bound exceeded).
int main_cli(int argc, char** argv);

}  // namespace fk::cli
