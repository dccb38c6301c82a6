#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ghcfix {

enum class SymbolKind : std::uint8_t {
  predicate,  // user predicate p/n
  unify,      // body unification goal =_k
  builtin,    // guard test or :=, one symbol per call site
  functor,    // function symbol f/n (including constants, "." and "{}")
};

/// A predicate or function symbol that can label one step of a path.
struct Symbol {
  SymbolKind kind = SymbolKind::functor;
  std::string name;
  int arity = 0;
  int site = 0;  // ordinal k of =_k, or builtin call-site ordinal

  auto operator<=>(const Symbol&) const = default;
};

using SymbolId = std::uint32_t;

/// Interns a symbol in the process-wide table (thread-safe).
SymbolId intern(const Symbol& s);
/// Looks up an interned symbol. The reference stays valid for the process lifetime.
const Symbol& symbol_of(SymbolId id);

/// One ⟨symbol, argpos⟩ pair. argpos is 1-based.
struct Feature {
  SymbolId symbol = 0;
  int arg = 0;

  auto operator<=>(const Feature&) const = default;
};

/// A string of features. The first feature of an atom path is a predicate
/// (or unification/builtin) pair; the rest are function-symbol pairs.
using Path = std::vector<Feature>;

Path extend(Path p, Feature f);

/// Interned list-constructor feature ⟨.,i⟩.
Feature cons_feature(int arg);

enum class PathStyle {
  unicode,  // ⟨fib,4⟩⟨.,1⟩, used by constraint dumps
  ascii,    // <(test:append)/3,1><cons,2>, used by MIS listings
};

std::string format_path(const Path& p, PathStyle style, std::string_view module = {});

/// Lexicographic order on rendered feature names, used for stable listings.
bool path_display_less(const Path& a, const Path& b);

}  // namespace ghcfix
