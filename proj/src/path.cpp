#include "ghcfix/path.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace ghcfix {

namespace {

struct SymbolTable {
  std::shared_mutex mutex;
  std::map<Symbol, SymbolId> ids;
  std::deque<Symbol> symbols;  // deque keeps references stable
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::string feature_name(const Symbol& s, PathStyle style, std::string_view module) {
  switch (s.kind) {
    case SymbolKind::predicate:
      if (style == PathStyle::ascii) {
        std::string out = "(";
        if (!module.empty()) {
          out += module;
          out += ':';
        }
        out += s.name;
        out += ")/";
        out += std::to_string(s.arity);
        return out;
      }
      return s.name;
    case SymbolKind::unify:
      return "=_" + std::to_string(s.site);
    case SymbolKind::builtin:
      return s.name;
    case SymbolKind::functor:
      if (s.name == "." && s.arity == 2) return style == PathStyle::ascii ? "cons" : ".";
      if (style == PathStyle::ascii && s.name != "{}") return s.name + "/" + std::to_string(s.arity);
      return s.name;
  }
  return s.name;
}

}  // namespace

SymbolId intern(const Symbol& s) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.ids.find(s); it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.ids.find(s); it != t.ids.end()) return it->second;
  auto id = static_cast<SymbolId>(t.symbols.size());
  t.symbols.push_back(s);
  t.ids.emplace(s, id);
  return id;
}

const Symbol& symbol_of(SymbolId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.symbols.at(id);
}

Path extend(Path p, Feature f) {
  p.push_back(f);
  return p;
}

Feature cons_feature(int arg) {
  static const SymbolId cons = intern(Symbol{SymbolKind::functor, ".", 2, 0});
  return Feature{cons, arg};
}

std::string format_path(const Path& p, PathStyle style, std::string_view module) {
  std::string out;
  for (const auto& f : p) {
    const auto& s = symbol_of(f.symbol);
    out += style == PathStyle::unicode ? "⟨" : "<";
    out += feature_name(s, style, module);
    out += ',';
    out += std::to_string(f.arg);
    out += style == PathStyle::unicode ? "⟩" : ">";
  }
  return out;
}

bool path_display_less(const Path& a, const Path& b) {
  auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    const auto& sa = symbol_of(a[i].symbol);
    const auto& sb = symbol_of(b[i].symbol);
    if (sa.name != sb.name) return sa.name < sb.name;
    if (sa.site != sb.site) return sa.site < sb.site;
    if (sa.arity != sb.arity) return sa.arity < sb.arity;
    if (a[i].arg != b[i].arg) return a[i].arg < b[i].arg;
    return a[i].symbol < b[i].symbol;
  }
  return a.size() < b.size();
}

}  // namespace ghcfix
