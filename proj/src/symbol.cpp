#include "adeq/symbol.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <utility>

namespace adeq {
namespace {

struct Registry {
  std::mutex mutex;
  std::deque<Symbol> storage;
  std::map<std::pair<SymbolKind, std::string>, const Symbol*, std::less<>> index;

  const Symbol* intern(Symbol s) {
    std::lock_guard lock(mutex);
    auto key = std::make_pair(s.kind, s.key);
    if (auto it = index.find(key); it != index.end()) return it->second;
    storage.push_back(std::move(s));
    const Symbol* p = &storage.back();
    index.emplace(std::move(key), p);
    return p;
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

std::string jet_key(std::string_view function, unsigned order) {
  std::string key(function);
  key.append(order, '\'');
  return key;
}

const Symbol* constant_symbol(std::string_view key) {
  Symbol s{SymbolKind::Constant, std::string(key), std::string(key), {}, 0};
  if (key == "exp(1)") s.name = "E";
  return registry().intern(std::move(s));
}

const Symbol* variable_symbol() {
  static const Symbol* z = registry().intern(Symbol{SymbolKind::Variable, "z", "z", {}, 0});
  return z;
}

const Symbol* pi_symbol() {
  static const Symbol* pi = constant_symbol("pi");
  return pi;
}

const Symbol* jet_symbol(std::string_view function, unsigned order) {
  std::string key = jet_key(function, order);
  return registry().intern(Symbol{SymbolKind::Jet, key, key, std::string(function), order});
}

bool symbol_less(const Symbol* a, const Symbol* b) {
  if (a == b) return false;
  if (a->kind != b->kind) return static_cast<int>(a->kind) < static_cast<int>(b->kind);
  return a->key < b->key;
}

}  // namespace adeq
