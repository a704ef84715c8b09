#ifndef QTEL_SYMBOLS_HPP
#define QTEL_SYMBOLS_HPP

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qtel/errors.hpp"

namespace qtel {

using SymId = int;

/// Process-global, append-only symbol table. Symbol 0 is always "q"; the
/// interning order fixes the monomial order (lexicographic, q first).
class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  SymId intern(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    SymId id = static_cast<SymId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
  }

  std::optional<SymId> find(const std::string& name) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::string name(SymId id) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (id < 0 || id >= static_cast<SymId>(names_.size()))
      fail(ErrorKind::Internal, "unknown symbol id");
    return names_[id];
  }

  size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return names_.size();
  }

 private:
  SymbolTable() {
    names_.push_back("q");
    index_.emplace("q", 0);
  }

  mutable std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, SymId> index_;
};

inline SymId sym(const std::string& name) {
  return SymbolTable::instance().intern(name);
}

inline SymId sym_q() { return 0; }

inline std::string sym_name(SymId id) {
  return SymbolTable::instance().name(id);
}

}  // namespace qtel

#endif
