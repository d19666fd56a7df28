#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace stkit {

// An interned label. Equal display strings always intern to the same id
// within one table.
struct Symbol {
    uint32_t id = UINT32_MAX;

    bool valid() const { return id != UINT32_MAX; }
    friend bool operator==(Symbol a, Symbol b) { return a.id == b.id; }
    friend bool operator!=(Symbol a, Symbol b) { return a.id != b.id; }
    friend bool operator<(Symbol a, Symbol b) { return a.id < b.id; }
};

// Interning table. Concurrent reads are lock-free with respect to each
// other; inserts are serialized. Display strings may not contain spaces
// or '*' so that polynomial text serialization stays parseable.
class SymbolTable {
public:
    Symbol intern(const std::string& display);
    std::optional<Symbol> find(const std::string& display) const;
    const std::string& display(Symbol s) const;
    uint32_t size() const;

private:
    mutable std::shared_mutex mutex_;
    std::deque<std::string> displays_;
    std::unordered_map<std::string_view, uint32_t> ids_;
};

using SymbolTablePtr = std::shared_ptr<SymbolTable>;

inline SymbolTablePtr make_symbol_table() { return std::make_shared<SymbolTable>(); }

}  // namespace stkit
