#include "stkit/symbol.hpp"

#include <stdexcept>

namespace stkit {

Symbol SymbolTable::intern(const std::string& display) {
    if (display.empty()) throw std::invalid_argument("symbol display must be nonempty");
    for (char c : display) {
        if (c == ' ' || c == '*' || c == '\t' || c == '\n')
            throw std::invalid_argument("symbol display may not contain spaces or '*': " + display);
    }
    {
        std::shared_lock lock(mutex_);
        auto it = ids_.find(std::string_view(display));
        if (it != ids_.end()) return Symbol{it->second};
    }
    std::unique_lock lock(mutex_);
    auto it = ids_.find(std::string_view(display));
    if (it != ids_.end()) return Symbol{it->second};
    uint32_t id = static_cast<uint32_t>(displays_.size());
    displays_.push_back(display);
    ids_.emplace(std::string_view(displays_.back()), id);
    return Symbol{id};
}

std::optional<Symbol> SymbolTable::find(const std::string& display) const {
    std::shared_lock lock(mutex_);
    auto it = ids_.find(std::string_view(display));
    if (it == ids_.end()) return std::nullopt;
    return Symbol{it->second};
}

const std::string& SymbolTable::display(Symbol s) const {
    std::shared_lock lock(mutex_);
    if (!s.valid() || s.id >= displays_.size())
        throw std::out_of_range("unknown symbol id");
    return displays_[s.id];
}

uint32_t SymbolTable::size() const {
    std::shared_lock lock(mutex_);
    return static_cast<uint32_t>(displays_.size());
}

}  // namespace stkit
