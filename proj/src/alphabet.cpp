#include "rts/alphabet.hpp"

#include <array>
#include <cctype>

namespace rts {

namespace {

constexpr std::array<std::string_view, 7> kReserved = {
    "semiring", "alphabet", "params", "desc", "final", "end", "inf",
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool variable_shaped(std::string_view name) {
    if (name.size() < 2 || name.front() != 'x') return false;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

}  // namespace

bool Alphabet::valid_name(std::string_view name) {
    if (name.empty() || !is_ident_start(name.front())) return false;
    for (char c : name)
        if (!is_ident_char(c)) return false;
    if (variable_shaped(name)) return false;
    for (auto r : kReserved)
        if (name == r) return false;
    return true;
}

void Alphabet::check_fresh(const std::string& name) const {
    if (!valid_name(name)) throw Error("invalid name '" + name + "'");
    if (find_symbol(name) || find_param(name))
        throw Error("name '" + name + "' already declared");
}

SymbolId Alphabet::add_symbol(std::string name, int rank) {
    check_fresh(name);
    if (rank < 0) throw Error("symbol rank must be non-negative");
    symbols_.push_back({std::move(name), rank});
    return static_cast<SymbolId>(symbols_.size() - 1);
}

ParamId Alphabet::add_param(std::string name) {
    check_fresh(name);
    params_.push_back(std::move(name));
    return static_cast<ParamId>(params_.size() - 1);
}

std::optional<SymbolId> Alphabet::find_symbol(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return static_cast<SymbolId>(i);
    return std::nullopt;
}

std::optional<ParamId> Alphabet::find_param(std::string_view name) const {
    for (std::size_t i = 0; i < params_.size(); ++i)
        if (params_[i] == name) return static_cast<ParamId>(i);
    return std::nullopt;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.symbols_ == b.symbols_ && a.params_ == b.params_;
}

}  // namespace rts
