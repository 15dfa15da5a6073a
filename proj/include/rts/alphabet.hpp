#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rts/errors.hpp"

namespace rts {

using SymbolId = int;
using ParamId = int;

/// A ranked alphabet plus a parameter alphabet. Symbol and parameter names
/// share one namespace, must be identifiers, and may not look like variables
/// (x1, x2, ...). Declaration order is the canonical order used everywhere
/// for printing and monomial comparison.
class Alphabet {
public:
    Alphabet() = default;

    SymbolId add_symbol(std::string name, int rank);
    ParamId add_param(std::string name);

    int num_symbols() const { return static_cast<int>(symbols_.size()); }
    int num_params() const { return static_cast<int>(params_.size()); }

    int rank(SymbolId id) const { return symbols_.at(id).rank; }
    const std::string& symbol_name(SymbolId id) const { return symbols_.at(id).name; }
    const std::string& param_name(ParamId id) const { return params_.at(id); }

    std::optional<SymbolId> find_symbol(std::string_view name) const;
    std::optional<ParamId> find_param(std::string_view name) const;

    /// True for well-formed names: identifier syntax, not reserved, not
    /// variable-shaped.
    static bool valid_name(std::string_view name);

    friend bool operator==(const Alphabet& a, const Alphabet& b);
    friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

private:
    struct Symbol {
        std::string name;
        int rank;
        friend bool operator==(const Symbol&, const Symbol&) = default;
    };
    void check_fresh(const std::string& name) const;

    std::vector<Symbol> symbols_;
    std::vector<std::string> params_;
};

/// Alphabets are built once and then shared immutably.
using AlphabetRef = std::shared_ptr<const Alphabet>;

}  // namespace rts
