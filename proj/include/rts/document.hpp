#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rts/description.hpp"
#include "rts/simulation.hpp"

namespace rts {

/// A parsed description file: semiring header, alphabet, parameters and a
/// list of named descriptions, in file order. Lines starting with '#' and
/// blank lines are ignored on input; printing is canonical.
struct Document {
    Semiring ring;
    AlphabetRef alphabet;
    std::vector<std::pair<std::string, Description>> descriptions;

    const Description& find(std::string_view name) const;
    bool has(std::string_view name) const;
};

/// Parses the line-oriented document grammar:
///
///   semiring nat | bool | int | zmod <m> | tropical
///   alphabet <name>/<rank> ...
///   params <name> ...
///   desc <name>
///     final <k1> ... <kn>
///     x1 = <term>
///     ...
///     xn = <term>
///   end
///
/// Rejects syntax errors (with line/column), arity violations and unguarded
/// systems (naming the bare variable).
Document parse_document(std::string_view text);

/// Canonical form; parse_document is its inverse on canonical documents.
std::string print_document(const Document& doc);

/// One term in the expression grammar; num_vars bounds the usable variable
/// indices (pass 0 for ground terms).
Term parse_term(std::string_view text, const AlphabetRef& alphabet, const Semiring& ring,
                int num_vars);

/// Tree literals: the term grammar without variables, sums, scalars and 0.
Tree parse_tree(std::string_view text, const AlphabetRef& alphabet);

/// Matrix files: a "rows cols" line, then rows of whitespace-separated
/// semiring literals.
Matrix parse_matrix(std::string_view text, const Semiring& ring);
std::string print_matrix(const Matrix& m);

}  // namespace rts
