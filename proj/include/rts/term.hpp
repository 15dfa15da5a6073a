#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rts/alphabet.hpp"
#include "rts/semiring.hpp"
#include "rts/tree.hpp"

namespace rts {

/// Abstract syntax of semiring-weighted terms over variables x1..xn and
/// parameters:
///
///   t ::= xi | a | 0 | t + t | k * t | sigma(t, ..., t)
///
/// Variables are 0-based indices internally and print 1-based. Terms are
/// immutable; building them never normalizes.
class Term {
public:
    enum class Kind { zero, var, param, sum, scale, apply };

    static Term zero(AlphabetRef alphabet);
    static Term var(AlphabetRef alphabet, int index);
    static Term param(AlphabetRef alphabet, ParamId param);
    static Term scale(Value coeff, Term t);
    static Term apply(AlphabetRef alphabet, SymbolId symbol, std::vector<Term> children);

    friend Term operator+(Term a, Term b);

    Kind kind() const { return node_->kind; }
    int var_index() const { return node_->id; }
    ParamId param_id() const { return node_->id; }
    SymbolId symbol() const { return node_->id; }
    const Value& coeff() const { return *node_->coeff; }
    const std::vector<Term>& children() const { return node_->children; }
    const AlphabetRef& alphabet() const { return alphabet_; }

    /// Largest variable index occurring, or -1 when variable-free.
    int max_var_index() const;

    std::string str() const;

private:
    struct Node {
        Kind kind;
        int id = 0;
        std::optional<Value> coeff;
        std::vector<Term> children;
    };
    Term(AlphabetRef alphabet, std::shared_ptr<const Node> node)
        : alphabet_(std::move(alphabet)), node_(std::move(node)) {}

    AlphabetRef alphabet_;
    std::shared_ptr<const Node> node_;
};

/// A pure product term: m ::= xi | a | sigma(m, ..., m). No sums, zeros or
/// coefficients. These are the keys of LinearForm; their total order is
/// size-lexicographic with variables < parameters < symbol nodes.
class Monomial {
public:
    enum class Kind { var, param, apply };

    static Monomial var(AlphabetRef alphabet, int index);
    static Monomial param(AlphabetRef alphabet, ParamId param);
    static Monomial apply(AlphabetRef alphabet, SymbolId symbol, std::vector<Monomial> children);
    static Monomial from_tree(const Tree& tree);

    Kind kind() const { return node_->kind; }
    bool is_var() const { return kind() == Kind::var; }
    bool is_param() const { return kind() == Kind::param; }
    bool is_apply() const { return kind() == Kind::apply; }
    int var_index() const { return node_->id; }
    ParamId param_id() const { return node_->id; }
    SymbolId symbol() const { return node_->id; }
    const std::vector<Monomial>& children() const { return node_->children; }
    const AlphabetRef& alphabet() const { return alphabet_; }
    int size() const { return node_->size; }

    /// Ground monomials convert to trees; returns nullopt if a variable occurs.
    std::optional<Tree> to_tree() const;
    Term to_term() const;
    /// Rebuilds the monomial with every variable index rewritten.
    Monomial map_vars(const std::function<int(int)>& f) const;
    int max_var_index() const;

    std::string str() const;

    static int compare(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return compare(a, b) != 0; }
    friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

private:
    struct Node {
        Kind kind;
        int id;
        std::vector<Monomial> children;
        int size;
    };
    Monomial(AlphabetRef alphabet, std::shared_ptr<const Node> node)
        : alphabet_(std::move(alphabet)), node_(std::move(node)) {}

    AlphabetRef alphabet_;
    std::shared_ptr<const Node> node_;
};

/// The canonical normal form of a term: a finite map monomial -> nonzero
/// coefficient, representing the sum of coeff * monomial. The empty form is
/// the term 0. Structural equality of forms decides equivalence of terms
/// under the multi-linear semialgebra laws.
class LinearForm {
public:
    LinearForm(Semiring ring, AlphabetRef alphabet);
    static LinearForm monomial(Semiring ring, Monomial m, Value coeff);

    const Semiring& ring() const { return ring_; }
    const AlphabetRef& alphabet() const { return alphabet_; }
    const std::map<Monomial, Value>& coefficients() const { return coeff_; }

    bool is_zero() const { return coeff_.empty(); }
    /// Coefficient of m, zero when absent.
    Value coeff(const Monomial& m) const;
    /// Adds k * m, merging and pruning zeros.
    void add(const Monomial& m, const Value& k);

    /// True when some monomial is a bare variable (the unguarded case).
    bool has_bare_variable() const;
    /// The offending monomial when unguarded, for error messages.
    std::optional<Monomial> bare_variable() const;
    int max_var_index() const;

    LinearForm scaled(const Value& k) const;
    LinearForm map_vars(const std::function<int(int)>& f) const;
    friend LinearForm operator+(const LinearForm& a, const LinearForm& b);

    /// Renders back to a term (canonical monomial order, unit coefficients
    /// elided). Normalizing the result returns this form again.
    Term to_term() const;
    std::string str() const;

    friend bool operator==(const LinearForm& a, const LinearForm& b);
    friend bool operator!=(const LinearForm& a, const LinearForm& b) { return !(a == b); }

private:
    Semiring ring_;
    AlphabetRef alphabet_;
    std::map<Monomial, Value> coeff_;
};

/// Canonical normal form of t under associativity/commutativity of +, the
/// semimodule laws and multilinearity of every symbol.
LinearForm normalize(const Term& t, const Semiring& ring);

/// Guardedness: t is 0, a parameter, sigma-rooted, or built from guarded
/// terms by + and scaling (0 * t counts as guarded for any t). A bare
/// variable is not guarded.
bool is_proper(const Term& t);

/// Simultaneously replaces variable xi by rows[i] (a linear form over a fresh
/// variable space) and returns the fully expanded normal form. rows must
/// cover every variable occurring in t.
LinearForm substitute_linear(const Term& t, std::span<const LinearForm> rows,
                             const Semiring& ring);

/// Evaluates t in the product interpretation (sigma(v1..vn) = v1*...*vn, the
/// empty product being 1). env[i] interprets xi; par interprets parameters.
Value eval_term(const Term& t, std::span<const Value> env,
                const std::map<ParamId, Value>& par, const Semiring& ring);

}  // namespace rts
