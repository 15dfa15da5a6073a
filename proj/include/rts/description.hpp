#pragma once

#include <map>
#include <span>
#include <vector>

#include "rts/term.hpp"

namespace rts {

/// A finite guarded fixed-point system x1 = rhs1, ..., xn = rhsn. Right-hand
/// sides are canonical linear forms; construction rejects systems with a bare
/// variable monomial (unguarded) or an out-of-range variable.
class EquationSystem {
public:
    EquationSystem(AlphabetRef alphabet, Semiring ring, std::vector<LinearForm> rhs);

    int num_vars() const { return static_cast<int>(rhs_.size()); }
    const LinearForm& rhs(int i) const { return rhs_.at(i); }
    const std::vector<LinearForm>& equations() const { return rhs_; }
    const Semiring& ring() const { return ring_; }
    const AlphabetRef& alphabet() const { return alphabet_; }

    /// Parameter ids occurring in some right-hand side, ascending.
    std::vector<ParamId> occurring_params() const;

    friend bool operator==(const EquationSystem& a, const EquationSystem& b);
    friend bool operator!=(const EquationSystem& a, const EquationSystem& b) { return !(a == b); }

private:
    AlphabetRef alphabet_;
    Semiring ring_;
    std::vector<LinearForm> rhs_;
};

/// A final-weight vector paired with a guarded system; the pair denotes the
/// weighted sum of the system's unique solution components.
class Description {
public:
    Description(std::vector<Value> final_weights, EquationSystem system);

    const std::vector<Value>& final_weights() const { return final_weights_; }
    const EquationSystem& system() const { return system_; }
    int num_vars() const { return system_.num_vars(); }
    const Semiring& ring() const { return system_.ring(); }
    const AlphabetRef& alphabet() const { return system_.alphabet(); }

    friend bool operator==(const Description& a, const Description& b);
    friend bool operator!=(const Description& a, const Description& b) { return !(a == b); }

private:
    std::vector<Value> final_weights_;
    EquationSystem system_;
};

/// True when every monomial of every right-hand side is either a parameter or
/// a symbol applied to variables only.
bool is_flat(const EquationSystem& system);
bool is_flat(const Description& d);

/// Extracts nested arguments into fresh variables (queue order over the
/// equations, monomials in canonical order, arguments left to right, one
/// fresh variable per extracted occurrence) until the system is flat. Fresh
/// variables get final weight 0; behavior is preserved.
Description flatten(const Description& d);

/// Equivalent description whose weight vector is (1, 0, ..., 0): a fresh
/// first variable is bound to the weighted sum of all right-hand sides.
Description normalize_initial(const Description& d);

/// Disjoint union of systems with concatenated weights; behaviors add.
Description desc_sum(const Description& a, const Description& b);

/// Scales the weight vector; behavior scales.
Description desc_scale(const Value& k, const Description& d);

/// Applies a symbol to n descriptions: a fresh root equation
/// z = sigma(first variable of each part). Behavior is sigma applied to the
/// parts' behaviors.
Description desc_sigma(AlphabetRef alphabet, Semiring ring, SymbolId symbol,
                       std::span<const Description> parts);

/// The zero description (empty system) and the unit description of one
/// parameter.
Description desc_zero(AlphabetRef alphabet, Semiring ring);
Description desc_param(AlphabetRef alphabet, Semiring ring, ParamId param);

/// Replaces every parameter occurring in d by the behavior of its bound
/// description: parameter occurrences are substituted by the bound weighted
/// right-hand-side sum, and the bound systems are appended with zero final
/// weights. bind must cover every occurring parameter.
Description desc_substitute(const Description& d, const std::map<ParamId, Description>& bind);

/// The weighted-tree-automaton view of a flat description.
struct WtaTransition {
    SymbolId symbol;
    std::vector<int> sources;
    int target;
    Value weight;
};

struct WtaLeaf {
    ParamId param;
    int state;
    Value weight;
};

class WeightedTreeAutomaton {
public:
    /// Duplicate (symbol, sources, target) and (param, state) entries are
    /// summed; zero weights are dropped.
    WeightedTreeAutomaton(AlphabetRef alphabet, Semiring ring, int num_states,
                          std::vector<WtaTransition> transitions, std::vector<WtaLeaf> leaves,
                          std::vector<Value> final_weights);

    int num_states() const { return num_states_; }
    const std::vector<WtaTransition>& transitions() const { return transitions_; }
    const std::vector<WtaLeaf>& leaves() const { return leaves_; }
    const std::vector<Value>& final_weights() const { return final_weights_; }
    const Semiring& ring() const { return ring_; }
    const AlphabetRef& alphabet() const { return alphabet_; }

private:
    AlphabetRef alphabet_;
    Semiring ring_;
    int num_states_;
    std::vector<WtaTransition> transitions_;
    std::vector<WtaLeaf> leaves_;
    std::vector<Value> final_weights_;
};

/// Mutually inverse views (up to monomial merging); to_wta rejects non-flat
/// input.
WeightedTreeAutomaton to_wta(const Description& d);
Description from_wta(const WeightedTreeAutomaton& wta);

}  // namespace rts
