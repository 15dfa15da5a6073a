#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rts/description.hpp"
#include "rts/tree.hpp"

namespace rts {

/// A tree series truncated at a height bound: a finite map from trees of
/// height <= bound to nonzero coefficients. Absent trees have coefficient
/// zero. Equality requires equal bounds and equal maps.
class TruncatedSeries {
public:
    TruncatedSeries(Semiring ring, AlphabetRef alphabet, int bound);
    /// The series mapping one tree to 1 and everything else to 0.
    static TruncatedSeries unit(Semiring ring, const Tree& tree, int bound);

    int bound() const { return bound_; }
    const Semiring& ring() const { return ring_; }
    const AlphabetRef& alphabet() const { return alphabet_; }
    const std::map<Tree, Value>& coefficients() const { return coeff_; }

    /// Coefficient of t; zero when absent. t must respect the bound.
    Value coeff(const Tree& t) const;
    void set_coeff(const Tree& t, Value k);
    void add_coeff(const Tree& t, const Value& k);
    bool is_zero() const { return coeff_.empty(); }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) {
        return !(a == b);
    }

private:
    Semiring ring_;
    AlphabetRef alphabet_;
    int bound_;
    std::map<Tree, Value> coeff_;
};

/// All trees of height <= max_height in canonical (size-lexicographic) order.
/// Empty when the alphabet admits no trees at all.
std::vector<Tree> enumerate_trees(const AlphabetRef& alphabet, int max_height);

/// Pointwise sum and action.
TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scale(const Value& k, const TruncatedSeries& s);

/// The symbol operation on series: the coefficient of sigma(t1..tn) is the
/// product of the arguments' coefficients at t1..tn; trees not rooted in
/// sigma get 0.
TruncatedSeries series_sigma(AlphabetRef alphabet, Semiring ring, SymbolId symbol,
                             std::span<const TruncatedSeries> args, int bound);

/// Interprets parameters as series. Empty means the default (each parameter
/// maps to its own unit series); a non-empty map must cover every occurring
/// parameter at a bound >= the solve height.
using ParamInterpretation = std::map<ParamId, TruncatedSeries>;

/// The unique truncated solution of a guarded system, computed by induction
/// on tree height: a coefficient at height h only consults coefficients at
/// strictly smaller heights (guardedness puts every variable under a symbol).
std::vector<TruncatedSeries> solve(const EquationSystem& system, int height,
                                   const ParamInterpretation& params = {});

/// Bottom-up automaton evaluation: final-weight vector dotted with the state
/// vector of t. Serves as the independent cross-check of solve.
Value wta_coeff(const WeightedTreeAutomaton& wta, const Tree& t);

/// The weighted sum of the solution components of d's system.
TruncatedSeries behavior(const Description& d, int height,
                         const ParamInterpretation& params = {});

struct EquivResult {
    bool equivalent;
    std::optional<Tree> witness;   // minimal-height tree where behaviors differ
    std::optional<Value> lhs, rhs; // the differing coefficients
};

/// Compares truncated behaviors at every tree of height <= height.
EquivResult equiv_up_to(const Description& a, const Description& b, int height);

}  // namespace rts
