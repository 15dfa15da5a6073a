#pragma once

// Shared helpers for the test suites: deterministic random generators for
// terms, systems and descriptions, plus independent oracles (explicit run
// enumeration, series evaluation of right-hand sides) used to pin expected
// values.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rts/description.hpp"
#include "rts/document.hpp"
#include "rts/series.hpp"

namespace testsup {

using namespace rts;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
    bool coin() { return (gen() & 1) != 0; }
};

inline AlphabetRef make_alphabet(const std::vector<std::pair<std::string, int>>& symbols,
                                 const std::vector<std::string>& params) {
    Alphabet a;
    for (const auto& [name, rank] : symbols) a.add_symbol(name, rank);
    for (const auto& name : params) a.add_param(name);
    return std::make_shared<const Alphabet>(std::move(a));
}

inline Value random_value(const Semiring& ring, Rng& rng) {
    switch (ring.kind()) {
        case SemiringKind::nat: return ring.make(rng.below(5));
        case SemiringKind::boolean: return ring.make(rng.below(2));
        case SemiringKind::integer: return ring.make(rng.below(7) - 3);
        case SemiringKind::zmod:
            return ring.make(static_cast<long long>(rng.below(static_cast<int>(ring.modulus()))));
        case SemiringKind::tropical:
            return rng.below(6) == 0 ? ring.infinity() : ring.make(rng.below(5));
    }
    throw Error("corrupt semiring kind");
}

inline Value random_nonzero(const Semiring& ring, Rng& rng) {
    for (;;) {
        Value v = random_value(ring, rng);
        if (!v.is_zero()) return v;
    }
}

// An arbitrary term, any shape, for normalization round-trips.
inline Term random_term(const AlphabetRef& alpha, const Semiring& ring, int nvars, int depth,
                        Rng& rng) {
    int leaf_kinds = (nvars > 0 ? 1 : 0) + (alpha->num_params() > 0 ? 1 : 0) + 1;
    if (depth == 0 || rng.below(4) == 0) {
        int pick = rng.below(leaf_kinds);
        if (nvars > 0 && pick == 0) return Term::var(alpha, rng.below(nvars));
        if (alpha->num_params() > 0 && pick < leaf_kinds - 1)
            return Term::param(alpha, rng.below(alpha->num_params()));
        return Term::zero(alpha);
    }
    switch (rng.below(3)) {
        case 0:
            return random_term(alpha, ring, nvars, depth - 1, rng) +
                   random_term(alpha, ring, nvars, depth - 1, rng);
        case 1:
            return Term::scale(random_value(ring, rng),
                               random_term(alpha, ring, nvars, depth - 1, rng));
        default: {
            if (alpha->num_symbols() == 0)
                return random_term(alpha, ring, nvars, 0, rng);
            SymbolId s = rng.below(alpha->num_symbols());
            std::vector<Term> children;
            for (int i = 0; i < alpha->rank(s); ++i)
                children.push_back(random_term(alpha, ring, nvars, depth - 1, rng));
            return Term::apply(alpha, s, std::move(children));
        }
    }
}

// A guarded right-hand side: a sum of scaled summands, each a parameter or a
// symbol application (whose arguments may be arbitrary terms).
inline Term random_guarded_rhs(const AlphabetRef& alpha, const Semiring& ring, int nvars,
                               int depth, Rng& rng) {
    auto summand = [&]() -> Term {
        bool want_param = alpha->num_params() > 0 && (alpha->num_symbols() == 0 || rng.coin());
        Term core = [&]() -> Term {
            if (want_param) return Term::param(alpha, rng.below(alpha->num_params()));
            SymbolId s = rng.below(alpha->num_symbols());
            std::vector<Term> children;
            for (int i = 0; i < alpha->rank(s); ++i)
                children.push_back(random_term(alpha, ring, nvars, depth - 1, rng));
            return Term::apply(alpha, s, std::move(children));
        }();
        return rng.coin() ? Term::scale(random_value(ring, rng), core) : core;
    };
    Term t = summand();
    int extra = rng.below(3);
    for (int i = 0; i < extra; ++i) t = std::move(t) + summand();
    return t;
}

inline Description random_description(const AlphabetRef& alpha, const Semiring& ring, int nvars,
                                      int depth, Rng& rng) {
    std::vector<LinearForm> forms;
    for (int i = 0; i < nvars; ++i)
        forms.push_back(normalize(random_guarded_rhs(alpha, ring, nvars, depth, rng), ring));
    std::vector<Value> weights;
    for (int i = 0; i < nvars; ++i) weights.push_back(random_value(ring, rng));
    return Description(std::move(weights), EquationSystem(alpha, ring, std::move(forms)));
}

inline Description random_flat_description(const AlphabetRef& alpha, const Semiring& ring,
                                           int nvars, Rng& rng) {
    std::vector<LinearForm> forms;
    for (int i = 0; i < nvars; ++i) {
        LinearForm f(ring, alpha);
        int monomials = 1 + rng.below(3);
        for (int j = 0; j < monomials; ++j) {
            if (alpha->num_params() > 0 && (alpha->num_symbols() == 0 || rng.coin())) {
                f.add(Monomial::param(alpha, rng.below(alpha->num_params())),
                      random_nonzero(ring, rng));
            } else {
                SymbolId s = rng.below(alpha->num_symbols());
                std::vector<Monomial> args;
                for (int r = 0; r < alpha->rank(s); ++r)
                    args.push_back(Monomial::var(alpha, rng.below(nvars)));
                f.add(Monomial::apply(alpha, s, std::move(args)), random_nonzero(ring, rng));
            }
        }
        forms.push_back(std::move(f));
    }
    std::vector<Value> weights;
    for (int i = 0; i < nvars; ++i) weights.push_back(random_value(ring, rng));
    return Description(std::move(weights), EquationSystem(alpha, ring, std::move(forms)));
}

// ---------------------------------------------------------------------------
// Oracles

inline std::vector<Value> all_values(const Semiring& ring) {
    switch (ring.kind()) {
        case SemiringKind::boolean:
            return {ring.make(0), ring.make(1)};
        case SemiringKind::zmod: {
            std::vector<Value> out;
            for (std::uint64_t i = 0; i < ring.modulus(); ++i)
                out.push_back(ring.make(static_cast<long long>(i)));
            return out;
        }
        default:
            throw Error("exhaustive evaluation needs a finite semiring");
    }
}

// Agreement of two terms under every assignment of a finite semiring to the
// variables and parameters, in the product interpretation.
inline bool eval_equivalent(const Term& a, const Term& b, const Semiring& ring, int nvars) {
    std::vector<Value> domain = all_values(ring);
    int nparams = a.alphabet()->num_params();
    int slots = nvars + nparams;
    std::vector<std::size_t> idx(slots, 0);
    for (;;) {
        std::vector<Value> env;
        for (int i = 0; i < nvars; ++i) env.push_back(domain[idx[i]]);
        std::map<ParamId, Value> par;
        for (int i = 0; i < nparams; ++i) par.emplace(i, domain[idx[nvars + i]]);
        if (eval_term(a, env, par, ring) != eval_term(b, env, par, ring)) return false;
        int j = slots - 1;
        for (; j >= 0; --j) {
            if (++idx[j] < domain.size()) break;
            idx[j] = 0;
        }
        if (j < 0) break;
    }
    return true;
}

// Explicit run enumeration: sums, over every assignment of states to the
// nodes of t, the product of local transition/leaf weights times the final
// weight of the root state. Exponential; only for small fixtures.
namespace detail {

inline void collect_nodes(const Tree& t, std::vector<Tree>& nodes) {
    nodes.push_back(t);
    for (const Tree& c : t.children()) collect_nodes(c, nodes);
}

}  // namespace detail

inline Value run_enumeration_coeff(const WeightedTreeAutomaton& wta, const Tree& t) {
    const Semiring& ring = wta.ring();
    std::vector<Tree> nodes;
    detail::collect_nodes(t, nodes);
    int n = static_cast<int>(nodes.size());

    // child_slots[i] = indices (into nodes) of node i's children, preorder.
    std::vector<std::vector<int>> child_slots(n);
    {
        std::vector<int> stack;
        for (int i = 0; i < n; ++i) {
            while (!stack.empty() &&
                   static_cast<int>(child_slots[stack.back()].size()) ==
                       static_cast<int>(nodes[stack.back()].children().size()))
                stack.pop_back();
            if (!stack.empty()) child_slots[stack.back()].push_back(i);
            stack.push_back(i);
        }
    }

    auto local_weight = [&](int slot, const std::vector<int>& states) -> Value {
        const Tree& u = nodes[slot];
        int q = states[slot];
        Value acc = ring.zero();
        if (u.is_param()) {
            for (const WtaLeaf& l : wta.leaves())
                if (l.param == u.param() && l.state == q) acc += l.weight;
            return acc;
        }
        for (const WtaTransition& tr : wta.transitions()) {
            if (tr.symbol != u.symbol() || tr.target != q) continue;
            bool match = true;
            for (std::size_t j = 0; j < tr.sources.size(); ++j)
                if (tr.sources[j] != states[child_slots[slot][j]]) match = false;
            if (match) acc += tr.weight;
        }
        return acc;
    };

    Value total = ring.zero();
    std::vector<int> states(n, 0);
    if (wta.num_states() == 0) return total;
    for (;;) {
        Value w = wta.final_weights()[states[0]];
        for (int i = 0; i < n && !w.is_zero(); ++i) w *= local_weight(i, states);
        total += w;
        int j = n - 1;
        for (; j >= 0; --j) {
            if (++states[j] < wta.num_states()) break;
            states[j] = 0;
        }
        if (j < 0) break;
    }
    return total;
}

// Evaluates a right-hand side over given solution series through the series
// algebra; with the default parameter interpretation. Used to confirm that
// solve's output is a fixed point.
inline TruncatedSeries eval_monomial_series(const Monomial& m,
                                            const std::vector<TruncatedSeries>& solution,
                                            const Semiring& ring, int bound) {
    const AlphabetRef& alpha = m.alphabet();
    switch (m.kind()) {
        case Monomial::Kind::var:
            return solution[m.var_index()];
        case Monomial::Kind::param:
            return TruncatedSeries::unit(ring, Tree::leaf(alpha, m.param_id()), bound);
        case Monomial::Kind::apply: {
            std::vector<TruncatedSeries> args;
            for (const Monomial& c : m.children())
                args.push_back(eval_monomial_series(c, solution, ring, bound));
            return series_sigma(alpha, ring, m.symbol(), args, bound);
        }
    }
    throw Error("corrupt monomial");
}

inline TruncatedSeries eval_form_series(const LinearForm& f,
                                        const std::vector<TruncatedSeries>& solution,
                                        int bound) {
    TruncatedSeries acc(f.ring(), f.alphabet(), bound);
    for (const auto& [m, k] : f.coefficients())
        acc = series_add(acc,
                         series_scale(k, eval_monomial_series(m, solution, f.ring(), bound)));
    return acc;
}

}  // namespace testsup
