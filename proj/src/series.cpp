#include "rts/series.hpp"

#include <algorithm>

namespace rts {

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(Semiring ring, AlphabetRef alphabet, int bound)
    : ring_(ring), alphabet_(std::move(alphabet)), bound_(bound) {
    if (!alphabet_) throw Error("series requires an alphabet");
    if (bound < 0) throw Error("series bound must be non-negative");
}

TruncatedSeries TruncatedSeries::unit(Semiring ring, const Tree& tree, int bound) {
    TruncatedSeries s(ring, tree.alphabet(), bound);
    s.set_coeff(tree, ring.one());
    return s;
}

Value TruncatedSeries::coeff(const Tree& t) const {
    if (t.height() > bound_)
        throw BoundMismatchError("tree of height " + std::to_string(t.height()) +
                                 " queried in a series truncated at " + std::to_string(bound_));
    auto it = coeff_.find(t);
    return it == coeff_.end() ? ring_.zero() : it->second;
}

void TruncatedSeries::set_coeff(const Tree& t, Value k) {
    if (t.height() > bound_)
        throw BoundMismatchError("tree of height " + std::to_string(t.height()) +
                                 " stored in a series truncated at " + std::to_string(bound_));
    if (k.ring() != ring_) throw SemiringMismatchError("coefficient from a foreign semiring");
    if (k.is_zero())
        coeff_.erase(t);
    else
        coeff_.insert_or_assign(t, std::move(k));
}

void TruncatedSeries::add_coeff(const Tree& t, const Value& k) {
    if (k.is_zero()) return;
    set_coeff(t, coeff(t) + k);
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.ring_ != b.ring_ || *a.alphabet_ != *b.alphabet_) return false;
    if (a.bound_ != b.bound_)
        throw BoundMismatchError("comparing series truncated at different heights");
    return a.coeff_ == b.coeff_;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Tree> enumerate_trees(const AlphabetRef& alphabet, int max_height) {
    if (!alphabet) throw Error("enumeration requires an alphabet");
    if (max_height < 0) return {};

    // Trees grouped by exact height; cumulative pool for building tuples.
    std::vector<std::vector<Tree>> by_height(max_height + 1);
    std::vector<Tree> pool;
    for (ParamId a = 0; a < alphabet->num_params(); ++a)
        by_height[0].push_back(Tree::leaf(alphabet, a));
    for (SymbolId s = 0; s < alphabet->num_symbols(); ++s)
        if (alphabet->rank(s) == 0) by_height[0].push_back(Tree::node(alphabet, s, {}));
    pool = by_height[0];

    for (int h = 1; h <= max_height; ++h) {
        std::size_t prev_pool = pool.size();
        for (SymbolId s = 0; s < alphabet->num_symbols(); ++s) {
            int rank = alphabet->rank(s);
            if (rank == 0 || pool.empty()) continue;
            std::vector<std::size_t> idx(rank, 0);
            while (true) {
                int tallest = -1;
                for (std::size_t i : idx) tallest = std::max(tallest, pool[i].height());
                if (tallest == h - 1) {
                    std::vector<Tree> children;
                    children.reserve(rank);
                    for (std::size_t i : idx) children.push_back(pool[i]);
                    by_height[h].push_back(Tree::node(alphabet, s, std::move(children)));
                }
                int j = rank - 1;
                for (; j >= 0; --j) {
                    if (++idx[j] < prev_pool) break;
                    idx[j] = 0;
                }
                if (j < 0) break;
            }
        }
        pool.insert(pool.end(), by_height[h].begin(), by_height[h].end());
    }

    std::sort(pool.begin(), pool.end());
    return pool;
}

// ---------------------------------------------------------------------------
// Series algebra

namespace {

void require_same_context(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.ring() != b.ring()) throw SemiringMismatchError("series over different semirings");
    if (*a.alphabet() != *b.alphabet()) throw Error("series over different alphabets");
    if (a.bound() != b.bound())
        throw BoundMismatchError("series truncated at different heights");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    require_same_context(a, b);
    TruncatedSeries out = a;
    for (const auto& [t, k] : b.coefficients()) out.add_coeff(t, k);
    return out;
}

TruncatedSeries series_scale(const Value& k, const TruncatedSeries& s) {
    if (k.ring() != s.ring()) throw SemiringMismatchError("scaling by a foreign semiring value");
    TruncatedSeries out(s.ring(), s.alphabet(), s.bound());
    for (const auto& [t, c] : s.coefficients()) out.add_coeff(t, k * c);
    return out;
}

TruncatedSeries series_sigma(AlphabetRef alphabet, Semiring ring, SymbolId symbol,
                             std::span<const TruncatedSeries> args, int bound) {
    if (!alphabet) throw Error("series_sigma requires an alphabet");
    if (symbol < 0 || symbol >= alphabet->num_symbols()) throw LookupError("unknown symbol id");
    int rank = alphabet->rank(symbol);
    if (rank != static_cast<int>(args.size()))
        throw ArityError("symbol '" + alphabet->symbol_name(symbol) + "' has rank " +
                         std::to_string(rank) + ", got " + std::to_string(args.size()) +
                         " series");
    for (const TruncatedSeries& s : args) {
        if (s.ring() != ring || *s.alphabet() != *alphabet)
            throw SemiringMismatchError("series_sigma arguments use a different context");
        if (s.bound() != bound) throw BoundMismatchError("series truncated at different heights");
    }

    TruncatedSeries out(ring, alphabet, bound);
    if (rank == 0) {
        Tree t = Tree::node(alphabet, symbol, {});
        out.set_coeff(t, ring.one());
        return out;
    }
    // One candidate tree per choice of a support tree from each argument.
    std::vector<std::map<Tree, Value>::const_iterator> pick;
    for (const TruncatedSeries& s : args) {
        if (s.coefficients().empty()) return out;
        pick.push_back(s.coefficients().begin());
    }
    while (true) {
        int tallest = -1;
        for (auto& it : pick) tallest = std::max(tallest, it->first.height());
        if (tallest + 1 <= bound) {
            Value k = ring.one();
            std::vector<Tree> children;
            children.reserve(rank);
            for (auto& it : pick) {
                k *= it->second;
                children.push_back(it->first);
            }
            out.add_coeff(Tree::node(alphabet, symbol, std::move(children)), k);
        }
        int j = rank - 1;
        for (; j >= 0; --j) {
            if (++pick[j] != args[j].coefficients().end()) break;
            pick[j] = args[j].coefficients().begin();
        }
        if (j < 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The height-induction solver

namespace {

// All (tree, coefficient) pairs a monomial can produce from the partial
// solution, restricted to trees of height <= cap. Variable positions sit
// under at least one symbol, so they read supports at height < the layer
// being built; guardedness makes the induction well-founded.
void instantiate_monomial(const Monomial& m, int cap,
                          const std::vector<TruncatedSeries>& solution,
                          const ParamInterpretation& params, const Semiring& ring,
                          std::vector<std::pair<Tree, Value>>& out) {
    out.clear();
    if (cap < 0) return;
    switch (m.kind()) {
        case Monomial::Kind::var:
            for (const auto& [t, k] : solution[m.var_index()].coefficients())
                if (t.height() <= cap) out.emplace_back(t, k);
            return;
        case Monomial::Kind::param: {
            if (params.empty()) {
                out.emplace_back(Tree::leaf(m.alphabet(), m.param_id()), ring.one());
                return;
            }
            for (const auto& [t, k] : params.at(m.param_id()).coefficients())
                if (t.height() <= cap) out.emplace_back(t, k);
            return;
        }
        case Monomial::Kind::apply: {
            int rank = static_cast<int>(m.children().size());
            if (rank == 0) {
                out.emplace_back(Tree::node(m.alphabet(), m.symbol(), {}), ring.one());
                return;
            }
            if (cap < 1) return;
            std::vector<std::vector<std::pair<Tree, Value>>> parts(rank);
            for (int i = 0; i < rank; ++i) {
                instantiate_monomial(m.children()[i], cap - 1, solution, params, ring, parts[i]);
                if (parts[i].empty()) return;
            }
            std::vector<std::size_t> idx(rank, 0);
            for (;;) {
                Value k = ring.one();
                std::vector<Tree> children;
                children.reserve(rank);
                for (int i = 0; i < rank; ++i) {
                    k *= parts[i][idx[i]].second;
                    children.push_back(parts[i][idx[i]].first);
                }
                if (!k.is_zero())
                    out.emplace_back(Tree::node(m.alphabet(), m.symbol(), std::move(children)),
                                     std::move(k));
                int j = rank - 1;
                for (; j >= 0; --j) {
                    if (++idx[j] < parts[j].size()) break;
                    idx[j] = 0;
                }
                if (j < 0) break;
            }
            return;
        }
    }
    throw Error("corrupt monomial");
}

void validate_params(const EquationSystem& system, const ParamInterpretation& params,
                     int height) {
    if (params.empty()) return;
    for (ParamId a : system.occurring_params()) {
        auto it = params.find(a);
        if (it == params.end())
            throw LookupError("parameter '" + system.alphabet()->param_name(a) +
                              "' has no series interpretation");
        if (it->second.bound() < height)
            throw BoundMismatchError("series for parameter '" +
                                     system.alphabet()->param_name(a) +
                                     "' is truncated below the requested height");
        if (it->second.ring() != system.ring() || *it->second.alphabet() != *system.alphabet())
            throw SemiringMismatchError("parameter interpretation uses a different context");
    }
}

}  // namespace

std::vector<TruncatedSeries> solve(const EquationSystem& system, int height,
                                   const ParamInterpretation& params) {
    if (height < 0) throw Error("solve height must be non-negative");
    validate_params(system, params, height);
    const Semiring& ring = system.ring();
    int n = system.num_vars();

    // Height layers in increasing order: layer h adds the coefficients of
    // trees of height exactly h, built from complete lower layers only.
    std::vector<TruncatedSeries> solution(n, TruncatedSeries(ring, system.alphabet(), height));
    std::vector<std::pair<Tree, Value>> entries;
    for (int h = 0; h <= height; ++h) {
        for (int i = 0; i < n; ++i) {
            for (const auto& [m, k] : system.rhs(i).coefficients()) {
                instantiate_monomial(m, h, solution, params, ring, entries);
                for (auto& [t, c] : entries)
                    if (t.height() == h) solution[i].add_coeff(t, k * c);
            }
        }
    }
    return solution;
}

Value wta_coeff(const WeightedTreeAutomaton& wta, const Tree& t) {
    const Semiring& ring = wta.ring();
    // State vector of t, bottom-up.
    std::function<std::vector<Value>(const Tree&)> mu = [&](const Tree& u) {
        std::vector<Value> out(wta.num_states(), ring.zero());
        if (u.is_param()) {
            for (const WtaLeaf& l : wta.leaves())
                if (l.param == u.param()) out[l.state] += l.weight;
            return out;
        }
        std::vector<std::vector<Value>> children;
        children.reserve(u.children().size());
        for (const Tree& c : u.children()) children.push_back(mu(c));
        for (const WtaTransition& tr : wta.transitions()) {
            if (tr.symbol != u.symbol()) continue;
            Value w = tr.weight;
            for (std::size_t j = 0; j < tr.sources.size(); ++j) {
                w *= children[j][tr.sources[j]];
                if (w.is_zero()) break;
            }
            out[tr.target] += w;
        }
        return out;
    };
    std::vector<Value> state = mu(t);
    Value acc = ring.zero();
    for (int q = 0; q < wta.num_states(); ++q) acc += wta.final_weights()[q] * state[q];
    return acc;
}

TruncatedSeries behavior(const Description& d, int height, const ParamInterpretation& params) {
    std::vector<TruncatedSeries> solution = solve(d.system(), height, params);
    TruncatedSeries out(d.ring(), d.alphabet(), height);
    for (int i = 0; i < d.num_vars(); ++i)
        out = series_add(out, series_scale(d.final_weights()[i], solution[i]));
    return out;
}

EquivResult equiv_up_to(const Description& a, const Description& b, int height) {
    if (a.ring() != b.ring()) throw SemiringMismatchError("descriptions over different semirings");
    if (*a.alphabet() != *b.alphabet()) throw Error("descriptions over different alphabets");
    TruncatedSeries sa = behavior(a, height);
    TruncatedSeries sb = behavior(b, height);

    // Union of supports ordered by (height, canonical) gives the minimal
    // witness.
    std::vector<Tree> candidates;
    for (const auto& [t, k] : sa.coefficients()) candidates.push_back(t);
    for (const auto& [t, k] : sb.coefficients()) candidates.push_back(t);
    std::sort(candidates.begin(), candidates.end(), [](const Tree& x, const Tree& y) {
        if (x.height() != y.height()) return x.height() < y.height();
        return x < y;
    });
    for (const Tree& t : candidates) {
        Value ka = sa.coeff(t);
        Value kb = sb.coeff(t);
        if (ka != kb) return {false, t, ka, kb};
    }
    return {true, std::nullopt, std::nullopt, std::nullopt};
}

}  // namespace rts
