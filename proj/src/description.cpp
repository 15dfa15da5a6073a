#include "rts/description.hpp"

#include <algorithm>
#include <set>

namespace rts {

// ---------------------------------------------------------------------------
// EquationSystem / Description

EquationSystem::EquationSystem(AlphabetRef alphabet, Semiring ring, std::vector<LinearForm> rhs)
    : alphabet_(std::move(alphabet)), ring_(ring), rhs_(std::move(rhs)) {
    if (!alphabet_) throw Error("equation system requires an alphabet");
    int n = num_vars();
    for (int i = 0; i < n; ++i) {
        const LinearForm& f = rhs_[i];
        if (f.ring() != ring_)
            throw SemiringMismatchError("equation for x" + std::to_string(i + 1) +
                                        " uses semiring " + f.ring().name());
        if (*f.alphabet() != *alphabet_)
            throw Error("equation for x" + std::to_string(i + 1) + " uses a different alphabet");
        if (auto bare = f.bare_variable())
            throw ImproperSystemError("equation for x" + std::to_string(i + 1) +
                                      " is not guarded: bare variable monomial '" + bare->str() +
                                      "'");
        if (f.max_var_index() >= n)
            throw LookupError("equation for x" + std::to_string(i + 1) +
                              " references undeclared variable x" +
                              std::to_string(f.max_var_index() + 1));
    }
}

std::vector<ParamId> EquationSystem::occurring_params() const {
    std::set<ParamId> seen;
    std::function<void(const Monomial&)> scan = [&](const Monomial& m) {
        if (m.is_param()) seen.insert(m.param_id());
        for (const Monomial& c : m.children()) scan(c);
    };
    for (const LinearForm& f : rhs_)
        for (const auto& [m, k] : f.coefficients()) scan(m);
    return {seen.begin(), seen.end()};
}

bool operator==(const EquationSystem& a, const EquationSystem& b) {
    return a.ring_ == b.ring_ && *a.alphabet_ == *b.alphabet_ && a.rhs_ == b.rhs_;
}

Description::Description(std::vector<Value> final_weights, EquationSystem system)
    : final_weights_(std::move(final_weights)), system_(std::move(system)) {
    if (static_cast<int>(final_weights_.size()) != system_.num_vars())
        throw DimensionError("final weight vector has " +
                             std::to_string(final_weights_.size()) + " entries for " +
                             std::to_string(system_.num_vars()) + " variables");
    for (const Value& v : final_weights_)
        if (v.ring() != system_.ring())
            throw SemiringMismatchError("final weight from semiring " + v.ring().name());
}

bool operator==(const Description& a, const Description& b) {
    // system first: it short-circuits cross-semiring comparisons safely
    return a.system_ == b.system_ && a.final_weights_ == b.final_weights_;
}

// ---------------------------------------------------------------------------
// Flatness and flattening

namespace {

bool monomial_is_flat(const Monomial& m) {
    if (m.is_param()) return true;
    if (m.is_var()) return false;  // unreachable in guarded systems
    return std::all_of(m.children().begin(), m.children().end(),
                       [](const Monomial& c) { return c.is_var(); });
}

}  // namespace

bool is_flat(const EquationSystem& system) {
    for (const LinearForm& f : system.equations())
        for (const auto& [m, k] : f.coefficients())
            if (!monomial_is_flat(m)) return false;
    return true;
}

bool is_flat(const Description& d) { return is_flat(d.system()); }

Description flatten(const Description& d) {
    const AlphabetRef& alphabet = d.alphabet();
    const Semiring& ring = d.ring();
    std::vector<LinearForm> forms = d.system().equations();

    // Each pass rewrites one equation: non-variable arguments of its
    // monomials move to fresh trailing variables whose defining equations are
    // appended and processed in turn.
    for (std::size_t i = 0; i < forms.size(); ++i) {
        const LinearForm source = forms[i];  // appending below may reallocate forms
        LinearForm rewritten(ring, alphabet);
        for (const auto& [m, k] : source.coefficients()) {
            if (!m.is_apply() || monomial_is_flat(m)) {
                rewritten.add(m, k);
                continue;
            }
            std::vector<Monomial> args;
            args.reserve(m.children().size());
            for (const Monomial& arg : m.children()) {
                if (arg.is_var()) {
                    args.push_back(arg);
                    continue;
                }
                int fresh = static_cast<int>(forms.size());
                forms.push_back(LinearForm::monomial(ring, arg, ring.one()));
                args.push_back(Monomial::var(alphabet, fresh));
            }
            rewritten.add(Monomial::apply(alphabet, m.symbol(), std::move(args)), k);
        }
        forms[i] = std::move(rewritten);
    }

    std::vector<Value> weights = d.final_weights();
    weights.resize(forms.size(), ring.zero());
    return Description(std::move(weights), EquationSystem(alphabet, ring, std::move(forms)));
}

// ---------------------------------------------------------------------------
// Combinators

namespace {

std::vector<LinearForm> shift_vars(const std::vector<LinearForm>& forms, int offset) {
    std::vector<LinearForm> out;
    out.reserve(forms.size());
    for (const LinearForm& f : forms)
        out.push_back(f.map_vars([offset](int i) { return i + offset; }));
    return out;
}

bool unit_first_weights(const Description& d) {
    const auto& v = d.final_weights();
    if (v.empty() || !v[0].is_one()) return false;
    return std::all_of(v.begin() + 1, v.end(), [](const Value& k) { return k.is_zero(); });
}

void require_compatible(const Description& a, const Description& b) {
    if (a.ring() != b.ring())
        throw SemiringMismatchError("descriptions over different semirings");
    if (*a.alphabet() != *b.alphabet()) throw Error("descriptions over different alphabets");
}

}  // namespace

Description normalize_initial(const Description& d) {
    const AlphabetRef& alphabet = d.alphabet();
    const Semiring& ring = d.ring();
    int n = d.num_vars();

    // Old variables shift up by one; the fresh first variable carries the
    // weighted sum of all right-hand sides.
    std::vector<LinearForm> shifted = shift_vars(d.system().equations(), 1);
    LinearForm head(ring, alphabet);
    for (int i = 0; i < n; ++i) head = head + shifted[i].scaled(d.final_weights()[i]);

    std::vector<LinearForm> forms;
    forms.reserve(n + 1);
    forms.push_back(std::move(head));
    for (LinearForm& f : shifted) forms.push_back(std::move(f));

    std::vector<Value> weights;
    weights.reserve(n + 1);
    weights.push_back(ring.one());
    for (int i = 0; i < n; ++i) weights.push_back(ring.zero());
    return Description(std::move(weights), EquationSystem(alphabet, ring, std::move(forms)));
}

Description desc_sum(const Description& a, const Description& b) {
    require_compatible(a, b);
    std::vector<LinearForm> forms = a.system().equations();
    for (LinearForm& f : shift_vars(b.system().equations(), a.num_vars()))
        forms.push_back(std::move(f));
    std::vector<Value> weights = a.final_weights();
    weights.insert(weights.end(), b.final_weights().begin(), b.final_weights().end());
    return Description(std::move(weights),
                       EquationSystem(a.alphabet(), a.ring(), std::move(forms)));
}

Description desc_scale(const Value& k, const Description& d) {
    if (k.ring() != d.ring()) throw SemiringMismatchError("scaling by a foreign semiring value");
    std::vector<Value> weights;
    weights.reserve(d.num_vars());
    for (const Value& v : d.final_weights()) weights.push_back(k * v);
    return Description(std::move(weights), d.system());
}

Description desc_sigma(AlphabetRef alphabet, Semiring ring, SymbolId symbol,
                       std::span<const Description> parts) {
    if (!alphabet) throw Error("desc_sigma requires an alphabet");
    if (symbol < 0 || symbol >= alphabet->num_symbols()) throw LookupError("unknown symbol id");
    if (alphabet->rank(symbol) != static_cast<int>(parts.size()))
        throw ArityError("symbol '" + alphabet->symbol_name(symbol) + "' has rank " +
                         std::to_string(alphabet->rank(symbol)) + ", got " +
                         std::to_string(parts.size()) + " descriptions");

    std::vector<LinearForm> forms;
    std::vector<Monomial> root_args;
    int offset = 1;  // slot 0 is the fresh root variable
    for (const Description& part : parts) {
        if (part.ring() != ring || *part.alphabet() != *alphabet)
            throw SemiringMismatchError("desc_sigma parts use a different context");
        Description unit = unit_first_weights(part) ? part : normalize_initial(part);
        root_args.push_back(Monomial::var(alphabet, offset));
        for (const LinearForm& f : shift_vars(unit.system().equations(), offset))
            forms.push_back(f);
        offset += unit.num_vars();
    }

    LinearForm root(ring, alphabet);
    root.add(Monomial::apply(alphabet, symbol, std::move(root_args)), ring.one());
    forms.insert(forms.begin(), std::move(root));

    std::vector<Value> weights;
    weights.reserve(offset);
    weights.push_back(ring.one());
    for (int i = 1; i < offset; ++i) weights.push_back(ring.zero());
    return Description(std::move(weights), EquationSystem(alphabet, ring, std::move(forms)));
}

Description desc_zero(AlphabetRef alphabet, Semiring ring) {
    return Description({}, EquationSystem(std::move(alphabet), ring, {}));
}

Description desc_param(AlphabetRef alphabet, Semiring ring, ParamId param) {
    LinearForm rhs = LinearForm::monomial(ring, Monomial::param(alphabet, param), ring.one());
    return Description({ring.one()}, EquationSystem(std::move(alphabet), ring, {std::move(rhs)}));
}

Description desc_substitute(const Description& d, const std::map<ParamId, Description>& bind) {
    const AlphabetRef& alphabet = d.alphabet();
    const Semiring& ring = d.ring();
    std::vector<ParamId> params = d.system().occurring_params();

    // Lay out the bound systems after d's variables, once per occurring
    // parameter, and build each parameter's replacement term: the weighted
    // sum of its system's (shifted) right-hand sides.
    int offset = d.num_vars();
    std::vector<LinearForm> appended;
    std::map<ParamId, Term> replacement;
    for (ParamId a : params) {
        auto it = bind.find(a);
        if (it == bind.end())
            throw LookupError("parameter '" + alphabet->param_name(a) + "' has no binding");
        const Description& da = it->second;
        if (da.ring() != ring || *da.alphabet() != *alphabet)
            throw SemiringMismatchError("binding for '" + alphabet->param_name(a) +
                                        "' uses a different context");
        std::vector<LinearForm> shifted = shift_vars(da.system().equations(), offset);
        LinearForm sum(ring, alphabet);
        for (int i = 0; i < da.num_vars(); ++i) sum = sum + shifted[i].scaled(da.final_weights()[i]);
        replacement.emplace(a, sum.to_term());
        for (LinearForm& f : shifted) appended.push_back(std::move(f));
        offset += da.num_vars();
    }

    // Substitute parameters in d's own equations, syntactically then
    // renormalized.
    std::function<Term(const Term&)> subst = [&](const Term& t) -> Term {
        switch (t.kind()) {
            case Term::Kind::param: {
                auto it = replacement.find(t.param_id());
                return it == replacement.end() ? t : it->second;
            }
            case Term::Kind::sum:
                return subst(t.children()[0]) + subst(t.children()[1]);
            case Term::Kind::scale:
                return Term::scale(t.coeff(), subst(t.children()[0]));
            case Term::Kind::apply: {
                std::vector<Term> children;
                children.reserve(t.children().size());
                for (const Term& c : t.children()) children.push_back(subst(c));
                return Term::apply(t.alphabet(), t.symbol(), std::move(children));
            }
            default:
                return t;
        }
    };

    std::vector<LinearForm> forms;
    forms.reserve(offset);
    for (const LinearForm& f : d.system().equations())
        forms.push_back(normalize(subst(f.to_term()), ring));
    for (LinearForm& f : appended) forms.push_back(std::move(f));

    std::vector<Value> weights = d.final_weights();
    weights.resize(offset, ring.zero());
    return Description(std::move(weights), EquationSystem(alphabet, ring, std::move(forms)));
}

// ---------------------------------------------------------------------------
// Weighted tree automaton view

WeightedTreeAutomaton::WeightedTreeAutomaton(AlphabetRef alphabet, Semiring ring, int num_states,
                                             std::vector<WtaTransition> transitions,
                                             std::vector<WtaLeaf> leaves,
                                             std::vector<Value> final_weights)
    : alphabet_(std::move(alphabet)), ring_(ring), num_states_(num_states) {
    if (!alphabet_) throw Error("automaton requires an alphabet");
    if (static_cast<int>(final_weights.size()) != num_states)
        throw DimensionError("final weight vector does not match the state count");
    for (const Value& v : final_weights)
        if (v.ring() != ring) throw SemiringMismatchError("final weight from a foreign semiring");
    final_weights_ = std::move(final_weights);

    // Merge duplicates, drop zero weights, keep a deterministic order.
    std::map<std::tuple<SymbolId, std::vector<int>, int>, Value> trans;
    for (WtaTransition& t : transitions) {
        if (t.symbol < 0 || t.symbol >= alphabet_->num_symbols())
            throw LookupError("unknown symbol id in transition");
        if (static_cast<int>(t.sources.size()) != alphabet_->rank(t.symbol))
            throw ArityError("transition arity does not match symbol rank");
        if (t.target < 0 || t.target >= num_states) throw Error("transition target out of range");
        for (int s : t.sources)
            if (s < 0 || s >= num_states) throw Error("transition source out of range");
        if (t.weight.ring() != ring)
            throw SemiringMismatchError("transition weight from a foreign semiring");
        auto key = std::make_tuple(t.symbol, t.sources, t.target);
        auto [it, inserted] = trans.try_emplace(std::move(key), t.weight);
        if (!inserted) it->second += t.weight;
    }
    for (auto& [key, w] : trans) {
        if (w.is_zero()) continue;
        transitions_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), w});
    }

    std::map<std::pair<ParamId, int>, Value> leaf;
    for (WtaLeaf& l : leaves) {
        if (l.param < 0 || l.param >= alphabet_->num_params())
            throw LookupError("unknown parameter id in leaf entry");
        if (l.state < 0 || l.state >= num_states) throw Error("leaf state out of range");
        if (l.weight.ring() != ring)
            throw SemiringMismatchError("leaf weight from a foreign semiring");
        auto [it, inserted] = leaf.try_emplace({l.param, l.state}, l.weight);
        if (!inserted) it->second += l.weight;
    }
    for (auto& [key, w] : leaf) {
        if (w.is_zero()) continue;
        leaves_.push_back({key.first, key.second, w});
    }
}

WeightedTreeAutomaton to_wta(const Description& d) {
    if (!is_flat(d)) throw NotFlatError("description is not flat; flatten it first");
    std::vector<WtaTransition> transitions;
    std::vector<WtaLeaf> leaves;
    for (int i = 0; i < d.num_vars(); ++i) {
        for (const auto& [m, k] : d.system().rhs(i).coefficients()) {
            if (m.is_param()) {
                leaves.push_back({m.param_id(), i, k});
            } else {
                std::vector<int> sources;
                sources.reserve(m.children().size());
                for (const Monomial& c : m.children()) sources.push_back(c.var_index());
                transitions.push_back({m.symbol(), std::move(sources), i, k});
            }
        }
    }
    return WeightedTreeAutomaton(d.alphabet(), d.ring(), d.num_vars(), std::move(transitions),
                                 std::move(leaves), d.final_weights());
}

Description from_wta(const WeightedTreeAutomaton& wta) {
    const AlphabetRef& alphabet = wta.alphabet();
    const Semiring& ring = wta.ring();
    std::vector<LinearForm> forms(wta.num_states(), LinearForm(ring, alphabet));
    for (const WtaTransition& t : wta.transitions()) {
        std::vector<Monomial> args;
        args.reserve(t.sources.size());
        for (int s : t.sources) args.push_back(Monomial::var(alphabet, s));
        forms[t.target].add(Monomial::apply(alphabet, t.symbol, std::move(args)), t.weight);
    }
    for (const WtaLeaf& l : wta.leaves())
        forms[l.state].add(Monomial::param(alphabet, l.param), l.weight);
    return Description(wta.final_weights(), EquationSystem(alphabet, ring, std::move(forms)));
}

}  // namespace rts
