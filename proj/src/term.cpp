#include "rts/term.hpp"

#include <algorithm>
#include <sstream>

namespace rts {

// ---------------------------------------------------------------------------
// Term

Term Term::zero(AlphabetRef alphabet) {
    if (!alphabet) throw Error("term requires an alphabet");
    return Term(std::move(alphabet), std::make_shared<const Node>(Node{Kind::zero}));
}

Term Term::var(AlphabetRef alphabet, int index) {
    if (!alphabet) throw Error("term requires an alphabet");
    if (index < 0) throw Error("variable index must be non-negative");
    return Term(std::move(alphabet), std::make_shared<const Node>(Node{Kind::var, index}));
}

Term Term::param(AlphabetRef alphabet, ParamId param) {
    if (!alphabet) throw Error("term requires an alphabet");
    if (param < 0 || param >= alphabet->num_params()) throw LookupError("unknown parameter id");
    return Term(std::move(alphabet), std::make_shared<const Node>(Node{Kind::param, param}));
}

Term Term::scale(Value coeff, Term t) {
    AlphabetRef alphabet = t.alphabet();
    auto node = std::make_shared<const Node>(
        Node{Kind::scale, 0, std::move(coeff), std::vector<Term>{std::move(t)}});
    return Term(std::move(alphabet), std::move(node));
}

Term Term::apply(AlphabetRef alphabet, SymbolId symbol, std::vector<Term> children) {
    if (!alphabet) throw Error("term requires an alphabet");
    if (symbol < 0 || symbol >= alphabet->num_symbols()) throw LookupError("unknown symbol id");
    int rank = alphabet->rank(symbol);
    if (static_cast<int>(children.size()) != rank)
        throw ArityError("symbol '" + alphabet->symbol_name(symbol) + "' has rank " +
                         std::to_string(rank) + ", got " + std::to_string(children.size()) +
                         " arguments");
    for (const Term& c : children)
        if (*c.alphabet() != *alphabet) throw Error("term children use a different alphabet");
    auto node = std::make_shared<const Node>(
        Node{Kind::apply, symbol, std::nullopt, std::move(children)});
    return Term(std::move(alphabet), std::move(node));
}

Term operator+(Term a, Term b) {
    if (*a.alphabet() != *b.alphabet()) throw Error("term summands use different alphabets");
    AlphabetRef alphabet = a.alphabet();
    auto node = std::make_shared<const Term::Node>(Term::Node{
        Term::Kind::sum, 0, std::nullopt, std::vector<Term>{std::move(a), std::move(b)}});
    return Term(std::move(alphabet), std::move(node));
}

int Term::max_var_index() const {
    int m = kind() == Kind::var ? var_index() : -1;
    for (const Term& c : children()) m = std::max(m, c.max_var_index());
    return m;
}

namespace {

// Precedence for printing: sums need parentheses under scaling.
void print_term(std::ostream& os, const Term& t, bool parenthesize_sum) {
    switch (t.kind()) {
        case Term::Kind::zero:
            os << "0";
            return;
        case Term::Kind::var:
            os << "x" << t.var_index() + 1;
            return;
        case Term::Kind::param:
            os << t.alphabet()->param_name(t.param_id());
            return;
        case Term::Kind::sum:
            if (parenthesize_sum) os << "(";
            print_term(os, t.children()[0], false);
            os << " + ";
            print_term(os, t.children()[1], false);
            if (parenthesize_sum) os << ")";
            return;
        case Term::Kind::scale:
            os << t.coeff().str() << " * ";
            print_term(os, t.children()[0], true);
            return;
        case Term::Kind::apply: {
            os << t.alphabet()->symbol_name(t.symbol());
            if (!t.children().empty()) {
                os << "(";
                for (std::size_t i = 0; i < t.children().size(); ++i) {
                    if (i) os << ", ";
                    print_term(os, t.children()[i], false);
                }
                os << ")";
            }
            return;
        }
    }
}

}  // namespace

std::string Term::str() const {
    std::ostringstream os;
    print_term(os, *this, false);
    return os.str();
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(AlphabetRef alphabet, int index) {
    if (!alphabet) throw Error("monomial requires an alphabet");
    if (index < 0) throw Error("variable index must be non-negative");
    return Monomial(std::move(alphabet),
                    std::make_shared<const Node>(Node{Kind::var, index, {}, 1}));
}

Monomial Monomial::param(AlphabetRef alphabet, ParamId param) {
    if (!alphabet) throw Error("monomial requires an alphabet");
    if (param < 0 || param >= alphabet->num_params()) throw LookupError("unknown parameter id");
    return Monomial(std::move(alphabet),
                    std::make_shared<const Node>(Node{Kind::param, param, {}, 1}));
}

Monomial Monomial::apply(AlphabetRef alphabet, SymbolId symbol, std::vector<Monomial> children) {
    if (!alphabet) throw Error("monomial requires an alphabet");
    if (symbol < 0 || symbol >= alphabet->num_symbols()) throw LookupError("unknown symbol id");
    int rank = alphabet->rank(symbol);
    if (static_cast<int>(children.size()) != rank)
        throw ArityError("symbol '" + alphabet->symbol_name(symbol) + "' has rank " +
                         std::to_string(rank) + ", got " + std::to_string(children.size()) +
                         " arguments");
    int size = 1;
    for (const Monomial& c : children) {
        if (*c.alphabet() != *alphabet)
            throw Error("monomial children use a different alphabet");
        size += c.size();
    }
    auto node = std::make_shared<const Node>(Node{Kind::apply, symbol, std::move(children), size});
    return Monomial(std::move(alphabet), std::move(node));
}

Monomial Monomial::from_tree(const Tree& tree) {
    if (tree.is_param()) return Monomial::param(tree.alphabet(), tree.param());
    std::vector<Monomial> children;
    children.reserve(tree.children().size());
    for (const Tree& c : tree.children()) children.push_back(from_tree(c));
    return Monomial::apply(tree.alphabet(), tree.symbol(), std::move(children));
}

std::optional<Tree> Monomial::to_tree() const {
    switch (kind()) {
        case Kind::var:
            return std::nullopt;
        case Kind::param:
            return Tree::leaf(alphabet_, param_id());
        case Kind::apply: {
            std::vector<Tree> children;
            children.reserve(this->children().size());
            for (const Monomial& c : this->children()) {
                auto t = c.to_tree();
                if (!t) return std::nullopt;
                children.push_back(std::move(*t));
            }
            return Tree::node(alphabet_, symbol(), std::move(children));
        }
    }
    throw Error("corrupt monomial");
}

Term Monomial::to_term() const {
    switch (kind()) {
        case Kind::var:
            return Term::var(alphabet_, var_index());
        case Kind::param:
            return Term::param(alphabet_, param_id());
        case Kind::apply: {
            std::vector<Term> children;
            children.reserve(this->children().size());
            for (const Monomial& c : this->children()) children.push_back(c.to_term());
            return Term::apply(alphabet_, symbol(), std::move(children));
        }
    }
    throw Error("corrupt monomial");
}

Monomial Monomial::map_vars(const std::function<int(int)>& f) const {
    switch (kind()) {
        case Kind::var:
            return Monomial::var(alphabet_, f(var_index()));
        case Kind::param:
            return *this;
        case Kind::apply: {
            std::vector<Monomial> children;
            children.reserve(this->children().size());
            for (const Monomial& c : this->children()) children.push_back(c.map_vars(f));
            return Monomial::apply(alphabet_, symbol(), std::move(children));
        }
    }
    throw Error("corrupt monomial");
}

int Monomial::max_var_index() const {
    if (is_var()) return var_index();
    int m = -1;
    for (const Monomial& c : children()) m = std::max(m, c.max_var_index());
    return m;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    if (a.node_ == b.node_) return 0;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.kind() != b.kind())
        return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    if (a.node_->id != b.node_->id) return a.node_->id < b.node_->id ? -1 : 1;
    for (std::size_t i = 0; i < a.children().size(); ++i) {
        int c = compare(a.children()[i], b.children()[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Monomial::str() const {
    switch (kind()) {
        case Kind::var:
            return "x" + std::to_string(var_index() + 1);
        case Kind::param:
            return alphabet_->param_name(param_id());
        case Kind::apply: {
            std::string s = alphabet_->symbol_name(symbol());
            if (!children().empty()) {
                s += "(";
                for (std::size_t i = 0; i < children().size(); ++i) {
                    if (i) s += ", ";
                    s += children()[i].str();
                }
                s += ")";
            }
            return s;
        }
    }
    throw Error("corrupt monomial");
}

// ---------------------------------------------------------------------------
// LinearForm

LinearForm::LinearForm(Semiring ring, AlphabetRef alphabet)
    : ring_(ring), alphabet_(std::move(alphabet)) {
    if (!alphabet_) throw Error("linear form requires an alphabet");
}

LinearForm LinearForm::monomial(Semiring ring, Monomial m, Value coeff) {
    LinearForm f(ring, m.alphabet());
    f.add(m, coeff);
    return f;
}

Value LinearForm::coeff(const Monomial& m) const {
    auto it = coeff_.find(m);
    return it == coeff_.end() ? ring_.zero() : it->second;
}

void LinearForm::add(const Monomial& m, const Value& k) {
    if (k.ring() != ring_)
        throw SemiringMismatchError("coefficient from " + k.ring().name() + " added to a " +
                                    ring_.name() + " form");
    if (k.is_zero()) return;
    auto [it, inserted] = coeff_.try_emplace(m, k);
    if (!inserted) {
        it->second += k;
        if (it->second.is_zero()) coeff_.erase(it);
    }
}

bool LinearForm::has_bare_variable() const { return bare_variable().has_value(); }

std::optional<Monomial> LinearForm::bare_variable() const {
    for (const auto& [m, k] : coeff_)
        if (m.is_var()) return m;
    return std::nullopt;
}

int LinearForm::max_var_index() const {
    int max = -1;
    for (const auto& [m, k] : coeff_) max = std::max(max, m.max_var_index());
    return max;
}

LinearForm LinearForm::scaled(const Value& k) const {
    LinearForm out(ring_, alphabet_);
    for (const auto& [m, c] : coeff_) out.add(m, k * c);
    return out;
}

LinearForm LinearForm::map_vars(const std::function<int(int)>& f) const {
    LinearForm out(ring_, alphabet_);
    for (const auto& [m, c] : coeff_) out.add(m.map_vars(f), c);
    return out;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
    if (a.ring_ != b.ring_) throw SemiringMismatchError("adding forms over different semirings");
    if (*a.alphabet_ != *b.alphabet_) throw Error("adding forms over different alphabets");
    LinearForm out = a;
    for (const auto& [m, c] : b.coeff_) out.add(m, c);
    return out;
}

Term LinearForm::to_term() const {
    if (coeff_.empty()) return Term::zero(alphabet_);
    std::optional<Term> acc;
    for (const auto& [m, k] : coeff_) {
        Term piece = k.is_one() ? m.to_term() : Term::scale(k, m.to_term());
        acc = acc ? *acc + piece : piece;
    }
    return *acc;
}

std::string LinearForm::str() const {
    if (coeff_.empty()) return "0";
    std::string s;
    for (const auto& [m, k] : coeff_) {
        if (!s.empty()) s += " + ";
        if (!k.is_one()) s += k.str() + " * ";
        s += m.str();
    }
    return s;
}

bool operator==(const LinearForm& a, const LinearForm& b) {
    if (a.ring_ != b.ring_ || *a.alphabet_ != *b.alphabet_) return false;
    return a.coeff_ == b.coeff_;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

// Shared expansion engine: normalize is substitution with identity rows. The
// hook maps a variable index to its replacement form.
LinearForm expand(const Term& t, const Semiring& ring,
                  const std::function<LinearForm(int)>& var_form) {
    switch (t.kind()) {
        case Term::Kind::zero:
            return LinearForm(ring, t.alphabet());
        case Term::Kind::var:
            return var_form(t.var_index());
        case Term::Kind::param:
            return LinearForm::monomial(ring, Monomial::param(t.alphabet(), t.param_id()),
                                        ring.one());
        case Term::Kind::sum:
            return expand(t.children()[0], ring, var_form) +
                   expand(t.children()[1], ring, var_form);
        case Term::Kind::scale: {
            if (t.coeff().ring() != ring)
                throw SemiringMismatchError("term coefficient from " + t.coeff().ring().name() +
                                            " in a " + ring.name() + " context");
            if (t.coeff().is_zero()) return LinearForm(ring, t.alphabet());
            return expand(t.children()[0], ring, var_form).scaled(t.coeff());
        }
        case Term::Kind::apply: {
            std::vector<LinearForm> args;
            args.reserve(t.children().size());
            for (const Term& c : t.children()) args.push_back(expand(c, ring, var_form));
            // Multilinear expansion: one product monomial per choice of a
            // monomial from each argument form.
            LinearForm out(ring, t.alphabet());
            std::vector<std::map<Monomial, Value>::const_iterator> pick;
            pick.reserve(args.size());
            for (const LinearForm& f : args) {
                if (f.coefficients().empty()) return out;  // a zero argument kills the node
                pick.push_back(f.coefficients().begin());
            }
            while (true) {
                Value k = ring.one();
                std::vector<Monomial> children;
                children.reserve(args.size());
                for (auto& it : pick) {
                    k *= it->second;
                    children.push_back(it->first);
                }
                out.add(Monomial::apply(t.alphabet(), t.symbol(), std::move(children)), k);
                int i = static_cast<int>(pick.size()) - 1;
                for (; i >= 0; --i) {
                    if (++pick[i] != args[i].coefficients().end()) break;
                    pick[i] = args[i].coefficients().begin();
                }
                if (i < 0) break;
            }
            return out;
        }
    }
    throw Error("corrupt term");
}

}  // namespace

LinearForm normalize(const Term& t, const Semiring& ring) {
    return expand(t, ring, [&](int index) {
        return LinearForm::monomial(ring, Monomial::var(t.alphabet(), index), ring.one());
    });
}

bool is_proper(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::zero:
        case Term::Kind::param:
        case Term::Kind::apply:
            return true;
        case Term::Kind::var:
            return false;
        case Term::Kind::scale:
            return t.coeff().is_zero() || is_proper(t.children()[0]);
        case Term::Kind::sum:
            return is_proper(t.children()[0]) && is_proper(t.children()[1]);
    }
    throw Error("corrupt term");
}

LinearForm substitute_linear(const Term& t, std::span<const LinearForm> rows,
                             const Semiring& ring) {
    return expand(t, ring, [&](int index) -> LinearForm {
        if (index >= static_cast<int>(rows.size()))
            throw LookupError("variable x" + std::to_string(index + 1) +
                              " has no substitution row");
        return rows[index];
    });
}

Value eval_term(const Term& t, std::span<const Value> env,
                const std::map<ParamId, Value>& par, const Semiring& ring) {
    switch (t.kind()) {
        case Term::Kind::zero:
            return ring.zero();
        case Term::Kind::var:
            if (t.var_index() >= static_cast<int>(env.size()))
                throw LookupError("variable x" + std::to_string(t.var_index() + 1) +
                                  " has no binding");
            return env[t.var_index()];
        case Term::Kind::param: {
            auto it = par.find(t.param_id());
            if (it == par.end())
                throw LookupError("parameter '" + t.alphabet()->param_name(t.param_id()) +
                                  "' has no binding");
            return it->second;
        }
        case Term::Kind::sum:
            return eval_term(t.children()[0], env, par, ring) +
                   eval_term(t.children()[1], env, par, ring);
        case Term::Kind::scale:
            return t.coeff() * eval_term(t.children()[0], env, par, ring);
        case Term::Kind::apply: {
            Value v = ring.one();
            for (const Term& c : t.children()) v *= eval_term(c, env, par, ring);
            return v;
        }
    }
    throw Error("corrupt term");
}

}  // namespace rts
