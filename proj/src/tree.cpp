#include "rts/tree.hpp"

#include <sstream>

namespace rts {

Tree Tree::leaf(AlphabetRef alphabet, ParamId param) {
    if (!alphabet) throw Error("tree requires an alphabet");
    if (param < 0 || param >= alphabet->num_params()) throw LookupError("unknown parameter id");
    auto node = std::make_shared<const Node>(Node{true, param, {}, 0, 1});
    return Tree(std::move(alphabet), std::move(node));
}

Tree Tree::node(AlphabetRef alphabet, SymbolId symbol, std::vector<Tree> children) {
    if (!alphabet) throw Error("tree requires an alphabet");
    if (symbol < 0 || symbol >= alphabet->num_symbols()) throw LookupError("unknown symbol id");
    int rank = alphabet->rank(symbol);
    if (static_cast<int>(children.size()) != rank)
        throw ArityError("symbol '" + alphabet->symbol_name(symbol) + "' has rank " +
                         std::to_string(rank) + ", got " + std::to_string(children.size()) +
                         " children");
    int height = 0;
    int size = 1;
    for (const Tree& c : children) {
        if (*c.alphabet() != *alphabet) throw Error("tree children use a different alphabet");
        if (c.height() + 1 > height) height = c.height() + 1;
        size += c.size();
    }
    if (rank == 0) height = 0;  // nullary symbols are leaves
    auto node =
        std::make_shared<const Node>(Node{false, symbol, std::move(children), height, size});
    return Tree(std::move(alphabet), std::move(node));
}

int Tree::compare(const Tree& a, const Tree& b) {
    if (a.node_ == b.node_) return 0;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a.is_param() != b.is_param()) return a.is_param() ? -1 : 1;
    if (a.node_->id != b.node_->id) return a.node_->id < b.node_->id ? -1 : 1;
    for (std::size_t i = 0; i < a.children().size(); ++i) {
        int c = compare(a.children()[i], b.children()[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string Tree::str() const {
    std::ostringstream os;
    if (is_param()) {
        os << alphabet_->param_name(param());
        return os.str();
    }
    os << alphabet_->symbol_name(symbol());
    if (!children().empty()) {
        os << "(";
        for (std::size_t i = 0; i < children().size(); ++i) {
            if (i) os << ", ";
            os << children()[i].str();
        }
        os << ")";
    }
    return os.str();
}

}  // namespace rts
