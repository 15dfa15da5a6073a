#pragma once

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "rts/alphabet.hpp"

namespace rts {

/// A finite tree over the alphabet: leaves are parameters, inner nodes carry
/// ranked symbols with exactly rank-many children (rank-0 symbols are leaves
/// too). Height is 0 at any leaf and 1 + max over children otherwise.
///
/// Trees are immutable and cheaply copyable. The total order is
/// size-lexicographic: first by node count, then structurally with parameters
/// before symbols and ids in declaration order. It fixes enumeration order,
/// series dumps and counterexample choice.
class Tree {
public:
    static Tree leaf(AlphabetRef alphabet, ParamId param);
    static Tree node(AlphabetRef alphabet, SymbolId symbol, std::vector<Tree> children);

    bool is_param() const { return node_->is_param; }
    ParamId param() const { return node_->id; }
    SymbolId symbol() const { return node_->id; }
    const std::vector<Tree>& children() const { return node_->children; }

    int height() const { return node_->height; }
    int size() const { return node_->size; }
    const AlphabetRef& alphabet() const { return alphabet_; }

    std::string str() const;

    friend bool operator==(const Tree& a, const Tree& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Tree& a, const Tree& b) { return compare(a, b) != 0; }
    friend bool operator<(const Tree& a, const Tree& b) { return compare(a, b) < 0; }

    static int compare(const Tree& a, const Tree& b);

private:
    struct Node {
        bool is_param;
        int id;
        std::vector<Tree> children;
        int height;
        int size;
    };
    Tree(AlphabetRef alphabet, std::shared_ptr<const Node> node)
        : alphabet_(std::move(alphabet)), node_(std::move(node)) {}

    AlphabetRef alphabet_;
    std::shared_ptr<const Node> node_;
};

}  // namespace rts
