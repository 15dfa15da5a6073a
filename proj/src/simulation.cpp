#include "rts/simulation.hpp"

namespace rts {

Matrix::Matrix(Semiring ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols), cells_(std::size_t(rows) * cols, ring.zero()) {
    if (rows < 0 || cols < 0) throw Error("matrix dimensions must be non-negative");
}

Matrix Matrix::identity(Semiring ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, ring.one());
    return m;
}

void Matrix::set(int i, int j, Value v) {
    if (v.ring() != ring_) throw SemiringMismatchError("matrix entry from a foreign semiring");
    cells_.at(i * cols_ + j) = std::move(v);
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.cells_ == b.cells_;
}

std::vector<Value> vec_mat(std::span<const Value> v, const Matrix& m) {
    if (static_cast<int>(v.size()) != m.rows())
        throw DimensionError("vector length " + std::to_string(v.size()) +
                             " does not match matrix rows " + std::to_string(m.rows()));
    std::vector<Value> out(m.cols(), m.ring().zero());
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) out[j] += v[i] * m.at(i, j);
    return out;
}

std::vector<LinearForm> build_DM(const EquationSystem& source, const Matrix& m) {
    if (m.rows() != source.num_vars())
        throw DimensionError("matrix has " + std::to_string(m.rows()) + " rows for " +
                             std::to_string(source.num_vars()) + " source variables");
    const Semiring& ring = source.ring();
    const AlphabetRef& alphabet = source.alphabet();

    // Row i of the matrix becomes the replacement form for variable xi.
    std::vector<LinearForm> rows;
    rows.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        LinearForm row(ring, alphabet);
        for (int j = 0; j < m.cols(); ++j) row.add(Monomial::var(alphabet, j), m.at(i, j));
        rows.push_back(std::move(row));
    }

    std::vector<LinearForm> out;
    out.reserve(source.num_vars());
    for (const LinearForm& rhs : source.equations())
        out.push_back(substitute_linear(rhs.to_term(), rows, ring));
    return out;
}

std::vector<LinearForm> build_ME(const EquationSystem& target, const Matrix& m) {
    if (m.cols() != target.num_vars())
        throw DimensionError("matrix has " + std::to_string(m.cols()) + " columns for " +
                             std::to_string(target.num_vars()) + " target variables");
    std::vector<LinearForm> out;
    out.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        LinearForm combined(target.ring(), target.alphabet());
        for (int j = 0; j < m.cols(); ++j)
            combined = combined + target.rhs(j).scaled(m.at(i, j));
        out.push_back(std::move(combined));
    }
    return out;
}

bool check_simulation(const Description& source, const Description& target, const Matrix& m) {
    if (source.ring() != target.ring() || source.ring() != m.ring())
        throw SemiringMismatchError("simulation parts over different semirings");
    if (*source.alphabet() != *target.alphabet())
        throw Error("simulation parts over different alphabets");
    if (m.rows() != source.num_vars() || m.cols() != target.num_vars())
        throw DimensionError("matrix shape " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + " does not connect " +
                             std::to_string(source.num_vars()) + " to " +
                             std::to_string(target.num_vars()) + " variables");

    if (vec_mat(source.final_weights(), m) != target.final_weights()) return false;
    std::vector<LinearForm> dm = build_DM(source.system(), m);
    std::vector<LinearForm> me = build_ME(target.system(), m);
    for (int i = 0; i < source.num_vars(); ++i)
        if (dm[i] != me[i]) return false;
    return true;
}

bool check_chain(std::span<const Description> descriptions, std::span<const ChainLink> links) {
    if (descriptions.empty()) throw Error("a chain needs at least one description");
    if (links.size() + 1 != descriptions.size())
        throw DimensionError("chain with " + std::to_string(descriptions.size()) +
                             " descriptions needs " + std::to_string(descriptions.size() - 1) +
                             " links, got " + std::to_string(links.size()));
    for (std::size_t i = 0; i < links.size(); ++i) {
        const Description& a = descriptions[i];
        const Description& b = descriptions[i + 1];
        bool ok = links[i].forward ? check_simulation(a, b, links[i].matrix)
                                   : check_simulation(b, a, links[i].matrix);
        if (!ok) return false;
    }
    return true;
}

std::vector<Matrix> find_simulations(const Description& source, const Description& target,
                                     std::span<const Value> universe, std::uint64_t budget) {
    if (!is_flat(source) || !is_flat(target))
        throw NotFlatError("simulation search requires flat descriptions");
    for (const Value& v : universe)
        if (v.ring() != source.ring())
            throw SemiringMismatchError("universe entry from a foreign semiring");

    int cells = source.num_vars() * target.num_vars();
    if (universe.empty() && cells > 0) return {};
    double candidates = 1.0;
    for (int i = 0; i < cells; ++i) {
        candidates *= static_cast<double>(universe.size());
        if (candidates > static_cast<double>(budget))
            throw BudgetError("candidate count " + std::to_string(universe.size()) + "^" +
                              std::to_string(cells) + " exceeds the search budget");
    }

    std::vector<Matrix> found;
    std::vector<std::size_t> idx(cells, 0);
    while (true) {
        Matrix m(source.ring(), source.num_vars(), target.num_vars());
        for (int c = 0; c < cells; ++c)
            m.set(c / target.num_vars(), c % target.num_vars(), universe[idx[c]]);
        if (check_simulation(source, target, m)) found.push_back(std::move(m));
        int j = cells - 1;
        for (; j >= 0; --j) {
            if (++idx[j] < universe.size()) break;
            idx[j] = 0;
        }
        if (j < 0) break;
    }
    return found;
}

}  // namespace rts
