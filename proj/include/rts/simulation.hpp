#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rts/description.hpp"

namespace rts {

/// A dense matrix of semiring values. Used for simulation witnesses and the
/// little vector/matrix products they need; semirings have no subtraction, so
/// only sums and products are defined.
class Matrix {
public:
    Matrix(Semiring ring, int rows, int cols);
    static Matrix identity(Semiring ring, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Semiring& ring() const { return ring_; }

    const Value& at(int i, int j) const { return cells_.at(i * cols_ + j); }
    void set(int i, int j, Value v);

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    Semiring ring_;
    int rows_, cols_;
    std::vector<Value> cells_;
};

/// Row vector times matrix.
std::vector<Value> vec_mat(std::span<const Value> v, const Matrix& m);

/// The source system with every variable xi replaced by the linear
/// combination row i of M over the target variables: one substituted
/// right-hand side per source equation, over the target variable space.
std::vector<LinearForm> build_DM(const EquationSystem& source, const Matrix& m);

/// Row-combinations of the target right-hand sides: entry i is
/// sum_j M[i][j] * rhs_j, over the target variable space.
std::vector<LinearForm> build_ME(const EquationSystem& target, const Matrix& m);

/// Simulation check: v*M equals w and the substituted source equations agree
/// with the combined target equations as canonical forms.
bool check_simulation(const Description& source, const Description& target, const Matrix& m);

/// One step of a simulation chain; forward means the matrix runs from
/// chain[i] to chain[i+1], otherwise the other way.
struct ChainLink {
    Matrix matrix;
    bool forward;
};

/// Verifies every link of a chain of descriptions in its declared direction.
/// A single description with no links is trivially connected.
bool check_chain(std::span<const Description> descriptions, std::span<const ChainLink> links);

inline constexpr std::uint64_t kDefaultSearchBudget = std::uint64_t(1) << 20;

/// Exhaustively enumerates matrices over the given entry universe (row-major,
/// universe order) and returns those accepted by check_simulation, in
/// enumeration order. Both descriptions must be flat. Throws when the
/// candidate count exceeds the budget.
std::vector<Matrix> find_simulations(const Description& source, const Description& target,
                                     std::span<const Value> universe,
                                     std::uint64_t budget = kDefaultSearchBudget);

}  // namespace rts
