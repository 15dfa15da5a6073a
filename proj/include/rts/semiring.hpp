#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "rts/errors.hpp"

namespace rts {

using Int = boost::multiprecision::cpp_int;

class Value;

enum class SemiringKind { nat, boolean, integer, zmod, tropical };

/// A pluggable exact commutative semiring. The shipped instances are
///
///   nat       natural numbers, arbitrary precision
///   bool      {0,1} with disjunction / conjunction
///   int       integers, arbitrary precision
///   zmod m    integers modulo m, canonical representatives 0..m-1
///   tropical  naturals plus "inf" under (min, +); zero = inf, one = 0
///
/// A Semiring is a small immutable value (kind + modulus); every Value is
/// tagged with the semiring it came from, and operations refuse to combine
/// values of different semirings.
class Semiring {
public:
    static Semiring naturals() { return Semiring(SemiringKind::nat); }
    static Semiring booleans() { return Semiring(SemiringKind::boolean); }
    static Semiring integers() { return Semiring(SemiringKind::integer); }
    static Semiring zmod(std::uint64_t modulus);
    static Semiring tropical() { return Semiring(SemiringKind::tropical); }

    /// Selection by header name: "nat" | "bool" | "int" | "zmod" (with modulus)
    /// | "tropical".
    static Semiring by_name(std::string_view name,
                            std::optional<std::uint64_t> modulus = std::nullopt);

    SemiringKind kind() const { return kind_; }
    std::uint64_t modulus() const { return modulus_; }

    /// Header form, e.g. "nat" or "zmod 5".
    std::string name() const;

    Value zero() const;
    Value one() const;
    /// The additive identity of tropical; errors elsewhere.
    Value infinity() const;

    /// Exact construction from an integer, validated/reduced for the kind.
    Value make(long long n) const;
    Value make(Int n) const;

    /// Parses one literal in this semiring's grammar; inverse of Value::str().
    Value parse(std::string_view text) const;

    friend bool operator==(const Semiring& a, const Semiring& b) {
        return a.kind_ == b.kind_ && a.modulus_ == b.modulus_;
    }
    friend bool operator!=(const Semiring& a, const Semiring& b) { return !(a == b); }

private:
    explicit Semiring(SemiringKind kind, std::uint64_t modulus = 0)
        : kind_(kind), modulus_(modulus) {}

    SemiringKind kind_;
    std::uint64_t modulus_;
};

/// An element of some Semiring. Immutable value semantics; exact arithmetic.
class Value {
public:
    const Semiring& ring() const { return ring_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_infinity() const { return inf_; }

    /// The numeric payload; meaningless for tropical infinity.
    const Int& magnitude() const { return num_; }

    std::string str() const;

    friend Value operator+(const Value& x, const Value& y);
    friend Value operator*(const Value& x, const Value& y);
    friend bool operator==(const Value& x, const Value& y);
    friend bool operator!=(const Value& x, const Value& y) { return !(x == y); }

    Value& operator+=(const Value& y) { return *this = *this + y; }
    Value& operator*=(const Value& y) { return *this = *this * y; }

    friend std::ostream& operator<<(std::ostream& os, const Value& v);

private:
    friend class Semiring;
    Value(Semiring ring, Int num, bool inf = false)
        : ring_(ring), num_(std::move(num)), inf_(inf) {}

    Semiring ring_;
    Int num_;
    bool inf_;
};

}  // namespace rts
