#include "rts/semiring.hpp"

#include <ostream>

namespace rts {

namespace {

Int reduce_mod(Int n, std::uint64_t m) {
    Int mm(m);
    Int r = n % mm;
    if (r < 0) r += mm;
    return r;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

Semiring Semiring::zmod(std::uint64_t modulus) {
    if (modulus == 0) throw Error("zmod modulus must be positive");
    return Semiring(SemiringKind::zmod, modulus);
}

Semiring Semiring::by_name(std::string_view name, std::optional<std::uint64_t> modulus) {
    if (name == "zmod") {
        if (!modulus) throw Error("semiring zmod requires a modulus");
        return zmod(*modulus);
    }
    if (modulus) throw Error("semiring '" + std::string(name) + "' takes no modulus");
    if (name == "nat") return naturals();
    if (name == "bool") return booleans();
    if (name == "int") return integers();
    if (name == "tropical") return tropical();
    throw Error("unknown semiring '" + std::string(name) + "'");
}

std::string Semiring::name() const {
    switch (kind_) {
        case SemiringKind::nat: return "nat";
        case SemiringKind::boolean: return "bool";
        case SemiringKind::integer: return "int";
        case SemiringKind::zmod: return "zmod " + std::to_string(modulus_);
        case SemiringKind::tropical: return "tropical";
    }
    throw Error("corrupt semiring kind");
}

Value Semiring::zero() const {
    if (kind_ == SemiringKind::tropical) return Value(*this, 0, /*inf=*/true);
    return Value(*this, 0);
}

Value Semiring::one() const {
    if (kind_ == SemiringKind::tropical) return Value(*this, 0);
    return Value(*this, 1);
}

Value Semiring::infinity() const {
    if (kind_ != SemiringKind::tropical)
        throw Error("infinity is only an element of the tropical semiring");
    return Value(*this, 0, /*inf=*/true);
}

Value Semiring::make(long long n) const { return make(Int(n)); }

Value Semiring::make(Int n) const {
    switch (kind_) {
        case SemiringKind::nat:
            if (n < 0) throw Error("nat value must be non-negative");
            return Value(*this, std::move(n));
        case SemiringKind::boolean:
            if (n != 0 && n != 1) throw Error("bool value must be 0 or 1");
            return Value(*this, std::move(n));
        case SemiringKind::integer:
            return Value(*this, std::move(n));
        case SemiringKind::zmod:
            return Value(*this, reduce_mod(std::move(n), modulus_));
        case SemiringKind::tropical:
            if (n < 0) throw Error("tropical value must be non-negative");
            return Value(*this, std::move(n));
    }
    throw Error("corrupt semiring kind");
}

Value Semiring::parse(std::string_view text) const {
    auto bad = [&] {
        return ParseError("malformed " + name() + " literal '" + std::string(text) + "'");
    };
    switch (kind_) {
        case SemiringKind::nat:
        case SemiringKind::zmod:
            if (!all_digits(text)) throw bad();
            return make(Int(std::string(text)));
        case SemiringKind::boolean:
            if (text != "0" && text != "1") throw bad();
            return make(Int(std::string(text)));
        case SemiringKind::integer: {
            std::string_view digits = text;
            if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
            if (!all_digits(digits)) throw bad();
            return make(Int(std::string(text)));
        }
        case SemiringKind::tropical:
            if (text == "inf") return infinity();
            if (!all_digits(text)) throw bad();
            return make(Int(std::string(text)));
    }
    throw Error("corrupt semiring kind");
}

bool Value::is_zero() const { return *this == ring_.zero(); }
bool Value::is_one() const { return *this == ring_.one(); }

std::string Value::str() const {
    if (inf_) return "inf";
    return num_.str();
}

namespace {

void require_same_ring(const Value& x, const Value& y, const char* op) {
    if (x.ring() != y.ring())
        throw SemiringMismatchError(std::string("cannot ") + op + " a " + x.ring().name() +
                                    " value and a " + y.ring().name() + " value");
}

}  // namespace

Value operator+(const Value& x, const Value& y) {
    require_same_ring(x, y, "add");
    const Semiring& ring = x.ring();
    switch (ring.kind()) {
        case SemiringKind::nat:
        case SemiringKind::integer:
            return ring.make(x.num_ + y.num_);
        case SemiringKind::boolean:
            return ring.make(Int(x.num_ != 0 || y.num_ != 0 ? 1 : 0));
        case SemiringKind::zmod:
            return ring.make(x.num_ + y.num_);
        case SemiringKind::tropical:
            if (x.inf_) return y;
            if (y.inf_) return x;
            return ring.make(x.num_ < y.num_ ? x.num_ : y.num_);
    }
    throw Error("corrupt semiring kind");
}

Value operator*(const Value& x, const Value& y) {
    require_same_ring(x, y, "multiply");
    const Semiring& ring = x.ring();
    switch (ring.kind()) {
        case SemiringKind::nat:
        case SemiringKind::integer:
        case SemiringKind::zmod:
            return ring.make(x.num_ * y.num_);
        case SemiringKind::boolean:
            return ring.make(Int(x.num_ != 0 && y.num_ != 0 ? 1 : 0));
        case SemiringKind::tropical:
            if (x.inf_ || y.inf_) return ring.zero();
            return ring.make(x.num_ + y.num_);
    }
    throw Error("corrupt semiring kind");
}

bool operator==(const Value& x, const Value& y) {
    require_same_ring(x, y, "compare");
    if (x.inf_ != y.inf_) return false;
    if (x.inf_) return true;
    return x.num_ == y.num_;
}

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace rts
