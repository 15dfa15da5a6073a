#include <doctest.h>

#include "rts/term.hpp"
#include "test_support.hpp"

using namespace rts;
using testsup::eval_equivalent;

TEST_CASE("normalization merges scaled occurrences multilinearly") {
    // sigma(2a, x1) + sigma(a, 3x1) == 5 * sigma(a, x1)
    auto check_over = [](const Semiring& ring) {
        auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
        Term a = Term::param(alpha, 0);
        Term x1 = Term::var(alpha, 0);
        Term t = Term::apply(alpha, 0, {Term::scale(ring.make(2), a), x1}) +
                 Term::apply(alpha, 0, {a, Term::scale(ring.make(3), x1)});
        LinearForm nf = normalize(t, ring);
        Monomial expected = Monomial::apply(alpha, 0, {Monomial::param(alpha, 0),
                                                       Monomial::var(alpha, 0)});
        CHECK(nf.coefficients().size() == 1);
        CHECK(nf.coeff(expected) == ring.make(5));

        // brute-force confirmation over the finite semirings
        if (ring.kind() == SemiringKind::zmod || ring.kind() == SemiringKind::boolean)
            CHECK(eval_equivalent(t, nf.to_term(), ring, 1));
    };
    check_over(Semiring::naturals());
    check_over(Semiring::zmod(3));
}

TEST_CASE("zero action and unit action") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    Semiring nat = Semiring::naturals();
    Term a = Term::param(alpha, 0);

    Term zeroed = Term::scale(nat.make(0), Term::apply(alpha, 0, {a, a}));
    CHECK(normalize(zeroed, nat).is_zero());

    LinearForm unit = normalize(Term::scale(nat.make(1), a), nat);
    CHECK(unit.coefficients().size() == 1);
    CHECK(unit.coeff(Monomial::param(alpha, 0)) == nat.one());
}

TEST_CASE("guardedness follows the term shape") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    Semiring nat = Semiring::naturals();
    Term x1 = Term::var(alpha, 0);
    Term x2 = Term::var(alpha, 1);
    Term a = Term::param(alpha, 0);

    CHECK(is_proper(Term::apply(alpha, 0, {x1, x2})));
    CHECK_FALSE(is_proper(x1));
    CHECK_FALSE(is_proper(Term::scale(nat.make(2), x1) + a));
    CHECK(is_proper(Term::zero(alpha)));
    CHECK(is_proper(a));
    // a zero action guards anything
    CHECK(is_proper(Term::scale(nat.make(0), x1)));
    // the normal form of the improper sum indeed keeps a bare variable
    LinearForm nf = normalize(Term::scale(nat.make(2), x1) + a, nat);
    REQUIRE(nf.bare_variable().has_value());
    CHECK(nf.bare_variable()->str() == "x1");
    CHECK(nf.coeff(*nf.bare_variable()) == nat.make(2));
}

TEST_CASE("linear substitution expands by multilinearity") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    Semiring nat = Semiring::naturals();
    Term t = Term::apply(alpha, 0, {Term::var(alpha, 0), Term::param(alpha, 0)});

    // x1 -> 2 y1 + y2
    LinearForm row(nat, alpha);
    row.add(Monomial::var(alpha, 0), nat.make(2));
    row.add(Monomial::var(alpha, 1), nat.make(1));
    LinearForm out = substitute_linear(t, std::vector<LinearForm>{row}, nat);

    Monomial m1 = Monomial::apply(alpha, 0, {Monomial::var(alpha, 0), Monomial::param(alpha, 0)});
    Monomial m2 = Monomial::apply(alpha, 0, {Monomial::var(alpha, 1), Monomial::param(alpha, 0)});
    CHECK(out.coefficients().size() == 2);
    CHECK(out.coeff(m1) == nat.make(2));
    CHECK(out.coeff(m2) == nat.make(1));

    // cross-check by exhaustive evaluation over zmod 3: substituting into the
    // term syntactically and expanding must agree
    Semiring z3 = Semiring::zmod(3);
    Term t3 = Term::apply(alpha, 0, {Term::var(alpha, 0), Term::param(alpha, 0)});
    LinearForm row3(z3, alpha);
    row3.add(Monomial::var(alpha, 0), z3.make(2));
    row3.add(Monomial::var(alpha, 1), z3.make(1));
    Term substituted = Term::apply(
        alpha, 0, {Term::scale(z3.make(2), Term::var(alpha, 0)) + Term::var(alpha, 1),
                   Term::param(alpha, 0)});
    LinearForm out3 = substitute_linear(t3, std::vector<LinearForm>{row3}, z3);
    CHECK(eval_equivalent(substituted, out3.to_term(), z3, 2));
}

TEST_CASE("substituting with no variables or the zero form") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    Semiring nat = Semiring::naturals();

    LinearForm empty_row(nat, alpha);
    LinearForm c = substitute_linear(Term::param(alpha, 0),
                                     std::vector<LinearForm>{empty_row}, nat);
    CHECK(c.coeff(Monomial::param(alpha, 0)) == nat.one());

    LinearForm gone = substitute_linear(Term::var(alpha, 0),
                                        std::vector<LinearForm>{empty_row}, nat);
    CHECK(gone.is_zero());

    CHECK_THROWS_AS(substitute_linear(Term::var(alpha, 1),
                                      std::vector<LinearForm>{empty_row}, nat),
                    LookupError);
}

TEST_CASE("product interpretation evaluates terms") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    Semiring nat = Semiring::naturals();
    Term t = Term::apply(alpha, 0, {Term::param(alpha, 0), Term::var(alpha, 0)});
    std::vector<Value> env{nat.make(3)};
    std::map<ParamId, Value> par{{0, nat.make(2)}};
    CHECK(eval_term(t, env, par, nat) == nat.make(6));
    CHECK(eval_term(Term::zero(alpha), {}, {}, nat) == nat.zero());

    Semiring z3 = Semiring::zmod(3);
    Term s = Term::scale(z3.make(2), Term::param(alpha, 0)) + Term::param(alpha, 0);
    std::map<ParamId, Value> par3{{0, z3.make(1)}};
    CHECK(eval_term(s, {}, par3, z3) == z3.zero());

    CHECK_THROWS_AS(eval_term(t, {}, par, nat), LookupError);
}

TEST_CASE("normalization is sound and idempotent on random terms") {
    for (Semiring ring : {Semiring::zmod(3), Semiring::booleans()}) {
        CAPTURE(ring.name());
        auto alpha = testsup::make_alphabet({{"sigma", 2}, {"gamma", 1}}, {"a"});
        testsup::Rng rng(ring.kind() == SemiringKind::boolean ? 11 : 12);
        for (int i = 0; i < 120; ++i) {
            Term t = testsup::random_term(alpha, ring, 2, 3, rng);
            LinearForm nf = normalize(t, ring);
            CHECK(eval_equivalent(t, nf.to_term(), ring, 2));
            CHECK(normalize(nf.to_term(), ring) == nf);
        }
    }
}

TEST_CASE("normalizing a guarded term never produces a bare variable") {
    Semiring ring = Semiring::integers();
    auto alpha = testsup::make_alphabet({{"sigma", 2}, {"gamma", 1}}, {"a", "b"});
    testsup::Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        Term t = testsup::random_guarded_rhs(alpha, ring, 2, 3, rng);
        REQUIRE(is_proper(t));
        CHECK_FALSE(normalize(t, ring).has_bare_variable());
    }
}

TEST_CASE("substitution with identity rows is normalization") {
    Semiring ring = Semiring::zmod(5);
    auto alpha = testsup::make_alphabet({{"sigma", 2}, {"gamma", 1}}, {"a"});
    std::vector<LinearForm> identity;
    for (int i = 0; i < 3; ++i)
        identity.push_back(LinearForm::monomial(ring, Monomial::var(alpha, i), ring.one()));
    testsup::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        Term t = testsup::random_term(alpha, ring, 3, 3, rng);
        CHECK(substitute_linear(t, identity, ring) == normalize(t, ring));
    }
}

TEST_CASE("arity violations and unknown ids are rejected") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a"});
    CHECK_THROWS_AS(Term::apply(alpha, 0, {Term::param(alpha, 0)}), ArityError);
    CHECK_THROWS_AS(Term::apply(alpha, 3, {}), LookupError);
    CHECK_THROWS_AS(Term::param(alpha, 2), LookupError);
    CHECK_THROWS_AS(Monomial::apply(alpha, 0, {Monomial::param(alpha, 0)}), ArityError);
}

TEST_CASE("composite moduli can cancel multilinear products") {
    // over zmod 4, sigma(2a, 2b) expands to 4 * sigma(a, b) = 0
    Semiring z4 = Semiring::zmod(4);
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a", "b"});
    Term t = Term::apply(alpha, 0,
                         {Term::scale(z4.make(2), Term::param(alpha, 0)),
                          Term::scale(z4.make(2), Term::param(alpha, 1))});
    CHECK(normalize(t, z4).is_zero());

    // and the solver prunes such coefficients from supports
    LinearForm f(z4, alpha);
    f.add(Monomial::apply(alpha, 0, {Monomial::var(alpha, 0), Monomial::var(alpha, 0)}),
          z4.make(1));
    f.add(Monomial::param(alpha, 0), z4.make(2));
    Description d({z4.one()}, EquationSystem(alpha, z4, {f}));
    TruncatedSeries s = behavior(d, 2);
    Tree a = Tree::leaf(alpha, 0);
    CHECK(s.coeff(a) == z4.make(2));
    CHECK(s.coeff(Tree::node(alpha, 0, {a, a})) == z4.zero());  // 2 * 2
}

TEST_CASE("monomial order: size first, then structure") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}, {"gamma", 1}}, {"a", "b"});
    Monomial a = Monomial::param(alpha, 0);
    Monomial b = Monomial::param(alpha, 1);
    Monomial x1 = Monomial::var(alpha, 0);
    Monomial ga = Monomial::apply(alpha, 1, {a});
    Monomial saa = Monomial::apply(alpha, 0, {a, a});
    CHECK(x1 < a);       // variables before parameters
    CHECK(a < b);        // declaration order
    CHECK(b < ga);       // size wins
    CHECK(ga < saa);     // size wins again
    CHECK_FALSE(a < a);
}
