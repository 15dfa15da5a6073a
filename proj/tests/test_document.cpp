#include <doctest.h>

#include "rts/document.hpp"
#include "rts/series.hpp"
#include "test_support.hpp"

using namespace rts;

namespace {

const char* kD1 = R"(semiring nat
alphabet sigma/2 gamma/1
params a b
desc D1
  final 1 0
  x1 = 2 * sigma(x1, x2) + 3 * a
  x2 = 5 * b
end
)";

}  // namespace

TEST_CASE("parsing the running example document") {
    Document doc = parse_document(kD1);
    CHECK(doc.ring == Semiring::naturals());
    CHECK(doc.alphabet->num_symbols() == 2);
    CHECK(doc.alphabet->rank(0) == 2);
    CHECK(doc.alphabet->num_params() == 2);
    REQUIRE(doc.descriptions.size() == 1);
    const Description& d1 = doc.find("D1");
    CHECK(d1.num_vars() == 2);
    CHECK(d1.final_weights()[0] == doc.ring.one());

    Tree sab = parse_tree("sigma(a, b)", doc.alphabet);
    CHECK(wta_coeff(to_wta(d1), sab) == doc.ring.make(30));

    CHECK_THROWS_AS(doc.find("D2"), LookupError);
}

TEST_CASE("printing is canonical and parsing inverts it") {
    Document doc = parse_document(kD1);
    std::string printed = print_document(doc);
    CHECK(printed ==
          "semiring nat\n"
          "alphabet sigma/2 gamma/1\n"
          "params a b\n"
          "desc D1\n"
          "  final 1 0\n"
          "  x1 = 3 * a + 2 * sigma(x1, x2)\n"
          "  x2 = 5 * b\n"
          "end\n");
    Document again = parse_document(printed);
    CHECK(again.ring == doc.ring);
    CHECK(*again.alphabet == *doc.alphabet);
    CHECK(again.find("D1") == doc.find("D1"));
    CHECK(print_document(again) == printed);
}

TEST_CASE("round-trip on random documents") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}, {"gamma", 1}, {"c", 0}}, {"a", "b"});
    int idx = 0;
    for (Semiring ring : {Semiring::naturals(), Semiring::integers(), Semiring::zmod(5),
                          Semiring::booleans(), Semiring::tropical()}) {
        CAPTURE(ring.name());
        testsup::Rng rng(900 + idx++);
        Document doc{ring, alpha, {}};
        for (int i = 0; i < 4; ++i)
            doc.descriptions.emplace_back(
                "d" + std::to_string(i),
                testsup::random_description(alpha, ring, 1 + rng.below(3), 2, rng));
        Document reparsed = parse_document(print_document(doc));
        REQUIRE(reparsed.descriptions.size() == doc.descriptions.size());
        for (std::size_t i = 0; i < doc.descriptions.size(); ++i) {
            CHECK(reparsed.descriptions[i].first == doc.descriptions[i].first);
            CHECK(reparsed.descriptions[i].second == doc.descriptions[i].second);
        }
    }
}

TEST_CASE("unguarded equations are rejected with the offending monomial") {
    const char* text =
        "semiring nat\nalphabet sigma/2\nparams a\n"
        "desc D\n  final 1 0\n  x1 = x2\n  x2 = a\nend\n";
    CHECK_THROWS_WITH_AS(parse_document(text),
                         doctest::Contains("x2"), ImproperSystemError);
}

TEST_CASE("arity errors carry the symbol") {
    const char* text =
        "semiring nat\nalphabet sigma/2\nparams a\n"
        "desc D\n  final 1\n  x1 = sigma(a)\nend\n";
    CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("sigma"), ArityError);
}

TEST_CASE("syntax errors point at the line") {
    const char* text = "semiring nat\nalphabet sigma/2\nparams a\ndesc D\n  final 1\n  x1 = )\nend\n";
    try {
        parse_document(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 6);
        CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
}

TEST_CASE("header and structural mistakes") {
    CHECK_THROWS_AS(parse_document(""), ParseError);
    CHECK_THROWS_AS(parse_document("semiring frob\nalphabet\nparams\n"), ParseError);
    CHECK_THROWS_AS(parse_document("semiring zmod\nalphabet\nparams\n"), ParseError);
    CHECK_THROWS_AS(parse_document("semiring nat\nalphabet sigma\nparams\n"), ParseError);
    // duplicate names across namespaces
    CHECK_THROWS_AS(parse_document("semiring nat\nalphabet f/1\nparams f\n"), ParseError);
    // reserved and variable-shaped names
    CHECK_THROWS_AS(parse_document("semiring nat\nalphabet end/1\nparams a\n"), ParseError);
    CHECK_THROWS_AS(parse_document("semiring nat\nalphabet x1/1\nparams a\n"), ParseError);
    // weight count mismatch
    CHECK_THROWS_AS(
        parse_document("semiring nat\nalphabet\nparams a\ndesc D\n final 1 1\n x1 = a\nend\n"),
        ParseError);
    // equations out of order
    CHECK_THROWS_AS(
        parse_document(
            "semiring nat\nalphabet\nparams a\ndesc D\n final 1 1\n x2 = a\n x1 = a\nend\n"),
        ParseError);
    // unterminated description
    CHECK_THROWS_AS(
        parse_document("semiring nat\nalphabet\nparams a\ndesc D\n final 1\n x1 = a\n"),
        ParseError);
    // duplicate description names
    CHECK_THROWS_AS(parse_document("semiring nat\nalphabet\nparams a\n"
                                   "desc D\n final 1\n x1 = a\nend\n"
                                   "desc D\n final 1\n x1 = a\nend\n"),
                    ParseError);
    // undeclared variable in a right-hand side
    CHECK_THROWS_AS(
        parse_document("semiring nat\nalphabet sigma/2\nparams a\n"
                       "desc D\n final 1\n x1 = sigma(x3, a)\nend\n"),
        ParseError);
}

TEST_CASE("term grammar: precedence and parentheses") {
    auto alpha = testsup::make_alphabet({{"sigma", 2}}, {"a", "b"});
    Semiring nat = Semiring::naturals();

    // * binds tighter than +
    LinearForm f = normalize(parse_term("2 * a + b", alpha, nat, 0), nat);
    CHECK(f.coeff(Monomial::param(alpha, 0)) == nat.make(2));
    CHECK(f.coeff(Monomial::param(alpha, 1)) == nat.one());

    LinearForm g = normalize(parse_term("2 * (a + b)", alpha, nat, 0), nat);
    CHECK(g.coeff(Monomial::param(alpha, 0)) == nat.make(2));
    CHECK(g.coeff(Monomial::param(alpha, 1)) == nat.make(2));

    LinearForm h = normalize(parse_term("2 * 3 * a", alpha, nat, 0), nat);
    CHECK(h.coeff(Monomial::param(alpha, 0)) == nat.make(6));

    CHECK(normalize(parse_term("0", alpha, nat, 0), nat).is_zero());
    CHECK(normalize(parse_term("0 * sigma(a, a)", alpha, nat, 0), nat).is_zero());

    CHECK_THROWS_AS(parse_term("2", alpha, nat, 0), ParseError);
    CHECK_THROWS_AS(parse_term("a +", alpha, nat, 0), ParseError);
    CHECK_THROWS_AS(parse_term("q", alpha, nat, 0), ParseError);
    CHECK_THROWS_AS(parse_term("x1", alpha, nat, 0), ParseError);  // no variables declared
}

TEST_CASE("tropical documents use inf and the numeral scale") {
    const char* text =
        "semiring tropical\nalphabet sigma/2\nparams a\n"
        "desc T\n  final 0\n  x1 = 3 * a + inf * sigma(x1, x1)\nend\n";
    Document doc = parse_document(text);
    const Description& t = doc.find("T");
    // inf is the zero weight, so the sigma monomial vanishes
    CHECK(t.system().rhs(0).coefficients().size() == 1);
    Tree a = Tree::leaf(doc.alphabet, 0);
    CHECK(behavior(t, 1).coeff(a) == doc.ring.make(3));
    // printing elides the unit coefficient (the numeral 0)
    std::string printed = print_document(doc);
    CHECK(printed.find("x1 = 3 * a\n") != std::string::npos);
    Document again = parse_document(printed);
    CHECK(again.find("T") == t);
}

TEST_CASE("nullary symbols parse bare or with parentheses") {
    auto doc = parse_document(
        "semiring nat\nalphabet c/0 sigma/2\nparams\n"
        "desc D\n  final 1\n  x1 = c + sigma(x1, c())\nend\n");
    const Description& d = doc.find("D");
    Tree c = parse_tree("c", doc.alphabet);
    CHECK(behavior(d, 0).coeff(c) == doc.ring.one());
    CHECK(parse_tree("c()", doc.alphabet) == c);
    // canonical print uses the bare form
    CHECK(print_document(doc).find("sigma(x1, c)") != std::string::npos);
}

TEST_CASE("matrix files round-trip") {
    Semiring z5 = Semiring::zmod(5);
    Matrix m(z5, 2, 3);
    testsup::Rng rng(33);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m.set(i, j, testsup::random_value(z5, rng));
    CHECK(parse_matrix(print_matrix(m), z5) == m);

    CHECK_THROWS_AS(parse_matrix("junk", z5), ParseError);
    CHECK_THROWS_AS(parse_matrix("2 2\n1 2 3", z5), ParseError);
    CHECK_THROWS_AS(parse_matrix("1 1\n1\nleftover", z5), ParseError);

    Semiring ints = Semiring::integers();
    Matrix neg = parse_matrix("1 2\n-2 -1\n", ints);
    CHECK(neg.at(0, 0) == ints.make(-2));
    CHECK(neg.at(0, 1) == ints.make(-1));
}

TEST_CASE("comments and blank lines are ignored") {
    Document doc = parse_document(
        "# weighted example\n\nsemiring nat\n# the alphabet\nalphabet sigma/2\nparams a b\n\n"
        "desc D1\n  final 1 0   # weights\n  x1 = 2 * sigma(x1, x2) + 3 * a\n  x2 = 5 * b\nend\n");
    CHECK(doc.find("D1").num_vars() == 2);
}
