#include "rts/document.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>

namespace rts {

const Description& Document::find(std::string_view name) const {
    for (const auto& [n, d] : descriptions)
        if (n == name) return d;
    throw LookupError("no description named '" + std::string(name) + "'");
}

bool Document::has(std::string_view name) const {
    for (const auto& [n, d] : descriptions)
        if (n == name) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

enum class Tok { ident, number, variable, lparen, rparen, comma, plus, star, slash, equals, end };

struct Token {
    Tok kind;
    std::string text;
    int index = 0;  // variable index for Tok::variable (0-based)
    int line, col;
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;
    int line;
    std::vector<Token> tokens;

    explicit Lexer(std::string_view s, int line_no) : src(s), line(line_no) { run(); }

    [[noreturn]] void fail(const std::string& msg, int col) {
        throw ParseError(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(col) + ")",
                         line, col);
    }

    void run() {
        while (pos < src.size()) {
            char c = src[pos];
            int col = static_cast<int>(pos) + 1;
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                continue;
            }
            if (c == '#') break;  // comment to end of line
            if (std::isdigit(static_cast<unsigned char>(c)) ||
                (c == '-' && pos + 1 < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
                std::size_t start = pos;
                if (c == '-') ++pos;
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos])))
                    ++pos;
                tokens.push_back({Tok::number, std::string(src.substr(start, pos - start)), 0,
                                  line, col});
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos;
                while (pos < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                    ++pos;
                std::string word(src.substr(start, pos - start));
                if (word.size() >= 2 && word[0] == 'x' &&
                    std::all_of(word.begin() + 1, word.end(),
                                [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
                    if (word[1] == '0')
                        fail("variables are numbered x1, x2, ... without leading zeros", col);
                    if (word.size() > 7) fail("variable index too large", col);
                    tokens.push_back(
                        {Tok::variable, word, std::stoi(word.substr(1)) - 1, line, col});
                } else {
                    tokens.push_back({Tok::ident, std::move(word), 0, line, col});
                }
                continue;
            }
            Tok kind;
            switch (c) {
                case '(': kind = Tok::lparen; break;
                case ')': kind = Tok::rparen; break;
                case ',': kind = Tok::comma; break;
                case '+': kind = Tok::plus; break;
                case '*': kind = Tok::star; break;
                case '/': kind = Tok::slash; break;
                case '=': kind = Tok::equals; break;
                default: fail(std::string("unexpected character '") + c + "'", col);
            }
            tokens.push_back({kind, std::string(1, c), 0, line, col});
            ++pos;
        }
        tokens.push_back({Tok::end, "", 0, line, static_cast<int>(src.size()) + 1});
    }
};

// ---------------------------------------------------------------------------
// Token stream with the term grammar

struct TokenStream {
    std::vector<Token> tokens;
    std::size_t pos = 0;

    explicit TokenStream(std::vector<Token> t) : tokens(std::move(t)) {}

    const Token& peek(int ahead = 0) const {
        std::size_t i = pos + ahead;
        return i < tokens.size() ? tokens[i] : tokens.back();
    }
    const Token& next() {
        const Token& t = peek();
        if (t.kind != Tok::end) ++pos;
        return t;
    }
    bool at_end() const { return peek().kind == Tok::end; }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(msg + " (line " + std::to_string(t.line) + ", column " +
                             std::to_string(t.col) + ")",
                         t.line, t.col);
    }

    const Token& expect(Tok kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what);
        return next();
    }
};

struct TermParser {
    TokenStream& ts;
    const AlphabetRef& alphabet;
    const Semiring& ring;
    int num_vars;

    bool literal_ahead() const {
        const Token& t = ts.peek();
        if (t.kind == Tok::number) return true;
        return t.kind == Tok::ident && t.text == "inf" &&
               ring.kind() == SemiringKind::tropical;
    }

    Value parse_literal() {
        const Token& t = ts.next();
        try {
            return ring.parse(t.text);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(t.line) +
                                 ", column " + std::to_string(t.col) + ")",
                             t.line, t.col);
        }
    }

    Term parse_sum() {
        Term t = parse_product();
        while (ts.peek().kind == Tok::plus) {
            ts.next();
            t = std::move(t) + parse_product();
        }
        return t;
    }

    Term parse_product() {
        // Scalar prefixes: literal '*' ... repeated, then one atom.
        std::vector<Value> scalars;
        while (literal_ahead() && ts.peek(1).kind == Tok::star) {
            scalars.push_back(parse_literal());
            ts.next();  // '*'
        }
        Term t = parse_atom();
        for (auto it = scalars.rbegin(); it != scalars.rend(); ++it)
            t = Term::scale(*it, std::move(t));
        return t;
    }

    Term parse_atom() {
        const Token& t = ts.peek();
        switch (t.kind) {
            case Tok::number:
                if (t.text == "0") {
                    ts.next();
                    return Term::zero(alphabet);
                }
                ts.fail("a bare number is not a term (did you mean '" + t.text + " * ...'?)");
            case Tok::variable: {
                if (t.index >= num_vars)
                    ts.fail("variable " + t.text + " is not declared here");
                ts.next();
                return Term::var(alphabet, t.index);
            }
            case Tok::lparen: {
                ts.next();
                Term inner = parse_sum();
                ts.expect(Tok::rparen, "')'");
                return inner;
            }
            case Tok::ident: {
                if (auto p = alphabet->find_param(t.text)) {
                    ts.next();
                    return Term::param(alphabet, *p);
                }
                if (auto s = alphabet->find_symbol(t.text)) {
                    ts.next();
                    std::vector<Term> args;
                    if (ts.peek().kind == Tok::lparen) {
                        ts.next();
                        if (ts.peek().kind != Tok::rparen) {
                            args.push_back(parse_sum());
                            while (ts.peek().kind == Tok::comma) {
                                ts.next();
                                args.push_back(parse_sum());
                            }
                        }
                        ts.expect(Tok::rparen, "')'");
                    }
                    if (static_cast<int>(args.size()) != alphabet->rank(*s))
                        throw ArityError("symbol '" + t.text + "' has rank " +
                                         std::to_string(alphabet->rank(*s)) + ", got " +
                                         std::to_string(args.size()) + " arguments (line " +
                                         std::to_string(t.line) + ")");
                    return Term::apply(alphabet, *s, std::move(args));
                }
                ts.fail("unknown name '" + t.text + "'");
            }
            default:
                ts.fail("expected a term");
        }
    }
};

Term parse_term_tokens(TokenStream& ts, const AlphabetRef& alphabet, const Semiring& ring,
                       int num_vars) {
    TermParser p{ts, alphabet, ring, num_vars};
    return p.parse_sum();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool blank_or_comment(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Document parsing

Document parse_document(std::string_view text) {
    std::vector<std::string_view> lines = split_lines(text);
    std::size_t li = 0;
    auto next_line = [&]() -> std::optional<TokenStream> {
        while (li < lines.size()) {
            std::string_view line = lines[li];
            ++li;
            if (blank_or_comment(line)) continue;
            return TokenStream(Lexer(line, static_cast<int>(li)).tokens);
        }
        return std::nullopt;
    };

    // Header: semiring, alphabet, params.
    auto ts = next_line();
    if (!ts) throw ParseError("empty document: expected 'semiring ...'");
    {
        const Token& kw = ts->expect(Tok::ident, "'semiring'");
        if (kw.text != "semiring") ts->fail("expected 'semiring'");
    }
    const Token& ring_name = ts->expect(Tok::ident, "a semiring name");
    std::optional<std::uint64_t> modulus;
    if (ts->peek().kind == Tok::number) {
        const Token& mod = ts->next();
        if (mod.text.front() == '-' || mod.text.size() > 18)
            throw ParseError("invalid modulus '" + mod.text + "' (line " +
                                 std::to_string(mod.line) + ")",
                             mod.line, mod.col);
        modulus = std::stoull(mod.text);
    }
    Semiring ring = [&] {
        try {
            return Semiring::by_name(ring_name.text, modulus);
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(ring_name.line) +
                                 ")",
                             ring_name.line, ring_name.col);
        }
    }();
    if (!ts->at_end()) ts->fail("unexpected trailing input after the semiring header");

    ts = next_line();
    if (!ts) throw ParseError("expected 'alphabet ...'");
    {
        const Token& kw = ts->expect(Tok::ident, "'alphabet'");
        if (kw.text != "alphabet") ts->fail("expected 'alphabet'");
    }
    Alphabet alphabet;
    while (!ts->at_end()) {
        const Token& name = ts->expect(Tok::ident, "a symbol name");
        ts->expect(Tok::slash, "'/' and a rank");
        const Token& rank = ts->expect(Tok::number, "a rank");
        if (rank.text.front() == '-' || rank.text.size() > 3)
            throw ParseError("invalid rank '" + rank.text + "' (line " +
                                 std::to_string(rank.line) + ")",
                             rank.line, rank.col);
        try {
            alphabet.add_symbol(name.text, std::stoi(rank.text));
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(name.line) + ")",
                             name.line, name.col);
        }
    }

    ts = next_line();
    if (!ts) throw ParseError("expected 'params ...'");
    {
        const Token& kw = ts->expect(Tok::ident, "'params'");
        if (kw.text != "params") ts->fail("expected 'params'");
    }
    while (!ts->at_end()) {
        const Token& name = ts->expect(Tok::ident, "a parameter name");
        try {
            alphabet.add_param(name.text);
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()) + " (line " + std::to_string(name.line) + ")",
                             name.line, name.col);
        }
    }
    AlphabetRef alpha = std::make_shared<const Alphabet>(std::move(alphabet));

    // Description blocks.
    Document doc{ring, alpha, {}};
    while ((ts = next_line())) {
        const Token& kw = ts->expect(Tok::ident, "'desc'");
        if (kw.text != "desc") ts->fail("expected 'desc'");
        const Token& name = ts->expect(Tok::ident, "a description name");
        if (!Alphabet::valid_name(name.text))
            ts->fail("invalid description name '" + name.text + "'");
        if (doc.has(name.text))
            ts->fail("duplicate description name '" + name.text + "'");
        if (!ts->at_end()) ts->fail("unexpected trailing input after the description name");

        auto body = next_line();
        if (!body) throw ParseError("expected 'final ...' in description '" + name.text + "'");
        {
            const Token& fw = body->expect(Tok::ident, "'final'");
            if (fw.text != "final") body->fail("expected 'final'");
        }
        std::vector<Value> weights;
        while (!body->at_end()) {
            const Token& lit = body->peek();
            if (lit.kind != Tok::number && !(lit.kind == Tok::ident && lit.text == "inf"))
                body->fail("expected a semiring literal");
            body->next();
            try {
                weights.push_back(ring.parse(lit.text));
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " (line " + std::to_string(lit.line) +
                                     ")",
                                 lit.line, lit.col);
            }
        }

        // Equations until 'end'; each must bind the next variable in order.
        std::vector<Term> rhs_terms;
        std::vector<int> rhs_lines;
        bool closed = false;
        while (auto eq = next_line()) {
            if (eq->peek().kind == Tok::ident && eq->peek().text == "end") {
                eq->next();
                if (!eq->at_end()) eq->fail("unexpected trailing input after 'end'");
                closed = true;
                break;
            }
            const Token& lhs = eq->peek();
            if (lhs.kind != Tok::variable)
                eq->fail("expected 'x" + std::to_string(rhs_terms.size() + 1) + " = ...' or 'end'");
            if (lhs.index != static_cast<int>(rhs_terms.size()))
                eq->fail("equations must be declared in order; expected x" +
                         std::to_string(rhs_terms.size() + 1));
            eq->next();
            eq->expect(Tok::equals, "'='");
            int line_no = lhs.line;
            Term t = parse_term_tokens(*eq, alpha, ring,
                                       static_cast<int>(weights.size()));
            if (!eq->at_end()) eq->fail("unexpected trailing input after the equation");
            rhs_terms.push_back(std::move(t));
            rhs_lines.push_back(line_no);
        }
        if (!closed)
            throw ParseError("description '" + name.text + "' is not closed by 'end'");
        if (weights.size() != rhs_terms.size())
            throw ParseError("description '" + name.text + "' declares " +
                             std::to_string(weights.size()) + " final weights but " +
                             std::to_string(rhs_terms.size()) + " equations");

        std::vector<LinearForm> forms;
        forms.reserve(rhs_terms.size());
        for (std::size_t i = 0; i < rhs_terms.size(); ++i) {
            if (!is_proper(rhs_terms[i])) {
                LinearForm nf = normalize(rhs_terms[i], ring);
                std::string offender =
                    nf.bare_variable() ? nf.bare_variable()->str() : rhs_terms[i].str();
                throw ImproperSystemError(
                    "equation for x" + std::to_string(i + 1) + " in description '" + name.text +
                    "' is not guarded: monomial '" + offender + "' (line " +
                    std::to_string(rhs_lines[i]) + ")");
            }
            forms.push_back(normalize(rhs_terms[i], ring));
        }
        doc.descriptions.emplace_back(
            name.text, Description(std::move(weights), EquationSystem(alpha, ring, forms)));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// Printing

std::string print_document(const Document& doc) {
    std::ostringstream os;
    os << "semiring " << doc.ring.name() << "\n";
    os << "alphabet";
    for (SymbolId s = 0; s < doc.alphabet->num_symbols(); ++s)
        os << " " << doc.alphabet->symbol_name(s) << "/" << doc.alphabet->rank(s);
    os << "\nparams";
    for (ParamId a = 0; a < doc.alphabet->num_params(); ++a)
        os << " " << doc.alphabet->param_name(a);
    os << "\n";
    for (const auto& [name, d] : doc.descriptions) {
        os << "desc " << name << "\n  final";
        for (const Value& v : d.final_weights()) os << " " << v.str();
        os << "\n";
        for (int i = 0; i < d.num_vars(); ++i)
            os << "  x" << i + 1 << " = " << d.system().rhs(i).str() << "\n";
        os << "end\n";
    }
    return os.str();
}

Term parse_term(std::string_view text, const AlphabetRef& alphabet, const Semiring& ring,
                int num_vars) {
    TokenStream ts(Lexer(text, 1).tokens);
    Term t = parse_term_tokens(ts, alphabet, ring, num_vars);
    if (!ts.at_end()) ts.fail("unexpected trailing input after the term");
    return t;
}

Tree parse_tree(std::string_view text, const AlphabetRef& alphabet) {
    TokenStream ts(Lexer(text, 1).tokens);
    std::function<Tree()> parse = [&]() -> Tree {
        const Token& t = ts.peek();
        if (t.kind != Tok::ident) ts.fail("expected a parameter or symbol name");
        if (auto p = alphabet->find_param(t.text)) {
            ts.next();
            return Tree::leaf(alphabet, *p);
        }
        auto s = alphabet->find_symbol(t.text);
        if (!s) ts.fail("unknown name '" + t.text + "'");
        ts.next();
        std::vector<Tree> children;
        if (ts.peek().kind == Tok::lparen) {
            ts.next();
            if (ts.peek().kind != Tok::rparen) {
                children.push_back(parse());
                while (ts.peek().kind == Tok::comma) {
                    ts.next();
                    children.push_back(parse());
                }
            }
            ts.expect(Tok::rparen, "')'");
        }
        if (static_cast<int>(children.size()) != alphabet->rank(*s))
            throw ArityError("symbol '" + t.text + "' has rank " +
                             std::to_string(alphabet->rank(*s)) + ", got " +
                             std::to_string(children.size()) + " children");
        return Tree::node(alphabet, *s, std::move(children));
    };
    Tree out = parse();
    if (!ts.at_end()) ts.fail("unexpected trailing input after the tree");
    return out;
}

Matrix parse_matrix(std::string_view text, const Semiring& ring) {
    std::istringstream is{std::string(text)};
    int rows, cols;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw ParseError("matrix file must start with 'rows cols'");
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::string lit;
            if (!(is >> lit))
                throw ParseError("matrix file ends before entry " + std::to_string(i + 1) + "," +
                                 std::to_string(j + 1));
            m.set(i, j, ring.parse(lit));
        }
    std::string trailing;
    if (is >> trailing) throw ParseError("unexpected trailing input in matrix file");
    return m;
}

std::string print_matrix(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) os << " ";
            os << m.at(i, j).str();
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace rts
