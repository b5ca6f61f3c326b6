#include "futs/textio.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "futs/ident.hpp"

namespace futs {

std::string Diagnostic::to_string() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (severity == Severity::Error ? "error" : "warning") + ": " + message;
}

namespace {

enum class Tok { Ident, Quoted, Number, Punct, Arrow, End, Bad };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
    bool line_start;
};

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    bool at_line_start = true;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
                at_line_start = true;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t{Tok::Bad, {}, line, col, at_line_start};
        at_line_start = false;
        if (is_alpha(c)) {
            std::size_t j = i + 1;
            while (j < src.size()) {
                const char d = src[j];
                if (is_alpha(d) || is_digit(d) || d == '\'') {
                    ++j;
                } else if (d == '-' && j + 1 < src.size() && is_alpha(src[j + 1])) {
                    j += 2;
                } else {
                    break;
                }
            }
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (is_digit(c)) {
            std::size_t j = i;
            while (j < src.size() && is_digit(src[j])) ++j;
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (c == '`') {
            std::size_t j = i + 1;
            std::string text;
            bool closed = false;
            while (j < src.size() && src[j] != '\n') {
                if (src[j] == '\\' && j + 1 < src.size()) {
                    text += src[j + 1];
                    j += 2;
                } else if (src[j] == '`') {
                    closed = true;
                    ++j;
                    break;
                } else {
                    text += src[j++];
                }
            }
            if (closed) {
                t.kind = Tok::Quoted;
                t.text = std::move(text);
            } else {
                t.text = "unterminated quoted identifier";
            }
            advance(j - i);
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            t.kind = Tok::Arrow;
            t.text = "->";
            advance(2);
        } else if (std::string_view("{}[](),:=<>|&/").find(c) != std::string_view::npos) {
            t.kind = Tok::Punct;
            t.text = std::string(1, c);
            advance(1);
        } else {
            t.text = std::string("unexpected character '") + c + "'";
            advance(1);
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{Tok::End, {}, line, col, true});
    return out;
}

struct SyntaxError {
    std::size_t line;
    std::size_t column;
    std::string message;
};

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Quoted: return quote_id(t.text);
    default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

protected:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = peek();
        if (t.kind == Tok::Bad) fail(t, t.text);
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool at_punct(char c, std::size_t ahead = 0) const {
        const Token& t = peek(ahead);
        return t.kind == Tok::Punct && t.text[0] == c;
    }
    bool at_ident(std::string_view word) const { return peek().kind == Tok::Ident && peek().text == word; }
    bool at_id(std::size_t ahead = 0) const {
        const auto k = peek(ahead).kind;
        return k == Tok::Ident || k == Tok::Quoted;
    }

    [[noreturn]] static void fail(const Token& at, std::string message) {
        throw SyntaxError{at.line, at.column, std::move(message)};
    }

    const Token& expect_punct(char c) {
        if (!at_punct(c)) fail(peek(), std::string("expected '") + c + "', found " + describe(peek()));
        return next();
    }
    const Token& expect_id(std::string_view what) {
        if (!at_id()) fail(peek(), "expected " + std::string(what) + ", found " + describe(peek()));
        return next();
    }

    void error(std::size_t line, std::size_t column, std::string message) {
        diags_.push_back(Diagnostic{line, column, std::move(message), Diagnostic::Severity::Error});
    }
    void error(const Token& at, std::string message) { error(at.line, at.column, std::move(message)); }
    void warning(const Token& at, std::string message) {
        diags_.push_back(Diagnostic{at.line, at.column, std::move(message), Diagnostic::Severity::Warning});
    }
    bool has_errors() const {
        return std::any_of(diags_.begin(), diags_.end(),
                           [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
    }

    std::vector<std::string> id_set(std::string_view what) {
        expect_punct('{');
        std::vector<std::string> ids;
        std::set<std::string> seen;
        if (!at_punct('}')) {
            for (;;) {
                const Token& t = expect_id(what);
                if (!seen.insert(t.text).second) fail(t, "duplicate " + std::string(what) + " " + quote_id(t.text));
                ids.push_back(t.text);
                if (!at_punct(',')) break;
                next();
            }
        }
        expect_punct('}');
        return ids;
    }

    MonoidDesc monoid() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) fail(t, "expected a monoid, found " + describe(t));
        next();
        if (t.text == "bool-or") return MonoidDesc::bool_or();
        if (t.text == "nat-plus") return MonoidDesc::nat_plus();
        if (t.text == "nat-max") return MonoidDesc::nat_max();
        if (t.text == "rat-plus") return MonoidDesc::rat_plus();
        if (t.text == "prod") {
            expect_punct('(');
            std::vector<MonoidDesc> factors{monoid()};
            while (at_punct(',')) {
                next();
                factors.push_back(monoid());
            }
            expect_punct(')');
            return MonoidDesc::product(std::move(factors));
        }
        if (t.text == "pow") {
            expect_punct('(');
            const Token& open = peek();
            auto labels = id_set("label");
            if (labels.empty()) fail(open, "a power monoid needs a non-empty label set");
            expect_punct(',');
            MonoidDesc inner = monoid();
            expect_punct(')');
            return MonoidDesc::power(std::move(labels), std::move(inner));
        }
        fail(t, "unknown monoid " + describe(t));
    }

    mpz_class natural() {
        const Token& t = peek();
        if (t.kind != Tok::Number) fail(t, "expected a natural number, found " + describe(t));
        next();
        return mpz_class(t.text);
    }

    Weight weight(const MonoidDesc& m) {
        const Token& t = peek();
        switch (m.kind()) {
        case MonoidKind::BoolOr:
            if (t.kind == Tok::Ident && (t.text == "tt" || t.text == "ff")) {
                next();
                return Weight::boolean(t.text == "tt");
            }
            fail(t, "expected tt or ff for " + m.to_string() + ", found " + describe(t));
        case MonoidKind::NatPlus:
        case MonoidKind::NatMax: {
            if (t.kind != Tok::Number) fail(t, "expected a natural for " + m.to_string() + ", found " + describe(t));
            return Weight::natural(natural());
        }
        case MonoidKind::RatPlus: {
            if (t.kind != Tok::Number) fail(t, "expected a rational for rat-plus, found " + describe(t));
            mpz_class num = natural();
            mpz_class den = 1;
            if (at_punct('/')) {
                next();
                const Token& d = peek();
                den = natural();
                if (den == 0) fail(d, "zero denominator");
            }
            return Weight::rational(mpq_class(num, den));
        }
        case MonoidKind::Product: {
            expect_punct('(');
            Weight::Tuple items;
            const auto& factors = m.factors();
            for (std::size_t k = 0; k < factors.size(); ++k) {
                if (k) {
                    if (!at_punct(',')) {
                        fail(peek(), "tuple for " + m.to_string() + " needs " + std::to_string(factors.size()) +
                                         " components, found " + std::to_string(k));
                    }
                    next();
                }
                items.push_back(weight(factors[k]));
            }
            if (at_punct(',')) {
                fail(peek(), "tuple for " + m.to_string() + " has more than " + std::to_string(factors.size()) +
                                 " components");
            }
            expect_punct(')');
            return Weight::tuple(std::move(items));
        }
        case MonoidKind::Power: {
            expect_punct('{');
            Weight::Entries entries;
            std::set<std::string> seen;
            if (!at_punct('}')) {
                for (;;) {
                    const Token& l = expect_id("label");
                    if (!std::binary_search(m.labels().begin(), m.labels().end(), l.text)) {
                        fail(l, "label " + quote_id(l.text) + " is not in " + m.to_string());
                    }
                    if (!seen.insert(l.text).second) fail(l, "duplicate label " + quote_id(l.text));
                    expect_punct(':');
                    entries.emplace_back(l.text, weight(m.inner()));
                    if (!at_punct(',')) break;
                    next();
                }
            }
            expect_punct('}');
            return Weight::power(std::move(entries));
        }
        }
        fail(t, "unsupported monoid");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic> diags_;
};

// ---------------------------------------------------------------------------

class SystemParser : Parser {
public:
    using Parser::Parser;

    ParseResult<Futs> run() {
        ParseResult<Futs> result;
        try {
            if (!at_ident("futs")) fail(peek(), "expected 'futs' header, found " + describe(peek()));
            next();
        } catch (const SyntaxError& e) {
            error(e.line, e.column, e.message);
            result.diagnostics = std::move(diags_);
            return result;
        }
        while (peek().kind != Tok::End) {
            try {
                statement();
            } catch (const SyntaxError& e) {
                error(e.line, e.column, e.message);
                recover();
            }
        }
        finish(result);
        return result;
    }

private:
    struct Row {
        std::optional<std::vector<std::string>> labels;
        std::optional<std::vector<MonoidDesc>> monoids;
        const Token* first = nullptr;
    };

    void recover() {
        if (peek().kind != Tok::End) ++pos_;
        while (peek().kind != Tok::End) {
            const Token& t = peek();
            if (t.line_start && t.kind == Tok::Ident &&
                (t.text == "labels" || t.text == "monoids" || t.text == "states" || t.text == "trans")) {
                return;
            }
            ++pos_;
        }
    }

    std::size_t row_index(const Token& t, char prefix) {
        if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != prefix ||
            !std::all_of(t.text.begin() + 1, t.text.end(), is_digit)) {
            fail(t, std::string("expected ") + prefix + "<i>, found " + describe(t));
        }
        if (t.text.size() > 2 && t.text[1] == '0') fail(t, "leading zero in component index");
        if (t.text.size() > 7) fail(t, "component index too large");
        return std::stoul(t.text.substr(1));
    }

    void statement() {
        const Token& kw = peek();
        if (kw.kind != Tok::Ident) fail(kw, "expected a statement, found " + describe(kw));
        if (kw.text == "labels") {
            next();
            const Token& name = next();
            const std::size_t i = row_index(name, 'A');
            expect_punct('=');
            const Token& open = peek();
            auto labels = id_set("label");
            if (labels.empty()) fail(open, "label set A" + std::to_string(i) + " is empty");
            if (sig_built_) fail(kw, "labels must be declared before states and transitions");
            Row& row = rows_[i];
            if (row.labels) fail(name, "A" + std::to_string(i) + " declared twice");
            row.labels = std::move(labels);
            if (!row.first) row.first = &kw;
        } else if (kw.text == "monoids") {
            next();
            const Token& name = next();
            const std::size_t i = row_index(name, 'M');
            expect_punct('=');
            expect_punct('[');
            std::vector<MonoidDesc> ms;
            if (at_punct(']')) fail(peek(), "monoid row M" + std::to_string(i) + " is empty");
            ms.push_back(monoid());
            while (at_punct(',')) {
                next();
                ms.push_back(monoid());
            }
            expect_punct(']');
            if (sig_built_) fail(kw, "monoids must be declared before states and transitions");
            Row& row = rows_[i];
            if (row.monoids) fail(name, "M" + std::to_string(i) + " declared twice");
            row.monoids = std::move(ms);
            if (!row.first) row.first = &kw;
        } else if (kw.text == "states") {
            next();
            auto states = id_set("state");
            if (states_) fail(kw, "states declared twice");
            if (states.empty()) fail(kw, "empty carrier");
            states_ = std::set<std::string>(states.begin(), states.end());
            build_signature(kw);
        } else if (kw.text == "trans") {
            next();
            transition(kw);
        } else {
            fail(kw, "unknown statement " + describe(kw));
        }
    }

    void build_signature(const Token& at) {
        if (sig_built_) return;
        sig_built_ = true;
        if (rows_.empty()) {
            error(at, "no components declared");
            sig_failed_ = true;
            return;
        }
        std::vector<Component> comps;
        std::size_t expected = 0;
        for (const auto& [i, row] : rows_) {
            if (i != expected) {
                error(*row.first, "component " + std::to_string(expected) + " is missing");
                sig_failed_ = true;
                return;
            }
            ++expected;
            if (!row.labels) {
                error(*row.first, "A" + std::to_string(i) + " is not declared");
                sig_failed_ = true;
            } else if (!row.monoids) {
                error(*row.first, "M" + std::to_string(i) + " is not declared");
                sig_failed_ = true;
            } else {
                comps.push_back(Component{*row.labels, *row.monoids});
            }
        }
        if (!sig_failed_) sig_ = FutsSignature(std::move(comps));
    }

    void transition(const Token& kw) {
        const Token& idx = peek();
        const mpz_class i_big = natural();
        if (!states_) fail(kw, "transitions must come after the states declaration");
        if (sig_failed_) {
            recover_silently();
            return;
        }
        if (i_big >= sig_->size()) fail(idx, "component " + idx.text + " is not declared");
        const std::size_t i = i_big.get_ui();
        const Token& x = expect_id("state");
        if (!states_->count(x.text)) fail(x, "unknown state " + quote_id(x.text));
        const Token& a = expect_id("label");
        const Component& row = sig_->component(i);
        if (!row.has_label(a.text)) fail(a, "label " + quote_id(a.text) + " is not in A" + std::to_string(i));
        if (peek().kind != Tok::Arrow) fail(peek(), "expected '->', found " + describe(peek()));
        next();
        WeightTerm t = term(row.monoids, 0);
        if (!seen_.insert({i, x.text, a.text}).second) {
            fail(kw, "duplicate transition for component " + std::to_string(i) + ", state " + quote_id(x.text) +
                         ", label " + quote_id(a.text));
        }
        trans_.push_back({i, x.text, a.text, std::move(t)});
    }

    void recover_silently() {
        while (peek().kind != Tok::End && !(peek().line_start && peek().kind == Tok::Ident)) ++pos_;
    }

    WeightTerm term(const std::vector<MonoidDesc>& stack, std::size_t level) {
        const std::size_t depth = stack.size() - level;
        const Token& t = peek();
        if (depth == 0) {
            if (!at_id()) fail(t, "depth mismatch: expected a state id, found " + describe(t));
            next();
            if (!states_->count(t.text)) fail(t, "unknown state " + quote_id(t.text));
            return WeightTerm::leaf(t.text);
        }
        if (!at_punct('{')) {
            fail(t, "depth mismatch: expected a term of depth " + std::to_string(depth) + ", found " + describe(t));
        }
        next();
        std::vector<WeightTerm::Entry> entries;
        std::set<WeightTerm> keys;
        if (!at_punct('}')) {
            for (;;) {
                const Token& key_tok = peek();
                WeightTerm key = term(stack, level + 1);
                expect_punct(':');
                Weight w = weight(stack[level]);
                if (!keys.insert(key).second) warning(key_tok, "duplicate key " + key.to_string() + "; weights are added");
                entries.emplace_back(std::move(key), std::move(w));
                if (!at_punct(',')) break;
                next();
            }
        }
        expect_punct('}');
        return WeightTerm::node(stack[level], depth, std::move(entries));
    }

    void finish(ParseResult<Futs>& result) {
        if (!has_errors() && !states_) error(peek(), "missing states declaration");
        if (!has_errors() && !sig_built_) build_signature(peek());
        if (!has_errors()) {
            Futs s(*sig_, std::vector<std::string>(states_->begin(), states_->end()));
            for (auto& [i, x, a, t] : trans_) s.set_transition(i, x, a, std::move(t));
            for (const auto& issue : validate(s)) error(1, 1, issue.to_string());
            if (!has_errors()) result.value = std::move(s);
        }
        result.diagnostics = std::move(diags_);
    }

    struct Trans {
        std::size_t i;
        std::string x;
        std::string a;
        WeightTerm t;
    };

    std::map<std::size_t, Row> rows_;
    bool sig_built_ = false;
    bool sig_failed_ = false;
    std::optional<FutsSignature> sig_;
    std::optional<std::set<std::string>> states_;
    std::set<std::tuple<std::size_t, std::string, std::string>> seen_;
    std::vector<Trans> trans_;
};

class MonoidParser : Parser {
public:
    using Parser::Parser;

    ParseResult<MonoidDesc> run() {
        ParseResult<MonoidDesc> result;
        try {
            MonoidDesc m = monoid();
            if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after monoid");
            result.value = std::move(m);
        } catch (const SyntaxError& e) {
            error(e.line, e.column, e.message);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }
};

class FormulaParser : Parser {
public:
    FormulaParser(std::string_view text, const FutsSignature& sig) : Parser(text), sig_(sig) {}

    ParseResult<Formula> run() {
        ParseResult<Formula> result;
        try {
            if (peek().kind == Tok::End) fail(peek(), "empty formula");
            Formula phi = conjunction();
            if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()) + " after formula");
            result.value = std::move(phi);
        } catch (const SyntaxError& e) {
            error(e.line, e.column, e.message);
        }
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    Formula conjunction() {
        Formula left = unary();
        while (at_punct('&')) {
            next();
            left = Formula::conj(std::move(left), unary());
        }
        return left;
    }

    Formula unary() {
        const Token& t = peek();
        if (t.kind == Tok::Ident && t.text == "T") {
            next();
            return Formula::top();
        }
        if (at_punct('(')) {
            next();
            Formula inner = conjunction();
            expect_punct(')');
            return inner;
        }
        if (at_punct('<')) return diamond();
        fail(t, "expected a formula, found " + describe(t));
    }

    Formula diamond() {
        const Token& open = next();
        std::size_t i = 0;
        if (peek().kind == Tok::Number && at_punct('|', 1)) {
            const Token& idx = peek();
            const mpz_class big = natural();
            if (big >= sig_.size()) {
                fail(idx, "component " + idx.text + " out of range (signature has " + std::to_string(sig_.size()) +
                              " components)");
            }
            i = big.get_ui();
            next();
        } else if (sig_.size() != 1) {
            fail(peek(), "component index required: the signature has " + std::to_string(sig_.size()) + " components");
        }
        const Component& row = sig_.component(i);
        std::string label;
        if (at_id() && at_punct('|', 1)) {
            const Token& a = next();
            if (!row.has_label(a.text)) fail(a, "label " + quote_id(a.text) + " is not in A" + std::to_string(i));
            label = a.text;
            next();
        } else if (row.labels.size() == 1) {
            label = row.labels.front();
        } else {
            fail(peek(), "label required: A" + std::to_string(i) + " has " + std::to_string(row.labels.size()) +
                             " labels");
        }
        std::vector<Weight> bounds{weight(row.monoids[0])};
        while (at_punct(',')) {
            const Token& comma = next();
            if (bounds.size() == row.depth()) {
                fail(comma, "arity mismatch: component " + std::to_string(i) + " has " + std::to_string(row.depth()) +
                                " layers, got more bounds");
            }
            bounds.push_back(weight(row.monoids[bounds.size()]));
        }
        if (bounds.size() != row.depth()) {
            fail(peek(), "arity mismatch: component " + std::to_string(i) + " has " + std::to_string(row.depth()) +
                             " layers, got " + std::to_string(bounds.size()) + " bound" +
                             (bounds.size() == 1 ? "" : "s"));
        }
        expect_punct('>');
        (void)open;
        return Formula::diamond(i, std::move(label), std::move(bounds), unary());
    }

    const FutsSignature& sig_;
};

bool blank_line(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

}  // namespace

ParseResult<Futs> parse_system(std::string_view text) { return SystemParser(text).run(); }

ParseResult<MonoidDesc> parse_monoid(std::string_view text) { return MonoidParser(text).run(); }

ParseResult<Formula> parse_formula(std::string_view text, const FutsSignature& sig) {
    return FormulaParser(text, sig).run();
}

ParseResult<std::vector<Formula>> parse_formulas(std::string_view text, const FutsSignature& sig) {
    ParseResult<std::vector<Formula>> result;
    std::vector<Formula> out;
    std::size_t line_no = 1;
    bool failed = false;
    while (true) {
        const auto nl = text.find('\n');
        const std::string_view line = text.substr(0, nl);
        if (!blank_line(line)) {
            auto r = parse_formula(line, sig);
            for (auto d : r.diagnostics) {
                d.line += line_no - 1;
                result.diagnostics.push_back(std::move(d));
            }
            if (r.value) {
                out.push_back(std::move(*r.value));
            } else {
                failed = true;
            }
        }
        if (nl == std::string_view::npos) break;
        text.remove_prefix(nl + 1);
        ++line_no;
    }
    if (!failed) result.value = std::move(out);
    return result;
}

std::string write_system(const Futs& s) {
    const auto& sig = s.signature();
    std::string out = "futs\n";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        const auto& row = sig.component(i);
        out += "labels A" + std::to_string(i) + " = {";
        for (std::size_t k = 0; k < row.labels.size(); ++k) out += (k ? ", " : "") + quote_id(row.labels[k]);
        out += "}\nmonoids M" + std::to_string(i) + " = [";
        for (std::size_t k = 0; k < row.monoids.size(); ++k) out += (k ? ", " : "") + row.monoids[k].to_string();
        out += "]\n";
    }
    out += "states {";
    for (std::size_t k = 0; k < s.states().size(); ++k) out += (k ? ", " : "") + quote_id(s.states()[k]);
    out += "}\n";
    for (std::size_t i = 0; i < sig.size(); ++i) {
        for (const auto& [key, t] : s.transitions(i)) {
            out += "trans " + std::to_string(i) + " " + quote_id(key.first) + " " + quote_id(key.second) + " -> " +
                   t.to_string() + "\n";
        }
    }
    return out;
}

namespace {

void write_formula_to(std::string& out, const Formula& phi, const FutsSignature* sig) {
    switch (phi.kind()) {
    case Formula::Kind::Top: out += "T"; return;
    case Formula::Kind::And:
        write_formula_to(out, phi.left(), sig);
        out += " & ";
        if (phi.right().kind() == Formula::Kind::And) {
            out += "(";
            write_formula_to(out, phi.right(), sig);
            out += ")";
        } else {
            write_formula_to(out, phi.right(), sig);
        }
        return;
    case Formula::Kind::Diamond: {
        out += "<" + std::to_string(phi.component()) + "|";
        const bool singleton = sig && phi.component() < sig->size() && sig->component(phi.component()).labels.size() == 1;
        if (!singleton) out += quote_id(phi.label()) + "|";
        for (std::size_t j = 0; j < phi.bounds().size(); ++j) out += (j ? "," : "") + phi.bounds()[j].to_string();
        out += "> ";
        if (phi.body().kind() == Formula::Kind::And) {
            out += "(";
            write_formula_to(out, phi.body(), sig);
            out += ")";
        } else {
            write_formula_to(out, phi.body(), sig);
        }
        return;
    }
    }
}

}  // namespace

std::string write_formula(const Formula& phi, const FutsSignature* sig) {
    std::string out;
    write_formula_to(out, phi, sig);
    return out;
}

}  // namespace futs
