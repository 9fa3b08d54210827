#include "selfadjoint/parser.hpp"

#include <cctype>
#include <vector>

#include "selfadjoint/errors.hpp"

namespace selfadjoint {

namespace {

enum class Tok {
    ident,
    integer,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbrace,
    rbrace,
    comma,
    semicolon,
    equals,
    prime,
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 0;
    int col = 0;
};

class Lexer {
  public:
    Lexer(const std::string& text, int line_offset) : text_(text), line_(line_offset) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            if (pos_ >= text_.size())
                break;
            out.push_back(next());
        }
        out.push_back(Token{Tok::end, "", line_, col_});
        return out;
    }

  private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_;
    int col_ = 1;

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            char c = peek();
            if (c == '#') {
                while (pos_ < text_.size() && peek() != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token next() {
        int line = line_, col = col_;
        char c = advance();
        auto tok = [&](Tok k, std::string s) { return Token{k, std::move(s), line, col}; };
        switch (c) {
        case '+': return tok(Tok::plus, "+");
        case '-': return tok(Tok::minus, "-");
        case '*': return tok(Tok::star, "*");
        case '/': return tok(Tok::slash, "/");
        case '^': return tok(Tok::caret, "^");
        case '(': return tok(Tok::lparen, "(");
        case ')': return tok(Tok::rparen, ")");
        case '{': return tok(Tok::lbrace, "{");
        case '}': return tok(Tok::rbrace, "}");
        case ',': return tok(Tok::comma, ",");
        case ';': return tok(Tok::semicolon, ";");
        case '=': return tok(Tok::equals, "=");
        case '\'': return tok(Tok::prime, "'");
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string s(1, c);
            while (std::isdigit(static_cast<unsigned char>(peek())))
                s += advance();
            return tok(Tok::integer, std::move(s));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string s(1, c);
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
                s += advance();
            return tok(Tok::ident, std::move(s));
        }
        throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
};

class Parser {
  public:
    Parser(std::vector<Token> tokens, const Context& ctx) : toks_(std::move(tokens)), ctx_(ctx) {}

    Expression parse_full_expression() {
        Expression e = expression();
        expect(Tok::end, "end of expression");
        return e;
    }

    Expression expression() {
        bool negate = false;
        if (at(Tok::minus)) {
            advance();
            negate = true;
        } else if (at(Tok::plus)) {
            advance();
        }
        Expression e = term();
        if (negate)
            e = -e;
        while (at(Tok::plus) || at(Tok::minus)) {
            bool minus = advance().kind == Tok::minus;
            Expression rhs = term();
            e = minus ? e - rhs : e + rhs;
        }
        return e;
    }

  private:
    std::vector<Token> toks_;
    size_t idx_ = 0;
    const Context& ctx_;

    const Token& cur() const { return toks_[idx_]; }
    bool at(Tok k) const { return cur().kind == k; }

    const Token& advance() { return toks_[idx_++]; }

    const Token& expect(Tok k, const std::string& what) {
        if (!at(k))
            throw ParseError(cur().line, cur().col,
                             "expected " + what + ", got '" + (cur().kind == Tok::end ? "<end>" : cur().text) + "'");
        return advance();
    }

    long long integer_value(const Token& t) {
        try {
            return std::stoll(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.line, t.col, "integer literal out of range");
        }
    }

    Expression term() {
        Expression e = factor();
        while (at(Tok::star) || at(Tok::slash)) {
            Token op = advance();
            Expression rhs = factor();
            if (op.kind == Tok::star) {
                e = e * rhs;
            } else {
                try {
                    e = e.divided_by(rhs);
                } catch (const EngineError& err) {
                    throw ParseError(op.line, op.col, err.what());
                }
            }
        }
        return e;
    }

    Expression factor() {
        Expression base = primary();
        if (!at(Tok::caret))
            return base;
        Token op = advance();
        int exp = exponent();
        try {
            return base.pow(exp);
        } catch (const EngineError& err) {
            throw ParseError(op.line, op.col, err.what());
        }
    }

    int exponent() {
        bool parens = false;
        if (at(Tok::lparen)) {
            advance();
            parens = true;
        }
        bool neg = false;
        if (at(Tok::minus)) {
            advance();
            neg = true;
        }
        const Token& t = expect(Tok::integer, "integer exponent");
        long long v = integer_value(t);
        if (v > 64)
            throw ParseError(t.line, t.col, "exponent too large");
        if (parens)
            expect(Tok::rparen, "')'");
        return static_cast<int>(neg ? -v : v);
    }

    Expression primary() {
        if (at(Tok::integer)) {
            const Token& t = advance();
            return Expression::constant(Rational(integer_value(t)));
        }
        if (at(Tok::lparen)) {
            advance();
            Expression e = expression();
            expect(Tok::rparen, "')'");
            return e;
        }
        if (at(Tok::ident))
            return symbol();
        throw ParseError(cur().line, cur().col, "expected a term, got '" +
                                                    (cur().kind == Tok::end ? "<end>" : cur().text) + "'");
    }

    // IDENT with optional derivative suffix, primes, and argument list.
    Expression symbol() {
        Token t = advance();
        std::string base = t.text;
        std::string suffix;
        size_t us = t.text.find('_');
        if (us != std::string::npos) {
            base = t.text.substr(0, us);
            suffix = t.text.substr(us + 1);
            if (t.text.find('_', us + 1) != std::string::npos)
                throw ParseError(t.line, t.col, "malformed derivative suffix in '" + t.text + "'");
        }

        if (base == "t" || base == "x")
            throw ParseError(t.line, t.col,
                             "'" + base + "' cannot appear in expressions; declare a function of t "
                             "(e.g. 'func T(t); link T' = 1;') instead");

        const Context::Declaration* decl = ctx_.find(base);
        if (!decl)
            throw ParseError(t.line, t.col, "unknown symbol '" + base + "'");

        if (decl->kind == Context::Kind::depvar)
            return jet_symbol(t, base, suffix, us != std::string::npos);
        return atom_symbol(t, base, suffix);
    }

    Expression jet_symbol(const Token& t, const std::string& dep, const std::string& suffix,
                          bool had_underscore) {
        int dt = 0, dx = 0;
        if (had_underscore && suffix.empty()) {
            braced_suffix(t, dt, dx);
        } else if (!suffix.empty()) {
            char letter = suffix[0];
            if ((letter != 't' && letter != 'x') ||
                suffix.find_first_not_of(letter) != std::string::npos)
                throw ParseError(t.line, t.col,
                                 "derivative suffix must repeat a single letter t or x; write "
                                 "mixed derivatives as " + dep + "_{t x}");
            if (suffix.size() > 4)
                throw ParseError(t.line, t.col,
                                 "suffix runs are limited to 4 letters; use " + dep + "_{" +
                                     letter + "^" + std::to_string(suffix.size()) + "}");
            (letter == 't' ? dt : dx) = static_cast<int>(suffix.size());
        }
        if (dt + dx > kOrderCap)
            throw ParseError(t.line, t.col, "derivative order " + std::to_string(dt + dx) +
                                                " exceeds the order cap " + std::to_string(kOrderCap));
        if (at(Tok::prime))
            throw ParseError(cur().line, cur().col, "prime notation applies to functions only");
        return jet(dep, dt, dx);
    }

    // "{ t^m x^n }" with either letter optional and ^1 omitted.
    void braced_suffix(const Token& t, int& dt, int& dx) {
        expect(Tok::lbrace, "'{' after '_'");
        bool seen_t = false, seen_x = false;
        while (!at(Tok::rbrace)) {
            const Token& letter = expect(Tok::ident, "'t' or 'x'");
            int count = 1;
            if (at(Tok::caret)) {
                advance();
                count = static_cast<int>(integer_value(expect(Tok::integer, "integer order")));
            }
            if (letter.text == "t" && !seen_t) {
                seen_t = true;
                dt = count;
            } else if (letter.text == "x" && !seen_x) {
                seen_x = true;
                dx = count;
            } else {
                throw ParseError(letter.line, letter.col, "malformed braced derivative suffix");
            }
        }
        expect(Tok::rbrace, "'}'");
        if (!seen_t && !seen_x)
            throw ParseError(t.line, t.col, "empty derivative suffix");
    }

    Expression atom_symbol(const Token& t, const std::string& base, const std::string& suffix) {
        const Context::Declaration* decl = ctx_.find(base);
        int dt = 0, du = 0;
        for (size_t i = 0; i < suffix.size(); ++i) {
            if (suffix[i] == 't') {
                if (du > 0)
                    throw ParseError(t.line, t.col, "derivative letters must list t before u");
                ++dt;
            } else if (suffix[i] == 'u') {
                ++du;
            } else {
                throw ParseError(t.line, t.col, std::string("'") + suffix[i] +
                                                    "' is not an argument of '" + base + "'");
            }
        }
        while (at(Tok::prime)) {
            const Token& p = advance();
            if (decl->arg_t && decl->arg_u)
                throw ParseError(p.line, p.col,
                                 "prime notation needs a single-argument function; write " + base +
                                     "_t or " + base + "_u");
            if (decl->arg_t)
                ++dt;
            else
                ++du;
        }
        if (dt > 0 && !decl->arg_t)
            throw ParseError(t.line, t.col, "'" + base + "' has no argument t");
        if (du > 0 && !decl->arg_u)
            throw ParseError(t.line, t.col, "'" + base + "' has no argument u");
        if ((dt > 0 || du > 0) && decl->kind == Context::Kind::constant)
            throw ParseError(t.line, t.col, "constants have no derivatives");

        if (at(Tok::lparen)) {
            const Token& open = advance();
            bool want_t = decl->arg_t, want_u = decl->arg_u;
            bool first = true;
            while (!at(Tok::rparen)) {
                if (!first)
                    expect(Tok::comma, "','");
                first = false;
                const Token& arg = expect(Tok::ident, "argument name");
                if (arg.text == "t" && want_t)
                    want_t = false;
                else if (arg.text == "u" && want_u && !want_t)
                    want_u = false;
                else
                    throw ParseError(arg.line, arg.col,
                                     "argument list does not match the declaration of '" + base + "'");
            }
            expect(Tok::rparen, "')'");
            if (want_t || want_u)
                throw ParseError(open.line, open.col,
                                 "argument list does not match the declaration of '" + base + "'");
        }

        try {
            return ctx_.atom(base, dt, du);
        } catch (const InputError& err) {
            throw ParseError(t.line, t.col, err.what());
        }
    }

  public:
    // --- declarations ---------------------------------------------------------

    void parse_declaration_block(Context& ctx) {
        while (!at(Tok::end)) {
            const Token& kw = expect(Tok::ident, "declaration keyword");
            try {
                if (kw.text == "depvar") {
                    ctx.declare_depvar(expect(Tok::ident, "variable name").text);
                } else if (kw.text == "func") {
                    declare_func(ctx);
                } else if (kw.text == "const") {
                    ctx.declare_const(expect(Tok::ident, "constant name").text);
                } else if (kw.text == "link") {
                    declare_link(ctx);
                } else {
                    throw ParseError(kw.line, kw.col, "unknown declaration '" + kw.text + "'");
                }
            } catch (const ParseError&) {
                throw;
            } catch (const InputError& err) {
                throw ParseError(kw.line, kw.col, err.what());
            }
            expect(Tok::semicolon, "';'");
        }
    }

  private:
    void declare_func(Context& ctx) {
        const Token& name = expect(Tok::ident, "function name");
        expect(Tok::lparen, "'('");
        bool arg_t = false, arg_u = false;
        bool first = true;
        while (!at(Tok::rparen)) {
            if (!first)
                expect(Tok::comma, "','");
            first = false;
            const Token& arg = expect(Tok::ident, "argument name");
            if (arg.text == "t" && !arg_t && !arg_u)
                arg_t = true;
            else if (arg.text == "u" && !arg_u)
                arg_u = true;
            else
                throw ParseError(arg.line, arg.col,
                                 "arguments must be t, u or t,u (in that order)");
        }
        expect(Tok::rparen, "')'");
        ctx.declare_func(name.text, arg_t, arg_u);
    }

    void declare_link(Context& ctx) {
        const Token& name = expect(Tok::ident, "function name");
        expect(Tok::prime, "'");
        expect(Tok::equals, "'='");
        Expression value = expression();
        ctx.declare_link(name.text, value);
    }
};

} // namespace

Expression parse_expression(const std::string& text, const Context& ctx, int line_offset) {
    Parser p(Lexer(text, line_offset).run(), ctx);
    return p.parse_full_expression();
}

void parse_declarations(const std::string& text, Context& ctx, int line_offset) {
    Parser p(Lexer(text, line_offset).run(), ctx);
    p.parse_declaration_block(ctx);
}

} // namespace selfadjoint
