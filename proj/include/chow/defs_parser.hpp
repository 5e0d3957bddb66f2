#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "chow/defs_ast.hpp"
#include "chow/error.hpp"

namespace chow::dsl {

namespace detail {

struct Token {
    enum class Kind { end, ident, integer, string, punct, arrow };
    Kind kind;
    std::string text;
    long long value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::Kind::end;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_'))
                bump();
            tok_.kind = Token::Kind::ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + (src_[pos_] - '0');
                if (v < 0) throw ParseError(line_, col_, "integer literal overflows");
                bump();
            }
            tok_.kind = Token::Kind::integer;
            tok_.value = v;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (c == '"') {
            bump();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') bump();
            if (pos_ >= src_.size() || src_[pos_] != '"')
                throw ParseError(tok_.line, tok_.col, "unterminated string literal");
            tok_.kind = Token::Kind::string;
            tok_.text = src_.substr(start, pos_ - start);
            bump();  // closing quote
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            bump();
            bump();
            tok_.kind = Token::Kind::arrow;
            tok_.text = "->";
            return;
        }
        static const std::string punct = "+-*/^(){}[],=";
        if (punct.find(c) != std::string::npos) {
            tok_.kind = Token::Kind::punct;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    DefsFile parse_file() {
        DefsFile f;
        while (lex_.peek().kind != Token::Kind::end) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::ident)
                throw ParseError(t.line, t.col, "expected a declaration");
            if (t.text == "ring")
                f.decls.emplace_back(parse_ring());
            else if (t.text == "bundle")
                f.decls.emplace_back(parse_bundle());
            else if (t.text == "check")
                f.decls.emplace_back(parse_check());
            else
                throw ParseError(t.line, t.col,
                                 "expected 'ring', 'bundle' or 'check', got '" +
                                     t.text + "'");
        }
        return f;
    }

    /// Entry point for parsing a bare expression (used by tests).
    ExprPtr parse_single_expression() {
        ExprPtr e = parse_expr(0);
        expect_end();
        return e;
    }

private:
    // ---- declarations ----

    RingDecl parse_ring() {
        Token kw = lex_.next();  // 'ring'
        RingDecl r;
        r.line = kw.line;
        r.col = kw.col;
        r.name = expect_ident("ring name");
        expect_punct("=");
        std::string builder = expect_ident("ring constructor");
        if (builder == "projective_space") {
            r.kind = RingDecl::Kind::projective_space;
            expect_punct("(");
            r.dim = static_cast<int>(expect_integer("dimension"));
            expect_punct(",");
            r.gen_name = expect_ident("generator name");
            expect_punct(")");
        } else if (builder == "projective_bundle") {
            r.kind = RingDecl::Kind::projective_bundle;
            expect_punct("(");
            r.base_ring = expect_ident("base ring");
            expect_punct(",");
            r.bundle_name = expect_ident("bundle name");
            expect_punct(",");
            r.gen_name = expect_ident("generator name");
            expect_punct(")");
        } else if (builder == "surface") {
            r.kind = RingDecl::Kind::surface;
            parse_surface_block(r);
        } else if (builder == "quotient") {
            r.kind = RingDecl::Kind::quotient;
            parse_quotient_block(r);
        } else {
            throw ParseError(kw.line, kw.col, "unknown ring constructor '" + builder +
                                                  "'");
        }
        return r;
    }

    void parse_surface_block(RingDecl& r) {
        expect_punct("{");
        while (!try_punct("}")) {
            std::string field = expect_ident("surface field");
            if (field == "gens") {
                while (lex_.peek().kind == Token::Kind::ident &&
                       lex_.peek().text != "pair")
                    r.surface_gens.push_back(lex_.next().text);
            } else if (field == "pair") {
                RingDecl::Pair p;
                p.a = expect_ident("generator");
                p.b = expect_ident("generator");
                p.value = expect_signed_integer("pairing value");
                r.pairs.push_back(p);
            } else {
                throw ParseError(lex_.peek().line, lex_.peek().col,
                                 "unknown surface field '" + field + "'");
            }
        }
    }

    void parse_quotient_block(RingDecl& r) {
        expect_punct("{");
        while (!try_punct("}")) {
            std::string field = expect_ident("quotient field");
            if (field == "gen") {
                RingDecl::QGen g;
                g.name = expect_ident("generator name");
                g.degree = static_cast<int>(expect_integer("generator degree"));
                r.qgens.push_back(g);
            } else if (field == "rule") {
                RingDecl::QRule rule;
                rule.lhs = parse_expr(0);
                expect_arrow();
                rule.rhs = parse_expr(0);
                r.qrules.push_back(rule);
            } else if (field == "top") {
                r.top = static_cast<int>(expect_integer("top degree"));
            } else if (field == "integral") {
                RingDecl::QIntegral in;
                in.monomial = parse_expr(0);
                expect_punct("=");
                in.value = expect_signed_integer("integral value");
                r.qintegrals.push_back(in);
            } else {
                throw ParseError(lex_.peek().line, lex_.peek().col,
                                 "unknown quotient field '" + field + "'");
            }
        }
    }

    BundleDecl parse_bundle() {
        Token kw = lex_.next();  // 'bundle'
        BundleDecl b;
        b.line = kw.line;
        b.col = kw.col;
        b.name = expect_ident("bundle name");
        if (expect_ident("'on'") != "on")
            throw ParseError(kw.line, kw.col, "expected 'on' after bundle name");
        b.ring = expect_ident("ring name");
        expect_punct("=");
        b.expr = parse_expr(0);
        return b;
    }

    CheckDecl parse_check() {
        Token kw = lex_.next();  // 'check'
        CheckDecl c;
        c.line = kw.line;
        c.col = kw.col;
        c.id = expect_ident("check id");
        expect_punct("{");
        while (!try_punct("}")) {
            std::string field = expect_ident("check field");
            if (field == "describe") {
                c.description = expect_string("description");
            } else if (field == "ring") {
                c.ring = expect_ident("ring name");
            } else if (field == "provenance") {
                std::string p = expect_ident("provenance");
                if (p == "PAPER") c.provenance = Provenance::paper;
                else if (p == "DERIVED") c.provenance = Provenance::derived;
                else if (p == "TRIVIAL") c.provenance = Provenance::trivial;
                else throw ParseError(lex_.peek().line, lex_.peek().col,
                                      "provenance must be PAPER, DERIVED or TRIVIAL");
            } else if (field == "mode") {
                std::string m = expect_ident("mode");
                if (m == "exact") c.mode = CheckMode::exact;
                else if (m == "discrepancy") c.mode = CheckMode::documented_discrepancy;
                else throw ParseError(lex_.peek().line, lex_.peek().col,
                                      "mode must be exact or discrepancy");
            } else if (field == "program") {
                c.program = parse_expr(0);
            } else if (field == "expect") {
                c.expect = parse_expr(0);
            } else if (field == "printed") {
                c.printed = parse_expr(0);
            } else if (field == "derived") {
                c.derived = parse_expr(0);
            } else if (field == "note") {
                c.note = expect_string("note");
            } else {
                throw ParseError(lex_.peek().line, lex_.peek().col,
                                 "unknown check field '" + field + "'");
            }
        }
        if (!c.program)
            throw ParseError(c.line, c.col, "check " + c.id + " has no program");
        if (c.mode == CheckMode::exact && !c.expect)
            throw ParseError(c.line, c.col, "check " + c.id + " has no expected value");
        if (c.mode == CheckMode::documented_discrepancy && !c.printed)
            throw ParseError(c.line, c.col,
                             "discrepancy check " + c.id + " has no printed value");
        if (c.mode == CheckMode::documented_discrepancy && c.note.empty())
            throw ParseError(c.line, c.col,
                             "discrepancy check " + c.id +
                                 " needs a note explaining the tension");
        return c;
    }

    // ---- expressions: precedence climbing ----

    ExprPtr parse_expr(int min_prec) {
        ExprPtr lhs = parse_unary();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::punct) break;
            char op = t.text[0];
            int prec;
            if (op == '+' || op == '-') prec = 1;
            else if (op == '*' || op == '/') prec = 2;
            else break;
            if (prec < min_prec) break;
            Token opt = lex_.next();
            ExprPtr rhs = parse_expr(prec + 1);
            lhs = Expr::make_binop(op, lhs, rhs, opt.line, opt.col);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::punct && t.text == "-") {
            Token m = lex_.next();
            return Expr::make_unary(parse_unary(), m.line, m.col);
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::punct && t.text == "^") {
            Token c = lex_.next();
            // right-associative; exponent is a unary-or-primary
            ExprPtr exp = parse_unary_power();
            return Expr::make_binop('^', base, exp, c.line, c.col);
        }
        return base;
    }

    ExprPtr parse_unary_power() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::punct && t.text == "-") {
            Token m = lex_.next();
            return Expr::make_unary(parse_unary_power(), m.line, m.col);
        }
        return parse_power();
    }

    ExprPtr parse_primary() {
        Token t = lex_.next();
        switch (t.kind) {
            case Token::Kind::integer:
                return Expr::make_number(Rational(t.value), t.line, t.col);
            case Token::Kind::ident: {
                if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "(") {
                    lex_.next();
                    std::vector<ExprPtr> args;
                    if (!(lex_.peek().kind == Token::Kind::punct &&
                          lex_.peek().text == ")")) {
                        args.push_back(parse_expr(0));
                        while (try_punct(",")) args.push_back(parse_expr(0));
                    }
                    expect_punct(")");
                    return Expr::make_call(t.text, std::move(args), t.line, t.col);
                }
                return Expr::make_ident(t.text, t.line, t.col);
            }
            case Token::Kind::punct:
                if (t.text == "(") {
                    ExprPtr e = parse_expr(0);
                    expect_punct(")");
                    return e;
                }
                if (t.text == "[") {
                    std::vector<ExprPtr> elems;
                    if (!(lex_.peek().kind == Token::Kind::punct &&
                          lex_.peek().text == "]")) {
                        elems.push_back(parse_expr(0));
                        while (try_punct(",")) elems.push_back(parse_expr(0));
                    }
                    expect_punct("]");
                    return Expr::make_vector(std::move(elems), t.line, t.col);
                }
                break;
            default:
                break;
        }
        throw ParseError(t.line, t.col, "expected an expression, got '" + t.text + "'");
    }

    // ---- token helpers ----

    std::string expect_ident(const char* what) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::ident)
            throw ParseError(t.line, t.col,
                             std::string("expected ") + what + ", got '" + t.text + "'");
        return t.text;
    }

    std::string expect_string(const char* what) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::string)
            throw ParseError(t.line, t.col, std::string("expected a quoted ") + what);
        return t.text;
    }

    long long expect_integer(const char* what) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::integer)
            throw ParseError(t.line, t.col, std::string("expected ") + what);
        return t.value;
    }

    long long expect_signed_integer(const char* what) {
        if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == "-") {
            lex_.next();
            return -expect_integer(what);
        }
        return expect_integer(what);
    }

    void expect_punct(const char* p) {
        Token t = lex_.next();
        if (t.kind != Token::Kind::punct || t.text != p)
            throw ParseError(t.line, t.col,
                             std::string("expected '") + p + "', got '" + t.text + "'");
    }

    void expect_arrow() {
        Token t = lex_.next();
        if (t.kind != Token::Kind::arrow)
            throw ParseError(t.line, t.col, "expected '->'");
    }

    bool try_punct(const char* p) {
        if (lex_.peek().kind == Token::Kind::punct && lex_.peek().text == p) {
            lex_.next();
            return true;
        }
        return false;
    }

    void expect_end() {
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::end)
            throw ParseError(t.line, t.col, "trailing input '" + t.text + "'");
    }

    Lexer lex_;
};

}  // namespace detail

/// Parse defs text into its declaration tree.  Purely syntactic; name
/// resolution happens when an Env is built.
inline DefsFile parse_defs_text(const std::string& text) {
    detail::Parser p(text);
    return p.parse_file();
}

inline ExprPtr parse_expression(const std::string& text) {
    detail::Parser p(text);
    return p.parse_single_expression();
}

}  // namespace chow::dsl
