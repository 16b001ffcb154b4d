#include "aspf/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace aspf {

std::string Diagnostic::toString(const std::string& path) const {
    std::ostringstream out;
    if (const auto& prefix = path.empty() ? file : path; !prefix.empty()) out << prefix << ":";
    out << loc.line << ":" << loc.column << ": " << (severity == Severity::Error ? "error" : "warning") << ": "
        << message;
    return out.str();
}

bool SourceProgram::ok() const {
    for (const auto& d : diagnostics) {
        if (d.severity == Diagnostic::Severity::Error) return false;
    }
    return true;
}

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : SyntaxError(diagnostics.empty() ? "parse error" : diagnostics.front().toString(),
                  diagnostics.empty() ? SourceLocation{} : diagnostics.front().loc),
      diagnostics_(std::move(diagnostics)) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipBlank();
            Token t;
            t.loc = here();
            if (pos_ >= text_.size()) {
                t.kind = Token::Kind::End;
                t.loc = last_;
                out.push_back(t);
                return out;
            }
            lex(t);
            out.push_back(std::move(t));
        }
    }

private:
    SourceLocation here() const { return {line_, col_}; }

    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }

    char advance() {
        last_ = here();
        const char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skipBlank() {
        while (pos_ < text_.size()) {
            const char c = peek();
            if (c == '%') {
                while (pos_ < text_.size() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    static bool isWord(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string word() {
        std::string s;
        while (pos_ < text_.size() && isWord(peek())) s += advance();
        return s;
    }

    [[noreturn]] void fail(const std::string& msg, SourceLocation loc) {
        throw ParseError({Diagnostic{loc, Diagnostic::Severity::Error, msg}});
    }

    void lex(Token& t) {
        using K = Token::Kind;
        const char c = peek();
        if (std::islower(static_cast<unsigned char>(c)) || (c == '_' && peek(1) == '_')) {
            t.text = word();
            t.kind = t.text == "not" ? K::Not : K::Identifier;
            return;
        }
        if (std::isupper(static_cast<unsigned char>(c))) {
            t.text = word();
            t.kind = K::Variable;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (std::isdigit(static_cast<unsigned char>(peek()))) t.text += advance();
            if (isWord(peek())) fail("malformed number", t.loc);
            t.kind = K::Integer;
            return;
        }
        if (c == '#') {
            advance();
            t.text = "#" + word();
            if (t.text != "#show") fail("unknown directive '" + t.text + "'", t.loc);
            t.kind = K::Show;
            return;
        }
        advance();
        t.text = std::string(1, c);
        switch (c) {
        case '(': t.kind = K::LParen; return;
        case ')': t.kind = K::RParen; return;
        case '{': t.kind = K::LBrace; return;
        case '}': t.kind = K::RBrace; return;
        case ',': t.kind = K::Comma; return;
        case '.': t.kind = K::Dot; return;
        case '|': t.kind = K::Bar; return;
        case '/': t.kind = K::Slash; return;
        case '+': t.kind = K::Plus; return;
        case '-': t.kind = K::Minus; return;
        case '*': t.kind = K::Star; return;
        case '=': t.kind = K::Eq; return;
        case ':':
            if (peek() == '-') {
                advance();
                t.kind = K::If;
                t.text = ":-";
            } else if (peek() == '+') {
                advance();
                t.kind = K::CrIf;
                t.text = ":+";
            } else {
                t.kind = K::Colon;
            }
            return;
        case '!':
            if (peek() == '=') {
                advance();
                t.kind = K::Ne;
                t.text = "!=";
                return;
            }
            break;
        case '<':
            if (peek() == '=') {
                advance();
                t.kind = K::Le;
                t.text = "<=";
            } else {
                t.kind = K::Lt;
            }
            return;
        case '>':
            if (peek() == '=') {
                advance();
                t.kind = K::Ge;
                t.text = ">=";
            } else {
                t.kind = K::Gt;
            }
            return;
        default: break;
        }
        fail(std::string("illegal character '") + c + "'", t.loc);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    SourceLocation last_{1, 1};
};

// ---------------------------------------------------------------------------
// Parser

/// Identifiers in t-atom positions are parsed as function applications; names
/// in argument positions are constants.
enum class Context { Expression, Argument };

class Parser {
public:
    explicit Parser(const std::vector<Token>& tokens) : toks_(tokens) {}

    Program program() {
        Program p;
        while (peek().kind != Token::Kind::End) statement(p);
        return p;
    }

    std::vector<Literal> seedLiterals() {
        std::vector<Literal> out;
        while (peek().kind != Token::Kind::End) {
            out.push_back(seedLiteral());
            accept(Token::Kind::Comma);
        }
        return out;
    }

private:
    using K = Token::Kind;

    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }

    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }

    bool accept(K k) {
        if (peek().kind != k) return false;
        next();
        return true;
    }

    [[noreturn]] void fail(const std::string& msg, SourceLocation loc) {
        throw ParseError({Diagnostic{loc, Diagnostic::Severity::Error, msg}});
    }

    [[noreturn]] void unexpected(const std::string& expected) {
        const Token& t = peek();
        const std::string got = t.kind == K::End ? "end of input" : "'" + t.text + "'";
        fail("unexpected " + got + ", expected " + expected, t.loc);
    }

    const Token& expect(K k, const std::string& what) {
        if (peek().kind != k) unexpected(what);
        return next();
    }

    std::string name() {
        const Token& t = expect(K::Identifier, "identifier");
        if (isReservedName(t.text)) fail("reserved symbol '" + t.text + "' used in program", t.loc);
        return t.text;
    }

    void statement(Program& p) {
        const SourceLocation loc = peek().loc;
        if (accept(K::Show)) {
            ShowDirective s;
            s.name = name();
            expect(K::Slash, "'/'");
            s.arity = integerValue(expect(K::Integer, "arity"));
            expect(K::Dot, "'.'");
            p.shows.push_back(std::move(s));
            return;
        }
        if (accept(K::If)) {
            std::vector<Literal> pos, neg;
            if (peek().kind != K::Dot) body(pos, neg);
            expect(K::Dot, "'.'");
            p.rules.push_back(desugarConstraint(std::move(pos), std::move(neg), loc));
            return;
        }
        if (peek().kind == K::LBrace || (peek().kind == K::Integer && peek(1).kind == K::LBrace)) {
            p.choices.push_back(choice(loc));
            return;
        }
        Rule r;
        r.loc = loc;
        r.head = literal();
        if (accept(K::CrIf)) {
            r.kind = RuleKind::Cr;
            if (peek().kind != K::Dot) body(r.pos, r.neg);
        } else if (accept(K::If)) {
            body(r.pos, r.neg);
        }
        expect(K::Dot, "'.'");
        p.rules.push_back(std::move(r));
    }

    ChoiceRule choice(SourceLocation loc) {
        ChoiceRule c;
        c.loc = loc;
        if (peek().kind == K::Integer) c.lower = integerValue(next());
        expect(K::LBrace, "'{'");
        if (peek().kind != K::RBrace) {
            const SourceLocation at = peek().loc;
            Literal schema = literal();
            if (!schema.isRegular() || schema.regular().strongNegation) {
                fail("choice element must be a positive atom", at);
            }
            c.schema = schema.regular().atom;
            while (accept(K::Colon)) {
                c.conditions.push_back(literal());
            }
        }
        expect(K::RBrace, "'}'");
        if (peek().kind == K::Integer) c.upper = integerValue(next());
        if (c.upper && c.lower > *c.upper) fail("choice lower bound exceeds upper bound", loc);
        if (accept(K::If)) body(c.pos, c.neg);
        expect(K::Dot, "'.'");
        return c;
    }

    void body(std::vector<Literal>& pos, std::vector<Literal>& neg) {
        do {
            if (accept(K::Not)) {
                neg.push_back(literal());
            } else {
                pos.push_back(literal());
            }
        } while (accept(K::Comma));
    }

    static bool isComparison(K k) {
        return k == K::Eq || k == K::Ne || k == K::Le || k == K::Lt || k == K::Gt || k == K::Ge;
    }

    static CmpOp comparison(K k) {
        switch (k) {
        case K::Eq: return CmpOp::Eq;
        case K::Ne: return CmpOp::Ne;
        case K::Le: return CmpOp::Le;
        case K::Lt: return CmpOp::Lt;
        case K::Gt: return CmpOp::Gt;
        default: return CmpOp::Ge;
        }
    }

    Literal literal() {
        const SourceLocation at = peek().loc;
        if (peek().kind != K::Minus && peek().kind != K::Identifier && peek().kind != K::Variable &&
            peek().kind != K::Integer && peek().kind != K::LParen && peek().kind != K::Bar) {
            unexpected("literal");
        }
        Term lhs = expr(Context::Expression);
        if (isComparison(peek().kind)) {
            const CmpOp op = comparison(next().kind);
            Term rhs = expr(Context::Expression);
            return Literal::tatom(std::move(lhs), op, std::move(rhs));
        }
        bool strong = false;
        if (lhs.kind == Term::Kind::Arith && lhs.op == ArithOp::Neg) {
            strong = true;
            Term inner = std::move(lhs.args[0]);
            lhs = std::move(inner);
        }
        if (lhs.kind != Term::Kind::Function) fail("expected an atom or a comparison", at);
        return Literal::atom(std::move(lhs.name), std::move(lhs.args), strong);
    }

    // Operands are unary terms, so whitespace-separated literals such as
    // `f=2 -p` never fuse into arithmetic.
    Literal seedLiteral() {
        const SourceLocation at = peek().loc;
        Term lhs = unary(Context::Expression);
        if (isComparison(peek().kind)) {
            const CmpOp op = comparison(next().kind);
            return Literal::tatom(std::move(lhs), op, unary(Context::Expression));
        }
        bool strong = false;
        if (lhs.kind == Term::Kind::Arith && lhs.op == ArithOp::Neg) {
            strong = true;
            Term inner = std::move(lhs.args[0]);
            lhs = std::move(inner);
        }
        if (lhs.kind != Term::Kind::Function) fail("expected a seed literal", at);
        return Literal::atom(std::move(lhs.name), std::move(lhs.args), strong);
    }

    Term expr(Context ctx) {
        Term lhs = product(ctx);
        while (peek().kind == K::Plus || peek().kind == K::Minus) {
            const ArithOp op = next().kind == K::Plus ? ArithOp::Add : ArithOp::Sub;
            Term rhs = product(ctx);
            lhs = Term::arith(op, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Term product(Context ctx) {
        Term lhs = unary(ctx);
        while (peek().kind == K::Star || peek().kind == K::Slash) {
            const ArithOp op = next().kind == K::Star ? ArithOp::Mul : ArithOp::Div;
            Term rhs = unary(ctx);
            lhs = Term::arith(op, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Term unary(Context ctx) {
        if (accept(K::Minus)) {
            Term inner = unary(ctx);
            if (inner.kind == Term::Kind::Constant && inner.value.isInteger()) {
                return Term::integer(-inner.value.intValue());
            }
            return Term::arith(ArithOp::Neg, {std::move(inner)});
        }
        return primary(ctx);
    }

    Term primary(Context ctx) {
        const Token& t = peek();
        switch (t.kind) {
        case K::Integer: return Term::integer(integerValue(next()));
        case K::Variable: return Term::variable(next().text);
        case K::LParen: {
            next();
            Term inner = expr(ctx);
            expect(K::RParen, "')'");
            return inner;
        }
        case K::Bar: {
            next();
            Term inner = expr(ctx);
            expect(K::Bar, "'|'");
            return Term::arith(ArithOp::Abs, {std::move(inner)});
        }
        case K::Identifier: {
            std::string id = name();
            std::vector<Term> args;
            if (accept(K::LParen)) {
                do {
                    args.push_back(expr(Context::Argument));
                } while (accept(K::Comma));
                expect(K::RParen, "')'");
            }
            if (ctx == Context::Expression) return Term::function(std::move(id), std::move(args));
            if (args.empty()) return Term::symbol(std::move(id));
            return Term::compound(std::move(id), std::move(args));
        }
        default: unexpected("term");
        }
    }

    std::int64_t integerValue(const Token& t) {
        std::int64_t v = 0;
        const auto* first = t.text.data();
        const auto* last = first + t.text.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) fail("integer out of range", t.loc);
        return v;
    }

    const std::vector<Token>& toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Name resolution: decide which nullary names in t-atoms denote functions.

class NameResolver {
public:
    void resolve(Program& p) {
        forEachTAtom(p, [&](TAtom& t) { collect(t); });
        forEachTAtom(p, [&](TAtom& t) { rewrite(t); });
    }

    static void forEachTAtom(Program& p, const auto& fn) {
        auto visit = [&](std::vector<Literal>& ls) {
            for (auto& l : ls) {
                if (l.isTAtom()) fn(std::get<TAtom>(l.value));
            }
        };
        for (auto& r : p.rules) {
            if (r.head.isTAtom()) fn(std::get<TAtom>(r.head.value));
            visit(r.pos);
            visit(r.neg);
        }
        for (auto& c : p.choices) {
            visit(c.conditions);
            visit(c.pos);
            visit(c.neg);
        }
    }

private:
    static bool isBareName(const Term& t) { return t.kind == Term::Kind::Function && t.args.empty(); }

    void collectFunctions(const Term& t) {
        if (t.kind == Term::Kind::Function) functions_.insert(t.name);
        for (const auto& a : t.args) collectFunctions(a);
    }

    void collect(const TAtom& t) {
        for (const Term* side : {&t.lhs, &t.rhs}) {
            if (side->kind == Term::Kind::Function && !side->args.empty()) functions_.insert(side->name);
            if (side->kind == Term::Kind::Arith) collectFunctions(*side);
        }
        const bool ordering = t.op != CmpOp::Eq && t.op != CmpOp::Ne;
        if (isBareName(t.lhs)) functions_.insert(t.lhs.name);
        if (ordering && isBareName(t.rhs)) functions_.insert(t.rhs.name);
    }

    void rewrite(TAtom& t) {
        if (isBareName(t.rhs) && !functions_.count(t.rhs.name)) t.rhs = Term::symbol(t.rhs.name);
    }

    std::set<std::string> functions_;
};

void validate(const Program& p) {
    for (const auto& r : p.rules) {
        if (r.isConstraint()) continue;
        if (!r.head.isRegular()) {
            const auto& t = r.head.tatom();
            const bool seedShape =
                t.op == CmpOp::Eq && t.lhs.kind == Term::Kind::Function && !t.rhs.containsFunction();
            if (!seedShape) {
                throw ParseError({Diagnostic{r.loc, Diagnostic::Severity::Error,
                                             "rule head '" + r.head.toString() + "' is not a seed literal"}});
            }
        }
    }
    for (const auto& c : p.choices) {
        for (const auto& cond : c.conditions) {
            if (cond.isTAtom() && (cond.tatom().lhs.containsFunction() || cond.tatom().rhs.containsFunction())) {
                throw ParseError({Diagnostic{c.loc, Diagnostic::Severity::Error,
                                             "choice condition '" + cond.toString() +
                                                 "' must be a regular literal or a comparison guard"}});
            }
        }
    }
}

} // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

SourceProgram parseSource(std::string text, std::string path) {
    SourceProgram src;
    src.path = std::move(path);
    src.text = std::move(text);
    try {
        src.tokens = tokenize(src.text);
        Parser parser(src.tokens);
        Program p = parser.program();
        NameResolver().resolve(p);
        validate(p);
        p.signature = collectSignature(p.rules, p.choices);
        src.program = std::move(p);
    } catch (const ParseError& e) {
        src.diagnostics.insert(src.diagnostics.end(), e.diagnostics().begin(), e.diagnostics().end());
    } catch (const SyntaxError& e) {
        SourceLocation loc = e.location();
        if (loc.line == 0) loc = {1, 1};
        src.diagnostics.push_back(Diagnostic{loc, Diagnostic::Severity::Error, e.what()});
    }
    return src;
}

Program parse(std::string_view text) {
    SourceProgram src = parseSource(std::string(text));
    if (!src.ok()) throw ParseError(src.diagnostics);
    return std::move(src.program);
}

std::string print(const Program& p) {
    std::string out;
    for (const auto& r : p.rules) out += r.toString() + "\n";
    for (const auto& c : p.choices) out += c.toString() + "\n";
    for (const auto& s : p.shows) out += "#show " + s.name + "/" + std::to_string(s.arity) + ".\n";
    return out;
}

std::vector<Literal> parseSeedLiterals(std::string_view text) {
    const auto tokens = tokenize(text);
    Parser parser(tokens);
    auto lits = parser.seedLiterals();
    for (auto& l : lits) {
        if (l.isTAtom()) {
            auto& t = std::get<TAtom>(l.value);
            if (t.rhs.kind == Term::Kind::Function && t.rhs.args.empty()) t.rhs = Term::symbol(t.rhs.name);
        }
        if (!isSeed(l)) {
            throw ParseError({Diagnostic{{1, 1}, Diagnostic::Severity::Error,
                                         "'" + l.toString() + "' is not a ground seed literal"}});
        }
        std::set<std::string> vars;
        l.collectVariables(vars);
        if (!vars.empty()) {
            throw ParseError({Diagnostic{{1, 1}, Diagnostic::Severity::Error,
                                         "'" + l.toString() + "' is not a ground seed literal"}});
        }
    }
    return lits;
}

} // namespace aspf
