// Text <-> Program conversion for the ASP{f,cr} concrete syntax.
//
//   rule        head :- body.          fact       head.
//   constraint  :- body.               cr-rule    head :+ body.   (body may be empty)
//   choice      L { atom : cond : ... } U :- body.
//   directive   #show name/arity.
//
// `not` is default negation, `-p` strong negation, `%` starts a comment.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aspf/syntax.hpp"

namespace aspf {

struct Diagnostic {
    enum class Severity { Error, Warning };

    SourceLocation loc;
    Severity severity = Severity::Error;
    std::string message;
    std::string file; // prefix used when toString gets no path

    std::string toString(const std::string& path = "") const;
};

struct Token {
    enum class Kind {
        Identifier, Variable, Integer,
        LParen, RParen, LBrace, RBrace, Comma, Dot, Colon, Bar, Slash,
        If, CrIf, Not, Show,
        Plus, Minus, Star,
        Eq, Ne, Le, Lt, Gt, Ge,
        End,
    };

    Kind kind = Kind::End;
    std::string text;
    SourceLocation loc;
};

struct SourceProgram {
    std::string path;
    std::string text;
    std::vector<Token> tokens;
    Program program;
    std::vector<Diagnostic> diagnostics;

    bool ok() const;
};

/// Error carrying the full list of diagnostics of a failed parse.
class ParseError : public SyntaxError {
public:
    ParseError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

std::vector<Token> tokenize(std::string_view text);

/// Never throws; failures are reported through `diagnostics`.
SourceProgram parseSource(std::string text, std::string path = "<input>");

/// Throws ParseError on any error diagnostic.
Program parse(std::string_view text);

/// Canonical text; parse(print(p)) == p.
std::string print(const Program& p);

/// Whitespace- or comma-separated ground seed literals such as `f=2 -p(a) q`.
/// Bare names on the right of `=` are read as constants.
std::vector<Literal> parseSeedLiterals(std::string_view text);

} // namespace aspf
