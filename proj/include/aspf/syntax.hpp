// Abstract syntax of ASP{f,cr} programs: constants, terms, literals, rules,
// choice rules and signatures, plus the classification predicates shared by
// the grounder, the semantics and the solvers.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace aspf {

struct SourceLocation {
    int line = 0;
    int column = 0;
    bool operator==(const SourceLocation&) const = default;
};

/// Base of every error raised by the library. Carries the source location of
/// the offending construct when one is known (line 0 otherwise).
class Error : public std::runtime_error {
public:
    Error(const std::string& msg, SourceLocation loc = {})
        : std::runtime_error(msg), loc_(loc) {}
    SourceLocation location() const { return loc_; }

private:
    SourceLocation loc_;
};

class SyntaxError : public Error { using Error::Error; };
class GroundError : public Error { using Error::Error; };
/// Ill-sorted evaluation, e.g. `a + 1` or `a < 3` with `a` symbolic.
class EvalError : public Error { using Error::Error; };

/// Reserved nullary atom shared by all desugared constraints.
inline constexpr const char* kBottom = "__bot";
/// Names starting with this prefix are internal and never accepted from source.
inline constexpr const char* kReservedPrefix = "__";

bool isReservedName(const std::string& name);

// ---------------------------------------------------------------------------
// Constants

/// An integer or a symbol. Symbols may carry constant arguments so that ground
/// expressions such as `volume(a)` can be used as constants; this is not a
/// Herbrand term algebra, just structured names compared by identity.
class Constant {
public:
    Constant() = default;
    static Constant integer(std::int64_t v);
    static Constant symbol(std::string name, std::vector<Constant> args = {});

    bool isInteger() const { return integer_; }
    bool isSymbol() const { return !integer_; }
    std::int64_t intValue() const { return value_; }
    const std::string& name() const { return name_; }
    const std::vector<Constant>& args() const { return args_; }

    std::string toString() const;

    friend bool operator==(const Constant& a, const Constant& b);
    friend std::strong_ordering operator<=>(const Constant& a, const Constant& b);

private:
    bool integer_ = true;
    std::int64_t value_ = 0;
    std::string name_;
    std::vector<Constant> args_;
};

/// Identity of a ground atom or of a ground simple term: a name applied to a
/// tuple of constants.
struct GroundName {
    std::string name;
    std::vector<Constant> args;

    std::string toString() const;
    bool operator==(const GroundName&) const = default;
    std::strong_ordering operator<=>(const GroundName& o) const;
};

// ---------------------------------------------------------------------------
// Terms

enum class ArithOp { Add, Sub, Mul, Div, Abs, Neg };

bool isUnary(ArithOp op);
const char* symbolOf(ArithOp op);

/// Integer arithmetic shared by folding and valuation. Returns nullopt on
/// division by zero; throws EvalError on overflow.
std::optional<std::int64_t> applyArith(ArithOp op, std::int64_t lhs, std::int64_t rhs = 0);

/// A term in argument position (constants, variables, structured constants and
/// arithmetic over them) or in t-atom position (simple terms, arithmetic terms).
struct Term {
    enum class Kind {
        Constant,  // integer or symbol
        Variable,  // uppercase identifier
        Compound,  // structured constant with (possibly non-ground) arguments
        Function,  // simple term f(c1..cn): a non-Herbrand function application
        Arith,     // arithmetic operation over operands
    };

    Kind kind = Kind::Constant;
    aspf::Constant value;      // Kind::Constant
    std::string name;          // Variable / Compound / Function
    ArithOp op = ArithOp::Add; // Arith
    std::vector<Term> args;    // Compound / Function arguments, Arith operands

    static Term constant(aspf::Constant c);
    static Term integer(std::int64_t v);
    static Term symbol(std::string name);
    static Term variable(std::string name);
    static Term compound(std::string name, std::vector<Term> args);
    static Term function(std::string name, std::vector<Term> args = {});
    static Term arith(ArithOp op, std::vector<Term> operands);

    bool isGround() const;          // no variables
    bool containsFunction() const;  // a simple term occurs somewhere
    void collectVariables(std::set<std::string>& out) const;
    std::string toString() const;

    bool operator==(const Term&) const = default;
};

// ---------------------------------------------------------------------------
// Literals

enum class CmpOp { Eq, Ne, Le, Lt, Gt, Ge };

const char* symbolOf(CmpOp op);
bool compareIntegers(CmpOp op, std::int64_t a, std::int64_t b);

struct Atom {
    std::string predicate;
    std::vector<Term> args;
    bool operator==(const Atom&) const = default;
};

struct RegularLiteral {
    Atom atom;
    bool strongNegation = false;
    bool operator==(const RegularLiteral&) const = default;
};

struct TAtom {
    Term lhs;
    CmpOp op = CmpOp::Eq;
    Term rhs;
    bool operator==(const TAtom&) const = default;
};

enum class LiteralClass { Seed, Dependent };

struct Literal {
    std::variant<RegularLiteral, TAtom> value;

    static Literal atom(std::string predicate, std::vector<Term> args = {}, bool strongNegation = false);
    static Literal tatom(Term lhs, CmpOp op, Term rhs);

    bool isRegular() const { return std::holds_alternative<RegularLiteral>(value); }
    bool isTAtom() const { return std::holds_alternative<TAtom>(value); }
    const RegularLiteral& regular() const { return std::get<RegularLiteral>(value); }
    const TAtom& tatom() const { return std::get<TAtom>(value); }

    bool isBottom() const;
    void collectVariables(std::set<std::string>& out) const;
    std::string toString() const;

    bool operator==(const Literal&) const = default;
};

/// seed iff the literal is regular or has the shape `simple term = constant`.
LiteralClass classify(const Literal& l);
inline bool isSeed(const Literal& l) { return classify(l) == LiteralClass::Seed; }

// ---------------------------------------------------------------------------
// Rules and programs

enum class RuleKind { Regular, Cr };

struct Rule {
    Literal head;
    std::vector<Literal> pos;
    std::vector<Literal> neg;
    RuleKind kind = RuleKind::Regular;
    SourceLocation loc;

    bool isConstraint() const { return head.isBottom(); }
    bool isFact() const { return pos.empty() && neg.empty() && !isConstraint(); }
    std::set<std::string> variables() const;
    std::string toString() const;

    /// Structural equality; source locations are ignored.
    bool operator==(const Rule& o) const {
        return head == o.head && pos == o.pos && neg == o.neg && kind == o.kind;
    }
};

/// `lower { schema : cond1 : ... : condk } upper :- body.`
struct ChoiceRule {
    int lower = 0;
    std::optional<int> upper;        // nullopt: unbounded
    std::optional<Atom> schema;      // nullopt: `{ }`, no candidates
    std::vector<Literal> conditions; // regular literals or comparison guards
    std::vector<Literal> pos;
    std::vector<Literal> neg;
    SourceLocation loc;

    std::set<std::string> globalVariables() const;
    std::set<std::string> localVariables() const;
    std::string toString() const;

    bool operator==(const ChoiceRule& o) const {
        return lower == o.lower && upper == o.upper && schema == o.schema &&
               conditions == o.conditions && pos == o.pos && neg == o.neg;
    }
};

/// `#show name/arity.`
struct ShowDirective {
    std::string name;
    int arity = 0;
    bool operator==(const ShowDirective&) const = default;
    auto operator<=>(const ShowDirective&) const = default;
};

using SymbolArity = std::pair<std::string, int>;

struct Signature {
    std::set<Constant> constants;
    std::set<SymbolArity> functions;
    std::set<SymbolArity> relations;
    bool operator==(const Signature&) const = default;
};

struct Program {
    Signature signature;
    std::vector<Rule> rules;
    std::vector<ChoiceRule> choices;
    std::vector<ShowDirective> shows;

    bool operator==(const Program& o) const {
        return rules == o.rules && choices == o.choices && shows == o.shows;
    }
};

/// Builds `⊥ ← pos, not neg, not ⊥`. Throws SyntaxError on an empty body.
Rule desugarConstraint(std::vector<Literal> pos, std::vector<Literal> neg, SourceLocation loc = {});

/// Every constant, function symbol and relation symbol occurring in the rules.
/// Throws SyntaxError when a name is used at two arities or in two roles.
Signature collectSignature(const std::vector<Rule>& rules, const std::vector<ChoiceRule>& choices = {});

} // namespace aspf
