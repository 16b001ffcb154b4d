#include "aspf/syntax.hpp"

#include <sstream>

namespace aspf {

bool isReservedName(const std::string& name) {
    return name.rfind(kReservedPrefix, 0) == 0;
}

// ---------------------------------------------------------------------------
// Constant

Constant Constant::integer(std::int64_t v) {
    Constant c;
    c.integer_ = true;
    c.value_ = v;
    return c;
}

Constant Constant::symbol(std::string name, std::vector<Constant> args) {
    Constant c;
    c.integer_ = false;
    c.name_ = std::move(name);
    c.args_ = std::move(args);
    return c;
}

std::string Constant::toString() const {
    if (integer_) return std::to_string(value_);
    if (args_.empty()) return name_;
    std::string out = name_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) out += ",";
        out += args_[i].toString();
    }
    return out + ")";
}

bool operator==(const Constant& a, const Constant& b) {
    if (a.integer_ != b.integer_) return false;
    if (a.integer_) return a.value_ == b.value_;
    return a.name_ == b.name_ && a.args_ == b.args_;
}

// Integers order before symbols.
std::strong_ordering operator<=>(const Constant& a, const Constant& b) {
    if (a.integer_ != b.integer_) return a.integer_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.integer_) return a.value_ <=> b.value_;
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
    if (auto c = a.args_.size() <=> b.args_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.args_.size(); ++i) {
        if (auto c = a.args_[i] <=> b.args_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string GroundName::toString() const {
    if (args.empty()) return name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].toString();
    }
    return out + ")";
}

std::strong_ordering GroundName::operator<=>(const GroundName& o) const {
    if (auto c = name <=> o.name; c != 0) return c;
    if (auto c = args.size() <=> o.args.size(); c != 0) return c;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (auto c = args[i] <=> o.args[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Arithmetic

bool isUnary(ArithOp op) { return op == ArithOp::Abs || op == ArithOp::Neg; }

const char* symbolOf(ArithOp op) {
    switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    case ArithOp::Abs: return "|";
    case ArithOp::Neg: return "-";
    }
    return "?";
}

std::optional<std::int64_t> applyArith(ArithOp op, std::int64_t lhs, std::int64_t rhs) {
    std::int64_t out = 0;
    bool overflow = false;
    switch (op) {
    case ArithOp::Add: overflow = __builtin_add_overflow(lhs, rhs, &out); break;
    case ArithOp::Sub: overflow = __builtin_sub_overflow(lhs, rhs, &out); break;
    case ArithOp::Mul: overflow = __builtin_mul_overflow(lhs, rhs, &out); break;
    case ArithOp::Div:
        if (rhs == 0) return std::nullopt;
        overflow = (lhs == INT64_MIN && rhs == -1);
        if (!overflow) out = lhs / rhs; // truncates toward zero
        break;
    case ArithOp::Abs:
        overflow = lhs == INT64_MIN;
        out = lhs < 0 ? -lhs : lhs;
        break;
    case ArithOp::Neg:
        overflow = lhs == INT64_MIN;
        out = -lhs;
        break;
    }
    if (overflow) throw EvalError("integer overflow in arithmetic");
    return out;
}

// ---------------------------------------------------------------------------
// Term

Term Term::constant(aspf::Constant c) {
    Term t;
    t.kind = Kind::Constant;
    t.value = std::move(c);
    return t;
}

Term Term::integer(std::int64_t v) { return constant(aspf::Constant::integer(v)); }
Term Term::symbol(std::string name) { return constant(aspf::Constant::symbol(std::move(name))); }

Term Term::variable(std::string name) {
    Term t;
    t.kind = Kind::Variable;
    t.name = std::move(name);
    return t;
}

Term Term::compound(std::string name, std::vector<Term> args) {
    Term t;
    t.kind = Kind::Compound;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
}

Term Term::function(std::string name, std::vector<Term> args) {
    Term t;
    t.kind = Kind::Function;
    t.name = std::move(name);
    t.args = std::move(args);
    return t;
}

Term Term::arith(ArithOp op, std::vector<Term> operands) {
    Term t;
    t.kind = Kind::Arith;
    t.op = op;
    t.args = std::move(operands);
    return t;
}

bool Term::isGround() const {
    if (kind == Kind::Variable) return false;
    for (const auto& a : args) {
        if (!a.isGround()) return false;
    }
    return true;
}

bool Term::containsFunction() const {
    if (kind == Kind::Function) return true;
    for (const auto& a : args) {
        if (a.containsFunction()) return true;
    }
    return false;
}

void Term::collectVariables(std::set<std::string>& out) const {
    if (kind == Kind::Variable) out.insert(name);
    for (const auto& a : args) a.collectVariables(out);
}

namespace {

int precedence(const Term& t) {
    if (t.kind != Term::Kind::Arith) return 4;
    switch (t.op) {
    case ArithOp::Add:
    case ArithOp::Sub: return 1;
    case ArithOp::Mul:
    case ArithOp::Div: return 2;
    default: return 3;
    }
}

std::string joinArgs(const std::vector<Term>& args) {
    std::string out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += args[i].toString();
    }
    return out;
}

} // namespace

std::string Term::toString() const {
    switch (kind) {
    case Kind::Constant: return value.toString();
    case Kind::Variable: return name;
    case Kind::Compound:
    case Kind::Function: return args.empty() ? name : name + "(" + joinArgs(args) + ")";
    case Kind::Arith: break;
    }
    if (op == ArithOp::Abs) return "|" + args[0].toString() + "|";
    if (op == ArithOp::Neg) {
        const bool paren = precedence(args[0]) < 3;
        return paren ? "-(" + args[0].toString() + ")" : "-" + args[0].toString();
    }
    const int p = precedence(*this);
    std::string lhs = args[0].toString();
    std::string rhs = args[1].toString();
    if (precedence(args[0]) < p) lhs = "(" + lhs + ")";
    if (precedence(args[1]) <= p) rhs = "(" + rhs + ")";
    return lhs + symbolOf(op) + rhs;
}

// ---------------------------------------------------------------------------
// Literals

const char* symbolOf(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Le: return "<=";
    case CmpOp::Lt: return "<";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "?";
}

bool compareIntegers(CmpOp op, std::int64_t a, std::int64_t b) {
    switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    }
    return false;
}

Literal Literal::atom(std::string predicate, std::vector<Term> args, bool strongNegation) {
    return Literal{RegularLiteral{Atom{std::move(predicate), std::move(args)}, strongNegation}};
}

Literal Literal::tatom(Term lhs, CmpOp op, Term rhs) {
    return Literal{TAtom{std::move(lhs), op, std::move(rhs)}};
}

bool Literal::isBottom() const {
    return isRegular() && regular().atom.predicate == kBottom;
}

void Literal::collectVariables(std::set<std::string>& out) const {
    if (isRegular()) {
        for (const auto& a : regular().atom.args) a.collectVariables(out);
    } else {
        tatom().lhs.collectVariables(out);
        tatom().rhs.collectVariables(out);
    }
}

std::string Literal::toString() const {
    if (isRegular()) {
        const auto& r = regular();
        std::string out = r.strongNegation ? "-" : "";
        out += r.atom.predicate;
        if (!r.atom.args.empty()) out += "(" + joinArgs(r.atom.args) + ")";
        return out;
    }
    const auto& t = tatom();
    return t.lhs.toString() + symbolOf(t.op) + t.rhs.toString();
}

LiteralClass classify(const Literal& l) {
    if (l.isRegular()) return LiteralClass::Seed;
    const auto& t = l.tatom();
    const bool simpleLhs = t.lhs.kind == Term::Kind::Function;
    const bool constRhs = t.rhs.kind == Term::Kind::Constant;
    return (t.op == CmpOp::Eq && simpleLhs && constRhs) ? LiteralClass::Seed : LiteralClass::Dependent;
}

// ---------------------------------------------------------------------------
// Rules

std::set<std::string> Rule::variables() const {
    std::set<std::string> out;
    head.collectVariables(out);
    for (const auto& l : pos) l.collectVariables(out);
    for (const auto& l : neg) l.collectVariables(out);
    return out;
}

namespace {

std::string bodyText(const std::vector<Literal>& pos, const std::vector<Literal>& neg) {
    std::string out;
    auto add = [&](const std::string& s) {
        if (!out.empty()) out += ", ";
        out += s;
    };
    for (const auto& l : pos) add(l.toString());
    for (const auto& l : neg) {
        if (!l.isBottom()) add("not " + l.toString());
    }
    return out;
}

} // namespace

std::string Rule::toString() const {
    const std::string body = bodyText(pos, neg);
    if (isConstraint()) return ":- " + body + ".";
    std::string out = head.toString();
    if (kind == RuleKind::Cr) return out + (body.empty() ? " :+." : " :+ " + body + ".");
    if (body.empty()) return out + ".";
    return out + " :- " + body + ".";
}

std::set<std::string> ChoiceRule::globalVariables() const {
    std::set<std::string> out;
    for (const auto& l : pos) l.collectVariables(out);
    for (const auto& l : neg) l.collectVariables(out);
    return out;
}

std::set<std::string> ChoiceRule::localVariables() const {
    std::set<std::string> all;
    if (schema) {
        for (const auto& a : schema->args) a.collectVariables(all);
    }
    for (const auto& c : conditions) c.collectVariables(all);
    std::set<std::string> out;
    const auto global = globalVariables();
    for (const auto& v : all) {
        if (!global.count(v)) out.insert(v);
    }
    return out;
}

std::string ChoiceRule::toString() const {
    std::ostringstream out;
    out << lower << " { ";
    if (schema) {
        out << Literal{RegularLiteral{*schema, false}}.toString();
        for (const auto& c : conditions) out << " : " << c.toString();
        out << " ";
    }
    out << "}";
    if (upper) out << " " << *upper;
    const std::string body = bodyText(pos, neg);
    if (!body.empty()) out << " :- " << body;
    out << ".";
    return out.str();
}

Rule desugarConstraint(std::vector<Literal> pos, std::vector<Literal> neg, SourceLocation loc) {
    if (pos.empty() && neg.empty()) throw SyntaxError("constraint with an empty body", loc);
    for (const auto* part : {&pos, &neg}) {
        for (const auto& l : *part) {
            if (l.isBottom()) throw SyntaxError(std::string("reserved symbol '") + kBottom + "' used in program", loc);
        }
    }
    Rule r;
    r.head = Literal::atom(kBottom);
    r.pos = std::move(pos);
    r.neg = std::move(neg);
    r.neg.push_back(Literal::atom(kBottom));
    r.kind = RuleKind::Regular;
    r.loc = loc;
    return r;
}

// ---------------------------------------------------------------------------
// Signature collection

namespace {

class SignatureBuilder {
public:
    void relation(const std::string& name, int arity, SourceLocation loc) {
        if (name == kBottom) return;
        note(name, arity, Role::Relation, loc);
        sig_.relations.insert({name, arity});
    }

    void term(const Term& t, SourceLocation loc) {
        switch (t.kind) {
        case Term::Kind::Constant:
            if (t.value.isSymbol() && t.value.args().empty()) note(t.value.name(), 0, Role::Constant, loc);
            sig_.constants.insert(t.value);
            break;
        case Term::Kind::Variable: break;
        case Term::Kind::Function:
            note(t.name, static_cast<int>(t.args.size()), Role::Function, loc);
            sig_.functions.insert({t.name, static_cast<int>(t.args.size())});
            for (const auto& a : t.args) term(a, loc);
            break;
        case Term::Kind::Compound:
        case Term::Kind::Arith:
            for (const auto& a : t.args) term(a, loc);
            break;
        }
    }

    void literal(const Literal& l, SourceLocation loc) {
        if (l.isRegular()) {
            const auto& a = l.regular().atom;
            relation(a.predicate, static_cast<int>(a.args.size()), loc);
            for (const auto& t : a.args) term(t, loc);
        } else {
            term(l.tatom().lhs, loc);
            term(l.tatom().rhs, loc);
        }
    }

    Signature take() { return std::move(sig_); }

private:
    enum class Role { Constant, Function, Relation };

    static const char* roleName(Role r) {
        switch (r) {
        case Role::Constant: return "constant";
        case Role::Function: return "function";
        case Role::Relation: return "relation";
        }
        return "?";
    }

    void note(const std::string& name, int arity, Role role, SourceLocation loc) {
        auto [it, fresh] = seen_.try_emplace(name, role, arity);
        if (fresh) return;
        if (it->second.first != role) {
            throw SyntaxError("symbol '" + name + "' used both as " + roleName(it->second.first) + " and as " +
                                  roleName(role),
                              loc);
        }
        if (it->second.second != arity) {
            throw SyntaxError("symbol '" + name + "' used with arities " + std::to_string(it->second.second) +
                                  " and " + std::to_string(arity),
                              loc);
        }
    }

    Signature sig_;
    std::map<std::string, std::pair<Role, int>> seen_;
};

} // namespace

Signature collectSignature(const std::vector<Rule>& rules, const std::vector<ChoiceRule>& choices) {
    SignatureBuilder b;
    for (const auto& r : rules) {
        b.literal(r.head, r.loc);
        for (const auto& l : r.pos) b.literal(l, r.loc);
        for (const auto& l : r.neg) b.literal(l, r.loc);
    }
    for (const auto& c : choices) {
        if (c.schema) b.literal(Literal{RegularLiteral{*c.schema, false}}, c.loc);
        for (const auto& l : c.conditions) b.literal(l, c.loc);
        for (const auto& l : c.pos) b.literal(l, c.loc);
        for (const auto& l : c.neg) b.literal(l, c.loc);
    }
    return b.take();
}

} // namespace aspf
