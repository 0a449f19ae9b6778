#include "bnsens/boolexpr.hpp"

#include "bnsens/error.hpp"

#include <cctype>
#include <cstdlib>
#include <set>
#include <sstream>

namespace bnsens {

BoolExpr BoolExpr::variable(std::size_t index) {
    if (index == 0) throw InvalidArgument("formula variables are numbered from 1");
    BoolExpr e;
    e.nodes_.push_back(Node{Kind::Var, index, 0, 0});
    return e;
}

BoolExpr BoolExpr::combine(Kind kind, const BoolExpr& left, const BoolExpr* right) {
    BoolExpr e = left;
    const std::size_t left_root = e.root();
    std::size_t right_root = 0;
    if (right) {
        const std::size_t offset = e.nodes_.size();
        for (Node n : right->nodes_) {
            if (n.kind != Kind::Var) {
                n.left += offset;
                n.right += offset;
            }
            e.nodes_.push_back(n);
        }
        right_root = e.nodes_.size() - 1;
    }
    e.nodes_.push_back(Node{kind, 0, left_root, right_root});
    return e;
}

BoolExpr BoolExpr::negation(const BoolExpr& child) { return combine(Kind::Not, child, nullptr); }
BoolExpr BoolExpr::conjunction(const BoolExpr& l, const BoolExpr& r) { return combine(Kind::And, l, &r); }
BoolExpr BoolExpr::disjunction(const BoolExpr& l, const BoolExpr& r) { return combine(Kind::Or, l, &r); }

std::size_t BoolExpr::max_variable() const {
    std::size_t m = 0;
    for (const auto& n : nodes_)
        if (n.kind == Kind::Var && n.var > m) m = n.var;
    return m;
}

std::size_t BoolExpr::operator_count() const {
    std::size_t c = 0;
    for (const auto& n : nodes_)
        if (n.kind != Kind::Var) ++c;
    return c;
}

bool BoolExpr::evaluate(const std::vector<bool>& values) const {
    std::vector<bool> v(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        switch (n.kind) {
        case Kind::Var: v[i] = values.at(n.var - 1); break;
        case Kind::Not: v[i] = !v[n.left]; break;
        case Kind::And: v[i] = v[n.left] && v[n.right]; break;
        case Kind::Or: v[i] = v[n.left] || v[n.right]; break;
        }
    }
    return v.back();
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    BoolExpr run() {
        BoolExpr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, pos_ + 1, what); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    BoolExpr expr() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (text_[pos_] == '(') {
            ++pos_;
            skip_space();
            const std::size_t op_pos = pos_;
            std::string op = word();
            std::vector<BoolExpr> args;
            while (true) {
                skip_space();
                if (pos_ >= text_.size()) fail("missing ')'");
                if (text_[pos_] == ')') break;
                args.push_back(expr());
            }
            const std::size_t close = pos_;
            ++pos_;
            auto arity_error = [&](const std::string& what) { throw ParseError(1, op_pos + 1, what); };
            if (op == "not") {
                if (args.size() != 1) arity_error("'not' takes exactly one argument");
                return BoolExpr::negation(args[0]);
            }
            if (op == "and" || op == "or") {
                if (args.size() != 2)
                    arity_error("'" + op + "' must be binary (got " + std::to_string(args.size()) +
                                " arguments); binarize n-ary operators first");
                return op == "and" ? BoolExpr::conjunction(args[0], args[1]) : BoolExpr::disjunction(args[0], args[1]);
            }
            (void)close;
            throw ParseError(1, op_pos + 1, "unknown operator '" + op + "'");
        }
        const std::size_t start = pos_;
        std::string w = word();
        if (w.size() < 2 || w[0] != 'V') throw ParseError(1, start + 1, "expected variable V<i> or '('");
        for (std::size_t i = 1; i < w.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(w[i]))) throw ParseError(1, start + 1, "malformed variable '" + w + "'");
        std::size_t index = std::stoul(w.substr(1));
        if (index == 0) throw ParseError(1, start + 1, "variables are numbered from V1");
        return BoolExpr::variable(index);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void render(const BoolExpr& e, std::size_t i, std::string& out) {
    const auto& n = e.node(i);
    switch (n.kind) {
    case BoolExpr::Kind::Var: out += "V" + std::to_string(n.var); return;
    case BoolExpr::Kind::Not:
        out += "(not ";
        render(e, n.left, out);
        out += ")";
        return;
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or:
        out += n.kind == BoolExpr::Kind::And ? "(and " : "(or ";
        render(e, n.left, out);
        out += " ";
        render(e, n.right, out);
        out += ")";
        return;
    }
}

} // namespace

BoolExpr parse_bool_expr(std::string_view text) { return ExprParser(text).run(); }

std::string to_string(const BoolExpr& e) {
    std::string out;
    render(e, e.root(), out);
    return out;
}

void validate_maxsat(const MaxsatInstance& inst) {
    const std::size_t m = inst.clauses.size();
    if (m == 0) throw InvalidArgument("MAXSAT instance needs at least one clause");
    if (inst.k < 1 || inst.k > m) throw InvalidArgument("threshold k must satisfy 1 <= k <= m");
    for (std::size_t j = 0; j < m; ++j) {
        const auto& clause = inst.clauses[j];
        if (clause.empty()) throw InvalidArgument("clause " + std::to_string(j + 1) + " is empty");
        std::set<int> lits(clause.begin(), clause.end());
        for (int lit : clause) {
            if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > inst.num_vars)
                throw InvalidArgument("clause " + std::to_string(j + 1) + " has literal out of range");
            if (lits.contains(-lit))
                throw InvalidArgument("clause " + std::to_string(j + 1) + " contains both polarities of a variable");
        }
    }
}

MaxsatInstance parse_dimacs(std::string_view text) {
    MaxsatInstance inst;
    bool header = false;
    std::size_t declared = 0;
    std::vector<int> current;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        std::istringstream in(line);
        std::string tok;
        if (!(in >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
        if (tok == "p") {
            std::string fmt;
            long long n = -1, m = -1;
            if (header || !(in >> fmt >> n >> m) || fmt != "cnf" || n < 0 || m < 0)
                throw ParseError(line_no, 0, "expected a single 'p cnf <vars> <clauses>' header");
            inst.num_vars = static_cast<std::size_t>(n);
            declared = static_cast<std::size_t>(m);
            header = true;
            continue;
        }
        if (!header) throw ParseError(line_no, 0, "clause before 'p cnf' header");
        do {
            char* endp = nullptr;
            long lit = std::strtol(tok.c_str(), &endp, 10);
            if (*endp != '\0') throw ParseError(line_no, 0, "malformed literal '" + tok + "'");
            if (lit == 0) {
                inst.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (static_cast<std::size_t>(std::labs(lit)) > inst.num_vars)
                    throw ParseError(line_no, 0, "literal " + tok + " exceeds declared variable count");
                current.push_back(static_cast<int>(lit));
            }
        } while (in >> tok);
    }
    if (!header) throw ParseError(line_no, 0, "missing 'p cnf' header");
    if (!current.empty()) inst.clauses.push_back(std::move(current));
    if (inst.clauses.size() != declared)
        throw ParseError(line_no, 0, "header declares " + std::to_string(declared) + " clauses, found " +
                                         std::to_string(inst.clauses.size()));
    inst.k = inst.clauses.size();
    validate_maxsat(inst);
    return inst;
}

std::string to_dimacs(const MaxsatInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.num_vars << " " << inst.clauses.size() << "\n";
    for (const auto& clause : inst.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

std::size_t satisfied_clauses(const MaxsatInstance& inst, const std::vector<bool>& values) {
    std::size_t count = 0;
    for (const auto& clause : inst.clauses) {
        for (int lit : clause) {
            bool v = values.at(static_cast<std::size_t>(std::abs(lit)) - 1);
            if (lit > 0 ? v : !v) {
                ++count;
                break;
            }
        }
    }
    return count;
}

void validate_emajsat(const EMajsatInstance& inst) {
    if (inst.formula.nodes().empty()) throw InvalidArgument("empty formula");
    if (inst.num_exists > inst.num_vars) throw InvalidArgument("more existential variables than variables");
    if (inst.formula.max_variable() > inst.num_vars)
        throw InvalidArgument("formula mentions V" + std::to_string(inst.formula.max_variable()) + " but has only " +
                              std::to_string(inst.num_vars) + " variables");
}

} // namespace bnsens
