#ifndef SHAPCOUNT_BOOLFUNC_IO_HPP
#define SHAPCOUNT_BOOLFUNC_IO_HPP

#include "shapcount/boolfunc.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace shapcount {

// Formula text format:
//
//   ; comment
//   vars 3                        optional; defaults to the largest index used
//   (and x1 (or x2 (not x3)))
//
// Variables are x1..xn (1-based in text, 0-based in memory).

namespace detail {

struct Token {
    std::string text;
    std::size_t line;
};

inline std::vector<Token> tokenize_sexpr(std::string_view text) {
    std::vector<Token> out;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size();) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (c == ';' || c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(' || c == ')') {
            out.push_back({std::string(1, c), line});
            ++i;
        } else {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
                   text[j] != ')' && text[j] != ';')
                ++j;
            out.push_back({std::string(text.substr(i, j - i)), line});
            i = j;
        }
    }
    return out;
}

[[noreturn]] inline void syntax_error(std::size_t line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

class SexprParser {
public:
    explicit SexprParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    NodePtr parse_expr() {
        if (pos_ >= tokens_.size()) syntax_error(last_line(), "unexpected end of input");
        const Token& t = tokens_[pos_++];
        if (t.text == "0") return constant(false);
        if (t.text == "1") return constant(true);
        if (t.text == ")") syntax_error(t.line, "unexpected ')'");
        if (t.text != "(") {
            if (t.text.size() < 2 || t.text[0] != 'x') syntax_error(t.line, "unknown atom '" + t.text + "'");
            auto idx = parse_index(std::string_view(t.text).substr(1));
            if (!idx || *idx == 0) syntax_error(t.line, "bad variable '" + t.text + "'");
            max_var_ = std::max(max_var_, *idx);
            return variable(*idx - 1);
        }
        if (pos_ >= tokens_.size()) syntax_error(t.line, "unterminated '('");
        const Token& op = tokens_[pos_++];
        std::vector<NodePtr> kids;
        while (pos_ < tokens_.size() && tokens_[pos_].text != ")") kids.push_back(parse_expr());
        if (pos_ >= tokens_.size()) syntax_error(t.line, "unterminated '('");
        ++pos_;
        if (op.text == "not") {
            if (kids.size() != 1) syntax_error(op.line, "'not' takes exactly one argument");
            return negation(std::move(kids.front()));
        }
        if (op.text == "and" || op.text == "or") {
            if (kids.size() < 2) syntax_error(op.line, "'" + op.text + "' takes at least two arguments");
            return std::make_shared<const Node>(
                Node{op.text == "and" ? NodeKind::And : NodeKind::Or, false, 0, std::move(kids)});
        }
        syntax_error(op.line, "unknown operator '" + op.text + "'");
    }

    bool at_end() const { return pos_ >= tokens_.size(); }
    const Token& peek() const { return tokens_[pos_]; }
    void skip(std::size_t k) { pos_ += k; }
    std::size_t max_var() const { return max_var_; }
    std::size_t last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;
};

} // namespace detail

inline BoolFunc parse_formula(std::string_view text) {
    detail::SexprParser p(detail::tokenize_sexpr(text));
    std::optional<std::size_t> declared;
    if (!p.at_end() && p.peek().text == "vars") {
        std::size_t line = p.peek().line;
        p.skip(1);
        if (p.at_end()) detail::syntax_error(line, "missing variable count after 'vars'");
        declared = detail::parse_index(p.peek().text);
        if (!declared) detail::syntax_error(line, "bad variable count '" + p.peek().text + "'");
        p.skip(1);
    }
    if (p.at_end()) detail::syntax_error(p.last_line(), "empty formula");
    NodePtr root = p.parse_expr();
    if (!p.at_end()) detail::syntax_error(p.peek().line, "trailing input after formula");
    if (declared && *declared < p.max_var())
        throw InputError("formula uses x" + std::to_string(p.max_var()) + " but declares " +
                         std::to_string(*declared) + " variables");
    return BoolFunc(std::move(root), declared.value_or(p.max_var()));
}

inline void format_node(std::ostream& os, const Node& node) {
    switch (node.kind) {
    case NodeKind::Const: os << (node.value ? '1' : '0'); return;
    case NodeKind::Var: os << 'x' << node.var + 1; return;
    case NodeKind::Not: os << "(not "; break;
    case NodeKind::And: os << "(and "; break;
    case NodeKind::Or: os << "(or "; break;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) os << ' ';
        format_node(os, *node.children[i]);
    }
    os << ')';
}

/// Expression only, e.g. "(and x1 (or x2 (not x3)))".
inline std::string format_formula(const BoolFunc& f) {
    std::ostringstream os;
    format_node(os, *f.root());
    return os.str();
}

/// Full file contents with the "vars" header, accepted by parse_formula.
inline std::string write_formula(const BoolFunc& f) {
    return "vars " + std::to_string(f.var_count()) + "\n" + format_formula(f) + "\n";
}

/// DIMACS-style clause lists: "p cnf n m" or "p dnf n m", one 0-terminated
/// clause per line, negative literal = negated variable, "c" comments.
inline BoolFunc parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<bool> is_cnf;
    std::size_t n = 0, m = 0;
    std::vector<NodePtr> clauses;
    std::vector<NodePtr> current;
    std::size_t current_line = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c" || tok[0] == 'c') continue;
        if (tok == "p") {
            if (is_cnf) detail::syntax_error(lineno, "duplicate problem line");
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || (fmt != "cnf" && fmt != "dnf"))
                detail::syntax_error(lineno, "expected 'p cnf|dnf <vars> <clauses>'");
            is_cnf = fmt == "cnf";
            continue;
        }
        if (!is_cnf) detail::syntax_error(lineno, "clause before problem line");
        ls.clear();
        ls.str(line);
        long long lit = 0;
        while (ls >> lit) {
            if (current.empty()) current_line = lineno;
            if (lit == 0) {
                auto node = *is_cnf ? disjunction(std::move(current)) : conjunction(std::move(current));
                clauses.push_back(std::move(node));
                current.clear();
                continue;
            }
            std::size_t v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
            if (v > n) detail::syntax_error(lineno, "literal " + std::to_string(lit) + " exceeds declared variables");
            NodePtr x = variable(v - 1);
            current.push_back(lit < 0 ? negation(std::move(x)) : std::move(x));
        }
        if (!ls.eof()) detail::syntax_error(lineno, "non-integer token in clause");
    }
    if (!is_cnf) throw InputError("missing problem line");
    if (!current.empty()) detail::syntax_error(current_line, "clause not terminated by 0");
    if (clauses.size() != m)
        throw InputError("header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
    NodePtr root = *is_cnf ? conjunction(std::move(clauses)) : disjunction(std::move(clauses));
    return BoolFunc(std::move(root), n);
}

/// Dispatches on the first significant line: DIMACS when it starts with "p ".
inline BoolFunc read_formula(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c' && (first + 1 == line.size() || std::isspace(static_cast<unsigned char>(line[first + 1]))))
            continue;
        if (line.compare(first, 2, "p ") == 0) return parse_dimacs(text);
        break;
    }
    return parse_formula(text);
}

} // namespace shapcount

#endif // SHAPCOUNT_BOOLFUNC_IO_HPP
