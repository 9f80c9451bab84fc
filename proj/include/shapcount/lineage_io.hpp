#ifndef SHAPCOUNT_LINEAGE_IO_HPP
#define SHAPCOUNT_LINEAGE_IO_HPP

// Text formats for the lineage module.
//
// Database directory: schema.txt with lines "name arity endo|exo", and
// <name>.csv per relation (no header; a missing file is an empty relation).
// Query: "Q :- R(x), S(x,y), T(y)". Constants are quoted ('a' or "a") or
// start with a digit; every other identifier is a variable.

#include "shapcount/lineage.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace shapcount {

// CSV.

namespace detail {
inline std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false, was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += ch;
            }
        } else if (ch == '"' && cur.empty() && !was_quoted) {
            quoted = was_quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
            was_quoted = false;
        } else {
            if (was_quoted) throw InputError("line " + std::to_string(lineno) + ": text after closing quote");
            cur += ch;
        }
    }
    if (quoted) throw InputError("line " + std::to_string(lineno) + ": unterminated quote");
    out.push_back(std::move(cur));
    return out;
}

inline std::string csv_field(const std::string& v) {
    if (v.find_first_of(",\"\n\r") == std::string::npos && !v.empty()) return v;
    std::string out = "\"";
    for (char ch : v) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
}

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}
} // namespace detail

inline Schema parse_schema(std::string_view text) {
    Schema s;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string name, kind;
        long long arity = 0;
        if (!(ls >> name) || name.front() == '#') continue;
        if (!(ls >> arity >> kind)) throw InputError("schema line " + std::to_string(lineno) + ": expected 'name arity endo|exo'");
        if (arity < 1) throw InputError("schema line " + std::to_string(lineno) + ": arity must be at least 1");
        if (kind != "endo" && kind != "exo")
            throw InputError("schema line " + std::to_string(lineno) + ": kind must be endo or exo, got '" + kind + "'");
        std::string extra;
        if (ls >> extra) throw InputError("schema line " + std::to_string(lineno) + ": trailing token '" + extra + "'");
        try {
            s.add({name, static_cast<std::size_t>(arity), kind == "endo" ? RelationKind::Endogenous : RelationKind::Exogenous});
        } catch (const InputError& e) {
            throw InputError("schema line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (s.size() == 0) throw InputError("schema has no relations");
    return s;
}

inline std::string format_schema(const Schema& s) {
    std::string out;
    for (const auto& r : s.relations())
        out += r.name + " " + std::to_string(r.arity) + (r.kind == RelationKind::Endogenous ? " endo\n" : " exo\n");
    return out;
}

/// Rows of one relation; blank lines are skipped.
inline void parse_relation_csv(Database& d, std::size_t rel, std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    const std::string& name = d.schema().at(rel).name;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        try {
            d.add_row(rel, detail::split_csv_line(line, lineno));
        } catch (const InputError& e) {
            throw InputError(name + ".csv line " + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline std::string format_relation_csv(const Database& d, std::size_t rel) {
    std::string out;
    for (const auto& t : d.rows(rel)) {
        for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + detail::csv_field(t[i]);
        out += "\n";
    }
    return out;
}

inline Database load_database(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + " is not a directory");
    Database d(parse_schema(detail::read_file(dir / "schema.txt")));
    for (std::size_t r = 0; r < d.schema().size(); ++r) {
        const auto file = dir / (d.schema().at(r).name + ".csv");
        if (std::filesystem::exists(file)) parse_relation_csv(d, r, detail::read_file(file));
    }
    return d;
}

inline void save_database(const Database& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "schema.txt", format_schema(d.schema()));
    for (std::size_t r = 0; r < d.schema().size(); ++r)
        detail::write_file(dir / (d.schema().at(r).name + ".csv"), format_relation_csv(d, r));
}

// Queries.

namespace detail {
class QueryLexer {
public:
    explicit QueryLexer(std::string_view s) : s_(s) {}

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip();
        return i_ >= s_.size();
    }
    bool accept(std::string_view tok) {
        skip();
        if (s_.substr(i_, tok.size()) != tok) return false;
        i_ += tok.size();
        return true;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }
    std::string identifier() {
        skip();
        const std::size_t start = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (start == i_) fail("expected a name");
        if (std::isdigit(static_cast<unsigned char>(s_[start]))) fail("names cannot start with a digit");
        return std::string(s_.substr(start, i_ - start));
    }
    Term term() {
        skip();
        if (i_ >= s_.size()) fail("expected a term");
        const char ch = s_[i_];
        if (ch == '\'' || ch == '"') {
            const std::size_t close = s_.find(ch, i_ + 1);
            if (close == std::string_view::npos) fail("unterminated quoted constant");
            Term t = Term::value(std::string(s_.substr(i_ + 1, close - i_ - 1)));
            i_ = close + 1;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
            const std::size_t start = i_++;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.'))
                ++i_;
            return Term::value(std::string(s_.substr(start, i_ - start)));
        }
        return Term::var(identifier());
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("query, column " + std::to_string(i_ + 1) + ": " + what);
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

inline bool needs_quotes(const std::string& v) {
    if (v.empty() || !std::isdigit(static_cast<unsigned char>(v.front()))) return true;
    for (char ch : v)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '.') return true;
    return false;
}
} // namespace detail

inline Query parse_query(std::string_view text) {
    detail::QueryLexer lex(text);
    Query q;
    q.head = lex.identifier();
    lex.expect(":-");
    do {
        Atom a;
        a.relation = lex.identifier();
        lex.expect("(");
        do {
            a.args.push_back(lex.term());
        } while (lex.accept(","));
        lex.expect(")");
        q.atoms.push_back(std::move(a));
    } while (lex.accept(","));
    lex.accept(".");
    if (!lex.done()) lex.fail("unexpected trailing text");
    return q;
}

inline std::string format_query(const Query& q) {
    std::string out = q.head + " :- ";
    for (std::size_t i = 0; i < q.atoms.size(); ++i) {
        if (i) out += ", ";
        out += q.atoms[i].relation + "(";
        for (std::size_t j = 0; j < q.atoms[i].args.size(); ++j) {
            const Term& t = q.atoms[i].args[j];
            if (j) out += ",";
            out += t.is_variable || !detail::needs_quotes(t.text) ? t.text : "'" + t.text + "'";
        }
        out += ")";
    }
    return out;
}

// Sidecars. Variable ids are 1-based like the x<k> names of the formula
// text; row indices are 0-based positions in the relation's CSV.

inline std::string format_tuple_map(const Database& d, const std::vector<TupleRef>& map) {
    std::string out = "var_id,relation,row_index\n";
    for (std::size_t v = 0; v < map.size(); ++v)
        out += std::to_string(v + 1) + "," + detail::csv_field(d.schema().at(map[v].relation).name) + "," +
               std::to_string(map[v].row) + "\n";
    return out;
}

inline std::string format_tuple_shapley(const Database& d, const TupleShapley& s) {
    std::string out = "relation,row_index,numerator,denominator\n";
    for (std::size_t v = 0; v < s.values.size(); ++v) {
        const auto& ref = s.tuple_map[v];
        out += detail::csv_field(d.schema().at(ref.relation).name) + "," + std::to_string(ref.row) + "," +
               s.values[v].get_num().get_str() + "," + s.values[v].get_den().get_str() + "\n";
    }
    return out;
}

} // namespace shapcount

#endif // SHAPCOUNT_LINEAGE_IO_HPP
