#ifndef SHAPCOUNT_CIRCUIT_IO_HPP
#define SHAPCOUNT_CIRCUIT_IO_HPP

// c2d-style circuit files:
//
//   c comment
//   nnf V E n          V gate lines, E edges (inputs of A/O/N lines), n variables
//   L 3                literal x3; "L -3" is a variable gate plus a negation
//   A 2 0 1            and of lines 0 and 1; "A 0" is the constant 1
//   O 2 2 0 1          or with decision hint x2 (0 for none); "O 0 0" is the constant 0
//   N 4                negation of line 4 (extension)
//   T / F              constants (extension)
//
// Lines are gates in order, indexed from 0; the last line is the output.

#include "shapcount/circuit.hpp"

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace shapcount {

namespace detail {
[[noreturn]] inline void nnf_error(std::size_t line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}
} // namespace detail

inline Circuit parse_nnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    bool have_header = false;
    std::size_t declared_v = 0, declared_e = 0, n = 0, edges = 0;
    std::vector<Gate> gates;
    std::vector<std::size_t> gate_of_line;
    std::vector<std::size_t> line_no;
    std::vector<bool> referenced;

    auto read_ref = [&](std::istringstream& ls, std::size_t self) -> std::size_t {
        long long r = 0;
        if (!(ls >> r)) detail::nnf_error(lineno, "missing input index");
        if (r < 0) detail::nnf_error(lineno, "negative input index");
        const auto ref = static_cast<std::size_t>(r);
        if (ref >= self)
            detail::nnf_error(lineno, "reference to line " + std::to_string(ref) + " from line " + std::to_string(self) +
                                          " is cyclic or forward");
        referenced[ref] = true;
        return gate_of_line[ref];
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (!have_header) {
            if (tag != "nnf") detail::nnf_error(lineno, "expected header 'nnf V E n'");
            long long v = 0, e = 0, vars = 0;
            if (!(ls >> v >> e >> vars) || v < 1 || e < 0 || vars < 0)
                detail::nnf_error(lineno, "bad header, expected 'nnf V E n'");
            declared_v = static_cast<std::size_t>(v);
            declared_e = static_cast<std::size_t>(e);
            n = static_cast<std::size_t>(vars);
            have_header = true;
            continue;
        }
        const std::size_t self = gate_of_line.size();
        referenced.push_back(false);
        if (tag == "L") {
            long long lit = 0;
            if (!(ls >> lit) || lit == 0) detail::nnf_error(lineno, "expected a nonzero literal");
            const auto v = static_cast<std::size_t>(lit < 0 ? -lit : lit);
            if (v > n)
                detail::nnf_error(lineno, "variable " + std::to_string(v) + " out of range for " + std::to_string(n) +
                                              " variables");
            gates.push_back({GateKind::Var, v - 1, {}, 0});
            if (lit < 0) gates.push_back({GateKind::Not, 0, {gates.size() - 1}, 0});
        } else if (tag == "A" || tag == "O") {
            std::size_t decision = 0;
            if (tag == "O") {
                long long j = 0;
                if (!(ls >> j) || j < 0) detail::nnf_error(lineno, "expected decision hint after 'O'");
                decision = static_cast<std::size_t>(j);
                if (decision > n) detail::nnf_error(lineno, "decision variable out of range");
            }
            long long c = 0;
            if (!(ls >> c) || c < 0) detail::nnf_error(lineno, "expected input count");
            if (c == 1) detail::nnf_error(lineno, "unary and/or gates are not accepted");
            std::vector<std::size_t> inputs;
            for (long long k = 0; k < c; ++k) inputs.push_back(read_ref(ls, self));
            edges += static_cast<std::size_t>(c);
            if (c == 0)
                gates.push_back({tag == "A" ? GateKind::Const1 : GateKind::Const0, 0, {}, 0});
            else
                gates.push_back({tag == "A" ? GateKind::And : GateKind::Or, 0, std::move(inputs), decision});
        } else if (tag == "N") {
            gates.push_back({GateKind::Not, 0, {read_ref(ls, self)}, 0});
            ++edges;
        } else if (tag == "T" || tag == "F") {
            gates.push_back({tag == "T" ? GateKind::Const1 : GateKind::Const0, 0, {}, 0});
        } else {
            detail::nnf_error(lineno, "unknown gate tag '" + tag + "'");
        }
        std::string extra;
        if (ls >> extra) detail::nnf_error(lineno, "trailing token '" + extra + "'");
        gate_of_line.push_back(gates.size() - 1);
        line_no.push_back(lineno);
    }
    if (!have_header) throw InputError("missing 'nnf V E n' header");
    if (gate_of_line.size() != declared_v)
        throw InputError("header declares " + std::to_string(declared_v) + " gates, found " +
                         std::to_string(gate_of_line.size()));
    if (edges != declared_e)
        throw InputError("header declares " + std::to_string(declared_e) + " edges, found " + std::to_string(edges));
    for (std::size_t l = 0; l + 1 < referenced.size(); ++l)
        if (!referenced[l]) detail::nnf_error(line_no[l], "gate is dangling (no consumer and not the output)");
    return Circuit(std::move(gates), gates.size() - 1, n);
}

/// Inverse of parse_nnf. A negation whose variable gate has no other reader
/// is written as a negative literal.
inline std::string write_nnf(const Circuit& c) {
    std::vector<std::size_t> readers(c.size(), 0);
    for (const Gate& g : c.gates())
        for (std::size_t in : g.inputs) ++readers[in];
    auto folded = [&](std::size_t g) {
        const Gate& gate = c.gate(g);
        return gate.kind == GateKind::Not && c.gate(gate.inputs.front()).kind == GateKind::Var &&
               readers[gate.inputs.front()] == 1 && gate.inputs.front() + 1 == g;
    };
    std::vector<bool> skip(c.size(), false);
    for (std::size_t g = 0; g < c.size(); ++g)
        if (folded(g)) skip[g - 1] = true;

    std::vector<std::size_t> line(c.size());
    std::vector<std::string> body;
    std::size_t edges = 0;
    for (std::size_t g = 0; g < c.size(); ++g) {
        if (skip[g]) continue;
        const Gate& gate = c.gate(g);
        std::string s;
        switch (gate.kind) {
        case GateKind::Const0: s = "F"; break;
        case GateKind::Const1: s = "T"; break;
        case GateKind::Var: s = "L " + std::to_string(gate.var + 1); break;
        case GateKind::Not:
            if (folded(g))
                s = "L -" + std::to_string(c.gate(gate.inputs.front()).var + 1);
            else {
                s = "N " + std::to_string(line[gate.inputs.front()]);
                ++edges;
            }
            break;
        case GateKind::And:
        case GateKind::Or:
            s = gate.kind == GateKind::And ? "A " : "O " + std::to_string(gate.decision) + " ";
            s += std::to_string(gate.inputs.size());
            for (std::size_t in : gate.inputs) s += " " + std::to_string(line[in]);
            edges += gate.inputs.size();
            break;
        }
        line[g] = body.size();
        body.push_back(std::move(s));
    }
    std::string out = "nnf " + std::to_string(body.size()) + " " + std::to_string(edges) + " " +
                      std::to_string(c.var_count()) + "\n";
    for (const auto& s : body) out += s + "\n";
    return out;
}

} // namespace shapcount

#endif // SHAPCOUNT_CIRCUIT_IO_HPP
