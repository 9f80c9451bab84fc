#ifndef SHAPCOUNT_TESTS_HELPERS_HPP
#define SHAPCOUNT_TESTS_HELPERS_HPP

#include "shapcount/boolfunc_io.hpp"
#include "shapcount/core.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace shapcount::testing {

inline BoolFunc formula(const std::string& text) { return parse_formula(text); }

inline KCountVector kc(std::initializer_list<long> xs) {
    KCountVector out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

inline ShapleyVector shap(std::initializer_list<const char*> xs) {
    ShapleyVector out;
    for (const char* x : xs) {
        Rational q(x);
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

// The small running example, x1 ^ (x2 v ~x3).
inline BoolFunc worked() { return formula("(and x1 (or x2 (not x3)))"); }

} // namespace shapcount::testing

#endif
