#ifndef SHAPCOUNT_CORE_HPP
#define SHAPCOUNT_CORE_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace shapcount {

using BigInt = mpz_class;
using Rational = mpq_class;
using VarId = std::size_t;

/// k-model counts #_0 F ... #_n F, index k = number of models of size k.
using KCountVector = std::vector<BigInt>;
/// Exact Shapley values, index i = Shap(F, X_i).
using ShapleyVector = std::vector<Rational>;

// Error hierarchy. The CLI maps each family onto an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input, arity mismatch, precondition violated by caller data.
class InputError : public Error {
public:
    using Error::Error;
};

/// Refusal to compute: an enumeration bound or the hard branch of a dichotomy.
class RefusalError : public Error {
public:
    using Error::Error;
};

/// An oracle or an internal check produced an impossible value.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

inline BigInt factorial(std::size_t n) {
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline BigInt pow_int(const BigInt& base, std::size_t exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

/// Reduced p/q with q > 0; integers still carry "/1".
inline std::string format_rational(Rational q) {
    q.canonicalize();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string format_csv(const KCountVector& counts) {
    std::string out;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (k) out += ',';
        out += counts[k].get_str();
    }
    return out;
}

inline std::string format_csv(const ShapleyVector& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_rational(values[i]);
    }
    return out;
}

inline BigInt sum(const KCountVector& counts) {
    BigInt s = 0;
    for (const auto& c : counts) s += c;
    return s;
}

} // namespace shapcount

#endif // SHAPCOUNT_CORE_HPP
