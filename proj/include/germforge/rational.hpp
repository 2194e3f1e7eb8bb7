#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace germforge {

/// Exact rational scalar. Always kept in lowest terms with positive
/// denominator (mpq canonical form); zero is 0/1.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" (q > 0 after canonicalization).
inline Rat rat_parse(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("rat_parse: bad rational literal '" + text + "'");
    q.canonicalize();
    if (q.get_den() <= 0) throw std::invalid_argument("rat_parse: nonpositive denominator");
    return q;
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline double rat_d(const Rat& q) { return q.get_d(); }

inline int rat_sign(const Rat& q) { return sgn(q); }

/// Exact square root when the argument is a square of a rational.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(q.get_num().get_mpz_t()) ||
        !mpz_perfect_square_p(q.get_den().get_mpz_t()))
        return std::nullopt;
    Int n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// Exact q-th root when it exists in Q. Even q requires v >= 0 and
/// returns the nonnegative root; odd q follows the sign of v.
inline std::optional<Rat> rat_root_exact(const Rat& v, int q) {
    if (q <= 0) return std::nullopt;
    if (q == 1) return v;
    if (sgn(v) == 0) return Rat(0);
    if (q % 2 == 0 && sgn(v) < 0) return std::nullopt;
    Int num = abs(v.get_num());
    Int den = v.get_den();
    Int rn, rd;
    const bool okN = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(q)) != 0;
    const bool okD = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(q)) != 0;
    if (!okN || !okD) return std::nullopt;
    Rat r(rn, rd);
    r.canonicalize();
    if (sgn(v) < 0) r = -r;
    return r;
}

inline Rat rat_pow(const Rat& q, unsigned e) {
    Rat r = 1;
    Rat base = q;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

} // namespace germforge
