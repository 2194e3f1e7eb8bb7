#pragma once

#include "germforge/rational.hpp"

#include <string>
#include <vector>

namespace germforge {

/// Univariate truncated power series over exact rationals.
/// Coefficients are stored densely; everything at exponent >= trunc()
/// is discarded. Used for support curves, envelope branch
/// parameterizations and parameter renormalizations.
class Poly1 {
public:
    Poly1() : trunc_(0) {}
    explicit Poly1(int trunc) : trunc_(trunc), c_(static_cast<size_t>(trunc), Rat(0)) {}

    static Poly1 zero(int trunc) { return Poly1(trunc); }
    static Poly1 constant(const Rat& v, int trunc);
    static Poly1 identity(int trunc);          // s
    static Poly1 monomial(const Rat& v, int k, int trunc);

    int trunc() const { return trunc_; }
    const Rat& coeff(int k) const;
    void set(int k, const Rat& v);

    bool is_zero() const;
    /// Order of vanishing at 0; trunc() when the series is zero.
    int order() const;

    Poly1 operator+(const Poly1& o) const;
    Poly1 operator-(const Poly1& o) const;
    Poly1 operator-() const;
    Poly1 operator*(const Poly1& o) const;
    Poly1 scaled(const Rat& v) const;
    Poly1 derivative() const;
    Poly1 pow(int e) const;

    bool operator==(const Poly1& o) const { return trunc_ == o.trunc_ && c_ == o.c_; }

    /// this(o(s)); o must vanish at 0.
    Poly1 compose(const Poly1& o) const;
    /// Compositional inverse; requires order exactly 1.
    Poly1 inverse_composition() const;
    /// Multiplicative inverse; requires a nonzero constant term.
    Poly1 reciprocal() const;
    /// q-th root of a series with constant term 1.
    Poly1 root_of_unit_series(int q) const;

    double eval(double s) const;
    std::string str(const std::string& var = "s") const;

private:
    int trunc_;
    std::vector<Rat> c_;
};

} // namespace germforge
