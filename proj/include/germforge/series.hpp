#pragma once

#include "germforge/poly1.hpp"
#include "germforge/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace germforge {

/// Quasihomogeneous weights: xi carries weight `xi`, t carries weight `t`.
/// The pair must be coprime. (1,1) is the plain total-degree filtration.
struct Weighting {
    int xi = 1;
    int t = 1;
    bool operator==(const Weighting&) const = default;
};

Weighting make_weighting(int wxi, int wt);

/// Truncation bound carried by every Series2 value. Terms xi^i t^j with
/// w.xi*i + w.t*j > degree are not represented.
struct TruncBound {
    Weighting w{1, 1};
    int degree = 16;
    bool operator==(const TruncBound&) const = default;
    bool total() const { return w.xi == 1 && w.t == 1; }
    bool keeps(int i, int j) const { return w.xi * i + w.t * j <= degree; }
};

inline TruncBound total_degree(int n) { return TruncBound{{1, 1}, n}; }

constexpr int kDefaultTrunc = 16;

/// Exponent pair of a monomial xi^i t^j.
struct Exp {
    int xi = 0;
    int t = 0;
    int deg() const { return xi + t; }
    int wdeg(const Weighting& w) const { return w.xi * xi + w.t * t; }
    bool operator==(const Exp&) const = default;
};

/// Graded-lexicographic term order: by total degree, then xi-heavy first.
struct ExpGradedLex {
    bool operator()(const Exp& a, const Exp& b) const {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.t < b.t;
    }
};

enum class Var { Xi, T };

/// Exact truncated bivariate power series in (xi, t) over Rat.
/// Immutable value type; operations require matching truncation bounds
/// and throw ContractError otherwise. No zero coefficients are stored.
class Series2 {
public:
    using TermMap = std::map<Exp, Rat, ExpGradedLex>;

    explicit Series2(TruncBound b = TruncBound{}) : bound_(b) {}

    static Series2 zero(TruncBound b) { return Series2(b); }
    static Series2 constant(const Rat& c, TruncBound b);
    static Series2 monomial(const Rat& c, int i, int j, TruncBound b);
    static Series2 xi(TruncBound b) { return monomial(Rat(1), 1, 0, b); }
    static Series2 t(TruncBound b) { return monomial(Rat(1), 0, 1, b); }

    const TruncBound& bound() const { return bound_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coeff(int i, int j) const;
    /// Lowest total degree among stored terms; bound.degree+1 when zero.
    int order() const;
    /// Lowest weighted degree under w; bound.degree+1 when zero.
    int worder(const Weighting& w) const;

    Series2 operator+(const Series2& o) const;
    Series2 operator-(const Series2& o) const;
    Series2 operator-() const;
    Series2 operator*(const Series2& o) const;
    Series2 scaled(const Rat& c) const;
    Series2 pow(int e) const;
    bool operator==(const Series2& o) const {
        return bound_ == o.bound_ && terms_ == o.terms_;
    }

    Series2 diff(Var v) const;
    /// a(u, v); u and v must vanish at the origin and share a common
    /// truncation bound, which the result inherits.
    Series2 substitute(const Series2& u, const Series2& v) const;
    /// Keeps exactly the terms of weighted degree <= d under w.
    Series2 weighted_jet(const Weighting& w, int d) const;
    Series2 jet(int d) const { return weighted_jet(Weighting{1, 1}, d); }
    /// Conversion between truncation bounds (drops out-of-bound terms).
    Series2 retruncate(TruncBound b) const;

    bool divisible_by_t(int k) const;
    Series2 divide_by_t(int k) const;
    bool divisible_by_xi(int k) const;

    /// Multiplicative inverse of a unit (nonzero constant term).
    Series2 reciprocal() const;

    /// Restriction to t = 0 resp. xi = 0 as a univariate series.
    Poly1 at_t0(int trunc) const;
    Poly1 at_xi0(int trunc) const;

    /// this(xs(s), ts(s)) for a parameterized path through the origin.
    Poly1 compose_path(const Poly1& xs, const Poly1& ts) const;

    double eval(double x, double tv) const;

    /// Canonical text rendering, graded-lex term order, e.g.
    /// "t^2*xi + t^4 - 1/2*t^5"; parseable by the expression grammar.
    std::string str() const;

    // Internal builder used by the modules; keeps the no-zero invariant.
    void add_term(int i, int j, const Rat& c);

private:
    TruncBound bound_;
    TermMap terms_;
};

Series2 from_poly_xi(const Poly1& p, TruncBound b);

/// Support points of a nonzero series and the lower-left Newton hull.
struct NewtonSegment {
    Exp from;          // higher t-exponent end
    Exp to;            // higher xi-exponent end
    int latticeLength; // gcd of the coordinate differences
};

struct NewtonSupport {
    std::vector<Exp> points;       // graded-lex order
    std::vector<Exp> hullVertices; // from highest-t to highest-xi vertex
    std::vector<NewtonSegment> segments;
};

/// Hull of the support; throws on the zero series.
NewtonSupport newton_support(const Series2& a);

} // namespace germforge
