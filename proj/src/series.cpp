#include "germforge/series.hpp"

#include "germforge/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace germforge {

Weighting make_weighting(int wxi, int wt) {
    if (wxi <= 0 || wt <= 0) throw ContractError("Weighting: weights must be positive");
    if (std::gcd(wxi, wt) != 1) throw ContractError("Weighting: weights must be coprime");
    return Weighting{wxi, wt};
}

Series2 Series2::constant(const Rat& c, TruncBound b) {
    Series2 s(b);
    s.add_term(0, 0, c);
    return s;
}

Series2 Series2::monomial(const Rat& c, int i, int j, TruncBound b) {
    Series2 s(b);
    s.add_term(i, j, c);
    return s;
}

void Series2::add_term(int i, int j, const Rat& c) {
    if (sgn(c) == 0) return;
    if (i < 0 || j < 0) throw ContractError("Series2: negative exponent");
    if (!bound_.keeps(i, j)) return;
    Exp e{i, j};
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Rat Series2::coeff(int i, int j) const {
    auto it = terms_.find(Exp{i, j});
    return it == terms_.end() ? Rat(0) : it->second;
}

int Series2::order() const {
    int best = bound_.degree + 1;
    for (const auto& [e, c] : terms_) best = std::min(best, e.deg());
    return best;
}

int Series2::worder(const Weighting& w) const {
    int best = bound_.degree + 1;
    for (const auto& [e, c] : terms_) best = std::min(best, e.wdeg(w));
    return best;
}

static void require_same_bound(const Series2& a, const Series2& b) {
    if (!(a.bound() == b.bound()))
        throw ContractError("Series2: mismatched truncation bounds");
}

Series2 Series2::operator+(const Series2& o) const {
    require_same_bound(*this, o);
    Series2 r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e.xi, e.t, c);
    return r;
}

Series2 Series2::operator-(const Series2& o) const { return *this + (-o); }

Series2 Series2::operator-() const {
    Series2 r(bound_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Series2 Series2::operator*(const Series2& o) const {
    require_same_bound(*this, o);
    Series2 r(bound_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            const int i = ea.xi + eb.xi, j = ea.t + eb.t;
            if (!bound_.keeps(i, j)) continue;
            r.add_term(i, j, ca * cb);
        }
    return r;
}

Series2 Series2::scaled(const Rat& c) const {
    Series2 r(bound_);
    if (sgn(c) == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

Series2 Series2::pow(int e) const {
    if (e < 0) throw ContractError("Series2: negative power");
    Series2 r = constant(Rat(1), bound_);
    Series2 b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Series2 Series2::diff(Var v) const {
    const int drop = (v == Var::Xi) ? bound_.w.xi : bound_.w.t;
    TruncBound nb = bound_;
    nb.degree = std::max(0, bound_.degree - drop);
    Series2 r(nb);
    for (const auto& [e, c] : terms_) {
        if (v == Var::Xi) {
            if (e.xi > 0) r.add_term(e.xi - 1, e.t, c * e.xi);
        } else {
            if (e.t > 0) r.add_term(e.xi, e.t - 1, c * e.t);
        }
    }
    return r;
}

Series2 Series2::substitute(const Series2& u, const Series2& v) const {
    require_same_bound(u, v);
    if (sgn(u.coeff(0, 0)) != 0 || sgn(v.coeff(0, 0)) != 0)
        throw ContractError("Series2::substitute: substituted series must vanish at the origin");
    const TruncBound nb = u.bound();
    // Power caches; u^i vanishes identically once i exceeds the bound.
    std::vector<Series2> up{Series2::constant(Rat(1), nb)};
    std::vector<Series2> vp{Series2::constant(Rat(1), nb)};
    int maxI = 0, maxJ = 0;
    for (const auto& [e, c] : terms_) {
        maxI = std::max(maxI, e.xi);
        maxJ = std::max(maxJ, e.t);
    }
    for (int i = 1; i <= maxI; ++i) up.push_back(up.back() * u);
    for (int j = 1; j <= maxJ; ++j) vp.push_back(vp.back() * v);
    Series2 r(nb);
    for (const auto& [e, c] : terms_) r = r + (up[e.xi] * vp[e.t]).scaled(c);
    return r;
}

Series2 Series2::weighted_jet(const Weighting& w, int d) const {
    if (d < 0) throw ContractError("Series2::weighted_jet: negative degree");
    Series2 r(bound_);
    for (const auto& [e, c] : terms_)
        if (e.wdeg(w) <= d) r.terms_.emplace(e, c);
    return r;
}

Series2 Series2::retruncate(TruncBound b) const {
    Series2 r(b);
    for (const auto& [e, c] : terms_)
        if (b.keeps(e.xi, e.t)) r.terms_.emplace(e, c);
    return r;
}

bool Series2::divisible_by_t(int k) const {
    for (const auto& [e, c] : terms_)
        if (e.t < k) return false;
    return true;
}

Series2 Series2::divide_by_t(int k) const {
    if (!divisible_by_t(k)) throw ContractError("Series2: not divisible by t^k");
    Series2 r(bound_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(Exp{e.xi, e.t - k}, c);
    return r;
}

bool Series2::divisible_by_xi(int k) const {
    for (const auto& [e, c] : terms_)
        if (e.xi < k) return false;
    return true;
}

Series2 Series2::reciprocal() const {
    const Rat c0 = coeff(0, 0);
    if (sgn(c0) == 0) throw ContractError("Series2: reciprocal of a non-unit");
    // 1/(c0 + w) = (1/c0) * sum (-w/c0)^k.
    Series2 w = *this;
    w.terms_.erase(Exp{0, 0});
    const Series2 m = w.scaled(Rat(-1) / c0);
    Series2 acc = constant(Rat(1), bound_);
    Series2 term = constant(Rat(1), bound_);
    const int minOrd = std::max(1, std::min(m.order(), bound_.degree + 1));
    for (int k = 1; k * minOrd <= bound_.degree; ++k) {
        term = term * m;
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc.scaled(Rat(1) / c0);
}

Poly1 Series2::at_t0(int trunc) const {
    Poly1 p(trunc);
    for (const auto& [e, c] : terms_)
        if (e.t == 0 && e.xi < trunc) p.set(e.xi, p.coeff(e.xi) + c);
    return p;
}

Poly1 Series2::at_xi0(int trunc) const {
    Poly1 p(trunc);
    for (const auto& [e, c] : terms_)
        if (e.xi == 0 && e.t < trunc) p.set(e.t, p.coeff(e.t) + c);
    return p;
}

Poly1 Series2::compose_path(const Poly1& xs, const Poly1& ts) const {
    if (sgn(xs.coeff(0)) != 0 || sgn(ts.coeff(0)) != 0)
        throw ContractError("Series2::compose_path: path must start at the origin");
    const int L = xs.trunc();
    int maxI = 0, maxJ = 0;
    for (const auto& [e, c] : terms_) {
        maxI = std::max(maxI, e.xi);
        maxJ = std::max(maxJ, e.t);
    }
    std::vector<Poly1> xp{Poly1::constant(Rat(1), L)};
    std::vector<Poly1> tp{Poly1::constant(Rat(1), L)};
    for (int i = 1; i <= maxI; ++i) xp.push_back(xp.back() * xs);
    for (int j = 1; j <= maxJ; ++j) tp.push_back(tp.back() * ts);
    Poly1 r(L);
    for (const auto& [e, c] : terms_) r = r + (xp[e.xi] * tp[e.t]).scaled(c);
    return r;
}

double Series2::eval(double x, double tv) const {
    double r = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = rat_d(c);
        for (int i = 0; i < e.xi; ++i) m *= x;
        for (int j = 0; j < e.t; ++j) m *= tv;
        r += m;
    }
    return r;
}

std::string Series2::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = abs(c);
        bool unit = (a == 1) && e.deg() > 0;
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                // keep a leading negative unit coefficient inside the
                // expression grammar: -1*t^4, not -t^4
                if (unit) unit = false;
            }
            first = false;
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        if (!unit) {
            os << rat_str(a);
            if (e.deg() > 0) os << "*";
        }
        bool needStar = false;
        if (e.t > 0) {
            os << "t";
            if (e.t > 1) os << "^" << e.t;
            needStar = true;
        }
        if (e.xi > 0) {
            if (needStar) os << "*";
            os << "xi";
            if (e.xi > 1) os << "^" << e.xi;
        }
    }
    return os.str();
}

Series2 from_poly_xi(const Poly1& p, TruncBound b) {
    Series2 s(b);
    for (int k = 0; k < p.trunc(); ++k) s.add_term(k, 0, p.coeff(k));
    return s;
}

NewtonSupport newton_support(const Series2& a) {
    if (a.is_zero()) throw ContractError("newton_support: zero series");
    NewtonSupport ns;
    for (const auto& [e, c] : a.terms()) ns.points.push_back(e);

    // Minimal t-exponent for each xi-exponent, then the lower-left hull
    // scanning xi ascending with strictly increasing slope dt/dxi.
    std::map<int, int> minT;
    for (const Exp& e : ns.points) {
        auto it = minT.find(e.xi);
        if (it == minT.end() || e.t < it->second) minT[e.xi] = e.t;
    }
    std::vector<Exp> stair;
    int best = std::numeric_limits<int>::max();
    for (const auto& [i, j] : minT) {
        if (j < best) {
            stair.push_back(Exp{i, j});
            best = j;
        }
    }
    std::vector<Exp> hull;
    for (const Exp& p : stair) {
        while (hull.size() >= 2) {
            const Exp& a1 = hull[hull.size() - 2];
            const Exp& b1 = hull[hull.size() - 1];
            // b1 survives only on a strictly convex turn; collinear
            // interior points are not hull vertices.
            const long cross = static_cast<long>(b1.xi - a1.xi) * (p.t - a1.t) -
                               static_cast<long>(b1.t - a1.t) * (p.xi - a1.xi);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    ns.hullVertices = hull;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        NewtonSegment s;
        s.from = hull[k];
        s.to = hull[k + 1];
        s.latticeLength = std::gcd(s.to.xi - s.from.xi, s.from.t - s.to.t);
        ns.segments.push_back(s);
    }
    return ns;
}

} // namespace germforge
