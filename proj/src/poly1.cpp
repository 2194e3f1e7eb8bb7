#include "germforge/poly1.hpp"

#include "germforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace germforge {

Poly1 Poly1::constant(const Rat& v, int trunc) {
    Poly1 p(trunc);
    if (trunc > 0) p.c_[0] = v;
    return p;
}

Poly1 Poly1::identity(int trunc) { return monomial(Rat(1), 1, trunc); }

Poly1 Poly1::monomial(const Rat& v, int k, int trunc) {
    Poly1 p(trunc);
    if (k < trunc) p.c_[static_cast<size_t>(k)] = v;
    return p;
}

const Rat& Poly1::coeff(int k) const {
    static const Rat kZero(0);
    if (k < 0 || k >= trunc_) return kZero;
    return c_[static_cast<size_t>(k)];
}

void Poly1::set(int k, const Rat& v) {
    if (k < 0 || k >= trunc_) return;
    c_[static_cast<size_t>(k)] = v;
}

bool Poly1::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& v) { return sgn(v) == 0; });
}

int Poly1::order() const {
    for (int k = 0; k < trunc_; ++k)
        if (sgn(c_[static_cast<size_t>(k)]) != 0) return k;
    return trunc_;
}

Poly1 Poly1::operator+(const Poly1& o) const {
    if (trunc_ != o.trunc_) throw ContractError("Poly1: mismatched truncation");
    Poly1 r(trunc_);
    for (int k = 0; k < trunc_; ++k) r.c_[k] = c_[k] + o.c_[k];
    return r;
}

Poly1 Poly1::operator-(const Poly1& o) const { return *this + (-o); }

Poly1 Poly1::operator-() const {
    Poly1 r(trunc_);
    for (int k = 0; k < trunc_; ++k) r.c_[k] = -c_[k];
    return r;
}

Poly1 Poly1::operator*(const Poly1& o) const {
    if (trunc_ != o.trunc_) throw ContractError("Poly1: mismatched truncation");
    Poly1 r(trunc_);
    for (int i = 0; i < trunc_; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (int j = 0; i + j < trunc_; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            r.c_[i + j] += c_[i] * o.c_[j];
        }
    }
    return r;
}

Poly1 Poly1::scaled(const Rat& v) const {
    Poly1 r(trunc_);
    for (int k = 0; k < trunc_; ++k) r.c_[k] = c_[k] * v;
    return r;
}

Poly1 Poly1::derivative() const {
    Poly1 r(trunc_);
    for (int k = 1; k < trunc_; ++k) r.c_[k - 1] = c_[k] * k;
    return r;
}

Poly1 Poly1::pow(int e) const {
    Poly1 r = constant(Rat(1), trunc_);
    Poly1 b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly1 Poly1::compose(const Poly1& o) const {
    if (trunc_ != o.trunc_) throw ContractError("Poly1: mismatched truncation");
    if (sgn(o.coeff(0)) != 0) throw ContractError("Poly1::compose: inner series must vanish at 0");
    // Horner from the top coefficient down.
    Poly1 r(trunc_);
    for (int k = trunc_ - 1; k >= 0; --k) {
        r = r * o;
        r.c_[0] += c_[k];
    }
    return r;
}

Poly1 Poly1::inverse_composition() const {
    if (order() != 1) throw ContractError("Poly1: compositional inverse needs order exactly 1");
    // Solve this(v(s)) = s coefficient by coefficient.
    Poly1 v(trunc_);
    const Rat c1 = coeff(1);
    v.set(1, Rat(1) / c1);
    for (int m = 2; m < trunc_; ++m) {
        // Coefficient of s^m in this(v) with v_m unknown is c1*v_m + known.
        Poly1 partial = compose(v);
        Rat known = partial.coeff(m);
        v.set(m, -known / c1);
    }
    return v;
}

Poly1 Poly1::reciprocal() const {
    if (sgn(coeff(0)) == 0) throw ContractError("Poly1: reciprocal of a non-unit");
    Poly1 r(trunc_);
    const Rat c0 = coeff(0);
    r.set(0, Rat(1) / c0);
    for (int m = 1; m < trunc_; ++m) {
        Rat acc(0);
        for (int k = 1; k <= m; ++k) acc += coeff(k) * r.coeff(m - k);
        r.set(m, -acc / c0);
    }
    return r;
}

Poly1 Poly1::root_of_unit_series(int q) const {
    if (q <= 0) throw ContractError("Poly1: root index must be positive");
    if (coeff(0) != Rat(1)) throw ContractError("Poly1: q-th root needs constant term 1");
    // v^q = this, v = 1 + ..., solved order by order: q*v_m = u_m - (lower terms).
    Poly1 v = constant(Rat(1), trunc_);
    for (int m = 1; m < trunc_; ++m) {
        Poly1 vq = v.pow(q);
        Rat diff = coeff(m) - vq.coeff(m);
        v.set(m, diff / Rat(q));
    }
    return v;
}

double Poly1::eval(double s) const {
    double r = 0.0;
    for (int k = trunc_ - 1; k >= 0; --k) r = r * s + rat_d(c_[k]);
    return r;
}

std::string Poly1::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < trunc_; ++k) {
        const Rat& v = c_[k];
        if (sgn(v) == 0) continue;
        Rat a = abs(v);
        if (first) {
            if (sgn(v) < 0) os << "-";
            first = false;
        } else {
            os << (sgn(v) < 0 ? " - " : " + ");
        }
        const bool unit = (a == 1);
        if (k == 0) {
            os << rat_str(a);
        } else {
            if (!unit) os << rat_str(a) << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace germforge
