#include "germforge/classify.hpp"

#include "germforge/errors.hpp"
#include "germforge/puiseux.hpp"
#include "germforge/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace germforge {

int SingularityClass::codim() const {
    switch (tag) {
    case ClassTag::I: return 0;
    case ClassTag::II: return 1;
    case ClassTag::S1: return n + 1;
    case ClassTag::T: return 2 * n + 1;
    case ClassTag::S2_2: return 3;
    case ClassTag::S2_3: return 4;
    case ClassTag::S2_4: return 5;
    default: return -1;
    }
}

int SingularityClass::tangCodim() const {
    switch (tag) {
    case ClassTag::I: return 0;
    case ClassTag::II: return 0;
    case ClassTag::S1: return n;
    case ClassTag::T: return n;
    case ClassTag::S2_2: return 2;
    case ClassTag::S2_3: return 3;
    case ClassTag::S2_4: return 4;
    default: return -1;
    }
}

bool SingularityClass::simple() const {
    switch (tag) {
    case ClassTag::I:
    case ClassTag::II:
    case ClassTag::S1:
    case ClassTag::T:
    case ClassTag::S2_2:
    case ClassTag::S2_3:
    case ClassTag::S2_4: return true;
    default: return false;
    }
}

std::string SingularityClass::name() const {
    switch (tag) {
    case ClassTag::I: return "I";
    case ClassTag::II: return "II";
    case ClassTag::S1: return "S1," + std::to_string(n);
    case ClassTag::T: return "T" + std::to_string(n);
    case ClassTag::S2_2: return "S2,2";
    case ClassTag::S2_3: return sign >= 0 ? "S2,3+" : "S2,3-";
    case ClassTag::S2_4: return "S2,4";
    case ClassTag::S_GE3: return "S" + std::to_string(n);
    case ClassTag::S1_INF: return "S1,inf";
    case ClassTag::T_INF: return "Tinf";
    case ClassTag::S_INF: return "Sinf";
    case ClassTag::U: return "U";
    }
    return "?";
}

std::optional<SingularityClass> SingularityClass::parse(const std::string& text) {
    if (text == "I") return make(ClassTag::I);
    if (text == "II") return make(ClassTag::II);
    if (text == "U") return make(ClassTag::U);
    if (text == "S1,inf") return make(ClassTag::S1_INF);
    if (text == "Tinf") return make(ClassTag::T_INF);
    if (text == "Sinf") return make(ClassTag::S_INF);
    if (text == "S2,2") return make(ClassTag::S2_2);
    if (text == "S2,3+") return make(ClassTag::S2_3, 0, 1);
    if (text == "S2,3-") return make(ClassTag::S2_3, 0, -1);
    if (text == "S2,4") return make(ClassTag::S2_4);
    auto tail_int = [](const std::string& s) -> std::optional<int> {
        if (s.empty()) return std::nullopt;
        for (char c : s)
            if (!isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        return std::stoi(s);
    };
    if (text.rfind("S1,", 0) == 0) {
        if (auto n = tail_int(text.substr(3)); n && *n >= 1) return make(ClassTag::S1, *n);
        return std::nullopt;
    }
    if (text.size() >= 2 && text[0] == 'T') {
        if (auto n = tail_int(text.substr(1)); n && *n >= 1) return make(ClassTag::T, *n);
        return std::nullopt;
    }
    if (text.size() >= 2 && text[0] == 'S') {
        if (auto n = tail_int(text.substr(1)); n && *n >= 3) return make(ClassTag::S_GE3, *n);
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Reachability in the adjacency diagrams, closure computed on the fly.
bool reach(const SingularityClass& a, const SingularityClass& b) {
    if (a == b) return true;
    auto to = [&](ClassTag t, int n = 0, int sign = 0) {
        return reach(SingularityClass::make(t, n, sign), b);
    };
    switch (a.tag) {
    case ClassTag::I: return false;
    case ClassTag::II: return to(ClassTag::I);
    case ClassTag::T: return a.n == 1 ? to(ClassTag::II) : to(ClassTag::T, a.n - 1);
    case ClassTag::S1: return a.n == 1 ? to(ClassTag::II) : to(ClassTag::S1, a.n - 1);
    case ClassTag::S2_2: return to(ClassTag::S1, 1);
    case ClassTag::S2_3: return to(ClassTag::S2_2);
    case ClassTag::S2_4: return to(ClassTag::S2_3, 0, 1) || to(ClassTag::S2_3, 0, -1);
    case ClassTag::S_GE3:
        if (b.tag == ClassTag::S1) return true; // class-level arrow, every index
        if (a.n > 3 && to(ClassTag::S_GE3, a.n - 1)) return true;
        return to(ClassTag::S2_4) || to(ClassTag::S1, 1);
    case ClassTag::S_INF:
        if (b.tag == ClassTag::S_GE3) return true;
        return to(ClassTag::S_GE3, 3);
    case ClassTag::S1_INF:
        if (b.tag == ClassTag::S1) return true;
        return to(ClassTag::S1, 1);
    case ClassTag::T_INF:
        if (b.tag == ClassTag::T) return true;
        return to(ClassTag::T, 1);
    case ClassTag::U:
        return to(ClassTag::S_INF) || to(ClassTag::S1_INF) || to(ClassTag::T_INF);
    }
    return false;
}

} // namespace

bool adjacency(const SingularityClass& from, const SingularityClass& to) { return reach(from, to); }

std::vector<SingularityClass> adjacency_closure(const SingularityClass& from, int maxIndex) {
    std::vector<SingularityClass> all;
    all.push_back(SingularityClass::make(ClassTag::I));
    all.push_back(SingularityClass::make(ClassTag::II));
    for (int n = 1; n <= maxIndex; ++n) {
        all.push_back(SingularityClass::make(ClassTag::T, n));
        all.push_back(SingularityClass::make(ClassTag::S1, n));
    }
    all.push_back(SingularityClass::make(ClassTag::S2_2));
    all.push_back(SingularityClass::make(ClassTag::S2_3, 0, 1));
    all.push_back(SingularityClass::make(ClassTag::S2_3, 0, -1));
    all.push_back(SingularityClass::make(ClassTag::S2_4));
    for (int n = 3; n <= std::max(3, maxIndex); ++n)
        all.push_back(SingularityClass::make(ClassTag::S_GE3, n));
    all.push_back(SingularityClass::make(ClassTag::S1_INF));
    all.push_back(SingularityClass::make(ClassTag::T_INF));
    all.push_back(SingularityClass::make(ClassTag::S_INF));
    all.push_back(SingularityClass::make(ClassTag::U));
    std::vector<SingularityClass> out;
    for (const auto& c : all)
        if (!(c == from) && adjacency(from, c)) out.push_back(c);
    return out;
}

Series2 normal_form_phi(const SingularityClass& cls, TruncBound b) {
    const Series2 t = Series2::t(b), xi = Series2::xi(b);
    const Series2 t2 = t * t;
    switch (cls.tag) {
    case ClassTag::I: return t2;
    case ClassTag::II: return t2 * xi;
    case ClassTag::S1:
        return t2 * (t + xi) + t2 * t2 + Series2::monomial(Rat(1), 0, 2 * cls.n + 3, b);
    case ClassTag::T: return t2 * t + t2 * (t + xi).pow(cls.n + 1);
    case ClassTag::S2_2: return t2 * (t + xi) + Series2::monomial(Rat(1), 0, 5, b) + Series2::monomial(Rat(1), 0, 6, b);
    case ClassTag::S2_3:
        return t2 * (t + xi) + Series2::monomial(Rat(1), 0, 5, b) +
               Series2::monomial(Rat(cls.sign >= 0 ? 1 : -1), 0, 9, b);
    case ClassTag::S2_4: return t2 * (t + xi) + Series2::monomial(Rat(1), 0, 5, b);
    default: throw ContractError("normal_form_phi: no finite normal form for " + cls.name());
    }
}

std::string normal_form_text(const SingularityClass& cls) {
    switch (cls.tag) {
    case ClassTag::I: return "xi + t ; t^2";
    case ClassTag::II: return "xi + t ; t^2*xi";
    case ClassTag::S1:
        return "xi + t ; t^2*(t+xi) + t^4 + t^" + std::to_string(2 * cls.n + 3);
    case ClassTag::T:
        return "xi + t ; t^3 + t^2*(t+xi)^" + std::to_string(cls.n + 1);
    case ClassTag::S2_2: return "xi + t ; t^2*(t+xi) + t^5 + t^6";
    case ClassTag::S2_3:
        return cls.sign >= 0 ? "xi + t ; t^2*(t+xi) + t^5 + t^9"
                             : "xi + t ; t^2*(t+xi) + t^5 - t^9";
    case ClassTag::S2_4: return "xi + t ; t^2*(t+xi) + t^5";
    default: throw ContractError("normal_form_text: no finite normal form for " + cls.name());
    }
}

namespace {

// Shear to the reduced presentation (xi, phi(xi - t, t)) and rescale so
// the quasihomogeneous principal part for weights (n+1, 1) is exactly
// t^(n+3) + t^2 xi. Requires an S-family germ of criminant index n.
MapGerm s_reduced_presentation(const PrenormalForm& pf, int n) {
    const TruncBound B = pf.phi.bound();
    const Series2 xiS = Series2::xi(B), tS = Series2::t(B);
    Series2 q = pf.phi.substitute(xiS - tS, tS);
    // pure t-powers below the principal degree must be gone
    for (int m = 3; m <= n + 2; ++m)
        if (sgn(q.coeff(0, m)) != 0)
            throw InternalConsistencyError(
                "s_reduced_presentation: stray t^" + std::to_string(m) + " term for index " +
                std::to_string(n));
    const Rat alpha = q.coeff(1, 2);
    const Rat D = q.coeff(0, n + 3);
    if (sgn(alpha) == 0 || sgn(D) == 0)
        throw InternalConsistencyError("s_reduced_presentation: degenerate principal part");
    // right (xi, t) -> (mu xi, t), left y -> y / D makes both principal
    // coefficients 1
    const Rat mu = D / alpha;
    q = q.substitute(xiS.scaled(mu), tS).scaled(Rat(1) / D);
    return MapGerm(xiS, q);
}

std::optional<int> envelope_s1_subindex(const PrenormalForm& pf) {
    const TruncBound B = pf.phi.bound();
    const int L = B.degree + 1;
    const CriminantEquation ce = criminant_equation(pf);
    const auto tau = solve_smooth_branch(ce.h, L);
    if (!tau) throw InternalConsistencyError("s1_subindex: criminant branch not smooth");
    const Poly1 X = Poly1::identity(L) + *tau;
    const Poly1 Y = pf.phi.compose_path(Poly1::identity(L), *tau);
    if (X.order() != 2)
        throw InternalConsistencyError("s1_subindex: envelope branch multiplicity is not 2");
    // normalize the parameter so X = c sigma^2 and look for the first
    // odd exponent of Y
    Poly1 unit(L);
    const Rat lead = X.coeff(2);
    for (int k = 0; k + 2 < L; ++k) unit.set(k, X.coeff(k + 2) / lead);
    const Poly1 sigma = Poly1::identity(L) * unit.root_of_unit_series(2);
    const Poly1 Yn = Y.compose(sigma.inverse_composition());
    for (int k = 3; k < L; k += 2)
        if (sgn(Yn.coeff(k)) != 0) return (k - 3) / 2;
    return std::nullopt; // no odd exponent through the truncation
}

std::optional<int> reduction_s1_subindex(const PrenormalForm& pf, std::vector<Rat>* bOut) {
    const TruncBound B = pf.phi.bound();
    const MapGerm red = s_reduced_presentation(pf, 1);
    const Weighting w = make_weighting(2, 1);
    const Series2 principal =
        Series2::monomial(Rat(1), 0, 4, B) + Series2::monomial(Rat(1), 1, 2, B);
    std::vector<int> comp;
    for (int k = 5; k <= B.degree; k += 2) comp.push_back(k);
    const auto res = graded_reduce(red, principal, w, comp, B.degree - 4);
    std::optional<int> first;
    if (bOut) bOut->clear();
    for (const auto& [texp, c] : res.residuals) {
        if (bOut) bOut->push_back(c);
        if (!first && sgn(c) != 0) first = (texp - 3) / 2;
    }
    return first;
}

} // namespace

std::optional<int> s1_subindex(const PrenormalForm& pf, std::vector<Rat>* bOut) {
    const auto viaEnvelope = envelope_s1_subindex(pf);
    const auto viaReduction = reduction_s1_subindex(pf, bOut);
    if (viaEnvelope != viaReduction) {
        std::ostringstream os;
        os << "s1_subindex: envelope route gives "
           << (viaEnvelope ? std::to_string(*viaEnvelope) : "inf") << ", reduction route gives "
           << (viaReduction ? std::to_string(*viaReduction) : "inf");
        throw InternalConsistencyError(os.str());
    }
    return viaEnvelope;
}

SingularityClass s2_suborbit(const PrenormalForm& pf) {
    const TruncBound B = pf.phi.bound();
    if (B.degree < 9)
        throw InconclusiveError(B.degree, "s2_suborbit: needs weighted jets through 9");
    const MapGerm red = s_reduced_presentation(pf, 2);
    const Weighting w = make_weighting(3, 1);
    const Series2 principal =
        Series2::monomial(Rat(1), 0, 5, B) + Series2::monomial(Rat(1), 1, 2, B);
    const auto res = graded_reduce(red, principal, w, {6, 9}, 4);
    Rat beta6(0), beta9(0);
    for (const auto& [texp, c] : res.residuals) {
        if (texp == 6) beta6 = c;
        if (texp == 9) beta9 = c;
    }
    if (sgn(beta6) != 0) return SingularityClass::make(ClassTag::S2_2);
    if (res.completedExcess < 4)
        throw InternalConsistencyError("s2_suborbit: reduction did not reach weighted degree 9");
    if (sgn(beta9) != 0) return SingularityClass::make(ClassTag::S2_3, 0, sgn(beta9));
    return SingularityClass::make(ClassTag::S2_4); // final by 9-determinacy
}

std::optional<CrossRatioResult> cross_ratio(const PrenormalForm& pf) {
    const CriminantEquation ce = criminant_equation(pf);
    if (ce.h.is_zero()) return std::nullopt;
    // quadratic lowest part A xi^2 + B xi t + C t^2 with C != 0
    // (cofactor t-order 3 <=> C != 0)
    const int ord = ce.h.order();
    if (ord != 2) return std::nullopt;
    const Rat A = ce.h.coeff(2, 0), Bq = ce.h.coeff(1, 1), C = ce.h.coeff(0, 2);
    if (sgn(C) == 0) return std::nullopt;
    // slopes of the two non-support criminant directions: C m^2 + B m + A = 0
    const Rat disc = Bq * Bq - Rat(4) * A * C;
    CrossRatioResult out;
    std::complex<double> m1, m2;
    if (const auto sq = rat_sqrt_exact(disc)) {
        out.exact = true;
        const Rat r1 = (-Bq + *sq) / (Rat(2) * C);
        const Rat r2 = (-Bq - *sq) / (Rat(2) * C);
        // descending order of the two real slopes
        const Rat hi = std::max(r1, r2), lo = std::min(r1, r2);
        m1 = std::complex<double>(rat_d(hi), 0.0);
        m2 = std::complex<double>(rat_d(lo), 0.0);
        out.degenerate = (r1 == r2);
        if (sgn(hi) == 0 || sgn(lo) == 0 || hi == Rat(-1) || lo == Rat(-1))
            out.degenerate = true; // collision with the support or vertical direction
    } else {
        const double d = rat_d(disc);
        const double b2 = rat_d(Bq), c2 = rat_d(C);
        if (d >= 0) {
            const double s = std::sqrt(d);
            const double r1 = (-b2 + s) / (2 * c2), r2 = (-b2 - s) / (2 * c2);
            m1 = std::max(r1, r2);
            m2 = std::min(r1, r2);
        } else {
            const double s = std::sqrt(-d);
            m1 = std::complex<double>(-b2 / (2 * c2), std::abs(s / (2 * c2)));
            m2 = std::conj(m1);
        }
    }
    // z1 = vertical (-1 in the prenormal chart), z2 = support (0)
    const std::complex<double> z1(-1.0, 0.0), z2(0.0, 0.0);
    const std::complex<double> z3 = m1, z4 = m2;
    std::complex<double> cr = ((z1 - z3) * (z2 - z4)) / ((z1 - z4) * (z2 - z3));
    if (std::abs(cr) < 1.0 - 1e-12) cr = 1.0 / cr;
    if (std::abs(std::abs(cr) - 1.0) <= 1e-9 && cr.imag() < 0.0) cr = std::conj(cr);
    out.value = cr;
    return out;
}

ClassificationReport classify_prenormal(const PrenormalForm& pf, int maxJet) {
    const TruncBound B = pf.phi.bound();
    if (maxJet > B.degree)
        throw ContractError("classify: maxJet exceeds the truncation bound");
    ClassificationReport rep{SingularityClass::make(ClassTag::I),
                             pf,
                             pf.alpha,
                             pf.k,
                             {},
                             std::nullopt,
                             std::nullopt,
                             {},
                             maxJet};
    const Rat alpha = pf.alpha;
    const Rat k0 = pf.k.size() > 0 ? pf.k[0] : Rat(0);
    const Rat k1 = pf.k.size() > 1 ? pf.k[1] : Rat(0);

    if (sgn(k0) != 0) {
        rep.cls = SingularityClass::make(ClassTag::I);
    } else if (sgn(k1) != 0 && k1 != alpha) {
        rep.cls = SingularityClass::make(ClassTag::II);
    } else if (sgn(alpha) != 0 && sgn(k1) == 0) {
        // T family: first surviving k coefficient decides the index
        int idx = 0;
        for (size_t i = 2; i < pf.k.size() && static_cast<int>(i) + 2 <= maxJet; ++i)
            if (sgn(pf.k[i]) != 0) {
                idx = static_cast<int>(i);
                break;
            }
        rep.cls = idx ? SingularityClass::make(ClassTag::T, idx - 1)
                      : SingularityClass::make(ClassTag::T_INF);
    } else if (sgn(alpha) == 0 && sgn(k1) == 0) {
        rep.cls = SingularityClass::make(ClassTag::U);
        rep.crossRatio = cross_ratio(pf);
        if (rep.crossRatio && !rep.crossRatio->degenerate) {
            const std::complex<double> r = std::sqrt(rep.crossRatio->value);
            rep.modulus = (0.5 * (r + 1.0 / r)).real();
        }
    } else {
        // S family: index from the criminant branch against the
        // vertical direction
        const CriminantEquation ce = criminant_equation(pf);
        const int L = B.degree + 1;
        const auto tau = solve_smooth_branch(ce.h, L);
        if (!tau) throw InternalConsistencyError("classify: S-family cofactor not smooth");
        const Poly1 delta = *tau + Poly1::identity(L);
        const int ord = delta.order();
        if (ord >= L || ord - 1 > maxJet) {
            rep.cls = SingularityClass::make(ClassTag::S_INF);
        } else {
            const int n = ord - 1;
            if (n == 1) {
                const auto sub = s1_subindex(pf, &rep.b);
                // the deciding coefficient of subindex m sits at t^(2m+3)
                if (sub && 2 * *sub + 3 <= maxJet)
                    rep.cls = SingularityClass::make(ClassTag::S1, *sub);
                else
                    rep.cls = SingularityClass::make(ClassTag::S1_INF);
            } else if (n == 2) {
                if (maxJet < 9)
                    throw InconclusiveError(maxJet,
                                            "classify: second-index suborbits need jet order 9");
                rep.cls = s2_suborbit(pf);
            } else {
                rep.cls = SingularityClass::make(ClassTag::S_GE3, n);
            }
        }
    }
    rep.envelope = envelope_branches(pf, B.degree);
    return rep;
}

ClassificationReport classify(const TangentialFamily& tf, int maxJet) {
    return classify_prenormal(to_prenormal(tf), maxJet);
}

} // namespace germforge
