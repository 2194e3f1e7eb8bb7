#include "germforge/germ.hpp"

#include "germforge/errors.hpp"

#include <algorithm>

namespace germforge {

MapGerm::MapGerm(Series2 px, Series2 qy) : p(std::move(px)), q(std::move(qy)) {
    if (!(p.bound() == q.bound()))
        throw ContractError("MapGerm: components with mismatched truncation bounds");
    if (sgn(p.coeff(0, 0)) != 0 || sgn(q.coeff(0, 0)) != 0)
        throw ContractError("MapGerm: components must vanish at the origin");
}

Series2 jacobian_det(const MapGerm& f) {
    return f.p.diff(Var::Xi) * f.q.diff(Var::T) - f.p.diff(Var::T) * f.q.diff(Var::Xi);
}

namespace {

// Coefficient of t^k in a component, as a univariate series in xi.
Poly1 t_slice(const Series2& s, int k, int trunc) {
    Poly1 p(trunc);
    for (const auto& [e, c] : s.terms())
        if (e.t == k && e.xi < trunc) p.set(e.xi, p.coeff(e.xi) + c);
    return p;
}

// sigma(arg) for a univariate sigma with sigma(0) = 0 and arg in the
// maximal ideal.
Series2 apply_poly1(const Poly1& sigma, const Series2& arg) {
    Series2 r = Series2::zero(arg.bound());
    Series2 p = Series2::constant(Rat(1), arg.bound());
    for (int k = 0; k < sigma.trunc(); ++k) {
        if (k > 0) {
            p = p * arg;
            if (p.is_zero()) break;
        }
        if (sgn(sigma.coeff(k)) != 0) r = r + p.scaled(sigma.coeff(k));
    }
    return r;
}

} // namespace

ValidationResult validate_tangential(const MapGerm& f, int order) {
    const int N = f.bound().degree;
    if (order < 2) throw ContractError("validate_tangential: order must be >= 2");
    if (order > N - 2)
        throw ContractError("validate_tangential: order exceeds the truncation bound");
    const int L = N + 1;

    const Poly1 s1 = f.p.at_t0(L);
    const Poly1 s2 = f.q.at_t0(L);
    const Poly1 d1 = s1.derivative();
    const Poly1 d2 = s2.derivative();
    if (sgn(d1.coeff(0)) == 0 && sgn(d2.coeff(0)) == 0)
        return Rejection{RejectionKind::SingularSupport, -1, "support curve is not immersed at 0"};

    // Geometric tangent of the fibers along the support: the lowest
    // t-slice that is not identically zero.
    int kstar = 0;
    Poly1 vx(L), vy(L);
    for (int k = 1; k <= N; ++k) {
        vx = t_slice(f.p, k, L);
        vy = t_slice(f.q, k, L);
        if (!vx.is_zero() || !vy.is_zero()) {
            kstar = k;
            break;
        }
    }
    if (kstar == 0)
        return Rejection{RejectionKind::NotImmersedFiber, -1,
                         "fibers collapse onto the support through the truncation"};

    const Poly1 wedge = vx * d2 - vy * d1;
    for (int m = 0; m <= order; ++m) {
        if (sgn(wedge.coeff(m)) != 0)
            return Rejection{RejectionKind::TangencyViolated, m,
                             "fiber tangent leaves the support direction at xi-order " +
                                 std::to_string(m)};
    }

    if (kstar > 1)
        return Rejection{RejectionKind::NotImmersedFiber, -1,
                         "fiber velocity vanishes at the base point"};

    return TangentialFamily{f, order};
}

TangentialFamily require_tangential(const MapGerm& f, int order) {
    ValidationResult r = validate_tangential(f, order);
    if (auto* tf = std::get_if<TangentialFamily>(&r)) return *tf;
    const Rejection& rej = std::get<Rejection>(r);
    throw Error(ErrorCode::Validation, rej.message);
}

MapGerm PrenormalForm::as_germ() const {
    const TruncBound b = phi.bound();
    return MapGerm(Series2::xi(b) + Series2::t(b), phi);
}

PrenormalForm PrenormalForm::from_phi(Series2 phi) {
    if (!phi.divisible_by_t(2))
        throw ContractError("PrenormalForm: phi must be divisible by t^2");
    PrenormalForm pf{std::move(phi), Rat(0), {}};
    pf.alpha = pf.phi.coeff(0, 3);
    const int N = pf.phi.bound().degree;
    pf.k.resize(static_cast<size_t>(std::max(0, N - 1)), Rat(0));
    for (size_t i = 0; i < pf.k.size(); ++i)
        pf.k[i] = pf.phi.coeff(static_cast<int>(i), 2);
    return pf;
}

PrenormalForm to_prenormal(const TangentialFamily& tf) {
    const TruncBound b = tf.f.bound();
    if (!b.total())
        throw ContractError("to_prenormal: requires a total-degree truncation bound");
    const int N = b.degree;
    const int L = N + 1;

    Series2 p = tf.f.p;
    Series2 q = tf.f.q;

    // Left linear change sending the support tangent to the x-axis.
    {
        Poly1 s1 = p.at_t0(L), s2 = q.at_t0(L);
        if (sgn(s1.derivative().coeff(0)) == 0) std::swap(p, q);
        s1 = p.at_t0(L);
        s2 = q.at_t0(L);
        const Rat a = s1.derivative().coeff(0);
        const Rat bb = s2.derivative().coeff(0);
        if (sgn(bb) != 0) q = q - p.scaled(bb / a);
    }

    // Straighten the support to y = 0: y -> y - sigma(x) where sigma is
    // the graph function of the support.
    {
        const Poly1 s1 = p.at_t0(L);
        const Poly1 s2 = q.at_t0(L);
        const Poly1 sigma = s2.compose(s1.inverse_composition());
        q = q - apply_poly1(sigma, p);
    }

    // Normalize the support parameterization to xi -> (xi, 0).
    {
        const Poly1 s1 = p.at_t0(L);
        p = apply_poly1(s1.inverse_composition(), p);
    }

    // Fiber-preserving source change: new t is T = p - xi, inverted in
    // the fiber direction by Newton iteration.
    const Series2 xiS = Series2::xi(b);
    const Series2 tS = Series2::t(b);
    const Series2 T = p - xiS;
    if (sgn(T.coeff(0, 1)) == 0)
        throw ContractError("to_prenormal: fiber direction is not resolvable (d_t p (0) = 0)");
    Series2 theta = Series2::zero(b);
    const Series2 dT = T.diff(Var::T).retruncate(b);
    for (int it = 0; it < 32; ++it) {
        const Series2 res = T.substitute(xiS, theta) - tS;
        if (res.is_zero()) break;
        const Series2 slope = dT.substitute(xiS, theta);
        theta = theta - res * slope.reciprocal();
    }
    if (!(T.substitute(xiS, theta) - tS).is_zero())
        throw Error(ErrorCode::Inconclusive,
                    "to_prenormal: fiber inversion did not terminate within the truncation");

    Series2 phi = q.substitute(xiS, theta);
    if (!phi.divisible_by_t(2))
        throw InternalConsistencyError("to_prenormal: reduced phi is not divisible by t^2");
    return PrenormalForm::from_phi(std::move(phi));
}

CriminantEquation criminant_equation(const PrenormalForm& pf) {
    const TruncBound b = pf.phi.bound();
    Series2 g = (pf.phi.diff(Var::T) - pf.phi.diff(Var::Xi)).retruncate(b);
    if (!g.divisible_by_t(1))
        throw InternalConsistencyError("criminant_equation: g is not divisible by t");
    return CriminantEquation{g, g.divide_by_t(1)};
}

TangentialFamily from_reduced(const MapGerm& f, int order) {
    const TruncBound b = f.bound();
    if (!(f.p == Series2::xi(b)))
        throw Error(ErrorCode::Validation, "from_reduced: first component must be exactly xi");
    if (!f.q.divisible_by_t(2))
        throw Error(ErrorCode::Validation,
                    "from_reduced: second component must be divisible by t^2");
    const Series2 sheared = f.q.substitute(Series2::xi(b) + Series2::t(b), Series2::t(b));
    return require_tangential(MapGerm(Series2::xi(b) + Series2::t(b), sheared), order);
}

} // namespace germforge
