#pragma once

#include "germforge/series.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace germforge {

/// A map germ (R^2,0) -> (R^2,0): source coordinates (xi, t), target (x, y).
struct MapGerm {
    Series2 p; // x-component
    Series2 q; // y-component

    MapGerm(Series2 px, Series2 qy);
    const TruncBound& bound() const { return p.bound(); }
};

/// Jacobian determinant d_xi p * d_t q - d_t p * d_xi q.
Series2 jacobian_det(const MapGerm& f);

enum class RejectionKind { NotImmersedFiber, SingularSupport, TangencyViolated };

struct Rejection {
    RejectionKind kind;
    /// For TangencyViolated: lowest xi-order at which the identity fails.
    int order = -1;
    std::string message;
};

/// A parameterization whose fibers are curves tangent to the support
/// f(.,0) at the base point, verified through the given jet order.
struct TangentialFamily {
    MapGerm f;
    int validatedTo;
};

using ValidationResult = std::variant<TangentialFamily, Rejection>;

/// Checks the axioms: geometric fiber tangency along the support
/// (through xi-order `order`), immersed support, immersed fibers at the
/// base point. The tangency identity is tested with the lowest
/// nonvanishing t-derivative, so inputs with cuspidal fibers report the
/// broken tangency rather than the immersion failure.
ValidationResult validate_tangential(const MapGerm& f, int order);

/// Throwing convenience wrapper; maps a rejection to Error(Validation).
TangentialFamily require_tangential(const MapGerm& f, int order);

/// Presentation (xi + t, phi) with support y = 0 and t^2 | phi.
/// alpha and k cache the coefficients of t^3 and t^2*xi^i in phi.
struct PrenormalForm {
    Series2 phi;
    Rat alpha;
    std::vector<Rat> k;

    MapGerm as_germ() const;
    static PrenormalForm from_phi(Series2 phi);
};

/// Reduction to the prenormal presentation: a target change straightens
/// the support to y = 0 and normalizes its parameterization, then the
/// fiber-preserving source change t -> (first component) - xi makes the
/// first component xi + t. Exact through the truncation bound.
PrenormalForm to_prenormal(const TangentialFamily& tf);

/// Criminant equation of the prenormal presentation:
/// g = d_t phi - d_xi phi = t * h. Divisibility by t is guaranteed.
struct CriminantEquation {
    Series2 g;
    Series2 h;
};
CriminantEquation criminant_equation(const PrenormalForm& pf);

/// Source shear turning a reduced presentation (xi, psi) with t^2 | psi
/// into the tangential parameterization (xi + t, psi(xi + t, t)).
/// Throws when the first component is not exactly xi or t^2 does not
/// divide the second.
TangentialFamily from_reduced(const MapGerm& f, int order);

} // namespace germforge
