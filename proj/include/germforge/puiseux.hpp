#pragma once

#include "germforge/poly1.hpp"
#include "germforge/series.hpp"

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace germforge {

enum class Field { Real, Complex };

enum class Side { OneSidePlus, OneSideMinus, BothSides, Inconclusive };

struct PolygonSegment {
    Exp from;          // higher t-exponent end
    Exp to;            // higher xi-exponent end
    Rat mu;            // branch exponent: t ~ c * xi^mu on this segment
    int latticeLength; // number of lattice steps on the segment
};

/// Lower Newton hull of a nonzero series, segments ordered from the
/// t-axis towards the xi-axis (mu increasing).
std::vector<PolygonSegment> newton_polygon(const Series2& g);

struct PuiseuxTerm {
    Rat exp; // exponent of xi, denominator divides the ramification
    Rat coeff;
};

struct PuiseuxTermC {
    Rat exp;
    std::complex<double> coeff;
};

/// An unresolved characteristic factor: the branch directions are roots
/// of `poly` (coefficients of ascending degree) at exponent `mu`; kept
/// factored because they need an algebraic extension of Q.
struct FactoredResidual {
    Rat mu;
    std::vector<Rat> poly;
    std::vector<std::complex<double>> approxRoots;
};

/// One solution branch t = t(xi) of g(xi, t(xi)) = 0.
struct PuiseuxBranch {
    int ramification = 1;
    Field field = Field::Real;
    bool numeric = false;       // coefficients live in numericTerms
    bool exactComplete = false; // expansion terminated exactly
    int multiplicity = 1;
    std::vector<PuiseuxTerm> terms;
    std::vector<PuiseuxTermC> numericTerms;
    std::optional<FactoredResidual> residual;

    bool is_zero_branch() const { return terms.empty() && numericTerms.empty() && !residual; }
};

/// All branches through maxTerms coefficient steps. Over Field::Real,
/// conjugate pairs and other irrational direction packets come back as
/// a single factored-residual entry; over Field::Complex they continue
/// as numeric branches.
std::vector<PuiseuxBranch> branches(const Series2& g, int maxTerms, Field field);

/// The unique branch of a series whose linear part has a nonzero t
/// coefficient (implicit function theorem case); exact, as t = tau(xi)
/// through len coefficients. Returns nullopt when d_t at 0 vanishes.
std::optional<Poly1> solve_smooth_branch(const Series2& h, int len);

/// Order of vanishing of g along a branch (test hook): substitutes the
/// exact branch and reports the valuation of the residual in the
/// ramified parameter, or -1 when the residual is identically zero.
int branch_residual_order(const Series2& g, const PuiseuxBranch& b, int len);

/// A parameterized plane curve branch through the origin.
struct PlaneBranch {
    Poly1 X;
    Poly1 Y;
};

/// Reduced singularity order (p, q): q is the multiplicity (minimum
/// vanishing order after removing common exponent content), p the first
/// characteristic order of the other component in the normalized
/// parameter. (1,1) means an immersed branch.
std::pair<int, int> param_branch_order(const PlaneBranch& b);

/// Tangency order with the support y = 0 for an immersed branch: the
/// vanishing order of Y reparameterized by X, minus one. nullopt means
/// the branch lies inside the support (infinite contact).
std::optional<int> contact_order(const PlaneBranch& b);

/// Which side of the support the branch occupies near the origin.
Side branch_side(const PlaneBranch& b);

} // namespace germforge
