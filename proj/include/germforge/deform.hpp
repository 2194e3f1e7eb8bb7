#pragma once

#include "germforge/classify.hpp"
#include "germforge/envelope.hpp"
#include "germforge/germ.hpp"

#include <optional>
#include <string>
#include <vector>

namespace germforge {

/// Miniversal tangential deformation data of a finite simple class:
/// the catalog's monomial directions e_i with parameters l1..l_tau.
struct DeformationSpec {
    SingularityClass forClass;
    std::vector<Series2> directions;
    std::vector<std::string> paramNames;
};

/// Catalog row lookup; throws Error(Validation) for classes without a
/// finite spec.
DeformationSpec miniversal_spec(const SingularityClass& cls, TruncBound b);

/// phi' = phi + sum lambda_i e_i, revalidated as a tangential family.
/// Every direction must be divisible by t^2.
PrenormalForm apply_deformation(const PrenormalForm& pf, const DeformationSpec& spec,
                                const std::vector<Rat>& lambda);

/// The polynomial family Q(x) = x^(n+1) + l_n x^(n-1) + ... + l_1.
struct QFamily {
    int n;
    std::vector<Rat> lambda; // lambda[0] = l_1 (constant term), ...
};

/// resultant(Q, Q'), the discriminant up to the fixed monic-convention
/// normalization; vanishes exactly when Q has a multiple root.
Rat q_discriminant(const QFamily& qf);

/// Number of distinct real roots of a rational-coefficient polynomial
/// (Sturm chain; coefficients ascending).
int count_real_roots(const std::vector<Rat>& poly);

struct BifurcationPoint {
    std::vector<Rat> lambda;
    std::optional<SingularityClass> cls;
    std::string error;           // classification failure, if any
    bool selfTangency = false;   // numeric envelope flag (sampled, not certified)
};

struct BifurcationGrid {
    std::vector<int> shape; // grid points per axis
    std::vector<BifurcationPoint> points; // row-major over the axes
};

struct GridAxis {
    Rat lo;
    Rat hi;
    int count;
};

/// Classify the miniversal deformation of a class normal form on a
/// rational grid; per-point failures are recorded, not thrown. The
/// numeric self-tangency detector runs when detectSelfTangency is set.
BifurcationGrid bifurcation_grid(const SingularityClass& cls, const std::vector<GridAxis>& axes,
                                 TruncBound b, int maxJet, bool detectSelfTangency = false);

/// Near-self-tangency heuristic on a traced envelope: two branch points
/// within eps whose tangents are nearly parallel, away from the
/// parameter diagonal. Sampling aid for bifurcation pictures.
bool detect_near_self_tangency(const EnvelopeSketch& sketch, double eps);

} // namespace germforge
