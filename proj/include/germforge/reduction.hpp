#pragma once

#include "germforge/germ.hpp"
#include "germforge/series.hpp"

#include <utility>
#include <vector>

namespace germforge {

/// Result of a graded normal-form reduction over a quasihomogeneous
/// principal part. residuals lists the complement coefficients in
/// increasing weighted degree; reduced is the representative after all
/// applied changes. completedExcess tells how far the level-by-level
/// elimination stayed solvable (it always is while every residual so
/// far vanishes; after the first nonzero residual higher levels are
/// reported best-effort).
struct GradedReduceResult {
    MapGerm reduced;
    std::vector<std::pair<int, Rat>> residuals; // (t-exponent, coefficient)
    int completedExcess = 0;
    int maxExcess = 0;
};

/// Normal-form reduction of f = (xi, q) over the principal part
/// (xi, principalQ), quasihomogeneous for w. At each weighted level the
/// graded moves (positive-order source fields and admissible target
/// multiples) are solved against the level's error term; the span of
/// (0, t^k) for k in complementTExps absorbs what cannot be removed.
/// Preconditions: f.p == xi exactly; q has no terms of weighted degree
/// below the principal degree; the principal-degree part of q equals
/// principalQ. Throws InternalConsistencyError when a level with all
/// previous residuals zero is unsolvable.
GradedReduceResult graded_reduce(const MapGerm& f, const Series2& principalQ, const Weighting& w,
                                 const std::vector<int>& complementTExps, int maxExcess);

} // namespace germforge
