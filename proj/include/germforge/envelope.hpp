#pragma once

#include "germforge/germ.hpp"
#include "germforge/puiseux.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace germforge {

struct EnvelopeBranchReport {
    PlaneBranch branch;           // parameterized in the target plane
    std::pair<int, int> order;    // (p, q) singularity order
    std::optional<int> contact;   // tangency order with the support (immersed branches)
    Side side = Side::Inconclusive;
    int multiplicity = 1;
};

/// Envelope of a prenormal family: the support y = 0 plus the images of
/// the non-trivial criminant branches.
struct EnvelopeReport {
    PlaneBranch support;
    std::vector<EnvelopeBranchReport> otherBranches;
    std::vector<FactoredResidual> unresolved; // directions needing field extensions
};

EnvelopeReport envelope_branches(const PrenormalForm& pf, int maxTerms);

/// Float contour trace of the criminant in the source square, mapped
/// through the family to the target plane.
struct EnvelopeSketch {
    std::vector<std::vector<std::array<double, 2>>> polylines;       // target (x, y)
    std::vector<std::vector<std::array<double, 2>>> sourcePolylines; // (xi, t) preimages
    std::array<double, 4> box{};                                     // xi0, xi1, t0, t1
    int res = 0;
    std::string familyText;
};

/// Marching-squares contour of g = d_t phi - d_xi phi on a res x res
/// cell grid over the box; deterministic for fixed inputs. Deformations
/// are applied to pf by the caller beforehand.
EnvelopeSketch trace_numeric(const PrenormalForm& pf, const std::array<double, 4>& box, int res);

/// Byte-deterministic emitters.
std::string emit_svg(const EnvelopeSketch& sketch);
std::string emit_csv(const EnvelopeSketch& sketch);

} // namespace germforge
