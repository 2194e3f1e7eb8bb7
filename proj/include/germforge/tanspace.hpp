#pragma once

#include "germforge/germ.hpp"
#include "germforge/linalg.hpp"
#include "germforge/series.hpp"

#include <utility>
#include <vector>

namespace germforge {

/// A monomial in one component of E^2 (the other component zero).
struct VectorMonomial {
    int comp; // 0: x-component, 1: y-component
    Exp e;
    bool operator==(const VectorMonomial&) const = default;
};

/// The truncated ambient (E_{xi,t})^2: all vector monomials within the
/// bound, in graded-lex order (degree, then xi-heavy first, then
/// component).
struct JetVectorSpace {
    TruncBound bound;
    std::vector<VectorMonomial> basis;

    static JetVectorSpace make(TruncBound bound);
    int index_of(int comp, const Exp& e) const; // -1 when out of bound
    int dim() const { return static_cast<int>(basis.size()); }
};

/// Span of a finite generator list inside a JetVectorSpace. Rank is
/// certified by fraction-free elimination on the generator matrix.
struct LinearSubspace {
    JetVectorSpace ambient;
    std::vector<SparseRow> generators;
    int rank = 0;

    RowBasis echelon() const;
};

SparseRow embed(const JetVectorSpace& amb, const Series2& x, const Series2& y);

/// Tangent space of the orbit through f at truncation order N: source
/// vector-field moves m*d_xi f, m*d_t f plus target multiples
/// (x^i y^j o f) e_k, all truncated to total degree N.
LinearSubspace tangent_space(const MapGerm& f, int N);

struct CodimResult {
    int value;
    bool stable; // agrees at N and N+2
};

/// dim E^2 / Tf at order N; stable when unchanged from N to N+2.
CodimResult codimension(const MapGerm& f, int N);

/// Dimension of (V_tan + Tf)/Tf where V_tan is spanned by the vector
/// monomials (0, t^2 m). Requires the prenormal presentation (xi+t, phi).
CodimResult tangential_codimension(const MapGerm& f, int N);

struct MiniversalBasis {
    std::vector<VectorMonomial> full;       // complement of Tf in E^2
    std::vector<VectorMonomial> tangential; // the sub-list inside V_tan
};

/// Greedy complement of Tf among vector monomials in graded-lex order.
MiniversalBasis miniversal_basis(const MapGerm& f, int N);

/// Span check for a proposed list of second-component deformation
/// directions: independent mod Tf and of size tangential codimension.
bool spans_tangential_complement(const MapGerm& f, const std::vector<Series2>& dirs, int N);

/// Whether every vector monomial of m~^p x m~^q inside the tested
/// window lies in the truncated reduced tangent space T_r f =
/// (positive-order fields applied to f) + f*(m^2 + R.y) x f*(m^2 + R.x),
/// under the quasihomogeneous weighting w. Window: weighted degree up to
/// max(p, q) + slack.
bool reduced_tangent_space_contains(const MapGerm& f, const Weighting& w, int p, int q,
                                    int slack = 4);

} // namespace germforge
