#pragma once

#include "germforge/envelope.hpp"
#include "germforge/germ.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace germforge {

enum class ClassTag { I, II, S1, T, S2_2, S2_3, S2_4, S_GE3, S1_INF, T_INF, S_INF, U };

/// A singularity class of the catalog. n is the series index for S1,
/// T and S>=3 families; sign distinguishes the two S2,3 orbits.
struct SingularityClass {
    ClassTag tag = ClassTag::I;
    int n = 0;
    int sign = 0;

    static SingularityClass make(ClassTag t, int n = 0, int sign = 0) { return {t, n, sign}; }
    bool operator==(const SingularityClass&) const = default;

    /// -1 encodes infinite codimension.
    int codim() const;
    int tangCodim() const;
    bool simple() const;
    /// Fixed spelling: I, II, S1,n, Tn, S2,2, S2,3+, S2,3-, S2,4,
    /// Sn (n>=3), S1,inf, Tinf, Sinf, U.
    std::string name() const;
    static std::optional<SingularityClass> parse(const std::string& text);
};

/// Directed adjacency between catalog classes: whether arbitrarily
/// small tangential deformations lead from `from` to `to`. Computed
/// from the catalog diagrams with the transitive closure derived on
/// demand; classes are adjacent to themselves (trivial deformation).
/// Cross-family arrows out of the non-simple classes are class-level
/// and hold for every index of the target family.
bool adjacency(const SingularityClass& from, const SingularityClass& to);

/// Reachable classes with indices capped at maxIndex (the relation is
/// infinite along the series families).
std::vector<SingularityClass> adjacency_closure(const SingularityClass& from, int maxIndex);

struct CrossRatioResult {
    std::complex<double> value;
    bool degenerate = false;
    bool exact = false; // branch directions were rational
};

struct ClassificationReport {
    SingularityClass cls;
    PrenormalForm prenormal;
    Rat alpha;
    std::vector<Rat> k;
    std::vector<Rat> b; // reduction coefficients of the S1 lane
    std::optional<CrossRatioResult> crossRatio;
    std::optional<double> modulus;
    EnvelopeReport envelope;
    int certifiedToJet = 0;
};

/// The full decision procedure on a validated family.
ClassificationReport classify(const TangentialFamily& tf, int maxJet);
ClassificationReport classify_prenormal(const PrenormalForm& pf, int maxJet);

/// S1 subindex by the envelope route (characteristic cusp order) with
/// the mandatory graded-reduction cross-check; nullopt encodes the
/// infinite subindex through the certified jet.
std::optional<int> s1_subindex(const PrenormalForm& pf, std::vector<Rat>* bOut = nullptr);

/// The four orbits over the degenerate second-index weighted jet.
SingularityClass s2_suborbit(const PrenormalForm& pf);

/// Canonical cross ratio of the vertical direction, the support
/// criminant direction and the two remaining criminant directions.
/// nullopt when the configuration does not have three branch
/// directions with finite data (cofactor t-order != 3 or degenerate
/// quadratic part of rank 0).
std::optional<CrossRatioResult> cross_ratio(const PrenormalForm& pf);

/// Normal forms of the finite simple catalog classes.
Series2 normal_form_phi(const SingularityClass& cls, TruncBound b);
std::string normal_form_text(const SingularityClass& cls);

} // namespace germforge
