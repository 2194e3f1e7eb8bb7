#include "germforge/tanspace.hpp"

#include "germforge/errors.hpp"

#include <algorithm>
#include <map>

namespace germforge {

namespace {

std::vector<Exp> monomials_within(const TruncBound& b) {
    std::vector<Exp> out;
    for (int i = 0; b.w.xi * i <= b.degree; ++i)
        for (int j = 0; b.w.xi * i + b.w.t * j <= b.degree; ++j) out.push_back(Exp{i, j});
    std::sort(out.begin(), out.end(), [](const Exp& a, const Exp& b2) {
        if (a.deg() != b2.deg()) return a.deg() < b2.deg();
        return a.t < b2.t;
    });
    return out;
}

} // namespace

JetVectorSpace JetVectorSpace::make(TruncBound bound) {
    JetVectorSpace js;
    js.bound = bound;
    for (const Exp& e : monomials_within(bound)) {
        js.basis.push_back({0, e});
        js.basis.push_back({1, e});
    }
    return js;
}

int JetVectorSpace::index_of(int comp, const Exp& e) const {
    // basis is ordered (exp graded-lex, comp); binary search
    int lo = 0, hi = dim() - 1;
    ExpGradedLex less;
    while (lo <= hi) {
        const int mid = (lo + hi) / 2;
        const VectorMonomial& m = basis[static_cast<size_t>(mid)];
        bool lt;
        if (m.e == e) lt = m.comp < comp;
        else lt = less(m.e, e);
        if (m.e == e && m.comp == comp) return mid;
        if (lt) lo = mid + 1;
        else hi = mid - 1;
    }
    return -1;
}

SparseRow embed(const JetVectorSpace& amb, const Series2& x, const Series2& y) {
    std::map<int, Rat> acc;
    for (const auto& [e, c] : x.terms()) {
        const int idx = amb.index_of(0, e);
        if (idx >= 0) acc[idx] += c;
    }
    for (const auto& [e, c] : y.terms()) {
        const int idx = amb.index_of(1, e);
        if (idx >= 0) acc[idx] += c;
    }
    SparseRow r;
    for (auto& [k, v] : acc)
        if (sgn(v) != 0) r.emplace_back(k, v);
    return r;
}

RowBasis LinearSubspace::echelon() const {
    RowBasis rb;
    for (const SparseRow& g : generators) rb.insert(g);
    return rb;
}

namespace {

int certified_rank(const JetVectorSpace& amb, const std::vector<SparseRow>& gens) {
    QMat m(static_cast<int>(gens.size()), amb.dim());
    for (size_t i = 0; i < gens.size(); ++i)
        for (const auto& [c, v] : gens[i]) m.at(static_cast<int>(i), c) = v;
    return bareiss_rank(m);
}

std::vector<SparseRow> tangent_generators(const MapGerm& f, int N, const JetVectorSpace& amb) {
    if (f.bound().degree < N)
        throw ContractError("tangent_space: truncation below the requested order");
    const TruncBound bn = total_degree(N);
    const Series2 dxp = f.p.diff(Var::Xi).retruncate(bn), dxq = f.q.diff(Var::Xi).retruncate(bn);
    const Series2 dtp = f.p.diff(Var::T).retruncate(bn), dtq = f.q.diff(Var::T).retruncate(bn);

    std::vector<SparseRow> gens;
    for (const Exp& e : monomials_within(bn)) {
        const Series2 m = Series2::monomial(Rat(1), e.xi, e.t, bn);
        gens.push_back(embed(amb, m * dxp, m * dxq));
        gens.push_back(embed(amb, m * dtp, m * dtq));
    }
    // pullbacks (x^i y^j o f) e_k, including the constants
    const Series2 p = f.p.retruncate(bn), q = f.q.retruncate(bn);
    std::vector<Series2> pp{Series2::constant(Rat(1), bn)};
    std::vector<Series2> qp{Series2::constant(Rat(1), bn)};
    for (int i = 1; i <= N; ++i) pp.push_back(pp.back() * p);
    for (int j = 1; j <= N; ++j) qp.push_back(qp.back() * q);
    const Series2 zero = Series2::zero(bn);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) {
            const Series2 pb = pp[static_cast<size_t>(i)] * qp[static_cast<size_t>(j)];
            if (pb.is_zero()) continue;
            gens.push_back(embed(amb, pb, zero));
            gens.push_back(embed(amb, zero, pb));
        }
    std::erase_if(gens, [](const SparseRow& r) { return r.empty(); });
    return gens;
}

std::vector<SparseRow> vtan_rows(const JetVectorSpace& amb, int N) {
    const TruncBound bn = total_degree(N);
    std::vector<SparseRow> rows;
    const Series2 zero = Series2::zero(bn);
    for (const Exp& e : monomials_within(bn)) {
        if (e.t + 2 + e.xi > N) continue;
        rows.push_back(embed(amb, zero, Series2::monomial(Rat(1), e.xi, e.t + 2, bn)));
    }
    return rows;
}

} // namespace

LinearSubspace tangent_space(const MapGerm& f, int N) {
    LinearSubspace ls{JetVectorSpace::make(total_degree(N)), {}, 0};
    ls.generators = tangent_generators(f, N, ls.ambient);
    ls.rank = certified_rank(ls.ambient, ls.generators);
    return ls;
}

namespace {

int codim_at(const MapGerm& f, int N) {
    const LinearSubspace ls = tangent_space(f, N);
    return ls.ambient.dim() - ls.rank;
}

int tangential_codim_at(const MapGerm& f, int N) {
    const JetVectorSpace amb = JetVectorSpace::make(total_degree(N));
    std::vector<SparseRow> gens = tangent_generators(f, N, amb);
    const int rT = certified_rank(amb, gens);
    for (SparseRow& r : vtan_rows(amb, N)) gens.push_back(std::move(r));
    const int rTV = certified_rank(amb, gens);
    return rTV - rT;
}

} // namespace

CodimResult codimension(const MapGerm& f, int N) {
    const int a = codim_at(f, N);
    const int b = codim_at(f, N + 2);
    return {a, a == b};
}

CodimResult tangential_codimension(const MapGerm& f, int N) {
    const TruncBound b = f.bound();
    if (!(f.p == Series2::xi(b) + Series2::t(b)))
        throw ContractError("tangential_codimension: prenormal presentation required");
    const int a = tangential_codim_at(f, N);
    const int a2 = tangential_codim_at(f, N + 2);
    return {a, a == a2};
}

MiniversalBasis miniversal_basis(const MapGerm& f, int N) {
    const JetVectorSpace amb = JetVectorSpace::make(total_degree(N));
    RowBasis rb;
    for (const SparseRow& g : tangent_generators(f, N, amb)) rb.insert(g);
    MiniversalBasis mb;
    for (int idx = 0; idx < amb.dim(); ++idx) {
        SparseRow unit{{idx, Rat(1)}};
        if (rb.insert(unit)) {
            const VectorMonomial& vm = amb.basis[static_cast<size_t>(idx)];
            mb.full.push_back(vm);
            if (vm.comp == 1 && vm.e.t >= 2) mb.tangential.push_back(vm);
        }
    }
    return mb;
}

bool spans_tangential_complement(const MapGerm& f, const std::vector<Series2>& dirs, int N) {
    const JetVectorSpace amb = JetVectorSpace::make(total_degree(N));
    std::vector<SparseRow> gens = tangent_generators(f, N, amb);
    const int rT = certified_rank(amb, gens);
    const int tau = tangential_codim_at(f, N);
    const Series2 zero = Series2::zero(total_degree(N));
    for (const Series2& d : dirs) gens.push_back(embed(amb, zero, d.retruncate(total_degree(N))));
    const int rTD = certified_rank(amb, gens);
    return rTD == rT + static_cast<int>(dirs.size()) &&
           static_cast<int>(dirs.size()) == tau;
}

namespace {

// Monomials of the weighted ideal generated in exact degree p: some
// divisor monomial of weighted degree exactly p must exist.
bool in_weighted_ideal(const Exp& e, const Weighting& w, int p) {
    if (p <= 0) return true;
    for (int a = 0; a <= e.xi; ++a)
        for (int b = 0; b <= e.t; ++b)
            if (w.xi * a + w.t * b == p) return true;
    return false;
}

} // namespace

bool reduced_tangent_space_contains(const MapGerm& f, const Weighting& w, int p, int q,
                                    int slack) {
    const int W = std::max(p, q) + slack;
    const TruncBound wb{w, W};
    if (f.bound().w == Weighting{1, 1} && f.bound().degree < W) {
        // a total-degree bound of W covers every weighted degree <= W
        throw ContractError("reduced_tangent_space_contains: truncation below the window");
    }
    const JetVectorSpace amb = JetVectorSpace::make(wb);

    const Series2 pc = f.p.retruncate(wb), qc = f.q.retruncate(wb);
    const Series2 dxp = pc.diff(Var::Xi).retruncate(wb), dxq = qc.diff(Var::Xi).retruncate(wb);
    const Series2 dtp = pc.diff(Var::T).retruncate(wb), dtq = qc.diff(Var::T).retruncate(wb);
    const Series2 zero = Series2::zero(wb);

    RowBasis rb;
    // positive weighted order vector fields
    for (int i = 0; w.xi * i <= W; ++i)
        for (int j = 0; w.xi * i + w.t * j <= W; ++j) {
            const Series2 m = Series2::monomial(Rat(1), i, j, wb);
            const int wd = w.xi * i + w.t * j;
            if (wd - w.xi > 0) rb.insert(embed(amb, m * dxp, m * dxq));
            if (wd - w.t > 0) rb.insert(embed(amb, m * dtp, m * dtq));
        }
    // target module: f*(m^2 + R.y) x f*(m^2 + R.x) with target weights
    // given by the weighted orders of the components
    const int wx = pc.worder(w), wy = qc.worder(w);
    auto pullback = [&](int a, int b) {
        Series2 v = Series2::constant(Rat(1), wb);
        for (int k = 0; k < a; ++k) v = v * pc;
        for (int k = 0; k < b; ++k) v = v * qc;
        return v;
    };
    for (int a = 0; a * std::max(1, wx) <= W; ++a)
        for (int b = 0; a * std::max(1, wx) + b * std::max(1, wy) <= W; ++b) {
            const bool inFirst = (a + b >= 2) || (a == 0 && b == 1);
            const bool inSecond = (a + b >= 2) || (a == 1 && b == 0);
            if (!inFirst && !inSecond) continue;
            const Series2 pb = pullback(a, b);
            if (pb.is_zero()) continue;
            if (inFirst) rb.insert(embed(amb, pb, zero));
            if (inSecond) rb.insert(embed(amb, zero, pb));
        }

    // test every vector monomial of the product ideal inside the window
    for (const Exp& e : monomials_within(wb)) {
        if (in_weighted_ideal(e, w, p)) {
            const int idx = amb.index_of(0, e);
            if (idx >= 0 && !rb.contains({{idx, Rat(1)}})) return false;
        }
        if (in_weighted_ideal(e, w, q)) {
            const int idx = amb.index_of(1, e);
            if (idx >= 0 && !rb.contains({{idx, Rat(1)}})) return false;
        }
    }
    return true;
}

} // namespace germforge
