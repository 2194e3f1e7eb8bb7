#include "germforge/reduction.hpp"

#include "germforge/errors.hpp"
#include "germforge/linalg.hpp"

#include <algorithm>
#include <map>

namespace germforge {

namespace {

struct Move {
    enum Kind { SrcXi, SrcT, TgtX, TgtY } kind;
    Exp e; // source monomial for Src*, target monomial (x^a y^b) for Tgt*
};

std::vector<Exp> monomials_of_wdeg(const Weighting& w, int d) {
    std::vector<Exp> out;
    if (d < 0) return out;
    for (int i = 0; w.xi * i <= d; ++i) {
        const int rest = d - w.xi * i;
        if (rest % w.t == 0) out.push_back(Exp{i, rest / w.t});
    }
    return out;
}

std::vector<Exp> target_monomials_of_wdeg(int wx, int wy, int d) {
    std::vector<Exp> out; // e.xi = x-power, e.t = y-power
    for (int a = 0; wx * a <= d; ++a) {
        const int rest = d - wx * a;
        if (rest % wy == 0) out.push_back(Exp{a, rest / wy});
    }
    return out;
}

Series2 graded_part(const Series2& s, const Weighting& w, int d) {
    Series2 r = Series2::zero(s.bound());
    for (const auto& [e, c] : s.terms())
        if (e.wdeg(w) == d) r.add_term(e.xi, e.t, c);
    return r;
}

} // namespace

GradedReduceResult graded_reduce(const MapGerm& f, const Series2& principalQ, const Weighting& w,
                                 const std::vector<int>& complementTExps, int maxExcess) {
    const TruncBound B = f.bound();
    const Series2 xiS = Series2::xi(B), tS = Series2::t(B);
    if (!(f.p == xiS))
        throw ContractError("graded_reduce: first component must be exactly xi");
    const int d1 = w.xi;
    const int d2 = principalQ.worder(w);
    if (!(graded_part(f.q, w, d2) == principalQ.retruncate(B)))
        throw ContractError("graded_reduce: principal part mismatch");
    for (const auto& [e, c] : f.q.terms())
        if (e.wdeg(w) < d2)
            throw ContractError("graded_reduce: terms below the principal degree");

    MapGerm cur = f;
    GradedReduceResult out{cur, {}, 0, maxExcess};
    const Series2 dxq0 = principalQ.diff(Var::Xi).retruncate(B);
    const Series2 dtq0 = principalQ.diff(Var::T).retruncate(B);
    // target weights: x carries d1, y carries d2
    bool decided = false; // a nonzero residual has appeared

    for (int e = 1; e <= maxExcess; ++e) {
        // error parts of the current representative at this level
        const Series2 E1 = graded_part(cur.p - xiS, w, d1 + e);
        const Series2 E2 = graded_part(cur.q, w, d2 + e);

        // column space: moves
        std::vector<Move> moves;
        for (const Exp& m : monomials_of_wdeg(w, d1 + e)) moves.push_back({Move::SrcXi, m});
        for (const Exp& m : monomials_of_wdeg(w, w.t + e)) moves.push_back({Move::SrcT, m});
        for (const Exp& m : target_monomials_of_wdeg(d1, d2, d1 + e))
            if (m.xi + m.t >= 2 || (m.xi == 0 && m.t == 1)) moves.push_back({Move::TgtX, m});
        for (const Exp& m : target_monomials_of_wdeg(d1, d2, d2 + e))
            if (m.xi + m.t >= 2 || (m.xi == 1 && m.t == 0)) moves.push_back({Move::TgtY, m});

        std::vector<int> dirs;
        for (int k : complementTExps)
            if (w.t * k == d2 + e) dirs.push_back(k);

        // equations: coordinates of level monomials in both components
        const auto rows1 = monomials_of_wdeg(w, d1 + e);
        const auto rows2 = monomials_of_wdeg(w, d2 + e);
        struct CompExpLess {
            bool operator()(const std::pair<int, Exp>& a, const std::pair<int, Exp>& b) const {
                if (a.first != b.first) return a.first < b.first;
                ExpGradedLex less;
                if (less(a.second, b.second)) return true;
                if (less(b.second, a.second)) return false;
                return false;
            }
        };
        std::map<std::pair<int, Exp>, int, CompExpLess> rowIndex;
        int nRows = 0;
        for (const Exp& m : rows1) rowIndex[{0, m}] = nRows++;
        for (const Exp& m : rows2) rowIndex[{1, m}] = nRows++;

        const int nCols = static_cast<int>(moves.size() + dirs.size());
        QMat A(nRows, nCols);
        auto fill = [&](int col, int comp, const Series2& s) {
            for (const auto& [me, c] : s.terms()) {
                auto it = rowIndex.find({comp, me});
                if (it != rowIndex.end()) A.at(it->second, col) += c;
            }
        };
        for (size_t c = 0; c < moves.size(); ++c) {
            const Move& mv = moves[c];
            const int col = static_cast<int>(c);
            switch (mv.kind) {
            case Move::SrcXi: {
                const Series2 m = Series2::monomial(Rat(1), mv.e.xi, mv.e.t, B);
                fill(col, 0, m); // A * d_xi(xi) = A
                fill(col, 1, m * dxq0);
                break;
            }
            case Move::SrcT: {
                const Series2 m = Series2::monomial(Rat(1), mv.e.xi, mv.e.t, B);
                fill(col, 1, m * dtq0); // d_t(xi) = 0
                break;
            }
            case Move::TgtX: {
                const Series2 pb = xiS.pow(mv.e.xi) * principalQ.retruncate(B).pow(mv.e.t);
                fill(col, 0, pb);
                break;
            }
            case Move::TgtY: {
                const Series2 pb = xiS.pow(mv.e.xi) * principalQ.retruncate(B).pow(mv.e.t);
                fill(col, 1, pb);
                break;
            }
            }
        }
        for (size_t d = 0; d < dirs.size(); ++d) {
            auto it = rowIndex.find({1, Exp{0, dirs[d]}});
            if (it != rowIndex.end()) A.at(it->second, static_cast<int>(moves.size() + d)) = Rat(1);
        }

        std::vector<Rat> rhs(static_cast<size_t>(nRows), Rat(0));
        for (const auto& [me, c] : E1.terms()) rhs[static_cast<size_t>(rowIndex.at({0, me}))] = c;
        for (const auto& [me, c] : E2.terms()) rhs[static_cast<size_t>(rowIndex.at({1, me}))] = c;

        const auto sol = solve_dense(A, rhs);
        if (!sol) {
            if (!decided)
                throw InternalConsistencyError(
                    "graded_reduce: level " + std::to_string(e) + " not spanned by moves and transversal");
            break; // best-effort reporting past the decision point
        }

        // uniqueness of the residual coordinates: the complement columns
        // must be independent of the move image
        {
            QMat movesOnly(nRows, static_cast<int>(moves.size()));
            for (int i = 0; i < nRows; ++i)
                for (size_t c = 0; c < moves.size(); ++c) movesOnly.at(i, static_cast<int>(c)) = A.at(i, static_cast<int>(c));
            const int rMoves = bareiss_rank(movesOnly);
            const int rAll = bareiss_rank(A);
            if (rAll != rMoves + static_cast<int>(dirs.size())) {
                if (!decided)
                    throw InternalConsistencyError(
                        "graded_reduce: transversal not independent at level " + std::to_string(e));
                break;
            }
        }

        // assemble and apply the changes
        Series2 As = Series2::zero(B), Bs = Series2::zero(B);
        Series2 Cs = Series2::zero(B), Ds = Series2::zero(B);
        for (size_t c = 0; c < moves.size(); ++c) {
            const Rat& v = (*sol)[c];
            if (sgn(v) == 0) continue;
            const Move& mv = moves[c];
            switch (mv.kind) {
            case Move::SrcXi: As.add_term(mv.e.xi, mv.e.t, v); break;
            case Move::SrcT: Bs.add_term(mv.e.xi, mv.e.t, v); break;
            case Move::TgtX: Cs.add_term(mv.e.xi, mv.e.t, v); break;
            case Move::TgtY: Ds.add_term(mv.e.xi, mv.e.t, v); break;
            }
        }
        if (!As.is_zero() || !Bs.is_zero()) {
            const Series2 sx = xiS - As, st = tS - Bs;
            cur = MapGerm(cur.p.substitute(sx, st), cur.q.substitute(sx, st));
        }
        if (!Cs.is_zero() || !Ds.is_zero()) {
            cur = MapGerm(cur.p - Cs.substitute(cur.p, cur.q), cur.q - Ds.substitute(cur.p, cur.q));
        }

        // record residuals and certify the level landed on the transversal
        const Series2 check1 = graded_part(cur.p - xiS, w, d1 + e);
        if (!check1.is_zero())
            throw InternalConsistencyError("graded_reduce: first component dirty after level " +
                                           std::to_string(e));
        Series2 check2 = graded_part(cur.q, w, d2 + e);
        for (size_t d = 0; d < dirs.size(); ++d) {
            const Rat r = (*sol)[moves.size() + d];
            out.residuals.emplace_back(dirs[d], r);
            if (sgn(r) != 0) decided = true;
            check2 = check2 - Series2::monomial(r, 0, dirs[d], B);
        }
        if (!check2.is_zero())
            throw InternalConsistencyError("graded_reduce: level residue off the transversal at " +
                                           std::to_string(e));
        out.completedExcess = e;
    }
    out.reduced = cur;
    return out;
}

} // namespace germforge
