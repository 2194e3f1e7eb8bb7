#include "germforge/envelope.hpp"

#include "germforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace germforge {

EnvelopeReport envelope_branches(const PrenormalForm& pf, int maxTerms) {
    const TruncBound B = pf.phi.bound();
    const int L = B.degree + 1;
    EnvelopeReport rep{PlaneBranch{Poly1::identity(L), Poly1::zero(L)}, {}, {}};

    const CriminantEquation ce = criminant_equation(pf);
    if (ce.h.is_zero()) return rep; // criminant is only the support
    if (sgn(ce.h.coeff(0, 0)) != 0) return rep; // cofactor is a unit: first-class family

    for (const PuiseuxBranch& b : branches(ce.h, maxTerms, Field::Real)) {
        if (b.residual) {
            rep.unresolved.push_back(*b.residual);
            continue;
        }
        if (b.numeric) continue; // numeric lanes stay out of the exact report
        // parameterize: xi = s^q, t = tau(s)
        const int q = b.ramification;
        Poly1 xs(L), ts(L);
        if (q < L) xs.set(q, Rat(1));
        bool representable = true;
        for (const auto& term : b.terms) {
            Rat e = term.exp * q;
            if (e.get_den() != 1) {
                representable = false;
                break;
            }
            const long k = e.get_num().get_si();
            if (k < L) ts.set(static_cast<int>(k), ts.coeff(static_cast<int>(k)) + term.coeff);
        }
        if (!representable || q >= L) continue;
        EnvelopeBranchReport br{PlaneBranch{xs + ts, pf.phi.compose_path(xs, ts)},
                                {0, 0},
                                std::nullopt,
                                Side::Inconclusive,
                                b.multiplicity};
        if (br.branch.X.is_zero() && br.branch.Y.is_zero()) continue;
        br.order = param_branch_order(br.branch);
        if (br.order.second == 1) br.contact = contact_order(br.branch);
        br.side = branch_side(br.branch);
        rep.otherBranches.push_back(std::move(br));
    }
    return rep;
}

namespace {

struct GridTracer {
    const Series2& g;
    std::array<double, 4> box;
    int res;
    std::vector<double> values;      // (res+1)^2 node values
    double hx, ht;

    double nodeX(int i) const { return box[0] + hx * i; }
    double nodeT(int j) const { return box[2] + ht * j; }
    double val(int i, int j) const { return values[static_cast<size_t>(j) * (res + 1) + i]; }
    static int signOf(double v) { return v < 0.0 ? -1 : 1; }

    // Edge key: (i, j, 0) horizontal edge from node (i,j) to (i+1,j);
    //           (i, j, 1) vertical edge from node (i,j) to (i,j+1);
    //           (i, j, 2) a crossing sitting exactly on node (i,j).
    // Crossings landing on a node collapse to the node key so that
    // contour lines meeting at a grid point share one junction.
    using EdgeKey = std::array<int, 3>;
    std::map<EdgeKey, int> edgePoint;
    std::vector<std::array<double, 2>> points; // source coordinates

    int point_at(const EdgeKey& key, double x, double t) {
        auto it = edgePoint.find(key);
        if (it != edgePoint.end()) return it->second;
        const int idx = static_cast<int>(points.size());
        points.push_back({x, t});
        edgePoint.emplace(key, idx);
        return idx;
    }

    int crossing(int i, int j, int orientation) {
        double x0 = nodeX(i), t0 = nodeT(j);
        double x1 = orientation == 0 ? nodeX(i + 1) : x0;
        double t1 = orientation == 0 ? t0 : nodeT(j + 1);
        const double v0 = val(i, j);
        const double v1 = orientation == 0 ? val(i + 1, j) : val(i, j + 1);
        const double s = v1 == v0 ? 0.5 : -v0 / (v1 - v0);
        if (s <= 0.0) return point_at({i, j, 2}, x0, t0);
        if (s >= 1.0)
            return orientation == 0 ? point_at({i + 1, j, 2}, x1, t1)
                                    : point_at({i, j + 1, 2}, x1, t1);
        return point_at({i, j, orientation}, x0 + (x1 - x0) * s, t0 + (t1 - t0) * s);
    }
};

} // namespace

EnvelopeSketch trace_numeric(const PrenormalForm& pf, const std::array<double, 4>& box, int res) {
    if (res < 16) throw ContractError("trace_numeric: resolution must be at least 16");
    EnvelopeSketch sk;
    sk.box = box;
    sk.res = res;
    const TruncBound B = pf.phi.bound();
    const Series2 g = (pf.phi.diff(Var::T) - pf.phi.diff(Var::Xi)).retruncate(B);
    sk.familyText = "xi + t ; " + pf.phi.str();

    GridTracer tr{g, box, res, {}, 0.0, 0.0, {}, {}};
    tr.hx = (box[1] - box[0]) / res;
    tr.ht = (box[3] - box[2]) / res;
    tr.values.resize(static_cast<size_t>(res + 1) * (res + 1));
    for (int j = 0; j <= res; ++j)
        for (int i = 0; i <= res; ++i)
            tr.values[static_cast<size_t>(j) * (res + 1) + i] = g.eval(tr.nodeX(i), tr.nodeT(j));

    // collect segments cell by cell
    std::vector<std::array<int, 2>> segments;
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const int s00 = GridTracer::signOf(tr.val(i, j));
            const int s10 = GridTracer::signOf(tr.val(i + 1, j));
            const int s01 = GridTracer::signOf(tr.val(i, j + 1));
            const int s11 = GridTracer::signOf(tr.val(i + 1, j + 1));
            const int mask = (s00 > 0 ? 1 : 0) | (s10 > 0 ? 2 : 0) | (s11 > 0 ? 4 : 0) |
                             (s01 > 0 ? 8 : 0);
            if (mask == 0 || mask == 15) continue;
            // crossed edges: bottom (i,j,0), right (i+1,j,1), top (i,j+1,0), left (i,j,1)
            const bool bottom = s00 != s10;
            const bool right = s10 != s11;
            const bool top = s01 != s11;
            const bool left = s00 != s01;
            int e[4], n = 0;
            if (bottom) e[n++] = tr.crossing(i, j, 0);
            if (right) e[n++] = tr.crossing(i + 1, j, 1);
            if (top) e[n++] = tr.crossing(i, j + 1, 0);
            if (left) e[n++] = tr.crossing(i, j, 1);
            if (n == 2) {
                segments.push_back({e[0], e[1]});
            } else if (n == 4) {
                // saddle: the center sample decides the pairing
                const double cx = tr.nodeX(i) + 0.5 * tr.hx;
                const double ct = tr.nodeT(j) + 0.5 * tr.ht;
                const int sc = GridTracer::signOf(g.eval(cx, ct));
                const int b = tr.crossing(i, j, 0), r = tr.crossing(i + 1, j, 1);
                const int t = tr.crossing(i, j + 1, 0), l = tr.crossing(i, j, 1);
                if (sc == s00) {
                    segments.push_back({b, r});
                    segments.push_back({t, l});
                } else {
                    segments.push_back({b, l});
                    segments.push_back({t, r});
                }
            }
        }
    }

    // drop degenerate and duplicate segments created by node-collapsed
    // crossings, then chain into polylines
    {
        std::vector<std::array<int, 2>> cleaned;
        std::map<std::pair<int, int>, bool> seen;
        for (auto& s : segments) {
            if (s[0] == s[1]) continue;
            const std::pair<int, int> key{std::min(s[0], s[1]), std::max(s[0], s[1])};
            if (seen.emplace(key, true).second) cleaned.push_back(s);
        }
        segments = std::move(cleaned);
    }
    std::map<int, std::vector<int>> adj;
    for (size_t s = 0; s < segments.size(); ++s) {
        adj[segments[s][0]].push_back(static_cast<int>(s));
        adj[segments[s][1]].push_back(static_cast<int>(s));
    }
    std::vector<bool> used(segments.size(), false);
    auto other_end = [&](int seg, int point) {
        return segments[static_cast<size_t>(seg)][0] == point ? segments[static_cast<size_t>(seg)][1]
                                                              : segments[static_cast<size_t>(seg)][0];
    };
    auto walk = [&](int startPoint, int startSeg) {
        std::vector<int> chain{startPoint};
        int point = startPoint, seg = startSeg;
        while (true) {
            used[static_cast<size_t>(seg)] = true;
            const int prev = point;
            point = other_end(seg, point);
            chain.push_back(point);
            // At a junction keep going straight: pick the unused segment
            // whose direction lines up best with the incoming one.
            const double inx = tr.points[static_cast<size_t>(point)][0] -
                               tr.points[static_cast<size_t>(prev)][0];
            const double int_ = tr.points[static_cast<size_t>(point)][1] -
                                tr.points[static_cast<size_t>(prev)][1];
            int next = -1;
            double best = -2.0;
            for (int cand : adj[point]) {
                if (used[static_cast<size_t>(cand)]) continue;
                const int tgt = other_end(cand, point);
                const double ox = tr.points[static_cast<size_t>(tgt)][0] -
                                  tr.points[static_cast<size_t>(point)][0];
                const double ot = tr.points[static_cast<size_t>(tgt)][1] -
                                  tr.points[static_cast<size_t>(point)][1];
                const double ni = std::hypot(inx, int_), no = std::hypot(ox, ot);
                const double align =
                    (ni > 0 && no > 0) ? (inx * ox + int_ * ot) / (ni * no) : 0.0;
                if (align > best + 1e-12) {
                    best = align;
                    next = cand;
                }
            }
            if (next < 0) break;
            seg = next;
        }
        return chain;
    };
    std::vector<std::vector<int>> chains;
    // open chains first (endpoints of degree 1), then loops; scan order fixed
    for (const auto& [pt, segs] : adj) {
        if (segs.size() != 1) continue;
        for (int s : segs)
            if (!used[static_cast<size_t>(s)]) chains.push_back(walk(pt, s));
    }
    for (size_t s = 0; s < segments.size(); ++s)
        if (!used[s]) chains.push_back(walk(segments[s][0], static_cast<int>(s)));

    for (const auto& chain : chains) {
        std::vector<std::array<double, 2>> src, dst;
        src.reserve(chain.size());
        dst.reserve(chain.size());
        for (int pIdx : chain) {
            const auto& sp = tr.points[static_cast<size_t>(pIdx)];
            src.push_back(sp);
            const double x = sp[0] + sp[1];
            const double y = pf.phi.eval(sp[0], sp[1]);
            dst.push_back({x, y});
        }
        sk.sourcePolylines.push_back(std::move(src));
        sk.polylines.push_back(std::move(dst));
    }
    return sk;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v); // normalize -0
    return buf;
}

} // namespace

std::string emit_svg(const EnvelopeSketch& sk) {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const auto& pl : sk.polylines)
        for (const auto& p : pl) {
            if (first) {
                x0 = x1 = p[0];
                y0 = y1 = p[1];
                first = false;
            }
            x0 = std::min(x0, p[0]);
            x1 = std::max(x1, p[0]);
            y0 = std::min(y0, p[1]);
            y1 = std::max(y1, p[1]);
        }
    if (first) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
    }
    const double w = std::max(x1 - x0, 1e-12), h = std::max(y1 - y0, 1e-12);
    const double stroke = 0.005 * std::max(w, h);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << fmt(x0) << " " << fmt(y0)
       << " " << fmt(w) << " " << fmt(h) << "\">\n";
    for (const auto& pl : sk.polylines) {
        os << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << fmt(stroke)
           << "\" d=\"";
        for (size_t k = 0; k < pl.size(); ++k)
            os << (k == 0 ? "M " : " L ") << fmt(pl[k][0]) << " " << fmt(pl[k][1]);
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string emit_csv(const EnvelopeSketch& sk) {
    std::ostringstream os;
    os << "polyline,x,y\n";
    for (size_t pl = 0; pl < sk.polylines.size(); ++pl)
        for (const auto& p : sk.polylines[pl])
            os << pl << "," << fmt(p[0]) << "," << fmt(p[1]) << "\n";
    return os.str();
}

} // namespace germforge
