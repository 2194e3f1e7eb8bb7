#include "germforge/deform.hpp"

#include "germforge/errors.hpp"
#include "germforge/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace germforge {

DeformationSpec miniversal_spec(const SingularityClass& cls, TruncBound b) {
    DeformationSpec spec{cls, {}, {}};
    auto tpow = [&](int k) { return Series2::monomial(Rat(1), 0, k, b); };
    switch (cls.tag) {
    case ClassTag::I:
    case ClassTag::II: break; // stable: tau = 0
    case ClassTag::S1:
        for (int i = 1; i <= cls.n; ++i) spec.directions.push_back(tpow(2 * i + 1));
        break;
    case ClassTag::T:
        for (int i = 0; i < cls.n; ++i)
            spec.directions.push_back(Series2::monomial(Rat(1), i, 2, b));
        break;
    case ClassTag::S2_2:
        spec.directions = {tpow(3), tpow(4)};
        break;
    case ClassTag::S2_3:
        spec.directions = {tpow(3), tpow(4), tpow(6)};
        break;
    case ClassTag::S2_4:
        spec.directions = {tpow(3), tpow(4), tpow(6), tpow(9)};
        break;
    default:
        throw Error(ErrorCode::Validation,
                    "miniversal_spec: no finite deformation spec for " + cls.name());
    }
    for (size_t i = 0; i < spec.directions.size(); ++i)
        spec.paramNames.push_back("l" + std::to_string(i + 1));
    return spec;
}

PrenormalForm apply_deformation(const PrenormalForm& pf, const DeformationSpec& spec,
                                const std::vector<Rat>& lambda) {
    if (lambda.size() != spec.directions.size())
        throw ContractError("apply_deformation: parameter count mismatch");
    Series2 phi = pf.phi;
    for (size_t i = 0; i < lambda.size(); ++i) {
        const Series2& dir = spec.directions[i];
        if (!dir.divisible_by_t(2))
            throw ContractError("apply_deformation: direction not divisible by t^2");
        phi = phi + dir.retruncate(phi.bound()).scaled(lambda[i]);
    }
    const PrenormalForm out = PrenormalForm::from_phi(phi);
    require_tangential(out.as_germ(), 4); // revalidation
    return out;
}

Rat q_discriminant(const QFamily& qf) {
    if (qf.n < 1) throw ContractError("q_discriminant: n >= 1 required");
    if (static_cast<int>(qf.lambda.size()) != qf.n)
        throw ContractError("q_discriminant: lambda size must equal n");
    // Q = x^(n+1) + l_n x^(n-1) + ... + l_1
    const int dq = qf.n + 1;
    std::vector<Rat> Q(static_cast<size_t>(dq + 1), Rat(0));
    Q[static_cast<size_t>(dq)] = Rat(1);
    for (int i = 1; i <= qf.n; ++i) Q[static_cast<size_t>(i - 1)] = qf.lambda[static_cast<size_t>(i - 1)];
    std::vector<Rat> dQ(static_cast<size_t>(dq), Rat(0));
    for (int k = 1; k <= dq; ++k) dQ[static_cast<size_t>(k - 1)] = Q[static_cast<size_t>(k)] * k;
    // Sylvester matrix of (Q, Q'): (2n+1) x (2n+1)
    const int m = dq + dq - 1;
    QMat s(m, m);
    for (int r = 0; r < dq - 1; ++r)
        for (int k = 0; k <= dq; ++k) s.at(r, r + (dq - k)) = Q[static_cast<size_t>(k)];
    for (int r = 0; r < dq; ++r)
        for (int k = 0; k < dq; ++k) s.at(dq - 1 + r, r + (dq - 1 - k)) = dQ[static_cast<size_t>(k)];
    return bareiss_det(s);
}

namespace {

// polynomial helpers over ascending rational coefficient vectors
std::vector<Rat> poly_trim(std::vector<Rat> p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
    return p;
}

std::vector<Rat> poly_neg_rem(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    // -(a mod b)
    std::vector<Rat> r = a;
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        const int dr = static_cast<int>(r.size()) - 1;
        const Rat f = r.back() / b.back();
        for (int k = 0; k <= db; ++k)
            r[static_cast<size_t>(dr - db + k)] -= f * b[static_cast<size_t>(k)];
        r = poly_trim(std::move(r));
        if (r.empty()) break;
    }
    for (Rat& v : r) v = -v;
    return r;
}

int sign_changes(const std::vector<std::vector<Rat>>& chain, bool atPlusInf) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        if (p.empty()) continue;
        int s = sgn(p.back());
        if (!atPlusInf && (p.size() - 1) % 2 == 1) s = -s; // odd degree flips at -inf
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

int count_real_roots(const std::vector<Rat>& poly) {
    std::vector<Rat> p = poly_trim(poly);
    if (p.size() <= 1) return 0;
    // squarefree part: p / gcd(p, p')
    std::vector<Rat> dp(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) dp[k - 1] = p[k] * static_cast<long>(k);
    // gcd by Euclid
    std::vector<Rat> a = p, b = poly_trim(dp);
    while (!b.empty()) {
        std::vector<Rat> r = poly_neg_rem(a, b);
        for (Rat& v : r) v = -v; // plain remainder for the gcd
        a = b;
        b = poly_trim(std::move(r));
    }
    // divide p by the gcd a (exact)
    if (a.size() > 1) {
        std::vector<Rat> q(p.size() - a.size() + 1, Rat(0));
        std::vector<Rat> rem = p;
        for (int dq = static_cast<int>(rem.size()) - static_cast<int>(a.size()); dq >= 0; --dq) {
            const Rat f = rem[static_cast<size_t>(dq + a.size() - 1)] / a.back();
            q[static_cast<size_t>(dq)] = f;
            for (size_t k = 0; k < a.size(); ++k)
                rem[static_cast<size_t>(dq) + k] -= f * a[k];
            rem = poly_trim(std::move(rem));
            rem.resize(static_cast<size_t>(dq) + a.size() - 1, Rat(0));
        }
        p = poly_trim(std::move(q));
        if (p.size() <= 1) return 0;
    }
    // Sturm chain of the squarefree part
    std::vector<std::vector<Rat>> chain;
    chain.push_back(p);
    std::vector<Rat> d(p.size() - 1);
    for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<long>(k);
    chain.push_back(poly_trim(d));
    while (chain.back().size() > 1) {
        std::vector<Rat> nxt = poly_neg_rem(chain[chain.size() - 2], chain.back());
        if (nxt.empty()) break;
        chain.push_back(std::move(nxt));
    }
    return sign_changes(chain, false) - sign_changes(chain, true);
}

BifurcationGrid bifurcation_grid(const SingularityClass& cls, const std::vector<GridAxis>& axes,
                                 TruncBound b, int maxJet, bool detectSelfTangency) {
    const DeformationSpec spec = miniversal_spec(cls, b);
    if (axes.size() != spec.directions.size())
        throw ContractError("bifurcation_grid: grid dimension must equal the tangential codimension");
    const PrenormalForm base = PrenormalForm::from_phi(normal_form_phi(cls, b));

    BifurcationGrid grid;
    size_t total = 1;
    for (const GridAxis& ax : axes) {
        if (ax.count < 1) throw ContractError("bifurcation_grid: axis count must be positive");
        grid.shape.push_back(ax.count);
        total *= static_cast<size_t>(ax.count);
    }
    for (size_t flat = 0; flat < total; ++flat) {
        std::vector<Rat> lambda(axes.size());
        size_t rest = flat;
        for (size_t a = axes.size(); a-- > 0;) {
            const size_t idx = rest % static_cast<size_t>(axes[a].count);
            rest /= static_cast<size_t>(axes[a].count);
            lambda[a] = axes[a].count == 1
                            ? axes[a].lo
                            : axes[a].lo + (axes[a].hi - axes[a].lo) * Rat(static_cast<long>(idx)) /
                                               Rat(axes[a].count - 1);
        }
        BifurcationPoint pt{lambda, std::nullopt, "", false};
        try {
            const PrenormalForm deformed = apply_deformation(base, spec, lambda);
            pt.cls = classify_prenormal(deformed, maxJet).cls;
            if (detectSelfTangency) {
                const EnvelopeSketch sk =
                    trace_numeric(deformed, {-0.5, 0.5, -0.5, 0.5}, 64);
                pt.selfTangency = detect_near_self_tangency(sk, 2.0 / 64.0);
            }
        } catch (const Error& e) {
            pt.error = e.what();
        }
        grid.points.push_back(std::move(pt));
    }
    return grid;
}

bool detect_near_self_tangency(const EnvelopeSketch& sketch, double eps) {
    // Collect non-support samples with forward tangents.
    struct Sample {
        double x, y, tx, ty;
        size_t poly;
        size_t idx;
    };
    std::vector<Sample> samples;
    for (size_t pl = 0; pl < sketch.polylines.size(); ++pl) {
        const auto& poly = sketch.polylines[pl];
        double maxAbsY = 0;
        for (const auto& p : poly) maxAbsY = std::max(maxAbsY, std::abs(p[1]));
        if (maxAbsY < 1e-12) continue; // the support line
        for (size_t i = 0; i + 1 < poly.size(); ++i) {
            const double dx = poly[i + 1][0] - poly[i][0];
            const double dy = poly[i + 1][1] - poly[i][1];
            const double n = std::hypot(dx, dy);
            if (n == 0.0) continue;
            samples.push_back({poly[i][0], poly[i][1], dx / n, dy / n, pl, i});
        }
    }
    for (size_t a = 0; a < samples.size(); ++a)
        for (size_t s = a + 1; s < samples.size(); ++s) {
            const Sample &u = samples[a], &v = samples[s];
            if (u.poly == v.poly && (v.idx - u.idx) < 8) continue; // same arc neighborhood
            const double d = std::hypot(u.x - v.x, u.y - v.y);
            if (d > eps) continue;
            const double cross = std::abs(u.tx * v.ty - u.ty * v.tx);
            if (cross < 0.05) return true;
        }
    return false;
}

} // namespace germforge
