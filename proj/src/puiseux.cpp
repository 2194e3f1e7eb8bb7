#include "germforge/puiseux.hpp"

#include "germforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace germforge {

std::vector<PolygonSegment> newton_polygon(const Series2& g) {
    const NewtonSupport ns = newton_support(g);
    std::vector<PolygonSegment> segs;
    for (const NewtonSegment& s : ns.segments) {
        PolygonSegment ps;
        ps.from = s.from;
        ps.to = s.to;
        ps.mu = Rat(s.to.xi - s.from.xi, s.from.t - s.to.t);
        ps.mu.canonicalize();
        ps.latticeLength = s.latticeLength;
        segs.push_back(ps);
    }
    return segs;
}

namespace {

// ---------------------------------------------------------------------
// Generic Newton-Puiseux expansion over a scalar lane K.
// ---------------------------------------------------------------------

template <class K>
struct PTerm {
    long i; // xi-exponent (in the current, possibly ramified, parameter)
    long j; // t-exponent
    K c;
};

template <class K>
using PPoly = std::vector<PTerm<K>>;

struct RatLane {
    using K = Rat;
    static bool is_zero(const K& v) { return sgn(v) == 0; }
    static K add(const K& a, const K& b) { return a + b; }
    static K mul(const K& a, const K& b) { return a * b; }
    static K power(const K& a, long e) { return rat_pow(a, static_cast<unsigned>(e)); }
};

struct CxLane {
    using K = std::complex<double>;
    static constexpr double kTol = 1e-11;
    static bool is_zero(const K& v) { return std::abs(v) < kTol; }
    static K add(const K& a, const K& b) { return a + b; }
    static K mul(const K& a, const K& b) { return a * b; }
    static K power(K a, long e) {
        K r(1.0, 0.0);
        while (e > 0) {
            if (e & 1) r *= a;
            a *= a;
            e >>= 1;
        }
        return r;
    }
};

template <class Lane>
void normalize(PPoly<typename Lane::K>& p) {
    std::sort(p.begin(), p.end(), [](const auto& a, const auto& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    PPoly<typename Lane::K> out;
    for (auto& t : p) {
        if (!out.empty() && out.back().i == t.i && out.back().j == t.j)
            out.back().c = Lane::add(out.back().c, t.c);
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const auto& t) { return Lane::is_zero(t.c); });
    p = std::move(out);
}

inline Rat lane_div(const Rat& a, const Rat& b) { return a / b; }
inline std::complex<double> lane_div(const std::complex<double>& a, const std::complex<double>& b) {
    return a / b;
}

// F(x^q, x^p * (c + u)) / x^val, where val is the minimum of q*i + p*j.
template <class Lane>
PPoly<typename Lane::K> shift_substitute(const PPoly<typename Lane::K>& f, long q, long p,
                                         const typename Lane::K& c) {
    using K = typename Lane::K;
    long val = 0;
    bool first = true;
    for (const auto& t : f) {
        const long w = q * t.i + p * t.j;
        if (first || w < val) val = w, first = false;
    }
    PPoly<K> out;
    for (const auto& t : f) {
        const long base = q * t.i + p * t.j - val;
        // (c + u)^j = sum_k C(j,k) c^(j-k) u^k
        std::vector<K> cpow(static_cast<size_t>(t.j + 1), K(1));
        for (long m = 1; m <= t.j; ++m) cpow[static_cast<size_t>(m)] = Lane::mul(cpow[static_cast<size_t>(m - 1)], c);
        K binom(1);
        for (long k = 0; k <= t.j; ++k) {
            const K coeff = Lane::mul(binom, cpow[static_cast<size_t>(t.j - k)]);
            if (!Lane::is_zero(coeff)) out.push_back({base, k, Lane::mul(t.c, coeff)});
            if (k == t.j) break;
            binom = Lane::mul(binom, K(static_cast<int>(t.j - k)));
            binom = lane_div(binom, K(static_cast<int>(k + 1)));
        }
    }
    normalize<Lane>(out);
    return out;
}

// Lower hull of the exponent support; returns vertex chain with j
// strictly decreasing.
template <class K>
std::vector<std::pair<long, long>> lower_hull(const PPoly<K>& f) {
    std::map<long, long> minI; // per j: minimal i  (note: hull over (i, j))
    for (const auto& t : f) {
        auto it = minI.find(t.j);
        if (it == minI.end() || t.i < it->second) minI[t.j] = t.i;
    }
    // staircase in i ascending, j descending
    std::map<long, long> minJ;
    for (const auto& [j, i] : minI) {
        auto it = minJ.find(i);
        if (it == minJ.end() || j < it->second) minJ[i] = j;
    }
    std::vector<std::pair<long, long>> stair;
    long best = std::numeric_limits<long>::max();
    for (const auto& [i, j] : minJ) {
        if (j < best) {
            stair.emplace_back(i, j);
            best = j;
        }
    }
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : stair) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const long cross =
                (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    return hull;
}

// Characteristic polynomial along the segment from (i0,j0) to (i1,j1),
// j0 > j1, slope p/q: coefficients of c^((j - j1)/q), ascending.
template <class K>
std::vector<K> char_poly(const PPoly<K>& f, long i0, long j0, long i1, long j1, long p, long q) {
    (void)i0;
    const long len = (j0 - j1) / q;
    std::vector<K> chi(static_cast<size_t>(len + 1), K(0));
    for (const auto& t : f) {
        // On the segment: q*(i - i1) == p*(j1 - j)  with j1 <= j <= j0.
        if (t.j < j1 || t.j > j0) continue;
        if ((t.j - j1) % q != 0) continue;
        const long step = (t.j - j1) / q;
        if (t.i != i1 - p * step) continue;
        chi[static_cast<size_t>(step)] = t.c; // exponents on a segment are distinct
    }
    return chi;
}

// --- Rational root extraction -----------------------------------------

std::vector<Int> small_divisors(const Int& n, size_t cap = 4096) {
    std::vector<Int> divs;
    Int a = abs(n);
    if (sgn(a) == 0) return divs;
    // Trial division only pays off for moderate constants; larger ones
    // get handed to the numeric lane.
    if (a > Int("1000000000000")) return divs;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            divs.push_back(d);
            divs.push_back(a / d);
            if (divs.size() > cap) return {};
        }
    }
    return divs;
}

// Deflates rational roots out of chi; returns (root, multiplicity)
// pairs and leaves the root-free residual in chi.
std::vector<std::pair<Rat, int>> rational_roots(std::vector<Rat>& chi) {
    std::vector<std::pair<Rat, int>> found;
    auto degree = [&]() {
        int d = static_cast<int>(chi.size()) - 1;
        while (d > 0 && sgn(chi[static_cast<size_t>(d)]) == 0) --d;
        return d;
    };
    // (c = 0 is never a characteristic root: the segment endpoint
    // guarantees a nonzero constant term)
    while (degree() >= 1) {
        const int d = degree();
        std::optional<Rat> root;
        if (d == 1) {
            root = -chi[0] / chi[1];
        } else if (d == 2) {
            const Rat disc = chi[1] * chi[1] - Rat(4) * chi[2] * chi[0];
            if (const auto s = rat_sqrt_exact(disc))
                root = (-chi[1] + *s) / (Rat(2) * chi[2]);
        } else {
            // integer lift and divisor search for higher degrees
            Int lcmDen = 1;
            for (int k = 0; k <= d; ++k)
                mpz_lcm(lcmDen.get_mpz_t(), lcmDen.get_mpz_t(),
                        chi[static_cast<size_t>(k)].get_den().get_mpz_t());
            std::vector<Int> ic(static_cast<size_t>(d + 1));
            for (int k = 0; k <= d; ++k) {
                Rat v = chi[static_cast<size_t>(k)] * lcmDen;
                ic[static_cast<size_t>(k)] = v.get_num();
            }
            const auto ps = small_divisors(ic[0]);
            const auto qs = small_divisors(ic[static_cast<size_t>(d)]);
            if (ps.empty() || qs.empty()) break; // divisor search abandoned
            for (const Int& pn : ps) {
                for (const Int& qn : qs) {
                    for (int s : {1, -1}) {
                        Rat cand(pn * s, qn);
                        cand.canonicalize();
                        Rat acc(0);
                        for (int k = d; k >= 0; --k) acc = acc * cand + chi[static_cast<size_t>(k)];
                        if (sgn(acc) == 0) {
                            root = cand;
                            break;
                        }
                    }
                    if (root) break;
                }
                if (root) break;
            }
        }
        if (!root) break;
        // synthetic division by (c - root)
        std::vector<Rat> quo(static_cast<size_t>(d), Rat(0));
        Rat carry(0);
        for (int k = d; k >= 1; --k) {
            carry = chi[static_cast<size_t>(k)] + carry * (*root);
            quo[static_cast<size_t>(k - 1)] = carry;
        }
        chi.assign(quo.begin(), quo.end());
        if (!found.empty() && found.back().first == *root) found.back().second += 1;
        else found.emplace_back(*root, 1);
    }
    // merge duplicates
    std::vector<std::pair<Rat, int>> merged;
    for (auto& [r, m] : found) {
        bool hit = false;
        for (auto& [mr, mm] : merged)
            if (mr == r) {
                mm += m;
                hit = true;
            }
        if (!hit) merged.emplace_back(r, m);
    }
    return merged;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<Rat>& poly) {
    int d = static_cast<int>(poly.size()) - 1;
    while (d > 0 && sgn(poly[static_cast<size_t>(d)]) == 0) --d;
    std::vector<std::complex<double>> c(static_cast<size_t>(d + 1));
    for (int k = 0; k <= d; ++k) c[static_cast<size_t>(k)] = rat_d(poly[static_cast<size_t>(k)]);
    if (d <= 0) return {};
    if (d == 1) return {-c[0] / c[1]};
    if (d == 2) {
        const auto disc = c[1] * c[1] - 4.0 * c[2] * c[0];
        const auto s = std::sqrt(disc);
        return {(-c[1] + s) / (2.0 * c[2]), (-c[1] - s) / (2.0 * c[2])};
    }
    // Durand-Kerner
    std::vector<std::complex<double>> r(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) r[static_cast<size_t>(k)] = std::polar(0.4 + 0.9 * k, 0.9 * k + 0.4);
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc = 0.0;
        for (int k = d; k >= 0; --k) acc = acc * z + c[static_cast<size_t>(k)];
        return acc;
    };
    for (int iter = 0; iter < 400; ++iter) {
        double moved = 0.0;
        for (int k = 0; k < d; ++k) {
            std::complex<double> den = c[static_cast<size_t>(d)];
            for (int l = 0; l < d; ++l)
                if (l != k) den *= (r[static_cast<size_t>(k)] - r[static_cast<size_t>(l)]);
            const auto delta = eval(r[static_cast<size_t>(k)]) / den;
            r[static_cast<size_t>(k)] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return r;
}

// --- Expansion driver ---------------------------------------------------

struct Expansion {
    int maxTerms;
    Field field;
    std::vector<PuiseuxBranch> out;
};

void record_exact(PuiseuxBranch& b, const Rat& exp, const Rat& coeff) {
    b.terms.push_back({exp, coeff});
}

void record_numeric(PuiseuxBranch& b, const Rat& exp, const std::complex<double>& coeff) {
    b.numericTerms.push_back({exp, coeff});
}

void expand_cx(Expansion& ex, PPoly<std::complex<double>> f, PuiseuxBranch branch, Rat shift,
               long ram, int depth);

// Expands all branches of f (current parameter x with xi = x^(1/ram),
// accumulated exponent shift) appending to ex.out.
void expand_rat(Expansion& ex, PPoly<Rat> f, PuiseuxBranch branch, Rat shift, long ram, int depth) {
    // t == 0 exact solution / flat residual?
    long minJ = std::numeric_limits<long>::max();
    for (const auto& t : f) minJ = std::min(minJ, t.j);
    if (f.empty()) return; // truncated to nothing: no information
    if (minJ > 0) {
        // u^minJ divides f: the zero continuation is an exact branch.
        PuiseuxBranch done = branch;
        done.exactComplete = true;
        done.multiplicity = static_cast<int>(minJ);
        ex.out.push_back(done);
        PPoly<Rat> g;
        for (const auto& t : f) g.push_back({t.i, t.j - minJ, t.c});
        f = std::move(g);
        bool uComponentLeft = false;
        for (const auto& t : f)
            if (t.j > 0) uComponentLeft = true;
        if (!uComponentLeft) return; // only a unit (or x-only) cofactor
    }
    // drop pure x factor (no solutions u(x) lost)
    long minI = std::numeric_limits<long>::max();
    for (const auto& t : f) minI = std::min(minI, t.i);
    if (minI > 0) {
        for (auto& t : f) t.i -= minI;
    }
    if (depth >= ex.maxTerms) {
        if (depth > 0) ex.out.push_back(branch);
        return;
    }
    // a constant term blocks every u(x) -> 0 solution
    bool hasConst = false;
    for (const auto& t : f)
        if (t.i == 0 && t.j == 0) hasConst = true;
    if (hasConst) return;

    const auto hull = lower_hull(f);
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        const auto [i0, j0] = hull[s];
        const auto [i1, j1] = hull[s + 1];
        if (j0 <= j1) continue;
        if (i1 <= i0) continue; // mu must be positive for u -> 0
        const long dp = i1 - i0, dq = j0 - j1;
        const long g = std::gcd(dp, dq);
        const long p = dp / g, q = dq / g;
        const Rat exp = [&] {
            Rat e = shift + Rat(p) / Rat(ram * q);
            e.canonicalize();
            return e;
        }();
        // Characteristic roots come as y = c^q; a parameterized branch
        // needs c itself. A sign flip of the ramified parameter is the
        // same branch, so one root per q-th power class suffices.
        std::vector<Rat> chi = char_poly(f, i0, j0, i1, j1, p, q);
        std::vector<Rat> irrational; // y-roots whose c is not rational
        std::vector<int> irrationalMult;
        auto roots = rational_roots(chi);
        for (const auto& [y0, mult] : roots) {
            const auto c = rat_root_exact(y0, static_cast<int>(q));
            if (!c) {
                irrational.push_back(y0);
                irrationalMult.push_back(mult);
                continue;
            }
            PuiseuxBranch nb = branch;
            nb.ramification = static_cast<int>(ram * q);
            nb.multiplicity = mult;
            record_exact(nb, exp, *c);
            PPoly<Rat> nf = shift_substitute<RatLane>(f, q, p, *c);
            expand_rat(ex, std::move(nf), std::move(nb), exp, ram * q, depth + 1);
        }
        // Anything left needs an algebraic extension of Q.
        int rd = static_cast<int>(chi.size()) - 1;
        while (rd > 0 && sgn(chi[static_cast<size_t>(rd)]) == 0) --rd;
        const bool residualPoly = rd >= 1;
        if (residualPoly || !irrational.empty()) {
            std::vector<std::complex<double>> approxY;
            if (residualPoly) approxY = numeric_roots(chi);
            for (const Rat& y0 : irrational) approxY.emplace_back(rat_d(y0), 0.0);
            std::vector<std::complex<double>> approxC;
            for (const auto& y : approxY)
                approxC.push_back(std::pow(y, 1.0 / static_cast<double>(q)));
            if (ex.field == Field::Real) {
                PuiseuxBranch nb = branch;
                nb.ramification = static_cast<int>(ram * q);
                nb.field = Field::Real;
                // Residual recorded over y = (t / xi^mu)^q; rational
                // y-roots without a rational q-th root fold back in as
                // (y - y0) factors.
                std::vector<Rat> res = residualPoly ? chi : std::vector<Rat>{Rat(1)};
                for (size_t m = 0; m < irrational.size(); ++m) {
                    for (int rep = 0; rep < irrationalMult[m]; ++rep) {
                        std::vector<Rat> nxt(res.size() + 1, Rat(0));
                        for (size_t j = 0; j < res.size(); ++j) {
                            nxt[j + 1] += res[j];
                            nxt[j] -= res[j] * irrational[m];
                        }
                        res = std::move(nxt);
                    }
                }
                nb.residual = FactoredResidual{exp, res, approxC};
                nb.multiplicity = 1;
                ex.out.push_back(nb);
            } else {
                PPoly<std::complex<double>> fc;
                for (const auto& t : f)
                    fc.push_back({t.i, t.j, std::complex<double>(rat_d(t.c), 0.0)});
                for (const auto& c : approxC) {
                    if (CxLane::is_zero(c)) continue;
                    PuiseuxBranch nb = branch;
                    nb.ramification = static_cast<int>(ram * q);
                    nb.numeric = true;
                    nb.field = Field::Complex;
                    record_numeric(nb, exp, c);
                    PPoly<std::complex<double>> nf = shift_substitute<CxLane>(fc, q, p, c);
                    expand_cx(ex, std::move(nf), std::move(nb), exp, ram * q, depth + 1);
                }
            }
        }
    }
}

void expand_cx(Expansion& ex, PPoly<std::complex<double>> f, PuiseuxBranch branch, Rat shift,
               long ram, int depth) {
    long minJ = std::numeric_limits<long>::max();
    for (const auto& t : f) minJ = std::min(minJ, t.j);
    if (f.empty()) return;
    if (minJ > 0) {
        PuiseuxBranch done = branch;
        done.exactComplete = true;
        done.multiplicity = static_cast<int>(minJ);
        ex.out.push_back(done);
        PPoly<std::complex<double>> g;
        for (const auto& t : f) g.push_back({t.i, t.j - minJ, t.c});
        f = std::move(g);
        bool uComponentLeft = false;
        for (const auto& t : f)
            if (t.j > 0) uComponentLeft = true;
        if (!uComponentLeft) return;
    }
    long minI = std::numeric_limits<long>::max();
    for (const auto& t : f) minI = std::min(minI, t.i);
    if (minI > 0)
        for (auto& t : f) t.i -= minI;
    if (depth >= ex.maxTerms) {
        if (depth > 0) ex.out.push_back(branch);
        return;
    }
    bool hasConst = false;
    for (const auto& t : f)
        if (t.i == 0 && t.j == 0) hasConst = true;
    if (hasConst) return;

    const auto hull = lower_hull(f);
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        const auto [i0, j0] = hull[s];
        const auto [i1, j1] = hull[s + 1];
        if (j0 <= j1 || i1 <= i0) continue;
        const long dp = i1 - i0, dq = j0 - j1;
        const long g = std::gcd(dp, dq);
        const long p = dp / g, q = dq / g;
        // numeric characteristic polynomial
        const long len = (j0 - j1) / q;
        std::vector<std::complex<double>> chi(static_cast<size_t>(len + 1), 0.0);
        for (const auto& t : f) {
            if (t.j < j1 || t.j > j0) continue;
            if ((t.j - j1) % q != 0) continue;
            const long step = (t.j - j1) / q;
            if (t.i != i1 - p * step) continue;
            chi[static_cast<size_t>(step)] = t.c;
        }
        // roots via Durand-Kerner on the complex coefficients
        int d = static_cast<int>(chi.size()) - 1;
        while (d > 0 && std::abs(chi[static_cast<size_t>(d)]) < CxLane::kTol) --d;
        std::vector<std::complex<double>> roots;
        if (d == 1) roots = {-chi[0] / chi[1]};
        else if (d == 2) {
            const auto disc = chi[1] * chi[1] - 4.0 * chi[2] * chi[0];
            const auto sq = std::sqrt(disc);
            roots = {(-chi[1] + sq) / (2.0 * chi[2]), (-chi[1] - sq) / (2.0 * chi[2])};
        } else if (d >= 3) {
            std::vector<std::complex<double>> r(static_cast<size_t>(d));
            for (int k = 0; k < d; ++k) r[static_cast<size_t>(k)] = std::polar(0.5 + 0.7 * k, 1.1 * k + 0.3);
            for (int iter = 0; iter < 400; ++iter) {
                double moved = 0.0;
                for (int k = 0; k < d; ++k) {
                    std::complex<double> den = chi[static_cast<size_t>(d)];
                    for (int l = 0; l < d; ++l)
                        if (l != k) den *= (r[static_cast<size_t>(k)] - r[static_cast<size_t>(l)]);
                    std::complex<double> val = 0.0;
                    for (int m = d; m >= 0; --m) val = val * r[static_cast<size_t>(k)] + chi[static_cast<size_t>(m)];
                    const auto delta = val / den;
                    r[static_cast<size_t>(k)] -= delta;
                    moved = std::max(moved, std::abs(delta));
                }
                if (moved < 1e-14) break;
            }
            roots = r;
        }
        for (const auto& c : roots) {
            if (CxLane::is_zero(c)) continue;
            PuiseuxBranch nb = branch;
            nb.ramification = static_cast<int>(ram * q);
            nb.numeric = true;
            Rat exp = shift + Rat(p) / Rat(ram * q);
            exp.canonicalize();
            record_numeric(nb, exp, c);
            PPoly<std::complex<double>> nf = shift_substitute<CxLane>(f, q, p, c);
            expand_cx(ex, std::move(nf), std::move(nb), exp, ram * q, depth + 1);
        }
    }
}

} // namespace

std::vector<PuiseuxBranch> branches(const Series2& g, int maxTerms, Field field) {
    if (g.is_zero()) throw ContractError("branches: zero series");
    if (sgn(g.coeff(0, 0)) != 0) throw ContractError("branches: g(0,0) must vanish");

    PPoly<Rat> f;
    for (const auto& [e, c] : g.terms()) f.push_back({e.xi, e.t, c});
    normalize<RatLane>(f);

    Expansion ex{maxTerms, field, {}};
    expand_rat(ex, std::move(f), PuiseuxBranch{}, Rat(0), 1, 0);

    // The exact zero branch (t == 0) surfaces as an empty-term branch.
    std::vector<PuiseuxBranch> out = std::move(ex.out);
    for (auto& b : out) {
        if (b.field == Field::Complex) b.numeric = true;
        if (field == Field::Real) b.field = Field::Real;
        else if (b.numeric) b.field = Field::Complex;
    }
    return out;
}

std::optional<Poly1> solve_smooth_branch(const Series2& h, int len) {
    if (sgn(h.coeff(0, 0)) != 0) return std::nullopt;
    const Rat ct = h.coeff(0, 1);
    if (sgn(ct) == 0) return std::nullopt;
    Poly1 tau(len);
    const Poly1 id = Poly1::identity(len);
    for (int it = 0; it < 64; ++it) {
        const Poly1 res = h.compose_path(id, tau);
        if (res.is_zero()) break;
        // d_t h along the current curve
        const Poly1 slope = h.diff(Var::T).compose_path(id, tau);
        tau = tau - res * slope.reciprocal();
    }
    if (!h.compose_path(id, tau).is_zero()) return std::nullopt;
    return tau;
}

int branch_residual_order(const Series2& g, const PuiseuxBranch& b, int len) {
    if (b.numeric || b.residual) throw ContractError("branch_residual_order: exact branches only");
    Poly1 xs(len), ts(len);
    xs.set(b.ramification, Rat(1)); // xi = s^q
    for (const auto& term : b.terms) {
        Rat e = term.exp * b.ramification;
        if (e.get_den() != 1) throw ContractError("branch_residual_order: exponent not integral");
        const long k = e.get_num().get_si();
        if (k < len) ts.set(static_cast<int>(k), ts.coeff(static_cast<int>(k)) + term.coeff);
    }
    const Poly1 res = g.compose_path(xs, ts);
    if (res.is_zero()) return -1;
    return res.order();
}

std::pair<int, int> param_branch_order(const PlaneBranch& b) {
    if (b.X.is_zero() && b.Y.is_zero())
        throw ContractError("param_branch_order: zero branch");
    const int L = b.X.trunc();
    // joint exponent content
    int content = 0;
    for (int k = 1; k < L; ++k)
        if (sgn(b.X.coeff(k)) != 0 || sgn(b.Y.coeff(k)) != 0) content = std::gcd(content, k);
    if (content == 0) content = 1;
    Poly1 X(L), Y(L);
    for (int k = 0; k * content < L; ++k) {
        X.set(k, b.X.coeff(k * content));
        Y.set(k, b.Y.coeff(k * content));
    }
    const int vX = X.order(), vY = Y.order();
    const bool xLeads = vX <= vY;
    const int q = xLeads ? vX : vY;
    if (q >= L) throw ContractError("param_branch_order: zero branch");
    if (q == 1) return {1, 1};
    // Normalize the parameter so that the leading component is exactly
    // c * sigma^q, then read the other component in sigma.
    const Poly1& A = xLeads ? X : Y;
    const Poly1& B = xLeads ? Y : X;
    Poly1 unit(L);
    const Rat lead = A.coeff(q);
    for (int k = 0; k + q < L; ++k) unit.set(k, A.coeff(k + q) / lead);
    const Poly1 u = unit.root_of_unit_series(q);
    const Poly1 sigma = Poly1::identity(L) * u; // A = lead * sigma^q
    const Poly1 sInv = sigma.inverse_composition();
    const Poly1 Bn = B.compose(sInv);
    int p = 0;
    for (int k = q + 1; k < L; ++k) {
        if (sgn(Bn.coeff(k)) != 0 && k % q != 0) {
            p = k;
            break;
        }
    }
    if (p == 0) {
        const int vB = Bn.order();
        if (vB >= L) return {q, q}; // branch inside the leading axis
        return {std::max(vB, q), q};
    }
    return {p, q};
}

std::optional<int> contact_order(const PlaneBranch& b) {
    if (b.Y.is_zero()) return std::nullopt; // contained in the support
    auto [p, q] = param_branch_order(b);
    (void)p;
    if (q != 1) throw ContractError("contact_order: branch is not immersed");
    // Reparameterize by x and count the vanishing order of Y.
    const int L = b.X.trunc();
    if (b.X.order() != 1) {
        // immersed but vertical-ish: contact with y = 0 measured via Y order
        // against the x-coordinate is undefined; treat via parameter order.
        return b.Y.order() - 1;
    }
    const Poly1 xInv = b.X.inverse_composition();
    const Poly1 yOfX = b.Y.compose(xInv);
    if (yOfX.is_zero()) return std::nullopt;
    (void)L;
    return yOfX.order() - 1;
}

Side branch_side(const PlaneBranch& b) {
    if (b.Y.is_zero()) return Side::Inconclusive;
    // joint content reduction first (canonical parameterization)
    const int L = b.X.trunc();
    int content = 0;
    for (int k = 1; k < L; ++k)
        if (sgn(b.X.coeff(k)) != 0 || sgn(b.Y.coeff(k)) != 0) content = std::gcd(content, k);
    if (content == 0) content = 1;
    Poly1 Y(L);
    for (int k = 0; k * content < L; ++k) Y.set(k, b.Y.coeff(k * content));
    const int m = Y.order();
    if (m >= L) return Side::Inconclusive;
    const int s = sgn(Y.coeff(m));
    if (m % 2 == 1) return Side::BothSides;
    return s > 0 ? Side::OneSidePlus : Side::OneSideMinus;
}

} // namespace germforge
