#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/classify.hpp"
#include "germforge/envelope.hpp"
#include "germforge/errors.hpp"

#include <cmath>

using namespace germforge;

namespace {

const TruncBound B = total_degree(16);

Series2 tpow(int k) { return Series2::monomial(Rat(1), 0, k, B); }

PrenormalForm pfOf(const SingularityClass& c) {
    return PrenormalForm::from_phi(normal_form_phi(c, B));
}

} // namespace

TEST_CASE("second stable class: exact cubic branch") {
    // phi = t^2 xi: branch t = 2 xi, image (3 xi, 4 xi^3), y = (4/27) x^3
    const auto rep = envelope_branches(pfOf(SingularityClass::make(ClassTag::II)), 12);
    REQUIRE(rep.otherBranches.size() == 1);
    const auto& br = rep.otherBranches[0];
    CHECK(br.branch.X.coeff(1) == Rat(3));
    CHECK(br.branch.Y.coeff(3) == Rat(4));
    CHECK(br.branch.Y.coeff(2) == Rat(0));
    CHECK(br.order == std::pair<int, int>(1, 1));
    REQUIRE(br.contact.has_value());
    CHECK(*br.contact == 2);
}

TEST_CASE("first stable class: support only") {
    const auto rep = envelope_branches(pfOf(SingularityClass::make(ClassTag::I)), 12);
    CHECK(rep.otherBranches.empty());
    CHECK(rep.unresolved.empty());
    CHECK(rep.support.Y.is_zero());
}

TEST_CASE("smooth branch contact orders of the T classes") {
    for (int n = 1; n <= 3; ++n) {
        const auto rep = envelope_branches(pfOf(SingularityClass::make(ClassTag::T, n)), 14);
        REQUIRE(rep.otherBranches.size() == 1);
        const auto& br = rep.otherBranches[0];
        CHECK(br.order == std::pair<int, int>(1, 1));
        REQUIRE(br.contact.has_value());
        CHECK(*br.contact == 3 * n + 2);
    }
}

TEST_CASE("cusp orders of the S1 classes, one-sided") {
    for (int n = 1; n <= 3; ++n) {
        const auto rep = envelope_branches(pfOf(SingularityClass::make(ClassTag::S1, n)), 14);
        REQUIRE(rep.otherBranches.size() == 1);
        const auto& br = rep.otherBranches[0];
        CHECK(br.order == std::pair<int, int>(2 * n + 3, 2));
        CHECK((br.side == Side::OneSidePlus || br.side == Side::OneSideMinus));
    }
}

TEST_CASE("degenerate second-index classes have order (5,3)") {
    for (const auto& c : {SingularityClass::make(ClassTag::S2_2),
                          SingularityClass::make(ClassTag::S2_3, 0, 1),
                          SingularityClass::make(ClassTag::S2_3, 0, -1),
                          SingularityClass::make(ClassTag::S2_4)}) {
        const auto rep = envelope_branches(pfOf(c), 14);
        REQUIRE(rep.otherBranches.size() == 1);
        CHECK(rep.otherBranches[0].order == std::pair<int, int>(5, 3));
    }
}

TEST_CASE("higher criminant index gives the (n+3, n+1) orders") {
    // genuinely third-index input
    const Series2 tPxi = Series2::t(B) + Series2::xi(B);
    const Series2 phi = tpow(2) * tPxi + tpow(6) + tpow(7);
    const auto rep = envelope_branches(PrenormalForm::from_phi(phi), 14);
    REQUIRE(rep.otherBranches.size() == 1);
    CHECK(rep.otherBranches[0].order == std::pair<int, int>(6, 4));
}

TEST_CASE("numeric trace follows the exact branch") {
    const auto pf = pfOf(SingularityClass::make(ClassTag::II));
    const EnvelopeSketch sk = trace_numeric(pf, {-0.5, 0.5, -0.5, 0.5}, 200);
    REQUIRE(sk.polylines.size() >= 2);
    // pick the polyline farthest from the support and compare with
    // y = (4/27) x^3
    double worst = 0.0;
    bool checked = false;
    for (const auto& pl : sk.polylines) {
        double maxY = 0.0;
        for (const auto& p : pl) maxY = std::max(maxY, std::abs(p[1]));
        if (maxY < 1e-9) continue; // support line
        checked = true;
        for (const auto& p : pl)
            worst = std::max(worst, std::abs(p[1] - (4.0 / 27.0) * p[0] * p[0] * p[0]));
    }
    REQUIRE(checked);
    CHECK(worst < 2e-5);

    // preimages sit on the criminant within grid tolerance
    const Series2 g = pf.phi.diff(Var::T) - pf.phi.diff(Var::Xi);
    for (const auto& pl : sk.sourcePolylines)
        for (const auto& p : pl) CHECK(std::abs(g.eval(p[0], p[1])) < 1e-2 / 200);
}

TEST_CASE("trace of the first stable class shows only the support") {
    const auto pf = pfOf(SingularityClass::make(ClassTag::I));
    const EnvelopeSketch sk = trace_numeric(pf, {-0.5, 0.5, -0.5, 0.5}, 64);
    REQUIRE(sk.polylines.size() == 1);
    for (const auto& p : sk.polylines[0]) CHECK(std::abs(p[1]) < 1e-12);
}

TEST_CASE("emitters are byte-deterministic and well-formed") {
    const auto pf = pfOf(SingularityClass::make(ClassTag::II));
    const EnvelopeSketch sk = trace_numeric(pf, {-0.5, 0.5, -0.5, 0.5}, 64);
    const std::string svg1 = emit_svg(sk), svg2 = emit_svg(sk);
    CHECK(svg1 == svg2);
    CHECK(svg1.find("<svg") == 0);
    // two contour components: support and branch
    size_t paths = 0, at = 0;
    while ((at = svg1.find("<path", at)) != std::string::npos) {
        ++paths;
        ++at;
    }
    CHECK(paths == 2);

    const std::string csv = emit_csv(sk);
    CHECK(csv.rfind("polyline,x,y\n", 0) == 0);

    EnvelopeSketch empty;
    empty.box = {0, 1, 0, 1};
    const std::string esvg = emit_svg(empty);
    CHECK(esvg.find("<svg") == 0);
    CHECK(emit_csv(empty) == "polyline,x,y\n");
}

TEST_CASE("trace stays near the symbolic branches across the catalog") {
    // every traced point lies within 10 * (box diagonal / res) of the
    // truncated exact envelope (support or second branch)
    const int res = 64;
    const std::array<double, 4> box{-0.25, 0.25, -0.25, 0.25};
    const double tol = 10.0 * std::hypot(box[1] - box[0], box[3] - box[2]) / res;
    for (const auto& c : {SingularityClass::make(ClassTag::II),
                          SingularityClass::make(ClassTag::S1, 1),
                          SingularityClass::make(ClassTag::T, 1),
                          SingularityClass::make(ClassTag::S2_2)}) {
        const auto pf = pfOf(c);
        const auto rep = envelope_branches(pf, 14);
        const EnvelopeSketch sk = trace_numeric(pf, box, res);
        for (const auto& pl : sk.polylines) {
            for (const auto& p : pl) {
                double best = std::abs(p[1]); // distance to the support y=0
                for (const auto& br : rep.otherBranches) {
                    for (int k = -2 * res; k <= 2 * res; ++k) {
                        const double s = 1.5 * k / res;
                        const double dx = br.branch.X.eval(s) - p[0];
                        const double dy = br.branch.Y.eval(s) - p[1];
                        best = std::min(best, std::hypot(dx, dy));
                    }
                }
                CHECK(best <= tol);
            }
        }
    }
}

TEST_CASE("branch orders survive admissible coordinate changes") {
    const Series2 phi = normal_form_phi(SingularityClass::make(ClassTag::S1, 2), B);
    const MapGerm f(Series2::xi(B) + Series2::t(B), phi);
    // a fixed left jet and a fiber-preserving right change
    const Series2 X = Series2::xi(B), T = Series2::t(B);
    const Series2 u = X + (X * X).scaled(rat(1, 3));
    const Series2 v = T.scaled(Rat(2)) + (X * X).scaled(rat(-1, 2));
    MapGerm moved(u.substitute(f.p, f.q), v.substitute(f.p, f.q));
    const Series2 Xi = X.scaled(Rat(2)) + (X * X).scaled(rat(1, 4));
    const Series2 Tt = T + (T * X).scaled(rat(1, 2));
    moved = MapGerm(moved.p.substitute(Xi, Tt), moved.q.substitute(Xi, Tt));
    const auto pf = to_prenormal(require_tangential(moved, 8));
    const auto rep = envelope_branches(pf, 14);
    REQUIRE(rep.otherBranches.size() == 1);
    CHECK(rep.otherBranches[0].order == std::pair<int, int>(7, 2));
    CHECK((rep.otherBranches[0].side == Side::OneSidePlus ||
           rep.otherBranches[0].side == Side::OneSideMinus));
}
