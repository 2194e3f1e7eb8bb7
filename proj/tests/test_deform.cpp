#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germforge/deform.hpp"
#include "germforge/errors.hpp"

#include <cstdint>

using namespace germforge;

namespace {

const TruncBound B = total_degree(16);

struct Rng {
    uint64_t s;
    explicit Rng(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1)); }
};

} // namespace

TEST_CASE("catalog deformation directions") {
    auto spec = miniversal_spec(SingularityClass::make(ClassTag::S1, 2), B);
    REQUIRE(spec.directions.size() == 2);
    CHECK(spec.directions[0].str() == "t^3");
    CHECK(spec.directions[1].str() == "t^5");

    spec = miniversal_spec(SingularityClass::make(ClassTag::T, 3), B);
    REQUIRE(spec.directions.size() == 3);
    CHECK(spec.directions[0].str() == "t^2");
    CHECK(spec.directions[1].str() == "t^2*xi");
    CHECK(spec.directions[2].str() == "t^2*xi^2");

    spec = miniversal_spec(SingularityClass::make(ClassTag::II), B);
    CHECK(spec.directions.empty());

    spec = miniversal_spec(SingularityClass::make(ClassTag::S2_4), B);
    REQUIRE(spec.directions.size() == 4);
    CHECK(spec.directions[3].str() == "t^9");

    CHECK_THROWS_AS(miniversal_spec(SingularityClass::make(ClassTag::U), B), Error);
    CHECK_THROWS_AS(miniversal_spec(SingularityClass::make(ClassTag::S1_INF), B), Error);
}

TEST_CASE("deforming reclassifies along the diagram") {
    auto deformed = [&](const SingularityClass& c, std::vector<Rat> lambda) {
        const auto spec = miniversal_spec(c, B);
        const auto base = PrenormalForm::from_phi(normal_form_phi(c, B));
        const auto moved = apply_deformation(base, spec, lambda);
        return classify_prenormal(moved, 14).cls;
    };
    // zero deformation is the identity
    const auto base = PrenormalForm::from_phi(normal_form_phi(SingularityClass::make(ClassTag::S1, 1), B));
    const auto spec1 = miniversal_spec(SingularityClass::make(ClassTag::S1, 1), B);
    const auto same = apply_deformation(base, spec1, {Rat(0)});
    CHECK(same.phi == base.phi);
    CHECK(same.alpha == base.alpha);

    CHECK(deformed(SingularityClass::make(ClassTag::S1, 1), {rat(1, 2)}) ==
          SingularityClass::make(ClassTag::II));
    // the t^2 direction creates a first-class germ at the origin
    CHECK(deformed(SingularityClass::make(ClassTag::T, 1), {rat(1, 3)}) ==
          SingularityClass::make(ClassTag::I));
    // the t^2*xi direction of T2 makes the criminant branches transversal:
    // a second-class germ at the origin
    CHECK(deformed(SingularityClass::make(ClassTag::T, 2), {Rat(0), rat(1, 4)}) ==
          SingularityClass::make(ClassTag::II));
}

TEST_CASE("deformed classes stay inside the adjacency closure") {
    Rng rng(321);
    const std::vector<SingularityClass> cats{
        SingularityClass::make(ClassTag::S1, 2),
        SingularityClass::make(ClassTag::T, 2),
        SingularityClass::make(ClassTag::S2_2),
        SingularityClass::make(ClassTag::S2_3, 0, 1),
    };
    for (const auto& c : cats) {
        const auto spec = miniversal_spec(c, B);
        const auto base = PrenormalForm::from_phi(normal_form_phi(c, B));
        for (int it = 0; it < 12; ++it) {
            std::vector<Rat> lambda(spec.directions.size());
            for (auto& l : lambda) l = rat(rng.range(-2, 2), rng.range(1, 3));
            const auto moved = apply_deformation(base, spec, lambda);
            const auto cls = classify_prenormal(moved, 14).cls;
            CHECK(adjacency(c, cls)); // includes the trivial deformation
        }
    }
}

TEST_CASE("polynomial family discriminants") {
    // n = 1: x^2 + l1, double root exactly at l1 = 0
    CHECK(q_discriminant(QFamily{1, {Rat(0)}}) == Rat(0));
    CHECK(q_discriminant(QFamily{1, {Rat(1)}}) != Rat(0));

    // n = 2: resultant equals 4 l2^3 + 27 l1^2 on random rationals
    Rng rng(47);
    for (int it = 0; it < 30; ++it) {
        const Rat l1 = rat(rng.range(-8, 8), rng.range(1, 5));
        const Rat l2 = rat(rng.range(-8, 8), rng.range(1, 5));
        const Rat expect = Rat(4) * l2 * l2 * l2 + Rat(27) * l1 * l1;
        CHECK(q_discriminant(QFamily{2, {l1, l2}}) == expect);
    }

    // constructed double roots kill the discriminant: Q = (x-r)^2 (x+2r)
    for (int it = 0; it < 20; ++it) {
        const Rat r = rat(rng.range(-6, 6), rng.range(1, 4));
        const Rat l2 = Rat(-3) * r * r;
        const Rat l1 = Rat(2) * r * r * r;
        CHECK(q_discriminant(QFamily{2, {l1, l2}}) == Rat(0));
    }

    // n = 3 swallowtail: constructed double roots kill the discriminant.
    // (x - r)^2 (x^2 + 2 r x + c) has no x^3 term:
    //   = x^4 + (c - 3 r^2) x^2 + (2 r^3 - 2 r c) x + r^2 c
    for (int it = 0; it < 20; ++it) {
        const Rat r = rat(rng.range(-4, 4), rng.range(1, 3));
        const Rat c = rat(rng.range(-4, 4), rng.range(1, 3));
        const Rat A2 = c - Rat(3) * r * r;
        const Rat A1 = Rat(2) * r * r * r - Rat(2) * r * c;
        const Rat A0 = r * r * c;
        CHECK(q_discriminant(QFamily{3, {A0, A1, A2}}) == Rat(0));
    }
}

TEST_CASE("discriminant vanishes exactly when Q and Q' share a factor") {
    Rng rng(888);
    auto gcd_nonconstant = [](const QFamily& qf) {
        // Q and Q' over Q, plain Euclid
        const int dq = qf.n + 1;
        std::vector<Rat> a(static_cast<size_t>(dq + 1), Rat(0));
        a[static_cast<size_t>(dq)] = Rat(1);
        for (int i = 1; i <= qf.n; ++i) a[static_cast<size_t>(i - 1)] = qf.lambda[static_cast<size_t>(i - 1)];
        std::vector<Rat> b(a.size() - 1);
        for (size_t k = 1; k < a.size(); ++k) b[k - 1] = a[k] * static_cast<long>(k);
        auto trim = [](std::vector<Rat> p) {
            while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
            return p;
        };
        b = trim(b);
        while (!b.empty()) {
            // a mod b
            std::vector<Rat> r = a;
            while (r.size() >= b.size() && !r.empty()) {
                const Rat f = r.back() / b.back();
                const size_t off = r.size() - b.size();
                for (size_t k = 0; k < b.size(); ++k) r[off + k] -= f * b[k];
                r = trim(std::move(r));
                if (r.empty()) break;
            }
            a = b;
            b = trim(std::move(r));
        }
        return a.size() > 1;
    };
    for (int n = 1; n <= 3; ++n) {
        for (int it = 0; it < 40; ++it) {
            QFamily qf{n, {}};
            for (int i = 0; i < n; ++i) qf.lambda.push_back(rat(rng.range(-3, 3), rng.range(1, 3)));
            CHECK((sgn(q_discriminant(qf)) == 0) == gcd_nonconstant(qf));
        }
    }
}

TEST_CASE("real root counting") {
    // x^2 - 1
    CHECK(count_real_roots({Rat(-1), Rat(0), Rat(1)}) == 2);
    // x^2 + 1
    CHECK(count_real_roots({Rat(1), Rat(0), Rat(1)}) == 0);
    // x^3 - x
    CHECK(count_real_roots({Rat(0), Rat(-1), Rat(0), Rat(1)}) == 3);
    // (x-1)^2: one distinct real root
    CHECK(count_real_roots({Rat(1), Rat(-2), Rat(1)}) == 1);
    // quartic sign structure used for the discriminant cross-check
    CHECK(count_real_roots({Rat(-1), Rat(0), Rat(0), Rat(0), Rat(1)}) == 2);
}

TEST_CASE("grid stratification of the first-index flag") {
    // S1,2 axes (t^3, t^5): l1 != 0 -> II; l1 = 0, l2 != 0 -> S1,1; origin -> S1,2
    const auto grid = bifurcation_grid(SingularityClass::make(ClassTag::S1, 2),
                                       {GridAxis{Rat(-1), Rat(1), 3}, GridAxis{Rat(-1), Rat(1), 3}},
                                       B, 14);
    REQUIRE(grid.points.size() == 9);
    for (const auto& pt : grid.points) {
        REQUIRE(pt.cls.has_value());
        if (sgn(pt.lambda[0]) != 0) CHECK(pt.cls->tag == ClassTag::II);
        else if (sgn(pt.lambda[1]) != 0) CHECK(*pt.cls == SingularityClass::make(ClassTag::S1, 1));
        else CHECK(*pt.cls == SingularityClass::make(ClassTag::S1, 2));
    }
}

TEST_CASE("self-tangency detector on synthetic sketches") {
    EnvelopeSketch sk;
    sk.box = {-1, 1, -1, 1};
    sk.res = 64;
    // two nearly parallel arcs passing within eps of each other
    std::vector<std::array<double, 2>> a, b;
    for (int k = 0; k <= 40; ++k) {
        const double x = -1.0 + 0.05 * k;
        a.push_back({x, 0.2 + x * x});
        b.push_back({x, 0.21 + 0.9 * x * x});
    }
    sk.polylines = {a, b};
    CHECK(detect_near_self_tangency(sk, 0.05));

    // transversal crossing: not a near-tangency
    EnvelopeSketch cross;
    cross.box = sk.box;
    cross.res = 64;
    std::vector<std::array<double, 2>> c, d;
    for (int k = 0; k <= 40; ++k) {
        const double x = -1.0 + 0.05 * k;
        c.push_back({x, 0.3 + x});
        d.push_back({x, 0.3 - x});
    }
    cross.polylines = {c, d};
    CHECK(!detect_near_self_tangency(cross, 0.05));
}
