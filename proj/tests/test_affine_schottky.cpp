#include <doctest.h>

#include <cmath>
#include <numbers>

#include "crooked/affine_schottky.hpp"
#include "crooked/rng.hpp"

using namespace crooked;

namespace {
constexpr double pi = std::numbers::pi;

AffineSchottkyConfig validated_example() {
    AffineSchottkyConfig cfg = two_generator_example();
    ValidationReport rep = validate(cfg);
    REQUIRE(rep.ok);
    return cfg;
}

SpacePoint sample_x(const AffineSchottkyConfig& cfg, Rng& rng) {
    for (;;) {
        SpacePoint q{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (std::holds_alternative<InX>(x_contains(cfg, q))) return q;
    }
}
}  // namespace

TEST_CASE("shipped example validates") {
    AffineSchottkyConfig cfg = two_generator_example();
    ValidationReport rep = validate(cfg);
    CHECK(rep.ok);
    CHECK(cfg.validated);
    CHECK(rep.max_pairing_residual <= 1e-9);
    CHECK(rep.theta0 == doctest::Approx(pi / 6));
    CHECK(rep.eps0 == doctest::Approx(2.0 * std::sin(pi / 12)));
    CHECK(rep.min_halfspace_separation > 0.0);
    CHECK(rep.delta0 > 0.0);
    CHECK(rep.x_nonempty);
    CHECK(rep.halfspace_separations.size() == 6);
    CHECK(rep.star_separations.size() == 12);
    // Origin lies in X.
    CHECK(std::holds_alternative<InX>(x_contains(cfg, SpacePoint{0, 0, 0})));

    // Regression baselines for tau = 4, cross-checked against dense closure
    // sampling when first recorded.
    CHECK(rep.delta0 == doctest::Approx(0.54195164680413255).epsilon(1e-9));
    for (const auto& s : rep.halfspace_separations) {
        bool paired = s.a.i == s.b.i;  // H_i^+ against H_i^-
        CHECK(s.distance == doctest::Approx(paired ? 2.0 * std::sqrt(3.0) : 2.0).epsilon(1e-9));
    }
}

TEST_CASE("validate flags constructed failures") {
    SUBCASE("perturbed vertex breaks pairing") {
        AffineSchottkyConfig cfg = two_generator_example();
        cfg.hs_plus[0] = CrookedHalfSpace(cfg.hs_plus[0].u, cfg.hs_plus[0].p + Vector3{0, 0.1, 0});
        ValidationReport rep = validate(cfg);
        CHECK(!rep.ok);
        CHECK(rep.max_pairing_residual == doctest::Approx(0.1).epsilon(1e-6));
        CHECK(!cfg.validated);
    }
    SUBCASE("linear configuration: closures touch at the common vertex") {
        AffineSchottkyConfig cfg = two_generator_example(0.0);
        ValidationReport rep = validate(cfg);
        CHECK(!rep.ok);
        CHECK(rep.min_halfspace_separation == doctest::Approx(0.0));
        CHECK(rep.delta0 == doctest::Approx(0.0));
    }
    SUBCASE("crossed vertices genuinely overlap") {
        AffineSchottkyConfig cfg = two_generator_example(-2.0);
        ValidationReport rep = validate(cfg);
        CHECK(!rep.ok);
        CHECK(rep.min_halfspace_separation == doctest::Approx(0.0));
        // Witnessed intersection: the stem-quadrant rays of H_1^± overlap
        // on the x2 axis.
        SpacePoint common{0, 0, 0};
        CHECK(membership(common, cfg.hs_plus[0]) == Membership::InHalfSpace);
        CHECK(membership(common, cfg.hs_minus[0]) == Membership::InHalfSpace);
    }
}

TEST_CASE("word to isometry") {
    AffineSchottkyConfig cfg = validated_example();
    CHECK_THROWS_AS(Word(std::vector<GeneratorIndex>{{1, +1}, {1, -1}}), std::invalid_argument);
    Word empty;
    AffineIsometry id = word_to_isometry(cfg, empty);
    CHECK(rho(id.apply(SpacePoint{1, 2, 3}), SpacePoint{1, 2, 3}) <= 1e-12);

    Word w(std::vector<GeneratorIndex>{{1, +1}, {2, +1}});
    AffineIsometry composed = word_to_isometry(cfg, w);
    for (const SpacePoint& q : {SpacePoint{0, 0, 0}, SpacePoint{1, -2, 0.5}, SpacePoint{3, 3, -3}}) {
        SpacePoint expect = cfg.generators[0].apply(cfg.generators[1].apply(q));
        CHECK(rho(composed.apply(q), expect) <= 1e-9);
    }
    CHECK_THROWS_AS(word_to_isometry(cfg, Word(std::vector<GeneratorIndex>{{3, +1}})),
                    std::out_of_range);

    // Homomorphism on concatenate-then-reduce.
    Rng rng(71);
    auto alphabet = cfg.alphabet();
    for (int k = 0; k < 50; ++k) {
        Word a, b;
        for (int l = 0; l < 4; ++l) {
            a.push_reduce(alphabet[rng.below(4)]);
            b.push_reduce(alphabet[rng.below(4)]);
        }
        AffineIsometry fa = word_to_isometry(cfg, a);
        AffineIsometry fb = word_to_isometry(cfg, b);
        AffineIsometry lhs = word_to_isometry(cfg, Word::concat_reduce(a, b));
        AffineIsometry rhs = fa * fb;
        SpacePoint q{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        // Cancellation noise lives at the scale of the factors, not of the
        // reduced word.
        auto scale_of = [](const AffineIsometry& h) {
            double s = 1.0;
            for (double e : h.linear.m) s = std::max(s, std::abs(e));
            return s + euclid_norm(h.translation);
        };
        CHECK(rho(lhs.apply(q), rhs.apply(q)) <= 1e-13 * scale_of(fa) * scale_of(fb) + 1e-9);
    }
}

TEST_CASE("x_contains") {
    AffineSchottkyConfig cfg = validated_example();
    CHECK(std::holds_alternative<InX>(x_contains(cfg, SpacePoint{0, 0, 0})));
    // Deep inside H_1^+ (vertex (0,2,0), direction opening along +x1).
    SpacePoint deep = cfg.hs_plus[0].p + Vector3{0, 3, 0};
    auto loc = x_contains(cfg, deep);
    REQUIRE(std::holds_alternative<InHalfSpaceOf>(loc));
    CHECK(std::get<InHalfSpaceOf>(loc).index == GeneratorIndex(1, +1));
    // A vertex lies on its own crooked plane.
    CHECK(std::holds_alternative<OnBoundary>(x_contains(cfg, cfg.hs_plus[0].p)));
}

TEST_CASE("locate") {
    AffineSchottkyConfig cfg = validated_example();
    Rng rng(73);
    SUBCASE("interior points return the empty word") {
        SpacePoint q = sample_x(cfg, rng);
        auto res = locate(cfg, q, 100);
        REQUIRE(std::holds_alternative<LocateResult>(res));
        CHECK(std::get<LocateResult>(res).word.empty());
    }
    SUBCASE("one-step inversion") {
        for (int k = 0; k < 20; ++k) {
            SpacePoint x = sample_x(cfg, rng);
            SpacePoint q = cfg.generators[0].apply(x);
            auto res = locate(cfg, q, 100);
            REQUIRE(std::holds_alternative<LocateResult>(res));
            const auto& loc = std::get<LocateResult>(res);
            CHECK(loc.word.str() == "[1+]");
            CHECK(rho(loc.final, x) <= 1e-9);
        }
    }
    SUBCASE("random deep words round-trip") {
        auto alphabet = cfg.alphabet();
        for (int k = 0; k < 50; ++k) {
            Word w;
            int len = 1 + static_cast<int>(rng.below(6));
            while (static_cast<int>(w.size()) < len) w.push_reduce(alphabet[rng.below(4)]);
            SpacePoint x = sample_x(cfg, rng);
            SpacePoint q = word_to_isometry(cfg, w).apply(x);
            auto res = locate(cfg, q, 10000);
            REQUIRE(std::holds_alternative<LocateResult>(res));
            const auto& loc = std::get<LocateResult>(res);
            CHECK(loc.word == w);
            // The descent expands roundoff along the contracting directions,
            // so judge the recovery by re-applying gamma (well-conditioned)
            // rather than comparing final points.
            SpacePoint back = word_to_isometry(cfg, loc.word).apply(loc.final);
            CHECK(rho(back, q) <= 1e-12 * (1.0 + euclid_norm(q - SpacePoint{})));
            CHECK(loc.word.has_no_immediate_backtrack());
        }
    }
    SUBCASE("box points round-trip to 1e-7 absolute") {
        for (int k = 0; k < 200; ++k) {
            SpacePoint q{rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-20, 20)};
            auto res = locate(cfg, q, 10000);
            REQUIRE(std::holds_alternative<LocateResult>(res));
            const auto& loc = std::get<LocateResult>(res);
            SpacePoint back = word_to_isometry(cfg, loc.word).apply(loc.final);
            CHECK(rho(back, q) <= 1e-7);
        }
    }
    SUBCASE("unvalidated configurations are rejected") {
        AffineSchottkyConfig raw = two_generator_example();
        CHECK_THROWS_AS(locate(raw, SpacePoint{}, 10), std::logic_error);
    }
    SUBCASE("max_steps must be positive") {
        CHECK_THROWS_AS(locate(cfg, SpacePoint{}, 0), std::invalid_argument);
    }
}

TEST_CASE("tile enumeration counts") {
    AffineSchottkyConfig cfg = validated_example();
    CHECK(enumerate_tiles(cfg, 0).size() == 1);
    CHECK(enumerate_tiles(cfg, 1).size() == 5);        // 1 + 4
    CHECK(enumerate_tiles(cfg, 2).size() == 17);       // 1 + 4 + 12
    auto tiles = enumerate_tiles(cfg, 2);
    for (const auto& t : tiles) CHECK(t.faces.size() == 4);
    CHECK_THROWS_AS(enumerate_tiles(cfg, -1), std::invalid_argument);
}

TEST_CASE("affine ping-pong over words of length <= 4") {
    AffineSchottkyConfig cfg = validated_example();
    Rng rng(79);
    std::vector<SpacePoint> xs;
    for (int k = 0; k < 100; ++k) xs.push_back(sample_x(cfg, rng));
    for (const auto& w : reduced_words_up_to(2, 4)) {
        if (w.empty()) continue;
        AffineIsometry gamma = word_to_isometry(cfg, w);
        for (const auto& x : xs) {
            SpacePoint y = gamma.apply(x);
            auto loc = x_contains(cfg, y);
            REQUIRE(std::holds_alternative<InHalfSpaceOf>(loc));
            CHECK(std::get<InHalfSpaceOf>(loc).index == w.front());
        }
    }
}

TEST_CASE("nested sequence") {
    AffineSchottkyConfig cfg = validated_example();
    Rng rng(83);
    SUBCASE("located points are rejected") {
        SpacePoint q = sample_x(cfg, rng);
        CHECK_THROWS_AS(nested_sequence(cfg, q, 3), std::domain_error);
    }
    SUBCASE("synthetic deep point yields a nested chain") {
        auto alphabet = cfg.alphabet();
        Word deep;
        while (deep.size() < 9) deep.push_reduce(alphabet[rng.below(4)]);
        SpacePoint x = sample_x(cfg, rng);
        SpacePoint q = word_to_isometry(cfg, deep).apply(x);
        NestedSequence seq = nested_sequence(cfg, q, 5);
        CHECK(seq.terms.size() == 5);
        // First index carries an interval shorter than pi/2.
        SchottkyConfig lc = cfg.linear_config();
        CHECK(lc.interval(seq.terms[0].index).length() < pi / 2);
        // Side condition along the chain.
        for (std::size_t k = 1; k < seq.terms.size(); ++k)
            CHECK(seq.terms[k].index != seq.terms[k - 1].index.inverse());
        // The adjusted point lies in every H_k; strict nesting checked by
        // sampling H_{k+1} ⊂ H_k.
        for (const auto& t : seq.terms)
            CHECK(membership(seq.adjusted_point, t.half_space) == Membership::InHalfSpace);
        for (std::size_t k = 0; k + 1 < seq.terms.size(); ++k) {
            const auto& outer = seq.terms[k].half_space;
            const auto& inner = seq.terms[k + 1].half_space;
            int found = 0;
            for (int s = 0; s < 4000 && found < 60; ++s) {
                SpacePoint q2{seq.adjusted_point.x1 + rng.uniform(-30, 30),
                              seq.adjusted_point.x2 + rng.uniform(-30, 30),
                              seq.adjusted_point.x3 + rng.uniform(-30, 30)};
                if (membership(q2, inner) != Membership::InHalfSpace) continue;
                ++found;
                CHECK(membership(q2, outer) == Membership::InHalfSpace);
            }
            CHECK(found > 0);
        }
    }
    SUBCASE("two-step initial adjustment") {
        // Deep point whose descent starts in H_1^-, the inverse of the
        // chosen first letter (1,+); the adjustment must route through a
        // third half-space first.
        auto alphabet = cfg.alphabet();
        Word deep = Word::single(GeneratorIndex(1, -1));
        while (deep.size() < 8) deep.push_reduce(alphabet[rng.below(4)]);
        SpacePoint q = word_to_isometry(cfg, deep).apply(sample_x(cfg, rng));
        REQUIRE(std::holds_alternative<InHalfSpaceOf>(x_contains(cfg, q)));
        REQUIRE(std::get<InHalfSpaceOf>(x_contains(cfg, q)).index == GeneratorIndex(1, -1));
        NestedSequence seq = nested_sequence(cfg, q, 3);
        CHECK(seq.terms[0].index == GeneratorIndex(1, +1));
        CHECK(membership(seq.adjusted_point, seq.terms[0].half_space) == Membership::InHalfSpace);
    }
}

TEST_CASE("asymmetric and three-generator configurations") {
    Rng rng(131);
    SUBCASE("asymmetric two-generator") {
        AffineSchottkyConfig cfg = axis_translated_config(
            {{Interval(2.30, 3.30), Interval(-0.40, 0.40)},
             {Interval(4.00, 5.40), Interval(0.90, 1.70)}},
            {5.0, 4.0});
        ValidationReport rep = validate(cfg);
        REQUIRE(rep.ok);
        CHECK(rep.delta0 > 0.0);
        // Different interval lengths: the angle of each half-space differs.
        CHECK(angle(cfg.hs_plus[0]) == doctest::Approx(0.8));
        CHECK(angle(cfg.hs_minus[1]) == doctest::Approx(1.4));
        // Point location still covers the box.
        for (int k = 0; k < 100; ++k) {
            SpacePoint q{rng.uniform(-15, 15), rng.uniform(-15, 15), rng.uniform(-15, 15)};
            auto res = locate(cfg, q, 10000);
            REQUIRE(std::holds_alternative<LocateResult>(res));
            SpacePoint back =
                word_to_isometry(cfg, std::get<LocateResult>(res).word).apply(
                    std::get<LocateResult>(res).final);
            CHECK(rho(back, q) <= 1e-7);
        }
    }
    SUBCASE("three generators") {
        double lens[6] = {0.7, 0.6, 0.8, 0.5, 0.9, 0.6};
        double gaps[6] = {0.35, 0.40, 0.35, 0.40, 0.35, 0.0};
        std::vector<Interval> iv;
        double pos = 0.1;
        for (int k = 0; k < 6; ++k) {
            iv.emplace_back(pos, pos + lens[k]);
            pos += lens[k] + gaps[k];
        }
        AffineSchottkyConfig cfg = axis_translated_config(
            {{iv[0], iv[1]}, {iv[2], iv[3]}, {iv[4], iv[5]}}, {8.0, 8.0, 8.0});
        ValidationReport rep = validate(cfg);
        REQUIRE(rep.ok);
        CHECK(rep.halfspace_separations.size() == 15);  // C(6,2)
        CHECK(rep.star_separations.size() == 30);       // 2m(2m-1)
        CHECK(enumerate_tiles(cfg, 1).size() == 7);     // 1 + 2m
        // Ping-pong and the eps0 criterion carry over.
        for (const auto& w : reduced_words_up_to(3, 3)) {
            if (w.empty()) continue;
            SpacePoint x;
            for (;;) {
                SpacePoint q{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
                if (std::holds_alternative<InX>(x_contains(cfg, q))) {
                    x = q;
                    break;
                }
            }
            SpacePoint y = word_to_isometry(cfg, w).apply(x);
            auto loc = x_contains(cfg, y);
            REQUIRE(std::holds_alternative<InHalfSpaceOf>(loc));
            CHECK(std::get<InHalfSpaceOf>(loc).index == w.front());
            if (w.is_cyclically_reduced()) {
                double h = hyperbolic_data(cfg.linear_config().word_isometry(w)).hyperbolicity();
                CHECK(h >= rep.eps0 - 1e-9);
            }
        }
    }
}

TEST_CASE("hyperbolicity audit") {
    AffineSchottkyConfig cfg = validated_example();
    double eps0 = 2.0 * std::sin(pi / 12);

    SUBCASE("identity and unreduced words are rejected") {
        CHECK_THROWS_AS(hyperbolicity_audit(cfg, {Word{}}), std::invalid_argument);
    }
    SUBCASE("cyclically reduced words carry eps0") {
        std::vector<Word> words;
        for (const auto& w : reduced_words_up_to(2, 4))
            if (!w.empty() && w.is_cyclically_reduced()) words.push_back(w);
        for (const auto& a : hyperbolicity_audit(cfg, words)) {
            CHECK(a.cyclically_reduced);
            REQUIRE(a.guarantee.has_value());
            CHECK(*a.guarantee == doctest::Approx(eps0));
            CHECK(a.guarantee_holds);
            CHECK(a.actual >= eps0 - 1e-9);
        }
    }
    SUBCASE("conjugate family gets the distorted guarantee") {
        for (int k1 = 1; k1 <= 2; ++k1) {
            std::vector<Word> words;
            for (int n = 1; n <= 5; ++n) {
                std::vector<GeneratorIndex> letters;
                for (int r = 0; r < k1; ++r) letters.emplace_back(1, +1);
                letters.emplace_back(2, +1);
                for (int r = 0; r < n; ++r) letters.emplace_back(1, -1);
                words.emplace_back(letters);
            }
            SchottkyConfig lc = cfg.linear_config();
            Word psi_word;
            for (int r = 0; r < k1; ++r) psi_word.push_reduce(GeneratorIndex(1, +1));
            double expect_k = distortion_bound(lc.word_isometry(psi_word));
            for (const auto& a : hyperbolicity_audit(cfg, words)) {
                CHECK(!a.cyclically_reduced);
                CHECK(a.k1 == k1);
                REQUIRE(a.guarantee.has_value());
                CHECK(a.distortion == doctest::Approx(expect_k).epsilon(1e-9));
                CHECK(*a.guarantee == doctest::Approx(eps0 / expect_k).epsilon(1e-9));
                CHECK(a.guarantee_holds);
            }
        }
    }
}
