#include <doctest.h>

#include "helpers.hpp"
#include "qif/dist.hpp"
#include "qif/errors.hpp"
#include "qif/gain.hpp"

using namespace qif;
using qif::testing::labels;

TEST_SUITE("core") {

TEST_CASE("make_dist accepts priors and sub-priors") {
    Dist d = make_dist({"a", "b"}, {0.1, 0.9}, false);
    CHECK(d[0] == 0.1);
    CHECK(d[1] == 0.9);
    CHECK_FALSE(d.is_sub());

    Dist u = make_dist({"a", "b", "c"}, {1.0 / 3, 1.0 / 3, 1.0 / 3}, false);
    CHECK(u.total() == doctest::Approx(1.0).epsilon(1e-12));

    Dist s = make_dist({"a", "b", "c"}, {0.0, 0.49, 0.50}, true);
    CHECK(s.is_sub());
    CHECK(s.total() == doctest::Approx(0.99).epsilon(1e-12));
}

TEST_CASE("make_dist rejects invalid mass") {
    CHECK_THROWS_AS(make_dist({"a", "b"}, {-0.1, 1.1}, false), Error);
    CHECK_THROWS_AS(make_dist({"a", "b"}, {0.5, 0.6}, false), Error);
    CHECK_THROWS_AS(make_dist({"a", "b"}, {0.4, 0.5}, false), Error);
    CHECK_THROWS_AS(make_dist({"a", "a"}, {0.5, 0.5}, false), Error);
    try {
        make_dist({"a", "b"}, {0.4, 0.5}, false);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_normalized);
    }
    try {
        make_dist({"a", "a"}, {0.5, 0.5}, false);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::duplicate_label);
    }
}

TEST_CASE("marginals of products and hand-built joints") {
    Dist p1({"a", "b"}, {0.3, 0.7});
    Dist p2({"u", "v", "w"}, {0.2, 0.5, 0.3});
    JointDist prod = JointDist::product({p1, p2});
    auto margs = prod.marginals();
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(margs[0][i] == doctest::Approx(p1[i]).epsilon(1e-14));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(margs[1][i] == doctest::Approx(p2[i]).epsilon(1e-14));

    JointDist j({{"a", "b"}, {"u", "v"}}, {0.2, 0.3, 0.5, 0.0});
    auto m = j.marginals();
    CHECK(m[0][0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m[0][1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m[1][0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(m[1][1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m[0].is_sub() == j.is_sub());
}

TEST_CASE("jointly supported detection") {
    Dist p1({"a", "b"}, {0.3, 0.7});
    Dist p2({"u", "v"}, {0.6, 0.4});
    CHECK(is_jointly_supported(JointDist::product({p1, p2})));

    CHECK_FALSE(is_jointly_supported(lift_shared_prior(Dist({"0", "1"}, {0.1, 0.9}))));

    JointDist j({{"a", "b"}, {"u", "v"}}, {0.2, 0.3, 0.5, 0.0});
    CHECK_FALSE(is_jointly_supported(j)); // pi1[b]*pi2[v] != 0 but pi[b,v] = 0
}

TEST_CASE("diagonal lifting of a prior") {
    Dist pi({"0", "1"}, {0.1, 0.9});
    JointDist dag = lift_shared_prior(pi);
    CHECK(dag.at(0, 0) == 0.1);
    CHECK(dag.at(0, 1) == 0.0);
    CHECK(dag.at(1, 0) == 0.0);
    CHECK(dag.at(1, 1) == 0.9);

    // marginals reproduce the prior exactly (single nonzero term per slice)
    auto margs = dag.marginals();
    CHECK(margs[0][0] == 0.1);
    CHECK(margs[0][1] == 0.9);
    CHECK(margs[1][0] == 0.1);
    CHECK(margs[1][1] == 0.9);

    JointDist point = lift_shared_prior(Dist({"o"}, {1.0}));
    CHECK(point.at(0, 0) == 1.0);

    JointDist disc = lift_shared_prior(Dist::uniform({"a", "b", "c"}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j2 = 0; j2 < 3; ++j2)
            CHECK(disc.at(i, j2) == (i == j2 ? 1.0 / 3 : 0.0));
}

TEST_CASE("gain constructors match their definitions") {
    GainFn id = gain_identity({"0", "1"});
    CHECK(id.kind() == GainKind::identity);
    CHECK(id.at(0, 0) == 1.0);
    CHECK(id.at(0, 1) == 0.0);
    CHECK(is_identity_gain(id));

    GainFn two = gain_ktries({"a", "b", "c"}, 2);
    CHECK(two.n_guesses() == 6); // {a},{b},{c},{a+b},{a+c},{b+c}
    std::size_t ab = 3;          // singletons first, then pairs in order
    CHECK(two.guesses()[ab] == "{a+b}");
    CHECK(two.at(ab, 0) == 1.0);
    CHECK(two.at(ab, 2) == 0.0);

    GainFn bin = gain_binary({{"a", "b"}}, {"a", "b", "c"});
    CHECK(bin.n_guesses() == 1);
    CHECK(bin.at(0, 0) == 1.0);
    CHECK(bin.at(0, 1) == 1.0);
    CHECK(bin.at(0, 2) == 0.0);

    CHECK_THROWS_AS(gain_identity({}), Error);
    CHECK_THROWS_AS(gain_binary({}, {"a"}), Error);
    CHECK_THROWS_AS(gain_ktries({}, 2), Error);
}

TEST_CASE("shared-gain lifting pays only on matched pairs") {
    GainFn id = gain_identity({"0", "1"});
    JointGainFn dag = lift_shared_gain(id);
    const Shape& ws = dag.guess_shape();
    const Shape& xs = dag.secret_shape();
    for (std::size_t wf = 0; wf < ws.size(); ++wf)
        for (std::size_t xf = 0; xf < xs.size(); ++xf) {
            bool diag = ws.coord(wf, 0) == ws.coord(wf, 1) && xs.coord(xf, 0) == xs.coord(xf, 1);
            bool hit = diag && ws.coord(wf, 0) == xs.coord(xf, 0);
            CHECK(dag.at(wf, xf) == (hit ? 1.0 : 0.0));
        }

    GainFn flat({"w"}, {"a", "b"}, {1.0, 1.0});
    JointGainFn fdag = lift_shared_gain(flat);
    CHECK(fdag.at(0, 0) == 1.0); // ((w,w),(a,a))
    CHECK(fdag.at(0, 1) == 0.0); // ((w,w),(a,b))
    CHECK(fdag.at(0, 3) == 1.0); // ((w,w),(b,b))

    GainFn two = gain_ktries({"a", "b", "c"}, 2);
    JointGainFn tdag = lift_shared_gain(two);
    const Shape& tws = tdag.guess_shape();
    const Shape& txs = tdag.secret_shape();
    for (std::size_t wf = 0; wf < tws.size(); ++wf)
        for (std::size_t xf = 0; xf < txs.size(); ++xf) {
            std::size_t w1 = tws.coord(wf, 0), w2 = tws.coord(wf, 1);
            std::size_t x1 = txs.coord(xf, 0), x2 = txs.coord(xf, 1);
            double expected = (w1 == w2 && x1 == x2) ? two.at(w1, x1) : 0.0;
            CHECK(tdag.at(wf, xf) == expected);
        }
}

TEST_CASE("joint gain coupling is validated exhaustively") {
    GainFn g1 = gain_identity({"a", "b"});
    GainFn g2 = gain_identity({"u", "v"});
    JointGainFn prod = JointGainFn::product({g1, g2});
    CHECK(prod.is_product());
    CHECK(prod.coupling() == Coupling::strict);

    // a table paying a worthless pair is rejected
    std::vector<double> bad(prod.guess_shape().size() * prod.secret_shape().size(), 0.0);
    bad[0 * 4 + 0] = 1.0; // ((a,u),(a,u)): fine
    bad[0 * 4 + 1] = 0.5; // ((a,u),(a,v)): g2(u,v) = 0, must stay worthless
    for (std::size_t wf = 1; wf < 4; ++wf) {
        std::size_t w1 = wf / 2, w2 = wf % 2;
        for (std::size_t xf = 0; xf < 4; ++xf)
            bad[wf * 4 + xf] = (w1 == xf / 2 && w2 == xf % 2) ? 1.0 : 0.0;
    }
    CHECK_THROWS_AS(JointGainFn::from_table({g1, g2}, bad), Error);

    // zeroing a worthy pair is rejected too
    std::vector<double> bad2(16, 0.0);
    CHECK_THROWS_AS(JointGainFn::from_table({g1, g2}, bad2), Error);
}

TEST_CASE("product joint gains satisfy the coupling on random instances") {
    Rng rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + rng.below(2);
        std::vector<GainFn> comps;
        for (std::size_t i = 0; i < n; ++i)
            comps.push_back(qif::testing::random_gain(
                rng, labels("x" + std::to_string(i), 2 + rng.below(3)), 2 + rng.below(3)));
        JointGainFn joint = qif::testing::random_joint_gain(rng, comps);
        const Shape& ws = joint.guess_shape();
        const Shape& xs = joint.secret_shape();
        for (std::size_t wf = 0; wf < ws.size(); ++wf)
            for (std::size_t xf = 0; xf < xs.size(); ++xf) {
                double prod = 1.0;
                for (std::size_t a = 0; a < n; ++a)
                    prod *= comps[a].at(ws.coord(wf, a), xs.coord(xf, a));
                CHECK((joint.at(wf, xf) == 0.0) == (prod == 0.0));
            }
    }
}

TEST_CASE("support lemma: outside the support the marginal product vanishes") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n1 = 2 + rng.below(3), n2 = 2 + rng.below(3);
        JointDist prior = qif::testing::random_supported_prior_with_zeros(rng, {n1, n2});
        GainFn g1 = qif::testing::random_gain(rng, prior.axis_labels(0), 2 + rng.below(3));
        GainFn g2 = qif::testing::random_gain(rng, prior.axis_labels(1), 2 + rng.below(3));
        JointGainFn joint = qif::testing::random_joint_gain(rng, {g1, g2});
        REQUIRE(is_jointly_supported(prior));
        auto margs = prior.marginals();
        const Shape& ws = joint.guess_shape();
        for (std::size_t wf = 0; wf < ws.size(); ++wf) {
            std::size_t w1 = ws.coord(wf, 0), w2 = ws.coord(wf, 1);
            for (std::size_t xf = 0; xf < prior.cells(); ++xf) {
                std::size_t x1 = prior.shape().coord(xf, 0), x2 = prior.shape().coord(xf, 1);
                if (prior.mass_at(xf) * joint.at(wf, xf) == 0.0) {
                    double lhs = margs[0][x1] * g1.at(w1, x1) * margs[1][x2] * g2.at(w2, x2);
                    CHECK(lhs == 0.0);
                }
            }
        }
    }
}

TEST_CASE("flatten keeps mass and labels aligned") {
    Dist p1({"a", "b"}, {0.3, 0.7});
    Dist p2({"u", "v"}, {0.6, 0.4});
    Dist flat = flatten(JointDist::product({p1, p2}));
    CHECK(flat.size() == 4);
    CHECK(flat.labels()[1] == join_labels("a", "v"));
    CHECK(flat[1] == doctest::Approx(0.3 * 0.4).epsilon(1e-15));
}

} // TEST_SUITE
