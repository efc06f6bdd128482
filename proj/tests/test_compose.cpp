#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qif/compose.hpp"
#include "qif/errors.hpp"
#include "qif/generators.hpp"
#include "qif/measures.hpp"

using namespace qif;

TEST_SUITE("compose") {

TEST_CASE("distinct composition multiplies entries") {
    auto fx = fixtures();
    Channel prod = par_distinct(fx.ch_a, fx.ch_a);
    CHECK(prod.n_in() == 4);
    CHECK(prod.n_out() == 4);
    CHECK(prod.at(0, 0) == doctest::Approx(0.81).epsilon(1e-15)); // ((0,0),(0,0))

    // unit: composing with the single-input single-output channel relabels
    Channel unit({"z"}, {"t"}, {1.0});
    Channel lifted = par_distinct(fx.ch_a, unit);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            CHECK(lifted.at(x, y) == fx.ch_a.at(x, y));

    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        Channel c1 = qif::testing::random_stochastic(rng, 2 + rng.below(4), 2 + rng.below(4));
        Channel c2 = qif::testing::random_stochastic(rng, 2 + rng.below(4), 2 + rng.below(4), "u",
                                                     "v");
        Channel p = par_distinct(c1, c2); // constructor asserts row sums
        CHECK(p.n_in() == c1.n_in() * c2.n_in());
    }
}

TEST_CASE("shared composition and its first row") {
    auto fx = fixtures();
    Channel doubled = par_shared(fx.ch_a, fx.ch_a);
    CHECK(doubled.at(0, 0) == doctest::Approx(0.81).epsilon(1e-15));
    CHECK(doubled.at(0, 1) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(doubled.at(0, 2) == doctest::Approx(0.09).epsilon(1e-15));
    CHECK(doubled.at(0, 3) == doctest::Approx(0.01).epsilon(1e-15));

    // agrees with the distinct composition on the diagonal inputs
    Channel prod = par_distinct(fx.ch_a, fx.ch_a);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            CHECK(doubled.at(x, y) == prod.at(x * 2 + x, y));

    std::vector<Channel> ten(10, fx.ch_b);
    Channel big = par_shared_n(ten);
    CHECK(big.n_in() == 3);
    CHECK(big.n_out() == 59049);

    Channel point = Channel::point(fx.ch_a.in_labels());
    Channel same = par_shared(fx.ch_a, point);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            CHECK(same.at(x, y) == fx.ch_a.at(x, y));

    Channel other({"a", "b"}, {"y"}, {1.0, 1.0});
    CHECK_THROWS_AS(par_shared(fx.ch_a, other), Error);
}

TEST_CASE("cell cap turns blow-up into an explicit failure") {
    auto fx = fixtures();
    ComposeOptions opts;
    opts.max_cells = 100;
    std::vector<Channel> ten(10, fx.ch_b);
    try {
        par_shared_n(ten, opts);
        FAIL("expected size_overflow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::size_overflow);
    }
    CHECK_THROWS_AS(par_distinct_n(ten, opts), Error);
}

TEST_CASE("decomposition inverts shared composition") {
    auto fx = fixtures();
    Channel doubled = par_shared(fx.ch_a, fx.ch_b); // different output spaces
    auto [left, right] = decompose(doubled);
    REQUIRE(left.n_out() == 2);
    REQUIRE(right.n_out() == 3);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y)
            CHECK(left.at(x, y) == doctest::Approx(fx.ch_a.at(x, y)).epsilon(1e-15));
        for (std::size_t y = 0; y < 3; ++y)
            CHECK(right.at(x, y) == doctest::Approx(fx.ch_b.at(x, y)).epsilon(1e-15));
    }
}

TEST_CASE("decomposing the xor gate loses the correlation") {
    auto fx = fixtures();
    auto [left, right] = decompose(fx.xor_gate);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            CHECK(left.at(x, y) == doctest::Approx(0.5).epsilon(1e-15));
            CHECK(right.at(x, y) == doctest::Approx(0.5).epsilon(1e-15));
        }
    // re-composing the halves does not give back the gate
    Channel recomposed = par_shared(left, right);
    bool all_equal = true;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 4; ++y)
            all_equal = all_equal && recomposed.at(x, y) == fx.xor_gate.at(x, y);
    CHECK_FALSE(all_equal);
}

TEST_CASE("decompose of a distinct product restricted to diagonal inputs") {
    auto fx = fixtures();
    Channel prod = par_distinct(fx.ch_a, fx.ch_a);
    auto [left, right] = decompose(prod);
    for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t y = 0; y < 2; ++y) {
            // left restriction only depends on the first input coordinate
            CHECK(left.at(x1 * 2 + x1, y) == doctest::Approx(fx.ch_a.at(x1, y)).epsilon(1e-15));
            CHECK(right.at(x1 * 2 + x1, y) == doctest::Approx(fx.ch_a.at(x1, y)).epsilon(1e-15));
        }
}

TEST_CASE("decompose rejects unfactorable outputs") {
    Channel plain({"a"}, {"y0", "y1"}, {0.5, 0.5});
    CHECK_THROWS_AS(decompose(plain), Error);
    Channel crooked({"a"}, {join_labels("p", "q"), "r"}, {0.5, 0.5});
    CHECK_THROWS_AS(decompose(crooked), Error);
}

TEST_CASE("cascade is the matrix product with matching labels") {
    auto fx = fixtures();
    Channel id2 = Channel::identity({"0", "1"});
    Channel c1 = cascade(fx.ch_a, id2);
    Channel c2 = cascade(id2, fx.ch_a);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            CHECK(c1.at(x, y) == fx.ch_a.at(x, y));
            CHECK(c2.at(x, y) == fx.ch_a.at(x, y));
        }
    Channel sq = cascade(fx.ch_a, fx.ch_a);
    CHECK(sq.at(0, 0) == doctest::Approx(0.82).epsilon(1e-15));
    CHECK(sq.at(0, 1) == doctest::Approx(0.18).epsilon(1e-15));
    CHECK(sq.at(1, 0) == doctest::Approx(0.18).epsilon(1e-15));
    CHECK(sq.at(1, 1) == doctest::Approx(0.82).epsilon(1e-15));

    CHECK_THROWS_AS(cascade(fx.ch_a, fx.ch_b), Error);
}

TEST_CASE("refinement verification") {
    auto fx = fixtures();
    RefinementWitness self{Channel::identity(fx.ch_a.out_labels())};
    CHECK(verify_refinement(fx.ch_a, fx.ch_a, self));

    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        Channel c2 = qif::testing::random_stochastic(rng, 3, 4);
        Channel c3 = qif::testing::random_stochastic(rng, 4, 3, "y", "z");
        Channel c1 = cascade(c2, c3);
        CHECK(verify_refinement(c1, c2, RefinementWitness{c3}));
    }

    // constant rows cannot be post-processed into the identity
    Channel id2 = Channel::identity({"0", "1"});
    Channel flat({"0", "1"}, {"0", "1"}, {0.5, 0.5, 0.5, 0.5});
    CHECK_FALSE(verify_refinement(id2, flat, RefinementWitness{id2}));
    CHECK_FALSE(find_refinement(id2, flat).has_value());
}

TEST_CASE("refinement search finds witnesses for cascades") {
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        std::size_t nx = 2 + rng.below(4), ny = 2 + rng.below(4), nz = 2 + rng.below(4);
        Channel c2 = qif::testing::random_stochastic(rng, nx, ny);
        Channel c3 = qif::testing::random_stochastic(rng, ny, nz, "y", "z");
        Channel c1 = cascade(c2, c3);
        auto witness = find_refinement(c1, c2);
        REQUIRE(witness.has_value());
        CHECK(verify_refinement(c1, c2, *witness));
    }

    // constant-row target: the witness replays the target row
    Channel flat({"a", "b"}, {"z0", "z1"}, {0.25, 0.75, 0.25, 0.75});
    Rng rng2(5);
    Channel any = qif::testing::random_stochastic_over(rng2, {"a", "b"}, 3);
    auto witness = find_refinement(flat, any);
    REQUIRE(witness.has_value());
    CHECK(verify_refinement(flat, any, *witness));
}

TEST_CASE("refinement implies the leakage ordering") {
    Rng rng(29);
    for (int t = 0; t < 15; ++t) {
        std::size_t nx = 2 + rng.below(3);
        Channel c2 = qif::testing::random_stochastic(rng, nx, 2 + rng.below(3));
        Channel c3 =
            qif::testing::random_stochastic(rng, c2.n_out(), 2 + rng.below(3), "y", "z");
        Channel c1 = cascade(c2, c3);
        for (int k = 0; k < 10; ++k) {
            Dist prior(c1.in_labels(), qif::testing::simplex_point(rng, nx), true);
            GainFn g = qif::testing::random_gain(rng, c1.in_labels(), 2 + rng.below(3));
            if (prior_vuln_g(prior, g) == 0.0) continue;
            CHECK(leakage_g(prior, c1, g).bits <= leakage_g(prior, c2, g).bits + 1e-9);
        }
    }
}

TEST_CASE("composition preserves refinement via lifted witnesses") {
    Rng rng(37);
    for (int t = 0; t < 10; ++t) {
        std::size_t nx = 2 + rng.below(3);
        Channel refining = qif::testing::random_stochastic(rng, nx, 3);
        Channel post = qif::testing::random_stochastic(rng, 3, 2, "y", "z");
        Channel refined = cascade(refining, post);
        Channel other = qif::testing::random_stochastic(rng, 2, 3, "p", "q");
        Channel other_shared = qif::testing::random_stochastic_over(
            rng, refining.in_labels(), 3, "q");

        // distinct: witness lifts as post x identity
        Channel lifted_d = par_distinct(post, Channel::identity(other.out_labels()));
        CHECK(verify_refinement(par_distinct(refined, other), par_distinct(refining, other),
                                RefinementWitness{lifted_d}));

        // shared: same lifting on the output side
        Channel lifted_s = par_distinct(post, Channel::identity(other_shared.out_labels()));
        CHECK(verify_refinement(par_shared(refined, other_shared),
                                par_shared(refining, other_shared),
                                RefinementWitness{lifted_s}));
    }
}

TEST_CASE("n-ary composition equals the iterated binary form") {
    Rng rng(41);
    std::vector<Channel> chs;
    for (int i = 0; i < 3; ++i)
        chs.push_back(qif::testing::random_stochastic(rng, 2, 2 + rng.below(3),
                                                      "x" + std::to_string(i),
                                                      "y" + std::to_string(i)));
    Channel nary = par_distinct_n(chs);
    Channel folded = par_distinct(par_distinct(chs[0], chs[1]), chs[2]);
    REQUIRE(nary.n_out() == folded.n_out());
    CHECK(nary.out_labels() == folded.out_labels());
    for (std::size_t x = 0; x < nary.n_in(); ++x)
        for (std::size_t y = 0; y < nary.n_out(); ++y)
            CHECK(nary.at(x, y) == folded.at(x, y));

    std::vector<Channel> shared;
    for (int i = 0; i < 3; ++i)
        shared.push_back(
            qif::testing::random_stochastic_over(rng, {"s0", "s1"}, 2 + rng.below(3),
                                                 "y" + std::to_string(i)));
    Channel snary = par_shared_n(shared);
    Channel sfolded = par_shared(par_shared(shared[0], shared[1]), shared[2]);
    CHECK(snary.out_labels() == sfolded.out_labels());
    for (std::size_t x = 0; x < snary.n_in(); ++x)
        for (std::size_t y = 0; y < snary.n_out(); ++y)
            CHECK(snary.at(x, y) == sfolded.at(x, y));
}

} // TEST_SUITE
