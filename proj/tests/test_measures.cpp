#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qif/compose.hpp"
#include "qif/errors.hpp"
#include "qif/generators.hpp"
#include "qif/measures.hpp"

using namespace qif;

namespace {

struct LogBaseGuard {
    LogBase saved = log_base();
    ~LogBaseGuard() { set_log_base(saved); }
};

} // namespace

TEST_SUITE("measures") {

TEST_CASE("prior vulnerability and g-vulnerability") {
    auto fx = fixtures();
    CHECK(prior_vuln_g(fx.pi_a, gain_identity({"0", "1"})) == doctest::Approx(0.9));
    CHECK(prior_vuln_g(Dist::uniform({"a", "b", "c", "d"}), gain_identity({"a", "b", "c", "d"})) ==
          doctest::Approx(0.25));

    // 2 tries over a uniform 3-space: the best pair covers 2/3, confirmed by
    // scanning every guess
    Dist u3 = Dist::uniform({"a", "b", "c"});
    GainFn two = gain_ktries({"a", "b", "c"}, 2);
    CHECK(prior_vuln_g(u3, two) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    double best = 0.0;
    for (std::size_t w = 0; w < two.n_guesses(); ++w) {
        double v = 0.0;
        for (std::size_t x = 0; x < 3; ++x) v += u3[x] * two.at(w, x);
        best = std::max(best, v);
    }
    CHECK(prior_vuln_g(u3, two) == doctest::Approx(best));

    CHECK_THROWS_AS(prior_vuln_g(u3, gain_identity({"x", "y", "z"})), Error);
}

TEST_CASE("posterior vulnerability on the worked 2x2 example") {
    auto fx = fixtures();
    GainFn id = gain_identity({"0", "1"});
    CHECK(post_vuln_g(fx.pi_a, fx.ch_a, id) == doctest::Approx(0.9).epsilon(1e-14));

    Channel identity4 = Channel::identity({"a", "b", "c", "d"});
    Dist pr({"a", "b", "c", "d"}, {0.4, 0.3, 0.2, 0.1});
    CHECK(post_vuln_g(pr, identity4, gain_identity({"a", "b", "c", "d"})) ==
          doctest::Approx(1.0).epsilon(1e-14));

    Channel doubled = par_shared(fx.ch_a, fx.ch_a);
    CHECK(post_vuln_g(fx.pi_a, doubled, id) == doctest::Approx(0.972).epsilon(1e-13));
}

TEST_CASE("leakage on the worked examples") {
    auto fx = fixtures();
    GainFn id = gain_identity({"0", "1"});
    Channel doubled = par_shared(fx.ch_a, fx.ch_a);
    CHECK(leakage_g(fx.pi_a, doubled, id).bits ==
          doctest::Approx(std::log2(1.08)).epsilon(1e-10));
    CHECK(leakage_g(fx.uniform2, fx.ch_a, id).bits ==
          doctest::Approx(std::log2(1.8)).epsilon(1e-10));

    Channel flat({"0", "1"}, {"y0", "y1"}, {0.3, 0.7, 0.3, 0.7});
    CHECK(leakage_g(fx.pi_a, flat, id).bits == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(leakage_g(fx.pi_a, flat, id).tag == MeasureTag::min_entropy);
}

TEST_CASE("entropies go infinite exactly when vulnerability vanishes") {
    Dist zero = make_dist({"a", "b"}, {0.0, 0.0}, true);
    CHECK_FALSE(min_entropy(zero).is_finite());
    CHECK_THROWS_AS(min_entropy_leakage(zero, Channel::identity({"a", "b"})), Error);
    try {
        min_entropy_leakage(zero, Channel::identity({"a", "b"}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_vulnerability);
    }
}

TEST_CASE("min-capacity closed form and examples") {
    auto fx = fixtures();
    CHECK(min_capacity(fx.ch_b) == doctest::Approx(std::log2(1.33)).epsilon(1e-12));
    CHECK(min_capacity(Channel::identity({"a", "b", "c"})) ==
          doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    Channel flat({"0", "1"}, {"y0", "y1"}, {0.3, 0.7, 0.3, 0.7});
    CHECK(min_capacity(flat) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("min-capacity dominates a random-prior search") {
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        Channel c = qif::testing::random_stochastic(rng, 2 + rng.below(5), 2 + rng.below(5));
        double closed = min_capacity(c);
        double searched = min_entropy_leakage(Dist::uniform(c.in_labels()), c).bits;
        for (int r = 0; r < 2000; ++r) {
            Dist prior(c.in_labels(), qif::testing::simplex_point(rng, c.n_in()), true);
            searched = std::max(searched, min_entropy_leakage(prior, c).bits);
        }
        CHECK(searched <= closed + 1e-9);
        CHECK(searched == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("g-capacity lower bound is certified and monotone") {
    auto fx = fixtures();
    GainFn id = gain_identity({"0", "1"});
    double lower = g_capacity_lower(fx.ch_a, id, 100, 5);
    CHECK(lower <= min_capacity(fx.ch_a) + 1e-9);
    CHECK(lower == doctest::Approx(std::log2(1.8)).epsilon(1e-9)); // uniform attains it

    Channel flat({"0", "1"}, {"y0", "y1"}, {0.3, 0.7, 0.3, 0.7});
    CHECK(g_capacity_lower(flat, id, 50, 5) == doctest::Approx(0.0).epsilon(1e-12));

    double few = g_capacity_lower(fx.ch_a, gain_ktries({"0", "1"}, 1), 10, 9);
    double more = g_capacity_lower(fx.ch_a, gain_ktries({"0", "1"}, 1), 200, 9);
    CHECK(few <= more + 1e-15);
}

TEST_CASE("mutual information on the xor fixture and identities") {
    auto fx = fixtures();
    CHECK(mutual_information(fx.uniform2, fx.xor_gate) == doctest::Approx(1.0).epsilon(1e-12));
    auto [left, right] = decompose(fx.xor_gate);
    CHECK(mutual_information(fx.uniform2, left) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mutual_information(fx.uniform2, right) == doctest::Approx(0.0).epsilon(1e-12));

    Channel id5 = Channel::identity({"a", "b", "c", "d", "e"});
    CHECK(mutual_information(Dist::uniform(id5.in_labels()), id5) ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-12));

    Dist sub = make_dist({"0", "1"}, {0.3, 0.3}, true);
    CHECK_THROWS_AS(mutual_information(sub, fx.ch_a), Error);
}

TEST_CASE("mutual information stays within its range on random channels") {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t nx = 2 + rng.below(5), ny = 2 + rng.below(5);
        Channel c = qif::testing::random_stochastic(rng, nx, ny);
        Dist prior(c.in_labels(), qif::testing::simplex_point(rng, nx), false);
        double mi = mutual_information(prior, c);
        CHECK(mi >= -1e-12);
        CHECK(mi <= std::log2(static_cast<double>(std::min(nx, ny))) + 1e-9);
    }
}

TEST_CASE("posterior vulnerability never drops below the prior") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t nx = 2 + rng.below(5), ny = 2 + rng.below(5);
        Channel c = qif::testing::random_stochastic(rng, nx, ny);
        Dist prior(c.in_labels(), qif::testing::simplex_point(rng, nx), true);
        GainFn g = qif::testing::random_gain(rng, c.in_labels(), 2 + rng.below(4));
        double vp = prior_vuln_g(prior, g);
        double vc = post_vuln_g(prior, c, g);
        CHECK(vc >= vp - 1e-12);
        CHECK(vc <= 1.0 + 1e-12);
        CHECK(vp >= 0.0);
    }
}

TEST_CASE("natural-log mode rescales every measure") {
    LogBaseGuard guard;
    auto fx = fixtures();
    GainFn id = gain_identity({"0", "1"});
    Channel doubled = par_shared(fx.ch_a, fx.ch_a);
    double bits = leakage_g(fx.pi_a, doubled, id).bits;
    set_log_base(LogBase::natural);
    double nats = leakage_g(fx.pi_a, doubled, id).bits;
    CHECK(nats == doctest::Approx(std::log(1.08)).epsilon(1e-10));
    CHECK(nats == doctest::Approx(bits * std::log(2.0)).epsilon(1e-10));
}

} // TEST_SUITE
