#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mislab/lattice.hpp"

using namespace mislab;

namespace {
Box box2(long a, long b) { return Box::of({Nat(a), Nat(b)}); }
} // namespace

TEST_CASE("is_index_head") {
    auto p = MultiplierVector::of({2, 3});
    REQUIRE(is_index_head({Nat(1), Nat(1)}, p));
    REQUIRE(!is_index_head({Nat(2), Nat(3)}, p));
    REQUIRE(!is_index_head({Nat(4), Nat(3)}, p));
    REQUIRE(is_index_head({Nat(4), Nat(5)}, p));
}

TEST_CASE("chain_in_box") {
    auto p23 = MultiplierVector::of({2, 3});
    auto ch = chain_in_box({Nat(1), Nat(1)}, p23, box2(4, 9));
    REQUIRE(ch.size() == 3);
    REQUIRE(ch[1] == std::vector<Nat>{Nat(2), Nat(3)});
    REQUIRE(ch[2] == std::vector<Nat>{Nat(4), Nat(9)});

    REQUIRE(chain_in_box({Nat(3), Nat(1)}, p23, box2(4, 9)).size() == 1);

    auto p2 = MultiplierVector::of({2});
    auto ch1 = chain_in_box({Nat(1)}, p2, Box::of({Nat(4)}));
    REQUIRE(ch1.size() == 3);
    REQUIRE(ch1[2][0] == 4);

    REQUIRE_THROWS_AS(chain_in_box({Nat(5), Nat(1)}, p23, box2(4, 9)), Error);
}

TEST_CASE("hist_J closed form") {
    auto p23 = MultiplierVector::of({2, 3});
    auto h = hist_J(box2(4, 9), p23);
    REQUIRE(h.counts.at(1) == 30);
    REQUIRE(h.counts.at(2) == 5);
    REQUIRE(h.counts.at(3) == 1);
    REQUIRE(h.counts.size() == 3);

    auto single = hist_J(box2(1, 1), p23);
    REQUIRE(single.counts.size() == 1);
    REQUIRE(single.counts.at(1) == 1);

    auto p2 = MultiplierVector::of({2});
    auto d1 = hist_J(Box::of({Nat(8)}), p2);
    REQUIRE(d1.counts.at(1) == 4);
    REQUIRE(d1.counts.at(2) == 2);
    REQUIRE(d1.counts.at(3) == 1);
    REQUIRE(d1.counts.at(4) == 1);
}

TEST_CASE("hist_K by J-difference") {
    auto p23 = MultiplierVector::of({2, 3});
    auto k = hist_K(box2(4, 9), p23);
    REQUIRE(k.counts.at(1) == 25);
    REQUIRE(k.counts.at(2) == 4);
    REQUIRE(k.counts.at(3) == 1);
    REQUIRE(k.weighted_total() == 36);

    auto p2 = MultiplierVector::of({2});
    auto k1 = hist_K(Box::of({Nat(1)}), p2);
    REQUIRE(k1.counts.size() == 1);
    REQUIRE(k1.counts.at(1) == 1);
}

TEST_CASE("closed forms match the enumeration oracle on assorted boxes") {
    auto check = [](const Box& box, const MultiplierVector& p) {
        auto [oj, ok] = enumerate_hist_oracle(box, p);
        auto cj = hist_J(box, p);
        auto ck = hist_K(box, p);
        REQUIRE(oj.counts == cj.counts);
        REQUIRE(ok.counts == ck.counts);
    };
    check(box2(4, 9), MultiplierVector::of({2, 3}));
    check(box2(60, 60), MultiplierVector::of({2, 2}));
    check(Box::of({Nat(5), Nat(5), Nat(5)}), MultiplierVector::of({2, 2, 2}));
    check(Box::of({Nat(100)}), MultiplierVector::of({7}));
}

TEST_CASE("randomized sum identities and oracle equality") {
    std::mt19937 rng(20240517);
    std::uniform_int_distribution<int> dim_dist(1, 3);
    std::uniform_int_distribution<int> p_dist(0, 2);
    const long p_choices[3] = {2, 3, 5};
    for (int trial = 0; trial < 200; ++trial) {
        int d = dim_dist(rng);
        std::vector<long> ps;
        std::vector<Nat> ns;
        long max_side = d == 1 ? 500 : (d == 2 ? 300 : 60);
        std::uniform_int_distribution<long> n_dist(1, max_side);
        for (int j = 0; j < d; ++j) {
            ps.push_back(p_choices[p_dist(rng)]);
            ns.push_back(Nat(n_dist(rng)));
        }
        auto p = MultiplierVector::of(ps);
        Box box = Box::of(ns);
        auto j = hist_J(box, p);
        auto k = hist_K(box, p);
        REQUIRE(j.total() == box.volume());
        REQUIRE(k.weighted_total() == box.volume());
    }
}

TEST_CASE("partition: every point is covered by exactly one head chain") {
    auto p = MultiplierVector::of({2, 3});
    Box box = box2(24, 18);
    std::map<std::pair<long, long>, int> covered;
    for (long x = 1; x <= 24; ++x)
        for (long y = 1; y <= 18; ++y) {
            std::vector<Nat> pt{Nat(x), Nat(y)};
            if (!is_index_head(pt, p)) continue;
            for (const auto& q : chain_in_box(pt, p, box))
                covered[{q[0].get_si(), q[1].get_si()}] += 1;
        }
    for (long x = 1; x <= 24; ++x)
        for (long y = 1; y <= 18; ++y) REQUIRE(covered[{x, y}] == 1);
}

TEST_CASE("K density and K/J ratio limits") {
    auto p = MultiplierVector::of({2, 3});
    double P = 6.0;
    for (int m : {3, 4, 5}) {
        Nat side = pow_nat(6, m);
        Box box = Box::of({side, side});
        auto k = hist_K(box, p);
        auto j = hist_J(box, p);
        double vol = mpz_get_d(box.volume().get_mpz_t());
        double sides = 2.0 * mpz_get_d(side.get_mpz_t());
        for (long l : {1L, 2L, 3L}) {
            double kd = mpz_get_d(k.counts.at(l).get_mpz_t());
            double jd = mpz_get_d(j.counts.at(l).get_mpz_t());
            double density = kd / vol;
            double target = 25.0 / std::pow(P, l + 1);
            REQUIRE(std::abs(density - target) <= 10.0 * std::pow(P, l) * sides / vol);
            double ratio = kd / jd;
            REQUIRE(std::abs(ratio - (1.0 - 1.0 / P)) <= 10.0 * std::pow(P, l) * sides / vol);
        }
    }
}

TEST_CASE("enumeration oracle rejects oversized boxes") {
    REQUIRE_THROWS_AS(enumerate_hist_oracle(box2(100000, 100000), MultiplierVector::of({2, 2})),
                      Error);
}

TEST_CASE("joint head histogram agrees with a direct walk") {
    auto p = MultiplierVector::of({2, 3});
    Box outer = box2(30, 40);
    Box inner = box2(13, 7);
    auto joint = head_joint_hist(outer, inner, p);
    std::map<std::pair<long, long>, Nat> direct;
    for (long x = 1; x <= 30; ++x)
        for (long y = 1; y <= 40; ++y) {
            std::vector<Nat> pt{Nat(x), Nat(y)};
            if (!is_index_head(pt, p)) continue;
            long a = static_cast<long>(chain_in_box(pt, p, outer).size());
            long b = 0;
            if (inner.contains(pt)) b = static_cast<long>(chain_in_box(pt, p, inner).size());
            direct[{a, b}] += 1;
        }
    REQUIRE(joint == direct);
}

TEST_CASE("joint head histogram with empty inner box reduces to hist_K") {
    auto p = MultiplierVector::of({2, 2});
    Box outer = box2(37, 22);
    auto joint = head_joint_hist(outer, box2(0, 0), p);
    auto k = hist_K(outer, p);
    std::map<long, Nat> collapsed;
    for (const auto& [ab, c] : joint) {
        REQUIRE(ab.second == 0);
        collapsed[ab.first] += c;
    }
    REQUIRE(collapsed == k.counts);
}
