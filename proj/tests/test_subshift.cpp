#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "mislab/subshift.hpp"

using namespace mislab;

namespace {

// independent oracle: enumerate words and filter by adjacent-pair rule
Nat enumerate_words(const SubshiftSpec& omega, int len) {
    auto m = omega.matrix();
    int r = omega.alphabet_size;
    std::vector<int> w(len, 0);
    Nat count = 0;
    while (true) {
        bool ok = true;
        for (int i = 0; i + 1 < len; ++i)
            if (!m[w[i]][w[i + 1]]) { ok = false; break; }
        if (ok) count += 1;
        int pos = 0;
        while (pos < len) {
            if (++w[pos] < r) break;
            w[pos] = 0;
            ++pos;
        }
        if (pos == len) break;
    }
    return count;
}

} // namespace

TEST_CASE("word_count basics") {
    REQUIRE(word_count(SubshiftSpec::full(2), 3) == 8);
    // golden mean oracle values, frozen from the enumeration oracle
    auto gm = SubshiftSpec::golden_mean();
    REQUIRE(word_count(gm, 2) == 3);
    REQUIRE(word_count(gm, 5) == 13);
    REQUIRE(enumerate_words(gm, 2) == 3);
    REQUIRE(enumerate_words(gm, 5) == 13);
    for (int len = 1; len <= 10; ++len) REQUIRE(word_count(gm, len) == enumerate_words(gm, len));
}

TEST_CASE("full shift equals all-ones vertex SFT") {
    auto full = SubshiftSpec::full(3);
    auto ones = SubshiftSpec::sft({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}});
    for (int len = 1; len <= 10; ++len) REQUIRE(word_count(full, len) == word_count(ones, len));
}

TEST_CASE("golden mean counts satisfy the Fibonacci recurrence") {
    auto gm = SubshiftSpec::golden_mean();
    for (int len = 3; len <= 20; ++len)
        REQUIRE(word_count(gm, len) == word_count(gm, len - 1) + word_count(gm, len - 2));
}

TEST_CASE("language counts are submultiplicative") {
    for (const auto& omega : {SubshiftSpec::golden_mean(), SubshiftSpec::full(2),
                              SubshiftSpec::sft({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})}) {
        for (int a = 1; a <= 12; ++a)
            for (int b = 1; b <= 12; ++b)
                REQUIRE(word_count(omega, a + b) <= word_count(omega, a) * word_count(omega, b));
    }
}

TEST_CASE("perron_data on the golden mean") {
    auto gm = SubshiftSpec::golden_mean();
    PerronData pd = perron_data(gm, 192);
    double g = (1.0 + std::sqrt(5.0)) / 2.0;
    REQUIRE(std::abs(pd.lambda.mid_d() - g) < 1e-15);
    REQUIRE(pd.lambda.rad_d() < 1e-50);
    // lambda^2 = lambda + 1
    BallReal resid = pd.lambda.mul(pd.lambda).sub(pd.lambda).sub(BallReal::exact_si(1, 192));
    REQUIRE(resid.abs_enclosure().upper_d() < 1e-50);

    // l . r = 1
    BallReal dot = BallReal::zero(192);
    for (std::size_t i = 0; i < pd.left.size(); ++i) dot = dot.add(pd.left[i].mul(pd.right[i]));
    REQUIRE(dot.sub(BallReal::exact_si(1, 192)).abs_enclosure().upper_d() < 1e-50);
    for (const auto& v : pd.left) REQUIRE(v.lower_d() > 0);
    for (const auto& v : pd.right) REQUIRE(v.lower_d() > 0);
}

TEST_CASE("perron_data degenerate cases") {
    PerronData one = perron_data(SubshiftSpec::sft({{1}}), 96);
    REQUIRE(std::abs(one.lambda.mid_d() - 1.0) < 1e-20);
    REQUIRE(std::abs(one.left[0].mid_d() - 1.0) < 1e-20);
    REQUIRE(std::abs(one.right[0].mid_d() - 1.0) < 1e-20);

    PerronData two = perron_data(SubshiftSpec::sft({{1, 1}, {1, 1}}), 96);
    REQUIRE(std::abs(two.lambda.mid_d() - 2.0) < 1e-20);

    REQUIRE_THROWS_AS(perron_data(SubshiftSpec::sft({{1, 0}, {0, 1}}), 96), Error);
}

TEST_CASE("Perron power identity: (A^n)_ij / lambda^n -> r_i l_j") {
    auto gm = SubshiftSpec::golden_mean();
    PerronData pd = perron_data(gm, 256);
    IMatrix a{{1, 1}, {1, 0}};
    IMatrix a50 = imat_pow(a, 50);
    // lambda^50
    BallReal lp = BallReal::exact_si(1, 256);
    for (int i = 0; i < 50; ++i) lp = lp.mul(pd.lambda);
    double worst = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            BallReal lhs = BallReal::from_nat(a50[i][j], 256).div(lp);
            BallReal diff = lhs.sub(pd.right[i].mul(pd.left[j]));
            worst = std::max(worst, diff.abs_enclosure().upper_d());
        }
    REQUIRE(worst <= 1e-6);
}

TEST_CASE("entropy_rate_1d") {
    REQUIRE(std::abs(entropy_rate_1d(SubshiftSpec::full(2), 128).mid_d() - std::log(2.0)) < 1e-15);
    double logg = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    REQUIRE(std::abs(entropy_rate_1d(SubshiftSpec::golden_mean(), 128).mid_d() - logg) < 1e-15);
    REQUIRE(std::abs(entropy_rate_1d(SubshiftSpec::sft({{1}}), 128).mid_d()) < 1e-30);
}

TEST_CASE("irreducibility and primitivity checks") {
    REQUIRE(SubshiftSpec::golden_mean().is_irreducible());
    REQUIRE(SubshiftSpec::golden_mean().is_primitive());
    auto period2 = SubshiftSpec::sft({{0, 1}, {1, 0}});
    REQUIRE(period2.is_irreducible());
    REQUIRE(!period2.is_primitive());
    auto reducible = SubshiftSpec::sft({{1, 1}, {0, 1}});
    REQUIRE(!reducible.is_irreducible());
}

TEST_CASE("word log evaluator matches exact counts and brackets large levels") {
    auto gm = SubshiftSpec::golden_mean();
    WordLogEvaluator ev(gm, 192, 128);
    for (long l : {1L, 2L, 5L, 20L, 64L}) {
        BallReal expect = BallReal::log_nat(word_count(gm, l), 192);
        REQUIRE(ev.log_omega(l).sub(expect).abs_enclosure().upper_d() < 1e-40);
    }
    // a level far beyond anything iterated: bracket against the known form
    long l = 20000;
    BallReal v = ev.log_omega(l);
    double logg = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    double expect = (l + 2) * logg - std::log(std::sqrt(5.0));
    REQUIRE(v.lower_d() <= expect);
    REQUIRE(v.upper_d() >= expect);
    REQUIRE(v.rad_d() < 1e-20);
}
