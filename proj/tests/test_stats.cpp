#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "suppnet/stats.hpp"

using namespace suppnet;

namespace {

// Independent rank + correlation used by the permutation oracle.
std::vector<double> oracle_ranks(const std::vector<double>& v) {
    std::vector<double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0, equal = 0;
        for (double x : v) {
            if (x < v[i]) ++less;
            if (x == v[i]) ++equal;
        }
        ranks[i] = less + (equal + 1.0) / 2.0;
    }
    return ranks;
}

double oracle_corr(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ma) * (b[i] - mb);
        da += (a[i] - ma) * (a[i] - ma);
        db += (b[i] - mb) * (b[i] - mb);
    }
    return num / std::sqrt(da * db);
}

// Exhaustive permutation test over the y ranks.
std::pair<double, double> oracle_spearman(std::vector<double> x, std::vector<double> y) {
    const auto rx = oracle_ranks(x);
    const auto ry = oracle_ranks(y);
    const double rho = oracle_corr(rx, ry);
    std::vector<std::size_t> perm(y.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::size_t total = 0, hits = 0;
    do {
        std::vector<double> yp(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) yp[i] = ry[perm[i]];
        ++total;
        if (std::fabs(oracle_corr(rx, yp)) >= std::fabs(rho) - 1e-12) ++hits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {rho, static_cast<double>(hits) / static_cast<double>(total)};
}

}  // namespace

TEST_CASE("percentile uses linear interpolation") {
    REQUIRE(percentile({1, 2, 3, 4}, 50) == Catch::Approx(2.5));
    REQUIRE(percentile({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 10) == Catch::Approx(0.9));
    REQUIRE(percentile({0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, 90) == Catch::Approx(8.1));
    REQUIRE(percentile({5, 1, 3}, 0) == 1.0);
    REQUIRE(percentile({5, 1, 3}, 100) == 5.0);
    REQUIRE(percentile({7}, 50) == 7.0);
    REQUIRE_THROWS_AS(percentile({}, 50), std::invalid_argument);
}

TEST_CASE("pearson correlation basics") {
    const std::vector<double> x = {1, 2, 3, 4};
    const std::vector<double> up = {2, 4, 6, 8};
    const std::vector<double> down = {8, 6, 4, 2};
    REQUIRE(pearson(x, up) == Catch::Approx(1.0));
    REQUIRE(pearson(x, down) == Catch::Approx(-1.0));
    const std::vector<double> flat = {3, 3, 3, 3};
    REQUIRE(std::isnan(pearson(x, flat)));
}

TEST_CASE("spearman basics") {
    const std::vector<double> x = {3.0, 1.0, 4.0, 1.5, 9.0, 2.6};
    std::vector<double> same = x;
    const auto id = spearman(x, same);
    REQUIRE(id.rho == Catch::Approx(1.0));
    REQUIRE(id.p == Catch::Approx(2.0 / 720.0));  // only identity and reversal reach |rho| = 1

    std::vector<double> reversed = x;
    std::sort(reversed.begin(), reversed.end());
    std::vector<double> xs = x;
    std::sort(xs.begin(), xs.end(), std::greater<>());
    const auto rev = spearman(xs, reversed);
    REQUIRE(rev.rho == Catch::Approx(-1.0));
}

TEST_CASE("spearman handles constant input as an error value") {
    const std::vector<double> x = {1, 2, 3, 4, 5};
    const std::vector<double> constant = {2, 2, 2, 2, 2};
    const auto res = spearman(x, constant);
    REQUIRE(std::isnan(res.rho));
    REQUIRE(std::isnan(res.p));
    REQUIRE_THROWS_AS(spearman(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("small-n spearman matches the exhaustive permutation oracle") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> cases = {
        {{1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}},
        {{1, 1, 2, 3, 4}, {5, 3, 3, 2, 1}},          // ties in both vectors
        {{0.5, 0.5, 0.5, 1.0, 2.0, 3.0}, {1, 2, 3, 4, 5, 6}},
        {{7, 3, 9, 1, 5, 6, 2}, {4, 4, 8, 2, 6, 6, 1}},
    };
    for (const auto& [x, y] : cases) {
        const auto res = spearman(x, y);
        const auto [orho, op] = oracle_spearman(x, y);
        REQUIRE(res.rho == Catch::Approx(orho).margin(1e-12));
        REQUIRE(res.p == Catch::Approx(op).margin(1e-12));
    }
}

TEST_CASE("large-n spearman p-values match frozen reference values") {
    // Reference rho/p computed with scipy.stats.spearmanr (t approximation).
    const std::vector<double> x1 = {3.1, 1.2, 5.6, 2.2, 8.9, 4.4, 6.1, 0.5, 7.7, 3.3, 9.9, 2.8};
    const std::vector<double> y1 = {2.0, 1.1, 4.9, 3.0, 7.2, 4.0, 5.5, 1.0, 6.9, 4.1, 8.8, 2.1};
    const auto r1 = spearman(x1, y1);
    REQUIRE(r1.rho == Catch::Approx(0.965034965034965).margin(1e-12));
    REQUIRE(r1.p == Catch::Approx(3.88098529962746e-07).epsilon(1e-6));

    std::vector<double> x2(15);
    std::iota(x2.begin(), x2.end(), 0.0);
    const std::vector<double> y2 = {1, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 13, 12, 15, 14};
    const auto r2 = spearman(x2, y2);
    REQUIRE(r2.rho == Catch::Approx(0.975).margin(1e-12));
    REQUIRE(r2.p == Catch::Approx(7.14370596522927e-10).epsilon(1e-6));

    const std::vector<double> x3 = {1, 2, 2, 3, 4, 5, 5, 6, 7, 8, 8};
    const std::vector<double> y3 = {2, 1, 3, 3, 5, 4, 6, 7, 9, 8, 10};
    const auto r3 = spearman(x3, y3);
    REQUIRE(r3.rho == Catch::Approx(0.9472576725723391).margin(1e-12));
    REQUIRE(r3.p == Catch::Approx(9.638449923109123e-06).epsilon(1e-6));
}

TEST_CASE("pearson test matches frozen reference values") {
    const std::vector<double> x1 = {3.1, 1.2, 5.6, 2.2, 8.9, 4.4, 6.1, 0.5, 7.7, 3.3, 9.9, 2.8};
    const std::vector<double> y1 = {2.0, 1.1, 4.9, 3.0, 7.2, 4.0, 5.5, 1.0, 6.9, 4.1, 8.8, 2.1};
    const auto r = pearson_test(x1, y1);
    REQUIRE(r.rho == Catch::Approx(0.9758031782158217).margin(1e-12));
    REQUIRE(r.p == Catch::Approx(6.272588443102761e-08).epsilon(1e-6));
}

TEST_CASE("incomplete beta and student t tail match frozen reference values") {
    REQUIRE(detail::incomplete_beta(4.0, 0.5, 0.6152) ==
            Catch::Approx(0.055690694720496925).epsilon(1e-10));
    REQUIRE(detail::incomplete_beta(2.5, 2.5, 0.3) ==
            Catch::Approx(0.1869669619088736).epsilon(1e-10));
    REQUIRE(detail::incomplete_beta(0.5, 0.5, 0.5) == Catch::Approx(0.5).epsilon(1e-10));

    REQUIRE(detail::student_t_two_sided_p(2.5, 8) ==
            Catch::Approx(0.03694203771362407).epsilon(1e-10));
    REQUIRE(detail::student_t_two_sided_p(1.0, 10) ==
            Catch::Approx(0.3408931323020601).epsilon(1e-10));
    REQUIRE(detail::student_t_two_sided_p(4.2, 13) ==
            Catch::Approx(0.001039559789362987).epsilon(1e-10));
    REQUIRE(detail::student_t_two_sided_p(0.3, 5) ==
            Catch::Approx(0.7762490422632745).epsilon(1e-10));
}

TEST_CASE("fractional ranks average ties") {
    const std::vector<double> v = {10, 20, 20, 30};
    REQUIRE(fractional_ranks(v) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
}
