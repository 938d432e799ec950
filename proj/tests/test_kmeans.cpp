#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ddc/cluster/kmeans.hpp"
#include "ddc/error.hpp"
#include "test_rng.hpp"

using namespace ddc;

namespace {

double gauss(std::mt19937_64& rng, double mean, double sigma) {
    const double u1 = 1.0 - testrng::uniform01(rng);
    const double u2 = testrng::uniform01(rng);
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::vector<Point2D> blob(std::mt19937_64& rng, std::size_t n, Point2D center, double sigma) {
    std::vector<Point2D> pts(n);
    for (auto& p : pts) p = {gauss(rng, center.x, sigma), gauss(rng, center.y, sigma)};
    return pts;
}

void check_result_contract(std::span<const Point2D> pts, const KMeansParams& params,
                           const KMeansResult& res) {
    const int k = params.k;
    REQUIRE(res.labeling.labels.size() == pts.size());
    REQUIRE(res.labeling.n_clusters == k);
    REQUIRE(res.centroids.size() == static_cast<std::size_t>(k));
    REQUIRE(!res.inertia_history.empty());

    CHECK(std::is_sorted(res.centroids.begin(), res.centroids.end()));

    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const int l = res.labeling.labels[i];
        REQUIRE(l >= 0);
        REQUIRE(l < k);
        ++count[static_cast<std::size_t>(l)];
        // The label reaches the minimum distance over all centroids.
        const double own = dist_sq(pts[i], res.centroids[static_cast<std::size_t>(l)]);
        for (const Point2D& c : res.centroids) CHECK(own <= dist_sq(pts[i], c));
    }
    for (const int c : count) CHECK(c > 0);

    for (std::size_t i = 0; i + 1 < res.inertia_history.size(); ++i)
        CHECK(res.inertia_history[i + 1] <=
              res.inertia_history[i] + 1e-9 * std::max(1.0, res.inertia_history[i]));
}

}  // namespace

TEST_SUITE("kmeans") {

TEST_CASE("rejects bad parameters") {
    const std::vector<Point2D> pts{{0, 0}, {1, 0}, {2, 0}};
    CHECK_THROWS_AS(kmeans(pts, {0, 100, 1}), InvalidParam);
    CHECK_THROWS_AS(kmeans(pts, {4, 100, 1}), InvalidParam);
    CHECK_THROWS_AS(kmeans(pts, {2, 0, 1}), InvalidParam);
    CHECK_THROWS_AS(kmeans(std::vector<Point2D>{}, {1, 100, 1}), DegenerateInput);
    // Duplicates collapse for the k bound: three distinct coordinates here.
    const std::vector<Point2D> dup{{0, 0}, {0, 0}, {5, 5}, {5, 5}, {9, 1}};
    CHECK_THROWS_AS(kmeans(dup, {4, 100, 1}), InvalidParam);
    CHECK_NOTHROW(kmeans(dup, {3, 100, 1}));
}

TEST_CASE("k equal to one returns the mean") {
    std::mt19937_64 rng(81);
    const auto pts = blob(rng, 64, {2, -3}, 1.5);
    const KMeansResult res = kmeans(pts, {1, 100, 9});
    check_result_contract(pts, {1, 100, 9}, res);
    double mx = 0, my = 0;
    for (const auto& p : pts) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    CHECK(res.centroids[0].x == doctest::Approx(mx).epsilon(1e-12));
    CHECK(res.centroids[0].y == doctest::Approx(my).epsilon(1e-12));
}

TEST_CASE("k equal to n pins every point") {
    std::mt19937_64 rng(82);
    std::vector<Point2D> pts(12);
    for (auto& p : pts) p = {testrng::uniform(rng, -4, 4), testrng::uniform(rng, -4, 4)};
    const KMeansParams params{static_cast<int>(pts.size()), 100, 5};
    const KMeansResult res = kmeans(pts, params);
    check_result_contract(pts, params, res);
    CHECK(res.inertia_history.back() == 0.0);
    std::vector<Point2D> sorted(pts.begin(), pts.end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(res.centroids == sorted);
}

TEST_CASE("three separated blobs come out clean for any seed") {
    std::mt19937_64 rng(83);
    std::vector<Point2D> pts = blob(rng, 100, {0, 0}, 0.5);
    const auto b2 = blob(rng, 100, {20, 0}, 0.5);
    const auto b3 = blob(rng, 100, {0, 20}, 0.5);
    pts.insert(pts.end(), b2.begin(), b2.end());
    pts.insert(pts.end(), b3.begin(), b3.end());

    std::vector<int> reference;
    for (const std::uint64_t seed : {1ull, 7ull, 42ull, 1234ull}) {
        const KMeansParams params{3, 100, seed};
        const KMeansResult res = kmeans(pts, params);
        check_result_contract(pts, params, res);
        // One label per blob.
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 100; ++i)
                CHECK(res.labeling.labels[static_cast<std::size_t>(b * 100 + i)] ==
                      res.labeling.labels[static_cast<std::size_t>(b * 100)]);
        // Canonical label order makes the outcome seed-independent here.
        if (reference.empty())
            reference = res.labeling.labels;
        else
            CHECK(reference == res.labeling.labels);
        for (const Point2D& c : res.centroids) {
            const double d0 = dist(c, {0, 0});
            const double d1 = dist(c, {20, 0});
            const double d2v = dist(c, {0, 20});
            CHECK(std::min({d0, d1, d2v}) < 0.5);
        }
    }
}

TEST_CASE("same seed reproduces the exact result") {
    std::mt19937_64 rng(84);
    std::vector<Point2D> pts(300);
    for (auto& p : pts) p = {testrng::uniform(rng, 0, 10), testrng::uniform(rng, 0, 10)};
    const KMeansParams params{5, 100, 77};
    const KMeansResult a = kmeans(pts, params);
    const KMeansResult b = kmeans(pts, params);
    CHECK(a.labeling.labels == b.labeling.labels);
    CHECK(a.centroids == b.centroids);
    CHECK(a.inertia_history == b.inertia_history);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("duplicate-heavy data keeps clusters non-empty") {
    std::vector<Point2D> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({0, 0});
    for (int i = 0; i < 10; ++i) pts.push_back({10, 0});
    for (int i = 0; i < 10; ++i) pts.push_back({10, 10});
    const KMeansParams params{3, 100, 2};
    const KMeansResult res = kmeans(pts, params);
    check_result_contract(pts, params, res);
    CHECK(res.inertia_history.back() == 0.0);
}

TEST_CASE("random battery holds the contract") {
    std::mt19937_64 rng(85);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 5 + testrng::below(rng, 196);
        std::vector<Point2D> pts(n);
        for (auto& p : pts) p = {testrng::uniform(rng, -8, 8), testrng::uniform(rng, -8, 8)};
        const int k = 1 + static_cast<int>(testrng::below(rng, std::min<std::size_t>(8, n)));
        const KMeansParams params{k, 100, 1000 + static_cast<std::uint64_t>(round)};
        check_result_contract(pts, params, kmeans(pts, params));
    }
}

TEST_CASE("high k near the distinct count stays non-empty") {
    std::mt19937_64 rng(86);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 3 + testrng::below(rng, 28);
        std::vector<Point2D> pts(n);
        for (auto& p : pts) p = {testrng::uniform(rng, 0, 3), testrng::uniform(rng, 0, 3)};
        const int distinct = static_cast<int>(dedup_points(pts).size());
        const int k = std::max(1, distinct - static_cast<int>(testrng::below(rng, 3)));
        const KMeansParams params{k, 100, 5000 + static_cast<std::uint64_t>(round)};
        check_result_contract(pts, params, kmeans(pts, params));
    }
}

}
