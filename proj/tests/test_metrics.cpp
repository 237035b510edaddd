#include "dimenfix/error.hpp"
#include "dimenfix/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

using namespace dimenfix;

TEST_CASE("kruskal_stress hand cases") {
    const CondensedDistanceMatrix original(3, {1.0, 2.0, 1.0});
    CHECK(kruskal_stress(original, original).stress == 0.0);

    const CondensedDistanceMatrix projected(3, {1.0, 3.0, 2.0});
    CHECK(std::abs(kruskal_stress(original, projected).stress - std::sqrt(2.0 / 6.0)) < 1e-9);
    CHECK(kruskal_stress(original, projected).stress == doctest::Approx(0.57735).epsilon(1e-5));

    const CondensedDistanceMatrix collapsed(3, {0.0, 0.0, 0.0});
    CHECK(std::abs(kruskal_stress(original, collapsed).stress - 1.0) < 1e-9);

    CHECK_THROWS_AS(kruskal_stress(collapsed, original), InvalidArgument);
    CHECK_THROWS_AS(kruskal_stress(original, CondensedDistanceMatrix(2, {1.0})), InvalidArgument);
}

TEST_CASE("kruskal_stress invariances") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const Matrix a = oracle::random_matrix(20, 5, seed);
        const Matrix b = oracle::random_matrix(20, 2, seed + 100);
        const auto da = build_distance_matrix(a);
        const auto db = build_distance_matrix(b);
        const double s = kruskal_stress(da, db).stress;

        CHECK(kruskal_stress(da, da).stress == 0.0);

        // Same permutation applied to both point sets.
        std::vector<std::size_t> perm(20);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), std::mt19937_64(seed));
        Matrix pa(20, 5), pb(20, 2);
        for (std::size_t r = 0; r < 20; ++r) {
            std::copy(a.row(perm[r]).begin(), a.row(perm[r]).end(), pa.row(r).begin());
            std::copy(b.row(perm[r]).begin(), b.row(perm[r]).end(), pb.row(r).begin());
        }
        CHECK(kruskal_stress(build_distance_matrix(pa), build_distance_matrix(pb)).stress ==
              doctest::Approx(s).epsilon(1e-12));

        // Common positive scale factor.
        auto scaled = [](const CondensedDistanceMatrix& m, double k) {
            std::vector<double> e(m.entries().begin(), m.entries().end());
            for (double& x : e) {
                x *= k;
            }
            return CondensedDistanceMatrix(m.n_points(), e);
        };
        CHECK(kruskal_stress(scaled(da, 3.7), scaled(db, 3.7)).stress ==
              doctest::Approx(s).epsilon(1e-12));
    }
}

TEST_CASE("stress_pipeline") {
    SUBCASE("identity embedding when F equals n") {
        const Matrix v = oracle::random_matrix(30, 2, 4, 0.0, 10.0);
        const Dataset d(v, {"x", "y"});
        const Embedding e{v, std::nullopt};
        CHECK(stress_pipeline(d, e, {}).stress == 0.0);
        // Any affine per-axis change of the embedding is undone by the rescale.
        Embedding stretched = e;
        for (std::size_t r = 0; r < 30; ++r) {
            stretched.coords(r, 0) = 5.0 * v(r, 0) - 2.0;
        }
        CHECK(stress_pipeline(d, stretched, {}).stress < 1e-12);
    }
    SUBCASE("result stays in [0, 1] on pipeline-scaled inputs") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const Dataset d(oracle::random_matrix(25, 6, seed), {"a", "b", "c", "d", "e", "f"});
            const Embedding e{oracle::random_matrix(25, 3, seed * 7), std::nullopt};
            const double s = stress_pipeline(d, e, {}).stress;
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
        }
    }
    SUBCASE("size mismatch") {
        const Dataset d(oracle::random_matrix(5, 2, 1), {"x", "y"});
        const Embedding e{oracle::random_matrix(6, 2, 1), std::nullopt};
        CHECK_THROWS_AS(stress_pipeline(d, e, {}), InvalidArgument);
    }
}

namespace {

// Leave-one-out 1-NN from an explicit neighbor table.
double brute_force_1nn(const Matrix& coords, const std::vector<std::string>& labels) {
    const auto d = oracle::dense_distances(coords);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < coords.rows(); ++i) {
        std::size_t best = i == 0 ? 1 : 0;
        for (std::size_t j = 0; j < coords.rows(); ++j) {
            if (j != i && d[i][j] < d[i][best]) {
                best = j;
            }
        }
        hits += labels[best] == labels[i];
    }
    return static_cast<double>(hits) / static_cast<double>(coords.rows());
}

} // namespace

TEST_CASE("knn label accuracy") {
    SUBCASE("separated clusters") {
        const Matrix c = Matrix::from_rows({{0, 0}, {0.1, 0}, {0, 0.1}, {10, 10}, {10.1, 10}, {10, 10.1}});
        const std::vector<std::string> l{"a", "a", "a", "b", "b", "b"};
        CHECK(knn_label_accuracy(c, l, 1) == 1.0);
        CHECK(knn_label_accuracy(c, l, 2) == 1.0);
    }
    SUBCASE("hand-placed four points") {
        // 0 and 1 are mutual nearest neighbors with different labels; 2 is
        // nearest to 1; 3 is nearest to 2.
        const Matrix c = Matrix::from_rows({{0, 0}, {1, 0}, {2.5, 0}, {4.5, 0}});
        const std::vector<std::string> l{"x", "y", "y", "x"};
        const double expected = brute_force_1nn(c, l);
        CHECK(expected == 0.25);
        CHECK(knn_label_accuracy(c, l, 1) == expected);
    }
    SUBCASE("k = 3 majority vote") {
        const Matrix c = Matrix::from_rows({{0, 0}, {1, 0}, {0, 2}, {-3, 0}, {50, 50}});
        const std::vector<std::string> l{"p", "p", "q", "q", "r"};
        // Point 0: neighbors 1 (p), 2 (q), 3 (q) -> q, a miss; every other
        // point is likewise outvoted.
        CHECK(knn_label_accuracy(c, l, 3) == 0.0);
    }
    SUBCASE("k = 2 tie goes to the nearest neighbor") {
        const Matrix c = Matrix::from_rows({{0, 0}, {1, 0}, {-2, 0}});
        // Points 0 and 1 see one b and one c; the nearer b wins. Point 2 sees two b.
        CHECK(knn_label_accuracy(c, std::vector<std::string>{"b", "b", "c"}, 2) ==
              doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("random labels sit near the class prior") {
        const Matrix c = oracle::random_matrix(400, 2, 77);
        std::vector<std::string> l;
        std::mt19937_64 rng(5);
        for (int i = 0; i < 400; ++i) {
            l.push_back(rng() % 2 ? "a" : "b");
        }
        const double acc = knn_label_accuracy(c, l, 1);
        CHECK(acc > 0.35);
        CHECK(acc < 0.65);
        CHECK(acc == brute_force_1nn(c, l));
    }
    SUBCASE("errors") {
        const Matrix c = oracle::random_matrix(4, 2, 1);
        CHECK_THROWS_AS(knn_label_accuracy(c, std::vector<std::string>{"a"}, 1), InvalidArgument);
        CHECK_THROWS_AS(knn_label_accuracy(c, std::vector<std::string>(4, "a"), 0), InvalidArgument);
    }
}
