#include <cmath>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "nodallab/spectral.hpp"

using namespace nodallab;

namespace {

void check_values(const Graph& g, std::vector<double> want_descending) {
    EigenSystem eig = eigendecompose(g);
    REQUIRE(eig.values.size() == want_descending.size());
    for (std::size_t i = 0; i < want_descending.size(); ++i)
        CHECK(eig.values[i] == doctest::Approx(want_descending[i]).epsilon(1e-9));
}

}  // namespace

TEST_CASE("spectra of named graphs") {
    check_values(fixtures::complete(4), {3, -1, -1, -1});
    check_values(fixtures::cycle(6), {2, 1, 1, -1, -1, -2});
    check_values(fixtures::complete_bipartite(3, 3), {3, 0, 0, 0, 0, -3});
    check_values(fixtures::petersen(), {3, 1, 1, 1, 1, 1, -2, -2, -2, -2});
    check_values(fixtures::path(2), {1, -1});
    check_values(fixtures::star(4), {2, 0, 0, 0, -2});
    check_values(Graph::from_edge_list(3, {}), {0, 0, 0});
}

TEST_CASE("eigenvectors: unit norm, canonical sign, small residual, orthogonal") {
    Graph g = random_regular(60, 3, 17);
    EigenSystem eig = eigendecompose(g);
    CHECK(eig.residual <= 1e-8 * 60 * 3);
    for (int i = 0; i < 60; ++i) {
        auto v = eig.vec(i);
        double norm2 = 0.0;
        for (double x : v) norm2 += x * x;
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));
        for (double x : v) {
            if (x != 0.0) {
                CHECK(x > 0.0);  // first nonzero coordinate positive
                break;
            }
        }
        if (i > 0) CHECK(eig.values[i] <= eig.values[i - 1] + 1e-12);
        for (int j = i + 1; j < 60; ++j) {
            double ip = 0.0;
            for (int r = 0; r < 60; ++r) ip += v[r] * eig.vec(j)[r];
            CHECK(std::fabs(ip) < 1e-8);
        }
    }
}

TEST_CASE("spectral expansion summary") {
    CHECK(spectral_expansion(fixtures::complete(4)).expansion == doctest::Approx(1.0));
    CHECK(spectral_expansion(fixtures::cycle(6)).expansion == doctest::Approx(2.0));
    CHECK(spectral_expansion(fixtures::petersen()).expansion == doctest::Approx(2.0));
    CHECK(spectral_expansion(fixtures::complete_bipartite(3, 3)).expansion ==
          doctest::Approx(3.0));

    SpectralSummary s = spectral_expansion(fixtures::petersen());
    CHECK(s.lambda_max == doctest::Approx(3.0));
    CHECK(s.lambda_2 == doctest::Approx(1.0));
    CHECK(s.lambda_min == doctest::Approx(-2.0));

    CHECK_THROWS(spectral_expansion(Graph::from_edge_list(1, {})));
}

TEST_CASE("rayleigh quotient") {
    Graph k4 = fixtures::complete(4);
    std::vector<double> ones(4, 1.0);
    CHECK(rayleigh(k4, ones) == doctest::Approx(3.0));

    std::vector<double> split = {1, 1, 1, -1, -1, -1};
    CHECK(rayleigh(fixtures::complete_bipartite(3, 3), split) == doctest::Approx(-3.0));

    Graph g = random_regular(40, 4, 3);
    EigenSystem eig = eigendecompose(g);
    for (int i = 0; i < 40; i += 7) {
        std::vector<double> v(eig.vec(i).begin(), eig.vec(i).end());
        CHECK(rayleigh(g, v) == doctest::Approx(eig.values[i]).epsilon(1e-7));
    }

    std::vector<double> zero(4, 0.0);
    CHECK_THROWS_AS(rayleigh(k4, zero), std::invalid_argument);
    std::vector<double> wrong(3, 1.0);
    CHECK_THROWS_AS(rayleigh(k4, wrong), std::invalid_argument);
}

TEST_CASE("spectral radius") {
    CHECK(spectral_radius(fixtures::path(2)) == doctest::Approx(1.0));
    CHECK(spectral_radius(fixtures::cycle(6)) == doctest::Approx(2.0));
    CHECK(spectral_radius(fixtures::star(4)) == doctest::Approx(2.0));
    CHECK(spectral_radius(fixtures::complete_bipartite(3, 3)) == doctest::Approx(3.0));
    CHECK(spectral_radius(Graph::from_edge_list(2, {})) == 0.0);
}

TEST_CASE("forests stay below the Kesten bound 2 sqrt(max_degree - 1)") {
    for (int i = 0; i < 60; ++i) {
        Graph t = fixtures::random_tree(5 + i % 40, 900 + i);
        if (t.max_degree() < 2) continue;
        double bound = 2.0 * std::sqrt(t.max_degree() - 1.0);
        CAPTURE(i);
        CHECK(spectral_radius(t) <= bound + 1e-9);
    }
}

TEST_CASE("dense symmetric solver on a known matrix") {
    // [[2,1],[1,2]]: eigenvalues 1 and 3, eigenvectors (1,-1)/sqrt2, (1,1)/sqrt2.
    SymEigen sym = sym_eigen({2, 1, 1, 2}, 2);
    REQUIRE(sym.values.size() == 2);
    CHECK(sym.values[0] == doctest::Approx(1.0));
    CHECK(sym.values[1] == doctest::Approx(3.0));
    double inv = 1.0 / std::sqrt(2.0);
    CHECK(std::fabs(sym.vectors[0 * 2 + 0]) == doctest::Approx(inv));
    CHECK(std::fabs(sym.vectors[1 * 2 + 0]) == doctest::Approx(inv));
    CHECK(sym.vectors[0 * 2 + 0] * sym.vectors[1 * 2 + 0] < 0);  // column 0: (1,-1) direction
    CHECK(sym.vectors[0 * 2 + 1] * sym.vectors[1 * 2 + 1] > 0);  // column 1: (1,1) direction
}
