#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "nodallab/nodal.hpp"
#include "nodallab/spectral.hpp"

using namespace nodallab;

TEST_CASE("sign classification with a scaled zero threshold") {
    std::vector<double> f = {2.0, -1.0, 1e-15, 0.0, 5e-13};
    SignVector s = SignVector::classify(f);
    CHECK(s.zero_threshold == doctest::Approx(2e-12));
    CHECK(s.sign == std::vector<int>{1, -1, 0, 0, 0});
    CHECK(s.positives == 1);
    CHECK(s.negatives == 1);
    CHECK(s.zeros == 3);

    SignVector all_zero = SignVector::classify(std::vector<double>{0.0, 0.0});
    CHECK(all_zero.zeros == 2);
}

TEST_CASE("weak and strong domains of the bipartite eigenvector") {
    Graph g = fixtures::complete_bipartite(3, 3);
    std::vector<double> f = {1, 1, 1, -1, -1, -1};

    for (DomainMode mode : {DomainMode::kWeak, DomainMode::kStrong}) {
        NodalPartition part = nodal_domains(g, f, mode);
        CHECK(part.domain_count() == 6);
        CHECK(part.two_largest_total() == 2);
        for (const auto& dom : part.domains) {
            CHECK(dom.singleton);
            CHECK(dom.vertices.size() == 1);
            CHECK(dom.sign == (dom.vertices.members[0] < 3 ? 1 : -1));
        }
    }
    CHECK(singleton_count(g, f) == 6);
}

TEST_CASE("alternating cycle vector: all domains are singletons") {
    Graph c6 = fixtures::cycle(6);
    std::vector<double> f = {1, -1, 1, -1, 1, -1};
    CHECK(nodal_domains(c6, f, DomainMode::kStrong).domain_count() == 6);
    CHECK(nodal_domains(c6, f, DomainMode::kWeak).domain_count() == 6);
    CHECK(singleton_count(c6, f) == 6);

    // Without zeros, weak and strong partitions coincide.
    std::vector<double> g = {2, 1, -1, -3, 5, -2};
    auto weak = nodal_domains(c6, g, DomainMode::kWeak);
    auto strong = nodal_domains(c6, g, DomainMode::kStrong);
    REQUIRE(weak.domain_count() == strong.domain_count());
    for (int i = 0; i < weak.domain_count(); ++i) {
        CHECK(weak.domains[i].vertices.members == strong.domains[i].vertices.members);
        CHECK(weak.domains[i].sign == strong.domains[i].sign);
    }
}

TEST_CASE("zero vertices join one weak domain of each sign") {
    Graph p3 = fixtures::path(3);
    std::vector<double> f = {1, 0, -1};

    NodalPartition weak = nodal_domains(p3, f, DomainMode::kWeak);
    REQUIRE(weak.domain_count() == 2);
    CHECK(weak.domains[0].sign == 1);
    CHECK(weak.domains[0].vertices.members == std::vector<int>{0, 1});
    CHECK(weak.domains[1].sign == -1);
    CHECK(weak.domains[1].vertices.members == std::vector<int>{1, 2});
    CHECK(weak.two_largest_total() == 4);  // overlap counted per domain

    NodalPartition strong = nodal_domains(p3, f, DomainMode::kStrong);
    REQUIRE(strong.domain_count() == 2);
    CHECK(strong.domains[0].vertices.members == std::vector<int>{0});
    CHECK(strong.domains[1].vertices.members == std::vector<int>{2});
}

TEST_CASE("all-zero graph components are reported once, with sign 0") {
    Graph two = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
    std::vector<double> f = {1, 1, 1, 0, 0, 0};
    NodalPartition weak = nodal_domains(two, f, DomainMode::kWeak);
    REQUIRE(weak.domain_count() == 2);
    CHECK(weak.domains[0].sign == 1);
    CHECK(weak.domains[0].vertices.members == std::vector<int>{0, 1, 2});
    CHECK(weak.domains[1].sign == 0);
    CHECK(weak.domains[1].vertices.members == std::vector<int>{3, 4, 5});

    CHECK(nodal_domains(two, f, DomainMode::kStrong).domain_count() == 1);

    // Zero vertices wedged between both signs appear on both sides, but the
    // purely-zero component still shows up exactly once.
    Graph mix = fixtures::path(5);
    std::vector<double> h = {1, 0, 0, -1, 0};
    NodalPartition part = nodal_domains(mix, h, DomainMode::kWeak);
    REQUIRE(part.domain_count() == 2);
    CHECK(part.domains[0].vertices.members == std::vector<int>{0, 1, 2});
    CHECK(part.domains[0].sign == 1);
    CHECK(part.domains[1].vertices.members == std::vector<int>{1, 2, 3, 4});
    CHECK(part.domains[1].sign == -1);
}

TEST_CASE("domain bookkeeping on fuzzed eigenvectors") {
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = random_regular(30 + 2 * trial, 3, 400 + trial);
        EigenSystem eig = eigendecompose(g);
        const int n = g.vertex_count();
        for (int k = 0; k < n; k += 3) {
            auto f = eig.vec(k);
            SignVector sv = SignVector::classify(f);
            NodalPartition weak = nodal_domains(g, f, DomainMode::kWeak);
            NodalPartition strong = nodal_domains(g, f, DomainMode::kStrong);
            CAPTURE(trial);
            CAPTURE(k);

            // Strong domains partition the nonzero support exactly.
            std::set<int> seen;
            int covered = 0;
            for (const auto& dom : strong.domains) {
                CHECK(dom.sign != 0);
                for (int v : dom.vertices.members) {
                    CHECK(sv.sign[v] == dom.sign);
                    CHECK(!seen.count(v));
                    seen.insert(v);
                    ++covered;
                }
            }
            CHECK(covered == sv.positives + sv.negatives);

            // Weak domains: every vertex of a domain matches its sign or is 0;
            // nonzero vertices appear exactly once, zeros at most twice.
            std::vector<int> hits(n, 0);
            for (const auto& dom : weak.domains) {
                for (int v : dom.vertices.members) {
                    if (sv.sign[v] != 0) CHECK(sv.sign[v] == dom.sign);
                    ++hits[v];
                }
            }
            for (int v = 0; v < n; ++v) {
                if (sv.sign[v] != 0)
                    CHECK(hits[v] == 1);
                else
                    CHECK(hits[v] >= 1);
            }
            int zero_domains = 0;
            for (const auto& dom : weak.domains) zero_domains += dom.sign == 0;
            CHECK(weak.domain_count() - zero_domains <= strong.domain_count());

            // Both signs present forces at least one domain per sign.
            if (sv.positives > 0 && sv.negatives > 0) CHECK(weak.domain_count() >= 2);
        }
    }
}

TEST_CASE("giant component certificate") {
    Graph k4 = fixtures::complete(4);
    Certificate full = giant_component_certificate(k4, VertexSet::full(4));
    CHECK(full.holds);
    CHECK(full.bound == doctest::Approx(4.0));
    CHECK(full.achieved == doctest::Approx(4.0));

    Graph pet = fixtures::petersen();
    Certificate outer = giant_component_certificate(pet, VertexSet::of({0, 1, 2, 3, 4}, 10));
    CHECK(outer.holds);
    CHECK(outer.achieved == doctest::Approx(5.0));  // the outer cycle is connected
    CHECK(outer.bound == doctest::Approx((0.5 - 2.0 * 0.5 * 2.0 / (3.0 - 2.0)) * 10.0));

    CHECK_THROWS_AS(giant_component_certificate(fixtures::path(4), VertexSet::full(4)),
                    PreconditionError);  // not regular
    CHECK_THROWS_AS(giant_component_certificate(fixtures::cycle(6), VertexSet::full(6)),
                    PreconditionError);  // bipartite: lambda(G) = d
}

TEST_CASE("two giant domains certificate") {
    Graph k4 = fixtures::complete(4);
    EigenSystem eig = eigendecompose(k4);
    for (int k = 0; k < 4; ++k) {
        Certificate cert = two_giant_domains_certificate(k4, eig.vec(k));
        CHECK(cert.holds);
        if (k > 0) CHECK(cert.bound == doctest::Approx(0.0));
    }

    Graph pet = fixtures::petersen();
    EigenSystem peig = eigendecompose(pet);
    Certificate neg = two_giant_domains_certificate(pet, peig.vec(9));
    CHECK(neg.holds);
    CHECK(neg.bound == doctest::Approx(-30.0));  // vacuous at lambda(G)=2, d=3

    std::vector<double> f(6, 1.0);
    CHECK_THROWS_AS(two_giant_domains_certificate(fixtures::cycle(6), f), PreconditionError);
}

TEST_CASE("negative eigenvalue domain certificate") {
    Graph k33 = fixtures::complete_bipartite(3, 3);
    std::vector<double> f = {1, 1, 1, -1, -1, -1};

    Certificate cert = negative_eigenvalue_domain_certificate(k33, f, -3.0, 0.3);
    CHECK(cert.applicable);
    CHECK(cert.holds);
    CHECK(cert.achieved == doctest::Approx(6.0));
    // eta = 1 for the flat vector, so the bound is n / 2^(2 + log2/log(1.15)).
    double exponent = 2.0 + std::log(2.0) / std::log1p(0.3 / 2.0);
    CHECK(cert.bound == doctest::Approx(6.0 / std::pow(2.0, exponent)));

    // Above the threshold nothing is claimed.
    Graph pet = fixtures::petersen();
    EigenSystem eig = eigendecompose(pet);
    Certificate above = negative_eigenvalue_domain_certificate(pet, eig.vec(9), -2.0, 0.3);
    CHECK(!above.applicable);
    CHECK(above.holds);

    CHECK_THROWS_AS(
        negative_eigenvalue_domain_certificate(fixtures::cycle(6), f, -2.0, 0.3),
        PreconditionError);  // d < 3
    std::vector<double> not_eig = {1, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(negative_eigenvalue_domain_certificate(k33, not_eig, -3.0, 0.3),
                    PreconditionError);  // Rayleigh quotient far from lambda
}

TEST_CASE("positive scaling and negation leave the partition structure alone") {
    Graph g = random_regular(40, 3, 11);
    EigenSystem eig = eigendecompose(g);
    auto f = eig.vec(35);
    std::vector<double> scaled(f.begin(), f.end()), negated(f.begin(), f.end());
    for (auto& x : scaled) x *= 7.5;
    for (auto& x : negated) x = -x;

    for (DomainMode mode : {DomainMode::kWeak, DomainMode::kStrong}) {
        NodalPartition base = nodal_domains(g, f, mode);
        NodalPartition s = nodal_domains(g, scaled, mode);
        NodalPartition neg = nodal_domains(g, negated, mode);
        REQUIRE(s.domain_count() == base.domain_count());
        REQUIRE(neg.domain_count() == base.domain_count());
        for (int i = 0; i < base.domain_count(); ++i) {
            CHECK(s.domains[i].vertices.members == base.domains[i].vertices.members);
            CHECK(s.domains[i].sign == base.domains[i].sign);
        }
    }
    CHECK(singleton_count(g, scaled) == singleton_count(g, f));
    CHECK(singleton_count(g, negated) == singleton_count(g, f));
}

// For lambda <= -(d-1)-alpha, a coordinate of modulus >= 1/(2 sqrt n) either
// sits in a singleton domain or starts a strictly-modulus-increasing walk that
// must reach one; the walk multiplies |f| by (1+alpha/(d-1)) per step and is
// capped by the peak, so a singleton lies within k_tilde hops.
TEST_CASE("descent: large coordinates sit near singleton domains") {
    const double alpha = 0.3;
    const int d = 3;
    int vectors_tested = 0;
    for (int trial = 0; trial < 5; ++trial) {
        Graph g = random_regular(140 + 20 * trial, d, 700 + trial);
        EigenSystem eig = eigendecompose(g);
        const int n = g.vertex_count();
        for (int k = n - 1; k >= 0 && eig.values[k] <= -(d - 1.0) - alpha; --k) {
            auto f = eig.vec(k);
            SignVector sv = SignVector::classify(f);
            std::vector<char> is_singleton(n, 0);
            for (int v = 0; v < n; ++v) {
                if (sv.sign[v] == 0) continue;
                bool all_opp = true;
                for (int u : g.neighbors(v)) all_opp &= sv.sign[u] == -sv.sign[v];
                is_singleton[v] = all_opp;
            }
            double peak = 0.0;
            for (double x : f) peak = std::max(peak, std::fabs(x));
            const double eta = std::sqrt(static_cast<double>(n)) * peak;
            const int k_tilde = static_cast<int>(
                std::ceil(std::log(2.0 * eta) / std::log1p(alpha / (d - 1.0))));
            ++vectors_tested;

            for (int v = 0; v < n; ++v) {
                if (std::fabs(f[v]) < 0.5 / std::sqrt(static_cast<double>(n))) continue;
                VertexSet near = ball(g, VertexSet::of({v}, n), k_tilde);
                bool found = false;
                for (int w : near.members) found |= is_singleton[w];
                CAPTURE(trial);
                CAPTURE(k);
                CAPTURE(v);
                CHECK(found);
            }
        }
    }
    CHECK(vectors_tested > 0);  // the deep tail must actually occur
}

TEST_CASE("certificates carry provenance") {
    Graph k4 = fixtures::complete(4);
    Certificate cert = giant_component_certificate(k4, VertexSet::full(4));
    CHECK(cert.inputs.graph_hash == k4.content_hash());
    bool has_lambda = false;
    for (const auto& [key, value] : cert.inputs.params) has_lambda |= key == "lambda";
    CHECK(has_lambda);
}
