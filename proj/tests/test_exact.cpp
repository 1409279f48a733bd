#include "d2d/exact.hpp"

#include <cmath>
#include <vector>

#include "d2d/errors.hpp"
#include "d2d/generators.hpp"
#include "d2d/graph.hpp"
#include "d2d/greedy.hpp"
#include "d2d/rng.hpp"
#include "reference.hpp"
#include "support.hpp"

int main() {
    using d2d::WeightedGraph;

    // hand instances
    {
        const auto r = d2d::exact_match_bruteforce(d2d::line_from_weights({1.0, 2.0, 1.0}));
        CHECK(r.welfare == 2.0);
        CHECK(r.method == "bruteforce");
    }
    {
        const auto r = d2d::exact_match_bruteforce(d2d::line_from_weights({1.0, 1.01, 1.0}));
        CHECK(r.welfare == 2.0);
        CHECK(r.matched_edges == (std::vector<int>{0, 2}));
    }
    {
        const WeightedGraph tri(3, {{0, 1, 5.0}, {1, 2, 1.0}, {0, 2, 1.0}});
        CHECK(d2d::exact_match_bruteforce(tri).welfare == 5.0);
        const auto b = d2d::exact_match_blossom(tri);
        CHECK(b.welfare == 5.0);
        CHECK(b.method == "blossom");
    }
    {
        const WeightedGraph empty(0, {});
        CHECK(d2d::exact_match(empty).welfare == 0.0);
        CHECK(d2d::exact_match_bruteforce(empty).welfare == 0.0);
        const WeightedGraph iso(4, {});
        CHECK(d2d::exact_match(iso).welfare == 0.0);
        CHECK(d2d::exact_match(iso).mate == (std::vector<int>{-1, -1, -1, -1}));
    }

    // brute force rejects oversized inputs
    {
        auto big = d2d::gen_grid(5, 5);  // 40 edges
        CHECK_THROWS(d2d::InvalidParameter, d2d::exact_match_bruteforce(big));
    }

    // negative and zero weights: optimum never includes a non-positive edge
    {
        const WeightedGraph g(4, {{0, 1, -2.0}, {1, 2, 3.0}, {2, 3, -1.0}, {0, 3, 0.0}});
        for (const auto& r :
             {d2d::exact_match_bruteforce(g), d2d::exact_match(g), d2d::exact_match_blossom(g)}) {
            CHECK(r.welfare == 3.0);
            CHECK(r.matched_edges == std::vector<int>{1});
        }
    }

    // the three solvers agree on random instances, bipartite or not
    {
        d2d::Rng rng(60601);
        int routed_bipartite = 0;
        int routed_blossom = 0;
        for (int it = 0; it < 1500; ++it) {
            const auto g = testref::random_small_graph(rng, 8, 24, it % 3 != 0);
            const auto brute = d2d::exact_match_bruteforce(g);
            const auto solved = d2d::exact_match(g);
            const auto blossom = d2d::exact_match_blossom(g);
            REQUIRE(testkit::report(std::abs(brute.welfare - solved.welfare) <= 1e-9 * (1 + std::abs(brute.welfare)),
                                    __FILE__, __LINE__, "exact_match == bruteforce"));
            REQUIRE(std::abs(brute.welfare - blossom.welfare) <= 1e-9 * (1 + std::abs(brute.welfare)));
            REQUIRE(testref::is_valid_matching(g, solved.mate));
            REQUIRE(testref::is_valid_matching(g, blossom.mate));
            if (solved.method == "bipartite") {
                ++routed_bipartite;
                const auto bi = d2d::exact_match_bipartite(g);
                REQUIRE(std::abs(brute.welfare - bi.welfare) <= 1e-9 * (1 + std::abs(brute.welfare)));
            } else {
                ++routed_blossom;
            }
        }
        CHECK(routed_bipartite > 100);
        CHECK(routed_blossom > 100);
    }

    // welfare never below greedy, structurally valid matchings
    {
        d2d::Rng rng(808);
        for (int it = 0; it < 300; ++it) {
            auto g = testref::random_small_graph(rng, 14, 1000, false);
            const auto greedy = d2d::greedy_match(g);
            const auto exact = d2d::exact_match(g);
            REQUIRE(exact.welfare >= greedy.welfare - 1e-12);
        }
        testkit::report(true, __FILE__, __LINE__, "exact >= greedy on 300 instances");
    }

    // bipartite path routed to the flow solver
    {
        const auto g = d2d::line_from_weights({1.0, 2.0, 1.0, 2.0, 1.0});
        const auto r = d2d::exact_match(g);
        CHECK(r.method == "bipartite");
        CHECK(r.welfare == 4.0);
    }

    // blossom handles an odd component chain that needs an augmenting flip
    {
        // 5-cycle with a pendant: optimum pairs (0,1) and (2,3) plus pendant (4,5)
        const WeightedGraph g(6, {{0, 1, 2.0},
                                  {1, 2, 1.0},
                                  {2, 3, 2.0},
                                  {3, 4, 1.0},
                                  {0, 4, 1.0},
                                  {4, 5, 2.0}});
        const auto r = d2d::exact_match_blossom(g);
        CHECK(r.welfare == 6.0);
        CHECK(testref::is_valid_matching(g, r.mate));
    }

    // vertex cap on the dense solver is enforced through the dispatcher
    {
        auto chordal_path = [](int n) {
            std::vector<d2d::Edge> edges;
            for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
            edges.push_back({0, 2, 1.0});  // odd cycle spoils bipartiteness
            return WeightedGraph(n, std::move(edges));
        };
        CHECK_THROWS(d2d::InvalidParameter, d2d::exact_match(chordal_path(1301)));
        CHECK_THROWS(d2d::InvalidParameter, d2d::exact_match(chordal_path(101), 100));
        CHECK(d2d::exact_match(chordal_path(101), 101).welfare == 50.0);
    }

    return testkit::done("exact");
}
