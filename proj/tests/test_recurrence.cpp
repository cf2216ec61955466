#include "scx/recurrence.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace scx;

TEST_CASE("Z line capacity is exactly 2/n") {
    GraphExhaustion exh = GraphExhaustion::z_line();
    std::vector<int> levels{2, 4, 8, 16, 64, 256};
    auto pts = resistance_profile(exh, levels);
    REQUIRE(pts.size() == levels.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double n = static_cast<double>(levels[i]);
        CHECK(pts[i].vertices == static_cast<std::size_t>(2 * levels[i] + 1));
        CHECK(std::abs(pts[i].capacity - 2.0 / n) <= 1e-10);
        CHECK(std::abs(pts[i].resistance - n / 2.0) <= 1e-10 * n);
        CHECK(!pts[i].closed);
    }
}

TEST_CASE("binary tree resistance matches the series-parallel formula both solver paths") {
    GraphExhaustion exh = GraphExhaustion::tree(2);
    // oracle: shell k -> k+1 carries 2^(k+1) unit edges, R_n = sum 2^-(k+1) = 1 - 2^-n
    auto oracle = [](int n) {
        double r = 0.0;
        for (int k = 0; k < n; ++k) r += std::pow(2.0, -(k + 1));
        return r;
    };
    std::vector<int> levels{6, 10, 14, 16, 24, 30};
    auto pts = resistance_profile(exh, levels);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double tol = levels[i] <= radial_cutover ? 1e-9 : 1e-12;   // CG below the cutover, exact above
        CHECK(std::abs(pts[i].resistance - oracle(levels[i])) <= tol);
    }
    CHECK(std::abs(oracle(30) - (1.0 - std::pow(2.0, -30))) <= 1e-15);
}

TEST_CASE("ternary tree CG and shell reduction agree across the cutover") {
    GraphExhaustion exh = GraphExhaustion::tree(3);
    auto below = resistance_profile(exh, std::vector<int>{12});
    SeriesNetwork net = tree_series_network(3, 12);
    CHECK(std::abs(below[0].resistance - net.resistance()) <= 1e-9);
    auto above = resistance_profile(exh, std::vector<int>{17});
    SeriesNetwork net2 = tree_series_network(3, 17);
    CHECK(above[0].resistance == doctest::Approx(net2.resistance()).epsilon(1e-13));
}

TEST_CASE("summable chain resistance is the geometric sum") {
    GraphExhaustion exh = GraphExhaustion::summable_chain(0.25);
    auto pts = resistance_profile(exh, std::vector<int>{2, 4, 8});
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int n = pts[i].level;
        double r = (std::pow(4.0, n) - 1.0) / 3.0;
        CHECK(pts[i].resistance == doctest::Approx(r).epsilon(1e-8));
    }
}

TEST_CASE("classifier verdicts for the standard families") {
    ClassifyPolicy pol;
    auto verdict_of = [&](GraphExhaustion exh, std::vector<int> levels) {
        auto rep = classify_exhaustion(exh, levels, pol);
        REQUIRE(rep.components.size() == 1);
        return rep.components[0];
    };

    auto zline = verdict_of(GraphExhaustion::z_line(), std::vector<int>{2, 4, 8, 16, 32, 64, 128, 256});
    CHECK(zline.verdict == Verdict::Recurrent);
    CHECK(zline.reason.find("capacity decayed below") != std::string::npos);

    auto tree = verdict_of(GraphExhaustion::tree(2), default_levels(GraphExhaustion::tree(2), 20));
    CHECK(tree.verdict == Verdict::Transient);
    CHECK(tree.reason.find("resistance stabilized") != std::string::npos);

    auto chain = verdict_of(GraphExhaustion::summable_chain(0.25), std::vector<int>{2, 3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(chain.verdict == Verdict::Recurrent);

    // Z^3 increments fall under the stabilization eps from level ~26 at step 2
    auto z3 = verdict_of(GraphExhaustion::z_lattice(3), std::vector<int>{26, 28, 30, 32, 34, 36, 38});
    CHECK(z3.verdict == Verdict::Transient);

    // Z^2 capacity decays like 1/log n: at reachable levels it neither
    // stabilizes nor drops below threshold, so the honest verdict is open
    auto z2 = verdict_of(GraphExhaustion::z_lattice(2), std::vector<int>{2, 4, 8, 16, 24, 32, 40});
    CHECK(z2.verdict == Verdict::Undetermined);
}

TEST_CASE("short profiles stay undetermined") {
    GraphExhaustion exh = GraphExhaustion::z_line();
    auto rep = classify_exhaustion(exh, std::vector<int>{2, 3, 4});
    CHECK(rep.components[0].verdict == Verdict::Undetermined);
    CHECK(rep.overall() == Verdict::Undetermined);
}

TEST_CASE("closed links classify recurrent outright") {
    WeightedComplex cx = ComplexGenerator::octahedron().truncation(1);
    LinkGraph lk = link_of(cx, Simplex{3});
    auto rep = classify_link_components(lk);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].verdict == Verdict::Recurrent);
    CHECK(rep.components[0].reason.find("closed") != std::string::npos);
    CHECK(rep.overall() == Verdict::Recurrent);
}

TEST_CASE("cutoff energy equals root capacity") {
    GraphExhaustion exh = GraphExhaustion::z_line();
    CHECK(std::abs(cutoff_energy(exh, 32) - 2.0 / 32.0) <= 1e-10);
    GraphExhaustion l3 = GraphExhaustion::z_lattice(3);
    auto pts = resistance_profile(l3, std::vector<int>{6});
    CHECK(cutoff_energy(l3, 6) == doctest::Approx(pts[0].capacity).epsilon(1e-10));
}

TEST_CASE("default levels are increasing and clipped") {
    auto lv = default_levels(GraphExhaustion::tree(2), 12);
    REQUIRE(!lv.empty());
    for (std::size_t i = 1; i < lv.size(); ++i) CHECK(lv[i] > lv[i - 1]);
    for (int n : lv) CHECK(n <= GraphExhaustion::tree(2).max_level());
}

TEST_CASE("walk oracle: Z matches gambler's ruin") {
    WalkConfig cfg;
    cfg.seed = 7;
    cfg.walks = 100000;
    WalkResult r = mc_return_probability(1, cfg);
    CHECK(r.returned == 98338);          // frozen for seed 7
    CHECK(r.censored == 0);
    CHECK(r.seed == 7);
    CHECK(std::abs(r.return_probability - (1.0 - 1.0 / 60.0)) <= 2e-3);
}

TEST_CASE("walk streams are seed-reproducible and thread-invariant") {
    WalkConfig cfg;
    cfg.seed = 42;
    cfg.walks = 50000;
    cfg.threads = 1;
    WalkResult a = mc_return_probability(3, cfg);
    CHECK(a.returned == 16872);          // frozen for seed 42
    CHECK(a.censored == 1);
    cfg.threads = 4;
    WalkResult b = mc_return_probability(3, cfg);
    CHECK(b.returned == a.returned);
    CHECK(b.escaped == a.escaped);
    CHECK(b.censored == a.censored);
    cfg.seed = 43;
    WalkResult c = mc_return_probability(3, cfg);
    CHECK(c.returned != a.returned);
}
