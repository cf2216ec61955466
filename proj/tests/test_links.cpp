#include "scx/generators.hpp"
#include "scx/links.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace scx;

TEST_CASE("octahedron vertex link is the weighted 4-cycle") {
    WeightedComplex cx = ComplexGenerator::octahedron().truncation(1);
    LinkGraph lk = link_of(cx, Simplex{0});
    REQUIRE(lk.n() == 4);
    CHECK(lk.verts == std::vector<vertex_id>{2, 3, 4, 5});
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(lk.vmass[i] == 1.0);
        CHECK(lk.interior[i] == 1);
        CHECK(lk.rowptr[i + 1] - lk.rowptr[i] == 2);   // each link vertex has 2 neighbours
        CHECK(lk.weighted_degree(i) == 2.0);
    }
    // the cycle alternates between the {2,3} and {4,5} pairs; 2-3 and 4-5 are not edges
    auto has_edge = [&](vertex_id a, vertex_id b) {
        auto ia = lk.find(a);
        REQUIRE(ia.has_value());
        for (std::int64_t e = lk.rowptr[*ia]; e < lk.rowptr[*ia + 1]; ++e)
            if (lk.verts[static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)])] == b) return true;
        return false;
    };
    CHECK(has_edge(2, 4));
    CHECK(has_edge(2, 5));
    CHECK(has_edge(3, 4));
    CHECK(has_edge(3, 5));
    CHECK(!has_edge(2, 3));
    CHECK(!has_edge(4, 5));
}

TEST_CASE("link masses come from spokes and filled triangles") {
    ComplexBuilder b;
    b.insert_closed(Simplex{0, 1, 2}, [](const Simplex& s) { return s.dim() == 2 ? 5.0 : (s.dim() == 1 ? 3.0 : 2.0); });
    WeightedComplex cx = b.finalize();
    LinkGraph lk = link_of(cx, Simplex{0});
    REQUIRE(lk.n() == 2);
    CHECK(lk.vmass[0] == 3.0);                 // m({0,1})
    CHECK(lk.vmass[1] == 3.0);
    CHECK(lk.weighted_degree(0) == 5.0);       // b(1,2) = m({0,1,2})
    LinkGraph edge_link = link_of(cx, Simplex{1, 2});
    REQUIRE(edge_link.n() == 1);
    CHECK(edge_link.vmass[0] == 5.0);
    CHECK(edge_link.rowptr[1] == 0);           // a single link vertex has no edges
}

TEST_CASE("link of a missing simplex throws") {
    WeightedComplex cx = ComplexGenerator::octahedron().truncation(1);
    CHECK_THROWS_AS(link_of(cx, Simplex{0, 1}), ComplexError);   // antipodal pair is no edge
}

TEST_CASE("link_components separates triangle fans joined at the base") {
    ComplexBuilder b;
    b.insert_closed(Simplex{0, 1, 2}, [](const Simplex&) { return 1.0; });
    b.insert_closed(Simplex{0, 3, 4}, [](const Simplex&) { return 1.0; });
    WeightedComplex cx = b.finalize();
    LinkGraph lk = link_of(cx, Simplex{0});
    REQUIRE(lk.n() == 4);
    std::vector<int> comp = link_components(lk);
    CHECK(comp[0] == comp[1]);                 // {1,2}
    CHECK(comp[2] == comp[3]);                 // {3,4}
    CHECK(comp[0] != comp[2]);
    LinkGraph oct = link_of(ComplexGenerator::octahedron().truncation(1), Simplex{2});
    std::vector<int> one = link_components(oct);
    CHECK(std::set<int>(one.begin(), one.end()).size() == 1);
}

TEST_CASE("restrict inverts lift and lift reproduces coface support") {
    WeightedComplex cx = ComplexGenerator::torus_grid(5, 5).truncation(1);
    Simplex rho{0, 1};
    LinkGraph lk = link_of(cx, rho);
    REQUIRE(lk.n() >= 2);
    SplitMix64 rng{71};
    std::vector<cval> u(lk.n());
    for (auto& z : u) z = {rng.next_symmetric(), rng.next_symmetric()};
    Cochain w = lift_from_link(lk, u);
    CHECK(w.degree() == rho.dim() + 1);
    CHECK(w.support_size() == lk.n());
    std::vector<cval> back = restrict_to_link(lk, w);
    for (std::size_t i = 0; i < lk.n(); ++i) CHECK(std::abs(back[i] - u[i]) <= 1e-15);
    // every support simplex is v cup rho
    for (const auto& [s, v] : w.entries()) CHECK(rho.is_face_of(s));
}

TEST_CASE("localization identities hold to 1e-10") {
    SplitMix64 rng{2026};
    auto run = [&](const WeightedComplex& cx, const Simplex& rho) {
        LocalizationReport rep = verify_localization(cx, rho, rng, 25);
        CHECK(rep.trials == 25);
        CHECK(rep.flux <= 1e-10);
        CHECK(rep.adjoint <= 1e-10);
        CHECK(rep.isometry <= 1e-10);
        CHECK(rep.energy <= 1e-10);
        CHECK(rep.conjugation <= 1e-10);
        CHECK(rep.worst() <= 1e-10);
    };
    run(ComplexGenerator::octahedron().truncation(1), Simplex{0});
    run(ComplexGenerator::cone_over_path().truncation(6), Simplex{0});
    run(ComplexGenerator::cone_over_path().truncation(6), Simplex{1});
    run(ComplexGenerator::torus_grid(6, 4).truncation(1), Simplex{0, 1});
    run(ComplexGenerator::full_simplex(4).truncation(0), Simplex{0, 1, 2});
}

TEST_CASE("localization at the empty simplex sees the vertex skeleton") {
    WeightedComplex cx = ComplexGenerator::full_simplex(3).with_empty().truncation(0);
    LinkGraph lk = link_of(cx, Simplex{});
    REQUIRE(lk.n() == cx.size(0));
    for (std::size_t i = 0; i < lk.n(); ++i) CHECK(lk.vmass[i] == cx.mass(0, i));
    SplitMix64 rng{8};
    LocalizationReport rep = verify_localization(cx, Simplex{}, rng, 25);
    CHECK(rep.worst() <= 1e-10);
}

TEST_CASE("link json names the base and matches sizes") {
    WeightedComplex cx = ComplexGenerator::octahedron().truncation(1);
    LinkGraph lk = link_of(cx, Simplex{4});
    nlohmann::ordered_json j = link_to_json(lk);
    CHECK(j["vertices"].size() == lk.n());
    CHECK(j["edges"].size() == (lk.weight.size() / 2));
}
