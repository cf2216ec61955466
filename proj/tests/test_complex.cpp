#include "scx/complex.hpp"
#include "scx/generators.hpp"
#include "scx/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace scx;

TEST_CASE("alternating sign against a frozen table") {
    // theta(tau, sigma) = (-1)^i where sigma = {v_0 < ... < v_k} and tau drops v_i
    Simplex s{1, 2, 3};
    CHECK(alternating_sign(Simplex{2, 3}, s) == 1);
    CHECK(alternating_sign(Simplex{1, 3}, s) == -1);
    CHECK(alternating_sign(Simplex{1, 2}, s) == 1);
    CHECK(alternating_sign(Simplex{}, Simplex{5}) == 1);
    Simplex q{0, 4, 7, 9};
    CHECK(alternating_sign(Simplex{4, 7, 9}, q) == 1);
    CHECK(alternating_sign(Simplex{0, 7, 9}, q) == -1);
    CHECK(alternating_sign(Simplex{0, 4, 9}, q) == 1);
    CHECK(alternating_sign(Simplex{0, 4, 7}, q) == -1);
    CHECK_THROWS_AS(alternating_sign(Simplex{5}, s), ComplexError);
}

TEST_CASE("simplex basics") {
    Simplex s{3, 1, 2};   // constructor sorts
    CHECK(s.dim() == 2);
    CHECK(s.vertex(0) == 1);
    CHECK(s.vertex(2) == 3);
    CHECK(s.face(1) == Simplex{1, 3});
    CHECK(s.with_vertex(0) == Simplex{0, 1, 2, 3});
    CHECK(s.without_vertex(2) == Simplex{1, 3});
    CHECK(Simplex{}.dim() == -1);
    CHECK(Simplex{1, 2}.is_face_of(s));
    CHECK(!Simplex{1, 4}.is_face_of(s));
    CHECK_THROWS_AS((Simplex{1, 1}), ComplexError);
}

TEST_CASE("builder closes and indexes; duplicate masses conflict") {
    ComplexBuilder b;
    b.insert_closed(Simplex{0, 1, 2}, [](const Simplex&) { return 2.0; });
    WeightedComplex cx = b.finalize();
    CHECK(cx.total_size() == 7);
    CHECK(cx.size(0) == 3);
    CHECK(cx.size(1) == 3);
    CHECK(cx.size(2) == 1);
    CHECK(cx.mass(Simplex{0, 1}) == 2.0);
    CHECK(cx.cofaces(1, 0).size() == 1);
    cx.validate();

    ComplexBuilder b2;
    b2.add(Simplex{0}, 1.0);
    CHECK_THROWS_AS(b2.add(Simplex{0}, 2.0), ComplexError);

    ComplexBuilder b3;
    b3.add(Simplex{0, 1}, 1.0);   // open edge, vertices missing
    CHECK_THROWS_AS(b3.finalize(), ComplexError);

    ComplexBuilder b4;
    CHECK_THROWS_AS(b4.add(Simplex{0}, -1.0), ComplexError);
}

TEST_CASE("full simplex counts exclude empty unless opted in") {
    WeightedComplex cx = ComplexGenerator::full_simplex(3).truncation(0);
    CHECK(cx.total_size() == 15);   // 2^4 - 1
    CHECK(!cx.include_empty());
    CHECK(cx.min_degree() == 0);

    WeightedComplex ce = ComplexGenerator::full_simplex(3).with_empty().truncation(0);
    CHECK(ce.total_size() == 16);
    CHECK(ce.include_empty());
    CHECK(ce.min_degree() == -1);
    CHECK(ce.mass(Simplex{}) == 1.0);
    CHECK(ce.interior(Simplex{}));
    CHECK(ce.cofaces(-1, 0).size() == 4);
}

TEST_CASE("octahedron has the S2 f-vector") {
    WeightedComplex cx = ComplexGenerator::octahedron().truncation(0);
    CHECK(cx.size(0) == 6);
    CHECK(cx.size(1) == 12);
    CHECK(cx.size(2) == 8);
    for (std::size_t e = 0; e < cx.size(1); ++e) CHECK(cx.cofaces(1, e).size() == 2);
}

TEST_CASE("truncations nest with stable masses and monotone interior flags") {
    auto check_nesting = [](const ComplexGenerator& gen, int a, int bl) {
        WeightedComplex small = gen.truncation(a);
        WeightedComplex big = gen.truncation(bl);
        for (int k = small.min_degree(); k <= small.max_degree(); ++k)
            for (std::size_t i = 0; i < small.size(k); ++i) {
                const Simplex& s = small.simplex(k, i);
                REQUIRE(big.contains(s));
                CHECK(big.mass(s) == doctest::Approx(small.mass(k, i)).epsilon(1e-15));
                if (small.interior(k, i)) {
                    CHECK(big.interior(s));
                    // interior means the coface list is final
                    CHECK(big.cofaces(s.dim(), *big.index_of(s)).size() == small.cofaces(k, i).size());
                }
            }
    };
    check_nesting(ComplexGenerator::cone_over_path(), 3, 5);
    check_nesting(ComplexGenerator::cone_over_tree(2), 3, 5);
    check_nesting(ComplexGenerator::cone_over_lattice(2), 2, 4);
    check_nesting(ComplexGenerator::skeleton_lattice(2), 2, 4);
    check_nesting(ComplexGenerator::star_link(), 3, 6);
}

TEST_CASE("cone_over_path apex and spoke structure") {
    WeightedComplex cx = ComplexGenerator::cone_over_path().truncation(4);
    Simplex apex{0};
    REQUIRE(cx.contains(apex));
    CHECK(!cx.interior(apex));               // its coface list keeps growing
    CHECK(cx.mass(apex) == 1.0);
    CHECK(cx.mass(Simplex{0, 1}) == 1.0);    // path center at depth 0
    // spokes decay with depth: vertex ids 2,3 sit at |i| = 1
    CHECK(cx.mass(Simplex{0, 2}) == 0.5);
    CHECK(cx.mass(Simplex{0, 3}) == 0.5);
    cx.validate();
}

TEST_CASE("skeleton lattice includes the empty simplex as non-interior") {
    WeightedComplex cx = ComplexGenerator::skeleton_lattice(2).truncation(2);
    CHECK(cx.include_empty());
    CHECK(!cx.interior(Simplex{}));          // lk(empty) grows with the level
    CHECK(cx.max_degree() == 1);
}

TEST_CASE("wsc round trip is lossless") {
    WeightedComplex cx = ComplexGenerator::cone_over_tree(2).truncation(3);
    std::stringstream ss;
    write_wsc(ss, cx);
    WeightedComplex back = read_wsc(ss);
    REQUIRE(back.total_size() == cx.total_size());
    for (int k = cx.min_degree(); k <= cx.max_degree(); ++k)
        for (std::size_t i = 0; i < cx.size(k); ++i) {
            const Simplex& s = cx.simplex(k, i);
            REQUIRE(back.contains(s));
            CHECK(back.mass(s) == cx.mass(k, i));
            CHECK(back.interior(s) == cx.interior(k, i));
        }
}

TEST_CASE("wsc reader rejects malformed input with line numbers") {
    auto load = [](const std::string& text) {
        std::stringstream ss(text);
        return read_wsc(ss);
    };
    std::string head = R"({"format":"wsc-v1","dimension":1,"include_empty":false,"count":3})";
    CHECK_THROWS_WITH_AS(load(head + "\n" + R"({"s":[1,0],"m":1.0,"interior":true})" + "\n"),
                         doctest::Contains("line 2"), ComplexError);
    CHECK_THROWS_AS(load(head + "\n" + R"({"s":[0,0],"m":1.0,"interior":true})" + "\n"),
                    ComplexError);
    CHECK_THROWS_AS(load(head + "\n" + R"({"s":[0],"m":-2.0,"interior":true})" + "\n"),
                    ComplexError);
    CHECK_THROWS_AS(load(head + "\n" + "not json\n"), ComplexError);
    // closure violation: edge without its vertices
    CHECK_THROWS_AS(load(head + "\n" + R"({"s":[0,1],"m":1.0,"interior":true})" + "\n"),
                    ComplexError);
    CHECK_THROWS_AS(load(R"({"format":"wsc-v2"})" + std::string("\n")), ComplexError);
}
