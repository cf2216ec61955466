#include "scx/generators.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace scx {

namespace ids {

vertex_id path_vertex(std::int64_t i) {
    if (i == 0) return 1;
    return i > 0 ? 2 * i + 1 : -2 * i;
}

std::int64_t path_coord(vertex_id id) {
    if (id == 1) return 0;
    return (id % 2 == 1) ? (id - 1) / 2 : -id / 2;
}

namespace {
constexpr vertex_id lattice_base = 256;
vertex_id fold(int t) { return t >= 0 ? 2 * static_cast<vertex_id>(t) : -2 * static_cast<vertex_id>(t) - 1; }
int unfold(vertex_id f) { return (f % 2 == 0) ? static_cast<int>(f / 2) : static_cast<int>(-(f + 1) / 2); }
} // namespace

vertex_id lattice_vertex(const int* x, int d, vertex_id offset) {
    vertex_id id = 0;
    vertex_id scale = 1;
    for (int c = 0; c < d; ++c) {
        if (x[c] > 127 || x[c] < -127) throw ComplexError("lattice coordinate out of range");
        id += fold(x[c]) * scale;
        scale *= lattice_base;
    }
    return id + offset;
}

void lattice_coord(vertex_id id, int d, vertex_id offset, int* x) {
    id -= offset;
    for (int c = 0; c < d; ++c) {
        x[c] = unfold(id % lattice_base);
        id /= lattice_base;
    }
}

std::int64_t tree_parent(std::int64_t node, int branching) {
    if (node <= 1) throw ComplexError("tree root has no parent");
    return (node - 2) / branching + 1;
}

int tree_depth(std::int64_t node, int branching) {
    int d = 0;
    while (node > 1) {
        node = tree_parent(node, branching);
        ++d;
    }
    return d;
}

} // namespace ids

ComplexGenerator ComplexGenerator::full_simplex(int k) {
    if (k < 0 || k > 6) throw ComplexError("full_simplex: dimension must be in [0,6]");
    return {Family::full_simplex, k, 0};
}
ComplexGenerator ComplexGenerator::octahedron() { return {Family::octahedron, 0, 0}; }
ComplexGenerator ComplexGenerator::torus_grid(int p, int q) {
    if (p < 3 || q < 3) throw ComplexError("torus_grid: need p,q >= 3");
    return {Family::torus_grid, p, q};
}
ComplexGenerator ComplexGenerator::cone_over_path() { return {Family::cone_over_path, 0, 0}; }
ComplexGenerator ComplexGenerator::cone_over_tree(int branching) {
    if (branching < 2 || branching > 8) throw ComplexError("cone_over_tree: branching must be in [2,8]");
    return {Family::cone_over_tree, branching, 0};
}
ComplexGenerator ComplexGenerator::cone_over_lattice(int d) {
    if (d < 1 || d > 3) throw ComplexError("cone_over_lattice: d must be in [1,3]");
    return {Family::cone_over_lattice, d, 0};
}
ComplexGenerator ComplexGenerator::skeleton_lattice(int d) {
    if (d < 1 || d > 3) throw ComplexError("skeleton_lattice: d must be in [1,3]");
    return {Family::skeleton_lattice, d, 0};
}
ComplexGenerator ComplexGenerator::star_link() { return {Family::star_link, 0, 0}; }

ComplexGenerator ComplexGenerator::parse(const std::string& text) {
    std::string name = text;
    std::vector<int> args;
    auto open = text.find('(');
    if (open != std::string::npos) {
        if (text.back() != ')') throw ComplexError("bad family syntax: " + text);
        name = text.substr(0, open);
        std::string inner = text.substr(open + 1, text.size() - open - 2);
        std::stringstream ss(inner);
        std::string tok;
        while (std::getline(ss, tok, ',')) args.push_back(std::atoi(tok.c_str()));
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw ComplexError("family " + name + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (name == "full_simplex") { want(1); return full_simplex(args[0]); }
    if (name == "octahedron") { want(0); return octahedron(); }
    if (name == "torus_grid") { want(2); return torus_grid(args[0], args[1]); }
    if (name == "cone_over_path") { want(0); return cone_over_path(); }
    if (name == "cone_over_tree") { want(1); return cone_over_tree(args[0]); }
    if (name == "cone_over_lattice") { want(1); return cone_over_lattice(args[0]); }
    if (name == "skeleton_lattice") { want(1); return skeleton_lattice(args[0]); }
    if (name == "star_link") { want(0); return star_link(); }
    throw ComplexError("unknown family: " + name);
}

std::string ComplexGenerator::name() const {
    switch (family_) {
    case Family::full_simplex: return "full_simplex(" + std::to_string(a_) + ")";
    case Family::octahedron: return "octahedron";
    case Family::torus_grid: return "torus_grid(" + std::to_string(a_) + "," + std::to_string(b_) + ")";
    case Family::cone_over_path: return "cone_over_path";
    case Family::cone_over_tree: return "cone_over_tree(" + std::to_string(a_) + ")";
    case Family::cone_over_lattice: return "cone_over_lattice(" + std::to_string(a_) + ")";
    case Family::skeleton_lattice: return "skeleton_lattice(" + std::to_string(a_) + ")";
    case Family::star_link: return "star_link";
    }
    return "?";
}

bool ComplexGenerator::is_finite() const {
    return family_ == Family::full_simplex || family_ == Family::octahedron ||
           family_ == Family::torus_grid;
}

Simplex ComplexGenerator::base_point() const {
    if (family_ == Family::skeleton_lattice) return Simplex{};
    return Simplex{0};
}

vertex_id ComplexGenerator::link_root() const {
    switch (family_) {
    case Family::octahedron: return 2;
    case Family::skeleton_lattice: return 0;
    default: return 1;
    }
}

double ComplexGenerator::defect_limit() const { return 1.0; }

int ComplexGenerator::tprime_level(int i) const {
    if (family_ == Family::cone_over_tree) return i;
    if (is_finite()) return i;
    return static_cast<int>(std::max<long long>(1, std::llround(std::exp2(i / 2.0))));
}

int ComplexGenerator::max_level() const {
    switch (family_) {
    case Family::cone_over_path: return 2000000;
    case Family::star_link: return 2000000;
    case Family::cone_over_tree: return 24;
    case Family::cone_over_lattice: return a_ == 3 ? 28 : (a_ == 2 ? 400 : 2000000);
    case Family::skeleton_lattice: return a_ == 3 ? 32 : (a_ == 2 ? 500 : 2000000);
    default: return 2000000;
    }
}

namespace {

constexpr std::size_t truncation_cap = 5000000;

void check_size(std::size_t estimate, const std::string& what) {
    if (estimate > truncation_cap)
        throw ComplexError("truncation too large (" + std::to_string(estimate) + " simplices): " + what);
}

double unit_mass(const Simplex&) { return 1.0; }

WeightedComplex build_full_simplex(int k) {
    ComplexBuilder b;
    Simplex top;
    for (vertex_id v = 0; v <= k; ++v) top = top.with_vertex(v);
    b.insert_closed(top, unit_mass);
    return b.finalize();
}

WeightedComplex build_octahedron() {
    ComplexBuilder b;
    for (vertex_id x : {0, 1})
        for (vertex_id y : {2, 3})
            for (vertex_id z : {4, 5}) b.insert_closed(Simplex{x, y, z}, unit_mass);
    return b.finalize();
}

WeightedComplex build_torus(int p, int q) {
    ComplexBuilder b;
    auto vid = [&](int i, int j) {
        return static_cast<vertex_id>(((i % p + p) % p) * q + ((j % q + q) % q));
    };
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            b.insert_closed(Simplex{vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)}, unit_mass);
            b.insert_closed(Simplex{vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)}, unit_mass);
        }
    return b.finalize();
}

WeightedComplex build_cone_over_path(int n) {
    if (n < 1) throw ComplexError("cone_over_path: level must be >= 1");
    check_size(static_cast<std::size_t>(n) * 8 + 4, "cone_over_path");
    ComplexBuilder b;
    b.add(Simplex{0}, 1.0, false);
    for (std::int64_t i = -n; i <= n; ++i) {
        bool inner = std::llabs(i) <= n - 1;
        vertex_id v = ids::path_vertex(i);
        b.add(Simplex{v}, 1.0, inner);
        b.add(Simplex{0, v}, std::exp2(-static_cast<double>(std::llabs(i))), inner);
    }
    for (std::int64_t i = -n; i < n; ++i) {
        vertex_id v = ids::path_vertex(i);
        vertex_id w = ids::path_vertex(i + 1);
        b.add(Simplex{v, w}, 1.0, true);
        b.add(Simplex{0, v, w}, 1.0, true);
    }
    return b.finalize();
}

WeightedComplex build_cone_over_tree(int branching, int n) {
    if (n < 1) throw ComplexError("cone_over_tree: level must be >= 1");
    double nodes_est = (std::pow(branching, n + 1) - 1) / (branching - 1);
    check_size(static_cast<std::size_t>(nodes_est * 4.0 + 4.0), "cone_over_tree");
    ComplexBuilder b;
    b.add(Simplex{0}, 1.0, false);
    // breadth-first over heap-indexed nodes
    std::vector<std::pair<std::int64_t, int>> frontier{{1, 0}};
    while (!frontier.empty()) {
        std::vector<std::pair<std::int64_t, int>> next;
        for (auto [node, depth] : frontier) {
            bool inner = depth <= n - 1;
            b.add(Simplex{node}, 1.0, inner);
            b.add(Simplex{0, node}, std::pow(2.0 * branching, -depth), inner);
            if (node >= 2) {
                std::int64_t par = ids::tree_parent(node, branching);
                b.add(Simplex{par, node}, 1.0, true);
                b.add(Simplex{0, par, node}, 1.0, true);
            }
            if (depth < n)
                for (int c = 0; c < branching; ++c)
                    next.emplace_back(branching * (node - 1) + 2 + c, depth + 1);
        }
        frontier = std::move(next);
    }
    return b.finalize();
}

template <typename F>
void for_ball(int d, int radius, F&& fn) {
    std::array<int, 3> x{0, 0, 0};
    auto rec = [&](auto&& self, int c) -> void {
        if (c == d) {
            fn(x.data());
            return;
        }
        for (int t = -radius; t <= radius; ++t) {
            x[static_cast<std::size_t>(c)] = t;
            self(self, c + 1);
        }
    };
    rec(rec, 0);
}

int norm1(const int* x, int d) {
    int s = 0;
    for (int c = 0; c < d; ++c) s += std::abs(x[c]);
    return s;
}

int norm_inf(const int* x, int d) {
    int s = 0;
    for (int c = 0; c < d; ++c) s = std::max(s, std::abs(x[c]));
    return s;
}

WeightedComplex build_cone_over_lattice(int d, int n) {
    if (n < 1) throw ComplexError("cone_over_lattice: level must be >= 1");
    double verts = std::pow(2.0 * n + 1, d);
    check_size(static_cast<std::size_t>(verts * (2.0 + 2.0 * d) + 4.0), "cone_over_lattice");
    ComplexBuilder b;
    b.add(Simplex{0}, 1.0, false);
    for_ball(d, n, [&](const int* x) {
        bool inner = norm_inf(x, d) <= n - 1;
        vertex_id v = ids::lattice_vertex(x, d, 1);
        b.add(Simplex{v}, 1.0, inner);
        b.add(Simplex{0, v}, std::exp2(-static_cast<double>(norm1(x, d))), inner);
        int y[3];
        for (int c = 0; c < d; ++c) {
            for (int cc = 0; cc < d; ++cc) y[cc] = x[cc];
            y[c] = x[c] + 1;
            if (norm_inf(y, d) > n) continue;
            vertex_id w = ids::lattice_vertex(y, d, 1);
            b.add(Simplex{v, w}, 1.0, true);
            b.add(Simplex{0, v, w}, 1.0, true);
        }
    });
    return b.finalize();
}

WeightedComplex build_skeleton_lattice(int d, int n) {
    if (n < 1) throw ComplexError("skeleton_lattice: level must be >= 1");
    double verts = std::pow(2.0 * n + 1, d);
    check_size(static_cast<std::size_t>(verts * (1.0 + d) + 2.0), "skeleton_lattice");
    ComplexBuilder b;
    b.set_empty_mass(1.0);
    b.set_interior(Simplex{}, false);
    for_ball(d, n, [&](const int* x) {
        bool inner = norm_inf(x, d) <= n - 1;
        vertex_id v = ids::lattice_vertex(x, d, 0);
        b.add(Simplex{v}, std::exp2(-static_cast<double>(norm1(x, d))), inner);
        int y[3];
        for (int c = 0; c < d; ++c) {
            for (int cc = 0; cc < d; ++cc) y[cc] = x[cc];
            y[c] = x[c] + 1;
            if (norm_inf(y, d) > n) continue;
            b.add(Simplex{v, ids::lattice_vertex(y, d, 0)}, 1.0, true);
        }
    });
    return b.finalize();
}

WeightedComplex build_star_link(int n) {
    if (n < 1) throw ComplexError("star_link: level must be >= 1");
    check_size(static_cast<std::size_t>(n) * 4 + 4, "star_link");
    ComplexBuilder b;
    b.add(Simplex{0}, 1.0, false);
    for (std::int64_t j = 0; j <= n; ++j) {
        bool inner = j <= n - 1;
        b.add(Simplex{j + 1}, 1.0, inner);
        b.add(Simplex{0, j + 1}, std::exp2(-static_cast<double>(j)), inner);
        if (j < n) {
            b.add(Simplex{j + 1, j + 2}, 1.0, true);
            b.add(Simplex{0, j + 1, j + 2}, std::pow(4.0, -static_cast<double>(j)), true);
        }
    }
    return b.finalize();
}

} // namespace

WeightedComplex ComplexGenerator::truncation(int level) const {
    auto done = [&](WeightedComplex cx) {
        if (empty_ && !cx.contains(Simplex{})) {
            ComplexBuilder b;
            b.set_empty_mass(1.0);
            for (int k = 0; k <= cx.max_degree(); ++k)
                for (std::size_t i = 0; i < cx.size(k); ++i) {
                    const Simplex& s = cx.simplex(k, i);
                    b.add(s, cx.mass(k, i));
                    if (!cx.interior(k, i)) b.set_interior(s, false);
                }
            return b.finalize();
        }
        return cx;
    };
    switch (family_) {
    case Family::full_simplex: return done(build_full_simplex(a_));
    case Family::octahedron: return done(build_octahedron());
    case Family::torus_grid: return done(build_torus(a_, b_));
    case Family::cone_over_path: return done(build_cone_over_path(level));
    case Family::cone_over_tree: return done(build_cone_over_tree(a_, level));
    case Family::cone_over_lattice: return done(build_cone_over_lattice(a_, level));
    case Family::skeleton_lattice: return build_skeleton_lattice(a_, level);
    case Family::star_link: return done(build_star_link(level));
    }
    throw ComplexError("unknown family");
}

} // namespace scx
