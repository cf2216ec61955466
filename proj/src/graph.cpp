#include "scx/graph.hpp"

#include <cmath>
#include <numeric>

namespace scx {

double graph_energy(const LevelGraph& g, std::span<const double> u) {
    if (u.size() != g.n()) throw ComplexError("graph_energy: size mismatch");
    double acc = 0.0;
    for (std::size_t v = 0; v < g.n(); ++v)
        for (std::int64_t e = g.rowptr[v]; e < g.rowptr[v + 1]; ++e) {
            double d = u[v] - u[static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)])];
            acc += g.w(e) * d * d;
        }
    return 0.5 * acc;
}

std::vector<int> graph_components(const LevelGraph& g) {
    std::vector<std::size_t> parent(g.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t v = 0; v < g.n(); ++v)
        for (std::int64_t e = g.rowptr[v]; e < g.rowptr[v + 1]; ++e) {
            std::size_t a = find(v);
            std::size_t b = find(static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)]));
            if (a != b) parent[a] = b;
        }
    std::vector<int> comp(g.n(), -1);
    int next = 0;
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::size_t r = find(v);
        if (comp[r] < 0) comp[r] = next++;
        comp[v] = comp[r];
    }
    return comp;
}

namespace {

LevelGraph build_z_line(int n, bool decaying_vmass) {
    if (n < 1) throw ComplexError("exhaustion level must be >= 1");
    LevelGraph g;
    std::size_t N = static_cast<std::size_t>(2 * n + 1);
    auto idx = [&](std::int64_t i) { return static_cast<std::size_t>(i + n); };
    g.ids.resize(N);
    g.vmass.resize(decaying_vmass ? N : 0);
    g.boundary.assign(N, 0);
    g.rowptr.assign(N + 1, 0);
    for (std::int64_t i = -n; i <= n; ++i) {
        g.ids[idx(i)] = ids::path_vertex(i);
        if (decaying_vmass) g.vmass[idx(i)] = std::exp2(-static_cast<double>(std::llabs(i)));
        int deg = (i == -n || i == n) ? 1 : 2;
        g.rowptr[idx(i) + 1] = g.rowptr[idx(i)] + deg;
    }
    g.col.resize(static_cast<std::size_t>(g.rowptr.back()));
    std::vector<std::int64_t> fill(N, 0);
    auto put = [&](std::int64_t a, std::int64_t b) {
        g.col[static_cast<std::size_t>(g.rowptr[idx(a)] + fill[idx(a)]++)] =
            static_cast<std::int32_t>(idx(b));
    };
    for (std::int64_t i = -n; i < n; ++i) {
        put(i, i + 1);
        put(i + 1, i);
    }
    g.root = idx(0);
    g.boundary[idx(-n)] = 1;
    g.boundary[idx(n)] = 1;
    return g;
}

LevelGraph build_z_lattice(int d, int n, bool decaying_vmass, vertex_id id_offset) {
    if (n < 1) throw ComplexError("exhaustion level must be >= 1");
    std::size_t side = static_cast<std::size_t>(2 * n + 1);
    std::size_t N = 1;
    for (int c = 0; c < d; ++c) N *= side;
    LevelGraph g;
    g.ids.resize(N);
    g.vmass.resize(decaying_vmass ? N : 0);
    g.boundary.assign(N, 0);
    g.rowptr.assign(N + 1, 0);

    auto coord = [&](std::size_t v, int* x) {
        for (int c = 0; c < d; ++c) {
            x[c] = static_cast<int>(v % side) - n;
            v /= side;
        }
    };
    int x[3];
    for (std::size_t v = 0; v < N; ++v) {
        coord(v, x);
        g.ids[v] = ids::lattice_vertex(x, d, id_offset);
        int ninf = 0, n1 = 0, deg = 0;
        for (int c = 0; c < d; ++c) {
            ninf = std::max(ninf, std::abs(x[c]));
            n1 += std::abs(x[c]);
            if (x[c] < n) ++deg;
            if (x[c] > -n) ++deg;
        }
        if (decaying_vmass) g.vmass[v] = std::exp2(-static_cast<double>(n1));
        if (ninf == n) g.boundary[v] = 1;
        g.rowptr[v + 1] = g.rowptr[v] + deg;
    }
    g.col.resize(static_cast<std::size_t>(g.rowptr.back()));
    std::vector<std::int64_t> fill(N, 0);
    std::size_t stride = 1;
    for (int c = 0; c < d; ++c) {
        for (std::size_t v = 0; v < N; ++v) {
            coord(v, x);
            if (x[c] < n) {
                std::size_t u = v + stride;
                g.col[static_cast<std::size_t>(g.rowptr[v] + fill[v]++)] = static_cast<std::int32_t>(u);
                g.col[static_cast<std::size_t>(g.rowptr[u] + fill[u]++)] = static_cast<std::int32_t>(v);
            }
        }
        stride *= side;
    }
    g.root = N / 2;   // center of the odd-sided ball
    return g;
}

LevelGraph build_tree(int branching, int n, bool decaying_vmass) {
    if (n < 1) throw ComplexError("exhaustion level must be >= 1");
    double est = (std::pow(branching, n + 1) - 1) / (branching - 1);
    if (est > 8.0e6) throw ComplexError("tree exhaustion too large at depth " + std::to_string(n));
    std::size_t N = static_cast<std::size_t>(est + 0.5);
    LevelGraph g;
    g.ids.resize(N);
    g.vmass.resize(decaying_vmass ? N : 0);
    g.boundary.assign(N, 0);
    g.rowptr.assign(N + 1, 0);
    std::vector<int> depth(N);
    for (std::size_t v = 0; v < N; ++v) {
        std::int64_t node = static_cast<std::int64_t>(v) + 1;
        g.ids[v] = node;
        depth[v] = node == 1 ? 0 : depth[static_cast<std::size_t>(ids::tree_parent(node, branching) - 1)] + 1;
        if (decaying_vmass) g.vmass[v] = std::pow(2.0 * branching, -depth[v]);
        if (depth[v] == n) g.boundary[v] = 1;
        int deg = (node == 1 ? 0 : 1) + (depth[v] < n ? branching : 0);
        g.rowptr[v + 1] = g.rowptr[v] + deg;
    }
    g.col.resize(static_cast<std::size_t>(g.rowptr.back()));
    std::vector<std::int64_t> fill(N, 0);
    for (std::size_t v = 0; v < N; ++v) {
        std::int64_t node = static_cast<std::int64_t>(v) + 1;
        if (node >= 2) {
            std::size_t p = static_cast<std::size_t>(ids::tree_parent(node, branching) - 1);
            g.col[static_cast<std::size_t>(g.rowptr[v] + fill[v]++)] = static_cast<std::int32_t>(p);
            g.col[static_cast<std::size_t>(g.rowptr[p] + fill[p]++)] = static_cast<std::int32_t>(v);
        }
    }
    g.root = 0;
    return g;
}

LevelGraph build_chain(double ratio, int n, bool star_masses) {
    if (n < 1) throw ComplexError("exhaustion level must be >= 1");
    std::size_t N = static_cast<std::size_t>(n + 1);
    LevelGraph g;
    g.ids.resize(N);
    g.weight.resize(2 * static_cast<std::size_t>(n));
    g.vmass.resize(star_masses ? N : 0);
    g.boundary.assign(N, 0);
    g.rowptr.assign(N + 1, 0);
    for (std::size_t j = 0; j < N; ++j) {
        g.ids[j] = static_cast<vertex_id>(j) + 1;
        if (star_masses) g.vmass[j] = std::exp2(-static_cast<double>(j));
        int deg = (j == 0 || j + 1 == N) ? 1 : 2;
        g.rowptr[j + 1] = g.rowptr[j] + deg;
    }
    g.col.resize(static_cast<std::size_t>(g.rowptr.back()));
    std::vector<std::int64_t> fill(N, 0);
    for (std::size_t j = 0; j + 1 < N; ++j) {
        double w = std::pow(ratio, static_cast<double>(j));
        g.col[static_cast<std::size_t>(g.rowptr[j] + fill[j])] = static_cast<std::int32_t>(j + 1);
        g.weight[static_cast<std::size_t>(g.rowptr[j] + fill[j]++)] = w;
        g.col[static_cast<std::size_t>(g.rowptr[j + 1] + fill[j + 1])] = static_cast<std::int32_t>(j);
        g.weight[static_cast<std::size_t>(g.rowptr[j + 1] + fill[j + 1]++)] = w;
    }
    g.root = 0;
    g.boundary[N - 1] = 1;
    return g;
}

LevelGraph from_link_graph(const LinkGraph& lk, vertex_id root_id) {
    LevelGraph g;
    g.ids = lk.verts;
    g.rowptr = lk.rowptr;
    g.col = lk.col;
    g.weight = lk.weight;
    g.vmass = lk.vmass;
    g.boundary.resize(lk.n());
    for (std::size_t i = 0; i < lk.n(); ++i) g.boundary[i] = lk.interior[i] ? 0 : 1;
    auto r = lk.find(root_id);
    if (!r) throw ComplexError("exhaustion root not in link");
    g.root = *r;
    return g;
}

} // namespace

GraphExhaustion GraphExhaustion::z_line() {
    GraphExhaustion e;
    e.kind_ = Kind::z_line;
    e.name_ = "z_line";
    return e;
}

GraphExhaustion GraphExhaustion::z_lattice(int d) {
    if (d < 1 || d > 3) throw ComplexError("z_lattice: d must be in [1,3]");
    GraphExhaustion e;
    e.kind_ = Kind::z_lattice;
    e.d_ = d;
    e.name_ = "z_lattice(" + std::to_string(d) + ")";
    return e;
}

GraphExhaustion GraphExhaustion::tree(int branching) {
    if (branching < 2 || branching > 8) throw ComplexError("tree: branching must be in [2,8]");
    GraphExhaustion e;
    e.kind_ = Kind::tree;
    e.branching_ = branching;
    e.name_ = "tree(" + std::to_string(branching) + ")";
    return e;
}

GraphExhaustion GraphExhaustion::summable_chain(double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ComplexError("summable_chain: ratio must be in (0,1)");
    GraphExhaustion e;
    e.kind_ = Kind::chain;
    e.ratio_ = ratio;
    e.name_ = "summable_chain(" + std::to_string(ratio) + ")";
    return e;
}

GraphExhaustion GraphExhaustion::link_of(const ComplexGenerator& gen) {
    GraphExhaustion e;
    e.kind_ = Kind::family_link;
    e.gen_ = std::make_shared<ComplexGenerator>(gen);
    e.name_ = "link(" + gen.name() + ")";
    return e;
}

GraphExhaustion GraphExhaustion::from_complex(const WeightedComplex& cx, const Simplex& rho) {
    GraphExhaustion e;
    e.kind_ = Kind::static_link;
    e.static_link_ = std::make_shared<LinkGraph>(scx::link_of(cx, rho));
    if (e.static_link_->n() == 0) throw ComplexError("from_complex: empty link");
    e.name_ = "link" + rho.str();
    return e;
}

GraphExhaustion GraphExhaustion::parse(const std::string& text) {
    if (text == "z_line") return z_line();
    if (text.rfind("z_lattice(", 0) == 0 && text.back() == ')')
        return z_lattice(std::atoi(text.c_str() + 10));
    if (text.rfind("tree(", 0) == 0 && text.back() == ')') return tree(std::atoi(text.c_str() + 5));
    if (text.rfind("summable_chain(", 0) == 0 && text.back() == ')')
        return summable_chain(std::atof(text.c_str() + 15));
    throw ComplexError("unknown exhaustion: " + text);
}

LevelGraph GraphExhaustion::level(int n) const {
    switch (kind_) {
    case Kind::z_line: return build_z_line(n, false);
    case Kind::z_lattice: return build_z_lattice(d_, n, false, 1);
    case Kind::tree: return build_tree(branching_, n, false);
    case Kind::chain: return build_chain(ratio_, n, false);
    case Kind::family_link:
        switch (gen_->family()) {
        case Family::cone_over_path: return build_z_line(n, true);
        case Family::cone_over_tree: return build_tree(gen_->param_a(), n, true);
        case Family::cone_over_lattice: return build_z_lattice(gen_->param_a(), n, true, 1);
        case Family::skeleton_lattice: return build_z_lattice(gen_->param_a(), n, true, 0);
        case Family::star_link: return build_chain(0.25, n, true);
        default: {
            WeightedComplex cx = gen_->truncation(n);
            return from_link_graph(scx::link_of(cx, gen_->base_point()), gen_->link_root());
        }
        }
    case Kind::static_link: {
        LevelGraph g = from_link_graph(*static_link_, static_link_->verts.front());
        return g;
    }
    }
    throw ComplexError("unknown exhaustion kind");
}

int GraphExhaustion::tree_branching() const {
    if (kind_ == Kind::tree) return branching_;
    if (kind_ == Kind::family_link && gen_->family() == Family::cone_over_tree)
        return gen_->param_a();
    return 0;
}

int GraphExhaustion::max_level() const {
    switch (kind_) {
    case Kind::z_lattice: return d_ == 3 ? 64 : (d_ == 2 ? 600 : 2000000);
    case Kind::tree: return 22;
    case Kind::family_link:
        switch (gen_->family()) {
        case Family::cone_over_tree: return 22;
        case Family::cone_over_lattice:
        case Family::skeleton_lattice: return gen_->param_a() == 3 ? 64 : (gen_->param_a() == 2 ? 600 : 2000000);
        default: return 2000000;
        }
    default: return 2000000;
    }
}

} // namespace scx
