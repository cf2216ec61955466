#include "scx/links.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scx {

LinkGraph link_of(const WeightedComplex& cx, const Simplex& rho) {
    auto ridx = cx.index_of(rho);
    if (!ridx) throw ComplexError("link_of: simplex not in complex: " + rho.str());
    int k = rho.dim();

    LinkGraph lk;
    lk.base = rho;
    std::vector<std::size_t> spoke_idx;   // index of v rho in slice k+1, aligned with verts
    for (std::int64_t ci : cx.cofaces(k, *ridx)) {
        const Simplex& spoke = cx.simplex(k + 1, static_cast<std::size_t>(ci));
        for (vertex_id v : spoke)
            if (!rho.contains(v)) {
                lk.verts.push_back(v);
                spoke_idx.push_back(static_cast<std::size_t>(ci));
            }
    }
    std::vector<std::size_t> order(lk.verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return lk.verts[a] < lk.verts[b]; });
    {
        std::vector<vertex_id> v2(lk.verts.size());
        std::vector<std::size_t> s2(lk.verts.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            v2[i] = lk.verts[order[i]];
            s2[i] = spoke_idx[order[i]];
        }
        lk.verts = std::move(v2);
        spoke_idx = std::move(s2);
    }

    lk.vmass.resize(lk.n());
    lk.interior.resize(lk.n());
    for (std::size_t i = 0; i < lk.n(); ++i) {
        lk.vmass[i] = cx.mass(k + 1, spoke_idx[i]);
        lk.interior[i] = cx.interior(k + 1, spoke_idx[i]) ? 1 : 0;
    }

    // edges from the cofaces of each spoke
    std::vector<std::vector<std::pair<std::int32_t, double>>> adj(lk.n());
    for (std::size_t i = 0; i < lk.n(); ++i) {
        for (std::int64_t ti : cx.cofaces(k + 1, spoke_idx[i])) {
            const Simplex& tri = cx.simplex(k + 2, static_cast<std::size_t>(ti));
            for (vertex_id w : tri) {
                if (w == lk.verts[i] || rho.contains(w)) continue;
                auto j = lk.find(w);
                if (!j) throw ComplexError("link_of: coface closure violated at " + tri.str());
                adj[i].emplace_back(static_cast<std::int32_t>(*j),
                                    cx.mass(k + 2, static_cast<std::size_t>(ti)));
            }
        }
        std::sort(adj[i].begin(), adj[i].end());
    }
    lk.rowptr.assign(lk.n() + 1, 0);
    for (std::size_t i = 0; i < lk.n(); ++i)
        lk.rowptr[i + 1] = lk.rowptr[i] + static_cast<std::int64_t>(adj[i].size());
    lk.col.resize(static_cast<std::size_t>(lk.rowptr.back()));
    lk.weight.resize(static_cast<std::size_t>(lk.rowptr.back()));
    for (std::size_t i = 0; i < lk.n(); ++i) {
        std::int64_t base = lk.rowptr[i];
        for (std::size_t e = 0; e < adj[i].size(); ++e) {
            lk.col[static_cast<std::size_t>(base) + e] = adj[i][e].first;
            lk.weight[static_cast<std::size_t>(base) + e] = adj[i][e].second;
        }
    }
    return lk;
}

std::vector<int> link_components(const LinkGraph& lk) {
    std::vector<std::size_t> parent(lk.n());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t i = 0; i < lk.n(); ++i)
        for (std::int64_t e = lk.rowptr[i]; e < lk.rowptr[i + 1]; ++e) {
            std::size_t a = find(i);
            std::size_t b = find(static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)]));
            if (a != b) parent[a] = b;
        }
    std::vector<int> comp(lk.n(), -1);
    int next = 0;
    for (std::size_t i = 0; i < lk.n(); ++i) {
        std::size_t r = find(i);
        if (comp[r] < 0) comp[r] = next++;
        comp[i] = comp[r];
    }
    return comp;
}

Cochain lift_from_link(const LinkGraph& lk, std::span<const cval> u) {
    if (u.size() != lk.n()) throw ComplexError("lift_from_link: size mismatch");
    Cochain out(lk.base.dim() + 1);
    for (std::size_t i = 0; i < lk.n(); ++i) {
        if (u[i] == cval{0.0, 0.0}) continue;
        vertex_id v = lk.verts[i];
        out.set(lk.base.with_vertex(v), static_cast<double>(vertex_sign(lk.base, v)) * u[i]);
    }
    return out;
}

std::vector<cval> restrict_to_link(const LinkGraph& lk, const Cochain& omega) {
    if (omega.degree() != lk.base.dim() + 1) throw ComplexError("restrict_to_link: degree mismatch");
    std::vector<cval> u(lk.n());
    for (std::size_t i = 0; i < lk.n(); ++i) {
        vertex_id v = lk.verts[i];
        u[i] = static_cast<double>(vertex_sign(lk.base, v)) * omega(lk.base.with_vertex(v));
    }
    return u;
}

std::vector<cval> link_laplacian(const LinkGraph& lk, std::span<const cval> u) {
    if (u.size() != lk.n()) throw ComplexError("link_laplacian: size mismatch");
    std::vector<cval> out(lk.n());
    for (std::size_t i = 0; i < lk.n(); ++i) {
        cval acc{0.0, 0.0};
        for (std::int64_t e = lk.rowptr[i]; e < lk.rowptr[i + 1]; ++e)
            acc += lk.weight[static_cast<std::size_t>(e)] *
                   (u[i] - u[static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)])]);
        out[i] = acc / lk.vmass[i];
    }
    return out;
}

double link_energy(const LinkGraph& lk, std::span<const cval> u) {
    if (u.size() != lk.n()) throw ComplexError("link_energy: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < lk.n(); ++i)
        for (std::int64_t e = lk.rowptr[i]; e < lk.rowptr[i + 1]; ++e)
            acc += lk.weight[static_cast<std::size_t>(e)] *
                   std::norm(u[i] - u[static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)])]);
    return 0.5 * acc;
}

cval link_inner(const LinkGraph& lk, std::span<const cval> u, std::span<const cval> w) {
    cval acc{0.0, 0.0};
    for (std::size_t i = 0; i < lk.n(); ++i) acc += lk.vmass[i] * u[i] * std::conj(w[i]);
    return acc;
}

double LocalizationReport::worst() const {
    return std::max({flux, adjoint, isometry, energy, conjugation});
}

LocalizationReport verify_localization(const WeightedComplex& cx, const Simplex& rho,
                                       SplitMix64& rng, int trials) {
    LinkGraph lk = link_of(cx, rho);
    int k1 = rho.dim() + 1;
    LocalizationReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        std::vector<cval> u(lk.n());
        double un2 = 0.0;
        for (auto& x : u) {
            x = {rng.next_symmetric(), rng.next_symmetric()};
            un2 += std::norm(x);
        }
        if (un2 > 0.0)
            for (auto& x : u) x /= std::sqrt(un2);
        Cochain omega = random_cochain(cx, k1, rng);

        // flux: m(rho) (del omega)(rho) vs sum_v m_rho(v) (pi_rho omega)(v)
        cval lhs = boundary(cx, omega).chain(rho) * cx.mass(rho);
        std::vector<cval> rw = restrict_to_link(lk, omega);
        cval rhs{0.0, 0.0};
        for (std::size_t i = 0; i < lk.n(); ++i) rhs += lk.vmass[i] * rw[i];
        rep.flux = std::max(rep.flux, std::abs(lhs - rhs));

        // adjoint
        Cochain pu = lift_from_link(lk, u);
        cval a = inner_product(cx, pu, omega);
        cval b = link_inner(lk, u, rw);
        rep.adjoint = std::max(rep.adjoint, std::abs(a - b));

        // isometry
        double ncx = norm(cx, pu);
        double nlk = std::sqrt(std::abs(link_inner(lk, u, u)));
        rep.isometry = std::max(rep.isometry, std::abs(ncx - nlk));

        // energy
        rep.energy = std::max(rep.energy, std::abs(qform_up(cx, pu) - link_energy(lk, u)));

        // conjugation, at interior link vertices
        Cochain dd = boundary(cx, coboundary(cx, pu)).chain;
        std::vector<cval> lhs_u = restrict_to_link(lk, dd);
        std::vector<cval> rhs_u = link_laplacian(lk, u);
        for (std::size_t i = 0; i < lk.n(); ++i)
            if (lk.interior[i])
                rep.conjugation = std::max(rep.conjugation, std::abs(lhs_u[i] - rhs_u[i]));
    }
    return rep;
}

nlohmann::ordered_json link_to_json(const LinkGraph& lk) {
    nlohmann::ordered_json j;
    j["base"] = lk.base.vertices();
    j["vertices"] = lk.verts;
    j["vertex_mass"] = lk.vmass;
    std::vector<bool> inter(lk.interior.begin(), lk.interior.end());
    j["interior"] = inter;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < lk.n(); ++i)
        for (std::int64_t e = lk.rowptr[i]; e < lk.rowptr[i + 1]; ++e) {
            auto jcol = static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)]);
            if (i < jcol)
                edges.push_back({lk.verts[i], lk.verts[jcol], lk.weight[static_cast<std::size_t>(e)]});
        }
    j["edges"] = edges;
    return j;
}

} // namespace scx
