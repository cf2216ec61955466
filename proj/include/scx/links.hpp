#pragma once

#include "scx/operators.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace scx {

/// Weighted link graph of a simplex rho: vertices v with v rho in the complex,
/// vertex mass m_rho(v) = m(v rho), edge weight b(v,v') = m(v v' rho), zero
/// diagonal.  `interior[v]` mirrors the interior flag of the spoke v rho: the
/// adjacency row of v is final iff it is set.
struct LinkGraph {
    Simplex base;
    std::vector<vertex_id> verts;          // sorted
    std::vector<double> vmass;
    std::vector<std::uint8_t> interior;
    std::vector<std::int64_t> rowptr;
    std::vector<std::int32_t> col;
    std::vector<double> weight;

    std::size_t n() const { return verts.size(); }

    std::optional<std::size_t> find(vertex_id v) const {
        auto it = std::lower_bound(verts.begin(), verts.end(), v);
        if (it == verts.end() || *it != v) return std::nullopt;
        return static_cast<std::size_t>(it - verts.begin());
    }

    double weighted_degree(std::size_t i) const {
        double s = 0.0;
        for (std::int64_t e = rowptr[i]; e < rowptr[i + 1]; ++e) s += weight[static_cast<std::size_t>(e)];
        return s;
    }
};

/// Materializes lk(rho).  Throws if rho is not in the complex.
LinkGraph link_of(const WeightedComplex& cx, const Simplex& rho);

/// Connected components over positive-weight edges: component id per vertex.
std::vector<int> link_components(const LinkGraph& lk);

/// Lift of a link function: (pi^rho u)(v rho) = theta(rho, v rho) u(v),
/// supported on the cofaces of rho.
Cochain lift_from_link(const LinkGraph& lk, std::span<const cval> u);

/// Restriction: u(v) = theta(rho, v rho) omega(v rho).
std::vector<cval> restrict_to_link(const LinkGraph& lk, const Cochain& omega);

/// (L_rho u)(x) = (1/m_rho(x)) sum_y b(x,y) (u(x) - u(y)).
std::vector<cval> link_laplacian(const LinkGraph& lk, std::span<const cval> u);

/// Q_rho(u) = (1/2) sum_{x,y} b(x,y) |u(x)-u(y)|^2.
double link_energy(const LinkGraph& lk, std::span<const cval> u);

/// <u,w>_rho = sum_v m_rho(v) u(v) conj(w(v)).
cval link_inner(const LinkGraph& lk, std::span<const cval> u, std::span<const cval> w);

/// Max residuals of the lift/restrict identities over randomized trials with
/// normalized inputs:
///   flux:        m(rho) (del omega)(rho) = sum_v m_rho(v) (pi_rho omega)(v)
///   adjoint:     <pi^rho u, omega> = <u, pi_rho omega>_rho
///   isometry:    ||pi^rho u|| = ||u||_rho
///   energy:      Q^+(pi^rho u) = Q_rho(u)
///   conjugation: pi_rho(del delta pi^rho u) = L_rho u at interior vertices
struct LocalizationReport {
    double flux = 0.0;
    double adjoint = 0.0;
    double isometry = 0.0;
    double energy = 0.0;
    double conjugation = 0.0;
    int trials = 0;

    double worst() const;
};

LocalizationReport verify_localization(const WeightedComplex& cx, const Simplex& rho,
                                       SplitMix64& rng, int trials);

nlohmann::ordered_json link_to_json(const LinkGraph& lk);

} // namespace scx
