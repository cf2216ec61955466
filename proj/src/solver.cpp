#include "scx/solver.hpp"

#include "scx/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scx {

void CsrMatrix::mul(std::span<const double> x, std::span<double> y) const {
    kern::csr_spmv(n, rowptr.data(), col.data(), val.data(), x.data(), y.data());
}

namespace {

CgStats cg_impl(const std::function<void(std::span<const double>, std::span<double>)>& apply,
                std::span<const double> diag, std::span<const double> b, std::span<double> x,
                double rtol, int maxit) {
    const std::size_t n = b.size();
    CgStats st;
    double bnorm = std::sqrt(kern::dot(b.data(), b.data(), n));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        st.converged = true;
        return st;
    }
    if (maxit <= 0) maxit = static_cast<int>(std::min<std::size_t>(4 * n + 100, 400000));

    std::vector<double> r(n), z(n), p(n), Ap(n);
    apply(x, std::span<double>(Ap));
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
    auto precondition = [&] {
        if (diag.empty())
            std::copy(r.begin(), r.end(), z.begin());
        else
            for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    };
    precondition();
    std::copy(z.begin(), z.end(), p.begin());
    double rz = kern::dot(r.data(), z.data(), n);
    double rnorm = std::sqrt(kern::dot(r.data(), r.data(), n));

    for (int it = 0; it < maxit; ++it) {
        if (rnorm <= rtol * bnorm) {
            st.converged = true;
            break;
        }
        apply(p, std::span<double>(Ap));
        double pAp = kern::dot(p.data(), Ap.data(), n);
        if (!(pAp > 0.0)) break;   // lost positive definiteness (round-off)
        double alpha = rz / pAp;
        kern::axpy(alpha, p.data(), x.data(), n);
        kern::axpy(-alpha, Ap.data(), r.data(), n);
        precondition();
        double rz_next = kern::dot(r.data(), z.data(), n);
        kern::xpay(z.data(), rz_next / rz, p.data(), n);
        rz = rz_next;
        rnorm = std::sqrt(kern::dot(r.data(), r.data(), n));
        st.iterations = it + 1;
    }
    if (rnorm <= rtol * bnorm) st.converged = true;
    st.relative_residual = rnorm / bnorm;
    return st;
}

/// Grounded Laplacian over the free vertices (free = in the root component,
/// not boundary, and not in `pinned`).
struct GroundedSystem {
    CsrMatrix A;
    std::vector<std::size_t> free_verts;        // free index -> graph vertex
    std::vector<std::int64_t> free_index;       // graph vertex -> free index or -1
};

GroundedSystem grounded_laplacian(const LevelGraph& g, const std::vector<int>& comp, int root_comp,
                                  std::int64_t pinned) {
    GroundedSystem s;
    s.free_index.assign(g.n(), -1);
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (comp[v] != root_comp || g.boundary[v] || static_cast<std::int64_t>(v) == pinned) continue;
        s.free_index[v] = static_cast<std::int64_t>(s.free_verts.size());
        s.free_verts.push_back(v);
    }
    CsrMatrix& A = s.A;
    A.n = s.free_verts.size();
    A.rowptr.assign(A.n + 1, 0);
    for (std::size_t i = 0; i < A.n; ++i) {
        std::size_t v = s.free_verts[i];
        std::int64_t nnz = 1;
        for (std::int64_t e = g.rowptr[v]; e < g.rowptr[v + 1]; ++e)
            if (s.free_index[static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)])] >= 0) ++nnz;
        A.rowptr[i + 1] = A.rowptr[i] + nnz;
    }
    A.col.resize(static_cast<std::size_t>(A.rowptr.back()));
    A.val.resize(A.col.size());
    A.diag.resize(A.n);
    for (std::size_t i = 0; i < A.n; ++i) {
        std::size_t v = s.free_verts[i];
        std::size_t at = static_cast<std::size_t>(A.rowptr[i]);
        std::size_t diag_at = at++;
        double deg = 0.0;
        for (std::int64_t e = g.rowptr[v]; e < g.rowptr[v + 1]; ++e) {
            deg += g.w(e);
            std::int64_t j = s.free_index[static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)])];
            if (j >= 0) {
                A.col[at] = static_cast<std::int32_t>(j);
                A.val[at] = -g.w(e);
                ++at;
            }
        }
        A.col[diag_at] = static_cast<std::int32_t>(i);
        A.val[diag_at] = deg;
        A.diag[i] = deg;
    }
    return s;
}

} // namespace

CgStats cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<double> x, double rtol,
                 int maxit) {
    return cg_impl([&](std::span<const double> in, std::span<double> out) { A.mul(in, out); },
                   A.diag, b, x, rtol, maxit);
}

CgStats cg_solve(const std::function<void(std::span<const double>, std::span<double>)>& apply,
                 std::span<const double> diag, std::span<const double> b, std::span<double> x,
                 double rtol, int maxit) {
    return cg_impl(apply, diag, b, x, rtol, maxit);
}

PotentialResult dirichlet_solve(const LevelGraph& g, double rtol, int maxit) {
    PotentialResult out;
    out.h.assign(g.n(), 0.0);
    out.h[g.root] = 1.0;
    std::vector<int> comp = graph_components(g);
    int rc = comp[g.root];
    bool has_boundary = false;
    for (std::size_t v = 0; v < g.n(); ++v)
        if (comp[v] == rc && g.boundary[v]) has_boundary = true;
    if (!has_boundary) {
        for (std::size_t v = 0; v < g.n(); ++v)
            if (comp[v] == rc) out.h[v] = 1.0;
        out.closed = true;
        out.capacity = 0.0;
        out.resistance = std::numeric_limits<double>::infinity();
        out.stats.converged = true;
        return out;
    }

    GroundedSystem s = grounded_laplacian(g, comp, rc, static_cast<std::int64_t>(g.root));
    std::vector<double> b(s.A.n, 0.0);
    for (std::int64_t e = g.rowptr[g.root]; e < g.rowptr[g.root + 1]; ++e) {
        std::int64_t j = s.free_index[static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)])];
        if (j >= 0) b[static_cast<std::size_t>(j)] += g.w(e);
    }
    std::vector<double> x(s.A.n, 0.0);
    out.stats = cg_solve(s.A, b, x, rtol, maxit);
    for (std::size_t i = 0; i < s.A.n; ++i) out.h[s.free_verts[i]] = x[i];

    for (std::int64_t e = g.rowptr[g.root]; e < g.rowptr[g.root + 1]; ++e)
        out.flux += g.w(e) * (1.0 - out.h[static_cast<std::size_t>(g.col[static_cast<std::size_t>(e)])]);
    out.capacity = graph_energy(g, out.h);
    out.resistance = 1.0 / out.capacity;
    return out;
}

MonopoleSolution monopole_solve(const LevelGraph& g, double strength, double rtol, int maxit) {
    MonopoleSolution out;
    out.u.assign(g.n(), 0.0);
    std::vector<int> comp = graph_components(g);
    int rc = comp[g.root];
    bool has_boundary = false;
    for (std::size_t v = 0; v < g.n(); ++v)
        if (comp[v] == rc && g.boundary[v]) has_boundary = true;
    if (!has_boundary) {
        out.closed = true;   // L u = c e_root is inconsistent on a closed component
        return out;
    }
    GroundedSystem s = grounded_laplacian(g, comp, rc, -1);
    std::vector<double> b(s.A.n, 0.0);
    b[static_cast<std::size_t>(s.free_index[g.root])] = strength;
    std::vector<double> x(s.A.n, 0.0);
    out.stats = cg_solve(s.A, b, x, rtol, maxit);
    for (std::size_t i = 0; i < s.A.n; ++i) out.u[s.free_verts[i]] = x[i];
    out.energy = graph_energy(g, out.u);
    return out;
}

double SeriesNetwork::resistance() const {
    double r = 0.0;
    for (double c : shell_conductance) r += 1.0 / c;
    return r;
}

std::vector<double> SeriesNetwork::monopole_shells(double strength) const {
    // Potential at shell k is strength * (R_n - R_k) with R_k the partial
    // series resistance from the root.
    std::size_t n = shell_conductance.size();
    std::vector<double> u(n + 1, 0.0);
    double tail = 0.0;
    for (std::size_t k = n; k-- > 0;) {
        tail += 1.0 / shell_conductance[k];
        u[k] = strength * tail;
    }
    return u;
}

std::vector<double> SeriesNetwork::dirichlet_shells() const {
    std::vector<double> u = monopole_shells(1.0);
    double r = u[0];
    for (double& v : u) v /= r;
    return u;
}

SeriesNetwork tree_series_network(int branching, int depth, std::span<const double> edge_conductance) {
    SeriesNetwork net;
    net.shell_conductance.resize(static_cast<std::size_t>(depth));
    double shell_edges = 1.0;
    for (int k = 0; k < depth; ++k) {
        shell_edges *= branching;   // branching^(k+1) edges join shell k to k+1
        double per_edge = edge_conductance.empty() ? 1.0 : edge_conductance[static_cast<std::size_t>(k)];
        net.shell_conductance[static_cast<std::size_t>(k)] = shell_edges * per_edge;
    }
    return net;
}

} // namespace scx
