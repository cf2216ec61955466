#pragma once

#include "scx/graph.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace scx {

struct CgStats {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Square sparse matrix in CSR form with the diagonal cached for Jacobi
/// preconditioning.
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> rowptr;
    std::vector<std::int32_t> col;
    std::vector<double> val;
    std::vector<double> diag;

    void mul(std::span<const double> x, std::span<double> y) const;
};

/// Jacobi-preconditioned conjugate gradient.  x holds the initial guess on
/// entry and the solution on exit; rtol is relative to ||b||.
CgStats cg_solve(const CsrMatrix& A, std::span<const double> b, std::span<double> x,
                 double rtol = 1e-12, int max_iterations = 0);

/// Matrix-free variant for operators given as y = A(x); diag may be empty
/// (unpreconditioned).
CgStats cg_solve(const std::function<void(std::span<const double>, std::span<double>)>& apply,
                 std::span<const double> diag, std::span<const double> b, std::span<double> x,
                 double rtol = 1e-12, int max_iterations = 0);

/// Unit potential at the root, ground on the boundary, harmonic in between.
/// capacity = Q(h) (variational, quadratically accurate in the CG residual),
/// resistance = 1/capacity, flux = current leaving the root.  A root component
/// without boundary is closed: h = 1 there, capacity 0, resistance infinity.
struct PotentialResult {
    std::vector<double> h;
    double flux = 0.0;
    double capacity = 0.0;
    double resistance = 0.0;
    bool closed = false;
    CgStats stats;
};
PotentialResult dirichlet_solve(const LevelGraph& g, double rtol = 1e-12, int max_iterations = 0);

/// Grounded monopole: L u = strength * e_root on non-boundary vertices of the
/// root component, u = 0 on the boundary.  energy = Q(u) = strength^2 * R.
/// Fails (converged = false) when the root component has no boundary.
struct MonopoleSolution {
    std::vector<double> u;
    double energy = 0.0;
    bool closed = false;
    CgStats stats;
};
MonopoleSolution monopole_solve(const LevelGraph& g, double strength, double rtol = 1e-12,
                                int max_iterations = 0);

/// Series network of shell conductances c_0, ..., c_{n-1} joining shell k to
/// k+1, with the root at shell 0 and ground at shell n.  Shell symmetry makes
/// these exact for radial problems on trees: the Dirichlet and monopole
/// solutions depend on the depth alone, so the graph collapses to this chain.
struct SeriesNetwork {
    std::vector<double> shell_conductance;

    double resistance() const;                    // sum of 1/c_k
    double capacity() const { return 1.0 / resistance(); }
    /// Potentials per shell for the grounded unit-current monopole.
    std::vector<double> monopole_shells(double strength = 1.0) const;
    /// Harmonic unit-potential cutoff per shell.
    std::vector<double> dirichlet_shells() const;
};

/// Shell profile of the depth-n branching tree with the given per-edge
/// conductance profile by depth (unit if empty): beta^(k+1) parallel edges
/// join shell k to shell k+1.
SeriesNetwork tree_series_network(int branching, int depth,
                                  std::span<const double> edge_conductance = {});

} // namespace scx
