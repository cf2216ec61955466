#pragma once

#include "scx/generators.hpp"
#include "scx/operators.hpp"
#include "scx/solver.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace scx {

enum class LapTag { up, down, hodge };

std::string to_string(LapTag t);

/// Apply the chosen Laplacian at degree k by cochain calculus: up = del delta,
/// down = delta del, hodge = sum, so the action identity is the definition.
/// Finite (fully interior) complexes only.
Cochain laplacian_apply(const WeightedComplex& cx, LapTag tag, int k, const Cochain& f);

/// Orthogonal split f = harmonic + exact + coexact at degree k.  The exact
/// part is delta g with g the least-squares solve of delta g ~ f (normal
/// equations: up-Laplacian at k-1, consistent by construction); the coexact
/// part is del h with the down-Laplacian at k+1; harmonic is the remainder.
struct HodgeSplit {
    int degree = 0;
    Cochain harmonic{0}, exact{0}, coexact{0};
    double orthogonality_residual = 0.0;    // max pairwise |<a,b>| / ||f||^2
    double reconstruction_residual = 0.0;   // ||h+e+c-f|| / ||f||
    double harmonic_residual = 0.0;         // ||Delta^H harmonic|| / ||f||
    CgStats exact_stats, coexact_stats;
};

HodgeSplit hodge_decompose(const WeightedComplex& cx, const Cochain& f, double rtol = 1e-12);

/// Betti number at degree k: dim ker D_k - rank D_{k-1}, by exact elimination
/// over two large prime fields (weights do not affect ranks; the primes must
/// agree).  When the degree-k slice is small enough for a dense eigensolve the
/// numeric kernel of Delta^H_k (eigenvalues below 1e-8 of the spectral radius)
/// is required to match, else this throws: a mismatch means broken assembly.
/// With the empty simplex present, rank D_{-1} = 1 makes degree 0 reduced.
std::int64_t betti(const WeightedComplex& cx, int k);

/// betti() for every degree 0..max_degree.
std::vector<std::int64_t> betti_table(const WeightedComplex& cx);

/// Exact rank of D_k (the sign matrix C^k -> C^{k+1}) over the rationals.
std::int64_t coboundary_rank(const WeightedComplex& cx, int k);

struct Spectrum {
    int degree = 0;
    LapTag tag = LapTag::hodge;
    std::vector<double> eigenvalues;               // ascending
    std::vector<std::vector<double>> eigenvectors; // cochain coordinates, optional
    std::string method;                            // "dense" or "lanczos"
    bool converged = true;
    int iterations = 0;
};

enum class EigMethod { automatic, dense, lanczos };

/// Eigenvalues of the chosen Laplacian at degree k, conjugated to the
/// symmetric form M^{1/2} Delta M^{-1/2}.  Dense solve up to dimension 2000;
/// above that a restarted Lanczos iteration with full reorthogonalization
/// returns the `count` smallest eigenvalues to tolerance 1e-8 (relative to the
/// spectral radius).  count == 0 means all (dense only).  The single-vector
/// iteration resolves eigenvalues, not multiplicities: a degenerate cluster
/// may come back with fewer copies than it has, so exact multiplicities need
/// the dense path.
Spectrum spectrum(const WeightedComplex& cx, LapTag tag, int k, std::size_t count = 0,
                  EigMethod method = EigMethod::automatic, bool with_vectors = false);

/// delta 1_rho is a harmonic eigenform of the up-Laplacian whenever rho has a
/// coface; del 1_rho is one for the down-Laplacian one degree lower.
struct HarmonicFormReport {
    Simplex rho;
    bool has_coface = false;
    double coboundary_norm = 0.0;   // ||delta 1_rho||
    double up_residual = 0.0;       // ||Delta^+ delta 1_rho|| / ||delta 1_rho||
    bool down_checked = false;
    double boundary_norm = 0.0;     // ||del 1_rho||
    double down_residual = 0.0;     // ||Delta^- del 1_rho|| / ||del 1_rho||
};

HarmonicFormReport harmonic_eigenform_check(const WeightedComplex& cx, const Simplex& rho);

/// The summability criterion sum_{sigma > tau} sum_{tau' < sigma}
/// m(sigma)^2 / m(tau') restricted to tau of degree k, a finite diagnostic
/// whose growth across truncations tracks whether del delta C_c stays in l2.
double updelta_summability(const WeightedComplex& cx, int k);

nlohmann::ordered_json spectrum_json(const Spectrum& s);
nlohmann::ordered_json hodge_report_json(const WeightedComplex& cx, const HodgeSplit& split);

} // namespace scx
