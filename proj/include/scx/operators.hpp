#pragma once

#include "scx/complex.hpp"
#include "scx/rng.hpp"

#include <complex>
#include <string>
#include <unordered_map>
#include <vector>

namespace scx {

using cval = std::complex<double>;

/// Sparse cochain of fixed degree: simplex -> complex value.  A cochain is not
/// bound to one complex; evaluating it on a complex uses the entries that lie
/// in that complex.
class Cochain {
public:
    explicit Cochain(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    std::size_t support_size() const { return vals_.size(); }

    cval operator()(const Simplex& s) const {
        auto it = vals_.find(s);
        return it == vals_.end() ? cval{0.0, 0.0} : it->second;
    }

    void set(const Simplex& s, cval v) {
        if (s.dim() != degree_) throw ComplexError("cochain degree mismatch at " + s.str());
        if (v == cval{0.0, 0.0})
            vals_.erase(s);
        else
            vals_[s] = v;
    }

    void add(const Simplex& s, cval v) { set(s, (*this)(s) + v); }

    const std::unordered_map<Simplex, cval, SimplexHash>& entries() const { return vals_; }

    Cochain& operator*=(cval c) {
        for (auto& [s, v] : vals_) v *= c;
        return *this;
    }

private:
    int degree_;
    std::unordered_map<Simplex, cval, SimplexHash> vals_;
};

/// delta omega(sigma) = sum over codim-1 faces tau of theta(tau,sigma) omega(tau).
Cochain coboundary(const WeightedComplex& cx, const Cochain& omega);

struct BoundaryResult {
    Cochain chain;
    /// Simplices where the value was computed from an incomplete coface list
    /// (non-interior), so it is not authoritative for the ambient family.
    std::vector<Simplex> non_interior;
};

/// del omega(rho) = (1/m(rho)) sum over cofaces tau of m(tau) theta(rho,tau) omega(tau).
BoundaryResult boundary(const WeightedComplex& cx, const Cochain& omega);

/// <f,g> = sum m(s) f(s) conj(g(s)) over degree-k simplices of cx.
cval inner_product(const WeightedComplex& cx, const Cochain& f, const Cochain& g);
double norm(const WeightedComplex& cx, const Cochain& f);

/// Q^+ = ||delta f||^2, Q^- = ||del f||^2, Q^H = ||delta f + del f||^2 (graded).
double qform_up(const WeightedComplex& cx, const Cochain& f);
double qform_down(const WeightedComplex& cx, const Cochain& f);
double qform_hodge(const WeightedComplex& cx, const Cochain& f);

/// Random cochain supported on all degree-k simplices, entries uniform in the
/// complex unit box, normalized to ||f|| = 1.
Cochain random_cochain(const WeightedComplex& cx, int degree, SplitMix64& rng, bool complex_entries = true);

/// Assembled matrix pair for one degree: D maps degree k to k+1 (entries +-1),
/// B = M_k^{-1} D^T M_{k+1} maps k+1 to k.  Rows/cols are indexed by the
/// complex's sorted simplex order.
struct OperatorPair {
    int degree = 0;                       // k
    std::size_t rows = 0, cols = 0;       // |Sigma_{k+1}|, |Sigma_k|
    std::vector<std::int64_t> d_rowptr;   // CSR of D, rows = Sigma_{k+1}
    std::vector<std::int32_t> d_col;
    std::vector<std::int8_t> d_sign;
    std::vector<std::int64_t> b_rowptr;   // CSR of B, rows = Sigma_k
    std::vector<std::int32_t> b_col;
    std::vector<double> b_val;
};

OperatorPair build_operator_pair(const WeightedComplex& cx, int degree);

/// D_{k+1} * D_k as exact integer product; returns the max |entry| (0 iff the
/// composition vanishes identically).
std::int64_t composition_max_entry(const OperatorPair& dk, const OperatorPair& dk1);

/// Writes prefix.D<k>.coo / prefix.B<k>.coo (row col value, 0-based) and
/// prefix.index<k>.txt / prefix.index<k+1>.txt (row index -> vertex list).
void export_operator_pair(const WeightedComplex& cx, const OperatorPair& p, const std::string& prefix);

} // namespace scx
