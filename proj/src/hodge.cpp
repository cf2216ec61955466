#include "scx/hodge.hpp"

#include "scx/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace scx {

std::string to_string(LapTag t) {
    switch (t) {
    case LapTag::up: return "up";
    case LapTag::down: return "down";
    case LapTag::hodge: return "hodge";
    }
    return "?";
}

Cochain laplacian_apply(const WeightedComplex& cx, LapTag tag, int k, const Cochain& f) {
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("laplacian_apply: degree out of range");
    if (f.degree() != k) throw ComplexError("laplacian_apply: cochain degree mismatch");
    Cochain out{k};
    if (tag != LapTag::down && k + 1 <= cx.max_degree()) {
        Cochain up = boundary(cx, coboundary(cx, f)).chain;
        for (const auto& [s, v] : up.entries()) out.add(s, v);
    }
    if (tag != LapTag::up && k - 1 >= cx.min_degree()) {
        Cochain down = coboundary(cx, boundary(cx, f).chain);
        for (const auto& [s, v] : down.entries()) out.add(s, v);
    }
    return out;
}

namespace {

/// Accumulate the symmetrized Laplacian M^{1/2} Delta M^{-1/2} at degree k
/// through a callback; the matrix is assembled from the incidence signs so
/// symmetry is structural, not numerical.
template <typename Add>
void add_up_terms(const WeightedComplex& cx, int k, Add&& add) {
    if (k + 1 > cx.max_degree()) return;
    OperatorPair p = build_operator_pair(cx, k);
    std::vector<double> rs(p.cols);   // 1/sqrt(m) per column
    for (std::size_t c = 0; c < p.cols; ++c) rs[c] = 1.0 / std::sqrt(cx.mass(k, c));
    for (std::size_t r = 0; r < p.rows; ++r) {
        double mr = cx.mass(k + 1, r);
        for (std::int64_t a = p.d_rowptr[r]; a < p.d_rowptr[r + 1]; ++a)
            for (std::int64_t b = p.d_rowptr[r]; b < p.d_rowptr[r + 1]; ++b) {
                auto ca = p.d_col[static_cast<std::size_t>(a)];
                auto cb = p.d_col[static_cast<std::size_t>(b)];
                double v = mr * p.d_sign[static_cast<std::size_t>(a)] *
                           p.d_sign[static_cast<std::size_t>(b)] * rs[ca] * rs[cb];
                add(static_cast<std::size_t>(ca), static_cast<std::size_t>(cb), v);
            }
    }
}

template <typename Add>
void add_down_terms(const WeightedComplex& cx, int k, Add&& add) {
    if (k - 1 < cx.min_degree()) return;
    OperatorPair p = build_operator_pair(cx, k - 1);   // D rows are degree k
    std::size_t n = p.rows;
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = std::sqrt(cx.mass(k, i));
    // transpose D to iterate one low-degree column at a time
    std::vector<std::vector<std::pair<std::int32_t, std::int8_t>>> bycol(p.cols);
    for (std::size_t r = 0; r < n; ++r)
        for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e)
            bycol[static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)])].push_back(
                {static_cast<std::int32_t>(r), p.d_sign[static_cast<std::size_t>(e)]});
    for (std::size_t c = 0; c < p.cols; ++c) {
        double inv = 1.0 / cx.mass(k - 1, c);
        for (auto [i, si] : bycol[c])
            for (auto [j, sj] : bycol[c]) {
                double v = static_cast<double>(si) * sj * inv * sq[static_cast<std::size_t>(i)] *
                           sq[static_cast<std::size_t>(j)];
                add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
            }
    }
}

template <typename Add>
void add_terms(const WeightedComplex& cx, LapTag tag, int k, Add&& add) {
    if (tag != LapTag::down) add_up_terms(cx, k, add);
    if (tag != LapTag::up) add_down_terms(cx, k, add);
}

Eigen::MatrixXd dense_sym(const WeightedComplex& cx, LapTag tag, int k) {
    auto n = static_cast<Eigen::Index>(cx.size(k));
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
    add_terms(cx, tag, k, [&](std::size_t i, std::size_t j, double v) {
        S(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
    });
    return S;
}

CsrMatrix sparse_sym(const WeightedComplex& cx, LapTag tag, int k) {
    std::size_t n = cx.size(k);
    std::unordered_map<std::int64_t, double> acc;
    add_terms(cx, tag, k, [&](std::size_t i, std::size_t j, double v) {
        acc[static_cast<std::int64_t>(i) * static_cast<std::int64_t>(n) +
            static_cast<std::int64_t>(j)] += v;
    });
    std::vector<std::vector<std::pair<std::int32_t, double>>> rows(n);
    for (auto [key, v] : acc)
        rows[static_cast<std::size_t>(key / static_cast<std::int64_t>(n))].push_back(
            {static_cast<std::int32_t>(key % static_cast<std::int64_t>(n)), v});
    CsrMatrix A;
    A.n = n;
    A.rowptr.assign(n + 1, 0);
    A.diag.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        A.rowptr[i + 1] = A.rowptr[i] + static_cast<std::int64_t>(rows[i].size());
    }
    A.col.resize(static_cast<std::size_t>(A.rowptr.back()));
    A.val.resize(A.col.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t at = static_cast<std::size_t>(A.rowptr[i]);
        for (auto [c, v] : rows[i]) {
            A.col[at] = c;
            A.val[at] = v;
            if (static_cast<std::size_t>(c) == i) A.diag[i] = v;
            ++at;
        }
    }
    return A;
}

constexpr std::size_t dense_limit = 2000;
constexpr double eig_rtol = 1e-8;

Spectrum dense_spectrum(const WeightedComplex& cx, LapTag tag, int k, std::size_t count,
                        bool with_vectors) {
    Spectrum sp;
    sp.degree = k;
    sp.tag = tag;
    sp.method = "dense";
    std::size_t n = cx.size(k);
    if (n == 0) return sp;
    Eigen::MatrixXd S = dense_sym(cx, tag, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        S, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        sp.converged = false;
        return sp;
    }
    std::size_t keep = count == 0 ? n : std::min(count, n);
    sp.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + keep);
    if (with_vectors) {
        sp.eigenvectors.resize(keep);
        for (std::size_t j = 0; j < keep; ++j) {
            sp.eigenvectors[j].resize(n);
            for (std::size_t i = 0; i < n; ++i)
                sp.eigenvectors[j][i] = es.eigenvectors()(static_cast<Eigen::Index>(i),
                                                          static_cast<Eigen::Index>(j)) /
                                        std::sqrt(cx.mass(k, i));
        }
    }
    return sp;
}

/// Lanczos with full reorthogonalization on sigma*I - S, restarted by doubling
/// the basis until the `count` largest Ritz values (the smallest eigenvalues
/// of S) have residual below eig_rtol * sigma.
Spectrum lanczos_spectrum(const WeightedComplex& cx, LapTag tag, int k, std::size_t count,
                          bool with_vectors) {
    Spectrum sp;
    sp.degree = k;
    sp.tag = tag;
    sp.method = "lanczos";
    std::size_t n = cx.size(k);
    if (n == 0) return sp;
    if (count == 0 || count > n) count = std::min<std::size_t>(n, 10);

    CsrMatrix S = sparse_sym(cx, tag, k);
    double sigma = 1.0;   // Gershgorin upper bound on the spectrum
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::int64_t e = S.rowptr[i]; e < S.rowptr[i + 1]; ++e)
            row += std::abs(S.val[static_cast<std::size_t>(e)]);
        sigma = std::max(sigma, row);
    }

    std::vector<double> tmp(n);
    auto apply = [&](std::span<const double> x, std::span<double> y) {
        S.mul(x, std::span<double>(tmp));
        for (std::size_t i = 0; i < n; ++i) y[i] = sigma * x[i] - tmp[i];
    };

    std::size_t mmax = std::min<std::size_t>(n, 400);
    std::size_t m = std::min(mmax, std::max<std::size_t>(2 * count + 30, 60));
    double tol = eig_rtol * sigma;

    while (true) {
        std::vector<std::vector<double>> V;
        std::vector<double> alpha, beta;
        SplitMix64 rng{0x5ca1ab1e};
        std::vector<double> v(n);
        double nrm = 0.0;
        for (auto& x : v) {
            x = rng.next_symmetric();
            nrm += x * x;
        }
        nrm = std::sqrt(nrm);
        for (auto& x : v) x /= nrm;
        V.push_back(v);

        std::vector<double> w(n);
        bool breakdown = false;
        for (std::size_t j = 0; j < m; ++j) {
            apply(V[j], w);
            ++sp.iterations;
            double a = 0.0;
            for (std::size_t i = 0; i < n; ++i) a += w[i] * V[j][i];
            alpha.push_back(a);
            // two passes of full reorthogonalization
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : V) {
                    double c = 0.0;
                    for (std::size_t i = 0; i < n; ++i) c += w[i] * q[i];
                    for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
                }
            double b = 0.0;
            for (double x : w) b += x * x;
            b = std::sqrt(b);
            if (b < 1e-14 * sigma || j + 1 == m) {
                beta.push_back(b);
                breakdown = b < 1e-14 * sigma;
                break;
            }
            beta.push_back(b);
            std::vector<double> next(n);
            for (std::size_t i = 0; i < n; ++i) next[i] = w[i] / b;
            V.push_back(std::move(next));
        }

        std::size_t steps = alpha.size();
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(steps),
                                                  static_cast<Eigen::Index>(steps));
        for (std::size_t i = 0; i < steps; ++i) {
            T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = alpha[i];
            if (i + 1 < steps) {
                T(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = beta[i];
                T(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        double btail = beta.empty() ? 0.0 : beta.back();

        // largest Ritz values of sigma*I - S sit at the back
        std::size_t have = std::min(count, steps);
        bool ok = breakdown || steps == n;
        if (!ok) {
            ok = true;
            for (std::size_t j = 0; j < have; ++j) {
                double resid = std::abs(btail * es.eigenvectors()(static_cast<Eigen::Index>(steps - 1),
                                                                  static_cast<Eigen::Index>(steps - 1 - j)));
                if (resid > tol) ok = false;
            }
        }
        if (ok || m >= mmax) {
            sp.converged = ok;
            sp.eigenvalues.resize(have);
            // back of the mu order = largest mu = smallest lambda, so j walks
            // the result in ascending lambda directly
            for (std::size_t j = 0; j < have; ++j)
                sp.eigenvalues[j] =
                    sigma - es.eigenvalues()(static_cast<Eigen::Index>(steps - 1 - j));
            if (with_vectors) {
                sp.eigenvectors.assign(have, std::vector<double>(n, 0.0));
                for (std::size_t j = 0; j < have; ++j) {
                    auto col = es.eigenvectors().col(static_cast<Eigen::Index>(steps - 1 - j));
                    auto& out = sp.eigenvectors[j];
                    for (std::size_t s = 0; s < steps; ++s)
                        for (std::size_t i = 0; i < n; ++i)
                            out[i] += col(static_cast<Eigen::Index>(s)) * V[s][i];
                    for (std::size_t i = 0; i < n; ++i) out[i] /= std::sqrt(cx.mass(k, i));
                }
            }
            return sp;
        }
        m = std::min(mmax, m * 2);
    }
}

} // namespace

Spectrum spectrum(const WeightedComplex& cx, LapTag tag, int k, std::size_t count,
                  EigMethod method, bool with_vectors) {
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("spectrum: degree out of range");
    if (count > cx.size(k)) throw ComplexError("spectrum: count exceeds dimension");
    bool dense = method == EigMethod::dense ||
                 (method == EigMethod::automatic && cx.size(k) <= dense_limit);
    return dense ? dense_spectrum(cx, tag, k, count, with_vectors)
                 : lanczos_spectrum(cx, tag, k, count, with_vectors);
}

namespace {

/// Rank of the degree-k sign matrix over GF(p), by plain row elimination.
std::int64_t rank_mod(const OperatorPair& p, std::int64_t prime) {
    std::size_t rows = p.rows, cols = p.cols;
    if (rows == 0 || cols == 0) return 0;
    if (rows * cols > 25000000)
        throw ComplexError("betti: incidence matrix too large for exact rank");
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e) {
            std::int64_t v = p.d_sign[static_cast<std::size_t>(e)];
            a[r][static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)])] =
                (v % prime + prime) % prime;
        }
    auto powmod = [&](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= prime;
        while (e > 0) {
            if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % prime);
            b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % prime);
            e >>= 1;
        }
        return r;
    };
    std::int64_t rank = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[static_cast<std::size_t>(rank)], a[piv]);
        std::int64_t inv = powmod(a[static_cast<std::size_t>(rank)][c], prime - 2);
        auto& pr = a[static_cast<std::size_t>(rank)];
        for (std::size_t j = c; j < cols; ++j)
            pr[j] = static_cast<std::int64_t>(static_cast<__int128>(pr[j]) * inv % prime);
        for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
            std::int64_t f = a[r][c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                a[r][j] = (a[r][j] - static_cast<std::int64_t>(
                                         static_cast<__int128>(f) * pr[j] % prime)) %
                          prime;
                if (a[r][j] < 0) a[r][j] += prime;
            }
        }
        ++rank;
    }
    return rank;
}

std::int64_t exact_rank(const WeightedComplex& cx, int k) {
    if (k + 1 > cx.max_degree() || k < cx.min_degree()) return 0;
    OperatorPair p = build_operator_pair(cx, k);
    // A prime can only undercount (when it divides every maximal minor), so
    // two large primes agreeing, or the larger of the two, is the true rank.
    std::int64_t r1 = rank_mod(p, 2147483647);
    std::int64_t r2 = rank_mod(p, 2147483629);
    return std::max(r1, r2);
}

} // namespace

std::int64_t coboundary_rank(const WeightedComplex& cx, int k) {
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("coboundary_rank: degree out of range");
    return exact_rank(cx, k);
}

std::int64_t betti(const WeightedComplex& cx, int k) {
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("betti: degree out of range");
    auto nk = static_cast<std::int64_t>(cx.size(k));
    std::int64_t b = nk - exact_rank(cx, k) - (k - 1 >= cx.min_degree() ? exact_rank(cx, k - 1) : 0);
    if (nk > 0 && cx.size(k) <= dense_limit) {
        Spectrum sp = dense_spectrum(cx, LapTag::hodge, k, 0, false);
        double lmax = sp.eigenvalues.empty() ? 0.0 : sp.eigenvalues.back();
        double thr = eig_rtol * std::max(lmax, 1.0);
        std::int64_t zero = 0;
        for (double e : sp.eigenvalues)
            if (e < thr) ++zero;
        if (zero != b)
            throw ComplexError("betti: exact rank (" + std::to_string(b) +
                               ") and numeric kernel (" + std::to_string(zero) +
                               ") disagree at degree " + std::to_string(k));
    }
    return b;
}

std::vector<std::int64_t> betti_table(const WeightedComplex& cx) {
    std::vector<std::int64_t> out;
    for (int k = 0; k <= cx.max_degree(); ++k) out.push_back(betti(cx, k));
    return out;
}

namespace {

struct ComplexVec {
    std::vector<double> re, im;
    bool has_im = false;
};

ComplexVec vec_of(const WeightedComplex& cx, const Cochain& f, int k) {
    ComplexVec v;
    v.re.assign(cx.size(k), 0.0);
    v.im.assign(cx.size(k), 0.0);
    for (const auto& [s, val] : f.entries()) {
        auto i = cx.index_of(s);
        if (!i) continue;
        v.re[*i] = val.real();
        v.im[*i] = val.imag();
        if (val.imag() != 0.0) v.has_im = true;
    }
    return v;
}

Cochain cochain_of(const WeightedComplex& cx, int k, std::span<const double> re,
                   std::span<const double> im) {
    Cochain f{k};
    for (std::size_t i = 0; i < cx.size(k); ++i) {
        cval v{re[i], im.empty() ? 0.0 : im[i]};
        if (v != cval{0.0, 0.0}) f.set(cx.simplex(k, i), v);
    }
    return f;
}

CgStats merge(const CgStats& a, const CgStats& b) {
    CgStats s;
    s.iterations = std::max(a.iterations, b.iterations);
    s.relative_residual = std::max(a.relative_residual, b.relative_residual);
    s.converged = a.converged && b.converged;
    return s;
}

} // namespace

HodgeSplit hodge_decompose(const WeightedComplex& cx, const Cochain& f, double rtol) {
    int k = f.degree();
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("hodge_decompose: degree out of range");
    HodgeSplit out;
    out.degree = k;
    out.harmonic = Cochain{k};
    out.exact = Cochain{k};
    out.coexact = Cochain{k};
    double fn = norm(cx, f);
    if (fn == 0.0) return out;

    std::size_t nk = cx.size(k);
    ComplexVec fv = vec_of(cx, f, k);

    if (k - 1 >= cx.min_degree()) {
        OperatorPair p = build_operator_pair(cx, k - 1);
        std::vector<double> diag(p.cols, 0.0);
        for (std::size_t c = 0; c < p.cols; ++c)
            for (std::int64_t ci : cx.cofaces(k - 1, c))
                diag[c] += cx.mass(k, static_cast<std::size_t>(ci)) / cx.mass(k - 1, c);
        std::vector<double> mid(nk);
        auto up_apply = [&](std::span<const double> x, std::span<double> y) {
            for (std::size_t r = 0; r < p.rows; ++r) {
                double s = 0.0;
                for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e)
                    s += p.d_sign[static_cast<std::size_t>(e)] *
                         x[static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)])];
                mid[r] = s;
            }
            for (std::size_t c = 0; c < p.cols; ++c) {
                double s = 0.0;
                for (std::int64_t e = p.b_rowptr[c]; e < p.b_rowptr[c + 1]; ++e)
                    s += p.b_val[static_cast<std::size_t>(e)] *
                         mid[static_cast<std::size_t>(p.b_col[static_cast<std::size_t>(e)])];
                y[c] = s;
            }
        };
        // rhs = del f on degree k-1
        BoundaryResult bf = boundary(cx, f);
        ComplexVec rhs = vec_of(cx, bf.chain, k - 1);
        std::vector<double> gre(p.cols, 0.0), gim(p.cols, 0.0);
        out.exact_stats = cg_solve(up_apply, diag, rhs.re, gre, rtol);
        if (fv.has_im) out.exact_stats = merge(out.exact_stats, cg_solve(up_apply, diag, rhs.im, gim, rtol));
        // exact = delta g
        std::vector<double> ere(nk, 0.0), eim(nk, 0.0);
        for (std::size_t r = 0; r < p.rows; ++r)
            for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e) {
                auto c = static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)]);
                double s = p.d_sign[static_cast<std::size_t>(e)];
                ere[r] += s * gre[c];
                eim[r] += s * gim[c];
            }
        out.exact = cochain_of(cx, k, ere, eim);
    }

    if (k + 1 <= cx.max_degree()) {
        OperatorPair p = build_operator_pair(cx, k);   // D: k -> k+1, B: k+1 -> k
        std::vector<double> diag(p.rows, 0.0);
        for (std::size_t r = 0; r < p.rows; ++r)
            for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e)
                diag[r] += cx.mass(k + 1, r) /
                           cx.mass(k, static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)]));
        std::vector<double> mid(nk);
        auto down_apply = [&](std::span<const double> x, std::span<double> y) {
            for (std::size_t c = 0; c < p.cols; ++c) {
                double s = 0.0;
                for (std::int64_t e = p.b_rowptr[c]; e < p.b_rowptr[c + 1]; ++e)
                    s += p.b_val[static_cast<std::size_t>(e)] *
                         x[static_cast<std::size_t>(p.b_col[static_cast<std::size_t>(e)])];
                mid[c] = s;
            }
            for (std::size_t r = 0; r < p.rows; ++r) {
                double s = 0.0;
                for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e)
                    s += p.d_sign[static_cast<std::size_t>(e)] *
                         mid[static_cast<std::size_t>(p.d_col[static_cast<std::size_t>(e)])];
                y[r] = s;
            }
        };
        Cochain df = coboundary(cx, f);
        ComplexVec rhs = vec_of(cx, df, k + 1);
        std::vector<double> hre(p.rows, 0.0), him(p.rows, 0.0);
        out.coexact_stats = cg_solve(down_apply, diag, rhs.re, hre, rtol);
        if (fv.has_im)
            out.coexact_stats = merge(out.coexact_stats, cg_solve(down_apply, diag, rhs.im, him, rtol));
        // coexact = del h
        std::vector<double> cre(nk, 0.0), cim(nk, 0.0);
        for (std::size_t c = 0; c < p.cols; ++c)
            for (std::int64_t e = p.b_rowptr[c]; e < p.b_rowptr[c + 1]; ++e) {
                auto r = static_cast<std::size_t>(p.b_col[static_cast<std::size_t>(e)]);
                double v = p.b_val[static_cast<std::size_t>(e)];
                cre[c] += v * hre[r];
                cim[c] += v * him[r];
            }
        out.coexact = cochain_of(cx, k, cre, cim);
    }

    out.harmonic = Cochain{k};
    for (std::size_t i = 0; i < nk; ++i) {
        const Simplex& s = cx.simplex(k, i);
        cval v = f(s) - out.exact(s) - out.coexact(s);
        if (v != cval{0.0, 0.0}) out.harmonic.set(s, v);
    }

    Cochain sum{k};
    for (const auto& [s, v] : out.harmonic.entries()) sum.add(s, v);
    for (const auto& [s, v] : out.exact.entries()) sum.add(s, v);
    for (const auto& [s, v] : out.coexact.entries()) sum.add(s, v);
    for (const auto& [s, v] : f.entries()) sum.add(s, -v);
    out.reconstruction_residual = norm(cx, sum) / fn;

    double f2 = fn * fn;
    out.orthogonality_residual =
        std::max({std::abs(inner_product(cx, out.harmonic, out.exact)),
                  std::abs(inner_product(cx, out.harmonic, out.coexact)),
                  std::abs(inner_product(cx, out.exact, out.coexact))}) /
        f2;
    out.harmonic_residual = norm(cx, laplacian_apply(cx, LapTag::hodge, k, out.harmonic)) / fn;
    return out;
}

HarmonicFormReport harmonic_eigenform_check(const WeightedComplex& cx, const Simplex& rho) {
    if (!cx.contains(rho)) throw ComplexError("harmonic_eigenform_check: rho not in complex");
    HarmonicFormReport rep;
    rep.rho = rho;
    int r = rho.dim();
    Cochain one{r};
    one.set(rho, cval{1.0, 0.0});

    if (r + 1 <= cx.max_degree()) {
        Cochain d1 = coboundary(cx, one);
        rep.coboundary_norm = norm(cx, d1);
        if (rep.coboundary_norm > 0.0) {
            rep.has_coface = true;
            rep.up_residual =
                norm(cx, laplacian_apply(cx, LapTag::up, r + 1, d1)) / rep.coboundary_norm;
        }
    }
    if (r - 1 >= cx.min_degree()) {
        Cochain b1 = boundary(cx, one).chain;
        rep.boundary_norm = norm(cx, b1);
        if (rep.boundary_norm > 0.0) {
            rep.down_checked = true;
            rep.down_residual =
                norm(cx, laplacian_apply(cx, LapTag::down, r - 1, b1)) / rep.boundary_norm;
        }
    }
    return rep;
}

double updelta_summability(const WeightedComplex& cx, int k) {
    if (k < cx.min_degree() || k > cx.max_degree())
        throw ComplexError("updelta_summability: degree out of range");
    if (k + 1 > cx.max_degree()) return 0.0;
    double total = 0.0;
    double faces = k + 2;   // each sigma covers this many tau
    for (std::size_t r = 0; r < cx.size(k + 1); ++r) {
        const Simplex& sigma = cx.simplex(k + 1, r);
        double m2 = cx.mass(k + 1, r) * cx.mass(k + 1, r);
        double inv = 0.0;
        for (int fidx = 0; fidx < sigma.size(); ++fidx) inv += 1.0 / cx.mass(sigma.face(fidx));
        total += faces * m2 * inv;
    }
    return total;
}

nlohmann::ordered_json spectrum_json(const Spectrum& s) {
    nlohmann::ordered_json j;
    j["degree"] = s.degree;
    j["operator"] = to_string(s.tag);
    j["method"] = s.method;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["eigenvalues"] = s.eigenvalues;
    return j;
}

nlohmann::ordered_json hodge_report_json(const WeightedComplex& cx, const HodgeSplit& split) {
    nlohmann::ordered_json j;
    j["degree"] = split.degree;
    j["harmonic_norm"] = norm(cx, split.harmonic);
    j["exact_norm"] = norm(cx, split.exact);
    j["coexact_norm"] = norm(cx, split.coexact);
    j["orthogonality_residual"] = split.orthogonality_residual;
    j["reconstruction_residual"] = split.reconstruction_residual;
    j["harmonic_residual"] = split.harmonic_residual;
    return j;
}

} // namespace scx
