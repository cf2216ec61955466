#include "scx/operators.hpp"

#include <cmath>
#include <fstream>

namespace scx {

Cochain coboundary(const WeightedComplex& cx, const Cochain& omega) {
    int k = omega.degree();
    Cochain out(k + 1);
    if (k + 1 > cx.max_degree()) return out;
    for (std::size_t i = 0; i < cx.size(k + 1); ++i) {
        const Simplex& sigma = cx.simplex(k + 1, i);
        cval acc{0.0, 0.0};
        for (int f = 0; f < sigma.size(); ++f) {
            Simplex tau = sigma.face(f);
            cval v = omega(tau);
            if (v != cval{0.0, 0.0}) acc += static_cast<double>(f % 2 == 0 ? 1 : -1) * v;
        }
        if (acc != cval{0.0, 0.0}) out.set(sigma, acc);
    }
    return out;
}

BoundaryResult boundary(const WeightedComplex& cx, const Cochain& omega) {
    int k = omega.degree();
    BoundaryResult res{Cochain(k - 1), {}};
    if (k - 1 < cx.min_degree()) return res;
    for (std::size_t i = 0; i < cx.size(k - 1); ++i) {
        const Simplex& rho = cx.simplex(k - 1, i);
        cval acc{0.0, 0.0};
        bool touched = false;
        for (std::int64_t ci : cx.cofaces(k - 1, i)) {
            const Simplex& tau = cx.simplex(k, static_cast<std::size_t>(ci));
            cval v = omega(tau);
            if (v != cval{0.0, 0.0}) {
                acc += cx.mass(k, static_cast<std::size_t>(ci)) *
                       static_cast<double>(alternating_sign(rho, tau)) * v;
                touched = true;
            }
        }
        if (touched && !cx.interior(k - 1, i)) res.non_interior.push_back(rho);
        if (acc != cval{0.0, 0.0}) res.chain.set(rho, acc / cx.mass(k - 1, i));
    }
    return res;
}

cval inner_product(const WeightedComplex& cx, const Cochain& f, const Cochain& g) {
    if (f.degree() != g.degree()) throw ComplexError("inner_product: degree mismatch");
    int k = f.degree();
    const Cochain& small = f.support_size() <= g.support_size() ? f : g;
    cval acc{0.0, 0.0};
    for (const auto& [s, v] : small.entries()) {
        auto idx = cx.index_of(s);
        if (!idx) continue;
        acc += cx.mass(k, *idx) * f(s) * std::conj(g(s));
    }
    return acc;
}

double norm(const WeightedComplex& cx, const Cochain& f) {
    int k = f.degree();
    double acc = 0.0;
    for (const auto& [s, v] : f.entries()) {
        auto idx = cx.index_of(s);
        if (!idx) continue;
        acc += cx.mass(k, *idx) * std::norm(v);
    }
    return std::sqrt(acc);
}

double qform_up(const WeightedComplex& cx, const Cochain& f) {
    Cochain d = coboundary(cx, f);
    double n = norm(cx, d);
    return n * n;
}

double qform_down(const WeightedComplex& cx, const Cochain& f) {
    Cochain b = boundary(cx, f).chain;
    double n = norm(cx, b);
    return n * n;
}

double qform_hodge(const WeightedComplex& cx, const Cochain& f) {
    // delta f and del f live in different degrees; Q^H is the graded sum
    return qform_up(cx, f) + qform_down(cx, f);
}

Cochain random_cochain(const WeightedComplex& cx, int degree, SplitMix64& rng, bool complex_entries) {
    Cochain f(degree);
    for (std::size_t i = 0; i < cx.size(degree); ++i) {
        double re = rng.next_symmetric();
        double im = complex_entries ? rng.next_symmetric() : 0.0;
        f.set(cx.simplex(degree, i), {re, im});
    }
    double n = norm(cx, f);
    if (n > 0.0) f *= cval{1.0 / n, 0.0};
    return f;
}

OperatorPair build_operator_pair(const WeightedComplex& cx, int degree) {
    int k = degree;
    if (k < cx.min_degree() || k + 1 > cx.max_degree())
        throw ComplexError("build_operator_pair: degree out of range");
    OperatorPair p;
    p.degree = k;
    p.cols = cx.size(k);
    p.rows = cx.size(k + 1);

    p.d_rowptr.assign(p.rows + 1, 0);
    for (std::size_t r = 0; r < p.rows; ++r)
        p.d_rowptr[r + 1] = p.d_rowptr[r] + cx.simplex(k + 1, r).size();
    p.d_col.resize(static_cast<std::size_t>(p.d_rowptr.back()));
    p.d_sign.resize(static_cast<std::size_t>(p.d_rowptr.back()));
    for (std::size_t r = 0; r < p.rows; ++r) {
        const Simplex& sigma = cx.simplex(k + 1, r);
        std::int64_t base = p.d_rowptr[r];
        for (int f = 0; f < sigma.size(); ++f) {
            auto idx = cx.index_of(sigma.face(f));
            if (!idx) throw ComplexError("build_operator_pair: missing face");
            p.d_col[static_cast<std::size_t>(base + f)] = static_cast<std::int32_t>(*idx);
            p.d_sign[static_cast<std::size_t>(base + f)] = static_cast<std::int8_t>(f % 2 == 0 ? 1 : -1);
        }
    }

    // B = M_k^{-1} D^T M_{k+1}: row rho collects its cofaces
    p.b_rowptr.assign(p.cols + 1, 0);
    for (std::size_t c = 0; c < p.cols; ++c)
        p.b_rowptr[c + 1] = p.b_rowptr[c] + static_cast<std::int64_t>(cx.cofaces(k, c).size());
    p.b_col.resize(static_cast<std::size_t>(p.b_rowptr.back()));
    p.b_val.resize(static_cast<std::size_t>(p.b_rowptr.back()));
    for (std::size_t c = 0; c < p.cols; ++c) {
        const Simplex& rho = cx.simplex(k, c);
        std::int64_t pos = p.b_rowptr[c];
        for (std::int64_t ci : cx.cofaces(k, c)) {
            const Simplex& tau = cx.simplex(k + 1, static_cast<std::size_t>(ci));
            p.b_col[static_cast<std::size_t>(pos)] = static_cast<std::int32_t>(ci);
            p.b_val[static_cast<std::size_t>(pos)] =
                cx.mass(k + 1, static_cast<std::size_t>(ci)) *
                static_cast<double>(alternating_sign(rho, tau)) / cx.mass(k, c);
            ++pos;
        }
    }
    return p;
}

std::int64_t composition_max_entry(const OperatorPair& dk, const OperatorPair& dk1) {
    if (dk1.cols != dk.rows) throw ComplexError("composition_max_entry: shape mismatch");
    // rows of D_{k+1} times the sparse columns of D_k: accumulate per row
    std::int64_t worst = 0;
    std::vector<std::int64_t> acc(dk.cols, 0);
    std::vector<std::int32_t> touched;
    for (std::size_t r = 0; r < dk1.rows; ++r) {
        touched.clear();
        for (std::int64_t e = dk1.d_rowptr[r]; e < dk1.d_rowptr[r + 1]; ++e) {
            std::int32_t mid = dk1.d_col[static_cast<std::size_t>(e)];
            std::int64_t s1 = dk1.d_sign[static_cast<std::size_t>(e)];
            for (std::int64_t f = dk.d_rowptr[mid]; f < dk.d_rowptr[mid + 1]; ++f) {
                std::int32_t c = dk.d_col[static_cast<std::size_t>(f)];
                if (acc[static_cast<std::size_t>(c)] == 0) touched.push_back(c);
                acc[static_cast<std::size_t>(c)] += s1 * dk.d_sign[static_cast<std::size_t>(f)];
            }
        }
        for (std::int32_t c : touched) {
            worst = std::max(worst, std::abs(acc[static_cast<std::size_t>(c)]));
            acc[static_cast<std::size_t>(c)] = 0;
        }
    }
    return worst;
}

void export_operator_pair(const WeightedComplex& cx, const OperatorPair& p, const std::string& prefix) {
    auto write_index = [&](int deg, const std::string& path) {
        std::ofstream os(path);
        if (!os) throw ComplexError("cannot open for writing: " + path);
        for (std::size_t i = 0; i < cx.size(deg); ++i) {
            os << i;
            for (vertex_id v : cx.simplex(deg, i)) os << ' ' << v;
            os << '\n';
        }
    };
    int k = p.degree;
    {
        std::ofstream os(prefix + ".D" + std::to_string(k) + ".coo");
        if (!os) throw ComplexError("cannot open for writing: " + prefix);
        for (std::size_t r = 0; r < p.rows; ++r)
            for (std::int64_t e = p.d_rowptr[r]; e < p.d_rowptr[r + 1]; ++e)
                os << r << ' ' << p.d_col[static_cast<std::size_t>(e)] << ' '
                   << static_cast<int>(p.d_sign[static_cast<std::size_t>(e)]) << '\n';
    }
    {
        std::ofstream os(prefix + ".B" + std::to_string(k) + ".coo");
        os.precision(17);
        for (std::size_t r = 0; r < p.cols; ++r)
            for (std::int64_t e = p.b_rowptr[r]; e < p.b_rowptr[r + 1]; ++e)
                os << r << ' ' << p.b_col[static_cast<std::size_t>(e)] << ' '
                   << p.b_val[static_cast<std::size_t>(e)] << '\n';
    }
    write_index(k, prefix + ".index" + std::to_string(k) + ".txt");
    write_index(k + 1, prefix + ".index" + std::to_string(k + 1) + ".txt");
}

} // namespace scx
