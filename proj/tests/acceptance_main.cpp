// Acceptance gate: one line per criterion, PASS/FAIL, nonzero exit on any FAIL.
#include "scx/defect.hpp"
#include "scx/generators.hpp"
#include "scx/hodge.hpp"
#include "scx/io.hpp"
#include "scx/operators.hpp"
#include "scx/recurrence.hpp"
#include "scx/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace scx;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& text) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, text.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int n, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, text] = body();
        report(n, ok, text);
    } catch (const std::exception& e) {
        report(n, false, std::string("exception: ") + e.what());
    }
}

double wild_mass(const Simplex& s, std::uint64_t salt) {
    SimplexHash h;
    SplitMix64 rng{h(s) ^ salt};
    return std::pow(10.0, 6.0 * rng.next_double() - 3.0);
}

WeightedComplex wild_simplex(int k, std::uint64_t salt) {
    ComplexBuilder b;
    Simplex top;
    for (vertex_id v = 0; v <= k; ++v) top = top.with_vertex(v);
    b.insert_closed(top, [&](const Simplex& s) { return wild_mass(s, salt); });
    return b.finalize();
}

WeightedComplex reweight(const WeightedComplex& base, std::uint64_t salt) {
    ComplexBuilder b;
    for (int k = 0; k <= base.max_degree(); ++k)
        for (std::size_t i = 0; i < base.size(k); ++i)
            b.add(base.simplex(k, i), wild_mass(base.simplex(k, i), salt));
    return b.finalize();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;

    // 1. D_{k+1} D_k = 0 in integer arithmetic across the generated families
    run(1, [] {
        auto t0 = clock::now();
        std::vector<WeightedComplex> pool;
        pool.push_back(ComplexGenerator::full_simplex(4).truncation(0));
        pool.push_back(ComplexGenerator::full_simplex(4).with_empty().truncation(0));
        pool.push_back(ComplexGenerator::octahedron().truncation(2));
        pool.push_back(ComplexGenerator::torus_grid(40, 40).truncation(2));
        pool.push_back(ComplexGenerator::cone_over_path().truncation(500));
        pool.push_back(ComplexGenerator::cone_over_tree(2).truncation(12));
        pool.push_back(ComplexGenerator::cone_over_tree(3).truncation(8));
        pool.push_back(ComplexGenerator::cone_over_lattice(2).truncation(40));
        pool.push_back(ComplexGenerator::cone_over_lattice(3).truncation(7));
        pool.push_back(ComplexGenerator::skeleton_lattice(2).with_empty().truncation(50));
        pool.push_back(ComplexGenerator::skeleton_lattice(3).truncation(10));
        pool.push_back(ComplexGenerator::star_link().truncation(200));   // 4^-j weights underflow past ~530
        std::int64_t worst = 0;
        std::size_t biggest = 0, pairs = 0;
        for (const auto& cx : pool) {
            if (cx.total_size() > 50000) return std::make_pair(false, std::string("pool complex exceeds 5e4 simplices"));
            biggest = std::max(biggest, cx.total_size());
            for (int k = cx.min_degree(); k + 2 <= cx.max_degree(); ++k) {
                OperatorPair dk = build_operator_pair(cx, k);
                OperatorPair dk1 = build_operator_pair(cx, k + 1);
                worst = std::max(worst, composition_max_entry(dk, dk1));
                ++pairs;
            }
        }
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "integer D D = 0 on %zu complexes (largest %zu simplices, %zu compositions), max entry %lld, %.1f s (< 10 s)",
                      pool.size(), biggest, pairs, static_cast<long long>(worst), secs);
        return std::make_pair(worst == 0 && secs < 10.0, std::string(buf));
    });

    // 2. ||B_k B_{k+1} f|| <= 1e-10 ||f|| on 100 random f per complex
    run(2, [] {
        std::vector<WeightedComplex> pool;
        pool.push_back(ComplexGenerator::octahedron().truncation(2));
        pool.push_back(ComplexGenerator::torus_grid(7, 7).truncation(2));
        pool.push_back(ComplexGenerator::full_simplex(4).with_empty().truncation(0));
        pool.push_back(ComplexGenerator::cone_over_tree(2).truncation(8));
        pool.push_back(ComplexGenerator::cone_over_path().truncation(32));
        pool.push_back(ComplexGenerator::star_link().truncation(16));
        pool.push_back(ComplexGenerator::skeleton_lattice(2).with_empty().truncation(10));
        SplitMix64 rng{1001};
        double worst = 0.0;
        for (const auto& cx : pool) {
            std::vector<int> degrees;
            for (int d = cx.min_degree() + 2; d <= cx.max_degree(); ++d) degrees.push_back(d);
            if (degrees.empty()) return std::make_pair(false, std::string("complex with no composable degrees in pool"));
            for (int t = 0; t < 100; ++t) {
                int d = degrees[static_cast<std::size_t>(t) % degrees.size()];
                Cochain f = random_cochain(cx, d, rng);
                Cochain bbf = boundary(cx, boundary(cx, f).chain).chain;
                worst = std::max(worst, norm(cx, bbf) / norm(cx, f));
            }
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "finite del del = 0: max ||BBf||/||f|| = %.3e (<= 1e-10), 100 f x %zu complexes", worst, pool.size());
        return std::make_pair(worst <= 1e-10, std::string(buf));
    });

    // 3. Stokes adjointness over weights spanning six orders of magnitude
    run(3, [] {
        std::vector<WeightedComplex> pool;
        pool.push_back(wild_simplex(2, 0xa1));
        pool.push_back(wild_simplex(3, 0xb2));
        pool.push_back(wild_simplex(4, 0xc3));
        pool.push_back(reweight(ComplexGenerator::torus_grid(5, 4).truncation(2), 0xd4));
        pool.push_back(reweight(ComplexGenerator::octahedron().truncation(2), 0xe5));
        SplitMix64 rng{2002};
        double worst = 0.0;
        int pairs = 0;
        while (pairs < 500) {
            for (const auto& cx : pool) {
                for (int k = 0; k < cx.max_degree() && pairs < 500; ++k, ++pairs) {
                    Cochain f = random_cochain(cx, k, rng);
                    Cochain g = random_cochain(cx, k + 1, rng);
                    cval lhs = inner_product(cx, coboundary(cx, f), g);
                    cval rhs = inner_product(cx, f, boundary(cx, g).chain);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
            }
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "adjointness |<df,g> - <f,del g>| max %.3e over %d pairs, unit norms (<= 1e-10)", worst, pairs);
        return std::make_pair(worst <= 1e-10, std::string(buf));
    });

    // 4. Localization lemma identities, including rho = empty
    run(4, [] {
        std::vector<std::pair<WeightedComplex, Simplex>> pool;
        pool.emplace_back(ComplexGenerator::octahedron().truncation(2), Simplex{0});
        pool.emplace_back(ComplexGenerator::octahedron().truncation(2), Simplex{2, 4});
        pool.emplace_back(ComplexGenerator::torus_grid(6, 4).truncation(2), Simplex{0});
        pool.emplace_back(ComplexGenerator::torus_grid(6, 4).truncation(2), Simplex{0, 1});
        pool.emplace_back(ComplexGenerator::full_simplex(4).truncation(0), Simplex{0, 1, 2});
        pool.emplace_back(ComplexGenerator::cone_over_path().truncation(6), Simplex{0});
        pool.emplace_back(ComplexGenerator::cone_over_tree(2).truncation(6), Simplex{0});
        pool.emplace_back(ComplexGenerator::star_link().truncation(6), Simplex{0});
        pool.emplace_back(ComplexGenerator::full_simplex(3).with_empty().truncation(0), Simplex{});
        pool.emplace_back(ComplexGenerator::skeleton_lattice(2).with_empty().truncation(5), Simplex{});
        SplitMix64 rng{3003};
        double worst = 0.0;
        int triples = 0;
        for (const auto& [cx, rho] : pool) {
            LocalizationReport rep = verify_localization(cx, rho, rng, 10);
            triples += rep.trials;
            worst = std::max({worst, rep.flux, rep.adjoint, rep.isometry, rep.energy, rep.conjugation});
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "localization (a)-(d) max residual %.3e over %d triples incl. empty rho (<= 1e-10)", worst, triples);
        return std::make_pair(worst <= 1e-10 && triples >= 100, std::string(buf));
    });

    // 5. Recurrence ground truth: Z, binary tree, Z^3, Monte Carlo
    run(5, [] {
        auto t0 = clock::now();
        // Z: capacity exactly 2/n
        std::vector<int> zlev{2, 4, 8, 16, 32, 64, 128, 256};
        auto zpts = resistance_profile(GraphExhaustion::z_line(), zlev);
        double zerr = 0.0;
        for (std::size_t i = 0; i < zpts.size(); ++i)
            zerr = std::max(zerr, std::abs(zpts[i].capacity - 2.0 / zlev[i]));
        std::string zreason;
        Verdict zv = classify_profile(zpts, ClassifyPolicy{}, &zreason);
        if (zv != Verdict::Recurrent || zerr > 1e-10)
            return std::make_pair(false, "Z exhaustion: verdict " + to_string(zv) + ", capacity error " + std::to_string(zerr));

        // binary tree at depth 30 against an independent series-parallel oracle
        double oracle = 0.0;
        for (int k = 0; k < 30; ++k) oracle += 1.0 / ((1 << (k + 1)));   // 2^(k+1) parallel unit edges in series
        auto tpts = resistance_profile(GraphExhaustion::tree(2), std::vector<int>{6, 10, 14, 18, 22, 26, 30});
        double terr = std::abs(tpts.back().resistance - oracle);
        std::string treason;
        Verdict tv = classify_profile(tpts, ClassifyPolicy{}, &treason);
        if (tv != Verdict::Transient || terr > 1e-6)
            return std::make_pair(false, "tree: verdict " + to_string(tv) + ", |R_30 - oracle| = " + std::to_string(terr));

        // Z^3 ball exhaustion
        auto z3 = classify_exhaustion(GraphExhaustion::z_lattice(3), std::vector<int>{26, 28, 30, 32, 34, 36, 38});
        if (z3.overall() != Verdict::Transient)
            return std::make_pair(false, std::string("Z^3: verdict ") + to_string(z3.overall()));

        // Monte Carlo return probability, seed-fixed
        WalkConfig cfg;
        cfg.seed = 1;
        cfg.walks = 1000000;
        WalkResult w = mc_return_probability(3, cfg);
        double mcerr = std::abs(w.return_probability - 0.3405);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        char buf[240];
        std::snprintf(buf, sizeof buf,
                      "Z recurrent (cap err %.1e), tree transient (R_30 err %.1e), Z^3 transient, MC p = %.6f (|p - 0.3405| = %.4f <= 0.01), %.0f s (<= 300 s)",
                      zerr, terr, w.return_probability, mcerr, secs);
        return std::make_pair(mcerr <= 0.01 && secs <= 300.0, std::string(buf));
    });

    // 6. Transient witness defect converges to m(v0 rho)/m(rho)
    run(6, [] {
        ComplexGenerator gen = ComplexGenerator::cone_over_tree(2);
        std::vector<double> err;
        double predicted = 0.0;
        for (int n = 2; n <= 20; ++n) {
            WitnessResult w = witness_link_side(gen, n);
            predicted = w.predicted;
            err.push_back(std::abs(w.defect - w.predicted));
        }
        bool final_ok = err.back() <= 0.01 * predicted;
        bool monotone = true;
        for (std::size_t i = 4; i + 1 < err.size(); ++i)   // burn-in: levels up to 6
            if (err[i + 1] > err[i] + 1e-9) monotone = false;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "witness defect at level 20 within %.2e of predicted %.3f (<= 1%%), monotone after burn-in: %s",
                      err.back(), predicted, monotone ? "yes" : "no");
        return std::make_pair(final_ok && monotone, std::string(buf));
    });

    // 7. Recurrent bound: harmonic cutoff defect obeys ||omega|| sqrt(2/n)
    run(7, [] {
        ComplexGenerator gen = ComplexGenerator::cone_over_path();
        SplitMix64 rng{7007};
        double worst_excess = -1e300, capdev = 0.0;
        for (int n = 2; n <= 50; ++n) {
            WeightedComplex cx = gen.truncation(n);
            for (int t = 0; t < 50; ++t) {
                Cochain w = random_cochain(cx, 2, rng);
                CutoffDefect cd = cutoff_defect(cx, w, Simplex{0}, 1);
                capdev = std::max(capdev, std::abs(cd.capacity - 2.0 / n));
                worst_excess = std::max(worst_excess,
                                        cd.magnitude - cd.omega_norm * std::sqrt(2.0 / n));
            }
        }
        // cutoff_energy(n) * n -> 2
        GraphExhaustion link = GraphExhaustion::link_of(gen);
        double limdev = 0.0;
        for (int n : {256, 1024, 4096})
            limdev = std::max(limdev, std::abs(cutoff_energy(link, n) * n - 2.0));
        char buf[220];
        std::snprintf(buf, sizeof buf,
                      "cutoff defect <= ||omega|| sqrt(2/n) (max excess %.2e) over 49 levels x 50 forms, cap dev %.1e, |n cutoff_energy - 2| max %.2e (<= 1e-8)",
                      worst_excess, capdev, limdev);
        return std::make_pair(worst_excess <= 1e-12 && limdev <= 1e-8 && capdev <= 1e-10, std::string(buf));
    });

    // 8. Local balancedness: unit families 1, empty rho 0
    run(8, [] {
        std::vector<std::pair<WeightedComplex, Simplex>> pool;
        // rho needs link edges (a dim rho + 2 coface) for the sup to be non-vacuous
        pool.emplace_back(ComplexGenerator::octahedron().truncation(2), Simplex{0});
        pool.emplace_back(ComplexGenerator::torus_grid(6, 5).truncation(2), Simplex{0});
        pool.emplace_back(ComplexGenerator::full_simplex(4).truncation(0), Simplex{0, 1});
        pool.emplace_back(ComplexGenerator::full_simplex(4).truncation(0), Simplex{0, 1, 2});
        pool.emplace_back(ComplexGenerator::cone_over_path().truncation(8), Simplex{0});
        for (const auto& [cx, rho] : pool) {
            BalancednessReport r = local_balancedness(cx, rho);
            if (r.sup_ratio != 1.0)
                return std::make_pair(false, "sup ratio " + std::to_string(r.sup_ratio) + " at " + rho.str());
        }
        BalancednessReport e = local_balancedness(ComplexGenerator::full_simplex(3).with_empty().truncation(0), Simplex{});
        if (e.sup_ratio != 0.0 || e.ratios != 0)
            return std::make_pair(false, std::string("empty rho reported nonzero"));
        return std::make_pair(true, std::string("unit-weight families report sup ratio exactly 1, empty rho exactly 0"));
    });

    // 9. (T') norm sequence: bounded for the tree, diverging for the path
    run(9, [] {
        std::vector<int> idx{15, 16, 17, 18, 19, 20};
        auto tree = tprime_norm_sequence(ComplexGenerator::cone_over_tree(2), idx);
        auto path = tprime_norm_sequence(ComplexGenerator::cone_over_path(), idx);
        double tree_growth = tree.back().norm / tree.front().norm;
        double path_growth = path.back().norm / path.front().norm;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "tprime norms: tree growth %.7f (< 1.01) vs path growth %.4f (> 2) over indices 15..20",
                      tree_growth, path_growth);
        return std::make_pair(tree_growth < 1.01 && path_growth > 2.0, std::string(buf));
    });

    // 10. Hodge suite
    run(10, [] {
        WeightedComplex oct = ComplexGenerator::octahedron().truncation(2);
        WeightedComplex torus = ComplexGenerator::torus_grid(7, 7).truncation(2);
        if (betti_table(oct) != std::vector<std::int64_t>{1, 0, 1})
            return std::make_pair(false, std::string("octahedron Betti wrong"));
        if (betti_table(torus) != std::vector<std::int64_t>{1, 2, 1})
            return std::make_pair(false, std::string("torus Betti wrong"));

        // exact ranks against numeric kernel dimensions
        for (const WeightedComplex* cx : {&oct, &torus})
            for (int k = 0; k <= cx->max_degree(); ++k) {
                Spectrum s = spectrum(*cx, LapTag::hodge, k);
                double scale = std::max(1.0, s.eigenvalues.back());
                std::int64_t kerdim = 0;
                for (double l : s.eigenvalues)
                    if (std::abs(l) <= 1e-8 * scale) ++kerdim;
                if (kerdim != betti(*cx, k))
                    return std::make_pair(false, "numeric kernel dim != Betti at degree " + std::to_string(k));
            }

        // Delta^H = del delta + delta del = (delta + del)^2 on 100 random f
        SplitMix64 rng{4004};
        double lap_dev = 0.0;
        std::vector<const WeightedComplex*> pool{&oct, &torus};
        WeightedComplex fs = ComplexGenerator::full_simplex(4).truncation(0);
        pool.push_back(&fs);
        for (int t = 0; t < 100; ++t) {
            const WeightedComplex& cx = *pool[static_cast<std::size_t>(t) % pool.size()];
            int k = 1 + (t % std::max(1, cx.max_degree() - 1));
            Cochain f = random_cochain(cx, k, rng);
            Cochain viasum = laplacian_apply(cx, LapTag::up, k, f);
            Cochain dn = laplacian_apply(cx, LapTag::down, k, f);
            for (const auto& [s, v] : dn.entries()) viasum.add(s, v);
            Cochain hodge = laplacian_apply(cx, LapTag::hodge, k, f);
            // graded square of (delta + del): collect the degree-k component
            Cochain df = coboundary(cx, f);
            Cochain bf = boundary(cx, f).chain;
            Cochain sq = boundary(cx, df).chain;
            Cochain cb = coboundary(cx, bf);
            for (const auto& [s, v] : cb.entries()) sq.add(s, v);
            double local = 0.0;
            for (const auto& [s, v] : hodge.entries()) {
                local = std::max(local, std::abs(v - viasum(s)));
                local = std::max(local, std::abs(v - sq(s)));
            }
            // stray graded components must cancel identically
            Cochain up2 = coboundary(cx, df);
            double stray = 0.0;
            for (const auto& [s, v] : up2.entries()) stray = std::max(stray, std::abs(v));
            if (k >= cx.min_degree() + 2) {
                Cochain dn2 = boundary(cx, bf).chain;
                for (const auto& [s, v] : dn2.entries()) stray = std::max(stray, std::abs(v));
            }
            lap_dev = std::max(lap_dev, std::max(local, stray));
        }
        if (lap_dev > 1e-12)
            return std::make_pair(false, "Laplacian identity deviation " + std::to_string(lap_dev));

        // delta 1_rho harmonic for the up-Laplacian, all rho with cofaces
        double up_resid = 0.0;
        for (const WeightedComplex* cx : {&oct, &torus})
            for (int k = 0; k < cx->max_degree(); ++k)
                for (std::size_t i = 0; i < cx->size(k); ++i) {
                    HarmonicFormReport r = harmonic_eigenform_check(*cx, cx->simplex(k, i));
                    if (r.has_coface) up_resid = std::max(up_resid, r.up_residual);
                }
        if (up_resid > 1e-10)
            return std::make_pair(false, "Delta+ delta 1_rho residual " + std::to_string(up_resid));

        // supersymmetry of nonzero spectra
        double susy = 0.0;
        for (const WeightedComplex* cx : {&oct, &torus})
            for (int k = 0; k < cx->max_degree(); ++k) {
                std::vector<double> up, down;
                for (double l : spectrum(*cx, LapTag::up, k).eigenvalues)
                    if (l > 1e-8) up.push_back(l);
                for (double l : spectrum(*cx, LapTag::down, k + 1).eigenvalues)
                    if (l > 1e-8) down.push_back(l);
                if (up.size() != down.size())
                    return std::make_pair(false, "nonzero spectrum sizes differ at degree " + std::to_string(k));
                for (std::size_t i = 0; i < up.size(); ++i)
                    susy = std::max(susy, std::abs(up[i] - down[i]));
            }
        if (susy > 1e-8)
            return std::make_pair(false, "supersymmetry deviation " + std::to_string(susy));

        // complete simplex on n vertices: nonzero Delta+_0 eigenvalues all n
        for (int n = 3; n <= 6; ++n) {
            WeightedComplex cx = ComplexGenerator::full_simplex(n - 1).truncation(0);
            Spectrum s = spectrum(cx, LapTag::up, 0);
            for (double l : s.eigenvalues)
                if (l > 1e-8 && std::abs(l - n) > 1e-10)
                    return std::make_pair(false, "K_" + std::to_string(n) + " eigenvalue " + std::to_string(l));
        }
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "Betti (1,0,1)/(1,2,1), ranks = kernels, Laplacian identities %.1e (<= 1e-12), eigenform resid %.1e, susy %.1e, K_n spectra exact",
                      lap_dev, up_resid, susy);
        return std::make_pair(true, std::string(buf));
    });

    // 11. Deterministic mode byte-identical reports
    run(11, [] {
        namespace fs = std::filesystem;
        auto invoke = [](const std::string& args, const fs::path& out) {
            std::string cmd = std::string(SCX_CLI_PATH) + " " + args + " -o " + out.string() + " >/dev/null 2>&1";
            return std::system(cmd.c_str()) == 0;
        };
        fs::path d1 = fs::temp_directory_path() / "scx_acc_d1.json";
        fs::path d2 = fs::temp_directory_path() / "scx_acc_d2.json";
        std::string defect_args = "defect --family 'cone_over_tree(2)' --rho apex --levels 6,8,10,12,14,16,18,20 --deterministic --seed 17";
        if (!invoke(defect_args, d1) || !invoke(defect_args, d2))
            return std::make_pair(false, std::string("defect run failed"));
        fs::path w1 = fs::temp_directory_path() / "scx_acc_w1.json";
        fs::path w2 = fs::temp_directory_path() / "scx_acc_w2.json";
        std::string walk_args = "walk --dim 3 --walks 100000 --seed 17 --deterministic";
        if (!invoke(walk_args, w1) || !invoke(walk_args, w2))
            return std::make_pair(false, std::string("walk run failed"));
        std::string a = slurp(d1), b = slurp(d2), c = slurp(w1), d = slurp(w2);
        bool ok = !a.empty() && a == b && !c.empty() && c == d;
        for (const auto& p : {d1, d2, w1, w2}) fs::remove(p);
        return std::make_pair(ok, std::string("two deterministic seed-17 runs byte-identical for defect and walk reports"));
    });

    if (failures == 0) std::printf("acceptance: all 11 criteria passed\n");
    else std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
