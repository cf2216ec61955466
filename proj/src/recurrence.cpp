#include "scx/recurrence.hpp"

#include "scx/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace scx {

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Recurrent: return "Recurrent";
    case Verdict::Transient: return "Transient";
    case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

Verdict ClassificationReport::overall() const {
    if (components.empty()) return Verdict::Undetermined;
    bool all_recurrent = true;
    for (const auto& c : components) {
        if (c.verdict == Verdict::Transient) return Verdict::Transient;
        if (c.verdict != Verdict::Recurrent) all_recurrent = false;
    }
    return all_recurrent ? Verdict::Recurrent : Verdict::Undetermined;
}

namespace {

ResistancePoint radial_tree_point(int branching, int level) {
    ResistancePoint p;
    p.level = level;
    double nodes = (std::pow(branching, level + 1) - 1) / (branching - 1);
    p.vertices = nodes < 1e18 ? static_cast<std::size_t>(nodes + 0.5) : 0;
    SeriesNetwork net = tree_series_network(branching, level);
    p.resistance = net.resistance();
    p.capacity = net.capacity();
    p.stats.converged = true;
    return p;
}

ResistancePoint solve_point(const GraphExhaustion& exh, int level, const ClassifyPolicy& pol) {
    int beta = exh.tree_branching();
    if (beta > 0 && level > radial_cutover) return radial_tree_point(beta, level);
    LevelGraph g = exh.level(level);
    PotentialResult r = dirichlet_solve(g, pol.solver_rtol, pol.max_iterations);
    ResistancePoint p;
    p.level = level;
    p.vertices = g.n();
    p.resistance = r.resistance;
    p.capacity = r.capacity;
    p.closed = r.closed;
    p.stats = r.stats;
    return p;
}

} // namespace

std::vector<ResistancePoint> resistance_profile(const GraphExhaustion& exh,
                                                std::span<const int> levels,
                                                const ClassifyPolicy& pol) {
    std::vector<ResistancePoint> pts;
    pts.reserve(levels.size());
    for (int n : levels) pts.push_back(solve_point(exh, n, pol));
    return pts;
}

Verdict classify_profile(std::span<const ResistancePoint> pts, const ClassifyPolicy& pol,
                         std::string* reason) {
    auto say = [&](const std::string& s) {
        if (reason) *reason = s;
    };
    if (pts.empty()) {
        say("no data");
        return Verdict::Undetermined;
    }
    std::size_t first_open = 0;
    while (first_open < pts.size() && pts[first_open].closed) ++first_open;
    if (first_open == pts.size()) {
        say("closed finite component: capacity 0");
        return Verdict::Recurrent;
    }
    std::span<const ResistancePoint> open = pts.subspan(first_open);
    for (const auto& p : open)
        if (!p.stats.converged) {
            say("solver did not converge at level " + std::to_string(p.level));
            return Verdict::Undetermined;
        }

    bool monotone = true;
    for (std::size_t i = 1; i < open.size(); ++i)
        if (open[i].resistance < open[i - 1].resistance * (1.0 - pol.monotonicity_slack))
            monotone = false;
    double cap_first = open.front().capacity;
    double cap_last = open.back().capacity;

    if (monotone && open.size() > static_cast<std::size_t>(pol.stabilization_window)) {
        bool stable = true;
        for (std::size_t i = open.size() - static_cast<std::size_t>(pol.stabilization_window);
             i < open.size(); ++i) {
            double rel = (open[i].resistance - open[i - 1].resistance) / open[i].resistance;
            if (!(rel < pol.stabilization_eps)) stable = false;
        }
        if (stable && cap_last >= pol.capacity_threshold) {
            say("resistance stabilized: relative increments < " +
                std::to_string(pol.stabilization_eps) + " over " +
                std::to_string(pol.stabilization_window) + " levels, terminal capacity " +
                std::to_string(cap_last));
            return Verdict::Transient;
        }
    }

    if (cap_last < pol.capacity_threshold) {
        bool decaying = true;
        for (std::size_t i = 1; i < open.size(); ++i)
            if (open[i].capacity > open[i - 1].capacity * (1.0 + pol.monotonicity_slack))
                decaying = false;
        if (decaying && cap_last <= 0.5 * cap_first) {
            say("capacity decayed below " + std::to_string(pol.capacity_threshold) +
                " (terminal " + std::to_string(cap_last) + ")");
            return Verdict::Recurrent;
        }
    }

    say(monotone ? "profile did not meet either criterion at these levels"
                 : "resistance profile not monotone (solver trouble?)");
    return Verdict::Undetermined;
}

ClassificationReport classify_exhaustion(const GraphExhaustion& exh, std::span<const int> levels,
                                         const ClassifyPolicy& pol) {
    ClassificationReport rep;
    rep.exhaustion = exh.name();
    rep.levels.assign(levels.begin(), levels.end());
    if (exh.is_static()) {
        LevelGraph g = exh.level(1);
        std::vector<int> comp = graph_components(g);
        int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
        std::vector<std::size_t> size(static_cast<std::size_t>(ncomp), 0);
        std::vector<bool> open(static_cast<std::size_t>(ncomp), false);
        for (std::size_t v = 0; v < g.n(); ++v) {
            ++size[static_cast<std::size_t>(comp[v])];
            if (g.boundary[v]) open[static_cast<std::size_t>(comp[v])] = true;
        }
        for (int c = 0; c < ncomp; ++c) {
            ComponentClassification cc;
            cc.component = c;
            cc.vertices = size[static_cast<std::size_t>(c)];
            if (open[static_cast<std::size_t>(c)]) {
                cc.verdict = Verdict::Undetermined;
                cc.reason = "component touches the truncation boundary and cannot grow";
            } else {
                cc.verdict = Verdict::Recurrent;
                cc.reason = "closed finite component: capacity 0";
            }
            rep.components.push_back(std::move(cc));
        }
        return rep;
    }

    ComponentClassification cc;
    cc.component = 0;
    cc.profile = resistance_profile(exh, levels, pol);
    if (!cc.profile.empty()) cc.vertices = cc.profile.back().vertices;
    cc.verdict = classify_profile(cc.profile, pol, &cc.reason);
    rep.components.push_back(std::move(cc));
    return rep;
}

ClassificationReport classify_link_components(const LinkGraph& lk, const ClassifyPolicy&) {
    ClassificationReport rep;
    rep.exhaustion = "static link";
    std::vector<int> comp(lk.n(), -1);
    int ncomp = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < lk.n(); ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::int64_t e = lk.rowptr[v]; e < lk.rowptr[v + 1]; ++e) {
                auto u = static_cast<std::size_t>(lk.col[static_cast<std::size_t>(e)]);
                if (comp[u] < 0) {
                    comp[u] = ncomp;
                    stack.push_back(u);
                }
            }
        }
        ++ncomp;
    }
    std::vector<std::size_t> size(static_cast<std::size_t>(ncomp), 0);
    std::vector<bool> open(static_cast<std::size_t>(ncomp), false);
    for (std::size_t v = 0; v < lk.n(); ++v) {
        ++size[static_cast<std::size_t>(comp[v])];
        if (!lk.interior[v]) open[static_cast<std::size_t>(comp[v])] = true;
    }
    for (int c = 0; c < ncomp; ++c) {
        ComponentClassification cc;
        cc.component = c;
        cc.vertices = size[static_cast<std::size_t>(c)];
        if (open[static_cast<std::size_t>(c)]) {
            cc.verdict = Verdict::Undetermined;
            cc.reason = "component reaches non-interior vertices; classify via a growing exhaustion";
        } else {
            cc.verdict = Verdict::Recurrent;
            cc.reason = "closed finite component: capacity 0";
        }
        rep.components.push_back(std::move(cc));
    }
    return rep;
}

std::vector<int> default_levels(const GraphExhaustion& exh, int count) {
    int hi = std::min(count, exh.max_level());
    std::vector<int> levels;
    for (int n = 2; n <= hi; ++n) levels.push_back(n);
    if (levels.empty()) levels.push_back(1);
    return levels;
}

double cutoff_energy(const GraphExhaustion& exh, int level, const ClassifyPolicy& pol) {
    return solve_point(exh, level, pol).capacity;
}

WalkResult mc_return_probability(int d, const WalkConfig& cfg) {
    if (d < 1 || d > 3) throw ComplexError("mc_return_probability: d must be in [1,3]");
    WalkResult out;
    out.walks = cfg.walks;
    out.seed = cfg.seed;

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nthreads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                           : std::max(1u, hw);
    nthreads = std::min<std::size_t>(nthreads, 64);

    struct Tally {
        std::uint64_t returned = 0, escaped = 0, censored = 0;
    };
    std::vector<Tally> tallies(nthreads);

    auto run = [&](std::size_t t) {
        std::uint64_t lo = cfg.walks * t / nthreads;
        std::uint64_t hi2 = cfg.walks * (t + 1) / nthreads;
        Tally& tl = tallies[t];
        for (std::uint64_t w = lo; w < hi2; ++w) {
            SplitMix64 rng{cfg.seed, w};
            int x[3] = {0, 0, 0};
            bool done = false;
            for (int step = 0; step < cfg.max_steps; ++step) {
                std::uint64_t dir = rng.next_below(static_cast<std::uint64_t>(2 * d));
                int axis = static_cast<int>(dir >> 1);
                x[axis] += (dir & 1) ? 1 : -1;
                int ninf = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
                if (ninf == 0) {
                    ++tl.returned;
                    done = true;
                    break;
                }
                if (ninf >= cfg.escape_radius) {
                    ++tl.escaped;
                    done = true;
                    break;
                }
            }
            if (!done) ++tl.censored;
        }
    };

    if (nthreads == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(run, t);
        for (auto& th : pool) th.join();
    }
    for (const Tally& tl : tallies) {
        out.returned += tl.returned;
        out.escaped += tl.escaped;
        out.censored += tl.censored;
    }
    out.return_probability = static_cast<double>(out.returned) / static_cast<double>(cfg.walks);
    return out;
}

} // namespace scx
