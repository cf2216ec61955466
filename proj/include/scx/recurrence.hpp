#pragma once

#include "scx/solver.hpp"

#include <span>
#include <string>
#include <vector>

namespace scx {

enum class Verdict { Recurrent, Transient, Undetermined };
std::string to_string(Verdict v);

struct ResistancePoint {
    int level = 0;
    std::size_t vertices = 0;
    double resistance = 0.0;
    double capacity = 0.0;
    bool closed = false;     // no boundary at this level
    CgStats stats;
};

/// Thresholds for turning a finite resistance profile into a verdict.
/// Transient: relative resistance increments below stabilization_eps for
/// stabilization_window consecutive steps and terminal capacity at least
/// capacity_threshold.  Recurrent: terminal capacity below the threshold,
/// nonincreasing, and at most half its initial value over the run.  A closed
/// finite component is recurrent outright.  Anything else stays Undetermined.
struct ClassifyPolicy {
    double stabilization_eps = 1e-3;
    int stabilization_window = 5;
    double capacity_threshold = 1e-2;
    double monotonicity_slack = 1e-9;
    double solver_rtol = 1e-12;
    int max_iterations = 0;
};

struct ComponentClassification {
    int component = 0;
    std::size_t vertices = 0;
    Verdict verdict = Verdict::Undetermined;
    std::string reason;
    std::vector<ResistancePoint> profile;
};

struct ClassificationReport {
    std::string exhaustion;
    std::vector<int> levels;
    std::vector<ComponentClassification> components;
    Verdict overall() const;
};

/// Resistance/capacity profile of the root component across levels.  Tree
/// exhaustions switch to the exact shell reduction above radial_cutover
/// (cross-validated against CG below it); everything else runs CG.
std::vector<ResistancePoint> resistance_profile(const GraphExhaustion& exh,
                                                std::span<const int> levels,
                                                const ClassifyPolicy& pol = {});

Verdict classify_profile(std::span<const ResistancePoint> pts, const ClassifyPolicy& pol,
                         std::string* reason = nullptr);

/// Growing exhaustions classify the root component from its profile; a static
/// link graph classifies every connected component (closed ones are recurrent,
/// components cut by the truncation boundary stay Undetermined).
ClassificationReport classify_exhaustion(const GraphExhaustion& exh, std::span<const int> levels,
                                         const ClassifyPolicy& pol = {});
ClassificationReport classify_link_components(const LinkGraph& lk, const ClassifyPolicy& pol = {});

/// Default level schedule for an exhaustion (linear, clipped to max_level).
std::vector<int> default_levels(const GraphExhaustion& exh, int count);

/// Energy of the harmonic unit cutoff at this level = capacity of the root.
double cutoff_energy(const GraphExhaustion& exh, int level, const ClassifyPolicy& pol = {});

/// Tree depth beyond which tree-family solves use the exact shell reduction.
inline constexpr int radial_cutover = 14;

struct WalkConfig {
    std::uint64_t seed = 1;
    std::uint64_t walks = 1000000;
    int escape_radius = 60;
    int max_steps = 30000;
    int threads = 0;          // 0 = hardware concurrency
};

struct WalkResult {
    double return_probability = 0.0;
    std::uint64_t returned = 0;
    std::uint64_t escaped = 0;
    std::uint64_t censored = 0;
    std::uint64_t walks = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo return probability of the simple random walk on Z^d started at
/// the origin.  Walks that leave the sup-norm ball of escape_radius or exceed
/// max_steps count as non-returning.  Per-walk counter-based streams make the
/// result identical for every thread count.
WalkResult mc_return_probability(int d, const WalkConfig& cfg);

} // namespace scx
