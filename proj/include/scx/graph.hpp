#pragma once

#include "scx/generators.hpp"
#include "scx/links.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace scx {

/// One level of a nested graph exhaustion: weighted graph with a root and an
/// absorbing/grounded boundary set.  Empty `weight` or `vmass` mean all-ones.
struct LevelGraph {
    std::vector<vertex_id> ids;
    std::vector<std::int64_t> rowptr;
    std::vector<std::int32_t> col;
    std::vector<double> weight;
    std::vector<double> vmass;
    std::size_t root = 0;
    std::vector<std::uint8_t> boundary;

    std::size_t n() const { return rowptr.empty() ? 0 : rowptr.size() - 1; }
    double w(std::int64_t e) const { return weight.empty() ? 1.0 : weight[static_cast<std::size_t>(e)]; }
    double m(std::size_t v) const { return vmass.empty() ? 1.0 : vmass[v]; }

    double weighted_degree(std::size_t v) const {
        double s = 0.0;
        for (std::int64_t e = rowptr[v]; e < rowptr[v + 1]; ++e) s += w(e);
        return s;
    }
};

/// Dirichlet energy (1/2) sum_xy b(x,y)|u(x)-u(y)|^2 on a level graph.
double graph_energy(const LevelGraph& g, std::span<const double> u);

/// Connected components over edges: component id per vertex.
std::vector<int> graph_components(const LevelGraph& g);

/// Families of nested finite graphs with designated roots and boundaries.
/// Pure graph families: z_line (B_n = [-n,n]), z_lattice(d) (sup-norm ball,
/// shell boundary), tree(branching) (depth n, leaf boundary), summable_chain(q)
/// (half-line with conductances q^j).  link_of(generator) is the link of the
/// generator's base point with the generator's own level semantics; boundary =
/// non-interior link vertices.  from_complex freezes one static link: every
/// level is the whole link.
class GraphExhaustion {
public:
    static GraphExhaustion z_line();
    static GraphExhaustion z_lattice(int d);
    static GraphExhaustion tree(int branching);
    static GraphExhaustion summable_chain(double ratio);
    static GraphExhaustion link_of(const ComplexGenerator& gen);
    static GraphExhaustion from_complex(const WeightedComplex& cx, const Simplex& rho);

    /// Parse "z_line", "z_lattice(3)", "tree(2)", "summable_chain(0.25)".
    static GraphExhaustion parse(const std::string& text);

    std::string name() const { return name_; }

    /// Branching factor when this is a tree exhaustion (graph tree or the
    /// cone_over_tree link), 0 otherwise.  Tree Dirichlet and monopole solves
    /// are radial, so deep levels collapse to an exact series network.
    int tree_branching() const;
    LevelGraph level(int n) const;
    int max_level() const;
    bool is_static() const { return kind_ == Kind::static_link; }

private:
    enum class Kind { z_line, z_lattice, tree, chain, family_link, static_link };

    GraphExhaustion() = default;

    Kind kind_ = Kind::z_line;
    int d_ = 1;
    int branching_ = 2;
    double ratio_ = 0.25;
    std::string name_;
    std::shared_ptr<ComplexGenerator> gen_;
    std::shared_ptr<LinkGraph> static_link_;
};

} // namespace scx
