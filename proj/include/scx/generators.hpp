#pragma once

#include "scx/complex.hpp"

#include <string>

namespace scx {

enum class Family {
    full_simplex,
    octahedron,
    torus_grid,
    cone_over_path,
    cone_over_tree,
    cone_over_lattice,
    skeleton_lattice,
    star_link,
};

/// Produces nested truncations of the named weighted complex families.
///
/// Level semantics are per family: finite families (full_simplex, octahedron,
/// torus_grid) ignore the level; cone_over_path and star_link use path radius;
/// cone_over_tree uses tree depth; cone_over_lattice and skeleton_lattice use
/// the sup-norm ball radius.  Truncations are nested with stable vertex ids,
/// and interior flags mark simplices whose coface list is final.
///
/// Cone families: apex vertex id 0, unit masses everywhere except the spokes
/// {apex, v}, whose mass decays with the depth of v (2^-depth for path,
/// lattice and star; (2 branching)^-depth for trees, so the total spoke mass
/// stays finite).  The triangle {apex, v, v'} carries the conductance of the
/// link edge (v, v'); all families here use unit conductances except
/// star_link, whose ray conductances 4^-j are totally summable.
///
/// skeleton_lattice(d) is the 1-skeleton of the Z^d ball with vertex masses
/// 2^-|x|_1 (finite total mass, so the empty simplex is included, mass 1) and
/// unit edges: the link of the empty simplex is the unit Z^d graph.
class ComplexGenerator {
public:
    static ComplexGenerator full_simplex(int k);
    static ComplexGenerator octahedron();
    static ComplexGenerator torus_grid(int p, int q);
    static ComplexGenerator cone_over_path();
    static ComplexGenerator cone_over_tree(int branching);
    static ComplexGenerator cone_over_lattice(int d);
    static ComplexGenerator skeleton_lattice(int d);
    static ComplexGenerator star_link();

    /// Parse "cone_over_tree(2)", "torus_grid(7,7)", "octahedron", ...
    static ComplexGenerator parse(const std::string& text);

    Family family() const { return family_; }
    std::string name() const;
    bool is_finite() const;

    /// Opt in to the empty simplex (mass 1, dimension -1), declaring the
    /// finite-total-mass modeling intent.  Makes degree-0 homology reduced.
    /// skeleton_lattice always includes it regardless of this flag.
    ComplexGenerator with_empty(bool on = true) const {
        ComplexGenerator g = *this;
        g.empty_ = on;
        return g;
    }
    bool includes_empty() const { return empty_ || family_ == Family::skeleton_lattice; }

    WeightedComplex truncation(int level) const;

    /// The simplex whose link the family's experiments study: the apex {0}
    /// for cones, the empty simplex for skeleton_lattice, {0} otherwise.
    Simplex base_point() const;

    /// Vertex of lk(base_point()) used as the root: path center, tree root,
    /// lattice origin, ray endpoint.
    vertex_id link_root() const;

    /// m(root spoke)/m(base): the predicted witness defect limit.
    double defect_limit() const;

    /// Norm-sequence driver schedule: level i of the tprime sweep maps to this
    /// truncation parameter.  Geometric radius round(2^{i/2}) for path-like
    /// families (log-scale sampling of slowly diverging quantities); depth i
    /// for trees, whose vertex count is already geometric in depth.
    int tprime_level(int i) const;

    int max_level() const;

    int param_a() const { return a_; }
    int param_b() const { return b_; }

private:
    ComplexGenerator(Family f, int a, int b) : family_(f), a_(a), b_(b) {}

    Family family_;
    int a_;
    int b_;
    bool empty_ = false;
};

/// Stable id codecs shared with the graph exhaustions.
namespace ids {
vertex_id path_vertex(std::int64_t i);        // 0 -> 1, +i -> 2i+1, -i -> 2i
std::int64_t path_coord(vertex_id id);
vertex_id lattice_vertex(const int* x, int d, vertex_id offset);   // offset 1 for cones, 0 for skeletons
void lattice_coord(vertex_id id, int d, vertex_id offset, int* x);
int tree_depth(std::int64_t node, int branching);                  // 1-based heap index
std::int64_t tree_parent(std::int64_t node, int branching);
} // namespace ids

} // namespace scx
