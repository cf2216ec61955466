#include "scx/simplex.hpp"

#include <sstream>

namespace scx {

std::string Simplex::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < size(); ++i) {
        if (i) os << ',';
        os << vertex(i);
    }
    os << ']';
    return os.str();
}

int alternating_sign(const Simplex& tau, const Simplex& sigma) {
    if (tau.size() + 1 != sigma.size()) throw ComplexError("alternating_sign: not a codimension-1 pair");
    int missing = -1;
    int j = 0;
    for (int i = 0; i < sigma.size(); ++i) {
        if (j < tau.size() && tau.vertex(j) == sigma.vertex(i)) {
            ++j;
        } else if (missing < 0) {
            missing = i;
        } else {
            throw ComplexError("alternating_sign: not a face");
        }
    }
    if (j != tau.size()) throw ComplexError("alternating_sign: not a face");
    return (missing % 2 == 0) ? 1 : -1;
}

int vertex_sign(const Simplex& rho, vertex_id v) {
    int i = 0;
    while (i < rho.size() && rho.vertex(i) < v) ++i;
    if (i < rho.size() && rho.vertex(i) == v) throw ComplexError("vertex_sign: vertex already present");
    return (i % 2 == 0) ? 1 : -1;
}

} // namespace scx
