#include "scx/complex.hpp"

#include <algorithm>
#include <cmath>

namespace scx {

void WeightedComplex::validate() const {
    for (int k = min_degree(); k <= max_degree(); ++k) {
        const DimSlice& sl = need(k);
        for (std::size_t i = 0; i < sl.simplices.size(); ++i) {
            const Simplex& s = sl.simplices[i];
            if (s.dim() != k) throw ComplexError("validate: dimension mismatch at " + s.str());
            double m = sl.mass[i];
            if (!(m > 0.0) || !std::isfinite(m))
                throw ComplexError("validate: non-positive mass at " + s.str());
            if (k >= 1 || (k == 0 && include_empty_)) {
                for (int f = 0; f < s.size(); ++f) {
                    if (!contains(s.face(f)))
                        throw ComplexError("validate: missing face " + s.face(f).str() + " of " + s.str());
                }
            }
        }
    }
    if (include_empty_ && size(-1) != 1) throw ComplexError("validate: empty simplex missing");
}

void ComplexBuilder::add(const Simplex& s, double mass, bool interior) {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw ComplexError("add: mass must be positive and finite at " + s.str());
    auto [it, fresh] = seen_.try_emplace(s, Entry{mass, interior});
    if (!fresh) {
        if (it->second.mass != mass)
            throw ComplexError("add: conflicting mass for " + s.str());
        it->second.interior = it->second.interior && interior;
        return;
    }
    if (s.empty()) include_empty_ = true;
}

void ComplexBuilder::insert_closed(const Simplex& s, const std::function<double(const Simplex&)>& mass_rule,
                                   bool interior) {
    if (!seen_.count(s)) add(s, mass_rule(s), interior);
    if (s.size() <= 1) return;   // faces of vertices (the empty simplex) are opt-in
    for (int i = 0; i < s.size(); ++i) {
        Simplex f = s.face(i);
        if (!seen_.count(f)) insert_closed(f, mass_rule, interior);
    }
}

void ComplexBuilder::set_empty_mass(double mass) {
    add(Simplex{}, mass);
    include_empty_ = true;
}

void ComplexBuilder::set_interior(const Simplex& s, bool interior) {
    auto it = seen_.find(s);
    if (it == seen_.end()) throw ComplexError("set_interior: simplex not present: " + s.str());
    it->second.interior = interior;
}

WeightedComplex ComplexBuilder::finalize() {
    int max_dim = -1;
    for (const auto& [s, e] : seen_) max_dim = std::max(max_dim, s.dim());
    if (max_dim < 0 && !include_empty_) throw ComplexError("finalize: empty complex");

    WeightedComplex cx;
    cx.include_empty_ = include_empty_;
    cx.slices_.resize(static_cast<std::size_t>(max_dim + 2));

    for (const auto& [s, e] : seen_)
        cx.slices_[static_cast<std::size_t>(s.dim() + 1)].simplices.push_back(s);
    for (auto& sl : cx.slices_) std::sort(sl.simplices.begin(), sl.simplices.end());

    for (auto& sl : cx.slices_) {
        sl.mass.resize(sl.simplices.size());
        sl.interior.resize(sl.simplices.size());
        sl.index.reserve(sl.simplices.size() * 2);
        for (std::size_t i = 0; i < sl.simplices.size(); ++i) {
            const Entry& e = seen_.at(sl.simplices[i]);
            sl.mass[i] = e.mass;
            sl.interior[i] = e.interior ? 1 : 0;
            sl.index.emplace(sl.simplices[i], i);
        }
    }

    // face closure, then coface adjacency
    cx.validate();
    for (int k = cx.min_degree(); k < max_dim; ++k) {
        auto& lower = cx.slices_[static_cast<std::size_t>(k + 1)];
        auto& upper = cx.slices_[static_cast<std::size_t>(k + 2)];
        std::vector<std::int64_t> counts(lower.simplices.size() + 1, 0);
        auto face_index = [&](const Simplex& up, int f) {
            return static_cast<std::int64_t>(lower.index.at(up.face(f)));
        };
        for (const Simplex& up : upper.simplices)
            for (int f = 0; f < up.size(); ++f) ++counts[static_cast<std::size_t>(face_index(up, f)) + 1];
        for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
        lower.coface_ptr = counts;
        lower.coface_idx.resize(static_cast<std::size_t>(counts.back()));
        std::vector<std::int64_t> fill(lower.simplices.size(), 0);
        for (std::size_t u = 0; u < upper.simplices.size(); ++u) {
            const Simplex& up = upper.simplices[u];
            for (int f = 0; f < up.size(); ++f) {
                std::int64_t i = face_index(up, f);
                lower.coface_idx[static_cast<std::size_t>(lower.coface_ptr[i] + fill[i])] =
                    static_cast<std::int64_t>(u);
                ++fill[static_cast<std::size_t>(i)];
            }
        }
    }
    // top slice: empty coface lists
    auto& top = cx.slices_.back();
    top.coface_ptr.assign(top.simplices.size() + 1, 0);
    return cx;
}

} // namespace scx
