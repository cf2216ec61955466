#pragma once

#include "scx/simplex.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace scx {

/// Finite weighted simplicial complex: a face-closed set of simplices with a
/// strictly positive mass per simplex.  The empty simplex may be included
/// (degree -1); whether it is belongs to the complex is part of the data.
///
/// Each simplex carries an `interior` flag maintained by generators of
/// truncations: interior means the simplex's coface list is final, i.e. no
/// further coface would appear in any larger truncation of the same family.
/// Statically built complexes are entirely interior.
///
/// Immutable after construction; build through ComplexBuilder.
class WeightedComplex {
public:
    struct DimSlice {
        std::vector<Simplex> simplices;   // sorted
        std::vector<double> mass;
        std::vector<std::uint8_t> interior;
        std::vector<std::int64_t> coface_ptr;   // CSR into the (k+1)-slice
        std::vector<std::int64_t> coface_idx;
        std::unordered_map<Simplex, std::size_t, SimplexHash> index;
    };

    int min_degree() const { return include_empty_ ? -1 : 0; }
    int max_degree() const { return static_cast<int>(slices_.size()) - 2; }
    bool include_empty() const { return include_empty_; }

    std::size_t size(int degree) const {
        const DimSlice* s = slice(degree);
        return s ? s->simplices.size() : 0;
    }

    std::size_t total_size() const {
        std::size_t n = 0;
        for (const auto& s : slices_) n += s.simplices.size();
        return n;
    }

    const Simplex& simplex(int degree, std::size_t i) const { return need(degree).simplices[i]; }
    double mass(int degree, std::size_t i) const { return need(degree).mass[i]; }
    bool interior(int degree, std::size_t i) const { return need(degree).interior[i] != 0; }

    std::optional<std::size_t> index_of(const Simplex& s) const {
        const DimSlice* sl = slice(s.dim());
        if (!sl) return std::nullopt;
        auto it = sl->index.find(s);
        if (it == sl->index.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    double mass(const Simplex& s) const {
        auto i = index_of(s);
        if (!i) throw ComplexError("mass: simplex not in complex: " + s.str());
        return need(s.dim()).mass[*i];
    }

    bool interior(const Simplex& s) const {
        auto i = index_of(s);
        if (!i) throw ComplexError("interior: simplex not in complex: " + s.str());
        return need(s.dim()).interior[*i] != 0;
    }

    /// Indices (into the (degree+1)-slice) of the cofaces of simplex i.
    std::span<const std::int64_t> cofaces(int degree, std::size_t i) const {
        const DimSlice& sl = need(degree);
        if (sl.coface_ptr.empty()) return {};
        return {sl.coface_idx.data() + sl.coface_ptr[i],
                sl.coface_idx.data() + sl.coface_ptr[i + 1]};
    }

    /// Re-check the structural invariants (face closure, positive masses,
    /// strictly sorted vertex lists).  Throws ComplexError on violation.
    void validate() const;

    friend class ComplexBuilder;

private:
    const DimSlice* slice(int degree) const {
        int i = degree + 1;
        if (i < 0 || i >= static_cast<int>(slices_.size())) return nullptr;
        return &slices_[static_cast<std::size_t>(i)];
    }
    const DimSlice& need(int degree) const {
        const DimSlice* s = slice(degree);
        if (!s) throw ComplexError("degree out of range");
        return *s;
    }

    std::vector<DimSlice> slices_;   // index k+1 holds degree k
    bool include_empty_ = false;
};

/// Accumulates simplices, then finalize() sorts, indexes, checks face closure
/// and builds coface adjacency.
class ComplexBuilder {
public:
    /// Add one simplex.  Re-adding an existing simplex with the same mass is a
    /// no-op; with a different mass it is an error.
    void add(const Simplex& s, double mass, bool interior = true);

    /// Add a simplex together with all its faces.  Masses for faces not yet
    /// present come from `mass_rule`.
    void insert_closed(const Simplex& s, const std::function<double(const Simplex&)>& mass_rule,
                       bool interior = true);

    void set_empty_mass(double mass);   // include the empty simplex

    bool contains(const Simplex& s) const { return seen_.count(s) != 0; }
    void set_interior(const Simplex& s, bool interior);

    WeightedComplex finalize();

private:
    struct Entry {
        double mass;
        bool interior;
    };
    std::unordered_map<Simplex, Entry, SimplexHash> seen_;
    bool include_empty_ = false;
};

} // namespace scx
