#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace scx {

using vertex_id = std::int64_t;

class ComplexError : public std::runtime_error {
public:
    explicit ComplexError(const std::string& what) : std::runtime_error(what) {}
};

/// A simplex is a finite set of vertices, stored strictly sorted.  The empty
/// simplex (dimension -1) is allowed.  Capacity is fixed: dimensions up to 6.
class Simplex {
public:
    static constexpr int max_vertices = 7;

    Simplex() : n_(0) {}

    Simplex(std::initializer_list<vertex_id> verts) : Simplex(std::span<const vertex_id>(verts.begin(), verts.size())) {}

    explicit Simplex(std::span<const vertex_id> verts) : n_(0) {
        if (verts.size() > max_vertices) throw ComplexError("simplex exceeds max dimension");
        for (vertex_id v : verts) insert(v);
    }

    int dim() const { return static_cast<int>(n_) - 1; }
    int size() const { return n_; }
    bool empty() const { return n_ == 0; }
    vertex_id vertex(int i) const { return v_[static_cast<std::size_t>(i)]; }
    const vertex_id* begin() const { return v_.data(); }
    const vertex_id* end() const { return v_.data() + n_; }

    bool contains(vertex_id v) const { return find(v) >= 0; }

    /// 0-based position of v in the sorted vertex list, -1 if absent.
    int find(vertex_id v) const {
        for (int i = 0; i < n_; ++i)
            if (v_[static_cast<std::size_t>(i)] == v) return i;
        return -1;
    }

    /// Codimension-1 face obtained by deleting the i-th vertex.
    Simplex face(int i) const {
        if (i < 0 || i >= n_) throw ComplexError("face index out of range");
        Simplex f;
        for (int j = 0; j < n_; ++j)
            if (j != i) f.push_back(v_[static_cast<std::size_t>(j)]);
        return f;
    }

    /// The simplex with v adjoined; throws if v is already a vertex.
    Simplex with_vertex(vertex_id v) const {
        Simplex s = *this;
        s.insert(v);
        return s;
    }

    /// The simplex with v removed; throws if v is not a vertex.
    Simplex without_vertex(vertex_id v) const {
        int i = find(v);
        if (i < 0) throw ComplexError("vertex not present");
        return face(i);
    }

    bool is_face_of(const Simplex& s) const {
        int j = 0;
        for (int i = 0; i < n_; ++i) {
            while (j < s.n_ && s.v_[static_cast<std::size_t>(j)] < v_[static_cast<std::size_t>(i)]) ++j;
            if (j >= s.n_ || s.v_[static_cast<std::size_t>(j)] != v_[static_cast<std::size_t>(i)]) return false;
            ++j;
        }
        return true;
    }

    std::vector<vertex_id> vertices() const { return {begin(), end()}; }

    friend bool operator==(const Simplex& a, const Simplex& b) {
        if (a.n_ != b.n_) return false;
        for (int i = 0; i < a.n_; ++i)
            if (a.v_[static_cast<std::size_t>(i)] != b.v_[static_cast<std::size_t>(i)]) return false;
        return true;
    }

    friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
        if (a.n_ != b.n_) return a.n_ <=> b.n_;
        for (int i = 0; i < a.n_; ++i) {
            auto c = a.v_[static_cast<std::size_t>(i)] <=> b.v_[static_cast<std::size_t>(i)];
            if (c != std::strong_ordering::equal) return c;
        }
        return std::strong_ordering::equal;
    }

    std::size_t hash() const {
        std::uint64_t h = 0x243f6a8885a308d3ull + static_cast<std::uint64_t>(n_);
        for (int i = 0; i < n_; ++i) {
            std::uint64_t z = h ^ static_cast<std::uint64_t>(v_[static_cast<std::size_t>(i)]);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            h = z ^ (z >> 31);
        }
        return static_cast<std::size_t>(h);
    }

    std::string str() const;

private:
    void push_back(vertex_id v) { v_[static_cast<std::size_t>(n_++)] = v; }

    void insert(vertex_id v) {
        if (n_ >= max_vertices) throw ComplexError("simplex exceeds max dimension");
        int i = n_;
        while (i > 0 && v_[static_cast<std::size_t>(i - 1)] > v) {
            v_[static_cast<std::size_t>(i)] = v_[static_cast<std::size_t>(i - 1)];
            --i;
        }
        if (i > 0 && v_[static_cast<std::size_t>(i - 1)] == v) throw ComplexError("duplicate vertex in simplex");
        v_[static_cast<std::size_t>(i)] = v;
        ++n_;
    }

    std::array<vertex_id, max_vertices> v_{};
    std::int8_t n_;
};

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const { return s.hash(); }
};

/// Alternating sign theta(tau, sigma) = (-1)^i where i is the position of the
/// vertex sigma \ tau within sigma.  Requires tau to be a codimension-1 face.
int alternating_sign(const Simplex& tau, const Simplex& sigma);

/// theta(rho, rho + v) without materializing the coface.
int vertex_sign(const Simplex& rho, vertex_id v);

} // namespace scx
