#pragma once

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"

namespace posethom {

/// A face of a complex: its vertex set and dimension |vertices| - 1.
struct Face {
  Mask vertices = 0;
  int dim() const { return cardinality(vertices) - 1; }
  friend bool operator==(const Face&, const Face&) = default;
};

/**
 * Finite simplicial complex on [m] with ambient vertex labels.
 *
 * The face family is downward closed, contains the empty face and contains
 * every singleton of its vertex set. A complex built by from_facets has
 * vertex set [m]; a full subcomplex K_J keeps m and the ambient labels but
 * has vertex set J.
 *
 * Faces are bitmasks. Membership goes through a hash set; enumeration uses
 * a list sorted by bitmask value. Immutable after construction.
 */
class SimplicialComplex {
 public:
  SimplicialComplex() : SimplicialComplex(0, 0, {0}, nullptr) {}

  int m() const { return m_; }
  Mask vertex_set() const { return vertices_; }
  int num_vertices() const { return cardinality(vertices_); }

  bool contains(Mask s) const { return face_set_.count(s) != 0; }

  /// All faces (empty face included), sorted by bitmask value.
  const std::vector<Face>& faces() const { return face_list_; }
  std::size_t num_faces() const { return faces_.size(); }

  /// Faces of dimension d sorted by bitmask value; d = -1 gives {empty}.
  std::vector<Mask> faces_of_dim(int d) const {
    std::vector<Mask> out;
    for (Mask s : faces_)
      if (cardinality(s) == d + 1) out.push_back(s);
    return out;
  }

  /// -1 for the complex {empty}.
  int dimension() const { return dim_; }

  /// Inclusion-maximal faces in construction order.
  const std::vector<Mask>& maximal_faces() const { return maximal_; }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.m_ == b.m_ && a.vertices_ == b.vertices_ && a.faces_ == b.faces_;
  }

  /// Downward closure of the facets together with all singletons of [m].
  static SimplicialComplex from_facets(int m, const std::vector<std::vector<int>>& facets) {
    check_m(m);
    std::vector<Mask> masks;
    masks.reserve(facets.size());
    for (const auto& f : facets) {
      Mask s = 0;
      for (int v : f) {
        if (v < 1 || v > m)
          throw InputError("vertex " + std::to_string(v) + " outside [1," + std::to_string(m) + "]");
        s |= vertex_bit(v);
      }
      masks.push_back(s);
    }
    return from_facet_masks(m, masks);
  }

  static SimplicialComplex from_facet_masks(int m, const std::vector<Mask>& facets) {
    check_m(m);
    std::unordered_set<Mask> closed{0};
    for (int v = 1; v <= m; ++v) closed.insert(vertex_bit(v));
    for (Mask f : facets) {
      if (!is_subset(f, full_mask(m))) throw InputError("facet outside [1,m]");
      if (closed.count(f)) continue;
      // Enumerate all subsets of the facet.
      Mask sub = f;
      while (true) {
        closed.insert(sub);
        if (sub == 0) break;
        sub = (sub - 1) & f;
      }
    }
    return SimplicialComplex(m, full_mask(m), std::vector<Mask>(closed.begin(), closed.end()), &facets);
  }

  /// Build from an explicit face family; validates the invariants.
  static SimplicialComplex from_faces(int m, Mask vertex_set, std::vector<Mask> faces) {
    check_m(m);
    SimplicialComplex k(m, vertex_set, std::move(faces), nullptr);
    k.validate();
    return k;
  }

  /// Throws InvariantViolation if the face family is not a complex on its
  /// vertex set without ghost vertices.
  void validate() const {
    if (!contains(0)) throw InvariantViolation("empty face missing");
    for (int v : vertices_of(vertices_))
      if (!contains(vertex_bit(v))) throw InvariantViolation("ghost vertex " + std::to_string(v));
    for (Mask s : faces_) {
      if (!is_subset(s, vertices_)) throw InvariantViolation("face outside vertex set");
      for (Mask rest = s; rest; rest &= rest - 1) {
        Mask boundary = s & ~(rest & (~rest + 1));
        if (!contains(boundary))
          throw InvariantViolation("not downward closed at " + mask_to_string(s));
      }
    }
  }

  /// K_J = {sigma in K : sigma subset of J}, ambient labels kept.
  SimplicialComplex full_subcomplex(Mask j) const {
    if (!is_subset(j, full_mask(m_))) throw InputError("subset outside [1,m]");
    std::vector<Mask> sub;
    for (Mask s : faces_)
      if (is_subset(s, j)) sub.push_back(s);
    return SimplicialComplex(m_, j & vertices_, std::move(sub), nullptr);
  }

  /// Every (p+1)-subset of the vertex set is a face.
  bool is_p_neighbourly(int p) const {
    if (p < 0) throw ContractError("is_p_neighbourly: p must be non-negative");
    const int n = num_vertices();
    if (p + 1 > n) return true;
    const std::uint64_t have = std::count_if(faces_.begin(), faces_.end(),
                                             [&](Mask s) { return cardinality(s) == p + 1; });
    return have == binomial(n, p + 1);
  }

  /// 1-skeleton is the complete graph.
  bool is_neighbourly() const { return is_p_neighbourly(1); }

 private:
  SimplicialComplex(int m, Mask vertex_set, std::vector<Mask> faces, const std::vector<Mask>* order)
      : m_(m), vertices_(vertex_set), faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end());
    faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
    face_set_.insert(faces_.begin(), faces_.end());
    face_list_.reserve(faces_.size());
    dim_ = -1;
    for (Mask s : faces_) {
      face_list_.push_back(Face{s});
      dim_ = std::max(dim_, cardinality(s) - 1);
    }
    compute_maximal(order);
  }

  static void check_m(int m) {
    if (m < 1 || m > kMaxVertices)
      throw InputError("vertex count m=" + std::to_string(m) + " outside [1," +
                       std::to_string(kMaxVertices) + "]");
  }

  bool is_maximal(Mask s) const {
    for (int v : vertices_of(vertices_ & ~s))
      if (contains(s | vertex_bit(v))) return false;
    return true;
  }

  void compute_maximal(const std::vector<Mask>* order) {
    std::unordered_set<Mask> seen;
    if (order) {
      for (Mask s : *order)
        if (contains(s) && is_maximal(s) && seen.insert(s).second) maximal_.push_back(s);
    }
    // Remaining maximal faces (e.g. singletons added for the vertex set)
    // follow in lexicographic order of their sorted vertex lists.
    std::vector<Mask> rest;
    for (Mask s : faces_)
      if (s != 0 && !seen.count(s) && is_maximal(s)) rest.push_back(s);
    std::sort(rest.begin(), rest.end(),
              [](Mask a, Mask b) { return vertices_of(a) < vertices_of(b); });
    maximal_.insert(maximal_.end(), rest.begin(), rest.end());
  }

  int m_;
  Mask vertices_;
  std::vector<Mask> faces_;
  std::unordered_set<Mask> face_set_;
  std::vector<Face> face_list_;
  std::vector<Mask> maximal_;
  int dim_ = -1;
};

/// Free-function spellings of the member operations.
inline SimplicialComplex from_facets(int m, const std::vector<std::vector<int>>& facets) {
  return SimplicialComplex::from_facets(m, facets);
}
inline SimplicialComplex full_subcomplex(const SimplicialComplex& k, Mask j) {
  return k.full_subcomplex(j);
}
inline bool is_neighbourly(const SimplicialComplex& k) { return k.is_neighbourly(); }
inline bool is_p_neighbourly(const SimplicialComplex& k, int p) { return k.is_p_neighbourly(p); }

}  // namespace posethom
