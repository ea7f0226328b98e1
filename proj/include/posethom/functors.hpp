#pragma once

#include <string>
#include <vector>

#include "bits.hpp"
#include "coefficients.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "parallel.hpp"
#include "poset_cochain.hpp"
#include "simplicial_complex.hpp"

namespace posethom {

/// Constant functor with value Z and identity maps.
inline BasedFunctor functor_constant(int m) {
  BasedFunctor f(m, "constant");
  for (auto& d : f.dims) d = 1;
  f.allocate_maps();
  for (auto& a : f.maps)
    if (a.rows() == 1) a(0, 0) = 1;
  return f;
}

/// Z at every nonempty subset, 0 at the empty set, identities in between.
inline BasedFunctor functor_A(int m) {
  BasedFunctor f(m, "A");
  for (Mask j = 1; j < f.num_subsets(); ++j) f.dims[j] = 1;
  f.allocate_maps();
  for (auto& a : f.maps)
    if (a.rows() == 1 && a.cols() == 1) a(0, 0) = 1;
  return f;
}

/// Z f_sigma at faces of K, 0 elsewhere; the cover sigma - x < sigma sends
/// f_{sigma - x} to f_sigma.
inline BasedFunctor functor_face(const SimplicialComplex& k) {
  BasedFunctor f(k.m(), "face");
  for (Mask j = 0; j < f.num_subsets(); ++j) f.dims[j] = k.contains(j) ? 1 : 0;
  f.allocate_maps();
  for (auto& a : f.maps)
    if (a.rows() == 1 && a.cols() == 1) a(0, 0) = 1;
  return f;
}

inline BasedFunctor functor_zero(int m, std::string name = "zero") {
  BasedFunctor f(m, std::move(name));
  f.allocate_maps();
  return f;
}

/**
 * J -> H_q(K_J) (or reduced), cover maps induced by inclusion.
 *
 * Over Z only q in {-1, 0} is admitted: those values are always free. Over
 * Q the functor is built from the free part of integral homology, whose
 * maps are integral. Over F_p the engine must compute with coefficients
 * F_p and the result carries that modulus.
 */
inline BasedFunctor functor_H(HomologyEngine& engine, int q, bool reduced, const Coefficients& coeffs,
                              int threads = 1) {
  const SimplicialComplex& k = engine.complex();
  if (q < -1) throw ContractError("functor_H needs q >= -1");
  if (coeffs.is_integers() && q > 0)
    throw RegimeError("integer coefficients are limited to q in {-1, 0}; H_" + std::to_string(q) +
                      " may carry torsion");
  if (coeffs.is_prime_field() != engine.ring().is_prime_field() ||
      (coeffs.is_prime_field() && coeffs.p != engine.ring().p))
    throw ContractError("homology engine ring does not match requested coefficients");
  const std::string name = std::string(reduced ? "Hred_" : "H_") + std::to_string(q);
  if (q == -1 && !reduced) {
    auto f = functor_zero(k.m(), name);
    if (coeffs.is_prime_field()) f.modulus = coeffs.p;
    return f;
  }

  BasedFunctor f(k.m(), name);
  if (coeffs.is_prime_field()) f.modulus = coeffs.p;
  const std::size_t n = f.num_subsets();
  parallel_for(n, threads, [&](std::size_t j) {
    const auto h = engine.homology(static_cast<Mask>(j), q, reduced);
    if (coeffs.is_integers() && !h->group.is_free())
      throw RegimeError("H_" + std::to_string(q) + " of K_" + mask_to_string(static_cast<Mask>(j)) +
                        " has torsion");
    f.dims[j] = coeffs.is_prime_field() ? h->generators() : h->free_generators();
  });
  f.allocate_maps();
  parallel_for(n, threads, [&](std::size_t j) {
    const Mask src = static_cast<Mask>(j);
    for (int x = 1; x <= k.m(); ++x) {
      if (src & vertex_bit(x)) continue;
      const auto induced = engine.induced_map(src, src | vertex_bit(x), q, reduced);
      IntMatrix& a = f.map(src, x);
      // Free generators come first, so the free block is the top-left corner.
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = induced.matrix(r, c);
    }
  });
  return f;
}

inline BasedFunctor functor_H(const SimplicialComplex& k, int q, bool reduced, const Coefficients& coeffs,
                              int threads = 1) {
  HomologyEngine engine(k, coeffs);
  return functor_H(engine, q, reduced, coeffs, threads);
}

/// Inclusion H~_0(K_J) -> H_0(K_J) in the pinned component bases: the
/// generator (min c_i) - (min c_0) goes to e_i - e_0.
inline NaturalTransformation reduced_to_unreduced_degree_zero(const BasedFunctor& reduced,
                                                              const BasedFunctor& unreduced) {
  NaturalTransformation eta;
  eta.components.resize(reduced.num_subsets());
  for (Mask j = 0; j < reduced.num_subsets(); ++j) {
    IntMatrix c(unreduced.dims[j], reduced.dims[j]);
    if (reduced.dims[j] + 1 != unreduced.dims[j] && !(reduced.dims[j] == 0 && unreduced.dims[j] == 0))
      throw InvariantViolation("component counts disagree at " + mask_to_string(j));
    for (std::size_t i = 0; i < reduced.dims[j]; ++i) {
      c(i + 1, i) = 1;
      c(0, i) = -1;
    }
    eta.components[j] = std::move(c);
  }
  return eta;
}

/// Augmentation H_0(K_J) -> A(J) = Z: every component class goes to 1.
inline NaturalTransformation augmentation_degree_zero(const BasedFunctor& unreduced, const BasedFunctor& a) {
  NaturalTransformation eta;
  eta.components.resize(unreduced.num_subsets());
  for (Mask j = 0; j < unreduced.num_subsets(); ++j) {
    IntMatrix c(a.dims[j], unreduced.dims[j]);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t i = 0; i < c.cols(); ++i) c(r, i) = 1;
    eta.components[j] = std::move(c);
  }
  return eta;
}

}  // namespace posethom
