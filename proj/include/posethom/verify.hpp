#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "coefficients.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "functors.hpp"
#include "homology.hpp"
#include "parallel.hpp"
#include "poset_cochain.hpp"
#include "theories.hpp"

namespace posethom {

/// Outcome of one verifier on one complex.
struct Verdict {
  bool pass = false;
  std::string detail;
};

namespace detail {

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
  return s;
}

inline std::string groups_string(const std::vector<AbelianGroup>& g) {
  std::vector<std::string> parts;
  for (const auto& x : g) parts.push_back(x.to_string());
  return "[" + join(parts, ", ") + "]";
}

}  // namespace detail

inline Verdict verify_comparison(const SimplicialComplex& k, const ComputeOptions& opt = {}) {
  HomologyEngine engine(k, Coefficients::integers());
  const auto rep = degree_zero_comparison_check(engine, opt);
  const auto ses = check_degree_zero_sequence(engine, opt);
  Verdict v;
  v.pass = rep.pass() && ses.pass();
  std::vector<std::string> failures = rep.failures;
  failures.insert(failures.end(), ses.failures.begin(), ses.failures.end());
  v.detail = std::string(rep.neighbourly ? "neighbourly" : "non-neighbourly") +
             ": H^1(H_0)=" + rep.h1_unreduced.to_string() + ", H^2(H~_0)=" + rep.h2_reduced.to_string() +
             ", H^2(H_0)=" + rep.h2_unreduced.to_string();
  if (!failures.empty()) v.detail += "; " + detail::join(failures, "; ");
  return v;
}

inline Verdict verify_poincare_difference(const SimplicialComplex& k, const Coefficients& field,
                                          const ComputeOptions& opt = {}) {
  const auto r = poincare_difference_check(k, field, opt);
  Verdict v;
  v.pass = r.pass;
  v.detail = std::string(r.neighbourly ? "neighbourly" : "non-neighbourly") +
             ": P(H~) - P(H) = " + r.difference.to_string();
  if (!r.pass)
    v.detail += " (expected " + r.expected.to_string() + ", first difference at x^" +
                std::to_string(r.witness->first) + " y^" + std::to_string(r.witness->second) + ")";
  return v;
}

inline Verdict verify_reduced_h2(const SimplicialComplex& k, const ComputeOptions& opt = {}) {
  HomologyEngine engine(k, Coefficients::integers());
  const auto r = check_reduced_h2_vanishing(engine, opt);
  return {r.holds, std::string(r.neighbourly ? "neighbourly" : "non-neighbourly") +
                       ": H^2(H~_0)=" + r.group.to_string()};
}

/**
 * H^1(H_0) = 0 exactly when K is not neighbourly (Z otherwise), and the
 * differential d^1 of C(H_0) restricted to the summands over {1}, {k} and
 * {1,k} is [[-1,0],[0,1]] when 1 and k are not joined by an edge and
 * [-1, 1] when they are.
 */
inline Verdict verify_unreduced_h1(const SimplicialComplex& k, const ComputeOptions& opt = {}) {
  HomologyEngine engine(k, Coefficients::integers());
  const auto r = check_unreduced_h1(engine, opt);
  Verdict v{r.holds, std::string(r.neighbourly ? "neighbourly" : "non-neighbourly") +
                         ": H^1(H_0)=" + r.group.to_string()};
  if (k.m() < 2) return v;
  const BasedFunctor f = functor_H(engine, 0, false, Coefficients::integers(), opt.threads);
  const CochainComplexZ c = assemble(f, opt.assemble());
  const IntMatrix d1 = c.differentials[1].to_dense();
  for (int x = 2; x <= k.m(); ++x) {
    const Mask one = vertex_bit(1), other = vertex_bit(x), pair = one | other;
    const bool edge = k.contains(pair);
    const std::size_t rows = f.dims[pair];
    IntMatrix block(rows, 2);
    for (std::size_t r0 = 0; r0 < rows; ++r0) {
      block(r0, 0) = d1(c.offset[pair] + r0, c.offset[one]);
      block(r0, 1) = d1(c.offset[pair] + r0, c.offset[other]);
    }
    const IntMatrix expected = edge ? IntMatrix{{-1, 1}} : IntMatrix{{-1, 0}, {0, 1}};
    if (!(block == expected)) {
      v.pass = false;
      v.detail += "; block for {1," + std::to_string(x) + "} is " + block.to_string();
    }
  }
  return v;
}

/// Poset cohomology of the face functor against reduced simplicial
/// cohomology one degree lower.
inline Verdict verify_face_functor(const SimplicialComplex& k, const ComputeOptions& opt = {}) {
  const auto poset = poset_cohomology(functor_face(k), Coefficients::integers(), opt.assemble());
  const auto simp = reduced_simplicial_cohomology(k);
  std::vector<AbelianGroup> shifted(poset.size());
  for (std::size_t p = 0; p < simp.size() && p < shifted.size(); ++p) shifted[p] = simp[p];
  return {poset == shifted, "H^*(face)=" + detail::groups_string(poset) +
                                ", H~^(*-1)(K)=" + detail::groups_string(shifted)};
}

namespace detail {

inline std::vector<BasedFunctor> library_functors(const SimplicialComplex& k, int threads) {
  HomologyEngine engine(k, Coefficients::integers());
  const Coefficients z = Coefficients::integers();
  std::vector<BasedFunctor> out;
  out.push_back(functor_constant(k.m()));
  out.push_back(functor_A(k.m()));
  out.push_back(functor_face(k));
  out.push_back(functor_H(engine, -1, true, z, threads));
  out.push_back(functor_H(engine, 0, true, z, threads));
  out.push_back(functor_H(engine, 0, false, z, threads));
  return out;
}

}  // namespace detail

/// The constant functor on 2^[m] is acyclic and the cone test fires on it.
inline Verdict verify_constant_acyclic(int m, const ComputeOptions& opt = {}) {
  const BasedFunctor f = functor_constant(m);
  const auto groups = poset_cohomology(f, Coefficients::integers(), opt.assemble());
  bool zero = true;
  for (const auto& g : groups) zero = zero && g.is_zero();
  const auto cert = cone_acyclicity_check(f);
  return {zero && cert.certified, "m=" + std::to_string(m) + ": H^*=" + detail::groups_string(groups) +
                                      (cert.certified ? ", certified" : ", not certified")};
}

/// Wherever the cone test certifies a library functor, its cohomology
/// vanishes.
inline Verdict verify_cone_certificates(const SimplicialComplex& k, const ComputeOptions& opt = {}) {
  Verdict v{true, ""};
  std::vector<std::string> notes;
  for (const auto& f : detail::library_functors(k, opt.threads)) {
    const auto cert = cone_acyclicity_check(f);
    if (!cert.certified) {
      notes.push_back(f.name + " not applicable");
      continue;
    }
    const auto groups = poset_cohomology(f, Coefficients::integers(), opt.assemble());
    bool zero = true;
    for (const auto& g : groups) zero = zero && g.is_zero();
    notes.push_back(f.name + " certified by x=" + std::to_string(cert.direction) +
                    (zero ? ", acyclic" : ", NOT acyclic " + detail::groups_string(groups)));
    v.pass = v.pass && zero;
  }
  v.detail = detail::join(notes, "; ");
  return v;
}

/// Verifier tokens of the command line.
inline const std::vector<std::string>& verifier_names() {
  static const std::vector<std::string> names{"A", "B", "lemma-2.11", "lemma-2.13", "oracle-2.8", "cor-2.16",
                                              "prop-2.15"};
  return names;
}

inline Verdict run_verifier(const std::string& name, const SimplicialComplex& k, const Coefficients& coeffs,
                            const ComputeOptions& opt = {}) {
  if (name == "A") return verify_comparison(k, opt);
  if (name == "B") {
    if (!coeffs.is_field()) throw RegimeError("verify B needs field coefficients (Q or Fp:<p>)");
    return verify_poincare_difference(k, coeffs, opt);
  }
  if (name == "lemma-2.11") return verify_reduced_h2(k, opt);
  if (name == "lemma-2.13") return verify_unreduced_h1(k, opt);
  if (name == "oracle-2.8") return verify_face_functor(k, opt);
  if (name == "cor-2.16") return verify_constant_acyclic(k.m(), opt);
  if (name == "prop-2.15") return verify_cone_certificates(k, opt);
  throw InputError("unknown verifier '" + name + "'");
}

/// Runs a verifier over many complexes; results keep the input order.
inline std::vector<Verdict> run_verifier_batch(const std::string& name, const std::vector<CorpusEntry>& entries,
                                               const Coefficients& coeffs, int threads) {
  std::vector<Verdict> out(entries.size());
  ComputeOptions inner;
  inner.threads = 1;
  parallel_for(entries.size(), threads,
               [&](std::size_t i) { out[i] = run_verifier(name, entries[i].complex, coeffs, inner); });
  return out;
}

}  // namespace posethom
