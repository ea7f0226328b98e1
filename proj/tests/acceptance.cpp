// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "posethom/posethom.hpp"

using namespace posethom;

namespace {

const Coefficients kZ = Coefficients::integers();
const Coefficients kQ = Coefficients::rationals();
const Coefficients kF2 = Coefficients::prime(2);

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool all_zero(const std::vector<AbelianGroup>& g) {
  for (const auto& x : g)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<BasedFunctor> integral_functors(HomologyEngine& engine) {
  const auto& k = engine.complex();
  return {functor_constant(k.m()), functor_A(k.m()), functor_face(k), functor_H(engine, -1, true, kZ),
          functor_H(engine, 0, true, kZ), functor_H(engine, 0, false, kZ)};
}

Outcome construction_soundness(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& e : corpus) {
    HomologyEngine z(e.complex, kZ), f2(e.complex, kF2);
    auto functors = integral_functors(z);
    for (int q = 1; q <= e.complex.dimension(); ++q)
      for (bool reduced : {false, true}) {
        functors.push_back(functor_H(z, q, reduced, kQ));
        functors.push_back(functor_H(f2, q, reduced, kF2));
      }
    for (const auto& f : functors) {
      const auto c = assemble(f, {false, 1});
      const std::uint32_t p = f.modulus.value_or(0);
      for (int l = 0; l + 1 < f.m; ++l)
        if (!(c.differentials[l + 1] * c.differentials[l]).is_zero_mod(p)) o.fail(e.name + " " + f.name);
      ++checked;
    }
  }
  o.note = std::to_string(checked) + " functors, d o d = 0" + (o.pass ? "" : " fails: " + o.note);
  return o;
}

Outcome face_oracle(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (const auto& e : corpus) {
    const auto poset = poset_cohomology(functor_face(e.complex), kZ);
    auto ref = oracle::reduced_cohomology(e.complex);
    ref.resize(poset.size());
    if (poset != ref) o.fail(e.name);
  }
  if (o.pass) o.note = std::to_string(corpus.size()) + " complexes match simplicial cohomology";
  return o;
}

Outcome acyclicity(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (int m = 1; m <= 8; ++m)
    if (!all_zero(poset_cohomology(functor_constant(m), kZ)) || !cone_acyclicity_check(functor_constant(m)).certified)
      o.fail("constant functor, m=" + std::to_string(m));
  std::size_t fired = 0;
  for (const auto& e : corpus) {
    HomologyEngine engine(e.complex, kZ);
    for (const auto& f : integral_functors(engine)) {
      if (!cone_acyclicity_check(f).certified) continue;
      ++fired;
      if (!all_zero(poset_cohomology(f, kZ))) o.fail(e.name + " " + f.name);
    }
  }
  if (o.pass) o.note = "constant functor acyclic for m=1..8; " + std::to_string(fired) + " certificates, all acyclic";
  return o;
}

Outcome lemmas(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::vector<SimplicialComplex> all;
  for (const auto& e : corpus) all.push_back(e.complex);
  for (int n = 1; n <= 5; ++n)
    for (auto& k : complexes_up_to_isomorphism(n)) all.push_back(std::move(k));
  std::size_t neighbourly = 0;
  for (const auto& k : all) {
    HomologyEngine engine(k, kZ);
    const auto a = check_reduced_h2_vanishing(engine), b = check_unreduced_h1(engine);
    neighbourly += k.is_neighbourly();
    if (!a.holds || !b.holds) o.fail(to_json_string(k));
    if (!verify_unreduced_h1(k).pass) o.fail("pair blocks " + to_json_string(k));
  }
  if (o.pass)
    o.note = std::to_string(all.size()) + " complexes (" + std::to_string(neighbourly) +
             " neighbourly), incl. all on <= 5 vertices up to isomorphism";
  return o;
}

Outcome comparison(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (const auto& e : corpus) {
    const auto r = degree_zero_comparison_check(e.complex);
    if (!r.pass()) o.fail(e.name + ": " + r.failures.front());
  }
  if (o.pass) o.note = std::to_string(corpus.size()) + " complexes: iso above 2, branch groups, rational cone";
  return o;
}

Outcome poincare(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (auto field : {kQ, kF2})
    for (const auto& e : corpus) {
      const auto r = poincare_difference_check(e.complex, field);
      if (!r.pass) o.fail(e.name + " over " + field.to_string() + ": " + r.difference.to_string());
    }
  for (auto field : {kQ, kF2}) {
    if (poincare_difference_check(cycle(3), field).difference.to_string() != "x^-1 - y") o.fail("C^3");
    for (int m = 4; m <= 8; ++m)
      if (poincare_difference_check(cycle(m), field).difference.to_string() != "x^-1 + y^2") o.fail("C^" + std::to_string(m));
  }
  if (o.pass) o.note = "over Q and F_2; C^3 -> x^-1 - y, C^4..C^8 -> x^-1 + y^2";
  return o;
}

Outcome exactness(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  for (const auto& e : corpus) {
    HomologyEngine engine(e.complex, kZ);
    const auto r = check_degree_zero_sequence(engine);
    if (!r.pass()) o.fail(e.name + ": " + r.failures.front());
    for (Mask j = 1; j < (1u << e.complex.m()); ++j)
      if (engine.homology(j, 0, false)->group.free_rank != oracle::components(e.complex, j)) o.fail(e.name);
  }
  if (o.pass) o.note = "pointwise ranks and degreewise exactness over Z";
  return o;
}

Outcome functoriality(const std::vector<CorpusEntry>& corpus) {
  Outcome o;
  std::size_t compositions = 0;
  for (const auto& e : corpus) {
    HomologyEngine z(e.complex, kZ), f2(e.complex, kF2);
    std::mt19937_64 rng(0x5eed + e.complex.num_faces());
    const Mask full = full_mask(e.complex.m());
    for (int t = 0; t < 1000; ++t) {
      const Mask n = rng() & full, l = n & rng(), j = l & rng();
      auto check = [&](HomologyEngine& engine, int q, bool reduced) {
        IntMatrix c = engine.induced_map(l, n, q, reduced).matrix * engine.induced_map(j, l, q, reduced).matrix;
        const auto target = engine.homology(n, q, reduced);
        for (std::size_t a = 0; a < c.rows(); ++a)
          for (std::size_t b = 0; b < c.cols(); ++b) {
            const Integer mod = engine.ring().is_prime_field() ? Integer(engine.ring().p) : target->moduli[a];
            if (mod != 0) mpz_fdiv_r(c(a, b).get_mpz_t(), c(a, b).get_mpz_t(), mod.get_mpz_t());
          }
        if (!(c == engine.induced_map(j, n, q, reduced).matrix)) o.fail(e.name + " q=" + std::to_string(q));
        ++compositions;
      };
      check(z, 0, false);
      check(z, 0, true);
      for (int q = 1; q <= e.complex.dimension(); ++q) {
        check(z, q, false);
        check(f2, q, false);
      }
    }
  }
  if (o.pass) o.note = "1000 triples per complex, " + std::to_string(compositions) + " compositions over Z and F_2";
  return o;
}

Outcome performance() {
  Outcome o;
  const int threads = default_thread_count();
  ComputeOptions opt;
  opt.threads = threads;
  auto t0 = std::chrono::steady_clock::now();
  for (const char* spec : {"random:10,1,0.3,seed=1", "random:10,2,0.3,seed=2", "random:10,1,0.2,seed=3"}) {
    const auto k = generate(spec);
    double_homology(k, kZ, opt);
    uber_B(k, kZ, opt);
  }
  const double z_time = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto k12 = generate("random:12,2,0.3,seed=4");
  double_homology(k12, kQ, opt);
  uber_B(k12, kQ, opt);
  const double f_time = seconds_since(t0);
  if (z_time >= 300) o.fail("m=10 Z mode took " + std::to_string(z_time) + " s");
  if (f_time >= 900) o.fail("m=12 field mode took " + std::to_string(f_time) + " s");
  char buf[160];
  std::snprintf(buf, sizeof buf, "m=10 Z-mode x3: %.2f s (limit 300); m=12 Q Betti table: %.2f s (limit 900); %d thread(s)",
                z_time, f_time, threads);
  if (o.pass) o.note = buf;
  else o.note += std::string("; ") + buf;
  return o;
}

Outcome determinism() {
  Outcome o;
  std::size_t reports = 0;
  for (const char* spec : {"random:9,2,0.4,seed=21", "cycle:7", "random:8,1,0.5,seed=22"})
    for (auto coeffs : {kZ, kQ, kF2}) {
      std::string first;
      for (int threads : {1, 2, 4, 8}) {
        ComputeOptions opt;
        opt.threads = threads;
        const auto k = generate(spec);
        const std::string report = to_json_string(double_homology(k, coeffs, opt)) +
                                   to_json_string(uber_B(k, coeffs, opt));
        if (first.empty()) first = report;
        else if (report != first) o.fail(std::string(spec) + " threads=" + std::to_string(threads));
        ++reports;
      }
    }
  const auto corpus = standard_corpus();
  const auto a = run_verifier_batch("A", corpus, kZ, 1), b = run_verifier_batch("A", corpus, kZ, 4);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].detail != b[i].detail) o.fail("batch verifier order");
  if (o.pass) o.note = std::to_string(reports) + " reports identical across 1/2/4/8 threads";
  return o;
}

}  // namespace

int main() {
  const auto corpus = standard_corpus();
  struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
    double limit;  // seconds, 0 = none
  };
  const std::vector<Criterion> criteria{
      {1, "construction soundness", [&] { return construction_soundness(corpus); }, 60},
      {2, "face functor oracle", [&] { return face_oracle(corpus); }, 0},
      {3, "acyclicity (constant functor, cone test)", [&] { return acyclicity(corpus); }, 0},
      {4, "neighbourliness biconditionals", [&] { return lemmas(corpus); }, 0},
      {5, "degree-zero comparison", [&] { return comparison(corpus); }, 0},
      {6, "Poincare series difference", [&] { return poincare(corpus); }, 0},
      {7, "short exact sequence", [&] { return exactness(corpus); }, 0},
      {8, "functoriality of induced maps", [&] { return functoriality(corpus); }, 0},
      {9, "performance", [] { return performance(); }, 0},
      {10, "determinism", [] { return determinism(); }, 0},
  };
  int failures = 0;
  std::printf("corpus: %zu complexes\n", corpus.size());
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = seconds_since(t0);
    if (c.limit > 0 && secs >= c.limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit));
    failures += !o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.note.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
