// posethom: poset cohomology of full-subcomplex homology functors.
//
//   posethom gen cycle:5
//   posethom compute --gen cycle:4 --theory uber --coeffs Z
//   posethom verify B --corpus standard --coeffs F2
//
// Exit codes: 0 success, 1 verification failure, 2 input error, 3 regime
// violation (e.g. integer coefficients for q > 0), 4 internal error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "posethom/posethom.hpp"

namespace {

using namespace posethom;

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInputError = 2, kRegime = 3, kInternal = 4 };

struct Source {
  std::string input, gen, corpus;
};

std::vector<CorpusEntry> load_sources(const Source& s, bool allow_corpus) {
  const int given = !s.input.empty() + !s.gen.empty() + !s.corpus.empty();
  if (given != 1)
    throw InputError(allow_corpus ? "give exactly one of --input, --gen, --corpus"
                                  : "give exactly one of --input, --gen");
  if (!s.input.empty()) return {{s.input, load_complex(s.input)}};
  if (!s.gen.empty()) return {{s.gen, generate(s.gen)}};
  return corpus(s.corpus);
}

std::pair<int, int> parse_q_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) {
    const int q = detail::parse_number<int>(s, "q");
    return {q, q};
  }
  return {detail::parse_number<int>(std::string_view(s).substr(0, colon), "q"),
          detail::parse_number<int>(std::string_view(s).substr(colon + 1), "q")};
}

BigradedTable single_functor_table(const BasedFunctor& f, const Coefficients& coeffs, const ComputeOptions& opt) {
  BigradedTable t;
  t.theory = Theory::Poset;
  t.coeffs = coeffs;
  t.m = f.m;
  t.functor = f.name;
  t.graded = false;
  const auto groups = poset_cohomology(f, coeffs, opt.assemble());
  for (int l = 0; l <= f.m; ++l) t.entries[{0, l}] = groups[l];
  return t;
}

struct ComputeArgs {
  Source source;
  std::string theory = "poset", functor = "H", coeffs = "Z", q_range, format = "table";
  int threads = 0;
  bool no_dd_check = false;
};

int run_compute(const ComputeArgs& a) {
  const auto k = load_sources(a.source, false).front().complex;
  const Coefficients coeffs = Coefficients::parse(a.coeffs);
  ComputeOptions opt;
  opt.threads = a.threads > 0 ? a.threads : default_thread_count();
  opt.check_dd = !a.no_dd_check;
  if (!a.q_range.empty()) {
    auto [lo, hi] = parse_q_range(a.q_range);
    if (lo > hi) throw InputError("empty q-range");
    opt.q_min = lo;
    opt.q_max = hi;
  }
  if (k.m() > kMaxFunctorVertices)
    throw InputError("poset computations support m <= " + std::to_string(kMaxFunctorVertices));

  BigradedTable t;
  if (a.theory == "dh") {
    t = double_homology(k, coeffs, opt);
  } else if (a.theory == "uber") {
    t = uber_B(k, coeffs, opt);
  } else if (a.theory == "poset") {
    if (a.functor == "H" || a.functor == "Hred") {
      HomologyEngine engine(k, coeffs);
      t = homology_table(engine, a.functor == "Hred", coeffs, opt);
    } else if (a.functor == "face") {
      t = single_functor_table(functor_face(k), coeffs, opt);
    } else if (a.functor == "constant") {
      t = single_functor_table(functor_constant(k.m()), coeffs, opt);
    } else if (a.functor == "A") {
      t = single_functor_table(functor_A(k.m()), coeffs, opt);
    } else {
      throw InputError("unknown functor '" + a.functor + "' (expected H, Hred, face, constant, A)");
    }
  } else {
    throw InputError("unknown theory '" + a.theory + "' (expected poset, dh, uber)");
  }
  if (a.format == "json") std::cout << to_json_string(t) << "\n";
  else std::cout << to_table(t);
  return kOk;
}

struct VerifyArgs {
  std::string name;
  Source source;
  std::string coeffs, format = "table";
  int threads = 0;
};

int run_verify(const VerifyArgs& a) {
  const int threads = a.threads > 0 ? a.threads : default_thread_count();
  const std::string coeff_spec = a.coeffs.empty() ? (a.name == "B" ? "Q" : "Z") : a.coeffs;
  const Coefficients coeffs = Coefficients::parse(coeff_spec);
  if (a.name != "B" && !coeffs.is_integers())
    throw RegimeError("verify " + a.name + " runs over Z");

  std::vector<CorpusEntry> entries;
  std::vector<Verdict> verdicts;
  const bool no_source = a.source.input.empty() && a.source.gen.empty() && a.source.corpus.empty();
  if (a.name == "cor-2.16" && no_source) {
    // Without a complex, check the constant functor for m = 1..8.
    for (int m = 1; m <= 8; ++m) {
      entries.push_back({"m=" + std::to_string(m), simplex(m)});
      verdicts.push_back(verify_constant_acyclic(m));
    }
  } else {
    entries = load_sources(a.source, true);
    for (const auto& e : entries)
      if (e.complex.m() > kMaxFunctorVertices)
        throw InputError(e.name + ": poset computations support m <= " + std::to_string(kMaxFunctorVertices));
    verdicts = run_verifier_batch(a.name, entries, coeffs, threads);
  }

  std::size_t passed = 0;
  for (const auto& v : verdicts) passed += v.pass;
  const bool all = passed == verdicts.size();
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["verifier"] = a.name;
    j["coeffs"] = coeffs.to_string();
    j["pass"] = all;
    auto results = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      results.push_back({{"name", entries[i].name}, {"pass", verdicts[i].pass}, {"detail", verdicts[i].detail}});
    j["results"] = std::move(results);
    std::cout << j.dump() << "\n";
  } else {
    for (std::size_t i = 0; i < verdicts.size(); ++i)
      std::cout << (verdicts[i].pass ? "PASS " : "FAIL ") << entries[i].name << "  " << verdicts[i].detail << "\n";
    std::cout << a.name << ": " << passed << "/" << verdicts.size() << " passed\n";
  }
  return all ? kOk : kVerifyFailed;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const RegimeError& e) {
    std::cerr << "regime violation: " << e.what() << "\n";
    return kRegime;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poset cohomology of full-subcomplex homology functors"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Compute a bigraded table");
  compute->add_option("--input", ca.source.input, "Complex file (JSON or one facet per line)");
  compute->add_option("--gen", ca.source.gen, "Generator spec, e.g. cycle:5 or random:8,2,0.5,seed=3");
  compute->add_option("--theory", ca.theory, "poset, dh or uber")->capture_default_str();
  compute->add_option("--functor", ca.functor, "For poset: H, Hred, face, constant, A")->capture_default_str();
  compute->add_option("--coeffs", ca.coeffs, "Z, Q or Fp:<p>")->capture_default_str();
  compute->add_option("--q-range", ca.q_range, "q or lo:hi");
  compute->add_option("--format", ca.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  compute->add_option("--threads", ca.threads, "Worker threads (default POSET_HOM_THREADS or all cores)");
  compute->add_flag("--no-dd-check", ca.no_dd_check, "Skip the d o d = 0 check at assembly");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a comparison statement on complexes");
  verify->add_option("theorem", va.name, "A, B, lemma-2.11, lemma-2.13, oracle-2.8, cor-2.16, prop-2.15")
      ->required()
      ->check(CLI::IsMember(verifier_names()));
  verify->add_option("--input", va.source.input, "Complex file");
  verify->add_option("--gen", va.source.gen, "Generator spec");
  verify->add_option("--corpus", va.source.corpus, "standard or all-complexes:N");
  verify->add_option("--coeffs", va.coeffs, "Coefficients (B: Q or Fp:<p>, default Q; others Z)");
  verify->add_option("--format", va.format, "table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
  verify->add_option("--threads", va.threads, "Worker threads");

  std::string gen_spec;
  auto* gen = app.add_subcommand("gen", "Print a generated complex as JSON");
  gen->add_option("spec", gen_spec, "cycle:M, simplex:M, skeleton:M,K or random:M,DIM,P[,seed=S]")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (*compute) return guarded([&] { return run_compute(ca); });
  if (*verify) return guarded([&] { return run_verify(va); });
  return guarded([&] {
    std::cout << to_json_string(generate(gen_spec)) << "\n";
    return kOk;
  });
}
