#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "triplekit/triplekit.hpp"

//============================================================================
// triplekit: generate, verify, and canonicalize triple-identity maps on
// M_n(C), plus the lab checks, all over JSON.
//
// Exit codes: 0 success / verdict true, 1 verdict false (including
// canonicalization rejections), 2 usage or parse errors, 3 internal errors.
//============================================================================

namespace {

using namespace triplekit;

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

struct GenArgs {
  std::size_t n = 2;
  std::uint64_t seed = 0;
  std::optional<int> c;
  std::optional<std::string> variant, scalar_auto;
  std::string out, spec_out;
};

template <class S>
int run_gen(const GenArgs& a, const TolerancePolicy& tol) {
  CanonicalSpec<S> spec = random_canonical<S>(a.n, a.seed, tol);
  if (a.c) spec.c = *a.c;
  if (a.variant) spec.variant = parse_variant(*a.variant);
  if (a.scalar_auto) spec.scalar_auto = parse_scalar_auto(*a.scalar_auto);
  SuperMap<S> map = from_canonical(spec, tol);
  Json js = spec_to_json(spec);
  Json jm = supermap_to_json(map);
  if (!a.out.empty()) write_json_file(a.out, jm);
  if (!a.spec_out.empty()) write_json_file(a.spec_out, js);
  emit(Json{{"spec", std::move(js)}, {"map", std::move(jm)}});
  return 0;
}

AnySuperMap load_supermap(const std::string& path, const std::optional<std::string>& backend) {
  AnySuperMap any = parse_any_supermap(read_json_file(path));
  if (backend) {
    const bool is_exact = std::holds_alternative<SuperMap<GaussianRational>>(any);
    if ((*backend == "exact") != is_exact)
      throw BackendMismatch("file is " + std::string(is_exact ? "exact" : "float") +
                            ", requested " + *backend);
  }
  return any;
}

int run_verify(const std::string& path, const std::optional<std::string>& backend,
               const TolerancePolicy& tol) {
  return std::visit(
      [&](const auto& phi) {
        using S = typename std::decay_t<decltype(phi)>::scalar_type;
        bool ok = is_triple_morphism(phi, tol);
        emit(Json{{"check", "triple-morphism"},
                  {"backend", ScalarTraits<S>::backend_name()},
                  {"n", phi.n()},
                  {"verdict", ok}});
        return ok ? 0 : 1;
      },
      load_supermap(path, backend));
}

int run_canon(const std::string& path, const std::optional<std::string>& backend,
              const TolerancePolicy& tol) {
  return std::visit(
      [&](const auto& phi) {
        try {
          emit(report_to_json(classify(phi, tol)));
          return 0;
        } catch (const NotUnitalSign& e) {
          std::cerr << e.what() << '\n';
        } catch (const UnsupportedScalarAuto& e) {
          std::cerr << e.what() << '\n';
        } catch (const DichotomyViolation& e) {
          std::cerr << e.what() << '\n';
        } catch (const RecoveryFailure& e) {
          std::cerr << e.what() << '\n';
        } catch (const Singular& e) {
          std::cerr << e.what() << '\n';
        }
        return 1;
      },
      load_supermap(path, backend));
}

Json lab_report(const std::string& check, Json params, bool verdict,
                std::optional<Json> witness = {}, std::optional<double> score = {}) {
  Json j{{"check", check}, {"params", std::move(params)}, {"verdict", verdict}};
  if (witness) j["witness"] = std::move(*witness);
  if (score) j["score"] = *score;
  return j;
}

template <class S>
int run_lab_five(const TolerancePolicy& tol) {
  auto ops = five_tripotent_operators<S>();
  bool ranks_ok = true;
  for (const auto& r : ops) ranks_ok = ranks_ok && rank(r.embed_hilbert(), tol) == 1;
  double score = check_family(ops, tol).value;
  bool verdict = ranks_ok && score == 0.0;
  emit(lab_report("five-tripotents",
                  Json{{"backend", ScalarTraits<S>::backend_name()}}, verdict, {}, score));
  return verdict ? 0 : 1;
}

template <class S>
int run_lab_relaxation(const TolerancePolicy& tol) {
  double score = check_family(m2_relaxation_witness<S>(), tol).value;
  bool verdict = score == 0.0;
  emit(lab_report("m2-relaxation",
                  Json{{"backend", ScalarTraits<S>::backend_name()}}, verdict, {}, score));
  return verdict ? 0 : 1;
}

int run_lab_m2(std::size_t trials, std::uint64_t seed, const TolerancePolicy& tol) {
  M2SearchResult res = m2_quadruple_search(trials, seed, tol);
  bool verdict = res.score.value > kM2ViolationFloor;
  Json witness{{"q1", matrix_to_json(res.best.q1.embed())},
               {"q2", matrix_to_json(res.best.q2.embed())},
               {"q3", matrix_to_json(res.best.q3.embed())},
               {"q4", matrix_to_json(res.best.q4.embed())}};
  emit(lab_report("m2-search", Json{{"trials", trials}, {"seed", seed}}, verdict,
                  std::move(witness), res.score.value));
  return verdict ? 0 : 1;
}

int run_lab_dim1(std::size_t samples, std::uint64_t seed) {
  Dim1Report rep = dim1_laws(samples, seed);
  bool verdict = rep.multiplicative_ok && rep.additivity_violation == 2.0;
  Json witness{{"additivity_violation_at_one", rep.additivity_violation}};
  emit(lab_report("dim1", Json{{"samples", samples}, {"seed", seed}}, verdict,
                  std::move(witness), rep.max_mult_residual));
  return verdict ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jordan triple maps on M_n(C): generate, verify, canonicalize, lab checks"};
  app.require_subcommand(1);

  std::string backend = "exact";
  double rel_eps = 1e-9, rank_eps = 1e-9;
  auto* backend_opt =
      app.add_option("--backend", backend, "scalar backend")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--rel-eps", rel_eps, "relative comparison threshold");
  app.add_option("--rank-eps", rank_eps, "pivot threshold factor");

  GenArgs gen_args;
  int gen_c = 0;
  std::string gen_variant, gen_scalar_auto;
  auto* gen = app.add_subcommand("gen", "generate a canonical map and its spec");
  gen->add_option("--n", gen_args.n, "matrix dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed, "rng seed")->required();
  auto* gen_c_opt = gen->add_option("--c", gen_c, "sign override")->check(CLI::IsMember({1, -1}));
  auto* gen_v_opt = gen->add_option("--variant", gen_variant, "variant override")
                        ->check(CLI::IsMember({"straight", "transpose"}));
  auto* gen_s_opt = gen->add_option("--scalar-auto", gen_scalar_auto, "scalar automorphism override")
                        ->check(CLI::IsMember({"id", "conj"}));
  gen->add_option("--out", gen_args.out, "write the map JSON to this file");
  gen->add_option("--spec-out", gen_args.spec_out, "write the spec JSON to this file");

  std::string verify_in;
  auto* verify = app.add_subcommand("verify", "decide the triple identity for a map");
  verify->add_option("--in", verify_in, "supermap JSON file")->required();

  std::string canon_in;
  auto* canon = app.add_subcommand("canon", "recover the canonical form of a map");
  canon->add_option("--in", canon_in, "supermap JSON file")->required();

  auto* lab = app.add_subcommand("lab", "structural lab checks");
  lab->require_subcommand(1);
  auto* lab_five = lab->add_subcommand("five-tripotents", "five mutually annihilating tripotents in M_3");
  auto* lab_m2 = lab->add_subcommand("m2-search", "randomized quadruple search in M_2");
  std::size_t m2_trials = 100000;
  std::uint64_t m2_seed = 0;
  lab_m2->add_option("--trials", m2_trials, "search trials")->check(CLI::PositiveNumber);
  lab_m2->add_option("--seed", m2_seed, "rng seed")->required();
  auto* lab_relax = lab->add_subcommand("m2-relaxation", "three-tripotent witness in M_2");
  auto* lab_dim1 = lab->add_subcommand("dim1", "dimension-1 multiplicative non-additive map");
  std::size_t dim1_samples = 10000;
  std::uint64_t dim1_seed = 0;
  lab_dim1->add_option("--samples", dim1_samples, "sample pairs")->check(CLI::PositiveNumber);
  lab_dim1->add_option("--seed", dim1_seed, "rng seed")->required();

  auto* version = app.add_subcommand("version", "print version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const bool exact = backend == "exact";
  const std::optional<std::string> forced_backend =
      backend_opt->count() > 0 ? std::optional<std::string>(backend) : std::nullopt;

  try {
    const TolerancePolicy tol{rel_eps, rank_eps};

    if (gen->parsed()) {
      if (gen_c_opt->count()) gen_args.c = gen_c;
      if (gen_v_opt->count()) gen_args.variant = gen_variant;
      if (gen_s_opt->count()) gen_args.scalar_auto = gen_scalar_auto;
      return exact ? run_gen<GaussianRational>(gen_args, tol) : run_gen<ComplexF>(gen_args, tol);
    }
    if (verify->parsed()) return run_verify(verify_in, forced_backend, tol);
    if (canon->parsed()) return run_canon(canon_in, forced_backend, tol);
    if (lab->parsed()) {
      if (lab_five->parsed())
        return exact ? run_lab_five<GaussianRational>(tol) : run_lab_five<ComplexF>(tol);
      if (lab_m2->parsed()) return run_lab_m2(m2_trials, m2_seed, tol);
      if (lab_relax->parsed())
        return exact ? run_lab_relaxation<GaussianRational>(tol) : run_lab_relaxation<ComplexF>(tol);
      if (lab_dim1->parsed()) return run_lab_dim1(dim1_samples, dim1_seed);
    }
    if (version->parsed()) {
      emit(Json{{"name", "triplekit"}, {"version", kVersion}});
      return 0;
    }
    return 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const BackendMismatch& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
