// Command-line front end: JSON in, JSON out.
//
// Exit codes: 0 success, 1 a check failed (validation, internal identity,
// resource limit), 2 numeric non-convergence, 3 malformed input.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "mrep/changegen.hpp"
#include "mrep/decompose.hpp"
#include "mrep/errors.hpp"
#include "mrep/io.hpp"
#include "mrep/perron.hpp"
#include "mrep/random.hpp"
#include "mrep/transport.hpp"

using namespace mrep;

namespace {

struct Options {
  double tol = kDefectTol;
  int depth = 3;
  int trials = 20;
  std::uint64_t seed = kDefaultSeed;
  bool verify = false;
  std::string word = "e";
};

constexpr double kTransportTol = 1e-8;

// Reports from changegen, restrict and induce carry the system
// under "system", so they can be fed straight back in.
std::shared_ptr<const MatrixSystem> load_system(const std::string& path, const Alphabet* expected = nullptr) {
  json j = read_json_file(path);
  if (j.is_object() && !j.contains("alphabet") && j.contains("system")) j = j.at("system");
  return std::make_shared<const MatrixSystem>(system_from_json(j, expected));
}

double form_scale(const MatrixSystem& sys) {
  double s = 1.0;
  for (Letter a = 0; a < sys.letters(); ++a) s = std::max(s, spectral_norm(sys.B(a)));
  return s;
}

json forms_to_json(const MatrixSystem& sys, const FormTuple& forms) {
  json out = json::object();
  for (Letter a = 0; a < sys.letters(); ++a) out[sys.alphabet().name(a)] = matrix_to_json(forms[a]);
  return out;
}

double relative_gap(double lhs, double rhs) { return std::abs(lhs - rhs) / std::max(rhs, 1e-300); }

int cmd_check(const std::string& path, const Options& o) {
  const auto sys = load_system(path);
  json psd = json::object();
  bool all_psd = true;
  for (Letter a = 0; a < sys->letters(); ++a) {
    const Mat& b = sys->B(a);
    const double lo = b.size() ? min_eigenvalue(hermitian_part(b)) : 0.0;
    const bool ok = b.size() == 0 || is_psd(hermitian_part(b));
    all_psd = all_psd && ok;
    psd[sys->alphabet().name(a)] = {{"min_eigenvalue", lo}, {"psd", ok}};
  }
  const double defect = compatibility_defect(*sys);
  const bool compatible = all_psd && defect <= o.tol * form_scale(*sys);
  std::cout << json{{"defect", defect}, {"tolerance", o.tol}, {"forms", psd}, {"compatible", compatible}}.dump(2)
            << "\n";
  return compatible ? 0 : 1;
}

int cmd_pf(const std::string& path, const Options& o) {
  const auto sys = load_system(path);
  const PerronResult pf = pf_eigenpair(*sys, o.tol);
  std::cout << json{{"rho", pf.rho},
                    {"residual", pf.residual},
                    {"method", pf.method},
                    {"forms", forms_to_json(*sys, pf.forms)}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_normalize(const std::string& path, const Options& o) {
  const auto sys = load_system(path);
  const MatrixSystem out = normalize_to_compatible(*sys, o.tol);
  json j = system_to_json(out);
  j["defect"] = compatibility_defect(out);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_decompose(const std::string& path, const Options& o) {
  const auto sys = load_system(path);
  DecomposeOptions opts;
  opts.trials = o.trials;
  opts.seed = o.seed;
  const Decomposition d = decompose(*sys, opts);
  json comps = json::array();
  for (const Component& c : d.components) {
    json emb = json::object();
    for (Letter a = 0; a < sys->letters(); ++a) emb[sys->alphabet().name(a)] = matrix_to_json(c.embedding.J[a]);
    comps.push_back({{"system", system_to_json(c.system)},
                     {"embedding", emb},
                     {"origin", c.origin},
                     {"lambda", c.lambda},
                     {"defect", compatibility_defect(c.system)},
                     {"dims", c.system.dims()}});
  }
  json steps = json::array();
  for (const DecomposeStep& s : d.steps) {
    steps.push_back({{"dims", s.dims},
                     {"quotient_dims", s.quotient_dims},
                     {"quotient_rho", s.quotient_rho},
                     {"action", s.action},
                     {"lambda", s.lambda}});
  }
  std::cout << json{{"components", comps}, {"steps", steps}, {"stripped_dims", d.stripped.dims()}}.dump(2) << "\n";
  return 0;
}

int cmd_changegen(const std::string& sys_path, const std::string& map_path, const Options& o) {
  const auto sys = load_system(sys_path);
  const GeneratorMap gm = genmap_from_json(read_json_file(map_path), sys->alphabet());
  const Transported t = transport_system(gm, *sys);
  json frontiers = json::object();
  for (Letter a = 0; a < gm.target().size(); ++a) {
    json members = json::array();
    for (const YMember& m : t.frontiers[a].members) {
      members.push_back({{"word", gm.source().format(m.word)}, {"y1", m.y1}});
    }
    frontiers[gm.target().name(a)] = members;
  }
  const double defect = compatibility_defect(*t.system);
  json out{{"system", system_to_json(*t.system)}, {"frontiers", frontiers}, {"defect", defect}};
  bool ok = defect <= kTransportTol * form_scale(*t.system);
  if (o.verify) {
    Rng rng(o.seed);
    double worst = 0.0;
    for (int k = 0; k < o.trials; ++k) {
      const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, o.depth)));
      const MultFunc f = random_function(rng, sys, d);
      worst = std::max(worst, relative_gap(norm2(intertwine_changegen(t, f)), norm2(f)));
    }
    out["unitarity_defect"] = worst;
    ok = ok && worst <= kTransportTol;
  }
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

json schreier_report(const FundamentalSubtree& fs) {
  const Alphabet& al = fs.alphabet();
  const Alphabet& sub = fs.subgroup_alphabet();
  json gens = json::array();
  for (Letter ap = 0; ap < sub.size(); ++ap) {
    const InducedGenerator& g = fs.generator(ap);
    gens.push_back({{"name", sub.name(ap)},
                    {"inverse", sub.name(sub.inverse(ap))},
                    {"word", al.format(g.gamma)},
                    {"x", al.format(g.x)},
                    {"q", al.name(g.q)}});
  }
  const FiniteSubtree dp = fs.complete_D();
  const std::vector<Word> dverts(dp.vertices().begin(), dp.vertices().end());
  return json{{"index", fs.index()},
              {"rank", sub.size() / 2},
              {"D", words_to_json(al, fs.D())},
              {"generators", gens},
              {"D_prime", words_to_json(al, dverts)},
              {"D_prime_complete", dp.is_complete()},
              {"D_prime_terminals", words_to_json(al, dp.terminals())}};
}

FundamentalSubtree load_subgroup(const std::string& path, const Alphabet& fallback) {
  return FundamentalSubtree(subgroup_from_json(read_json_file(path), fallback));
}

Alphabet default_alphabet() { return Alphabet::with_case_convention({"a", "b", "A", "B"}); }

int cmd_schreier(const std::string& path) {
  const FundamentalSubtree fs = load_subgroup(path, default_alphabet());
  std::cout << schreier_report(fs).dump(2) << "\n";
  return 0;
}

int cmd_restrict(const std::string& sys_path, const std::string& sub_path, const Options& o) {
  const auto sys = load_system(sys_path);
  const FundamentalSubtree fs = load_subgroup(sub_path, sys->alphabet());
  const auto res = std::make_shared<const MatrixSystem>(restrict_system(*sys, fs));
  const double defect = compatibility_defect(*res);
  json out{{"system", system_to_json(*res)}, {"defect", defect}};
  bool ok = defect <= kTransportTol * form_scale(*res);
  if (o.verify) {
    Rng rng(o.seed);
    double worst = 0.0;
    for (int k = 0; k < o.trials; ++k) {
      const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, o.depth)));
      const MultFunc f = random_function(rng, sys, d);
      worst = std::max(worst, relative_gap(norm2(restrict_function(res, fs, f)), norm2(f)));
    }
    out["unitarity_defect"] = worst;
    ok = ok && worst <= kTransportTol;
  }
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_induce(const std::string& sys_path, const std::string& sub_path, const Options& o) {
  const FundamentalSubtree fs = load_subgroup(sub_path, default_alphabet());
  const auto sub_sys = load_system(sys_path, &fs.subgroup_alphabet());
  const Induced ind = induce_system(*sub_sys, fs);
  const double defect = compatibility_defect(*ind.system);
  int total = 0;
  for (int d : sub_sys->dims()) total += d;
  json out{{"system", system_to_json(*ind.system)},
           {"defect", defect},
           {"dims", ind.system->dims()},
           {"dimension_law", ind.system->total_dim() == fs.index() * total}};
  bool ok = defect <= kTransportTol * form_scale(*ind.system) && ind.system->total_dim() == fs.index() * total;
  if (o.verify) {
    Rng rng(o.seed);
    double worst = 0.0;
    for (int k = 0; k < o.trials; ++k) {
      InducedFamily fam;
      for (std::size_t u = 0; u < fs.D().size(); ++u) {
        const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::max(1, o.depth)));
        fam.push_back(random_function(rng, sub_sys, d));
      }
      worst = std::max(worst, relative_gap(norm2(induce_function(ind, fs, fam)), family_norm2(fam)));
    }
    out["unitarity_defect"] = worst;
    ok = ok && worst <= kTransportTol;
  }
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : 1;
}

int cmd_act(const std::string& sys_path, const std::string& f_path, const Options& o) {
  const auto sys = load_system(sys_path);
  const MultFunc f = function_from_json(read_json_file(f_path), sys);
  const MultFunc g = act(sys->alphabet().parse(o.word), f);
  std::cout << function_to_json(g).dump(2) << "\n";
  return 0;
}

int cmd_norm(const std::string& sys_path, const std::string& f_path) {
  const auto sys = load_system(sys_path);
  const MultFunc f = function_from_json(read_json_file(f_path), sys);
  const double n0 = norm2(f);
  const double n1 = norm2(refine(f, f.depth() + 1));
  std::cout << json{{"norm2", n0}, {"depth", f.depth()}, {"refinement_gap", std::abs(n1 - n0)}}.dump(2) << "\n";
  return 0;
}

int cmd_coeff(const std::string& sys_path, const std::string& f_path, const std::string& g_path, const Options& o) {
  const auto sys = load_system(sys_path);
  const MultFunc f = function_from_json(read_json_file(f_path), sys);
  const MultFunc g = function_from_json(read_json_file(g_path), sys);
  const cplx c = matrix_coefficient(sys->alphabet().parse(o.word), f, g);
  std::cout << json{{"re", c.real()}, {"im", c.imag()}, {"abs", std::abs(c)}}.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix systems with inner products over free groups"};
  app.require_subcommand(1);
  Options o;
  std::string p1, p2, p3;

  auto tol_opt = [&](CLI::App* c) { c->add_option("--tol", o.tol, "acceptance tolerance"); };
  auto rand_opts = [&](CLI::App* c) {
    c->add_flag("--verify-unitary", o.verify, "check norm preservation on random functions");
    c->add_option("--trials", o.trials, "random trials");
    c->add_option("--depth", o.depth, "maximal depth of random functions");
    c->add_option("--seed", o.seed, "random seed");
  };

  auto* check = app.add_subcommand("check", "compatibility defect and PSD report");
  check->add_option("system", p1)->required();
  tol_opt(check);
  auto* pf = app.add_subcommand("pf", "Perron eigenvalue and eigen-tuple");
  pf->add_option("system", p1)->required();
  tol_opt(pf);
  auto* norm = app.add_subcommand("normalize", "rescale into a compatible system");
  norm->add_option("system", p1)->required();
  tol_opt(norm);
  auto* dec = app.add_subcommand("decompose", "split into irreducible compatible systems");
  dec->add_option("system", p1)->required();
  dec->add_option("--trials", o.trials, "randomised irreducibility trials");
  dec->add_option("--seed", o.seed, "random seed");
  auto* cg = app.add_subcommand("changegen", "transport a system to another free basis");
  cg->add_option("system", p1)->required();
  cg->add_option("genmap", p2)->required();
  rand_opts(cg);
  auto* sch = app.add_subcommand("schreier", "transversal, induced generators and D'");
  sch->add_option("subgroup", p1)->required();
  auto* res = app.add_subcommand("restrict", "restrict a system to a subgroup");
  res->add_option("system", p1)->required();
  res->add_option("subgroup", p2)->required();
  rand_opts(res);
  auto* ind = app.add_subcommand("induce", "induce a subgroup system to the whole group");
  ind->add_option("system", p1)->required();
  ind->add_option("subgroup", p2)->required();
  rand_opts(ind);
  auto* actc = app.add_subcommand("act", "translate a function by a group element");
  actc->add_option("system", p1)->required();
  actc->add_option("function", p2)->required();
  actc->add_option("--word", o.word, "group element")->required();
  auto* nrm = app.add_subcommand("norm", "squared norm of a function");
  nrm->add_option("system", p1)->required();
  nrm->add_option("function", p2)->required();
  auto* coeff = app.add_subcommand("coeff", "matrix coefficient <pi(x) f, g>");
  coeff->add_option("system", p1)->required();
  coeff->add_option("f", p2)->required();
  coeff->add_option("g", p3)->required();
  coeff->add_option("--word", o.word, "group element");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    if (*check) return cmd_check(p1, o);
    if (*pf) return cmd_pf(p1, o);
    if (*norm) return cmd_normalize(p1, o);
    if (*dec) return cmd_decompose(p1, o);
    if (*cg) return cmd_changegen(p1, p2, o);
    if (*sch) return cmd_schreier(p1);
    if (*res) return cmd_restrict(p1, p2, o);
    if (*ind) return cmd_induce(p1, p2, o);
    if (*actc) return cmd_act(p1, p2, o);
    if (*nrm) return cmd_norm(p1, p2);
    if (*coeff) return cmd_coeff(p1, p2, p3, o);
  } catch (const InputError& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const ConvergenceError& e) {
    std::cerr << json{{"error", "convergence"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << json{{"error", "validation"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << json{{"error", "resource"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 3;
}
