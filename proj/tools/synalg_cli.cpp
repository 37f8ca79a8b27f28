// synalg: property suites, witness constructions and finite lattice tools.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "synalg/comparability.hpp"
#include "synalg/error.hpp"
#include "synalg/lattice.hpp"
#include "synalg/matrix_io.hpp"
#include "synalg/oml.hpp"
#include "synalg/spectral.hpp"
#include "synalg/suites.hpp"
#include "synalg/symmetry.hpp"

namespace {

using namespace synalg;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Accumulates CHECK lines for one command and decides the exit code.
struct Checks {
  Report report{"witness"};

  void check(const std::string& name, double residual, double tol) {
    report.check(name, residual, tol);
  }
  int finish() const {
    std::cout << report.to_text();
    return report.all_pass() ? 0 : kExitFail;
  }
};

void print_matrix(const std::string& label, const Element& a) {
  std::cout << "MATRIX " << label << "\n" << format_element(a);
}

std::string mask_text(const CentralProjection& c) {
  std::string out;
  for (bool b : c.mask()) out += b ? '1' : '0';
  return out;
}

void require_count(const std::vector<std::string>& files, std::size_t n, const std::string& what) {
  if (files.size() != n) {
    throw Error(ErrorKind::kPrecondition, what + " expects " + std::to_string(n) + " input files");
  }
}

// ---------------------------------------------------------------------------

int cmd_witness(const std::string& id, const std::vector<std::string>& files,
                const Tolerances& tol) {
  Checks c;
  auto proj = [&](std::size_t i) { return load_projection(files.at(i), tol); };
  auto sym = [&](std::size_t i) { return load_symmetry(files.at(i), tol); };
  auto sym_checks = [&](const Symmetry& s) {
    const Element one = Element::identity(s.shape());
    c.check("symmetry.square", residual(s.data() * s.data() - one.data()), tol.proj);
  };

  if (id == "efe-fef") {
    require_count(files, 2, id);
    const Projection e = proj(0), f = proj(1);
    const Symmetry s = exchange_efe_fef(e, f, tol);
    print_matrix("s", s);
    sym_checks(s);
    c.check("efe_fef", distance(quad(s, quad(e, f)), quad(f, e)), tol.proj);
  } else if (id == "sasaki-exchange" || id == "parallelogram") {
    require_count(files, 2, id);
    const Projection e = proj(0), f = proj(1);
    const ExchangeWitness w =
        id == "sasaki-exchange" ? sasaki_exchange(e, f, tol) : parallelogram_exchange(e, f, tol);
    print_matrix("s", w.s);
    print_matrix("e1", w.e);
    print_matrix("f1", w.f);
    sym_checks(w.s);
    c.check("exchange", w.residual(), tol.proj);
  } else if (id == "complement") {
    require_count(files, 2, id);
    const Projection e = proj(0), f = proj(1);
    const Symmetry s = complement_exchange(e, f, tol);
    print_matrix("s", s);
    sym_checks(s);
    c.check("exchange_with_orthocomplement", exchange_residual(s, e, ortho(f)), tol.proj);
  } else if (id == "strong-perspectivity") {
    require_count(files, 2, id);
    const Projection e = proj(0);
    const Symmetry s = sym(1);
    const ExchangeWitness w{s, e, conjugate(s, e)};
    const PerspectivityWitness pw = strong_perspectivity(w, tol);
    print_matrix("f", w.f);
    print_matrix("common_complement", pw.common_complement);
    print_matrix("ambient", *pw.ambient);
    c.check("common_complement", pw.residual(tol), tol.proj);
  } else if (id == "perspective-chain") {
    require_count(files, 3, id);
    const Projection e = proj(0), f = proj(1), p = proj(2);
    const auto [s1, s2] = perspective_to_chain(PerspectivityWitness{e, f, p, std::nullopt}, tol);
    print_matrix("s1", s1);
    print_matrix("s2", s2);
    c.check("chain", distance(quad(s2, quad(s1, e)), f), tol.proj);
    if (orthogonal(e, f, tol)) {
      const Symmetry s = orthogonal_chain_to_symmetry(e, f, s1, s2, tol);
      print_matrix("s", s);
      sym_checks(s);
      c.check("orthogonal_exchange", exchange_residual(s, e, f), tol.proj);
    }
  } else if (id == "finite-additivity") {
    require_count(files, 6, id);
    const ExchangeWitness w1{sym(2), proj(0), proj(1)};
    const ExchangeWitness w2{sym(5), proj(3), proj(4)};
    const Symmetry s = finite_additivity(w1, w2, tol);
    print_matrix("s", s);
    sym_checks(s);
    c.check("exchange",
            exchange_residual(s, Projection::from(w1.e.element() + w2.e.element(), tol),
                              Projection::from(w1.f.element() + w2.f.element(), tol)),
            tol.proj);
  } else if (id == "family-additivity") {
    if (files.empty() || files.size() % 3 != 0) {
      throw Error(ErrorKind::kPrecondition, id + " expects triples e f s");
    }
    std::vector<ExchangeWitness> ws;
    for (std::size_t i = 0; i < files.size(); i += 3) ws.push_back({sym(i + 2), proj(i), proj(i + 1)});
    const ModelShape shape = ws.front().e.shape();
    Element es = Element::zero(shape), fs = Element::zero(shape);
    for (const auto& w : ws) {
      es = es + w.e.element();
      fs = fs + w.f.element();
    }
    const Symmetry s = family_additivity(ws, shape, tol, &c.report);
    print_matrix("s", s);
    sym_checks(s);
    c.check("exchange",
            exchange_residual(s, Projection::from(es, tol), Projection::from(fs, tol)), tol.proj);
  } else if (id == "decomposition") {
    require_count(files, 2, id);
    const Projection e = proj(0), f = proj(1);
    const Decomposition d = orthogonal_decomposition(e, f, tol);
    print_matrix("e1", d.e1);
    print_matrix("e2", d.e2);
    print_matrix("f1", d.f1);
    print_matrix("f2", d.f2);
    print_matrix("s", d.s);
    c.check("decomposition", decomposition_residual(e, f, d, tol), tol.proj);
  } else if (id == "comparability") {
    require_count(files, 2, id);
    const ComparabilityResult r = generalized_comparability(proj(0), proj(1), tol);
    std::cout << "CENTRAL h " << mask_text(r.h) << "\n";
    print_matrix("s", r.s);
    sym_checks(r.s);
    c.check("eh_below_fh", r.lower_residual(), tol.psd);
    c.check("f1h_below_e1h", r.upper_residual(), tol.psd);
  } else if (id == "relative-center") {
    require_count(files, 2, id);
    const Projection p = proj(0), d = proj(1);
    const CentralProjection cc = relative_center_witness(p, d, tol);
    std::cout << "CENTRAL c " << mask_text(cc) << "\n";
    c.check("meet_is_d", distance(meet(cc, p, tol), d), tol.proj);
  } else {
    throw Error(ErrorKind::kPrecondition, "unknown witness '" + id + "'");
  }
  return c.finish();
}

int cmd_spectra(const std::string& file, const Tolerances& tol) {
  const Element a = load_element(file, tol);
  const EigenDecomposition eig = eig_sym(a);
  std::cout << "EIGENVALUES";
  for (int k = 0; k < eig.values.size(); ++k) {
    char buf[40];
    std::snprintf(buf, sizeof buf, " %.12g", eig.values(k));
    std::cout << buf;
  }
  std::cout << "\n";
  {
    char buf[80];
    std::snprintf(buf, sizeof buf, "BOUNDS L %.12g U %.12g\n", eig.values(0),
                  eig.values(eig.values.size() - 1));
    std::cout << buf;
  }
  const SpectralResolution res = spectral_resolution(a, tol);
  for (const auto& j : res.jumps()) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "JUMP %.12g rank %d\n", j.lambda, j.projection.rank());
    std::cout << buf;
  }
  print_matrix("signum", signum(a, tol));
  print_matrix("abs", abs(a));
  print_matrix("carrier", carrier(a, tol));
  Checks c;
  c.check("polar", residual(a.data() - signum(a, tol).data() * abs(a).data()), tol.proj);
  c.check("reconstruct", distance(res.reconstruct(), a), tol.proj);
  return c.finish();
}

int cmd_lattice(const std::vector<std::string>& files, bool matrices, const Tolerances& tol) {
  std::vector<Projection> ps;
  for (const auto& f : files) ps.push_back(load_projection(f, tol));
  const ModelShape shape = ps.front().shape();
  auto show = [&](const std::string& label, const Projection& p) {
    std::cout << "PROJECTION " << label << " rank " << p.rank() << " cover "
              << mask_text(central_cover(p, tol)) << "\n";
    if (matrices) print_matrix(label, p);
  };
  for (std::size_t i = 0; i < ps.size(); ++i) show("p" + std::to_string(i), ps[i]);
  show("join", join(ps, shape, tol));
  Projection m = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) m = meet(m, ps[i], tol);
  show("meet", m);
  if (ps.size() == 2) {
    const Projection& p = ps[0];
    const Projection& q = ps[1];
    show("sasaki_pq", sasaki(p, q, tol));
    show("sasaki_qp", sasaki(q, p, tol));
    std::cout << "COMPATIBLE " << (compatible(p, q, tol) ? "yes" : "no") << "\n";
    std::cout << "ORTHOGONAL " << (orthogonal(p, q, tol) ? "yes" : "no") << "\n";
    std::cout << "RELATED " << (related(p, q, tol) ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_equiv(const std::string& ef, const std::string& ff, const Tolerances& tol) {
  const Projection e = load_projection(ef, tol);
  const Projection f = load_projection(ff, tol);
  EquivalenceWitness w{e, f, {}};
  try {
    w = equal_rank_chain(e, f, tol);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::kRankMismatch) throw;
    std::cout << "VERDICT not-equivalent " << err.what() << "\n";
    return 0;
  }
  std::cout << "VERDICT equivalent chain-length " << w.chain.size() << "\n";
  for (std::size_t i = 0; i < w.chain.size(); ++i) {
    print_matrix("s" + std::to_string(i + 1), w.chain.syms[i]);
  }
  Checks c;
  c.check("chain", w.residual(), tol.proj);
  return c.finish();
}

int cmd_oml_verify(const std::string& file, int cap) {
  const FiniteOml l = FiniteOml::load(file);
  const OmlVerification v = verify_oml(l, cap);
  std::cout << v.report.to_text();
  std::cout << "ELEMENTS " << l.size() << "\n";
  std::cout << "DISTRIBUTIVE " << (v.distributive ? "yes" : "no") << "\n";
  std::cout << "MODULAR " << (v.modular ? "yes" : "no") << "\n";
  char buf[40];
  std::snprintf(buf, sizeof buf, "COVERAGE %.3f\n", v.coverage);
  std::cout << buf;
  std::cout << "OML " << (v.is_oml ? "yes" : "no") << "\n";
  return v.is_oml ? 0 : kExitFail;
}

int cmd_oml_report(const std::string& file, const std::string& pn, const std::string& qn) {
  const FiniteOml l = FiniteOml::load(file);
  const int p = l.index(pn);
  const int q = l.index(qn);
  const OmlElementPairReport r = oml_perspectivity(l, p, q);
  std::cout << "COMPATIBLE " << (r.compatible ? "yes" : "no") << "\n";
  std::cout << "SASAKI_PQ " << l.name(r.sasaki_pq) << "\n";
  std::cout << "SASAKI_QP " << l.name(r.sasaki_qp) << "\n";
  std::cout << "PERSPECTIVE " << (r.perspective ? l.name(*r.perspective) : "none") << "\n";
  std::cout << "STRONGLY_PERSPECTIVE "
            << (r.strongly_perspective ? l.name(*r.strongly_perspective) : "none") << "\n";
  std::cout << "CENTER";
  for (int c : oml_center(l)) std::cout << " " << l.name(c);
  std::cout << "\n";
  return 0;
}

int cmd_oml_gen(const std::string& kind, int n) {
  if (kind == "boolean") {
    std::cout << boolean_oml(n).to_text();
  } else if (kind == "mo" || kind == "moN") {
    std::cout << mo_oml(n).to_text();
  } else {
    throw Error(ErrorKind::kPrecondition, "unknown generator '" + kind + "'");
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void apply_tolerances(const std::vector<std::string>& overrides, Tolerances& tol) {
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--tol", "expected name=value");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--tol", "bad value in '" + item + "'");
    }
    if (!tol.set(name, value)) throw CLI::ValidationError("--tol", "unknown tolerance '" + name + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synaptic algebra toolkit: property suites, witnesses and finite lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a TOML/INI file");

  std::vector<std::string> tol_specs;
  app.add_option("--tol", tol_specs, "Tolerance override name=value (sym, proj, rank, psd, comm, inv, cluster)")
      ->envname("SYNALG_TOL");

  // verify
  SuiteConfig config;
  std::string shape_text = "2,3";
  std::string suites_text = "all";
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--seed", config.seed, "RNG seed")->envname("SYNALG_SEED");
  verify->add_option("--trials", config.trials, "Trials per suite")
      ->check(CLI::PositiveNumber)
      ->envname("SYNALG_TRIALS");
  verify->add_option("--shape", shape_text, "Block sizes, e.g. 2,3")->envname("SYNALG_SHAPE");
  verify->add_option("--suites", suites_text, "synalg,lattice,symmetry,comparability,oml or all")
      ->envname("SYNALG_SUITES");

  // witness
  std::string witness_id;
  std::vector<std::string> witness_files;
  auto* witness = app.add_subcommand("witness", "Build and check a witness construction");
  witness->add_option("id", witness_id,
                      "efe-fef, sasaki-exchange, parallelogram, complement, strong-perspectivity, "
                      "perspective-chain, finite-additivity, family-additivity, decomposition, "
                      "comparability, relative-center")
      ->required();
  witness->add_option("files", witness_files, "Matrix files")->required();

  std::string spectra_file;
  auto* spectra = app.add_subcommand("spectra", "Spectral data of an element");
  spectra->add_option("file", spectra_file)->required();

  std::vector<std::string> lattice_files;
  bool lattice_matrices = false;
  auto* lattice = app.add_subcommand("lattice", "Lattice operations on projections");
  lattice->add_option("files", lattice_files)->required();
  lattice->add_flag("--matrices", lattice_matrices, "Print result matrices");

  std::string e_file, f_file;
  auto* compare = app.add_subcommand("compare", "Generalized comparability of two projections");
  compare->add_option("e", e_file)->required();
  compare->add_option("f", f_file)->required();
  std::string ee_file, ef_file;
  auto* equiv = app.add_subcommand("equiv", "Decide equivalence and print a symmetry chain");
  equiv->add_option("e", ee_file)->required();
  equiv->add_option("f", ef_file)->required();

  auto* oml = app.add_subcommand("oml", "Finite orthomodular lattices");
  oml->require_subcommand(1);
  std::string oml_file;
  int oml_cap = 64;
  auto* oml_verify = oml->add_subcommand("verify", "Check the axioms");
  oml_verify->add_option("file", oml_file)->required();
  oml_verify->add_option("--cap", oml_cap, "Exhaustive check limit")->check(CLI::PositiveNumber);
  std::string p_name, q_name;
  auto* oml_report = oml->add_subcommand("report", "Compatibility, Sasaki and perspectivity");
  oml_report->add_option("file", oml_file)->required();
  oml_report->add_option("p", p_name)->required();
  oml_report->add_option("q", q_name)->required();
  std::string gen_kind;
  int gen_n = 0;
  auto* oml_gen = oml->add_subcommand("gen", "Generate a lattice file");
  oml_gen->add_option("kind", gen_kind, "boolean or mo")->required();
  oml_gen->add_option("n", gen_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Tolerances tol;
    apply_tolerances(tol_specs, tol);
    if (*verify) {
      config.shape = ModelShape::parse(shape_text);
      config.suites = split_list(suites_text);
      config.tol = tol;
      for (const std::string& s : config.suites) {
        if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
          std::cerr << "error: unknown suite '" << s << "'\n";
          return kExitUsage;
        }
      }
      bool ok = true;
      std::size_t checks = 0, failed = 0;
      for (const Report& r : run_suites(config)) {
        std::cout << r.to_text();
        for (const auto& line : r.lines()) {
          ++checks;
          if (!line.pass()) ++failed;
        }
        ok = ok && r.all_pass();
      }
      std::cout << "SUMMARY " << checks << " checks " << failed << " failed\n";
      return ok ? 0 : kExitFail;
    }
    if (*witness) return cmd_witness(witness_id, witness_files, tol);
    if (*spectra) return cmd_spectra(spectra_file, tol);
    if (*lattice) return cmd_lattice(lattice_files, lattice_matrices, tol);
    if (*compare) return cmd_witness("comparability", {e_file, f_file}, tol);
    if (*equiv) return cmd_equiv(ee_file, ef_file, tol);
    if (*oml_verify) return cmd_oml_verify(oml_file, oml_cap);
    if (*oml_report) return cmd_oml_report(oml_file, p_name, q_name);
    if (*oml_gen) return cmd_oml_gen(gen_kind, gen_n);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "ERROR " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
