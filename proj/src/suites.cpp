#include "synalg/suites.hpp"

#include <algorithm>
#include <cmath>

#include "synalg/comparability.hpp"
#include "synalg/error.hpp"
#include "synalg/lattice.hpp"
#include "synalg/oml.hpp"
#include "synalg/random.hpp"
#include "synalg/spectral.hpp"
#include "synalg/symmetry.hpp"

namespace synalg {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"synalg", "lattice", "symmetry", "comparability",
                                                 "oml"};
  return names;
}

Report synalg_suite(std::uint64_t seed, const ModelShape& shape, int trials,
                    const Tolerances& tol) {
  Report r("synalg");
  Rng rng(seed);
  const Element one = Element::identity(shape);
  for (int t = 0; t < trials; ++t) {
    const Element a = random_element(shape, rng);
    const Element b = random_element(shape, rng);
    const double scale = 1.0 + order_unit_norm(a);

    r.check("polar", residual(a.data() - signum(a, tol).data() * abs(a).data()), tol.proj * scale);
    r.check("eigen.reconstruct", residual(eig_sym(a).reconstruct() - a.data()), tol.proj * scale);
    const SpectralResolution res = spectral_resolution(a, tol);
    r.check("resolution.reconstruct", distance(res.reconstruct(), a), tol.proj * scale);
    r.check("resolution.top", distance(res.at(res.upper()), one), tol.proj);
    bool ascending = true;
    for (std::size_t i = 1; i < res.jumps().size(); ++i) {
      ascending = ascending && res.jumps()[i - 1].lambda < res.jumps()[i].lambda;
    }
    r.expect("resolution.ascending", ascending);
    for (int k = 0; k < 20; ++k) {
      const double lambda = rng.uniform(res.lower() - 0.5, res.upper() + 0.5);
      r.check("resolution.formula", distance(res.at(lambda), spectral_projection_formula(a, lambda, tol)),
              tol.proj);
    }

    const Element ap = pos_part(a);
    const Element an = neg_part(a);
    r.check("parts.sum", distance(ap - an, a), tol.proj * scale);
    r.check("parts.orthogonal", residual(ap.data() * an.data()), tol.proj * scale * scale);
    r.check("abs.square", distance(quad(abs(a), one), quad(a, one)), tol.proj * scale * scale);
    r.expect("parts.positive", min_eigenvalue(ap) >= -tol.psd && min_eigenvalue(an) >= -tol.psd);

    const Element pos = random_positive(shape, rng);
    const Element root = sqrt_pos(pos, tol);
    r.check("sqrt.square", distance(quad(root, one), pos), tol.proj * (1.0 + order_unit_norm(pos)));
    r.expect("order.positive_shift", leq(a, a + pos, tol));

    const Projection c = carrier(a, tol);
    r.check("carrier.support", residual(c.data() * a.data() - a.data()), tol.proj * scale);

    const Element inv_in = a + (order_unit_norm(a) + 1.0) * one;
    r.check("inverse", residual(inv_in.data() * inverse(inv_in, tol).data() - one.data()),
            tol.proj * scale);

    r.check("jordan.commutative", distance(jordan(a, b), jordan(b, a)), tol.proj);
    const Projection p = random_projection(shape, rng);
    r.check("projection.idempotent", residual(p.data() * p.data() - p.data()), tol.proj);
    r.check("projection.compression_positive",
            std::max(0.0, -min_eigenvalue(quad(p, pos))), tol.psd);

    // Closure smoke test: partial sums of exp(u) lie in C(u) and converge to
    // the spectral exp(u), which again commutes with u.
    const Element u = a * (1.0 / scale);
    Matrix term = Matrix::Identity(shape.dim(), shape.dim());
    Matrix partial = term;
    double worst_comm = 0.0;
    for (int k = 1; k <= 25; ++k) {
      term = term * u.data() / static_cast<double>(k);
      partial += term;
      worst_comm = std::max(worst_comm, residual(partial * u.data() - u.data() * partial));
    }
    const Element limit = eig_sym(u).apply([](double x) { return std::exp(x); });
    r.check("commutant.partial_sums", worst_comm, tol.comm);
    r.check("commutant.limit", residual(partial - limit.data()), tol.proj);
    r.check("commutant.limit_commutes",
            residual(limit.data() * u.data() - u.data() * limit.data()), tol.comm);
  }

  // Off-block entries are rejected.
  if (shape.num_blocks() > 1) {
    Matrix m = Matrix::Zero(shape.dim(), shape.dim());
    m(0, shape.dim() - 1) = m(shape.dim() - 1, 0) = 1.0;
    bool rejected = false;
    try {
      Element bad(shape, m, tol);
    } catch (const Error& err) {
      rejected = err.kind() == ErrorKind::kOffBlock;
    }
    r.expect("element.off_block_rejected", rejected);
  }
  return r;
}

namespace {

std::uint64_t suite_seed(std::uint64_t seed, std::size_t index) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(index + 1);
}

}  // namespace

Report run_suite(const std::string& name, const SuiteConfig& config) {
  const auto& names = suite_names();
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(ErrorKind::kPrecondition, "unknown suite '" + name + "'");
  const std::uint64_t seed = suite_seed(config.seed, static_cast<std::size_t>(it - names.begin()));
  const int trials = std::max(1, config.trials);
  const ModelShape& shape = config.shape;
  const Tolerances& tol = config.tol;
  if (name == "synalg") return synalg_suite(seed, shape, trials, tol);
  if (name == "lattice") {
    Report r = lattice_suite(seed, shape, trials, tol);
    r.merge(gamma_props_suite(seed + 1, shape, trials, tol));
    return r;
  }
  if (name == "symmetry") return symmetry_suite(seed, shape, trials, tol);
  if (name == "comparability") return comparability_suite(seed, shape, trials, tol);
  return oml_suite(seed, std::max(1, trials / 5), tol);
}

std::vector<Report> run_suites(const SuiteConfig& config) {
  std::vector<std::string> selected;
  for (const std::string& s : config.suites) {
    if (s == "all") {
      selected = suite_names();
      break;
    }
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw Error(ErrorKind::kPrecondition, "unknown suite '" + s + "'");
    }
  }
  if (selected.empty()) {
    for (const std::string& s : suite_names()) {
      if (std::find(config.suites.begin(), config.suites.end(), s) != config.suites.end()) {
        selected.push_back(s);
      }
    }
  }
  std::vector<Report> out;
  for (const std::string& s : selected) out.push_back(run_suite(s, config));
  return out;
}

}  // namespace synalg
