#include "synalg/oml.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "synalg/error.hpp"
#include "synalg/lattice.hpp"
#include "synalg/random.hpp"
#include "synalg/symmetry.hpp"

namespace synalg {

FiniteOml::FiniteOml(std::vector<std::string> names, const std::vector<std::pair<int, int>>& leq,
                     std::vector<int> ortho, std::optional<int> top, std::optional<int> bottom)
    : names_(std::move(names)), ortho_(std::move(ortho)) {
  const int n = size();
  if (n == 0) throw Error(ErrorKind::kParse, "lattice has no elements");
  if (static_cast<int>(ortho_.size()) != n) {
    throw Error(ErrorKind::kParse, "orthocomplement table has the wrong size");
  }
  for (int a = 0; a < n; ++a) {
    if (ortho_[static_cast<std::size_t>(a)] < 0 || ortho_[static_cast<std::size_t>(a)] >= n) {
      throw Error(ErrorKind::kParse, "no orthocomplement for " + name(a));
    }
  }
  leq_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), false);
  for (int a = 0; a < n; ++a) leq_[idx(a, a)] = true;
  for (const auto& [a, b] : leq) leq_[idx(a, b)] = true;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!leq_[idx(i, k)]) continue;
      for (int j = 0; j < n; ++j) {
        if (leq_[idx(k, j)]) leq_[idx(i, j)] = true;
      }
    }
  }

  auto extreme = [&](bool greatest) -> int {
    for (int c = 0; c < n; ++c) {
      bool all = true;
      for (int a = 0; a < n && all; ++a) all = greatest ? leq_[idx(a, c)] : leq_[idx(c, a)];
      if (all) return c;
    }
    throw Error(ErrorKind::kParse, greatest ? "no greatest element" : "no least element");
  };
  top_ = top ? *top : extreme(true);
  bottom_ = bottom ? *bottom : extreme(false);

  meet_.assign(leq_.size(), -1);
  join_.assign(leq_.size(), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (auto m = bound(a, b, true)) meet_[idx(a, b)] = *m;
      if (auto j = bound(a, b, false)) join_[idx(a, b)] = *j;
    }
  }
}

std::optional<int> FiniteOml::bound(int a, int b, bool lower) const {
  const int n = size();
  std::vector<int> cands;
  for (int c = 0; c < n; ++c) {
    const bool ok = lower ? (leq(c, a) && leq(c, b)) : (leq(a, c) && leq(b, c));
    if (ok) cands.push_back(c);
  }
  for (int g : cands) {
    bool best = true;
    for (int c : cands) {
      if (!(lower ? leq(c, g) : leq(g, c))) {
        best = false;
        break;
      }
    }
    if (best) return g;
  }
  return std::nullopt;
}

std::optional<int> FiniteOml::try_meet(int a, int b) const {
  const int m = meet_[idx(a, b)];
  return m < 0 ? std::nullopt : std::optional<int>(m);
}

std::optional<int> FiniteOml::try_join(int a, int b) const {
  const int j = join_[idx(a, b)];
  return j < 0 ? std::nullopt : std::optional<int>(j);
}

int FiniteOml::meet(int a, int b) const {
  if (auto m = try_meet(a, b)) return *m;
  throw Error(ErrorKind::kPrecondition, "no meet of " + name(a) + " and " + name(b));
}

int FiniteOml::join(int a, int b) const {
  if (auto j = try_join(a, b)) return *j;
  throw Error(ErrorKind::kPrecondition, "no join of " + name(a) + " and " + name(b));
}

int FiniteOml::meet(std::span<const int> xs) const {
  int out = top_;
  for (int x : xs) out = meet(out, x);
  return out;
}

int FiniteOml::join(std::span<const int> xs) const {
  int out = bottom_;
  for (int x : xs) out = join(out, x);
  return out;
}

int FiniteOml::index(std::string_view nm) const {
  for (int a = 0; a < size(); ++a) {
    if (names_[static_cast<std::size_t>(a)] == nm) return a;
  }
  throw Error(ErrorKind::kPrecondition, "unknown element '" + std::string(nm) + "'");
}

FiniteOml FiniteOml::parse(std::string_view text) {
  std::vector<std::string> names;
  std::map<std::string, int, std::less<>> ids;
  std::vector<std::pair<int, int>> leq;
  std::vector<std::pair<int, int>> orthos;
  std::optional<int> top;
  std::optional<int> bottom;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto lookup = [&](const std::string& nm) {
    auto it = ids.find(nm);
    if (it == ids.end()) fail("undeclared element '" + nm + "'");
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "elem") {
      if (tok.size() != 2) fail("expected 'elem <name>'");
      if (ids.count(tok[1]) != 0) fail("duplicate element '" + tok[1] + "'");
      ids.emplace(tok[1], static_cast<int>(names.size()));
      names.push_back(tok[1]);
    } else if (kw == "leq" || kw == "ortho") {
      if (tok.size() != 3) fail("expected '" + kw + " <a> <b>'");
      (kw == "leq" ? leq : orthos).emplace_back(lookup(tok[1]), lookup(tok[2]));
    } else if (kw == "top" || kw == "bottom") {
      if (tok.size() != 2) fail("expected '" + kw + " <name>'");
      (kw == "top" ? top : bottom) = lookup(tok[1]);
    } else {
      fail("unknown statement '" + kw + "'");
    }
  }
  std::vector<int> ortho(names.size(), -1);
  for (const auto& [a, b] : orthos) ortho[static_cast<std::size_t>(a)] = b;
  for (const auto& [a, b] : orthos) {
    if (ortho[static_cast<std::size_t>(b)] < 0) ortho[static_cast<std::size_t>(b)] = a;
  }
  return FiniteOml(std::move(names), leq, std::move(ortho), top, bottom);
}

FiniteOml FiniteOml::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string FiniteOml::to_text() const {
  std::string out;
  for (const std::string& nm : names_) out += "elem " + nm + "\n";
  for (int a = 0; a < size(); ++a) {
    for (int b = 0; b < size(); ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covers = true;
      for (int c = 0; c < size() && covers; ++c) {
        if (c != a && c != b && leq(a, c) && leq(c, b)) covers = false;
      }
      if (covers) out += "leq " + name(a) + " " + name(b) + "\n";
    }
  }
  for (int a = 0; a < size(); ++a) out += "ortho " + name(a) + " " + name(ortho(a)) + "\n";
  out += "top " + name(top_) + "\n";
  out += "bottom " + name(bottom_) + "\n";
  return out;
}

// ---------------------------------------------------------------------------

FiniteOml boolean_oml(int n) {
  if (n < 1 || n > 10) throw Error(ErrorKind::kPrecondition, "boolean generator needs 1 <= n <= 10");
  const int count = 1 << n;
  std::vector<std::string> names;
  for (int m = 0; m < count; ++m) {
    if (m == 0) {
      names.push_back("0");
    } else if (m == count - 1) {
      names.push_back("1");
    } else {
      std::string nm;
      for (int i = 0; i < n; ++i) {
        if (m & (1 << i)) nm += static_cast<char>('a' + i);
      }
      names.push_back(nm);
    }
  }
  std::vector<std::pair<int, int>> leq;
  std::vector<int> ortho;
  for (int a = 0; a < count; ++a) {
    ortho.push_back((count - 1) ^ a);
    for (int b = 0; b < count; ++b) {
      if ((a & b) == a) leq.emplace_back(a, b);
    }
  }
  return FiniteOml(std::move(names), leq, std::move(ortho), count - 1, 0);
}

FiniteOml mo_oml(int n) {
  if (n < 1 || n > 26) throw Error(ErrorKind::kPrecondition, "MO generator needs 1 <= n <= 26");
  std::vector<std::string> names = {"0", "1"};
  std::vector<int> ortho = {1, 0};
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) {
    const std::string a(1, static_cast<char>('a' + i));
    const int x = static_cast<int>(names.size());
    names.push_back(a);
    names.push_back(a + "'");
    ortho.push_back(x + 1);
    ortho.push_back(x);
  }
  for (int x = 2; x < static_cast<int>(names.size()); ++x) {
    leq.emplace_back(0, x);
    leq.emplace_back(x, 1);
  }
  leq.emplace_back(0, 1);
  return FiniteOml(std::move(names), leq, std::move(ortho), 1, 0);
}

FiniteOml product_oml(const FiniteOml& l, const FiniteOml& m) {
  const int ml = m.size();
  auto id = [ml](int i, int j) { return i * ml + j; };
  std::vector<std::string> names;
  std::vector<int> ortho;
  for (int i = 0; i < l.size(); ++i) {
    for (int j = 0; j < ml; ++j) {
      names.push_back(l.name(i) + "|" + m.name(j));
      ortho.push_back(id(l.ortho(i), m.ortho(j)));
    }
  }
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < l.size(); ++i) {
    for (int j = 0; j < ml; ++j) {
      for (int i2 = 0; i2 < l.size(); ++i2) {
        for (int j2 = 0; j2 < ml; ++j2) {
          if (l.leq(i, i2) && m.leq(j, j2)) leq.emplace_back(id(i, j), id(i2, j2));
        }
      }
    }
  }
  return FiniteOml(std::move(names), leq, std::move(ortho), id(l.top(), m.top()),
                   id(l.bottom(), m.bottom()));
}

// ---------------------------------------------------------------------------

namespace {

// Calls f(a, b, c) on every triple, or on a deterministic sample when the
// lattice exceeds the cap. Returns the covered fraction.
template <typename F>
double for_triples(int n, int cap, F f) {
  if (n <= cap) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) f(a, b, c);
    return 1.0;
  }
  Rng rng(0x5eed);
  const long total = static_cast<long>(n) * n * n;
  const long samples = static_cast<long>(cap) * cap * cap;
  for (long k = 0; k < samples; ++k) {
    f(rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1));
  }
  return static_cast<double>(samples) / static_cast<double>(total);
}

}  // namespace

OmlVerification verify_oml(const FiniteOml& l, int cap) {
  OmlVerification v;
  Report& r = v.report;
  const int n = l.size();

  bool antisymmetric = true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (l.leq(a, b) && l.leq(b, a)) antisymmetric = false;
  r.expect("partial_order", antisymmetric);

  bool bounded = true;
  for (int a = 0; a < n; ++a) bounded = bounded && l.leq(l.bottom(), a) && l.leq(a, l.top());
  r.expect("bounded", bounded);

  bool lattice = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!l.try_meet(a, b) || !l.try_join(a, b)) lattice = false;
  r.expect("lattice", lattice);

  bool involutive = true;
  for (int a = 0; a < n; ++a) involutive = involutive && l.ortho(l.ortho(a)) == a;
  r.expect("ortho_involutive", involutive);

  bool antitone = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.leq(a, b) && !l.leq(l.ortho(b), l.ortho(a))) antitone = false;
  r.expect("ortho_antitone", antitone);

  if (!lattice) {
    v.is_oml = false;
    return v;
  }

  bool complement = true;
  for (int a = 0; a < n; ++a) {
    complement = complement && l.meet(a, l.ortho(a)) == l.bottom() &&
                 l.join(a, l.ortho(a)) == l.top();
  }
  r.expect("ortho_complement", complement);

  bool orthomodular = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.leq(a, b) && l.join(a, l.meet(b, l.ortho(a))) != b) orthomodular = false;
  r.expect("orthomodular", orthomodular);

  // De Morgan for subsets of size 1..3 (triples cover pairs and singletons
  // through repeated entries).
  bool de_morgan = true;
  bool distributive = true;
  bool modular = true;
  v.coverage = for_triples(n, cap, [&](int a, int b, int c) {
    const int xs[3] = {a, b, c};
    const int os[3] = {l.ortho(a), l.ortho(b), l.ortho(c)};
    if (l.ortho(l.join(xs)) != l.meet(os) || l.ortho(l.meet(xs)) != l.join(os)) {
      de_morgan = false;
    }
    if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) distributive = false;
    if (l.leq(a, c) && l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), c)) modular = false;
  });
  r.expect("de_morgan", de_morgan);

  v.is_oml = r.all_pass();
  v.distributive = distributive;
  v.modular = modular;
  return v;
}

int oml_sasaki(const FiniteOml& l, int p, int q) {
  return l.meet(p, l.join(l.ortho(p), q));
}

bool oml_compatible(const FiniteOml& l, int p, int q) {
  return l.join(l.meet(p, q), l.meet(p, l.ortho(q))) == p;
}

std::vector<int> oml_center(const FiniteOml& l) {
  std::vector<int> out;
  for (int c = 0; c < l.size(); ++c) {
    bool central = true;
    for (int a = 0; a < l.size() && central; ++a) central = oml_compatible(l, c, a);
    if (central) out.push_back(c);
  }
  return out;
}

Report sasaki_properties_check(const FiniteOml& l) {
  Report r("oml");
  const int n = l.size();
  for (int p = 0; p < n; ++p) {
    r.expect("sasaki.zero", oml_sasaki(l, p, l.bottom()) == l.bottom());
    r.expect("sasaki.self", oml_sasaki(l, p, p) == p);
    for (int q = 0; q < n; ++q) {
      const int phi = oml_sasaki(l, p, q);
      r.expect("sasaki.idempotent", oml_sasaki(l, p, phi) == phi);
      const bool comp = oml_compatible(l, p, q);
      r.expect("sasaki.compatibility",
               comp == (phi == l.meet(p, q)) && comp == l.leq(phi, q));
      r.expect("sasaki.orthogonality", l.orthogonal(p, q) == (phi == l.bottom()));
      for (int x = 0; x < n; ++x) {
        r.expect("sasaki.adjoint",
                 l.orthogonal(phi, x) == l.orthogonal(q, oml_sasaki(l, p, x)));
        if (l.leq(q, x)) r.expect("sasaki.monotone", l.leq(phi, oml_sasaki(l, p, x)));
        r.expect("sasaki.joins",
                 oml_sasaki(l, p, l.join(q, x)) == l.join(phi, oml_sasaki(l, p, x)));
      }
    }
  }
  return r;
}

FiniteOml oml_interval(const FiniteOml& l, int p) {
  std::vector<int> members;
  std::vector<int> pos(static_cast<std::size_t>(l.size()), -1);
  for (int q = 0; q < l.size(); ++q) {
    if (l.leq(q, p)) {
      pos[static_cast<std::size_t>(q)] = static_cast<int>(members.size());
      members.push_back(q);
    }
  }
  std::vector<std::string> names;
  std::vector<int> ortho;
  std::vector<std::pair<int, int>> leq;
  for (int q : members) {
    names.push_back(l.name(q));
    ortho.push_back(pos[static_cast<std::size_t>(l.meet(l.ortho(q), p))]);
    for (int x : members) {
      if (l.leq(q, x)) leq.emplace_back(pos[static_cast<std::size_t>(q)], pos[static_cast<std::size_t>(x)]);
    }
  }
  return FiniteOml(std::move(names), leq, std::move(ortho), pos[static_cast<std::size_t>(p)],
                   pos[static_cast<std::size_t>(l.bottom())]);
}

Report interval_sasaki_check(const FiniteOml& l, int p) {
  Report r("oml");
  const FiniteOml in = oml_interval(l, p);
  r.expect("interval.is_oml", verify_oml(in).is_oml);
  for (int q = 0; q < in.size(); ++q) {
    for (int x = 0; x < in.size(); ++x) {
      const int lq = l.index(in.name(q));
      const int lx = l.index(in.name(x));
      r.expect("interval.sasaki_restriction",
               l.index(in.name(oml_sasaki(in, q, x))) == oml_sasaki(l, lq, lx));
      r.expect("interval.sasaki_relative_ortho",
               l.index(in.name(oml_sasaki(in, q, in.ortho(x)))) ==
                   oml_sasaki(l, lq, l.ortho(lx)));
    }
  }
  return r;
}

namespace {

std::vector<int> common_complements(const FiniteOml& l, int a, int b, int top) {
  std::vector<int> out;
  for (int w = 0; w < l.size(); ++w) {
    if (!l.leq(w, top)) continue;
    if (l.join(a, w) == top && l.join(b, w) == top && l.meet(a, w) == l.bottom() &&
        l.meet(b, w) == l.bottom()) {
      out.push_back(w);
    }
  }
  return out;
}

bool is_common_complement(const FiniteOml& l, int a, int b, int w, int top) {
  return l.leq(w, top) && l.join(a, w) == top && l.join(b, w) == top &&
         l.meet(a, w) == l.bottom() && l.meet(b, w) == l.bottom();
}

}  // namespace

std::optional<int> common_complement(const FiniteOml& l, int a, int b, int top) {
  if (!l.leq(a, top) || !l.leq(b, top)) return std::nullopt;
  const std::vector<int> all = common_complements(l, a, b, top);
  if (all.empty()) return std::nullopt;
  return all.front();
}

OmlElementPairReport oml_perspectivity(const FiniteOml& l, int p, int q) {
  OmlElementPairReport rep;
  rep.compatible = oml_compatible(l, p, q);
  rep.sasaki_pq = oml_sasaki(l, p, q);
  rep.sasaki_qp = oml_sasaki(l, q, p);
  rep.perspective = common_complement(l, p, q, l.top());
  rep.strongly_perspective = common_complement(l, p, q, l.join(p, q));
  return rep;
}

Report relcompl_lift_check(const FiniteOml& l) {
  Report r("oml");
  for (int p = 0; p < l.size(); ++p) {
    for (int e = 0; e < l.size(); ++e) {
      if (!l.leq(e, p)) continue;
      for (int f = 0; f < l.size(); ++f) {
        if (!l.leq(f, p)) continue;
        for (int w : common_complements(l, e, f, p)) {
          r.expect("relative_complement_lift",
                   is_common_complement(l, e, f, l.join(w, l.ortho(p)), l.top()));
        }
      }
    }
  }
  return r;
}

Report parallelogram_check(const FiniteOml& l) {
  Report r("oml");
  for (int p = 0; p < l.size(); ++p) {
    for (int q = 0; q < l.size(); ++q) {
      const int a = oml_sasaki(l, p, q);
      const int b = oml_sasaki(l, q, p);
      r.expect("parallelogram", common_complement(l, a, b, l.join(a, b)).has_value());
      const int c = l.meet(l.join(p, q), l.ortho(p));
      const int d = l.meet(q, l.ortho(l.meet(p, q)));
      r.expect("parallelogram.orthocomplement_form",
               common_complement(l, c, d, l.join(c, d)).has_value());
    }
  }
  return r;
}

OmlSixPiece oml_six_piece(const FiniteOml& l, int p, int q, int e, int f) {
  if (!l.orthogonal(p, q) || !l.orthogonal(e, f) || l.join(p, q) != l.join(e, f)) {
    throw Error(ErrorKind::kPrecondition, "six-piece decomposition needs p _|_ q, e _|_ f and "
                                          "p v q = e v f");
  }
  OmlSixPiece d{};
  d.p2 = l.meet(p, f);
  d.q1 = l.meet(q, e);
  d.p1 = l.meet(p, l.ortho(d.p2));
  d.q2 = l.meet(q, l.ortho(d.q1));
  d.e1 = l.meet(e, l.ortho(d.q1));
  d.f2 = l.meet(f, l.ortho(d.p2));
  const int pq1 = l.join(d.p1, d.q1);
  const int pq2 = l.join(d.p2, d.q2);
  bool found1 = false;
  bool found2 = false;
  for (int w : common_complements(l, d.p1, d.e1, l.join(d.p1, d.e1))) {
    if (is_common_complement(l, pq1, e, w, l.join(pq1, e))) {
      d.v1 = w;
      found1 = true;
      break;
    }
  }
  for (int w : common_complements(l, d.q2, d.f2, l.join(d.q2, d.f2))) {
    if (is_common_complement(l, pq2, f, w, l.join(pq2, f))) {
      d.v2 = w;
      found2 = true;
      break;
    }
  }
  if (!found1 || !found2) {
    throw Error(ErrorKind::kNoConvergence, "no common complement serves the composite pair");
  }
  return d;
}

Report six_piece_exhaustive(const FiniteOml& l, int* count) {
  Report r("oml");
  const int n = l.size();
  int seen = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (!l.orthogonal(p, q)) continue;
      const int k = l.join(p, q);
      for (int e = 0; e < n; ++e)
        for (int f = 0; f < n; ++f) {
          if (!l.orthogonal(e, f) || l.join(e, f) != k) continue;
          ++seen;
          const int p2 = l.meet(p, f);
          const int q1 = l.meet(q, e);
          const int p1 = l.meet(p, l.ortho(p2));
          const int q2 = l.meet(q, l.ortho(q1));
          const int e1 = l.meet(e, l.ortho(q1));
          const int f2 = l.meet(f, l.ortho(p2));
          const std::vector<int> v1s = common_complements(l, p1, e1, l.join(p1, e1));
          const std::vector<int> v2s = common_complements(l, q2, f2, l.join(q2, f2));
          r.expect("six_piece.p1_e1_strongly_perspective", !v1s.empty());
          r.expect("six_piece.q2_f2_strongly_perspective", !v2s.empty());
          r.expect("six_piece.p_split", l.orthogonal(p1, p2) && l.join(p1, p2) == p);
          r.expect("six_piece.e_split", l.orthogonal(q1, e1) && l.join(q1, e1) == e);
          r.expect("six_piece.f_split", l.orthogonal(p2, f2) && l.join(p2, f2) == f);
          r.expect("six_piece.q_split", l.orthogonal(q1, q2) && l.join(q1, q2) == q);
          r.expect("six_piece.p1_perp_q1", l.orthogonal(p1, q1));
          r.expect("six_piece.p2_perp_q2", l.orthogonal(p2, q2));
          const int pq1 = l.join(p1, q1);
          const int pq2 = l.join(p2, q2);
          for (int v : v1s) {
            r.expect("six_piece.p1q1_e_strongly_perspective",
                     is_common_complement(l, pq1, e, v, l.join(pq1, e)));
          }
          for (int v : v2s) {
            r.expect("six_piece.p2q2_f_strongly_perspective",
                     is_common_complement(l, pq2, f, v, l.join(pq2, f)));
          }
          r.expect("six_piece.interval_sasaki",
                   oml_sasaki(l, p, e) == p1 && oml_sasaki(l, e, p) == e1);
        }
    }
  if (count != nullptr) *count = seen;
  return r;
}

Report oml_structure_check(const FiniteOml& l) {
  Report r("oml");
  const int n = l.size();

  // Effect algebra view: orthosum on orthogonal pairs.
  for (int a = 0; a < n; ++a) {
    int supplements = 0;
    for (int b = 0; b < n; ++b) {
      if (l.orthogonal(a, b) && l.join(a, b) == l.top()) {
        ++supplements;
        r.expect("effect.supplement_is_ortho", b == l.ortho(a));
      }
      bool induced = false;
      for (int c = 0; c < n && !induced; ++c) induced = l.orthogonal(a, c) && l.join(a, c) == b;
      r.expect("effect.order", induced == l.leq(a, b));
    }
    r.expect("effect.unique_supplement", supplements == 1);
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (oml_compatible(l, a, b) && oml_compatible(l, a, c)) {
          r.expect("compatibility.joins", oml_compatible(l, a, l.join(b, c)));
          r.expect("compatibility.meets", oml_compatible(l, a, l.meet(b, c)));
        }
        const bool rule = (oml_compatible(l, a, b) && oml_compatible(l, a, c)) ||
                          (oml_compatible(l, b, a) && oml_compatible(l, b, c)) ||
                          (oml_compatible(l, c, a) && oml_compatible(l, c, b));
        if (rule) {
          r.expect("distributive_triple",
                   l.meet(l.join(a, b), c) == l.join(l.meet(a, c), l.meet(b, c)) &&
                       l.join(l.meet(a, b), c) == l.meet(l.join(a, c), l.join(b, c)));
        }
      }

  const std::vector<int> center = oml_center(l);
  for (int c : center) {
    r.expect("center.ortho_closed",
             std::find(center.begin(), center.end(), l.ortho(c)) != center.end());
    for (int d : center) {
      r.expect("center.lattice_closed",
               std::find(center.begin(), center.end(), l.meet(c, d)) != center.end() &&
                   std::find(center.begin(), center.end(), l.join(c, d)) != center.end());
      for (int x : center) {
        r.expect("center.distributive",
                 l.meet(c, l.join(d, x)) == l.join(l.meet(c, d), l.meet(c, x)));
      }
    }
  }

  // c ^ p is central in [0, p].
  for (int p = 0; p < n; ++p) {
    const FiniteOml in = oml_interval(l, p);
    std::vector<int> in_center;
    for (int d : oml_center(in)) in_center.push_back(l.index(in.name(d)));
    for (int c : center) {
      const int cp = l.meet(c, p);
      r.expect("center.interval",
               std::find(in_center.begin(), in_center.end(), cp) != in_center.end());
    }
  }
  return r;
}

namespace {

bool relative_center_property(const FiniteOml& l) {
  const std::vector<int> center = oml_center(l);
  for (int p = 0; p < l.size(); ++p) {
    const FiniteOml in = oml_interval(l, p);
    for (int d : oml_center(in)) {
      const int ld = l.index(in.name(d));
      bool lifted = false;
      for (int c : center) lifted = lifted || l.meet(c, p) == ld;
      if (!lifted) return false;
    }
  }
  return true;
}

}  // namespace

ProjectionOml oml_from_projections(std::span<const Projection> ps, int cap,
                                   const Tolerances& tol) {
  if (ps.empty()) throw Error(ErrorKind::kPrecondition, "no projections to close");
  const ModelShape shape = ps[0].shape();
  std::vector<Projection> members = {Projection::zero(shape), Projection::identity(shape)};
  auto find_or_add = [&](const Projection& x) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (same(members[i], x, tol)) return static_cast<int>(i);
    }
    if (static_cast<int>(members.size()) >= cap) {
      throw Error(ErrorKind::kCapExceeded,
                  "closure exceeds " + std::to_string(cap) + " projections");
    }
    members.push_back(x);
    return static_cast<int>(members.size()) - 1;
  };
  std::vector<int> inputs;
  for (const Projection& p : ps) {
    require_same_shape(p.shape(), shape);
    inputs.push_back(find_or_add(p));
  }
  for (std::size_t done = 0; done < members.size(); ++done) {
    find_or_add(ortho(members[done]));
    for (std::size_t j = 0; j <= done; ++j) {
      const Projection a = members[done];
      const Projection b = members[j];
      find_or_add(join(a, b, tol));
      find_or_add(meet(a, b, tol));
    }
  }
  const int n = static_cast<int>(members.size());
  std::vector<std::string> names;
  std::vector<int> orthos;
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "0" : i == 1 ? "1" : "m" + std::to_string(i));
    orthos.push_back(find_or_add(ortho(members[static_cast<std::size_t>(i)])));
    for (int j = 0; j < n; ++j) {
      if (below(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)], tol)) {
        leq.emplace_back(i, j);
      }
    }
  }
  return ProjectionOml{FiniteOml(std::move(names), leq, std::move(orthos), 1, 0),
                       std::move(members), std::move(inputs)};
}

// ---------------------------------------------------------------------------

namespace {

void merge_prefixed(Report& into, const Report& from, const std::string& prefix) {
  for (const ReportLine& line : from.lines()) {
    into.check(prefix + "." + line.check, line.residual, line.tolerance);
  }
}

}  // namespace

Report oml_suite(std::uint64_t seed, int trials, const Tolerances& tol) {
  Report r("oml");
  struct Fixture {
    std::string name;
    FiniteOml l;
    bool distributive;
  };
  std::vector<Fixture> fixtures;
  for (int n = 1; n <= 4; ++n) fixtures.push_back({"boolean" + std::to_string(n), boolean_oml(n), true});
  fixtures.push_back({"mo2", mo_oml(2), false});
  fixtures.push_back({"mo3", mo_oml(3), false});
  fixtures.push_back({"2xmo3", product_oml(boolean_oml(1), mo_oml(3)), false});

  for (const Fixture& fx : fixtures) {
    const OmlVerification v = verify_oml(fx.l);
    merge_prefixed(r, v.report, fx.name);
    r.expect(fx.name + ".distributive_flag", v.distributive == fx.distributive);
    r.expect(fx.name + ".modular_flag", v.modular);
    merge_prefixed(r, sasaki_properties_check(fx.l), fx.name);
    Report intervals("oml");
    for (int p = 0; p < fx.l.size(); ++p) intervals.merge(interval_sasaki_check(fx.l, p));
    merge_prefixed(r, intervals, fx.name);
    merge_prefixed(r, oml_structure_check(fx.l), fx.name);
    merge_prefixed(r, relcompl_lift_check(fx.l), fx.name);
    merge_prefixed(r, parallelogram_check(fx.l), fx.name);
    r.expect(fx.name + ".relative_center", relative_center_property(fx.l));

    // Perspectivity by search against the boolean rule.
    if (fx.distributive) {
      bool rule = true;
      for (int p = 0; p < fx.l.size(); ++p)
        for (int q = 0; q < fx.l.size(); ++q)
          rule = rule && (oml_perspectivity(fx.l, p, q).perspective.has_value() == (p == q));
      r.expect(fx.name + ".perspective_iff_equal", rule);
    }

    // Every fixture is modular, so perspectivity is transitive on it.
    const int n = fx.l.size();
    std::vector<char> persp(static_cast<std::size_t>(n * n));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        persp[static_cast<std::size_t>(p * n + q)] =
            oml_perspectivity(fx.l, p, q).perspective.has_value();
    bool transitive = true;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int s = 0; s < n; ++s)
          if (persp[static_cast<std::size_t>(p * n + q)] && persp[static_cast<std::size_t>(q * n + s)])
            transitive = transitive && persp[static_cast<std::size_t>(p * n + s)];
    r.expect(fx.name + ".perspective_transitive", transitive);
  }

  const FiniteOml& mo2 = fixtures[4].l;
  const int a = mo2.index("a");
  const int b = mo2.index("b");
  r.expect("mo2.sasaki_incompatible_atoms", oml_sasaki(mo2, a, b) == a);
  r.expect("mo2.atoms_perspective", oml_perspectivity(mo2, a, b).perspective.has_value());

  int quadruples = 0;
  merge_prefixed(r, six_piece_exhaustive(fixtures.back().l, &quadruples), "2xmo3");
  r.expect("2xmo3.sixteen_elements", fixtures.back().l.size() == 16);
  r.expect("2xmo3.six_piece_quadruples", quadruples > 0);

  // The same decomposition computed in the projection lattice of a 3x3 model
  // and in the finite lattice its pieces generate.
  Rng rng(seed);
  const ModelShape three({3});
  for (int t = 0; t < trials; ++t) {
    const Projection k = random_projection(three, rng);
    const Projection p = random_subprojection(k, rng);
    const Projection q = Projection::from(k.element() - p.element(), tol);
    const int mode = rng.uniform_int(0, 2);
    const Projection e = mode == 0 ? p : mode == 1 ? q : random_subprojection(k, rng);
    const Projection f = Projection::from(k.element() - e.element(), tol);
    const std::vector<Projection> gens = {p, q, e, f};
    const ProjectionOml po = oml_from_projections(gens, 64, tol);
    r.expect("matrix.closure_is_oml", verify_oml(po.lattice).is_oml);
    const OmlSixPiece ad = oml_six_piece(po.lattice, po.inputs[0], po.inputs[1], po.inputs[2],
                                         po.inputs[3]);
    const SixPiece md = six_piece_decomposition(p, q, e, f, tol);
    auto at = [&](int i) { return po.members[static_cast<std::size_t>(i)]; };
    const double agree = distance(at(ad.p1), md.p1) + distance(at(ad.p2), md.p2) +
                         distance(at(ad.q1), md.q1) + distance(at(ad.q2), md.q2) +
                         distance(at(ad.e1), md.e1) + distance(at(ad.f2), md.f2);
    r.check("matrix.six_piece_agrees", agree, tol.proj);
    merge_prefixed(r, six_piece_check(p, q, e, f, md, tol), "matrix");
    int count = 0;
    merge_prefixed(r, six_piece_exhaustive(po.lattice, &count), "matrix_closure");
  }
  return r;
}

}  // namespace synalg
