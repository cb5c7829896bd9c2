#include "ncdg/connection.hpp"

#include "ncdg/errors.hpp"

namespace ncdg {

namespace {

CheckResult located_fail(const std::string& name, const std::string& what,
                         const std::vector<int>& idx, int order, const HbarSeries& lhs,
                         const HbarSeries& rhs) {
  return CheckResult::fail(name, what,
                           {{"indices", index_label(idx)},
                            {"order", std::to_string(order)},
                            {"lhs", lhs.to_string()},
                            {"rhs", rhs.to_string()}});
}

}  // namespace

void validate_chiral(const ChiralCoefficients& u) {
  int n = u.ups.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (u.ups(i, j, k) != u.ups(j, i, k))
          throw AsymmetricChiral("Upsilon_{ijk} != Upsilon_{jik} at " + index_label({i, j, k}));
}

ConnectionCoefficients connection_from_lowered(SeriesArray lower, SeriesArray lower_tilde,
                                               const InverseMetric& ginv, const StarProduct& s) {
  int n = lower.dim(), N = lower.truncation();
  SeriesArray up(n, 3, N), upt(n, 3, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        HbarSeries a(N), b(N);
        for (int m = 0; m < n; ++m) {
          a += star_mul(lower(i, j, m), ginv.g(m, l), s);
          b += star_mul(ginv.g(l, m), lower_tilde(i, j, m), s);
        }
        up(i, j, l) = a;
        upt(i, j, l) = b;
      }
  return {std::move(lower), std::move(lower_tilde), std::move(up), std::move(upt)};
}

ConnectionCoefficients connection_from_raised(SeriesArray upper, SeriesArray upper_tilde,
                                              const NCMetric& g) {
  int n = upper.dim(), N = upper.truncation();
  SeriesArray lo(n, 3, N), lot(n, 3, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        HbarSeries a(N), b(N);
        for (int l = 0; l < n; ++l) {
          a += star_mul(upper(i, j, l), g.g(l, k), g.star);
          b += star_mul(g.g(k, l), upper_tilde(i, j, l), g.star);
        }
        lo(i, j, k) = a;
        lot(i, j, k) = b;
      }
  return {std::move(lo), std::move(lot), std::move(upper), std::move(upper_tilde)};
}

ConnectionCoefficients canonical_connection(const NCMetric& g, const InverseMetric& ginv,
                                            const ChiralCoefficients& ups) {
  validate_chiral(ups);
  int n = g.dim(), N = g.truncation();
  if (ups.ups.dim() != n) throw ShapeMismatch("chiral coefficients and metric dimensions differ");
  // dg(k, i, j) = d_k g_ij
  SeriesArray dg(n, 3, N);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg(k, i, j) = g.g(i, j).partial(k);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries lhs = dg(k, i, j) - dg(k, j, i);
        HbarSeries rhs = ups.ups(k, i, j) - ups.ups(k, j, i);
        if (lhs != rhs)
          throw IncompatibleChiral(
              "d_k(g_ij - g_ji) != Upsilon_kij - Upsilon_kji at (k,i,j) = " +
              index_label({k, i, j}));
      }
  SeriesArray lo(n, 3, N), lot(n, 3, N);
  const Rational half(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        HbarSeries base = dg(i, j, k) + dg(j, k, i) - dg(k, j, i);
        lo(i, j, k) = (base + ups.ups(i, j, k)).scaled(half);
        lot(i, j, k) = (base - ups.ups(i, j, k)).scaled(half);
      }
  ConnectionCoefficients conn = connection_from_lowered(std::move(lo), std::move(lot), ginv, g.star);
  CheckResult rt = check_raised_lowered(g, conn);
  if (!rt.passed()) throw InternalDisagreement("raise/lower round trip: " + rt.details);
  return conn;
}

CheckResult check_compatibility(const NCMetric& g, const ConnectionCoefficients& c) {
  const std::string name = "compatibility";
  int n = g.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries lhs = g.g(i, j).partial(k);
        HbarSeries rhs = c.lower(k, i, j) + c.lower_tilde(k, j, i);
        int q = first_difference(lhs, rhs);
        if (q >= 0)
          return located_fail(name, "d_k g_ij != Gamma_kij + Gamma~_kji at (k,i,j)", {k, i, j}, q,
                              lhs, rhs);
      }
  return CheckResult::pass(name);
}

CheckResult check_chirality_and_torsion(const ConnectionCoefficients& c,
                                        const ChiralCoefficients& ups) {
  const std::string name = "chirality-torsion";
  int n = c.lower.dim();
  const std::pair<const SeriesArray*, const char*> arrays[] = {{&c.lower, "Gamma_ijk"},
                                                               {&c.lower_tilde, "Gamma~_ijk"},
                                                               {&c.upper, "Gamma^k_ij"},
                                                               {&c.upper_tilde, "Gamma~^k_ij"}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        HbarSeries diff = c.lower(i, j, k) - c.lower_tilde(i, j, k);
        int q = first_difference(diff, ups.ups(i, j, k));
        if (q >= 0)
          return located_fail(name, "Gamma - Gamma~ != Upsilon", {i, j, k}, q, diff,
                              ups.ups(i, j, k));
        for (const auto& [arr, label] : arrays) {
          int p = first_difference((*arr)(i, j, k), (*arr)(j, i, k));
          if (p >= 0)
            return located_fail(name, std::string("torsion: ") + label + " not symmetric in (i,j)",
                                {i, j, k}, p, (*arr)(i, j, k), (*arr)(j, i, k));
        }
      }
  return CheckResult::pass(name);
}

CheckResult check_metric_parallel(const NCMetric& g, const InverseMetric& ginv,
                                  const ConnectionCoefficients& c) {
  const std::string name = "metric-parallel";
  CheckResult lower = check_compatibility(g, c);
  if (!lower.passed()) {
    lower.name = name;
    return lower;
  }
  int n = g.dim(), N = g.truncation();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries acc = ginv.g(i, j).partial(k);
        for (int l = 0; l < n; ++l) {
          acc += star_mul(ginv.g(i, l), c.upper(k, l, j), g.star);
          acc += star_mul(c.upper_tilde(k, l, i), ginv.g(l, j), g.star);
        }
        if (!acc.is_zero())
          return located_fail(name, "d_k g^ij + g^il * Gamma^j_kl + Gamma~^i_kl * g^lj != 0",
                              {k, i, j}, first_difference(acc, HbarSeries(N)), acc, HbarSeries(N));
      }
  return CheckResult::pass(name);
}

CheckResult check_raised_lowered(const NCMetric& g, const ConnectionCoefficients& c) {
  const std::string name = "raise-lower";
  ConnectionCoefficients back = connection_from_raised(c.upper, c.upper_tilde, g);
  if (auto d = first_difference(back.lower, c.lower))
    return located_fail(name, "Gamma^l_ij * g_lk != Gamma_ijk", d->indices, d->order,
                        back.lower.at(d->indices), c.lower.at(d->indices));
  if (auto d = first_difference(back.lower_tilde, c.lower_tilde))
    return located_fail(name, "g_kl * Gamma~^l_ij != Gamma~_ijk", d->indices, d->order,
                        back.lower_tilde.at(d->indices), c.lower_tilde.at(d->indices));
  return CheckResult::pass(name);
}

CheckResult check_chiral_parity(const ChiralCoefficients& ups) {
  const std::string name = "chiral-parity";
  for (std::size_t k = 0; k < ups.ups.size(); ++k) {
    const HbarSeries& u = ups.ups.at_flat(k);
    for (int q = 0; q <= u.truncation(); q += 2)
      if (!u[q].is_zero())
        return CheckResult::fail(name, "even-order chiral coefficient is nonzero",
                                 {{"indices", index_label(ups.ups.indices(k))},
                                  {"order", std::to_string(q)},
                                  {"value", u[q].to_string()}});
  }
  return CheckResult::pass(name);
}

CheckResult connection_parity_relation(const ConnectionCoefficients& c) {
  const std::string name = "connection-parity";
  for (std::size_t k = 0; k < c.lower.size(); ++k) {
    const HbarSeries& a = c.lower.at_flat(k);
    HbarSeries b = parity_flip(c.lower_tilde.at_flat(k));
    int q = first_difference(a, b);
    if (q >= 0)
      return located_fail(name, "Gamma[q] != (-1)^q Gamma~[q]", c.lower.indices(k), q, a,
                          c.lower_tilde.at_flat(k));
  }
  return CheckResult::pass(name);
}

CheckResult check_connection_parity(const NCMetric& g, const ChiralCoefficients& ups,
                                    const ConnectionCoefficients& c) {
  CheckResult rel = connection_parity_relation(c);
  CheckResult gp = check_metric_parity(g.g);
  CheckResult up = check_chiral_parity(ups);
  if (gp.passed() && up.passed()) return rel;
  std::string why = !gp.passed() ? "metric parity violated" : "chiral parity violated";
  CheckResult r = CheckResult::skipped(rel.name, "precondition unmet: " + why);
  r.counterexample = rel.counterexample;
  r.counterexample.insert(r.counterexample.begin(),
                          {"relation", rel.passed() ? "holds" : "fails"});
  return r;
}

}  // namespace ncdg
