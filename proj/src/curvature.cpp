#include "ncdg/curvature.hpp"

#include "ncdg/errors.hpp"

namespace ncdg {

namespace {

HbarSeries sm(const HbarSeries& a, const HbarSeries& b, const StarProduct& s) {
  return star_mul(a, b, s);
}

std::string where(const std::vector<int>& idx, int order) {
  return index_label(idx) + " order " + std::to_string(order);
}

void require_equal(const SeriesArray& a, const SeriesArray& b, const std::string& what) {
  if (auto d = first_difference(a, b))
    throw InternalDisagreement(what + " at " + where(d->indices, d->order));
}

CheckResult zero_or_fail(const std::string& name, const std::string& what,
                         const std::vector<int>& idx, const HbarSeries& v) {
  int q = first_difference(v, HbarSeries(v.truncation()));
  return CheckResult::fail(name, what,
                           {{"indices", index_label(idx)},
                            {"order", std::to_string(q)},
                            {"value", v.to_string()}});
}

}  // namespace

VectorFieldCoefficients covariant_derivative_vector(const ConnectionCoefficients& conn,
                                                    const VectorFieldCoefficients& v, int i,
                                                    Side side, const StarProduct& s) {
  int n = conn.upper.dim();
  if (static_cast<int>(v.size()) != n) throw ShapeMismatch("vector length differs from dimension");
  VectorFieldCoefficients out(n);
  for (int m = 0; m < n; ++m) {
    HbarSeries acc = v[m].partial(i);
    for (int p = 0; p < n; ++p) {
      if (side == Side::left)
        acc += sm(v[p], conn.upper(i, p, m), s);
      else
        acc += sm(conn.upper_tilde(i, p, m), v[p], s);
    }
    out[m] = acc;
  }
  return out;
}

VectorFieldCoefficients curvature_operator_components(const ConnectionCoefficients& conn, int i,
                                                      int j, int k, Side side,
                                                      const StarProduct& s) {
  int n = conn.upper.dim();
  const SeriesArray& up = side == Side::left ? conn.upper : conn.upper_tilde;
  VectorFieldCoefficients ej(n), ei(n);
  for (int m = 0; m < n; ++m) {
    ej[m] = up(j, k, m);
    ei[m] = up(i, k, m);
  }
  VectorFieldCoefficients a = covariant_derivative_vector(conn, ej, i, side, s);
  VectorFieldCoefficients b = covariant_derivative_vector(conn, ei, j, side, s);
  for (int m = 0; m < n; ++m) a[m] -= b[m];
  return a;
}

CurvatureOperators curvature_operators(const ConnectionCoefficients& conn, Side side,
                                       const StarProduct& s) {
  int n = conn.upper.dim(), N = conn.upper.truncation();
  const SeriesArray& up = side == Side::left ? conn.upper : conn.upper_tilde;
  // d(i, j, k, m) = (nabla_i nabla_j E_k)^m
  SeriesArray d(n, 4, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          HbarSeries acc = up(j, k, m).partial(i);
          for (int p = 0; p < n; ++p) {
            if (side == Side::left)
              acc += sm(up(j, k, p), up(i, p, m), s);
            else
              acc += sm(up(i, p, m), up(j, k, p), s);
          }
          d(i, j, k, m) = acc;
        }
    }
  SeriesArray c(n, 4, N);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int m = 0; m < n; ++m) {
          c(k, i, j, m) = d(i, j, k, m) - d(j, i, k, m);
          c(k, j, i, m) = -c(k, i, j, m);
        }
  return {std::move(c)};
}

SeriesArray riemann_from_operators(const NCMetric& g, const CurvatureOperators& ops) {
  int n = g.dim(), N = g.truncation();
  SeriesArray r(n, 4, N);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          HbarSeries acc(N);
          for (int m = 0; m < n; ++m) acc += sm(ops.c(k, i, j, m), g.g(m, l), g.star);
          r(l, k, i, j) = acc;
          r(l, k, j, i) = -acc;
        }
  return r;
}

namespace {

// q(l, k, i, j) = Gamma_{iks} * g^{sr} * Gamma~_{jlr}
SeriesArray quadratic_terms(const NCMetric& g, const InverseMetric& ginv,
                            const ConnectionCoefficients& conn) {
  int n = g.dim(), N = g.truncation();
  SeriesArray p(n, 3, N);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r) {
        HbarSeries acc(N);
        for (int s = 0; s < n; ++s) acc += sm(conn.lower(i, k, s), ginv.g(s, r), g.star);
        p(i, k, r) = acc;
      }
  SeriesArray q(n, 4, N);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          HbarSeries acc(N);
          for (int r = 0; r < n; ++r) acc += sm(p(i, k, r), conn.lower_tilde(j, l, r), g.star);
          q(l, k, i, j) = acc;
        }
  return q;
}

}  // namespace

SeriesArray riemann_from_gamma(const NCMetric& g, const InverseMetric& ginv,
                               const ConnectionCoefficients& conn) {
  int n = g.dim(), N = g.truncation();
  SeriesArray q = quadratic_terms(g, ginv, conn);
  SeriesArray r(n, 4, N);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          r(l, k, i, j) = conn.lower(j, k, l).partial(i) - conn.lower(i, k, l).partial(j) +
                          q(l, k, i, j) - q(l, k, j, i);
        }
  return r;
}

SeriesArray riemann_from_gamma_tilde(const NCMetric& g, const InverseMetric& ginv,
                                     const ConnectionCoefficients& conn) {
  int n = g.dim(), N = g.truncation();
  SeriesArray q = quadratic_terms(g, ginv, conn);
  SeriesArray r(n, 4, N);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          r(l, k, i, j) = conn.lower_tilde(i, l, k).partial(j) -
                          conn.lower_tilde(j, l, k).partial(i) + q(l, k, i, j) - q(l, k, j, i);
        }
  return r;
}

SeriesArray right_riemann(const NCMetric& g, const CurvatureOperators& right_ops) {
  int n = g.dim(), N = g.truncation();
  SeriesArray r(n, 4, N);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          HbarSeries acc(N);
          for (int m = 0; m < n; ++m) acc -= sm(g.g(k, m), right_ops.c(l, i, j, m), g.star);
          r(l, k, i, j) = acc;
          r(l, k, j, i) = -acc;
        }
  return r;
}

RiemannField riemann(const NCMetric& g, const InverseMetric& ginv,
                     const ConnectionCoefficients& conn) {
  return riemann(g, ginv, conn, curvature_operators(conn, Side::left, g.star));
}

RiemannField riemann(const NCMetric& g, const InverseMetric& ginv,
                     const ConnectionCoefficients& conn, const CurvatureOperators& left_ops) {
  SeriesArray r = riemann_from_operators(g, left_ops);
  require_equal(r, riemann_from_gamma(g, ginv, conn), "Riemann operator pairing vs Gamma form");
  require_equal(r, riemann_from_gamma_tilde(g, ginv, conn),
                "Riemann operator pairing vs Gamma~ form");
  SeriesArray rt = right_riemann(g, curvature_operators(conn, Side::right, g.star));
  require_equal(r, rt, "left vs right Riemann curvature");
  return {std::move(r), std::move(rt)};
}

RicciBundle ricci_bundle(const NCMetric& g, const InverseMetric& ginv, const RiemannField& riem) {
  int n = g.dim(), N = g.truncation();
  const auto& R = riem.r;
  const auto& h = ginv.g;
  RicciBundle b{SeriesArray(n, 2, N), SeriesArray(n, 2, N), SeriesArray(n, 2, N),
                SeriesArray(n, 2, N), HbarSeries(N), HbarSeries(N)};
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      HbarSeries acc(N);
      for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) acc += sm(R(l, k, i, j), h(l, i), g.star);
      b.ricci(k, j) = acc;
    }
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l) {
      HbarSeries acc(N);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) acc += sm(h(j, k), R(l, k, i, j), g.star);
      b.theta(i, l) = acc;
    }
  for (int p = 0; p < n; ++p)
    for (int j = 0; j < n; ++j) {
      HbarSeries a(N), t(N);
      for (int k = 0; k < n; ++k) {
        a += sm(h(p, k), b.ricci(k, j), g.star);
        t += sm(b.theta(j, k), h(k, p), g.star);
      }
      b.ricci_up(p, j) = a;
      b.theta_up(p, j) = t;
    }
  for (int j = 0; j < n; ++j) {
    b.scalar += b.ricci_up(j, j);
    b.scalar_theta += b.theta_up(j, j);
  }
  if (int q = first_difference(b.scalar, b.scalar_theta); q >= 0)
    throw InternalDisagreement("traces of the two Ricci curvatures differ at order " +
                               std::to_string(q));
  return b;
}

CurvatureDerivative curvature_covariant_derivative(const NCMetric& g, const InverseMetric& ginv,
                                                   const ConnectionCoefficients& conn,
                                                   const CurvatureOperators& ops) {
  int n = g.dim(), N = g.truncation();
  const auto& C = ops.c;
  const auto& up = conn.upper;
  const auto& h = ginv.g;
  const auto& s = g.star;
  CurvatureDerivative d{SeriesArray(n, 5, N), SeriesArray(n, 5, N), SeriesArray(n, 3, N),
                        SeriesArray(n, 3, N), SeriesArray(n, 1, N)};
  for (int sd = 0; sd < n; ++sd)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int m = 0; m < n; ++m) {
            HbarSeries acc = C(k, i, j, m).partial(sd);
            for (int p = 0; p < n; ++p) acc += sm(C(k, i, j, p), up(sd, p, m), s);
            for (int a = 0; a < n; ++a) {
              acc -= sm(up(sd, i, a), C(k, a, j, m), s);
              acc -= sm(up(sd, j, a), C(k, i, a, m), s);
              acc -= sm(up(sd, k, a), C(a, i, j, m), s);
            }
            d.vectors(sd, k, i, j, m) = acc;
            d.vectors(sd, k, j, i, m) = -acc;
          }
  for (int sd = 0; sd < n; ++sd)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            HbarSeries acc(N);
            for (int m = 0; m < n; ++m) acc += sm(d.vectors(sd, k, i, j, m), g.g(m, l), s);
            d.r(sd, l, k, i, j) = acc;
            d.r(sd, l, k, j, i) = -acc;
          }
  for (int sd = 0; sd < n; ++sd) {
    // a(k, j) = sum_{l,i} nabla_s R_{lkij} * g^{li}; b(l, i) = sum_{j,k} g^{jk} * nabla_s R_{lkij}
    SeriesArray a(n, 2, N), b(n, 2, N);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        HbarSeries acc(N);
        for (int l = 0; l < n; ++l)
          for (int i = 0; i < n; ++i) acc += sm(d.r(sd, l, k, i, j), h(l, i), s);
        a(k, j) = acc;
      }
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i) {
        HbarSeries acc(N);
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) acc += sm(h(j, k), d.r(sd, l, k, i, j), s);
        b(l, i) = acc;
      }
    HbarSeries scal(N);
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < n; ++j) {
        HbarSeries ru(N), tu(N);
        for (int k = 0; k < n; ++k) ru += sm(h(p, k), a(k, j), s);
        for (int l = 0; l < n; ++l) tu += sm(b(l, j), h(l, p), s);
        d.ricci_up(sd, p, j) = ru;
        d.theta_up(sd, p, j) = tu;
        scal += sm(b(p, j), h(p, j), s);
      }
    d.scalar(sd) = scal;
  }
  return d;
}

CheckResult first_bianchi_check(const CurvatureOperators& ops, const std::string& name) {
  const auto& C = ops.c;
  int n = C.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          HbarSeries sum = C(k, i, j, m) + C(i, j, k, m) + C(j, k, i, m);
          if (!sum.is_zero())
            return zero_or_fail(name, "cyclic sum of curvature operators is nonzero at (i,j,k,m)",
                                {i, j, k, m}, sum);
        }
  return CheckResult::pass(name);
}

CheckResult second_bianchi_check(const CurvatureDerivative& d) {
  const std::string name = "second-bianchi";
  const auto& V = d.vectors;
  int n = V.dim();
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int m = 0; m < n; ++m) {
            HbarSeries sum = V(i, p, j, k, m) + V(j, p, k, i, m) + V(k, p, i, j, m);
            if (!sum.is_zero())
              return zero_or_fail(name, "cyclic sum of nabla R is nonzero at (i,j,k,p,m)",
                                  {i, j, k, p, m}, sum);
          }
  return CheckResult::pass(name);
}

CheckResult contracted_bianchi_check(const CurvatureDerivative& d) {
  const std::string name = "contracted-bianchi";
  int n = d.scalar.dim();
  for (int j = 0; j < n; ++j) {
    HbarSeries acc = -d.scalar(j);
    for (int s = 0; s < n; ++s) acc += d.ricci_up(s, s, j) + d.theta_up(s, s, j);
    if (!acc.is_zero())
      return zero_or_fail(name, "nabla_i R^i_j + nabla_i Theta^i_j - nabla_j R is nonzero at j",
                          {j}, acc);
  }
  return CheckResult::pass(name);
}

CheckResult riemann_parity_relation(const RiemannField& riem) {
  const std::string name = "riemann-parity";
  const auto& R = riem.r;
  int n = R.dim();
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int q = first_difference(R(l, k, i, j), -parity_flip(R(k, l, i, j)));
          if (q >= 0)
            return CheckResult::fail(name, "R_lkij[q] != -(-1)^q R_klij[q]",
                                     {{"indices", index_label({l, k, i, j})},
                                      {"order", std::to_string(q)},
                                      {"R_lkij", R(l, k, i, j).to_string()},
                                      {"R_klij", R(k, l, i, j).to_string()}});
        }
  return CheckResult::pass(name);
}

CheckResult ricci_equivalence_relation(const RicciBundle& b) {
  const std::string name = "ricci-equivalence";
  int n = b.ricci.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int q = first_difference(b.ricci(i, j), parity_flip(b.theta(j, i)));
      if (q >= 0)
        return CheckResult::fail(name, "R_ij[q] != (-1)^q Theta_ji[q]",
                                 {{"indices", index_label({i, j})},
                                  {"order", std::to_string(q)},
                                  {"R_ij", b.ricci(i, j).to_string()},
                                  {"Theta_ji", b.theta(j, i).to_string()}});
      q = first_difference(b.ricci_up(i, j), parity_flip(b.theta_up(i, j)));
      if (q >= 0)
        return CheckResult::fail(name, "R^i_j[q] != (-1)^q Theta^i_j[q]",
                                 {{"indices", index_label({i, j})},
                                  {"order", std::to_string(q)},
                                  {"R^i_j", b.ricci_up(i, j).to_string()},
                                  {"Theta^i_j", b.theta_up(i, j).to_string()}});
    }
  return CheckResult::pass(name);
}

RicciEquivalenceReport ricci_equivalence_check(const NCMetric& g, const ChiralCoefficients& ups,
                                               const ConnectionCoefficients& conn,
                                               const RiemannField& riem, const RicciBundle& b) {
  CheckResult gp = check_metric_parity(g.g);
  CheckResult up = check_chiral_parity(ups);
  CheckResult hyp = CheckResult::pass("parity-hypotheses");
  if (!gp.passed()) {
    hyp = gp;
  } else if (!up.passed()) {
    hyp = up;
  }
  hyp.name = "parity-hypotheses";
  return {hyp, connection_parity_relation(conn), riemann_parity_relation(riem),
          ricci_equivalence_relation(b)};
}

}  // namespace ncdg
