#include "ncdg/appendix.hpp"

#include "ncdg/closed_form.hpp"
#include "ncdg/elementary.hpp"
#include "ncdg/errors.hpp"
#include "ncdg/random.hpp"
#include "ncdg/star_product.hpp"

namespace ncdg {

std::string TrigMonomial::to_string() const {
  return std::string(sin1 ? "sin" : "cos") + "(theta1)*" + (sin2 ? "sin" : "cos") + "(theta2)";
}

const std::vector<TrigIdentity>& trig_identities() {
  static const std::string s1 = "sin(theta1)", c1 = "cos(theta1)", s2 = "sin(theta2)",
                           c2 = "cos(theta2)", ch = "cosh(lambda*hbar)", sh = "sinh(lambda*hbar)";
  static const std::string sc1 = s1 + "*" + c1, sc2 = s2 + "*" + c2, chsh = ch + "*" + sh;
  static const TrigMonomial ss{true, true}, sc{true, false}, cs{false, true}, cc{false, false};
  static const std::vector<TrigIdentity> table = {
      {"A.1.1", ss, ss, s1 + "^2*" + s2 + "^2*" + ch + "^2 - " + c1 + "^2*" + c2 + "^2*" + sh + "^2"},
      {"A.1.2", ss, sc, sc2 + "*(" + s1 + "^2 + " + sh + "^2) - " + sc1 + "*" + chsh},
      {"A.1.3", ss, cs, sc1 + "*(" + s2 + "^2 + " + sh + "^2) + " + sc2 + "*" + chsh},
      {"A.1.4", ss, cc, sc1 + "*" + sc2 + " + (" + s1 + "^2 - " + s2 + "^2)*" + chsh},
      {"A.2.1", sc, ss, sc2 + "*(" + s1 + "^2 + " + sh + "^2) + " + sc1 + "*" + chsh},
      {"A.2.2", sc, sc, s1 + "^2*" + c2 + "^2*" + ch + "^2 - " + c1 + "^2*" + s2 + "^2*" + sh + "^2"},
      {"A.2.3", sc, cs, sc1 + "*" + sc2 + " + (" + c1 + "^2 - " + s2 + "^2)*" + chsh},
      {"A.2.4", sc, cc, sc1 + "*(" + c2 + "^2 + " + sh + "^2) - " + sc2 + "*" + chsh},
      {"A.3.1", cs, ss, sc1 + "*(" + s2 + "^2 + " + sh + "^2) - " + sc2 + "*" + chsh},
      {"A.3.2", cs, sc, sc1 + "*" + sc2 + " + (" + s1 + "^2 - " + c2 + "^2)*" + chsh},
      {"A.3.3", cs, cs, c1 + "^2*" + s2 + "^2*" + ch + "^2 - " + s1 + "^2*" + c2 + "^2*" + sh + "^2"},
      {"A.3.4", cs, cc, sc2 + "*(" + c1 + "^2 + " + sh + "^2) + " + sc1 + "*" + chsh},
      {"A.4.1", cc, ss, sc1 + "*" + sc2 + " + (" + c1 + "^2 - " + c2 + "^2)*" + chsh},
      {"A.4.2", cc, sc, sc1 + "*(" + c2 + "^2 + " + sh + "^2) + " + sc2 + "*" + chsh},
      {"A.4.3", cc, cs, sc2 + "*(" + c1 + "^2 + " + sh + "^2) - " + sc1 + "*" + chsh},
      {"A.4.4", cc, cc, c1 + "^2*" + c2 + "^2*" + ch + "^2 - " + s1 + "^2*" + s2 + "^2*" + sh + "^2"},
  };
  return table;
}

int AppendixReport::passed() const {
  int k = 0;
  for (auto& c : checks) k += c.passed();
  return k;
}

namespace {

// sin and cos of a random angle: (2t/(1+t^2), (1-t^2)/(1+t^2)).
std::pair<Rational, Rational> random_angle(RandomSource& rs) {
  Rational t = rs.rational();
  Rational d = 1 + t * t;
  return {2 * t / d, (1 - t * t) / d};
}

struct Point {
  Rational lambda;
  std::pair<Rational, Rational> a1, a2;
};

Jet trig_jet(bool is_sin, int coord, const std::pair<Rational, Rational>& sc, const ChartPtr& c,
             int order) {
  ElementaryKind k = is_sin ? ElementaryKind::sin : ElementaryKind::cos;
  return jet_of_elementary(k, AffineArgument::coordinate(2, coord), c, order,
                           trig_derivative_table(k, sc.first, sc.second, order));
}

}  // namespace

AppendixReport verify_appendix(int N, int points, std::uint64_t seed,
                               const std::vector<TrigIdentity>& table) {
  if (N < 0) throw OrderOutOfRange("negative truncation");
  RandomSource rs(seed);
  std::vector<Point> pts;
  for (int k = 0; k < points; ++k) {
    Rational lambda = rs.nonzero_rational();
    auto a1 = random_angle(rs);
    auto a2 = random_angle(rs);
    pts.push_back({lambda, a1, a2});
  }
  // The angles enter only through derivative tables; the chart base point is an anchor.
  ChartPtr chart = make_chart({Rational(0), Rational(0)});
  const int order = N;
  AppendixReport report;
  for (const auto& id : table) {
    CheckResult res = CheckResult::pass(id.label, id.left.to_string() + " * " + id.right.to_string());
    for (int k = 0; k < points && res.passed(); ++k) {
      const Point& p = pts[k];
      StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, p.lambda));
      auto factor = [&](const TrigMonomial& m) {
        Jet j = trig_jet(m.sin1, 0, p.a1, chart, order) * trig_jet(m.sin2, 1, p.a2, chart, order);
        return HbarSeries::constant(N, Scalar(j));
      };
      HbarSeries got = star_mul(factor(id.left), factor(id.right), s);
      ClosedFormBindings b;
      b.lambda = p.lambda;
      b.angles[1] = p.a1;
      b.angles[2] = p.a2;
      HbarSeries want = closed_form_oracle(id.closed_form, b, N);
      for (int q = 0; q <= N; ++q) {
        Rational v = got[q].value();
        Rational w = want[q].value();
        if (v != w) {
          res = CheckResult::fail(id.label, "star product differs from the closed form",
                                  {{"point", std::to_string(k)},
                                   {"lambda", to_string(p.lambda)},
                                   {"sin(theta1)", to_string(p.a1.first)},
                                   {"sin(theta2)", to_string(p.a2.first)},
                                   {"order", std::to_string(q)},
                                   {"star", to_string(v)},
                                   {"closed_form", to_string(w)}});
          break;
        }
      }
    }
    report.checks.push_back(res);
  }
  return report;
}

}  // namespace ncdg
