#include "ncdg/closed_form.hpp"

#include <cctype>

#include "ncdg/errors.hpp"

namespace ncdg {

HbarSeries cosh_series(const Rational& lambda, int N) {
  std::vector<Rational> c(N + 1);
  Rational pw = 1;
  for (int q = 0; q <= N; ++q) {
    if (q % 2 == 0) c[q] = pw * inverse_factorial(q);
    pw *= lambda;
  }
  return HbarSeries::from_rationals(N, c);
}

HbarSeries sinh_series(const Rational& lambda, int N) {
  std::vector<Rational> c(N + 1);
  Rational pw = 1;
  for (int q = 0; q <= N; ++q) {
    if (q % 2 == 1) c[q] = pw * inverse_factorial(q);
    pw *= lambda;
  }
  return HbarSeries::from_rationals(N, c);
}

namespace {

class Parser {
 public:
  Parser(const std::string& src, const ClosedFormBindings& b, int N) : s_(src), b_(b), N_(N) {}

  HbarSeries run() {
    HbarSeries r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  const ClosedFormBindings& b_;
  int N_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("closed form at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(s_.substr(start, pos_ - start));
  }

  HbarSeries constant(const Rational& r) const { return HbarSeries::from_rationals(N_, {r}); }

  HbarSeries expr() {
    HbarSeries acc = term();
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  HbarSeries term() {
    HbarSeries acc = unary();
    while (eat('*')) acc = cauchy_product(acc, unary());
    return acc;
  }

  HbarSeries unary() {
    if (eat('-')) return -unary();
    HbarSeries base = primary();
    if (!eat('^')) return base;
    Integer e = integer();
    if (!e.fits_sint_p() || e.get_si() > 64) fail("exponent too large");
    HbarSeries r = constant(1);
    for (long k = 0; k < e.get_si(); ++k) r = cauchy_product(r, base);
    return r;
  }

  HbarSeries primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      HbarSeries r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      Rational r(integer());
      skip();
      // A slash directly after a literal binds as a rational literal.
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        Integer d = integer();
        if (d == 0) fail("zero denominator");
        r /= Rational(d);
      }
      return constant(r);
    }
    std::string name = ident();
    if (name.empty()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    if (eat('(')) return call(name);
    if (name == "hbar") return HbarSeries::from_rationals(N_, {0, 1});
    if (name == "lambda") return constant(b_.lambda);
    auto it = b_.symbols.find(name);
    if (it == b_.symbols.end()) throw UnsupportedForm("unbound symbol '" + name + "'");
    return constant(it->second);
  }

  HbarSeries call(const std::string& fn) {
    if (fn == "sin" || fn == "cos") {
      std::string arg = ident();
      if (arg.rfind("theta", 0) != 0 || arg.size() == 5)
        throw UnsupportedForm(fn + " takes an angle theta<k>");
      int k = std::stoi(arg.substr(5));
      expect(')');
      auto it = b_.angles.find(k);
      if (it == b_.angles.end()) throw UnsupportedForm("no value bound for " + arg);
      return constant(fn == "sin" ? it->second.first : it->second.second);
    }
    if (fn == "cosh" || fn == "sinh") {
      std::string a = ident();
      bool ok = a == "lambda" && eat('*') && ident() == "hbar";
      if (!ok) throw UnsupportedForm(fn + " takes lambda*hbar");
      expect(')');
      return fn == "cosh" ? cosh_series(b_.lambda, N_) : sinh_series(b_.lambda, N_);
    }
    throw UnsupportedForm("function '" + fn + "' is not supported");
  }
};

}  // namespace

HbarSeries closed_form_oracle(const std::string& expression, const ClosedFormBindings& b, int N) {
  if (N < 0) throw OrderOutOfRange("negative truncation");
  return Parser(expression, b, N).run();
}

}  // namespace ncdg
