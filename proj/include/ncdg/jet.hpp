#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncdg/rational.hpp"

namespace ncdg {

using MultiIndex = std::vector<int>;

// Coordinates of the base point of a single chart.
class Chart {
 public:
  explicit Chart(std::vector<Rational> base_point);
  int dim() const { return static_cast<int>(base_point_.size()); }
  const std::vector<Rational>& base_point() const { return base_point_; }
  bool operator==(const Chart& other) const { return base_point_ == other.base_point_; }

 private:
  std::vector<Rational> base_point_;
};

using ChartPtr = std::shared_ptr<const Chart>;
ChartPtr make_chart(std::vector<Rational> base_point);

// Graded enumeration of monomials in n variables up to a fixed degree. The
// enumeration of degree <= d is a prefix of the one for degree <= d + 1, so
// indices do not depend on which basis instance is used.
class MonomialBasis {
 public:
  static std::shared_ptr<const MonomialBasis> get(int num_vars, int degree);

  int num_vars() const { return n_; }
  int degree() const { return degree_; }
  // Number of monomials of total degree <= d.
  std::size_t count(int d) const { return d < 0 ? 0 : counts_[d]; }
  const std::uint16_t* exponents(std::size_t idx) const { return &exps_[idx * n_]; }
  int total_degree(std::size_t idx) const { return degrees_[idx]; }
  std::size_t index_of(const std::uint16_t* exps) const;
  std::size_t index_of(const MultiIndex& alpha) const;
  // Index of monomial(idx) * monomial(j) for j < count(degree - total_degree(idx)).
  const std::uint32_t* product_row(std::size_t idx) const { return &products_[row_offsets_[idx]]; }
  // Index of monomial(idx) * x_var, valid when total_degree(idx) < degree.
  std::uint32_t raised(std::size_t idx, int var) const { return raised_[idx * n_ + var]; }

  MonomialBasis(int num_vars, int degree);

 private:
  int n_;
  int degree_;
  std::vector<std::size_t> counts_;
  std::vector<std::uint16_t> exps_;
  std::vector<int> degrees_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::uint32_t> products_;
  std::vector<std::uint32_t> raised_;
  std::vector<std::vector<Integer>> binom_;
};

// Truncated Taylor expansion at a chart's base point. Stores integer
// numerators over one positive common denominator, kept in lowest terms.
class Jet {
 public:
  Jet(ChartPtr chart, int order);

  static Jet constant(ChartPtr chart, int order, const Rational& value);
  // The coordinate function x^i (0-based i), i.e. base_i + dx_i.
  static Jet coordinate(ChartPtr chart, int order, int i);
  static Jet from_terms(ChartPtr chart, int order,
                        const std::vector<std::pair<MultiIndex, Rational>>& terms);

  const ChartPtr& chart() const { return chart_; }
  int num_vars() const { return chart_->dim(); }
  int order() const { return order_; }

  // Taylor coefficient d^alpha f(base) / alpha!; zero when |alpha| > order.
  Rational coefficient(const MultiIndex& alpha) const;
  Rational value() const;
  std::vector<std::pair<MultiIndex, Rational>> terms() const;
  bool is_zero() const;
  bool compatible(const Jet& other) const;

  Jet truncated(int order) const;
  Jet scaled(const Rational& c) const;
  Jet plus_constant(const Rational& c) const;
  Jet partial(int i) const;
  Jet derivative(const MultiIndex& alpha) const;
  Jet reciprocal() const;

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  // Exact equality through the smaller of the two orders.
  friend bool operator==(const Jet& a, const Jet& b);

  std::string to_string() const;

 private:
  struct Data {
    std::vector<Integer> num;
    Integer den = 1;
  };
  Jet(ChartPtr chart, int order, std::shared_ptr<const MonomialBasis> basis,
      std::shared_ptr<const Data> data);
  static std::shared_ptr<const Data> normalize(Data&& d);
  void require_compatible(const Jet& other) const;
  std::size_t size() const { return basis_->count(order_); }

  ChartPtr chart_;
  int order_;
  std::shared_ptr<const MonomialBasis> basis_;
  std::shared_ptr<const Data> data_;
};

}  // namespace ncdg
