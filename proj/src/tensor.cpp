#include "ncdg/tensor.hpp"

#include <optional>

#include "ncdg/errors.hpp"

namespace ncdg {

SeriesArray::SeriesArray(int dim, int rank, int truncation)
    : dim_(dim), rank_(rank), truncation_(truncation) {
  std::size_t n = 1;
  for (int r = 0; r < rank; ++r) n *= dim;
  data_.assign(n, HbarSeries(truncation));
}

std::size_t SeriesArray::flat(std::initializer_list<int> idx) const {
  std::size_t k = 0;
  for (int i : idx) k = k * dim_ + i;
  return k;
}

std::size_t SeriesArray::flat_vec(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw ShapeMismatch("wrong number of indices");
  std::size_t k = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw ShapeMismatch("index out of range");
    k = k * dim_ + i;
  }
  return k;
}

std::vector<int> SeriesArray::indices(std::size_t k) const {
  std::vector<int> idx(rank_);
  for (int r = rank_ - 1; r >= 0; --r) {
    idx[r] = static_cast<int>(k % dim_);
    k /= dim_;
  }
  return idx;
}

bool SeriesArray::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

bool operator==(const SeriesArray& a, const SeriesArray& b) {
  return a.dim_ == b.dim_ && a.rank_ == b.rank_ && a.data_ == b.data_;
}

namespace {

void require_same_shape(const SeriesArray& a, const SeriesArray& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank()) throw ShapeMismatch("array shapes differ");
}

}  // namespace

SeriesArray operator+(const SeriesArray& a, const SeriesArray& b) {
  require_same_shape(a, b);
  SeriesArray r = a;
  for (std::size_t k = 0; k < a.size(); ++k) r.data_[k] = a.data_[k] + b.data_[k];
  return r;
}

SeriesArray operator-(const SeriesArray& a, const SeriesArray& b) {
  require_same_shape(a, b);
  SeriesArray r = a;
  for (std::size_t k = 0; k < a.size(); ++k) r.data_[k] = a.data_[k] - b.data_[k];
  return r;
}

int first_difference(const HbarSeries& a, const HbarSeries& b) {
  for (int q = 0; q <= std::min(a.truncation(), b.truncation()); ++q)
    if (!(a[q] == b[q])) return q;
  return -1;
}

std::optional<ArrayDifference> first_difference(const SeriesArray& a, const SeriesArray& b) {
  require_same_shape(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    int q = first_difference(a.at_flat(k), b.at_flat(k));
    if (q >= 0) return ArrayDifference{a.indices(k), q};
  }
  return std::nullopt;
}

}  // namespace ncdg
