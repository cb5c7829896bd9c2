#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ncdg/series.hpp"

namespace ncdg {

// Dense array of series indexed by `rank` indices in [0, dim).
class SeriesArray {
 public:
  SeriesArray() = default;
  SeriesArray(int dim, int rank, int truncation);

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  int truncation() const { return truncation_; }
  std::size_t size() const { return data_.size(); }

  template <typename... I>
  HbarSeries& operator()(I... idx) {
    return data_[flat({static_cast<int>(idx)...})];
  }
  template <typename... I>
  const HbarSeries& operator()(I... idx) const {
    return data_[flat({static_cast<int>(idx)...})];
  }
  HbarSeries& at_flat(std::size_t k) { return data_[k]; }
  const HbarSeries& at_flat(std::size_t k) const { return data_[k]; }
  // Decodes a flat position into its index tuple.
  std::vector<int> indices(std::size_t k) const;
  const HbarSeries& at(const std::vector<int>& idx) const { return data_[flat_vec(idx)]; }
  HbarSeries& at(const std::vector<int>& idx) { return data_[flat_vec(idx)]; }

  bool is_zero() const;
  friend bool operator==(const SeriesArray& a, const SeriesArray& b);
  friend SeriesArray operator+(const SeriesArray& a, const SeriesArray& b);
  friend SeriesArray operator-(const SeriesArray& a, const SeriesArray& b);

 private:
  std::size_t flat(std::initializer_list<int> idx) const;
  std::size_t flat_vec(const std::vector<int>& idx) const;

  int dim_ = 0;
  int rank_ = 0;
  int truncation_ = 0;
  std::vector<HbarSeries> data_;
};

// First index tuple where a and b differ, with the first differing order.
struct ArrayDifference {
  std::vector<int> indices;
  int order = -1;
};
std::optional<ArrayDifference> first_difference(const SeriesArray& a, const SeriesArray& b);
int first_difference(const HbarSeries& a, const HbarSeries& b);

}  // namespace ncdg
