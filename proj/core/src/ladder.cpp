#include "superfluence/ladder.hpp"

#include <algorithm>
#include <cmath>

namespace superfluence {

void LadderMatrix::fill_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

cplx LadderMatrix::trace() const {
  cplx sum{};
  for (int m = 0; m < dim(); ++m) sum += (*this)(m, m);
  return sum;
}

void LadderMatrix::add_scaled(const LadderMatrix& other, cplx factor) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
}

void LadderMatrix::add_scaled(const LadderMatrix& other, double factor) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += factor * other.data_[k];
}

std::vector<double> lowering_elements(int atom_count) {
  std::vector<double> out(static_cast<std::size_t>(atom_count + 1));
  for (int m = 0; m <= atom_count; ++m) out[m] = std::sqrt(ladder_weight(atom_count, m));
  return out;
}

cplx contract_lowering(const LadderMatrix& mat, std::span<const double> elements) {
  cplx sum{};
  for (int m = 1; m < mat.dim(); ++m) sum += elements[m] * mat(m - 1, m);
  return sum;
}

cplx contract_raising(const LadderMatrix& mat, std::span<const double> elements) {
  cplx sum{};
  for (int m = 1; m < mat.dim(); ++m) sum += elements[m] * mat(m, m - 1);
  return sum;
}

}  // namespace superfluence
