#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "superfluence/model.hpp"

namespace superfluence {

/// Dense (N+1) x (N+1) complex matrix over the symmetric Dicke ladder
/// |m> = |J = N/2, J_z = m - N/2>, m = number of excited atoms. Row-major.
class LadderMatrix {
public:
  LadderMatrix() = default;
  explicit LadderMatrix(int atom_count)
      : atoms_(atom_count), data_(static_cast<std::size_t>(atom_count + 1) * (atom_count + 1)) {}

  int atom_count() const noexcept { return atoms_; }
  int dim() const noexcept { return atoms_ + 1; }

  cplx& operator()(int m, int mp) noexcept { return data_[index(m, mp)]; }
  const cplx& operator()(int m, int mp) const noexcept { return data_[index(m, mp)]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  void fill_zero();
  cplx trace() const;

  /// *this += factor * other
  void add_scaled(const LadderMatrix& other, cplx factor);
  void add_scaled(const LadderMatrix& other, double factor);

private:
  std::size_t index(int m, int mp) const noexcept {
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(atoms_ + 1) +
           static_cast<std::size_t>(mp);
  }

  int atoms_ = 0;
  std::vector<cplx> data_;
};

/// m (N - m + 1): the J_+ J_- eigenvalue on |m>.
inline double ladder_weight(int atom_count, int m) {
  return static_cast<double>(m) * static_cast<double>(atom_count - m + 1);
}

/// sqrt(m (N - m + 1)) for m = 0..N; entry m is the <m-1|J_-|m> element.
std::vector<double> lowering_elements(int atom_count);

/// Contraction with J_- weights: sum_m sqrt(m(N-m+1)) M(m-1, m).
cplx contract_lowering(const LadderMatrix& m, std::span<const double> elements);
/// Contraction with J_+ weights: sum_m sqrt(m(N-m+1)) M(m, m-1).
cplx contract_raising(const LadderMatrix& m, std::span<const double> elements);

}  // namespace superfluence
