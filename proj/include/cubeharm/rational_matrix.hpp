#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cubeharm/rational.hpp"

namespace cubeharm {

/// Dense matrix of rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("RationalMatrix: dimensions must be positive");
  }

  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("RationalMatrix: dimensions must be positive");
    if (data_.size() != rows * cols) throw std::invalid_argument("RationalMatrix: entry count does not match dimensions");
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

enum class SolveStatus { kUnique, kNoSolution, kUnderdetermined };

struct LinearSolveOutcome {
  SolveStatus status = SolveStatus::kUnique;
  std::size_t rank = 0;
  /// Filled only for kUnique.
  std::vector<Rational> solution;
};

namespace detail {

/// In-place reduced row echelon form over the first `pivot_cols` columns.
/// Returns the pivot column of each pivot row.
inline std::vector<std::size_t> reduce(RationalMatrix& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    const Rational inv = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Exact Gauss-Jordan elimination. Without a right-hand side only the rank is
/// reported (status kUnique is meaningless then). With one, the outcome says
/// whether the system has a unique solution, none, or infinitely many.
inline LinearSolveOutcome solve_or_rank(const RationalMatrix& m, const std::optional<std::vector<Rational>>& rhs = std::nullopt) {
  LinearSolveOutcome out;
  if (!rhs) {
    RationalMatrix work = m;
    out.rank = detail::reduce(work, work.cols()).size();
    return out;
  }
  if (rhs->size() != m.rows()) throw std::invalid_argument("solve_or_rank: rhs length must equal row count");
  RationalMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = (*rhs)[r];
  }
  const auto pivots = detail::reduce(aug, m.cols());
  out.rank = pivots.size();
  for (std::size_t r = out.rank; r < aug.rows(); ++r) {
    if (!aug(r, m.cols()).is_zero()) {
      out.status = SolveStatus::kNoSolution;
      return out;
    }
  }
  if (out.rank < m.cols()) {
    out.status = SolveStatus::kUnderdetermined;
    return out;
  }
  out.status = SolveStatus::kUnique;
  out.solution.resize(m.cols());
  for (std::size_t r = 0; r < out.rank; ++r) out.solution[pivots[r]] = aug(r, m.cols());
  return out;
}

inline std::size_t rank(const RationalMatrix& m) { return solve_or_rank(m).rank; }

}  // namespace cubeharm
