#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubeharm {

/// A length-j sequence of nonnegative integers (an element of 𝒫_j(m)).
class OrderedPartition {
 public:
  OrderedPartition() = default;
  explicit OrderedPartition(std::vector<unsigned> parts) : parts_(std::move(parts)) {}

  [[nodiscard]] const std::vector<unsigned>& parts() const { return parts_; }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }
  [[nodiscard]] unsigned operator[](std::size_t i) const { return parts_[i]; }
  [[nodiscard]] unsigned total() const {
    unsigned s = 0;
    for (unsigned p : parts_) s += p;
    return s;
  }
  /// ℓ(ν): number of positive entries.
  [[nodiscard]] unsigned length() const {
    return static_cast<unsigned>(std::count_if(parts_.begin(), parts_.end(), [](unsigned p) { return p > 0; }));
  }

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;

 private:
  std::vector<unsigned> parts_;
};

/// Advances a composition to its successor in lexicographically descending
/// order, keeping its sum. Returns false when `parts` was the last one.
inline bool next_composition(std::vector<unsigned>& parts) {
  if (parts.size() < 2) return false;
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    if (parts[i] == 0) continue;
    unsigned tail = 0;
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      tail += parts[j];
      parts[j] = 0;
    }
    --parts[i];
    parts[i + 1] = tail + 1;
    return true;
  }
  return false;
}

/// Lazily yields every ordered partition of `total` into `parts` nonnegative
/// entries, lexicographically descending: (total,0,…,0) first.
class OrderedPartitionStream {
 public:
  OrderedPartitionStream(unsigned total, unsigned parts) : current_(parts, 0) {
    if (parts == 0) throw std::domain_error("enum_ordered_partitions: need at least one part");
    current_[0] = total;
  }

  std::optional<OrderedPartition> next() {
    if (done_) return std::nullopt;
    OrderedPartition out(current_);
    done_ = !next_composition(current_);
    return out;
  }

 private:
  std::vector<unsigned> current_;
  bool done_ = false;
};

inline OrderedPartitionStream enum_ordered_partitions(unsigned total, unsigned parts) {
  return OrderedPartitionStream(total, parts);
}

/// A weakly decreasing sequence of positive integers. Identity is the trimmed
/// part list; zero padding is supplied only through an explicit part count.
class YoungDiagram {
 public:
  YoungDiagram() = default;
  explicit YoungDiagram(std::vector<unsigned> parts) : parts_(std::move(parts)) {
    if (!std::is_sorted(parts_.begin(), parts_.end(), std::greater<>())) {
      throw std::invalid_argument("YoungDiagram: parts must be weakly decreasing");
    }
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }

  [[nodiscard]] const std::vector<unsigned>& parts() const { return parts_; }
  [[nodiscard]] unsigned weight() const {
    unsigned s = 0;
    for (unsigned p : parts_) s += p;
    return s;
  }
  [[nodiscard]] unsigned length() const { return static_cast<unsigned>(parts_.size()); }

  /// Parts padded with zeros to `part_count` entries.
  [[nodiscard]] std::vector<unsigned> padded(unsigned part_count) const {
    if (part_count < length()) throw std::domain_error("YoungDiagram: part count smaller than length");
    std::vector<unsigned> v = parts_;
    v.resize(part_count, 0);
    return v;
  }

  /// r_i for i >= 1, i.e. how often the part i occurs.
  [[nodiscard]] std::map<unsigned, unsigned> multiplicities() const {
    std::map<unsigned, unsigned> r;
    for (unsigned p : parts_) ++r[p];
    return r;
  }

  /// Multiplicities including r_0 = part_count − ℓ(λ).
  [[nodiscard]] std::map<unsigned, unsigned> multiplicities(unsigned part_count) const {
    if (part_count < length()) throw std::domain_error("YoungDiagram: part count smaller than length");
    auto r = multiplicities();
    if (part_count > length()) r[0] = part_count - length();
    return r;
  }

  /// ⟨0^{r0} 1^{r1} …⟩ notation.
  [[nodiscard]] std::string to_string(unsigned part_count = 0) const {
    const auto r = part_count == 0 ? multiplicities() : multiplicities(part_count);
    std::string s = "<";
    bool first = true;
    for (const auto& [part, mult] : r) {
      if (!first) s += " ";
      first = false;
      s += std::to_string(part) + "^" + std::to_string(mult);
    }
    return s + ">";
  }

  friend bool operator==(const YoungDiagram&, const YoungDiagram&) = default;

 private:
  std::vector<unsigned> parts_;
};

/// Lazily yields Young diagrams of weight `total` with at most `max_parts`
/// parts, in reverse lexicographic order: (total) first.
class YoungStream {
 public:
  YoungStream(unsigned total, unsigned max_parts) : max_parts_(max_parts) {
    if (max_parts == 0) throw std::domain_error("enum_young: need at least one part");
    if (total > 0) current_.push_back(total);
  }

  std::optional<YoungDiagram> next() {
    while (!done_) {
      YoungDiagram candidate(current_);
      done_ = !advance();
      if (candidate.length() <= max_parts_) return candidate;
    }
    return std::nullopt;
  }

 private:
  /// Standard successor in reverse lexicographic order over all partitions.
  bool advance() {
    std::size_t ones = 0;
    while (!current_.empty() && current_.back() == 1) {
      current_.pop_back();
      ++ones;
    }
    if (current_.empty()) return false;
    const unsigned v = --current_.back();
    unsigned remaining = static_cast<unsigned>(ones) + 1;
    while (remaining > v) {
      current_.push_back(v);
      remaining -= v;
    }
    if (remaining > 0) current_.push_back(remaining);
    return true;
  }

  std::vector<unsigned> current_;
  unsigned max_parts_;
  bool done_ = false;
};

inline YoungStream enum_young(unsigned total, unsigned max_parts) { return YoungStream(total, max_parts); }

/// A (k+1)×n nonnegative integer matrix with a_{ij} = 0 for i > j (1-based).
class QuadMatrix {
 public:
  QuadMatrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("QuadMatrix: dimensions must be positive");
  }

  [[nodiscard]] unsigned rows() const { return rows_; }
  [[nodiscard]] unsigned cols() const { return cols_; }

  /// 0-based access; entries below the diagonal are structural zeros.
  [[nodiscard]] unsigned at(unsigned i, unsigned j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  void set(unsigned i, unsigned j, unsigned value) {
    if (i > j && value != 0) throw std::domain_error("QuadMatrix: entry below the diagonal must be zero");
    a_[static_cast<std::size_t>(i) * cols_ + j] = value;
  }

  /// Number of free entries in column j: min(j+1, rows) in 0-based terms.
  [[nodiscard]] unsigned free_entries(unsigned j) const { return std::min(j + 1, rows_); }

  [[nodiscard]] unsigned row_sum(unsigned i) const {
    unsigned s = 0;
    for (unsigned j = 0; j < cols_; ++j) s += at(i, j);
    return s;
  }
  [[nodiscard]] unsigned col_sum(unsigned j) const {
    unsigned s = 0;
    for (unsigned i = 0; i < rows_; ++i) s += at(i, j);
    return s;
  }
  [[nodiscard]] std::vector<unsigned> row_sums() const {
    std::vector<unsigned> v(rows_);
    for (unsigned i = 0; i < rows_; ++i) v[i] = row_sum(i);
    return v;
  }
  [[nodiscard]] std::vector<unsigned> col_sums() const {
    std::vector<unsigned> v(cols_);
    for (unsigned j = 0; j < cols_; ++j) v[j] = col_sum(j);
    return v;
  }
  [[nodiscard]] unsigned total() const {
    unsigned s = 0;
    for (unsigned x : a_) s += x;
    return s;
  }
  /// ℓ(A): number of columns with at least one nonzero entry.
  [[nodiscard]] unsigned nontrivial_columns() const {
    unsigned l = 0;
    for (unsigned j = 0; j < cols_; ++j) l += col_sum(j) > 0 ? 1U : 0U;
    return l;
  }
  /// ν(A): half column sums; requires all column sums even.
  [[nodiscard]] OrderedPartition half_col_sums() const {
    std::vector<unsigned> v(cols_);
    for (unsigned j = 0; j < cols_; ++j) {
      const unsigned s = col_sum(j);
      if (s % 2 != 0) throw std::domain_error("QuadMatrix: column sum is odd");
      v[j] = s / 2;
    }
    return OrderedPartition(std::move(v));
  }
  [[nodiscard]] bool structurally_valid() const {
    for (unsigned i = 0; i < rows_; ++i) {
      for (unsigned j = 0; j < cols_ && j < i; ++j) {
        if (at(i, j) != 0) return false;
      }
    }
    return true;
  }

  friend bool operator==(const QuadMatrix&, const QuadMatrix&) = default;

 private:
  unsigned rows_;
  unsigned cols_;
  std::vector<unsigned> a_;
};

/// Lazily yields every (k+1)×n upper quadrilateral matrix whose column sums
/// are the given values. Column j's free entries range over compositions of
/// its sum; columns advance odometer-style, the last column fastest.
class ColumnSumMatrixStream {
 public:
  ColumnSumMatrixStream(unsigned n, unsigned k, const OrderedPartition& col_sums) : current_(k + 1, n) {
    if (col_sums.size() != n) throw std::invalid_argument("enum_matrices_colsums: column sums must have length n");
    columns_.resize(n);
    for (unsigned j = 0; j < n; ++j) {
      columns_[j].assign(current_.free_entries(j), 0);
      columns_[j][0] = col_sums[j];
    }
  }

  std::optional<QuadMatrix> next() {
    settle();
    if (done_) return std::nullopt;
    for (unsigned j = 0; j < columns_.size(); ++j) {
      for (unsigned i = 0; i < columns_[j].size(); ++i) current_.set(i, j, columns_[j][i]);
    }
    pending_ = true;
    return current_;
  }

  /// Fast path for hot loops: exposes the column compositions without
  /// building a QuadMatrix. Column j holds a_{0j}, …, a_{min(j,k)j}. The
  /// pointer stays valid until the next call.
  bool next_columns(const std::vector<std::vector<unsigned>>*& cols) {
    settle();
    if (done_) return false;
    cols = &columns_;
    pending_ = true;
    return true;
  }

 private:
  void settle() {
    if (pending_) {
      pending_ = false;
      advance();
    }
  }

  void advance() {
    for (std::size_t j = columns_.size(); j-- > 0;) {
      if (next_composition(columns_[j])) return;
      // Reset column j to its first composition and carry.
      unsigned s = 0;
      for (unsigned x : columns_[j]) s += x;
      std::fill(columns_[j].begin(), columns_[j].end(), 0U);
      columns_[j][0] = s;
    }
    done_ = true;
  }

  QuadMatrix current_;
  std::vector<std::vector<unsigned>> columns_;
  bool pending_ = false;
  bool done_ = false;
};

inline ColumnSumMatrixStream enum_matrices_colsums(unsigned n, unsigned k, const OrderedPartition& col_sums) {
  return ColumnSumMatrixStream(n, k, col_sums);
}

/// ℳ_{n,m}^{(k)}: (k+1)×n upper quadrilateral matrices with all column sums
/// even and total 2m, produced as the concatenation over ν ∈ 𝒫_n(m) of the
/// matrices with column sums 2ν.
class EvenMatrixStream {
 public:
  EvenMatrixStream(unsigned n, unsigned k, unsigned total) : n_(n), k_(k), partitions_(check_even(total) / 2, n) {
    open_next_partition();
  }

  std::optional<QuadMatrix> next() {
    while (inner_) {
      if (auto a = inner_->next()) return a;
      open_next_partition();
    }
    return std::nullopt;
  }

  /// The ν that generated the most recent matrix.
  [[nodiscard]] const OrderedPartition& current_partition() const { return nu_; }

 private:
  static unsigned check_even(unsigned total) {
    if (total % 2 != 0) throw std::domain_error("enum_matrices_even: total must be even");
    return total;
  }

  void open_next_partition() {
    auto nu = partitions_.next();
    if (!nu) {
      inner_.reset();
      return;
    }
    nu_ = *nu;
    std::vector<unsigned> doubled = nu->parts();
    for (auto& x : doubled) x *= 2;
    inner_.emplace(n_, k_, OrderedPartition(std::move(doubled)));
  }

  unsigned n_;
  unsigned k_;
  OrderedPartitionStream partitions_;
  OrderedPartition nu_;
  std::optional<ColumnSumMatrixStream> inner_;
};

inline EvenMatrixStream enum_matrices_even(unsigned n, unsigned k, unsigned total) { return EvenMatrixStream(n, k, total); }

/// Drains a stream into a vector. Intended for tests and tiny cases.
template <class Stream>
auto collect(Stream&& stream) {
  using Item = typename decltype(stream.next())::value_type;
  std::vector<Item> out;
  while (auto x = stream.next()) out.push_back(std::move(*x));
  return out;
}

}  // namespace cubeharm
