#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace toybit {

struct Gslo;

/// Dense matrix over GF(2). Entries are 0/1 bytes; sizes here are a few dozen at most.
class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  /// From nested rows; throws if ragged or entries are not 0/1.
  static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows);
  static Gf2Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, bool v) { data_[r * cols_ + c] = v ? 1 : 0; }
  void flip(std::size_t r, std::size_t c) { data_[r * cols_ + c] ^= 1U; }

  [[nodiscard]] Gf2Matrix transpose() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::size_t rank() const;
  /// Reduced row echelon form.
  [[nodiscard]] Gf2Matrix rref() const;
  /// Rows separated by newlines, entries by spaces.
  [[nodiscard]] std::string str() const;

  friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b);
  bool operator==(const Gf2Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Symmetric GF(2) matrix with zero diagonal: the adjacency matrix of a simple graph.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : m_(n, n) {}
  /// Throws std::invalid_argument unless square, symmetric, zero-diagonal.
  explicit AdjacencyMatrix(Gf2Matrix m);
  static AdjacencyMatrix from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  [[nodiscard]] std::size_t size() const { return m_.rows(); }
  [[nodiscard]] bool has_edge(std::size_t a, std::size_t b) const { return m_(a, b) != 0; }
  void toggle(std::size_t a, std::size_t b);
  void set_edge(std::size_t a, std::size_t b, bool on);
  [[nodiscard]] std::vector<std::size_t> neighbours(std::size_t v) const;
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  [[nodiscard]] const Gf2Matrix& matrix() const { return m_; }
  /// Removes vertex v; higher vertices shift down by one.
  void erase_vertex(std::size_t v);
  /// Appends an isolated vertex and returns its index.
  std::size_t add_vertex();

  bool operator==(const AdjacencyMatrix&) const = default;

 private:
  Gf2Matrix m_;
};

/// 2n x n check matrix. Row k and row k+n hold the encoding of the quadrature
/// variable on toy bit k: Z -> (1,0), X -> (0,1), X xor Z -> (1,1), none -> (0,0).
/// Signs/values of the variables are not represented.
using CheckMatrix = Gf2Matrix;

/// J = ((0, I), (I, 0)) of size 2n.
Gf2Matrix symplectic_form(std::size_t n);

/// S^T J S = 0 and full column rank. Throws std::invalid_argument unless 2n x n.
bool validate_state(const CheckMatrix& s);
/// Q^T J Q = J. Throws std::invalid_argument unless 2n x 2n.
bool validate_transform(const Gf2Matrix& q);
/// (theta over I).
CheckMatrix graph_form(const AdjacencyMatrix& theta);
/// Toggles every edge between two distinct neighbours of v. Throws on v out of range.
AdjacencyMatrix local_complement_adj(const AdjacencyMatrix& theta, std::size_t v);
/// Same column space over GF(2) (same stabilizer group up to signs).
bool same_column_span(const Gf2Matrix& a, const Gf2Matrix& b);

/// Check matrix of a graph state with local operators. Column v starts from the
/// graph-state stabiliser (X on v, Z on its neighbours); each toy bit's entry is
/// then conjugated by that bit's operator, which permutes X, Z and X xor Z.
CheckMatrix extract_check_matrix(const Gslo& g);

/// Reads rows of space-separated 0/1 entries; blank lines and `#` comments skipped.
Gf2Matrix parse_bit_matrix(const std::string& text);

}  // namespace toybit
