#include "toybit/binform.hpp"

#include "toybit/normalform.hpp"

#include <sstream>
#include <stdexcept>

namespace toybit {

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.front().size() : 0;
  Gf2Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) {
      if (rows[i][j] != 0 && rows[i][j] != 1) throw std::invalid_argument("entries must be 0 or 1");
      m.set(i, j, rows[i][j] != 0);
    }
  }
  return m;
}

Gf2Matrix Gf2Matrix::identity(std::size_t n) {
  Gf2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
  return t;
}

bool Gf2Matrix::is_zero() const {
  for (auto x : data_)
    if (x) return false;
  return true;
}

Gf2Matrix Gf2Matrix::rref() const {
  Gf2Matrix m = *this;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols_ && pivot_row < rows_; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows_ && !m(sel, c)) ++sel;
    if (sel == rows_) continue;
    if (sel != pivot_row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.data_[sel * cols_ + j], m.data_[pivot_row * cols_ + j]);
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != pivot_row && m(r, c))
        for (std::size_t j = 0; j < cols_; ++j) m.data_[r * cols_ + j] ^= m(pivot_row, j);
    ++pivot_row;
  }
  return m;
}

std::size_t Gf2Matrix::rank() const {
  const Gf2Matrix r = rref();
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (r(i, j)) {
        ++k;
        break;
      }
  return k;
}

std::string Gf2Matrix::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << int((*this)(i, j));
    os << '\n';
  }
  return os.str();
}

Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("GF(2) product: shape mismatch");
  Gf2Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (a(i, k))
        for (std::size_t j = 0; j < b.cols_; ++j) out.data_[i * out.cols_ + j] ^= b(k, j);
  return out;
}

AdjacencyMatrix::AdjacencyMatrix(Gf2Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("adjacency matrix must be square");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    if (m_(i, i)) throw std::invalid_argument("adjacency matrix must have a zero diagonal");
    for (std::size_t j = 0; j < i; ++j)
      if (m_(i, j) != m_(j, i)) throw std::invalid_argument("adjacency matrix must be symmetric");
  }
}

AdjacencyMatrix AdjacencyMatrix::from_edges(std::size_t n,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  AdjacencyMatrix a(n);
  for (auto [x, y] : edges) a.set_edge(x, y, true);
  return a;
}

void AdjacencyMatrix::toggle(std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("self-loops are not allowed in a simple graph");
  m_.flip(a, b);
  m_.flip(b, a);
}

void AdjacencyMatrix::set_edge(std::size_t a, std::size_t b, bool on) {
  if (a == b) throw std::invalid_argument("self-loops are not allowed in a simple graph");
  if (a >= size() || b >= size()) throw std::out_of_range("vertex out of range");
  m_.set(a, b, on);
  m_.set(b, a, on);
}

std::vector<std::size_t> AdjacencyMatrix::neighbours(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < size(); ++w)
    if (m_(v, w)) out.push_back(w);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> AdjacencyMatrix::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b)
      if (m_(a, b)) out.emplace_back(a, b);
  return out;
}

void AdjacencyMatrix::erase_vertex(std::size_t v) {
  const std::size_t n = size();
  Gf2Matrix m(n - 1, n - 1);
  for (std::size_t i = 0, r = 0; i < n; ++i) {
    if (i == v) continue;
    for (std::size_t j = 0, c = 0; j < n; ++j) {
      if (j == v) continue;
      m.set(r, c++, m_(i, j));
    }
    ++r;
  }
  m_ = std::move(m);
}

std::size_t AdjacencyMatrix::add_vertex() {
  const std::size_t n = size();
  Gf2Matrix m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, m_(i, j));
  m_ = std::move(m);
  return n;
}

Gf2Matrix symplectic_form(std::size_t n) {
  Gf2Matrix j(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    j.set(i, i + n, true);
    j.set(i + n, i, true);
  }
  return j;
}

bool validate_state(const CheckMatrix& s) {
  if (s.rows() != 2 * s.cols()) throw std::invalid_argument("check matrix must be 2n x n");
  const std::size_t n = s.cols();
  if (!(s.transpose() * symplectic_form(n) * s).is_zero()) return false;
  return s.rank() == n;
}

bool validate_transform(const Gf2Matrix& q) {
  if (q.rows() != q.cols() || q.rows() % 2) throw std::invalid_argument("transform must be 2n x 2n");
  const auto j = symplectic_form(q.rows() / 2);
  return q.transpose() * j * q == j;
}

CheckMatrix graph_form(const AdjacencyMatrix& theta) {
  const std::size_t n = theta.size();
  CheckMatrix s(2 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.set(i, j, theta.has_edge(i, j));
    s.set(n + i, i, true);
  }
  return s;
}

AdjacencyMatrix local_complement_adj(const AdjacencyMatrix& theta, std::size_t v) {
  if (v >= theta.size()) throw std::out_of_range("local complementation: vertex out of range");
  AdjacencyMatrix out = theta;
  const auto nb = theta.neighbours(v);
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j) out.toggle(nb[i], nb[j]);
  return out;
}

bool same_column_span(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.rows() != b.rows()) return false;
  auto ra = a.transpose().rref();
  auto rb = b.transpose().rref();
  // Compare the non-zero rows of both echelon forms.
  auto nonzero = [](const Gf2Matrix& m) {
    std::vector<std::vector<std::uint8_t>> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<std::uint8_t> r(m.cols());
      bool any = false;
      for (std::size_t j = 0; j < m.cols(); ++j) any |= (r[j] = m(i, j)) != 0;
      if (any) rows.push_back(r);
    }
    return rows;
  };
  return nonzero(ra) == nonzero(rb);
}

namespace {

// The symmetries of a single-bit maximal-knowledge state form the Klein group
// {id, G(11), R(11), G(11)R(11)}; they encode as 00, Z=10, X=01, X xor Z=11.
unsigned encode_symmetry(const LocalOp& f) {
  if (f == LocalOp::green(kPhase11)) return 2;
  if (f == LocalOp::red(kPhase11)) return 1;
  if (f == LocalOp::green(kPhase11) * LocalOp::red(kPhase11)) return 3;
  if (f.is_identity()) return 0;
  throw std::logic_error("not a Klein-group element");
}

LocalOp decode_symmetry(unsigned bits) {
  switch (bits) {
    case 2: return LocalOp::green(kPhase11);
    case 1: return LocalOp::red(kPhase11);
    case 3: return LocalOp::green(kPhase11) * LocalOp::red(kPhase11);
    default: return {};
  }
}

}  // namespace

CheckMatrix extract_check_matrix(const Gslo& g) {
  const CheckMatrix s = graph_form(g.theta);
  const std::size_t n = g.size();
  CheckMatrix out(2 * n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t k = 0; k < n; ++k) {
      const unsigned bits = (s(k, c) << 1) | s(k + n, c);
      const LocalOp& op = g.ops[k];
      const unsigned image = encode_symmetry(op * decode_symmetry(bits) * op.inverse());
      out.set(k, c, (image >> 1) & 1U);
      out.set(k + n, c, image & 1U);
    }
  return out;
}

Gf2Matrix parse_bit_matrix(const std::string& text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) {
      if (tok != "0" && tok != "1")
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 0 or 1, got '" + tok + "'");
      row.push_back(tok == "1");
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return Gf2Matrix::from_rows(rows);
}

}  // namespace toybit
