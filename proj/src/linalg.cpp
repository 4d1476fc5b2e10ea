#include "aqft/linalg.hpp"

#include "aqft/errors.hpp"

#include <algorithm>
#include <list>

namespace aqft {

SparseVector add(const SparseVector& a, const SparseVector& b) {
  SparseVector out = a;
  axpy(out, Rational(1), b);
  return out;
}

SparseVector scale(const SparseVector& a, const Rational& s) {
  SparseVector out;
  if (s == 0) return out;
  for (const auto& [i, v] : a) out.emplace(i, v * s);
  return out;
}

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x) {
    auto it = y.find(i);
    if (it == y.end()) {
      y.emplace(i, a * v);
    } else {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, 1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j)
      if (rows[i][j] != 0) m.data_[i].emplace(j, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<SparseVector>& columns) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, v] : columns[j]) {
      if (i >= rows) throw Error(ErrorKind::ShapeMismatch, "column entry out of range");
      if (v != 0) m.data_[i][j] = v;
    }
  return m;
}

Rational Matrix::at(std::size_t i, std::size_t j) const {
  const auto& r = data_.at(i);
  auto it = r.find(j);
  return it == r.end() ? Rational(0) : it->second;
}

void Matrix::set(std::size_t i, std::size_t j, const Rational& value) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorKind::ShapeMismatch, "matrix index out of range");
  if (value == 0)
    data_[i].erase(j);
  else
    data_[i][j] = value;
}

void Matrix::add(std::size_t i, std::size_t j, const Rational& value) { set(i, j, at(i, j) + value); }

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

bool Matrix::is_zero() const { return nonzeros() == 0; }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v);
  return t;
}

SparseVector Matrix::apply(const SparseVector& v) const {
  SparseVector out;
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational s = 0;
    const auto& r = data_[i];
    if (r.size() < v.size()) {
      for (const auto& [j, a] : r) {
        auto it = v.find(j);
        if (it != v.end()) s += a * it->second;
      }
    } else {
      for (const auto& [j, b] : v) {
        auto it = r.find(j);
        if (it != r.end()) s += it->second * b;
      }
    }
    if (s != 0) out.emplace(i, s);
  }
  return out;
}

std::vector<SparseVector> Matrix::columns() const {
  std::vector<SparseVector> cols(cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (const auto& [j, v] : data_[i]) cols[j].emplace(i, v);
  return cols;
}

Matrix Matrix::scaled(const Rational& s) const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) m.data_[i] = scale(data_[i], s);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorKind::ShapeMismatch, "matrix product " + std::to_string(a.rows_) + "x" +
                                              std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                              std::to_string(b.cols_));
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (const auto& [k, v] : a.data_[i]) axpy(c.data_[i], v, b.data_[k]);
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ShapeMismatch, "matrix sum shapes differ");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows_; ++i) axpy(c.data_[i], Rational(1), b.data_[i]);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + b.scaled(-1); }

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, v] : a.row(i)) m.set(i, j, v);
    for (const auto& [j, v] : b.row(i)) m.set(i, a.cols() + j, v);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Fraction-free rank

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

IntRow integer_row(const SparseVector& r) {
  Integer lcm = 1;
  for (const auto& [j, v] : r) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(r.size());
  for (const auto& [j, v] : r) out.emplace_back(j, Integer(v.get_num() * (lcm / v.get_den())));
  return out;
}

void make_primitive(IntRow& r) {
  Integer g = 0;
  for (const auto& [j, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [j, v] : r) v /= g;
}

/// r <- a r - b p, both sorted by column.
IntRow combine(const IntRow& r, const Integer& a, const IntRow& p, const Integer& b) {
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, k = 0;
  while (i < r.size() || k < p.size()) {
    if (k == p.size() || (i < r.size() && r[i].first < p[k].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[k].first < r[i].first) {
      out.emplace_back(p[k].first, -b * p[k].second);
      ++k;
    } else {
      Integer v = a * r[i].second - b * p[k].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++k;
    }
  }
  return out;
}

const Integer* entry(const IntRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it == r.end() || it->first != col) return nullptr;
  return &it->second;
}

}  // namespace

std::size_t rank(const Matrix& m, PivotOrder order) {
  std::list<IntRow> rows;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!m.row(i).empty()) rows.push_back(integer_row(m.row(i)));
  std::size_t r = 0;
  while (!rows.empty()) {
    auto pivot = rows.begin();
    if (order == PivotOrder::MinFill)
      for (auto it = rows.begin(); it != rows.end(); ++it)
        if (it->size() < pivot->size()) pivot = it;
    IntRow p = std::move(*pivot);
    rows.erase(pivot);
    ++r;
    const std::size_t col = p.front().first;
    const Integer a = p.front().second;
    for (auto it = rows.begin(); it != rows.end();) {
      if (const Integer* b = entry(*it, col)) {
        Integer g = gcd(a, *b);
        *it = combine(*it, a / g, p, *b / g);
        make_primitive(*it);
        if (it->empty()) {
          it = rows.erase(it);
          continue;
        }
      }
      ++it;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Reduced echelon form over Q

namespace {

/// Incrementally maintained reduced row echelon form. Pivot rows carry 1 at
/// their pivot and 0 at every other pivot column. Only columns below
/// `pivot_limit` may become pivots.
class Echelon {
 public:
  explicit Echelon(std::size_t pivot_limit) : limit_(pivot_limit) {}

  SparseVector reduce(SparseVector row) const {
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [j, v] : row)
      if (pivots_.count(j)) hits.emplace_back(j, v);
    for (const auto& [j, v] : hits) axpy(row, -v, pivots_.at(j));
    return row;
  }

  /// Returns the residual after reduction; adds a pivot when possible.
  SparseVector insert(const SparseVector& row) {
    SparseVector r = reduce(row);
    auto it = r.begin();
    if (it == r.end() || it->first >= limit_) return r;
    const std::size_t p = it->first;
    r = scale(r, 1 / Rational(it->second));
    for (auto& [c, other] : pivots_) {
      auto e = other.find(p);
      if (e != other.end()) {
        Rational f = e->second;
        axpy(other, -f, r);
      }
    }
    pivots_.emplace(p, r);
    return {};
  }

  const std::map<std::size_t, SparseVector>& pivots() const { return pivots_; }

 private:
  std::size_t limit_;
  std::map<std::size_t, SparseVector> pivots_;
};

}  // namespace

std::vector<SparseVector> nullspace(const Matrix& m) {
  Echelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  std::vector<SparseVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (e.pivots().count(f)) continue;
    SparseVector x;
    x.emplace(f, 1);
    for (const auto& [p, row] : e.pivots()) {
      auto it = row.find(f);
      if (it != row.end()) x.emplace(p, -it->second);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<SparseVector> solve(const Matrix& m, const SparseVector& b) {
  const std::size_t n = m.cols();
  Echelon e(n);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVector row = m.row(i);
    auto it = b.find(i);
    if (it != b.end()) row.emplace(n, it->second);
    SparseVector residual = e.insert(row);
    if (!residual.empty()) return std::nullopt;  // 0 = nonzero
  }
  SparseVector x;
  for (const auto& [p, row] : e.pivots()) {
    auto it = row.find(n);
    if (it != row.end()) x.emplace(p, it->second);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Echelon e(n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseVector row = m.row(i);
    row.emplace(n + i, 1);
    e.insert(row);
  }
  if (e.pivots().size() != n) return std::nullopt;
  Matrix inv(n, n);
  for (const auto& [p, row] : e.pivots())
    for (auto it = row.lower_bound(n); it != row.end(); ++it) inv.set(p, it->first - n, it->second);
  return inv;
}

std::vector<std::size_t> independent_subset(const std::vector<SparseVector>& vectors) {
  std::size_t limit = 0;
  for (const auto& v : vectors)
    if (!v.empty()) limit = std::max(limit, v.rbegin()->first + 1);
  Echelon e(limit);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::size_t before = e.pivots().size();
    e.insert(vectors[i]);
    if (e.pivots().size() > before) out.push_back(i);
  }
  return out;
}

}  // namespace aqft
