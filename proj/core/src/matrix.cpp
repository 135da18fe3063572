#include "griffiths/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "griffiths/error.hpp"

namespace griffiths {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> values) {
  for (const auto& z : values) {
    if (!finite(z)) throw Error(ErrorCode::NonFinite, "matrix entry is not finite");
  }
}

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(op) + " of " + shape(a) + " and " + shape(b));
  }
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NoDistinctSpectrum: return "NoDistinctSpectrum";
    case ErrorCode::IsotropicEigenvector: return "IsotropicEigenvector";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDistinguished: return "NotDistinguished";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::NotBasedAtIdentity: return "NotBasedAtIdentity";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Tolerance::Tolerance(double absolute, double relative) : absolute_(absolute), relative_(relative) {
  if (!(absolute >= 0.0) || !(relative >= 0.0) || !std::isfinite(absolute) ||
      !std::isfinite(relative) || (absolute == 0.0 && relative == 0.0)) {
    throw Error(ErrorCode::InvariantViolation,
                "tolerance needs nonnegative finite parts, at least one positive");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "entry count " + std::to_string(data_.size()) +
                                              " does not match " + std::to_string(rows) + "x" +
                                              std::to_string(cols));
  }
  require_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) throw Error(ErrorCode::ShapeMismatch, "no columns");
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Complex Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::IndexOutOfRange, "entry outside " + shape(*this));
  return data_[i * cols_ + j];
}

void Matrix::set(std::size_t i, std::size_t j, Complex value) {
  if (i >= rows_ || j >= cols_) throw Error(ErrorCode::IndexOutOfRange, "entry outside " + shape(*this));
  if (!finite(value)) throw Error(ErrorCode::NonFinite, "matrix entry is not finite");
  data_[i * cols_ + j] = value;
}

Vector Matrix::column(std::size_t j) const {
  if (j >= cols_) throw Error(ErrorCode::IndexOutOfRange, "column outside " + shape(*this));
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = data_[i * cols_ + j];
  return v;
}

Vector Matrix::row(std::size_t i) const {
  if (i >= rows_) throw Error(ErrorCode::IndexOutOfRange, "row outside " + shape(*this));
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void Matrix::set_column(std::size_t j, std::span<const Complex> values) {
  if (j >= cols_) throw Error(ErrorCode::IndexOutOfRange, "column outside " + shape(*this));
  if (values.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length mismatch");
  require_finite(values);
  for (std::size_t i = 0; i < rows_; ++i) data_[i * cols_ + j] = values[i];
}

Vector Matrix::diagonal_entries() const {
  Vector d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = data_[i * cols_ + i];
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
  return t;
}

double Matrix::max_abs() const noexcept { return griffiths::max_abs(data_); }

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  require_finite(data_);
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  require_finite(data_);
  return *this;
}

Matrix& Matrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  require_finite(data_);
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator-(const Matrix& a) { return Complex(-1.0) * a; }
Matrix operator*(Complex s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "product of " + shape(a) + " and " + shape(b));
  }
  std::vector<Complex> out(a.rows() * b.cols());
  const auto ad = a.data();
  const auto bd = b.data();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += ad[i * a.cols() + k] * bd[k * b.cols() + j];
      out[i * b.cols() + j] = acc;
    }
  }
  return Matrix(a.rows(), b.cols(), std::move(out));
}

Vector operator*(const Matrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector length mismatch");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc{};
    for (std::size_t k = 0; k < m.cols(); ++k) acc += m(i, k) * v[k];
    out[i] = acc;
  }
  require_finite(out);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "comparison");
  double r = 0.0;
  const auto ad = a.data();
  const auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) r = std::max(r, std::abs(ad[k] - bd[k]));
  return r;
}

double max_abs(std::span<const Complex> v) noexcept {
  double r = 0.0;
  for (const auto& z : v) r = std::max(r, std::abs(z));
  return r;
}

}  // namespace griffiths
