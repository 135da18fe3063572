#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace griffiths {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Absolute/relative threshold pair. A residual r measured against a
/// magnitude s is accepted when r <= absolute + relative * s.
class Tolerance {
 public:
  Tolerance() = default;
  explicit Tolerance(double absolute, double relative = 0.0);

  double absolute() const noexcept { return absolute_; }
  double relative() const noexcept { return relative_; }

  double bound(double scale = 1.0) const noexcept { return absolute_ + relative_ * scale; }
  bool accepts(double residual, double scale = 1.0) const noexcept {
    return residual <= bound(scale);
  }

 private:
  double absolute_ = 1e-9;
  double relative_ = 0.0;
};

/// Dense complex matrix, row-major, value semantics. Entries are always finite.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> entries);
  static Matrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const Complex> data() const noexcept { return data_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Complex at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Complex value);

  Vector column(std::size_t j) const;
  Vector row(std::size_t i) const;
  void set_column(std::size_t j, std::span<const Complex> values);
  Vector diagonal_entries() const;

  Matrix transpose() const;
  /// Largest entry modulus (Chebyshev norm), the norm used throughout.
  double max_abs() const noexcept;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scalar);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix m);
Vector operator*(const Matrix& m, std::span<const Complex> v);

/// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(std::span<const Complex> v) noexcept;

}  // namespace griffiths
