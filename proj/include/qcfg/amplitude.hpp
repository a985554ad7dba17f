#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcfg {

using Complex = std::complex<double>;

/// Tolerance used by every comparison unless the caller supplies one.
inline constexpr double kDefaultTolerance = 1e-9;

class DimensionMismatch : public std::invalid_argument {
public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);

  std::size_t lhs_size() const noexcept { return lhs_; }
  std::size_t rhs_size() const noexcept { return rhs_; }

private:
  std::size_t lhs_;
  std::size_t rhs_;
};

/// Fixed-length complex vector carried by a production or a derivation.
/// Component k is the k-th amplitude of the n-dimensional grammar.
class AmplitudeVector {
public:
  AmplitudeVector() = default;
  explicit AmplitudeVector(std::size_t n, Complex fill = Complex{0.0, 0.0})
      : c_(n, fill) {}
  AmplitudeVector(std::initializer_list<Complex> init) : c_(init) {}
  explicit AmplitudeVector(std::vector<Complex> components)
      : c_(std::move(components)) {}

  static AmplitudeVector zeros(std::size_t n) { return AmplitudeVector(n); }
  static AmplitudeVector ones(std::size_t n) {
    return AmplitudeVector(n, Complex{1.0, 0.0});
  }

  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  const Complex& operator[](std::size_t k) const { return c_[k]; }
  Complex& operator[](std::size_t k) { return c_[k]; }

  std::span<const Complex> components() const noexcept { return c_; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  /// True when every component is finite.
  bool is_finite() const noexcept;
  /// Exact zero test; use approx_eq for tolerance-based checks.
  bool is_zero() const noexcept;

  AmplitudeVector& operator+=(const AmplitudeVector& rhs);
  AmplitudeVector& operator*=(Complex s);

  friend bool operator==(const AmplitudeVector&, const AmplitudeVector&) = default;

private:
  std::vector<Complex> c_;
};

/// <u, v> = sum_k conj(u_k) v_k. Conjugation applies to the first argument.
Complex inner_product(const AmplitudeVector& u, const AmplitudeVector& v);

/// sum_k |u_k|^2
double norm_sq(const AmplitudeVector& u) noexcept;

/// Component-wise product, the amplitude of two chained productions.
AmplitudeVector hadamard(const AmplitudeVector& u, const AmplitudeVector& v);

AmplitudeVector vec_add(const AmplitudeVector& u, const AmplitudeVector& v);

AmplitudeVector scale(const AmplitudeVector& u, Complex s);

inline AmplitudeVector operator+(AmplitudeVector u, const AmplitudeVector& v) {
  u += v;
  return u;
}

bool approx_eq(Complex x, Complex y, double tol = kDefaultTolerance);
bool approx_eq(double x, double y, double tol = kDefaultTolerance);
/// Max component-wise modulus of u - v is at most tol. Vectors of different
/// length never compare equal.
bool approx_eq(const AmplitudeVector& u, const AmplitudeVector& v,
               double tol = kDefaultTolerance);

/// "a+bi" style rendering with the requested significant digits.
std::string format_complex(Complex z, int digits = 12);
std::string format_vector(const AmplitudeVector& v, int digits = 12);

}  // namespace qcfg
