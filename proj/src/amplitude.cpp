#include "qcfg/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qcfg {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("amplitude dimension mismatch: " +
                            std::to_string(lhs) + " vs " + std::to_string(rhs)),
      lhs_(lhs),
      rhs_(rhs) {}

namespace {

void require_same_size(const AmplitudeVector& u, const AmplitudeVector& v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
}

}  // namespace

bool AmplitudeVector::is_finite() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool AmplitudeVector::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(),
                     [](const Complex& z) { return z == Complex{}; });
}

AmplitudeVector& AmplitudeVector::operator+=(const AmplitudeVector& rhs) {
  require_same_size(*this, rhs);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

AmplitudeVector& AmplitudeVector::operator*=(Complex s) {
  for (auto& z : c_) z *= s;
  return *this;
}

Complex inner_product(const AmplitudeVector& u, const AmplitudeVector& v) {
  require_same_size(u, v);
  Complex acc{};
  for (std::size_t k = 0; k < u.size(); ++k) acc += std::conj(u[k]) * v[k];
  return acc;
}

double norm_sq(const AmplitudeVector& u) noexcept {
  double acc = 0.0;
  for (const auto& z : u) acc += std::norm(z);
  return acc;
}

AmplitudeVector hadamard(const AmplitudeVector& u, const AmplitudeVector& v) {
  require_same_size(u, v);
  AmplitudeVector out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] * v[k];
  return out;
}

AmplitudeVector vec_add(const AmplitudeVector& u, const AmplitudeVector& v) {
  return u + v;
}

AmplitudeVector scale(const AmplitudeVector& u, Complex s) {
  AmplitudeVector out = u;
  out *= s;
  return out;
}

bool approx_eq(Complex x, Complex y, double tol) {
  return std::abs(x - y) <= tol;
}

bool approx_eq(double x, double y, double tol) {
  return std::abs(x - y) <= tol;
}

bool approx_eq(const AmplitudeVector& u, const AmplitudeVector& v, double tol) {
  if (u.size() != v.size()) return false;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (std::abs(u[k] - v[k]) > tol) return false;
  }
  return true;
}

std::string format_complex(Complex z, int digits) {
  std::ostringstream os;
  os.precision(digits);
  const double re = z.real();
  const double im = z.imag();
  if (im == 0.0) {
    os << re;
  } else if (re == 0.0) {
    os << im << 'i';
  } else {
    os << re << (im < 0 ? '-' : '+') << std::abs(im) << 'i';
  }
  return os.str();
}

std::string format_vector(const AmplitudeVector& v, int digits) {
  std::string out = "<";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += format_complex(v[k], digits);
  }
  out += ">";
  return out;
}

}  // namespace qcfg
