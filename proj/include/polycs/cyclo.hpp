#pragma once

// Exact elements of Z[w], w = exp(2*pi*i/q), q a power of two.
// Stored in the basis 1, w, ..., w^{q/2-1} using w^{q/2} = -1; the
// representation is unique, so equality and zero tests are exact.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace polycs {

class CycloValue {
 public:
  CycloValue() = default;
  explicit CycloValue(std::uint32_t q);
  static CycloValue integer(std::uint32_t q, std::int64_t n);
  /// w^j for any integer j.
  static CycloValue root(std::uint32_t q, std::int64_t j);

  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }

  /// Adds n * w^j.
  void add_root(std::int64_t j, std::int64_t n = 1);
  /// Adds counts[j] * w^j for j < q.
  void add_phase_histogram(const std::vector<std::int64_t>& counts);

  bool is_zero() const noexcept;
  /// True if the value is a rational integer.
  bool is_integer() const noexcept;
  std::int64_t real_part_integer() const noexcept { return c_.empty() ? 0 : c_[0]; }

  CycloValue conj() const;
  std::complex<double> to_complex() const;
  double abs() const { return std::abs(to_complex()); }
  std::string to_string() const;

  CycloValue& operator+=(const CycloValue& o);
  CycloValue& operator-=(const CycloValue& o);
  CycloValue& operator*=(std::int64_t s);
  /// Multiplication by w^j.
  CycloValue rotated(std::int64_t j) const;
  friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
  friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
  friend CycloValue operator*(CycloValue a, std::int64_t s) { return a *= s; }
  friend bool operator==(const CycloValue& a, const CycloValue& b) noexcept {
    return a.q_ == b.q_ && a.c_ == b.c_;
  }

 private:
  std::uint32_t q_ = 2;
  std::vector<std::int64_t> c_ = std::vector<std::int64_t>(1, 0);
};

}  // namespace polycs
