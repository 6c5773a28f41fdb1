#pragma once

// Generalized Boolean functions f: {0,1}^m -> Z_q and their polyphase sequences.
//
// A GbfPoly is a multilinear polynomial stored as a sparse map from monomial
// (bitmask over x_0..x_{m-1}, bit a <-> x_a) to a nonzero coefficient in Z_q.
// The empty mask is the constant term.
//
// Sequence index i corresponds to the point (i_0, ..., i_{m-1}) with
// i = sum_a i_a 2^a, i.e. x_0 is the least-significant bit.

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polycs {

using Mask = std::uint32_t;

inline constexpr int kMaxVars = 24;

class GbfPoly {
 public:
  GbfPoly(std::uint32_t q, int m);

  static GbfPoly constant(std::uint32_t q, int m, std::int64_t value);
  static GbfPoly monomial(std::uint32_t q, int m, Mask vars, std::int64_t coeff = 1);
  static GbfPoly variable(std::uint32_t q, int m, int index, std::int64_t coeff = 1);

  std::uint32_t q() const noexcept { return q_; }
  int m() const noexcept { return m_; }
  const std::map<Mask, std::uint32_t>& terms() const noexcept { return terms_; }

  std::uint32_t coeff(Mask vars) const;
  /// Adds `value` to the coefficient of `vars`, reducing mod q.
  void add_term(Mask vars, std::int64_t value);

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest monomial size; 0 for constants and the zero polynomial.
  int degree() const noexcept;
  /// Union of all variables that occur in some monomial.
  Mask support() const noexcept;

  std::uint32_t eval(std::span<const std::uint8_t> point) const;
  /// Evaluates at the point whose bit a is x_a.
  std::uint32_t eval_index(Mask point) const noexcept;

  GbfPoly& operator+=(const GbfPoly& other);
  GbfPoly& operator-=(const GbfPoly& other);
  GbfPoly& operator*=(std::int64_t scalar);
  /// Multilinear product (x_a^2 = x_a).
  friend GbfPoly operator*(const GbfPoly& a, const GbfPoly& b);
  friend GbfPoly operator+(GbfPoly a, const GbfPoly& b) { return a += b; }
  friend GbfPoly operator-(GbfPoly a, const GbfPoly& b) { return a -= b; }
  friend GbfPoly operator*(GbfPoly a, std::int64_t s) { return a *= s; }
  friend GbfPoly operator*(std::int64_t s, GbfPoly a) { return a *= s; }
  friend bool operator==(const GbfPoly&, const GbfPoly&) = default;

  /// Canonical text form accepted by parse_gbf.
  std::string render() const;

 private:
  void check_compatible(const GbfPoly& other) const;

  std::uint32_t q_;
  int m_;
  std::map<Mask, std::uint32_t> terms_;
};

/// Parses `q=<int>;m=<int>; <term> (+ <term>)*`, term = `<coeff>` or
/// `[<coeff>*] x<idx>(*x<idx>)*`. Whitespace is ignored.
GbfPoly parse_gbf(std::string_view text);

/// x_{j_0} = c_0, ..., x_{j_{k-1}} = c_{k-1} with j strictly increasing.
class Restriction {
 public:
  Restriction() = default;
  Restriction(std::vector<int> indices, std::vector<std::uint8_t> bits);
  /// Bits taken from `c`: c_a = bit a of c.
  static Restriction from_code(std::vector<int> indices, Mask c);

  const std::vector<int>& indices() const noexcept { return indices_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  int k() const noexcept { return static_cast<int>(indices_.size()); }
  /// Bitmask of restricted variables.
  Mask vars() const noexcept { return vars_; }
  /// Values placed at the restricted positions.
  Mask values() const noexcept { return values_; }
  /// c as an integer, bit a = c_a.
  Mask code() const noexcept;

  /// True if the point (bitmask over x) agrees with every restricted value.
  bool matches(Mask point) const noexcept { return (point & vars_) == values_; }

  void check_against(int m) const;

 private:
  std::vector<int> indices_;
  std::vector<std::uint8_t> bits_;
  Mask vars_ = 0;
  Mask values_ = 0;
};

/// Strictly increasing index list -> mask; throws on duplicates or out-of-range.
Mask index_mask(std::span<const int> indices, int m);
std::vector<int> mask_indices(Mask mask);

/// f|_{x=c}. Restricted variables disappear; the remaining variables keep their indices.
GbfPoly restrict(const GbfPoly& f, const Restriction& r);

/// Polyphase sequence over Z_q. Masked entries stand for the complex value 0.
class PolyphaseSeq {
 public:
  static constexpr std::uint32_t kMasked = std::numeric_limits<std::uint32_t>::max();

  PolyphaseSeq(std::uint32_t q, std::vector<std::uint32_t> phases);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t size() const noexcept { return phases_.size(); }
  const std::vector<std::uint32_t>& phases() const noexcept { return phases_; }
  std::uint32_t operator[](std::size_t i) const { return phases_[i]; }
  bool is_masked(std::size_t i) const { return phases_[i] == kMasked; }
  bool has_masked() const noexcept;
  std::size_t unmasked_count() const noexcept;

  friend bool operator==(const PolyphaseSeq&, const PolyphaseSeq&) = default;

 private:
  std::uint32_t q_;
  std::vector<std::uint32_t> phases_;
};

/// psi(f): entry i = f(bits of i).
PolyphaseSeq psi(const GbfPoly& f);
/// psi(f|_{x=c}): entries whose restricted bits differ from c are masked.
PolyphaseSeq psi_restricted(const GbfPoly& f, const Restriction& r);

/// max_{0<=i<h} [deg(f mod 2^{i+1}) - i] for q = 2^h.
int effective_degree(const GbfPoly& f);

/// log2(q) when q is a power of two, otherwise -1.
int log2_exact(std::uint32_t q) noexcept;

}  // namespace polycs
