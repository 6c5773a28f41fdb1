#pragma once

// Aperiodic correlations in exact cyclotomic arithmetic, complementary-set
// tests, Lee/Euclidean weights and the OFDM envelope power.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polycs/cyclo.hpp"
#include "polycs/gbf.hpp"

namespace polycs {

/// C(a,b)(tau) = sum_i a_{i+tau} conj(b_i); zero for |tau| >= L.
CycloValue cross_corr(const PolyphaseSeq& a, const PolyphaseSeq& b, std::int64_t tau);

/// Autocorrelation stored for tau in [0, L); negative shifts come from A(-tau) = conj(A(tau)).
class AacfVector {
 public:
  AacfVector() = default;
  AacfVector(std::uint32_t q, std::size_t length);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t length() const noexcept { return values_.size(); }
  /// Any tau; out-of-range shifts give zero.
  CycloValue at(std::int64_t tau) const;
  CycloValue& mutable_at(std::size_t tau) { return values_[tau]; }
  const std::vector<CycloValue>& nonnegative() const noexcept { return values_; }

  AacfVector& operator+=(const AacfVector& o);
  friend bool operator==(const AacfVector&, const AacfVector&) = default;

  /// Shifts tau > 0 with a nonzero value.
  std::vector<std::size_t> offpeak_support() const;

 private:
  std::uint32_t q_ = 2;
  std::vector<CycloValue> values_;
};

AacfVector aacf(const PolyphaseSeq& a);
AacfVector set_aacf(std::span<const PolyphaseSeq> set);
/// Peak equals n * (unmasked count) and every other shift is exactly zero.
bool is_cs(std::span<const PolyphaseSeq> set);
bool is_cs(const AacfVector& sum, std::size_t members, std::size_t unmasked);

std::uint64_t lee_weight(std::span<const std::uint32_t> a, std::uint32_t q);
double euclid_sq_weight(std::span<const std::uint32_t> a, std::uint32_t q);
std::uint64_t lee_dist(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::uint32_t q);
double euclid_sq_dist(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::uint32_t q);

struct DistanceReport {
  std::uint64_t d_lee = 0;
  double d_euclid_sq = 0.0;
  /// Pairs of identical words that were skipped.
  std::size_t duplicates = 0;
};

/// Exhaustive minima over all pairs of distinct words.
DistanceReport min_distances(const std::vector<std::vector<std::uint32_t>>& code, std::uint32_t q);

/// P(a)(t) = A(0) + 2 Re sum_{tau>0} A(tau) exp(2 pi i tau t), t = f_s * time in [0, 1).
double envelope_power(const PolyphaseSeq& a, double t);
double envelope_power(const AacfVector& A, double t);

struct PmeprReport {
  double grid = 0.0;
  double bound = 0.0;
  int oversample = 0;
};

/// max_j P(a)(j / (oversample L)) / L.
double pmepr(const PolyphaseSeq& a, int oversample = 64);
double pmepr(const AacfVector& A, int oversample = 64);
/// (A(0) + 2 sum_{tau>0} |A(tau)|) / L.
double pmepr_autocorr_bound(const PolyphaseSeq& a);
double pmepr_autocorr_bound(const AacfVector& A);
PmeprReport pmepr_report(const PolyphaseSeq& a, int oversample = 64);

}  // namespace polycs
