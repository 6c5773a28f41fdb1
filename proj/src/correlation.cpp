#include "polycs/correlation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

void check_pair(const PolyphaseSeq& a, const PolyphaseSeq& b) {
  if (a.size() != b.size()) throw InvalidArgument("sequences differ in length");
  if (a.q() != b.q()) throw InvalidArgument("sequences differ in modulus");
}

// Phase-difference histogram for shift tau >= 0 of C(a,b).
CycloValue corr_nonneg(const PolyphaseSeq& a, const PolyphaseSeq& b, std::size_t tau) {
  const std::uint32_t q = a.q();
  CycloValue out(q);
  const std::size_t L = a.size();
  if (tau >= L) return out;
  std::vector<std::int64_t> counts(q, 0);
  const auto& pa = a.phases();
  const auto& pb = b.phases();
  for (std::size_t i = 0; i + tau < L; ++i) {
    const std::uint32_t x = pa[i + tau];
    const std::uint32_t y = pb[i];
    if (x == PolyphaseSeq::kMasked || y == PolyphaseSeq::kMasked) continue;
    ++counts[(x + q - y) % q];
  }
  out.add_phase_histogram(counts);
  return out;
}

void require_unmasked(const PolyphaseSeq& a) {
  if (a.has_masked()) throw InvalidArgument("envelope power needs an unmasked sequence");
}

double symbol_euclid(std::uint32_t v, std::uint32_t q) {
  const double s = std::sin(std::numbers::pi * static_cast<double>(v) / q);
  return 4.0 * s * s;
}

// One FFTW plan per transform size; planning is serialized because the
// planner is not thread-safe, execution uses the new-array interface.
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

struct FftPlan {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan plan = nullptr;
  ~FftPlan() {
    std::lock_guard lock(planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    if (buf) fftw_free(buf);
  }
};

FftPlan& plan_for(int n) {
  thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) {
    auto p = std::make_unique<FftPlan>();
    p->n = n;
    p->buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    std::lock_guard lock(planner_mutex());
    p->plan = fftw_plan_dft_1d(n, p->buf, p->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    slot = std::move(p);
  }
  return *slot;
}

}  // namespace

CycloValue cross_corr(const PolyphaseSeq& a, const PolyphaseSeq& b, std::int64_t tau) {
  check_pair(a, b);
  if (tau >= 0) return corr_nonneg(a, b, static_cast<std::size_t>(tau));
  // C(a,b)(-t) = conj(C(b,a)(t)).
  return corr_nonneg(b, a, static_cast<std::size_t>(-tau)).conj();
}

AacfVector::AacfVector(std::uint32_t q, std::size_t length)
    : q_(q), values_(length, CycloValue(q)) {}

CycloValue AacfVector::at(std::int64_t tau) const {
  const auto L = static_cast<std::int64_t>(values_.size());
  if (tau >= L || -tau >= L) return CycloValue(q_);
  if (tau >= 0) return values_[static_cast<std::size_t>(tau)];
  return values_[static_cast<std::size_t>(-tau)].conj();
}

AacfVector& AacfVector::operator+=(const AacfVector& o) {
  if (q_ != o.q_ || values_.size() != o.values_.size()) {
    throw InvalidArgument("AACFs differ in length or modulus");
  }
  for (std::size_t t = 0; t < values_.size(); ++t) values_[t] += o.values_[t];
  return *this;
}

std::vector<std::size_t> AacfVector::offpeak_support() const {
  std::vector<std::size_t> out;
  for (std::size_t t = 1; t < values_.size(); ++t) {
    if (!values_[t].is_zero()) out.push_back(t);
  }
  return out;
}

AacfVector aacf(const PolyphaseSeq& a) {
  AacfVector out(a.q(), a.size());
  // Constructing a CycloValue validates q once for the whole vector.
  for (std::size_t t = 0; t < a.size(); ++t) out.mutable_at(t) = corr_nonneg(a, a, t);
  return out;
}

AacfVector set_aacf(std::span<const PolyphaseSeq> set) {
  if (set.empty()) throw InvalidArgument("set_aacf needs a non-empty set");
  AacfVector sum(set.front().q(), set.front().size());
  for (const auto& s : set) {
    check_pair(set.front(), s);
    sum += aacf(s);
  }
  return sum;
}

bool is_cs(const AacfVector& sum, std::size_t members, std::size_t unmasked) {
  const auto& v = sum.nonnegative();
  if (v.empty()) return false;
  if (!(v[0] == CycloValue::integer(sum.q(), static_cast<std::int64_t>(members * unmasked)))) {
    return false;
  }
  return sum.offpeak_support().empty();
}

bool is_cs(std::span<const PolyphaseSeq> set) {
  const AacfVector sum = set_aacf(set);
  std::size_t unmasked = 0;
  for (const auto& s : set) unmasked += s.unmasked_count();
  return is_cs(sum, 1, unmasked);
}

std::uint64_t lee_weight(std::span<const std::uint32_t> a, std::uint32_t q) {
  std::uint64_t w = 0;
  for (auto v : a) {
    if (v >= q) throw InvalidArgument("symbol outside [0, q)");
    w += std::min(v, q - v);
  }
  return w;
}

double euclid_sq_weight(std::span<const std::uint32_t> a, std::uint32_t q) {
  double w = 0.0;
  for (auto v : a) {
    if (v >= q) throw InvalidArgument("symbol outside [0, q)");
    w += symbol_euclid(v, q);
  }
  return w;
}

namespace {

std::vector<std::uint32_t> difference(std::span<const std::uint32_t> a,
                                      std::span<const std::uint32_t> b, std::uint32_t q) {
  if (a.size() != b.size()) throw InvalidArgument("words differ in length");
  std::vector<std::uint32_t> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= q || b[i] >= q) throw InvalidArgument("symbol outside [0, q)");
    d[i] = (a[i] + q - b[i]) % q;
  }
  return d;
}

}  // namespace

std::uint64_t lee_dist(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::uint32_t q) {
  return lee_weight(difference(a, b, q), q);
}

double euclid_sq_dist(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                      std::uint32_t q) {
  return euclid_sq_weight(difference(a, b, q), q);
}

DistanceReport min_distances(const std::vector<std::vector<std::uint32_t>>& code,
                             std::uint32_t q) {
  if (code.size() < 2) throw InvalidArgument("min_distances needs at least two codewords");
  // Per-symbol tables keep the inner loop integer-only for Lee distance.
  std::vector<std::uint32_t> lee_tab(q);
  std::vector<double> eu_tab(q);
  for (std::uint32_t v = 0; v < q; ++v) {
    lee_tab[v] = std::min(v, q - v);
    eu_tab[v] = symbol_euclid(v, q);
  }
  DistanceReport rep;
  bool found = false;
  for (std::size_t i = 0; i < code.size(); ++i) {
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      const auto& a = code[i];
      const auto& b = code[j];
      if (a.size() != b.size()) throw InvalidArgument("codewords differ in length");
      std::uint64_t lee = 0;
      double eu = 0.0;
      for (std::size_t t = 0; t < a.size(); ++t) {
        const std::uint32_t d = (a[t] + q - b[t]) % q;
        lee += lee_tab[d];
        eu += eu_tab[d];
      }
      if (lee == 0) {
        ++rep.duplicates;
        continue;
      }
      if (!found || lee < rep.d_lee) rep.d_lee = lee;
      if (!found || eu < rep.d_euclid_sq) rep.d_euclid_sq = eu;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("code has fewer than two distinct codewords");
  return rep;
}

double envelope_power(const AacfVector& A, double t) {
  const auto& v = A.nonnegative();
  double p = v[0].to_complex().real();
  for (std::size_t tau = 1; tau < v.size(); ++tau) {
    if (v[tau].is_zero()) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(tau) * t;
    p += 2.0 * (v[tau].to_complex() * std::complex<double>(std::cos(ang), std::sin(ang))).real();
  }
  return p;
}

double envelope_power(const PolyphaseSeq& a, double t) {
  require_unmasked(a);
  return envelope_power(aacf(a), t);
}

double pmepr(const AacfVector& A, int oversample) {
  if (oversample < 1) throw InvalidArgument("oversample must be >= 1");
  const std::size_t L = A.length();
  const int n = static_cast<int>(L) * oversample;
  FftPlan& p = plan_for(n);
  for (int j = 0; j < n; ++j) {
    p.buf[j][0] = 0.0;
    p.buf[j][1] = 0.0;
  }
  const auto& v = A.nonnegative();
  for (std::size_t tau = 0; tau < L; ++tau) {
    const auto z = v[tau].to_complex();
    p.buf[tau][0] = z.real();
    p.buf[tau][1] = z.imag();
  }
  fftw_execute(p.plan);
  const double a0 = v[0].to_complex().real();
  double best = 0.0;
  for (int j = 0; j < n; ++j) best = std::max(best, 2.0 * p.buf[j][0] - a0);
  return best / static_cast<double>(L);
}

double pmepr(const PolyphaseSeq& a, int oversample) {
  require_unmasked(a);
  return pmepr(aacf(a), oversample);
}

double pmepr_autocorr_bound(const AacfVector& A) {
  const auto& v = A.nonnegative();
  double s = v[0].to_complex().real();
  for (std::size_t tau = 1; tau < v.size(); ++tau) s += 2.0 * v[tau].abs();
  return s / static_cast<double>(v.size());
}

double pmepr_autocorr_bound(const PolyphaseSeq& a) {
  require_unmasked(a);
  return pmepr_autocorr_bound(aacf(a));
}

PmeprReport pmepr_report(const PolyphaseSeq& a, int oversample) {
  require_unmasked(a);
  const AacfVector A = aacf(a);
  return {pmepr(A, oversample), pmepr_autocorr_bound(A), oversample};
}

}  // namespace polycs
