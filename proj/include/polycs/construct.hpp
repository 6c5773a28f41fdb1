#pragma once

// Sets of sequences built from a GBF and its restriction profile: the
// near-complementary set S, the two complementary-set corollaries, the GDJ,
// Paterson and Schmidt special cases, and a seeded generator of qualifying GBFs.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polycs/correlation.hpp"
#include "polycs/gbf.hpp"
#include "polycs/graph.hpp"

namespace polycs {

struct CsCandidate {
  std::uint32_t q = 2;
  int m = 0;
  std::vector<GbfPoly> members;
  std::vector<PolyphaseSeq> sequences;
  AacfVector predicted;
  double pmepr_bound = 0.0;
  std::string provenance;

  std::size_t size() const noexcept { return members.size(); }
};

/// prod_a x_{j_a}^{c_a} (1 - x_{j_a})^{1 - c_a}, expanded.
GbfPoly indicator_poly(std::uint32_t q, int m, const std::vector<int>& restricted, Mask c);
/// x_c = sum_c x_{t(c)} * indicator_c.
GbfPoly endpoint_poly(const TheoremProfile& prof);
/// sum_i x_{l_i}.
GbfPoly isolated_sum(const TheoremProfile& prof);

/// f + (q/2)(d.x + d x_c [+ d' sum x_l]) in (d, d', d_0..d_{k-1}) lexicographic order.
/// Uses only the shape data of the profile, so it also serves GBFs whose
/// edge weights break the hypothesis (for adjudicating printed claims).
std::vector<GbfPoly> candidate_members(const GbfPoly& f, const TheoremProfile& prof,
                                       bool with_isolated_offset);

/// A(S) predicted from the profile: 2^{m+k+1} at 0 and
/// w^{g_l} 2^m sum_{c in S_N} w^{L_c} at 2^l.
AacfVector predicted_aacf(const TheoremProfile& prof);

CsCandidate theorem1_set(const GbfPoly& f, const TheoremProfile& prof);
/// Throws BalanceConditionFailed unless every group has half its L values 0 and half q/2.
void check_balance(const TheoremProfile& prof);
CsCandidate corollary1_cs(const GbfPoly& f, const TheoremProfile& prof);
CsCandidate corollary2_cs(const GbfPoly& f, const TheoremProfile& prof);

/// (f + c, f + (q/2) x_a + c') for a path GBF with end vertex x_a.
CsCandidate gdj_pair(const GbfPoly& f, std::uint32_t c, std::uint32_t c_prime,
                     EndpointChoice choice = EndpointChoice::Lowest);
/// All (q/2) sum x_{pi(i)} x_{pi(i+1)} + sum c_i x_i + c' over Z_{2^h}, paths up to reversal.
std::vector<GbfPoly> gdj_codewords(int m, int h);

CsCandidate paterson_cs(const GbfPoly& f, const std::vector<int>& deleted);
CsCandidate schmidt_cs(const GbfPoly& f, const std::vector<int>& restricted);

/// mt19937_64 with portable bounded draws (rejection sampling).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}
  /// Uniform in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n);
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

struct QualifyingShape {
  /// Restricted indices j_0 < ... < j_{k-1}.
  std::vector<int> restricted;
  std::size_t M = 0;
  /// (l_i, N_i).
  std::vector<std::pair<int, std::size_t>> groups;
};

/// A random shape over the top k variables with M + sum N_i = 2^k;
/// balanced shapes get even N_i.
QualifyingShape random_shape(int m, int k, bool balanced, SeededRng& rng);

GbfPoly random_qualifying_gbf(int m, std::uint32_t q, const QualifyingShape& shape,
                              bool corollary1_balanced, std::uint64_t seed);

}  // namespace polycs
