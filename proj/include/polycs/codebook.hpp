#pragma once

// Codebook sizes, code rates and small-scale enumeration of the
// Reed-Muller coset codes built from complementary sets.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polycs/correlation.hpp"
#include "polycs/gbf.hpp"

namespace polycs {

using BigInt = boost::multiprecision::cpp_int;

enum class Family { S1, S2, S3, ERM, A, A1, R, R1, R2, C_corr4, C1_corr5, C2_corr5 };

const char* to_string(Family f);
Family parse_family(std::string_view name);

struct CodebookSpec {
  Family family = Family::ERM;
  int m = 0;
  /// Alphabet Z_{2^h}; S-families use q instead.
  int h = 1;
  std::uint32_t q = 2;
  int r = 0;
  /// Number of restricted variables for A, A1, R, R1, R2.
  int k = 0;
  /// Isolated vertices for R1 / A1 (l1) and R2 (l1, l2).
  int l1 = 0;
  int l2 = 1;

  std::uint32_t alphabet() const;
};

/// log2 of a positive big integer, accurate to double precision.
double log2_big(const BigInt& x);

/// log2 |F(r,m,h)|: GBFs in m variables over Z_{2^h} with effective degree <= r.
std::int64_t log2_f_count(int r, int m, int h);
std::int64_t s_k(int k, int r, int m, int h);
std::int64_t s_1k(int k, int r, int m, int h);

BigInt s1_size(int m, std::uint32_t q);
BigInt s2_size(int m, std::uint32_t q);
BigInt s3_size(int m, std::uint32_t q);

struct Table2Sizes {
  BigInt S1, S2, S3;
};
Table2Sizes table2_sizes(int m, std::uint32_t q);

/// |C| of the PMEPR-4 code (m > 3; 2 <= r <= 3 for h = 1, 1 <= r <= 2 for h > 1).
BigInt corollary4_size(int m, int h, int r);

struct Corollary5Sizes {
  /// Present for 2 <= r <= 3 (h = 1) or 1 <= r <= 2 (h > 1).
  std::optional<BigInt> c1;
  /// Present for r = 4 (h = 1) or r = 3 (h > 1).
  std::optional<BigInt> c2;
  const BigInt& selected() const { return c1 ? *c1 : *c2; }
};
Corollary5Sizes corollary5_sizes(int m, int h, int r);

/// Schmidt's cosets of A(k, r', m, h) with representatives in R(k, m, h), k = 1 and 2.
BigInt schmidt_pmepr4_size(int m, int h, int r);
BigInt schmidt_pmepr8_size(int m, int h, int r);

/// Closed-form size of any family.
BigInt codebook_size(const CodebookSpec& spec);

struct RateReport {
  BigInt size;
  double log2_size = 0.0;
  double rate = 0.0;
  /// Lee / squared Euclidean distance lower bounds; absent for the S-families.
  std::optional<std::uint64_t> d_lee;
  std::optional<double> d_euclid_sq;
};
RateReport rate(const CodebookSpec& spec);

struct TableRow {
  std::string table;
  Family family = Family::S1;
  int m = 0;
  /// q for Tables III-V, h for VI-VII.
  int q_or_h = 0;
  /// -1 when the table has no r column.
  int r = -1;
  double log2_size = 0.0;
  double rate = 0.0;
  /// Rate of the construction compared against (computed for VI/VII, printed for III/V).
  std::optional<double> rate_reference;
  std::optional<std::uint64_t> d_lee;
  std::optional<double> d_euclid_sq;
  /// Printed value and its tolerance (half a unit in the last printed digit).
  double printed = 0.0;
  double tolerance = 0.0;
  std::optional<std::uint64_t> printed_d_lee;
  std::optional<double> printed_d_euclid_sq;

  bool rate_matches() const;
  bool distances_match() const;
  bool matches() const { return rate_matches() && distances_match(); }
};

/// Every printed entry of Tables III-VII with its recomputed value.
std::vector<TableRow> reproduce_tables();

struct Table1Row {
  int k = 0;
  int corollary = 1;
  int M = 0;
  int p = 0;
  int proposed = 0;
  /// Schmidt's bound is 2^{k+p+1}; exact only when p = 0, or M = 0 and p = 1.
  int schmidt = 0;
  bool schmidt_exact = true;
  int printed_proposed = 0;
  int printed_schmidt = 0;
  bool printed_exact = true;

  bool matches() const {
    return proposed == printed_proposed && schmidt == printed_schmidt &&
           schmidt_exact == printed_exact;
  }
};
std::vector<Table1Row> reproduce_table1();

/// One Z_q-module generator of a coset code: coefficient * monomial with
/// coefficient in step * {0, ..., radix - 1}.
struct Generator {
  Mask vars = 0;
  std::uint32_t step = 1;
  std::uint32_t radix = 2;
};

/// A union term of a code: cosets rep + span(generators) for each rep.
struct CodebookPart {
  std::string label;
  std::vector<GbfPoly> reps;
  std::vector<Generator> generators;

  BigInt size() const;
};

/// The coset decomposition used for enumeration. ERM, A and A1 have a single
/// zero representative; the R-families have no generators.
std::vector<CodebookPart> codebook_parts(const CodebookSpec& spec);

struct Codeword {
  std::span<const std::uint32_t> phases;
  std::size_t part_index = 0;
  std::size_t rep_index = 0;
  const GbfPoly* rep = nullptr;
  std::span<const std::uint32_t> digits;
  std::span<const Generator> generators;

  /// The GBF whose psi is this codeword.
  GbfPoly gbf() const;
};

/// Streams every codeword in canonical order: representatives by their defining
/// permutations, then coset members by coefficient vector. Throws TooLarge if
/// the family exceeds `limit` and InvalidArgument for the closed-form-only S-families.
std::uint64_t enumerate_codebook(const CodebookSpec& spec, std::uint64_t limit,
                                 const std::function<void(const Codeword&)>& visit);

/// Exhaustive minimum distances. ERM uses a minimum-weight search over the
/// linear code; other families compare all pairs (at most `pair_limit` words).
DistanceReport verify_distance(const CodebookSpec& spec, std::uint64_t pair_limit = 1u << 13);

/// Minimum nonzero Lee and squared Euclidean weight of ERM(r, m, h).
DistanceReport erm_min_distance(int r, int m, int h);

/// 2^{m-r} and 2^{m-r+2} sin^2(pi / 2^h).
std::uint64_t lee_bound(int m, int r);
double euclid_sq_bound(int m, int r, int h);

}  // namespace polycs
