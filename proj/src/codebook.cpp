#include "polycs/codebook.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt pow_big(const BigInt& base, std::int64_t e) {
  if (e < 0) throw InvalidArgument("negative exponent in size formula");
  BigInt out = 1;
  for (std::int64_t i = 0; i < e; ++i) out *= base;
  return out;
}

BigInt pow2(std::int64_t e) {
  if (e < 0) throw InvalidArgument("negative exponent in size formula");
  BigInt out = 1;
  out <<= static_cast<unsigned>(e);
  return out;
}

std::int64_t binom(int n, int k) {
  if (k < 0 || k > n || n < 0) return 0;
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Eq. for log2|F(r,m,h)| without range checks; r = -1 gives the multiples of 2.
std::int64_t lf(int r, int m, int h) {
  std::int64_t s = 0;
  for (int i = 0; i <= r; ++i) s += h * binom(m, i);
  for (int i = 1; i < h; ++i) s += (h - i) * binom(m, r + i);
  return s;
}

// (n!/2) as an exact integer.
BigInt half_factorial(int n) {
  BigInt f = factorial(n);
  if (f % 2 != 0) throw InvalidArgument("n!/2 is not an integer for n = " + std::to_string(n));
  return f / 2;
}

void check_h(int h) {
  if (h < 1 || h > 16) throw InvalidArgument("h must be in [1, 16]");
}

void check_q(std::uint32_t q) {
  if (q < 2) throw InvalidArgument("q must be >= 2");
}

// 2^{min(e, cap)}; the exponent is only meaningful for r + h >= 3.
std::int64_t capped_pow2(int e, int cap) {
  if (e < 0) throw InvalidArgument("r + h - 3 must be non-negative for this family");
  return std::int64_t{1} << std::min(e, cap);
}

void check_corollary4(int m, int h, int r) {
  check_h(h);
  if (m <= 3) throw InvalidArgument("corollary 4 needs m > 3");
  const bool ok = h == 1 ? (r >= 2 && r <= 3) : (r >= 1 && r <= 2);
  if (!ok) throw InvalidArgument("corollary 4 needs 2<=r<=3 (h=1) or 1<=r<=2 (h>1)");
}

// Exponent 2 * min(2^{r+h-3}, 1) of the R2(1,m,h) term.
int r2_exponent(int r, int h) {
  const int e = r + h - 3;
  if (e >= 0) return 2;
  if (e == -1) return 1;
  throw InvalidArgument("R2 needs r + h >= 2");
}

}  // namespace

const char* to_string(Family f) {
  switch (f) {
    case Family::S1: return "S1";
    case Family::S2: return "S2";
    case Family::S3: return "S3";
    case Family::ERM: return "ERM";
    case Family::A: return "A";
    case Family::A1: return "A1";
    case Family::R: return "R";
    case Family::R1: return "R1";
    case Family::R2: return "R2";
    case Family::C_corr4: return "C_corr4";
    case Family::C1_corr5: return "C1_corr5";
    case Family::C2_corr5: return "C2_corr5";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::S1, Family::S2, Family::S3, Family::ERM, Family::A, Family::A1,
                   Family::R, Family::R1, Family::R2, Family::C_corr4, Family::C1_corr5,
                   Family::C2_corr5}) {
    if (name == to_string(f)) return f;
  }
  throw ParseError("unknown codebook family '" + std::string(name) + "'");
}

std::uint32_t CodebookSpec::alphabet() const {
  switch (family) {
    case Family::S1:
    case Family::S2:
    case Family::S3:
      return q;
    default:
      check_h(h);
      return std::uint32_t{1} << h;
  }
}

double log2_big(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log2 of a non-positive integer");
  const auto msb = static_cast<int>(boost::multiprecision::msb(x));
  if (msb < 60) return std::log2(static_cast<double>(static_cast<std::uint64_t>(x)));
  const int shift = msb - 60;
  const auto top = static_cast<std::uint64_t>(x >> shift);
  return std::log2(static_cast<double>(top)) + shift;
}

std::int64_t log2_f_count(int r, int m, int h) {
  check_h(h);
  if (m < 0 || r < 0 || r > m) throw InvalidArgument("log2_f_count needs 0 <= r <= m");
  return lf(r, m, h);
}

std::int64_t s_k(int k, int r, int m, int h) {
  check_h(h);
  if (k < 0 || k >= m || r < 0) throw InvalidArgument("s_k needs 0 <= k < m and r >= 0");
  return (m - k) * lf(r - 1, k, h) + lf(r, k, h);
}

std::int64_t s_1k(int k, int r, int m, int h) {
  return s_k(k, r, m, h) - lf(r - 1, k, h);
}

BigInt s1_size(int m, std::uint32_t q) {
  check_q(q);
  if (m < 5) throw InvalidArgument("|S1| needs m >= 5");
  const BigInt bq = q;
  return half_factorial(m) * (half_factorial(m - 2) - 1) * pow_big(bq, 2 * m - 3) *
         (bq - 1) * (bq - 1);
}

BigInt s2_size(int m, std::uint32_t q) {
  check_q(q);
  if (m < 4) throw InvalidArgument("|S2| needs m >= 4");
  const BigInt bq = q;
  const BigInt num = factorial(m) * factorial(m - 2) * (m - 3);
  if (num % 4 != 0) throw InvalidArgument("|S2| bracket is not an integer");
  return (2 * factorial(m) + num / 4) * pow_big(bq, 2 * m - 2) * (bq - 1) * (bq - 1);
}

BigInt s3_size(int m, std::uint32_t q) {
  check_q(q);
  if (m < 5) throw InvalidArgument("|S3| needs m >= 5");
  const BigInt bq = q;
  const BigInt three_quarter = 3 * factorial(m);
  if (three_quarter % 4 != 0) throw InvalidArgument("|S3| coefficient is not an integer");
  const BigInt first = three_quarter / 4 * (half_factorial(m - 3) - 1) *
                       pow_big(bq, 3 * m - 8) * (bq - 1) * (bq - 1);
  const BigInt hf = half_factorial(m - 2);
  const BigInt second = BigInt(m) * (m - 2) * hf * hf * pow_big(bq, 2 * m - 3) * (bq - 1) * (bq - 1);
  return first + second;
}

Table2Sizes table2_sizes(int m, std::uint32_t q) {
  return {s1_size(m, q), s2_size(m, q), s3_size(m, q)};
}

BigInt schmidt_pmepr4_size(int m, int h, int r) {
  check_corollary4(m, h, r);
  const int rp = std::min(r, 2);
  const auto e = capped_pow2(r + h - 3, 1);
  return pow2(s_k(1, rp, m, h)) * pow_big(half_factorial(m - 1), e);
}

BigInt corollary4_size(int m, int h, int r) {
  check_corollary4(m, h, r);
  const int rp = std::min(r, 2);
  const auto e = capped_pow2(r + h - 3, 1);
  return pow2(s_k(1, rp, m, h)) * pow_big(half_factorial(m - 1), e) +
         pow2(s_1k(1, rp, m, h)) * pow_big(half_factorial(m - 2), e);
}

Corollary5Sizes corollary5_sizes(int m, int h, int r) {
  check_h(h);
  if (m <= 4) throw InvalidArgument("corollary 5 needs m > 4");
  const bool c1_range = h == 1 ? (r >= 2 && r <= 3) : (r >= 1 && r <= 2);
  const bool c2_range = h == 1 ? r == 4 : r == 3;
  if (!c1_range && !c2_range) {
    throw InvalidArgument("corollary 5 needs 2<=r<=4 (h=1) or 1<=r<=3 (h>1)");
  }
  const int rpp = std::min(r, 3);
  const int rp = std::min(r, 2);
  const auto e = capped_pow2(r + h - 3, 2);
  const BigInt first = pow2(s_k(2, rpp, m, h)) * pow_big(half_factorial(m - 2), e);
  const BigInt second = 3 * pow2(s_1k(2, rpp, m, h)) * pow_big(half_factorial(m - 3), e);
  Corollary5Sizes out;
  if (c2_range) {
    out.c2 = first + second;
  } else {
    const BigInt third =
        pow2(s_k(1, rp, m, h)) * pow_big(half_factorial(m - 2), r2_exponent(r, h));
    out.c1 = first + second + third;
  }
  return out;
}

BigInt schmidt_pmepr8_size(int m, int h, int r) {
  corollary5_sizes(m, h, r);  // range check
  const int rpp = std::min(r, 3);
  return pow2(s_k(2, rpp, m, h)) * pow_big(half_factorial(m - 2), capped_pow2(r + h - 3, 2));
}

namespace {

void check_r_family(const CodebookSpec& s, int min_free) {
  check_h(s.h);
  if (s.k < 0 || s.m - s.k < min_free) {
    throw InvalidArgument(std::string(to_string(s.family)) + " needs m - k >= " +
                          std::to_string(min_free));
  }
  if (s.r + s.h < 3) throw InvalidArgument("R-families need r > 2 - h");
}

int r_dependence(const CodebookSpec& s) { return std::min(s.r + s.h - 3, s.k); }

}  // namespace

BigInt codebook_size(const CodebookSpec& s) {
  switch (s.family) {
    case Family::S1: return s1_size(s.m, s.q);
    case Family::S2: return s2_size(s.m, s.q);
    case Family::S3: return s3_size(s.m, s.q);
    case Family::ERM:
      check_h(s.h);
      if (s.r < 0 || s.r > s.m) throw InvalidArgument("ERM needs 0 <= r <= m");
      return pow2(lf(s.r, s.m, s.h));
    case Family::A:
      return pow2(s_k(s.k, s.r, s.m, s.h));
    case Family::A1:
      if (s.m - s.k < 2) throw InvalidArgument("A1 needs k < m - 1");
      return pow2(s_1k(s.k, s.r, s.m, s.h));
    case Family::R:
      check_r_family(s, 2);
      return pow_big(half_factorial(s.m - s.k), std::int64_t{1} << r_dependence(s));
    case Family::R1:
      check_r_family(s, 3);
      return ((BigInt(1) << s.k) - 1) *
             pow_big(half_factorial(s.m - s.k - 1), std::int64_t{1} << r_dependence(s));
    case Family::R2:
      if (s.k != 1) throw InvalidArgument("R2 is implemented for k = 1");
      check_h(s.h);
      if (s.m - s.k < 3) throw InvalidArgument("R2 needs m - k >= 3");
      return pow_big(half_factorial(s.m - 2), r2_exponent(s.r, s.h));
    case Family::C_corr4:
      return corollary4_size(s.m, s.h, s.r);
    case Family::C1_corr5: {
      auto sz = corollary5_sizes(s.m, s.h, s.r);
      if (!sz.c1) throw InvalidArgument("C1 is defined for 2<=r<=3 (h=1) or 1<=r<=2 (h>1)");
      return *sz.c1;
    }
    case Family::C2_corr5: {
      auto sz = corollary5_sizes(s.m, s.h, s.r);
      if (!sz.c2) throw InvalidArgument("C2 is defined for r=4 (h=1) or r=3 (h>1)");
      return *sz.c2;
    }
  }
  throw InvalidArgument("unknown family");
}

std::uint64_t lee_bound(int m, int r) {
  if (r > m || r < 0) throw InvalidArgument("distance bound needs 0 <= r <= m");
  return std::uint64_t{1} << (m - r);
}

double euclid_sq_bound(int m, int r, int h) {
  check_h(h);
  const double s = std::sin(std::numbers::pi / std::ldexp(1.0, h));
  return std::ldexp(1.0, m - r + 2) * s * s;
}

RateReport rate(const CodebookSpec& spec) {
  RateReport rep;
  rep.size = codebook_size(spec);
  if (rep.size <= 0) throw InvalidArgument("empty codebook");
  rep.log2_size = log2_big(rep.size);
  rep.rate = rep.log2_size / std::ldexp(1.0, spec.m);
  switch (spec.family) {
    case Family::S1:
    case Family::S2:
    case Family::S3:
      break;
    default:
      rep.d_lee = lee_bound(spec.m, spec.r);
      rep.d_euclid_sq = euclid_sq_bound(spec.m, spec.r, spec.h);
  }
  return rep;
}

bool TableRow::rate_matches() const { return std::abs(rate - printed) <= tolerance; }

bool TableRow::distances_match() const {
  if (printed_d_lee && (!d_lee || *d_lee != *printed_d_lee)) return false;
  if (printed_d_euclid_sq &&
      (!d_euclid_sq || std::abs(*d_euclid_sq - *printed_d_euclid_sq) > 5e-3)) {
    return false;
  }
  return true;
}

namespace {

// Half a unit in the last printed digit.
double print_tolerance(std::string_view printed) {
  const auto dot = printed.find('.');
  const auto decimals = dot == std::string_view::npos ? 0 : printed.size() - dot - 1;
  return 0.5 * std::pow(10.0, -static_cast<double>(decimals));
}

struct Golden {
  int m;
  int q_or_h;
  int r;
  const char* printed;
  const char* reference;
  int d_lee;
  double d_e2;
};

// Tables III-V: (m, q, -, rate, reference rate of the earlier construction).
constexpr Golden kTable3[] = {
    {5, 2, -1, "0.4346", "0.3440", 0, 0}, {6, 2, -1, "0.3274", "0.2660", 0, 0},
    {7, 2, -1, "0.2202", "0.1800", 0, 0}, {8, 2, -1, "0.1398", "0.1130", 0, 0},
    {9, 2, -1, "0.0855", "0.0660", 0, 0}, {10, 2, -1, "0.0509", "0.0380", 0, 0},
    {5, 4, -1, "0.7524", "0.3750", 0, 0}, {6, 4, -1, "0.5175", "0.2420", 0, 0},
    {7, 4, -1, "0.3309", "0.1480", 0, 0}, {8, 4, -1, "0.2030", "0.0880", 0, 0},
    {9, 4, -1, "0.1210", "0.0510", 0, 0}, {10, 4, -1, "0.0706", "0.0290", 0, 0},
};

constexpr Golden kTable4[] = {
    {4, 2, -1, "0.7442", nullptr, 0, 0},  {5, 2, -1, "0.5384", nullptr, 0, 0},
    {6, 2, -1, "0.3721", nullptr, 0, 0},  {7, 2, -1, "0.2440", nullptr, 0, 0},
    {8, 2, -1, "0.1528", nullptr, 0, 0},  {9, 2, -1, "0.0925", nullptr, 0, 0},
    {10, 2, -1, "0.0546", nullptr, 0, 0}, {4, 4, -1, "1.3173", nullptr, 0, 0},
    {5, 4, -1, "0.8875", nullptr, 0, 0},  {6, 4, -1, "0.5779", nullptr, 0, 0},
    {7, 4, -1, "0.3625", nullptr, 0, 0},  {8, 4, -1, "0.2199", nullptr, 0, 0},
    {9, 4, -1, "0.1299", nullptr, 0, 0},  {10, 4, -1, "0.0753", nullptr, 0, 0},
};

constexpr Golden kTable5[] = {
    {7, 2, -1, "0.2371", "0.1720", 0, 0},
    {8, 2, -1, "0.1501", "0.1170", 0, 0},
    {9, 2, -1, "0.0916", "0.072", 0, 0},
    {10, 2, -1, "0.0544", "0.043", 0, 0},
};

// Tables VI-VII: (m, h, r, rate, d_L, d_E^2); the reference is recomputed.
constexpr Golden kTable6[] = {
    {4, 1, 2, "0.6060", nullptr, 4, 16.0},  {4, 1, 3, "0.7010", nullptr, 2, 8.0},
    {4, 2, 1, "0.9150", nullptr, 8, 16.0},  {4, 2, 2, "1.2000", nullptr, 4, 8.0},
    {5, 1, 2, "0.4270", nullptr, 8, 32.0},  {5, 1, 3, "0.5373", nullptr, 4, 16.0},
    {5, 2, 1, "0.6134", nullptr, 16, 32.0}, {5, 2, 2, "0.8492", nullptr, 8, 16.0},
    {6, 1, 2, "0.2809", nullptr, 16, 64.0}, {6, 1, 3, "0.3723", nullptr, 8, 32.0},
    {6, 2, 1, "0.3897", nullptr, 32, 64.0}, {6, 2, 2, "0.5596", nullptr, 16, 32.0},
};

constexpr Golden kTable7[] = {
    {5, 1, 2, "0.4741", nullptr, 8, 32.0},  {5, 1, 3, "0.6007", nullptr, 4, 16.0},
    {5, 1, 4, "0.6982", nullptr, 2, 8.0},   {5, 2, 1, "0.6596", nullptr, 16, 32.0},
    {5, 2, 2, "1.006", nullptr, 8, 16.0},   {5, 2, 3, "1.1981", nullptr, 4, 8.0},
    {6, 1, 2, "0.3198", nullptr, 16, 64.0}, {6, 1, 3, "0.4249", nullptr, 8, 32.0},
    {6, 1, 4, "0.5366", nullptr, 4, 16.0},  {6, 2, 1, "0.4286", nullptr, 32, 64.0},
    {6, 2, 2, "0.6746", nullptr, 16, 32.0}, {6, 2, 3, "0.8491", nullptr, 8, 16.0},
};

TableRow s_row(const char* table, Family fam, const Golden& g) {
  CodebookSpec spec;
  spec.family = fam;
  spec.m = g.m;
  spec.q = static_cast<std::uint32_t>(g.q_or_h);
  const RateReport rep = rate(spec);
  TableRow row;
  row.table = table;
  row.family = fam;
  row.m = g.m;
  row.q_or_h = g.q_or_h;
  row.log2_size = rep.log2_size;
  row.rate = rep.rate;
  if (g.reference) row.rate_reference = std::stod(g.reference);
  row.printed = std::stod(g.printed);
  row.tolerance = print_tolerance(g.printed);
  return row;
}

TableRow c_row(const char* table, const Golden& g, bool pmepr8) {
  CodebookSpec spec;
  spec.m = g.m;
  spec.h = g.q_or_h;
  spec.r = g.r;
  BigInt ref;
  if (pmepr8) {
    spec.family = corollary5_sizes(g.m, g.q_or_h, g.r).c1 ? Family::C1_corr5 : Family::C2_corr5;
    ref = schmidt_pmepr8_size(g.m, g.q_or_h, g.r);
  } else {
    spec.family = Family::C_corr4;
    ref = schmidt_pmepr4_size(g.m, g.q_or_h, g.r);
  }
  const RateReport rep = rate(spec);
  TableRow row;
  row.table = table;
  row.family = spec.family;
  row.m = g.m;
  row.q_or_h = g.q_or_h;
  row.r = g.r;
  row.log2_size = rep.log2_size;
  row.rate = rep.rate;
  row.rate_reference = log2_big(ref) / std::ldexp(1.0, g.m);
  row.d_lee = rep.d_lee;
  row.d_euclid_sq = rep.d_euclid_sq;
  row.printed = std::stod(g.printed);
  row.tolerance = print_tolerance(g.printed);
  row.printed_d_lee = static_cast<std::uint64_t>(g.d_lee);
  row.printed_d_euclid_sq = g.d_e2;
  return row;
}

}  // namespace

std::vector<TableRow> reproduce_tables() {
  std::vector<TableRow> rows;
  for (const auto& g : kTable3) rows.push_back(s_row("III", Family::S1, g));
  for (const auto& g : kTable4) rows.push_back(s_row("IV", Family::S2, g));
  for (const auto& g : kTable5) rows.push_back(s_row("V", Family::S3, g));
  for (const auto& g : kTable6) rows.push_back(c_row("VI", g, false));
  for (const auto& g : kTable7) rows.push_back(c_row("VII", g, true));
  return rows;
}

std::vector<Table1Row> reproduce_table1() {
  struct Printed {
    int k, cor, M, p, proposed, schmidt;
    bool exact;
  };
  static constexpr Printed kRows[] = {
      {1, 1, 0, 1, 4, 8, true},     {1, 2, 0, 1, 8, 8, true},    {1, 2, 0, 2, 8, 16, false},
      {1, 2, 1, 1, 6, 8, false},    {1, 2, 2, 0, 4, 4, true},    {2, 1, 0, 1, 8, 16, true},
      {2, 1, 0, 2, 8, 32, false},   {2, 1, 1, 1, 8, 16, false},  {2, 2, 0, 1, 16, 16, true},
      {2, 2, 0, 2, 16, 32, false},  {2, 2, 0, 3, 16, 64, false}, {2, 2, 0, 4, 16, 128, false},
      {2, 2, 1, 1, 14, 16, false},  {2, 2, 1, 2, 14, 32, false}, {2, 2, 1, 3, 14, 128, false},
      {2, 2, 2, 1, 12, 16, false},  {2, 2, 2, 2, 12, 32, false}, {2, 2, 3, 1, 10, 16, false},
      {2, 2, 4, 0, 8, 8, true},
  };
  std::vector<Table1Row> out;
  for (const auto& p : kRows) {
    Table1Row row;
    row.k = p.k;
    row.corollary = p.cor;
    row.M = p.M;
    row.p = p.p;
    row.proposed = p.cor == 1 ? (1 << (p.k + 1)) : (1 << (p.k + 2)) - 2 * p.M;
    row.schmidt = 1 << (p.k + p.p + 1);
    row.schmidt_exact = p.p == 0 || (p.M == 0 && p.p == 1);
    row.printed_proposed = p.proposed;
    row.printed_schmidt = p.schmidt;
    row.printed_exact = p.exact;
    out.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

BigInt CodebookPart::size() const {
  BigInt per = 1;
  for (const auto& g : generators) per *= g.radix;
  return per * reps.size();
}

GbfPoly Codeword::gbf() const {
  GbfPoly g = *rep;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    g.add_term(generators[i].vars, static_cast<std::int64_t>(digits[i]) * generators[i].step);
  }
  return g;
}

namespace {

void push_generator(std::vector<Generator>& out, Mask vars, int excess, int h) {
  if (excess < 0) excess = 0;
  if (excess >= h) return;
  out.push_back({vars, std::uint32_t{1} << excess, std::uint32_t{1} << (h - excess)});
}

std::vector<Generator> erm_generators(int r, int m, int h) {
  std::vector<Generator> gens;
  for (Mask t = 0; t < (Mask{1} << m); ++t) push_generator(gens, t, std::popcount(t) - r, h);
  return gens;
}

// A(k, r, m, h) over restricted x_{m-k..m-1}; `skip` drops x_skip * g (A1).
std::vector<Generator> a_generators(int k, int r, int m, int h, int skip) {
  std::vector<Generator> gens;
  auto subset_mask = [&](Mask sub) {
    Mask vars = 0;
    for (int a = 0; a < k; ++a) {
      if ((sub >> a) & 1U) vars |= Mask{1} << (m - k + a);
    }
    return vars;
  };
  for (int alpha = 0; alpha < m - k; ++alpha) {
    if (alpha == skip) continue;
    for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
      push_generator(gens, subset_mask(sub) | (Mask{1} << alpha),
                     std::popcount(sub) - (r - 1), h);
    }
  }
  for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
    push_generator(gens, subset_mask(sub), std::popcount(sub) - r, h);
  }
  return gens;
}

// Paths over `verts` up to reversal, in lexicographic order of the vertex sequence.
std::vector<std::vector<int>> paths_over(std::vector<int> verts) {
  std::sort(verts.begin(), verts.end());
  std::vector<std::vector<int>> out;
  do {
    if (verts.size() < 2 || verts.front() < verts.back()) out.push_back(verts);
  } while (std::next_permutation(verts.begin(), verts.end()));
  return out;
}

GbfPoly path_poly(std::uint32_t q, int m, const std::vector<int>& order) {
  GbfPoly p(q, m);
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    p.add_term((Mask{1} << order[i]) | (Mask{1} << order[i + 1]), q / 2);
  }
  return p;
}

// Indicator of x_{m-k+a} = b_a for a < j.
GbfPoly prefix_indicator(std::uint32_t q, int m, int k, int j, Mask b) {
  GbfPoly ind = GbfPoly::constant(q, m, 1);
  for (int a = 0; a < j; ++a) {
    GbfPoly x = GbfPoly::variable(q, m, m - k + a);
    ind = ind * (((b >> a) & 1U) ? x : GbfPoly::constant(q, m, 1) - x);
  }
  return ind;
}

// Sum over b in {0,1}^j of path(choice_b) * indicator_b, for every choice tuple
// in lexicographic order (b = 0 most significant).
std::vector<GbfPoly> path_tuples(std::uint32_t q, int m, int k, int j,
                                 const std::vector<int>& verts) {
  const auto paths = paths_over(verts);
  const std::size_t slots = std::size_t{1} << j;
  std::vector<GbfPoly> terms;
  std::vector<std::vector<GbfPoly>> slot_terms(slots);
  for (std::size_t b = 0; b < slots; ++b) {
    const GbfPoly ind = prefix_indicator(q, m, k, j, static_cast<Mask>(b));
    for (const auto& p : paths) slot_terms[b].push_back(path_poly(q, m, p) * ind);
  }
  std::vector<GbfPoly> out;
  std::vector<std::size_t> choice(slots, 0);
  while (true) {
    GbfPoly g(q, m);
    for (std::size_t b = 0; b < slots; ++b) g += slot_terms[b][choice[b]];
    out.push_back(std::move(g));
    std::size_t pos = slots;
    while (pos > 0) {
      --pos;
      if (++choice[pos] < paths.size()) break;
      choice[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

std::vector<int> range_without(int n, std::initializer_list<int> skip) {
  std::vector<int> v;
  for (int i = 0; i < n; ++i) {
    if (std::find(skip.begin(), skip.end(), i) == skip.end()) v.push_back(i);
  }
  return v;
}

std::vector<GbfPoly> r_reps(int k, int m, int h, int r) {
  CodebookSpec s;
  s.family = Family::R;
  s.k = k;
  s.m = m;
  s.h = h;
  s.r = r;
  check_r_family(s, 2);
  const std::uint32_t q = std::uint32_t{1} << h;
  return path_tuples(q, m, k, r_dependence(s), range_without(m - k, {}));
}

std::vector<GbfPoly> r1_reps(int k, int m, int h, int r, int l1) {
  CodebookSpec s;
  s.family = Family::R1;
  s.k = k;
  s.m = m;
  s.h = h;
  s.r = r;
  check_r_family(s, 3);
  if (l1 < 0 || l1 >= m - k) throw InvalidArgument("l1 must be an unrestricted variable");
  const std::uint32_t q = std::uint32_t{1} << h;
  const auto tuples = path_tuples(q, m, k, r_dependence(s), range_without(m - k, {l1}));
  std::vector<GbfPoly> out;
  for (Mask e = 1; e < (Mask{1} << k); ++e) {
    GbfPoly coupling(q, m);
    for (int i = 0; i < k; ++i) {
      if ((e >> i) & 1U) coupling.add_term((Mask{1} << l1) | (Mask{1} << (m - 1 - i)), q / 2);
    }
    for (const auto& t : tuples) out.push_back(t + coupling);
  }
  return out;
}

std::vector<GbfPoly> r2_reps(int m, int h, int r, int l1, int l2) {
  check_h(h);
  if (m < 4) throw InvalidArgument("R2 needs m - k >= 3");
  if (l1 == l2 || l1 < 0 || l2 < 0 || l1 >= m - 1 || l2 >= m - 1) {
    throw InvalidArgument("R2 needs distinct unrestricted labels l1, l2");
  }
  const std::uint32_t q = std::uint32_t{1} << h;
  const int x = m - 1;
  const GbfPoly on = GbfPoly::variable(q, m, x);
  const GbfPoly off = GbfPoly::constant(q, m, 1) - on;
  const auto v1 = range_without(m - 1, {l1});
  const auto v2 = range_without(m - 1, {l2});
  const auto p1 = paths_over(v1);
  const auto p2 = paths_over(v2);
  std::vector<GbfPoly> out;
  if (r2_exponent(r, h) == 2) {
    for (const auto& a : p1) {
      for (const auto& b : p2) out.push_back(path_poly(q, m, a) * off + path_poly(q, m, b) * on);
    }
    return out;
  }
  // Tied paths: one relative order applied to both vertex sets.
  std::vector<int> pos(v1.size());
  std::iota(pos.begin(), pos.end(), 0);
  for (const auto& sigma : paths_over(pos)) {
    std::vector<int> a, b;
    for (int i : sigma) {
      a.push_back(v1[static_cast<std::size_t>(i)]);
      b.push_back(v2[static_cast<std::size_t>(i)]);
    }
    out.push_back(path_poly(q, m, a) * off + path_poly(q, m, b) * on);
  }
  return out;
}

}  // namespace

std::vector<CodebookPart> codebook_parts(const CodebookSpec& s) {
  switch (s.family) {
    case Family::S1:
    case Family::S2:
    case Family::S3:
      throw InvalidArgument(std::string(to_string(s.family)) +
                            " is a closed-form count only; it has no enumerable definition");
    default:
      break;
  }
  check_h(s.h);
  if (s.m < 1 || s.m > 16) throw InvalidArgument("enumeration needs 1 <= m <= 16");
  const std::uint32_t q = std::uint32_t{1} << s.h;
  const GbfPoly zero(q, s.m);
  std::vector<CodebookPart> parts;
  const int rp = std::min(s.r, 2);
  const int rpp = std::min(s.r, 3);
  switch (s.family) {
    case Family::ERM:
      if (s.r < 0 || s.r > s.m) throw InvalidArgument("ERM needs 0 <= r <= m");
      parts.push_back({"ERM", {zero}, erm_generators(s.r, s.m, s.h)});
      break;
    case Family::A:
      codebook_size(s);
      parts.push_back({"A", {zero}, a_generators(s.k, s.r, s.m, s.h, -1)});
      break;
    case Family::A1:
      codebook_size(s);
      if (s.l1 < 0 || s.l1 >= s.m - s.k) throw InvalidArgument("l1 must be unrestricted");
      parts.push_back({"A1", {zero}, a_generators(s.k, s.r, s.m, s.h, s.l1)});
      break;
    case Family::R:
      parts.push_back({"R", r_reps(s.k, s.m, s.h, s.r), {}});
      break;
    case Family::R1:
      parts.push_back({"R1", r1_reps(s.k, s.m, s.h, s.r, s.l1), {}});
      break;
    case Family::R2:
      codebook_size(s);
      parts.push_back({"R2", r2_reps(s.m, s.h, s.r, s.l1, s.l2), {}});
      break;
    case Family::C_corr4:
      check_corollary4(s.m, s.h, s.r);
      parts.push_back({"R(1)+A(1,r')", r_reps(1, s.m, s.h, s.r),
                       a_generators(1, rp, s.m, s.h, -1)});
      parts.push_back({"R1(1)+A1(1,r')", r1_reps(1, s.m, s.h, s.r, s.l1),
                       a_generators(1, rp, s.m, s.h, s.l1)});
      break;
    case Family::C1_corr5:
    case Family::C2_corr5:
      codebook_size(s);
      parts.push_back({"R(2)+A(2,r'')", r_reps(2, s.m, s.h, s.r),
                       a_generators(2, rpp, s.m, s.h, -1)});
      parts.push_back({"R1(2)+A1(2,r'')", r1_reps(2, s.m, s.h, s.r, s.l1),
                       a_generators(2, rpp, s.m, s.h, s.l1)});
      if (s.family == Family::C1_corr5) {
        parts.push_back({"R2(1)+A(1,r')", r2_reps(s.m, s.h, s.r, s.l1, s.l2),
                         a_generators(1, rp, s.m, s.h, -1)});
      }
      break;
    default:
      break;
  }
  return parts;
}

std::uint64_t enumerate_codebook(const CodebookSpec& spec, std::uint64_t limit,
                                 const std::function<void(const Codeword&)>& visit) {
  // Reject oversized requests from the closed form before building anything.
  const BigInt closed = codebook_size(spec);
  if (closed > limit) {
    throw TooLarge(std::string(to_string(spec.family)) + " has " + closed.str() +
                   " codewords, above the limit " + std::to_string(limit));
  }
  const auto parts = codebook_parts(spec);
  BigInt total = 0;
  for (const auto& p : parts) total += p.size();
  if (total > limit) throw TooLarge("enumeration exceeds the limit");

  const std::uint32_t q = spec.alphabet();
  const std::size_t L = std::size_t{1} << spec.m;
  std::uint64_t count = 0;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    const auto& part = parts[pi];
    const auto& gens = part.generators;
    std::vector<std::vector<std::uint32_t>> evals(gens.size(), std::vector<std::uint32_t>(L));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (std::size_t x = 0; x < L; ++x) {
        evals[g][x] = (static_cast<Mask>(x) & gens[g].vars) == gens[g].vars ? gens[g].step : 0;
      }
    }
    for (std::size_t ri = 0; ri < part.reps.size(); ++ri) {
      std::vector<std::uint32_t> phases = psi(part.reps[ri]).phases();
      std::vector<std::uint32_t> digits(gens.size(), 0);
      Codeword cw;
      cw.part_index = pi;
      cw.rep_index = ri;
      cw.rep = &part.reps[ri];
      cw.generators = gens;
      while (true) {
        cw.phases = phases;
        cw.digits = digits;
        visit(cw);
        ++count;
        // Odometer; a digit wrapping adds radix * step = q, which is zero mod q.
        std::size_t pos = gens.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          const auto& ev = evals[pos];
          for (std::size_t x = 0; x < L; ++x) phases[x] = (phases[x] + ev[x]) % q;
          if (++digits[pos] < gens[pos].radix) {
            done = false;
            break;
          }
          digits[pos] = 0;
        }
        if (done) break;
      }
    }
  }
  return count;
}

namespace {

constexpr std::uint64_t kNoWeight = std::numeric_limits<std::uint64_t>::max();

#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
#define POLYCS_POPCNT_CLONES __attribute__((target_clones("popcnt", "default")))
#else
#define POLYCS_POPCNT_CLONES
#endif

// Smallest nonzero Lee weight of w + u over a table of bit-sliced Z4 words
// (lo = bit 0, hi = bit 1). Binary codes drop the carry.
POLYCS_POPCNT_CLONES
std::uint64_t min_lee_with(std::uint64_t w_lo, std::uint64_t w_hi, const std::uint64_t* lo_tab,
                           const std::uint64_t* hi_tab, std::size_t count, bool binary) {
  std::uint64_t best = kNoWeight;
  for (std::size_t u = 0; u < count; ++u) {
    const std::uint64_t lo = w_lo ^ lo_tab[u];
    const std::uint64_t hi = binary ? 0 : w_hi ^ hi_tab[u] ^ (w_lo & lo_tab[u]);
    const auto lee = static_cast<std::uint64_t>(__builtin_popcountll(lo)) +
                     2 * static_cast<std::uint64_t>(__builtin_popcountll(hi & ~lo));
    best = std::min(best, lee == 0 ? kNoWeight : lee);
  }
  return best;
}

}  // namespace

DistanceReport erm_min_distance(int r, int m, int h) {
  check_h(h);
  if (m < 1 || r < 0 || r > m) throw InvalidArgument("ERM needs 1 <= m and 0 <= r <= m");
  const auto gens = erm_generators(r, m, h);
  if (h <= 2 && m <= 6) {
    // Bit-sliced Gray-code walk over the binary decomposition a = b0 + 2 b1.
    struct Vec {
      std::uint64_t lo, hi;
    };
    const std::size_t L = std::size_t{1} << m;
    std::vector<Vec> add, sub;
    for (const auto& g : gens) {
      std::uint64_t mask = 0;
      for (std::size_t x = 0; x < L; ++x) {
        if ((static_cast<Mask>(x) & g.vars) == g.vars) mask |= std::uint64_t{1} << x;
      }
      if (h == 1) {
        add.push_back({mask, 0});
        sub.push_back({mask, 0});
      } else {
        if (g.step == 1) {
          add.push_back({mask, 0});
          sub.push_back({mask, mask});  // -v = 3v
        }
        add.push_back({0, mask});
        sub.push_back({0, mask});
      }
    }
    const std::size_t n = add.size();
    if (n >= 40) throw TooLarge("ERM code too large for exhaustive search");
    // Gray-code walk over a generator block, calling visit on every span element.
    const auto walk = [&](std::size_t from, std::size_t to, auto&& visit) {
      std::uint64_t state = 0;
      Vec cur{0, 0};
      visit(cur);
      const std::uint64_t end = std::uint64_t{1} << (to - from);
      for (std::uint64_t i = 1; i < end; ++i) {
        const auto j = static_cast<std::size_t>(std::countr_zero(i));
        state ^= std::uint64_t{1} << j;
        const Vec& g = ((state >> j) & 1U) ? add[from + j] : sub[from + j];
        const std::uint64_t carry = cur.lo & g.lo;
        cur.lo ^= g.lo;
        cur.hi = h == 1 ? 0 : cur.hi ^ g.hi ^ carry;
        visit(cur);
      }
    };
    // Every word is inner + outer; the inner span is tabulated once.
    const std::size_t split = std::min<std::size_t>(n, 16);
    std::vector<std::uint64_t> inner_lo, inner_hi;
    walk(0, split, [&](const Vec& v) {
      inner_lo.push_back(v.lo);
      inner_hi.push_back(v.hi);
    });
    std::uint64_t best = kNoWeight;
    walk(split, n, [&](const Vec& w) {
      best = std::min(best, min_lee_with(w.lo, w.hi, inner_lo.data(), inner_hi.data(),
                                         inner_lo.size(), h == 1));
    });
    DistanceReport rep;
    rep.d_lee = best;
    // Over Z_2 each nonzero symbol costs 4; over Z_4 odd symbols cost 2 and
    // the symbol 2 costs 4, so the squared Euclidean weight is twice the Lee weight.
    rep.d_euclid_sq = h == 1 ? 4.0 * static_cast<double>(best) : 2.0 * static_cast<double>(best);
    return rep;
  }
  // Generic path: minimum nonzero weight of the linear code.
  CodebookSpec spec;
  spec.family = Family::ERM;
  spec.m = m;
  spec.h = h;
  spec.r = r;
  const std::uint32_t q = std::uint32_t{1} << h;
  DistanceReport rep;
  bool found = false;
  enumerate_codebook(spec, std::uint64_t{1} << 26, [&](const Codeword& cw) {
    const auto lee = lee_weight(cw.phases, q);
    if (lee == 0) return;
    const double eu = euclid_sq_weight(cw.phases, q);
    if (!found || lee < rep.d_lee) rep.d_lee = lee;
    if (!found || eu < rep.d_euclid_sq) rep.d_euclid_sq = eu;
    found = true;
  });
  if (!found) throw InvalidArgument("code has no nonzero word");
  return rep;
}

DistanceReport verify_distance(const CodebookSpec& spec, std::uint64_t pair_limit) {
  if (spec.family == Family::ERM) return erm_min_distance(spec.r, spec.m, spec.h);
  std::vector<std::vector<std::uint32_t>> words;
  enumerate_codebook(spec, pair_limit, [&](const Codeword& cw) {
    words.emplace_back(cw.phases.begin(), cw.phases.end());
  });
  return min_distances(words, spec.alphabet());
}

}  // namespace polycs
