#include "polycs/gbf.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

std::uint32_t reduce(std::int64_t value, std::uint32_t q) {
  const auto qq = static_cast<std::int64_t>(q);
  std::int64_t r = value % qq;
  if (r < 0) r += qq;
  return static_cast<std::uint32_t>(r);
}

Mask full_mask(int m) { return m >= 32 ? ~Mask{0} : ((Mask{1} << m) - 1); }

}  // namespace

int log2_exact(std::uint32_t q) noexcept {
  if (q == 0 || !std::has_single_bit(q)) return -1;
  return std::countr_zero(q);
}

GbfPoly::GbfPoly(std::uint32_t q, int m) : q_(q), m_(m) {
  if (q < 2 || q % 2 != 0) {
    throw InvalidArgument("modulus q must be even and >= 2, got " + std::to_string(q));
  }
  if (m < 0 || m > kMaxVars) {
    throw InvalidArgument("variable count m must be in [0, " + std::to_string(kMaxVars) +
                          "], got " + std::to_string(m));
  }
}

GbfPoly GbfPoly::constant(std::uint32_t q, int m, std::int64_t value) {
  GbfPoly f(q, m);
  f.add_term(0, value);
  return f;
}

GbfPoly GbfPoly::monomial(std::uint32_t q, int m, Mask vars, std::int64_t coeff) {
  GbfPoly f(q, m);
  f.add_term(vars, coeff);
  return f;
}

GbfPoly GbfPoly::variable(std::uint32_t q, int m, int index, std::int64_t coeff) {
  if (index < 0 || index >= m) throw InvalidArgument("variable index out of range");
  return monomial(q, m, Mask{1} << index, coeff);
}

std::uint32_t GbfPoly::coeff(Mask vars) const {
  auto it = terms_.find(vars);
  return it == terms_.end() ? 0 : it->second;
}

void GbfPoly::add_term(Mask vars, std::int64_t value) {
  if ((vars & ~full_mask(m_)) != 0) {
    throw InvalidArgument("monomial uses a variable index >= m");
  }
  const std::uint32_t v = reduce(value, q_);
  if (v == 0) return;
  auto [it, inserted] = terms_.try_emplace(vars, v);
  if (!inserted) {
    it->second = (it->second + v) % q_;
    if (it->second == 0) terms_.erase(it);
  }
}

int GbfPoly::degree() const noexcept {
  int d = 0;
  for (const auto& [vars, c] : terms_) d = std::max(d, std::popcount(vars));
  return d;
}

Mask GbfPoly::support() const noexcept {
  Mask s = 0;
  for (const auto& [vars, c] : terms_) s |= vars;
  return s;
}

std::uint32_t GbfPoly::eval(std::span<const std::uint8_t> point) const {
  if (point.size() != static_cast<std::size_t>(m_)) {
    throw InvalidArgument("point has length " + std::to_string(point.size()) + ", expected " +
                          std::to_string(m_));
  }
  Mask p = 0;
  for (std::size_t a = 0; a < point.size(); ++a) {
    if (point[a] > 1) throw InvalidArgument("point entries must be 0 or 1");
    if (point[a]) p |= Mask{1} << a;
  }
  return eval_index(p);
}

std::uint32_t GbfPoly::eval_index(Mask point) const noexcept {
  std::uint64_t s = 0;
  for (const auto& [vars, c] : terms_) {
    if ((vars & point) == vars) s += c;
  }
  return static_cast<std::uint32_t>(s % q_);
}

void GbfPoly::check_compatible(const GbfPoly& other) const {
  if (q_ != other.q_ || m_ != other.m_) {
    throw InvalidArgument("GBFs have different (q, m)");
  }
}

GbfPoly& GbfPoly::operator+=(const GbfPoly& other) {
  check_compatible(other);
  for (const auto& [vars, c] : other.terms_) add_term(vars, c);
  return *this;
}

GbfPoly& GbfPoly::operator-=(const GbfPoly& other) {
  check_compatible(other);
  for (const auto& [vars, c] : other.terms_) add_term(vars, -static_cast<std::int64_t>(c));
  return *this;
}

GbfPoly& GbfPoly::operator*=(std::int64_t scalar) {
  const std::uint32_t s = reduce(scalar, q_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = static_cast<std::uint32_t>((std::uint64_t{it->second} * s) % q_);
    if (it->second == 0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

GbfPoly operator*(const GbfPoly& a, const GbfPoly& b) {
  a.check_compatible(b);
  GbfPoly out(a.q_, a.m_);
  for (const auto& [va, ca] : a.terms_) {
    for (const auto& [vb, cb] : b.terms_) {
      out.add_term(va | vb, static_cast<std::int64_t>((std::uint64_t{ca} * cb) % a.q_));
    }
  }
  return out;
}

std::string GbfPoly::render() const {
  std::ostringstream os;
  os << "q=" << q_ << ";m=" << m_ << "; ";
  if (terms_.empty()) {
    os << "0";
    return os.str();
  }
  std::vector<std::pair<Mask, std::uint32_t>> items(terms_.begin(), terms_.end());
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    const int dx = std::popcount(x.first);
    const int dy = std::popcount(y.first);
    if (dx != dy) return dx > dy;
    // Lexicographic on the sorted index list: lowest differing bit decides.
    const Mask diff = x.first ^ y.first;
    return (x.first & (diff & -diff)) != 0;
  });
  bool first = true;
  for (const auto& [vars, c] : items) {
    if (!first) os << " + ";
    first = false;
    if (vars == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    bool first_var = true;
    for (int a : mask_indices(vars)) {
      if (!first_var) os << "*";
      first_var = false;
      os << "x" << a;
    }
  }
  return os.str();
}

namespace {

class GbfParser {
 public:
  explicit GbfParser(std::string_view text) {
    for (char ch : text) {
      if (!std::isspace(static_cast<unsigned char>(ch))) src_.push_back(ch);
    }
  }

  GbfPoly parse() {
    expect("q=");
    const std::int64_t q = integer("q");
    expect(";");
    expect("m=");
    const std::int64_t m = integer("m");
    expect(";");
    if (q < 2 || q % 2 != 0) fail("modulus q must be even and >= 2");
    if (q > std::int64_t{1} << 30) fail("modulus q too large");
    if (m < 0 || m > kMaxVars) fail("variable count m out of range");
    GbfPoly f(static_cast<std::uint32_t>(q), static_cast<int>(m));
    term(f);
    while (pos_ < src_.size()) {
      expect("+");
      term(f);
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("GBF parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  void expect(std::string_view token) {
    if (src_.compare(pos_, token.size(), token) != 0) {
      fail("expected '" + std::string(token) + "'");
    }
    pos_ += token.size();
  }

  bool peek(char ch) const { return pos_ < src_.size() && src_[pos_] == ch; }

  std::int64_t integer(const char* what) {
    std::int64_t value = 0;
    const char* begin = src_.data() + pos_;
    const char* end = src_.data() + src_.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr == begin) fail(std::string("expected integer for ") + what);
    if (value < 0) fail(std::string("negative ") + what);
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  int variable(int m) {
    expect("x");
    const std::int64_t idx = integer("variable index");
    if (idx >= m) fail("variable index x" + std::to_string(idx) + " >= m");
    return static_cast<int>(idx);
  }

  void term(GbfPoly& f) {
    std::int64_t coeff = 1;
    if (!peek('x')) {
      coeff = integer("coefficient") % f.q();
      if (!peek('*')) {
        f.add_term(0, coeff);
        return;
      }
      expect("*");
    }
    Mask vars = Mask{1} << variable(f.m());
    while (peek('*')) {
      expect("*");
      vars |= Mask{1} << variable(f.m());
    }
    f.add_term(vars, coeff);
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

GbfPoly parse_gbf(std::string_view text) { return GbfParser(text).parse(); }

Restriction::Restriction(std::vector<int> indices, std::vector<std::uint8_t> bits)
    : indices_(std::move(indices)), bits_(std::move(bits)) {
  if (indices_.size() != bits_.size()) {
    throw InvalidArgument("restriction indices and bits differ in length");
  }
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    if (indices_[a] < 0 || indices_[a] >= 32) throw InvalidArgument("restricted index out of range");
    if (a > 0 && indices_[a] <= indices_[a - 1]) {
      throw InvalidArgument("restricted indices must be strictly increasing");
    }
    if (bits_[a] > 1) throw InvalidArgument("restriction bits must be 0 or 1");
    vars_ |= Mask{1} << indices_[a];
    if (bits_[a]) values_ |= Mask{1} << indices_[a];
  }
}

Restriction Restriction::from_code(std::vector<int> indices, Mask c) {
  std::vector<std::uint8_t> bits(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a) bits[a] = (c >> a) & 1U;
  return Restriction(std::move(indices), std::move(bits));
}

Mask Restriction::code() const noexcept {
  Mask c = 0;
  for (std::size_t a = 0; a < bits_.size(); ++a) c |= Mask{bits_[a]} << a;
  return c;
}

void Restriction::check_against(int m) const {
  if (!indices_.empty() && indices_.back() >= m) {
    throw InvalidArgument("restricted index " + std::to_string(indices_.back()) + " >= m");
  }
}

Mask index_mask(std::span<const int> indices, int m) {
  Mask mask = 0;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    if (indices[a] < 0 || indices[a] >= m) {
      throw InvalidArgument("index " + std::to_string(indices[a]) + " out of range");
    }
    if (a > 0 && indices[a] <= indices[a - 1]) {
      throw InvalidArgument("indices must be strictly increasing");
    }
    mask |= Mask{1} << indices[a];
  }
  return mask;
}

std::vector<int> mask_indices(Mask mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

GbfPoly restrict(const GbfPoly& f, const Restriction& r) {
  r.check_against(f.m());
  GbfPoly out(f.q(), f.m());
  for (const auto& [vars, c] : f.terms()) {
    const Mask fixed = vars & r.vars();
    // A restricted variable set to 0 kills the monomial.
    if ((fixed & r.values()) != fixed) continue;
    out.add_term(vars & ~r.vars(), c);
  }
  return out;
}

PolyphaseSeq::PolyphaseSeq(std::uint32_t q, std::vector<std::uint32_t> phases)
    : q_(q), phases_(std::move(phases)) {
  if (q < 2 || q % 2 != 0) throw InvalidArgument("sequence modulus must be even and >= 2");
  if (phases_.empty() || !std::has_single_bit(phases_.size())) {
    throw InvalidArgument("sequence length must be a power of two");
  }
  for (auto p : phases_) {
    if (p != kMasked && p >= q_) throw InvalidArgument("phase outside [0, q)");
  }
}

bool PolyphaseSeq::has_masked() const noexcept {
  return std::find(phases_.begin(), phases_.end(), kMasked) != phases_.end();
}

std::size_t PolyphaseSeq::unmasked_count() const noexcept {
  return phases_.size() -
         static_cast<std::size_t>(std::count(phases_.begin(), phases_.end(), kMasked));
}

PolyphaseSeq psi(const GbfPoly& f) {
  const std::size_t n = std::size_t{1} << f.m();
  std::vector<std::uint32_t> table(n, 0);
  for (const auto& [vars, c] : f.terms()) table[vars] = c;
  // Subset-sum (zeta) transform: table[i] = sum of coefficients of monomials inside i.
  for (int b = 0; b < f.m(); ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t i = 0; i < n; ++i) {
      if (i & bit) table[i] = (table[i] + table[i ^ bit]) % f.q();
    }
  }
  return PolyphaseSeq(f.q(), std::move(table));
}

PolyphaseSeq psi_restricted(const GbfPoly& f, const Restriction& r) {
  r.check_against(f.m());
  std::vector<std::uint32_t> phases = psi(f).phases();
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (!r.matches(static_cast<Mask>(i))) phases[i] = PolyphaseSeq::kMasked;
  }
  return PolyphaseSeq(f.q(), std::move(phases));
}

int effective_degree(const GbfPoly& f) {
  const int h = log2_exact(f.q());
  if (h < 1) {
    throw InvalidArgument("effective degree needs q = 2^h, got q = " + std::to_string(f.q()));
  }
  int best = std::numeric_limits<int>::min();
  for (int i = 0; i < h; ++i) {
    const std::uint32_t modulus = std::uint32_t{1} << (i + 1);
    int d = 0;
    for (const auto& [vars, c] : f.terms()) {
      if (c % modulus != 0) d = std::max(d, std::popcount(vars));
    }
    best = std::max(best, d - i);
  }
  return best;
}

}  // namespace polycs
