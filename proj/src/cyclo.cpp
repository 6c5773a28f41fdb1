#include "polycs/cyclo.hpp"

#include <bit>
#include <numbers>
#include <sstream>

#include "polycs/errors.hpp"

namespace polycs {

CycloValue::CycloValue(std::uint32_t q) : q_(q) {
  if (q < 2 || !std::has_single_bit(q)) {
    throw InvalidArgument("exact correlation needs q a power of two, got " + std::to_string(q));
  }
  c_.assign(q / 2, 0);
}

CycloValue CycloValue::integer(std::uint32_t q, std::int64_t n) {
  CycloValue v(q);
  v.c_[0] = n;
  return v;
}

CycloValue CycloValue::root(std::uint32_t q, std::int64_t j) {
  CycloValue v(q);
  v.add_root(j);
  return v;
}

void CycloValue::add_root(std::int64_t j, std::int64_t n) {
  const auto qq = static_cast<std::int64_t>(q_);
  const std::int64_t half = qq / 2;
  j %= qq;
  if (j < 0) j += qq;
  if (j >= half) {
    c_[static_cast<std::size_t>(j - half)] -= n;
  } else {
    c_[static_cast<std::size_t>(j)] += n;
  }
}

void CycloValue::add_phase_histogram(const std::vector<std::int64_t>& counts) {
  const std::size_t half = q_ / 2;
  for (std::size_t j = 0; j < half && j < counts.size(); ++j) c_[j] += counts[j];
  for (std::size_t j = half; j < q_ && j < counts.size(); ++j) c_[j - half] -= counts[j];
}

bool CycloValue::is_zero() const noexcept {
  for (auto v : c_) {
    if (v != 0) return false;
  }
  return true;
}

bool CycloValue::is_integer() const noexcept {
  for (std::size_t j = 1; j < c_.size(); ++j) {
    if (c_[j] != 0) return false;
  }
  return true;
}

CycloValue CycloValue::conj() const {
  // conj(w^j) = w^{-j} = -w^{q/2-j} for 0 < j < q/2.
  CycloValue out(q_);
  out.c_[0] = c_[0];
  const std::size_t half = q_ / 2;
  for (std::size_t j = 1; j < half; ++j) out.c_[half - j] = -c_[j];
  return out;
}

std::complex<double> CycloValue::to_complex() const {
  std::complex<double> z = 0.0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / q_;
    z += static_cast<double>(c_[j]) * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::string CycloValue::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    if (!first) os << (c_[j] > 0 ? " + " : " - ");
    else if (c_[j] < 0) os << "-";
    first = false;
    const auto mag = c_[j] < 0 ? -c_[j] : c_[j];
    if (j == 0) {
      os << mag;
    } else {
      if (mag != 1) os << mag << "*";
      os << "w^" << j;
    }
  }
  if (first) os << "0";
  return os.str();
}

CycloValue& CycloValue::operator+=(const CycloValue& o) {
  if (q_ != o.q_) throw InvalidArgument("cyclotomic values over different q");
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
  return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& o) {
  if (q_ != o.q_) throw InvalidArgument("cyclotomic values over different q");
  for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
  return *this;
}

CycloValue& CycloValue::operator*=(std::int64_t s) {
  for (auto& v : c_) v *= s;
  return *this;
}

CycloValue CycloValue::rotated(std::int64_t j) const {
  CycloValue out(q_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) out.add_root(static_cast<std::int64_t>(i) + j, c_[i]);
  }
  return out;
}

}  // namespace polycs
