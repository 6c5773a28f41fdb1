#include "polycs/construct.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "polycs/errors.hpp"

namespace polycs {

namespace {

void check_profile_matches(const GbfPoly& f, const TheoremProfile& prof) {
  if (f.q() != prof.q || f.m() != prof.m) {
    throw InvalidArgument("profile was computed for a different (q, m)");
  }
}

void require_ok(const TheoremProfile& prof) {
  if (!prof.ok) {
    std::string msg = "profile does not satisfy the hypothesis";
    for (const auto& d : prof.diagnostics) msg += "\n  " + d;
    throw NotTheorem1Applicable(msg);
  }
}

std::vector<PolyphaseSeq> materialize(const std::vector<GbfPoly>& members) {
  std::vector<PolyphaseSeq> out;
  out.reserve(members.size());
  for (const auto& g : members) out.push_back(psi(g));
  return out;
}

double bound_from_aacf(const AacfVector& A, int m) {
  return pmepr_autocorr_bound(A) * static_cast<double>(A.length()) / std::ldexp(1.0, m);
}

}  // namespace

GbfPoly indicator_poly(std::uint32_t q, int m, const std::vector<int>& restricted, Mask c) {
  GbfPoly ind = GbfPoly::constant(q, m, 1);
  for (std::size_t a = 0; a < restricted.size(); ++a) {
    GbfPoly factor = GbfPoly::variable(q, m, restricted[a]);
    if (((c >> a) & 1U) == 0) factor = GbfPoly::constant(q, m, 1) - factor;
    ind = ind * factor;
  }
  return ind;
}

GbfPoly endpoint_poly(const TheoremProfile& prof) {
  GbfPoly xc(prof.q, prof.m);
  const Mask n = Mask{1} << prof.k();
  for (Mask c = 0; c < n; ++c) {
    auto it = prof.endpoint.find(c);
    if (it == prof.endpoint.end()) {
      throw NotTheorem1Applicable("no path endpoint for c=" + code_bits(c, prof.k()));
    }
    xc += GbfPoly::variable(prof.q, prof.m, it->second) *
          indicator_poly(prof.q, prof.m, prof.restricted, c);
  }
  return xc;
}

GbfPoly isolated_sum(const TheoremProfile& prof) {
  GbfPoly s(prof.q, prof.m);
  for (const auto& g : prof.groups) s += GbfPoly::variable(prof.q, prof.m, g.l);
  return s;
}

std::vector<GbfPoly> candidate_members(const GbfPoly& f, const TheoremProfile& prof,
                                       bool with_isolated_offset) {
  check_profile_matches(f, prof);
  const std::int64_t half = f.q() / 2;
  const int k = prof.k();
  const GbfPoly xc = endpoint_poly(prof) * half;
  const GbfPoly xl = isolated_sum(prof) * half;
  std::vector<GbfPoly> out;
  const int dprime_max = with_isolated_offset ? 2 : 1;
  for (int d = 0; d < 2; ++d) {
    for (int dp = 0; dp < dprime_max; ++dp) {
      for (Mask v = 0; v < (Mask{1} << k); ++v) {
        GbfPoly g = f;
        if (d) g += xc;
        if (dp) g += xl;
        // d_0 is the most significant digit of v.
        for (int a = 0; a < k; ++a) {
          if ((v >> (k - 1 - a)) & 1U) g.add_term(Mask{1} << prof.restricted[a], half);
        }
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

AacfVector predicted_aacf(const TheoremProfile& prof) {
  const std::size_t L = std::size_t{1} << prof.m;
  AacfVector A(prof.q, L);
  std::size_t total = prof.M();
  for (const auto& g : prof.groups) total += g.N();
  A.mutable_at(0) = CycloValue::integer(prof.q, static_cast<std::int64_t>(total) << (prof.m + 1));
  for (const auto& g : prof.groups) {
    CycloValue v(prof.q);
    for (Mask c : g.S) v.add_root(static_cast<std::int64_t>(g.g_l) + g.L.at(c), std::int64_t{1} << prof.m);
    A.mutable_at(std::size_t{1} << g.l) += v;
  }
  return A;
}

CsCandidate theorem1_set(const GbfPoly& f, const TheoremProfile& prof) {
  check_profile_matches(f, prof);
  require_ok(prof);
  CsCandidate cs;
  cs.q = f.q();
  cs.m = f.m();
  cs.members = candidate_members(f, prof, false);
  cs.sequences = materialize(cs.members);
  cs.predicted = predicted_aacf(prof);
  cs.pmepr_bound = bound_from_aacf(cs.predicted, f.m());
  cs.provenance = "theorem1";
  return cs;
}

void check_balance(const TheoremProfile& prof) {
  const std::uint32_t half = prof.q / 2;
  for (std::size_t i = 0; i < prof.groups.size(); ++i) {
    const auto& g = prof.groups[i];
    std::vector<std::size_t> hist(prof.q, 0);
    for (const auto& [c, v] : g.L) ++hist[v];
    const bool balanced =
        g.N() % 2 == 0 && hist[0] == g.N() / 2 && hist[half] == g.N() / 2;
    if (!balanced) {
      std::string msg = "group " + std::to_string(i + 1) + " (l=" + std::to_string(g.l) +
                        ", N=" + std::to_string(g.N()) + ") is not balanced between 0 and q/2";
      if (g.N() % 2 != 0) msg += "; N is odd, corollary 2 still applies";
      throw BalanceConditionFailed(msg, static_cast<int>(i + 1), g.l, hist);
    }
  }
}

CsCandidate corollary1_cs(const GbfPoly& f, const TheoremProfile& prof) {
  CsCandidate cs = theorem1_set(f, prof);
  check_balance(prof);
  cs.pmepr_bound = std::ldexp(1.0, prof.k() + 1);
  cs.provenance = "corollary1";
  return cs;
}

CsCandidate corollary2_cs(const GbfPoly& f, const TheoremProfile& prof) {
  check_profile_matches(f, prof);
  require_ok(prof);
  CsCandidate cs;
  cs.q = f.q();
  cs.m = f.m();
  cs.members = candidate_members(f, prof, true);
  cs.sequences = materialize(cs.members);
  cs.predicted = AacfVector(f.q(), std::size_t{1} << f.m());
  cs.predicted.mutable_at(0) =
      CycloValue::integer(f.q(), std::int64_t{1} << (f.m() + prof.k() + 2));
  cs.pmepr_bound = std::ldexp(1.0, prof.k() + 2) - 2.0 * static_cast<double>(prof.M());
  cs.provenance = "corollary2";
  return cs;
}

CsCandidate gdj_pair(const GbfPoly& f, std::uint32_t c, std::uint32_t c_prime,
                     EndpointChoice choice) {
  if (f.degree() > 2) throw HypothesisViolated("GDJ pair needs a quadratic GBF");
  const TheoremProfile prof = inspect(f, {}, choice);
  if (!prof.ok || prof.M() != 1) {
    throw HypothesisViolated("G(f) must be a path with every edge weight q/2");
  }
  const int a = prof.endpoint.at(0);
  CsCandidate cs;
  cs.q = f.q();
  cs.m = f.m();
  cs.members.push_back(f + GbfPoly::constant(f.q(), f.m(), c));
  cs.members.push_back(f + GbfPoly::variable(f.q(), f.m(), a, f.q() / 2) +
                       GbfPoly::constant(f.q(), f.m(), c_prime));
  cs.sequences = materialize(cs.members);
  cs.predicted = AacfVector(f.q(), std::size_t{1} << f.m());
  cs.predicted.mutable_at(0) = CycloValue::integer(f.q(), std::int64_t{1} << (f.m() + 1));
  cs.pmepr_bound = 2.0;
  cs.provenance = "gdj";
  return cs;
}

std::vector<GbfPoly> gdj_codewords(int m, int h) {
  if (m < 2) throw InvalidArgument("GDJ codewords need m >= 2");
  if (h < 1 || h > 16) throw InvalidArgument("h out of range");
  const std::uint32_t q = std::uint32_t{1} << h;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<GbfPoly> out;
  do {
    if (perm.front() > perm.back()) continue;
    GbfPoly base(q, m);
    for (int i = 0; i + 1 < m; ++i) {
      base.add_term((Mask{1} << perm[i]) | (Mask{1} << perm[i + 1]), q / 2);
    }
    // Coefficient vector (c_0, ..., c_{m-1}, c') in lexicographic order.
    std::vector<std::uint32_t> coef(static_cast<std::size_t>(m) + 1, 0);
    while (true) {
      GbfPoly g = base;
      for (int i = 0; i < m; ++i) g.add_term(Mask{1} << i, coef[i]);
      g.add_term(0, coef[m]);
      out.push_back(std::move(g));
      int pos = m;
      while (pos >= 0 && ++coef[pos] == q) coef[pos--] = 0;
      if (pos < 0) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CsCandidate paterson_cs(const GbfPoly& f, const std::vector<int>& deleted) {
  if (f.degree() > 2) throw HypothesisViolated("Paterson's construction needs a quadratic GBF");
  const TheoremProfile prof = analyze(f, deleted);
  if (prof.p() == 0) {
    CsCandidate cs = theorem1_set(f, prof);
    cs.provenance = "paterson-th12";
    return cs;
  }
  if (prof.p() == 1 && prof.groups[0].N() == (std::size_t{1} << prof.k())) {
    try {
      CsCandidate cs = corollary1_cs(f, prof);
      cs.provenance = "paterson-th24";
      return cs;
    } catch (const BalanceConditionFailed& e) {
      throw HypothesisViolated(std::string("isolated-vertex couplings do not cancel: ") + e.what());
    }
  }
  throw HypothesisViolated(
      "deleting these vertices leaves neither a path nor one fixed isolated vertex");
}

CsCandidate schmidt_cs(const GbfPoly& f, const std::vector<int>& restricted) {
  const TheoremProfile prof = analyze(f, restricted);
  if (prof.p() != 0) {
    throw HypothesisViolated("Schmidt's construction needs every restriction to be a path");
  }
  CsCandidate cs = theorem1_set(f, prof);
  cs.provenance = "schmidt-th5";
  return cs;
}

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("SeededRng::below(0)");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

QualifyingShape random_shape(int m, int k, bool balanced, SeededRng& rng) {
  if (k < 0 || k >= m) throw InvalidArgument("need 0 <= k < m");
  QualifyingShape shape;
  for (int j = m - k; j < m; ++j) shape.restricted.push_back(j);
  const std::size_t total = std::size_t{1} << k;
  const std::size_t unit = balanced ? 2 : 1;
  const auto free_count = static_cast<std::size_t>(m - k);
  std::size_t p_max = free_count >= 3 ? std::min(free_count, total / unit) : 0;
  const auto p = static_cast<std::size_t>(rng.below(p_max + 1));
  std::vector<int> labels(free_count);
  std::iota(labels.begin(), labels.end(), 0);
  rng.shuffle(labels);
  for (std::size_t i = 0; i < p; ++i) shape.groups.emplace_back(labels[i], unit);
  std::size_t remaining = total - p * unit;
  while (remaining > 0) {
    const auto bin = static_cast<std::size_t>(rng.below(p + 1));
    if (bin == 0) {
      ++shape.M;
      --remaining;
    } else if (remaining >= unit) {
      shape.groups[bin - 1].second += unit;
      remaining -= unit;
    }
  }
  std::sort(shape.groups.begin(), shape.groups.end());
  return shape;
}

GbfPoly random_qualifying_gbf(int m, std::uint32_t q, const QualifyingShape& shape,
                              bool corollary1_balanced, std::uint64_t seed) {
  const auto& restricted = shape.restricted;
  const int k = static_cast<int>(restricted.size());
  GbfPoly f(q, m);
  const Mask rmask = index_mask(restricted, m);
  if (k >= m) throw InvalidArgument("need k < m");
  const std::size_t total = std::size_t{1} << k;
  std::size_t sum = shape.M;
  Mask labels = 0;
  for (const auto& [l, N] : shape.groups) {
    if (l < 0 || l >= m || ((rmask >> l) & 1U)) {
      throw InvalidArgument("isolated label must be an unrestricted variable");
    }
    if ((labels >> l) & 1U) throw InvalidArgument("isolated labels must be distinct");
    if (N == 0) throw InvalidArgument("isolated groups must be non-empty");
    if (corollary1_balanced && N % 2 != 0) throw InvalidArgument("balanced shapes need even N_i");
    labels |= Mask{1} << l;
    sum += N;
  }
  if (sum != total) throw InvalidArgument("M + sum N_i must equal 2^k");
  if (!shape.groups.empty() && m - k < 3) {
    throw InvalidArgument("isolated vertices need at least three unrestricted variables");
  }

  SeededRng rng(seed);
  const std::int64_t half = q / 2;
  std::vector<Mask> codes(total);
  std::iota(codes.begin(), codes.end(), Mask{0});
  rng.shuffle(codes);

  std::vector<int> free_vars;
  for (int v = 0; v < m; ++v) {
    if (!((rmask >> v) & 1U)) free_vars.push_back(v);
  }

  auto add_path = [&](std::vector<int> verts, Mask c) {
    rng.shuffle(verts);
    GbfPoly path(q, m);
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
      path.add_term((Mask{1} << verts[i]) | (Mask{1} << verts[i + 1]), half);
    }
    f += path * indicator_poly(q, m, restricted, c);
  };

  std::size_t next = 0;
  for (std::size_t i = 0; i < shape.M; ++i) add_path(free_vars, codes[next++]);
  std::vector<std::vector<Mask>> group_codes;
  for (const auto& [l, N] : shape.groups) {
    std::vector<int> verts;
    for (int v : free_vars) {
      if (v != l) verts.push_back(v);
    }
    std::vector<Mask> mine;
    for (std::size_t i = 0; i < N; ++i) {
      mine.push_back(codes[next]);
      add_path(verts, codes[next++]);
    }
    std::sort(mine.begin(), mine.end());
    group_codes.push_back(std::move(mine));
  }

  // Couplings of each isolated vertex to the restricted variables.
  for (std::size_t i = 0; i < shape.groups.size(); ++i) {
    const int l = shape.groups[i].first;
    const GbfPoly xl = GbfPoly::variable(q, m, l);
    if (corollary1_balanced) {
      auto mine = group_codes[i];
      rng.shuffle(mine);
      for (std::size_t t = 0; t < mine.size() / 2; ++t) {
        f += xl * indicator_poly(q, m, restricted, mine[t]) * half;
      }
    } else {
      for (Mask sub = 1; sub < (Mask{1} << k); ++sub) {
        Mask vars = Mask{1} << l;
        for (int a = 0; a < k; ++a) {
          if ((sub >> a) & 1U) vars |= Mask{1} << restricted[a];
        }
        f.add_term(vars, static_cast<std::int64_t>(rng.below(q)));
      }
    }
  }

  // alpha terms: monomials of degree >= 2 in the restricted variables only.
  for (Mask sub = 1; sub < (Mask{1} << k); ++sub) {
    if (std::popcount(sub) < 2) continue;
    Mask vars = 0;
    for (int a = 0; a < k; ++a) {
      if ((sub >> a) & 1U) vars |= Mask{1} << restricted[a];
    }
    f.add_term(vars, static_cast<std::int64_t>(rng.below(q)));
  }
  for (int v = 0; v < m; ++v) f.add_term(Mask{1} << v, static_cast<std::int64_t>(rng.below(q)));
  f.add_term(0, static_cast<std::int64_t>(rng.below(q)));
  return f;
}

}  // namespace polycs
