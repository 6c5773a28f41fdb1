#pragma once

// Graphs of restricted GBFs and the structural profile used by the
// set constructions.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polycs/gbf.hpp"

namespace polycs {

struct RestrictionGraph {
  int m = 0;
  /// Unrestricted variables.
  Mask vertices = 0;
  /// (u, v) with u < v -> nonzero quadratic coefficient.
  std::map<std::pair<int, int>, std::uint32_t> edges;

  int degree(int v) const;
  std::vector<int> vertex_list() const { return mask_indices(vertices); }
};

/// Quadratic part of a restricted GBF over the variables outside `restricted`.
/// Throws DegreeTooHigh if a monomial in three or more variables survives.
RestrictionGraph graph_of(const GbfPoly& f_restricted, Mask restricted);

enum class ShapeTag { Path, PathPlusIsolated, Other };

struct ShapeClass {
  ShapeTag tag = ShapeTag::Other;
  /// Path vertices in walk order, starting at the lower-index end.
  std::vector<int> path_order;
  std::pair<int, int> endpoints{-1, -1};
  int isolated = -1;
};

/// A single vertex is a path; two unconnected vertices are Other because the
/// isolated one would be ambiguous.
ShapeClass classify(const RestrictionGraph& g);

const char* to_string(ShapeTag tag);

/// Which end of a path supplies x_c.
enum class EndpointChoice { Lowest, Highest };

struct IsolatedGroup {
  int l = -1;
  /// Restriction codes c (bit a = c_a), ascending.
  std::vector<Mask> S;
  std::uint32_t g_l = 0;
  std::map<Mask, std::uint32_t> L;

  std::size_t N() const noexcept { return S.size(); }
};

struct TheoremProfile {
  std::uint32_t q = 2;
  int m = 0;
  std::vector<int> restricted;
  std::vector<Mask> S_M;
  std::vector<IsolatedGroup> groups;
  /// t(c) for every c.
  std::map<Mask, int> endpoint;
  std::map<Mask, ShapeClass> shapes;
  bool edge_weight_ok = true;
  bool ok = false;
  std::vector<std::string> diagnostics;

  int k() const noexcept { return static_cast<int>(restricted.size()); }
  std::size_t M() const noexcept { return S_M.size(); }
  std::size_t p() const noexcept { return groups.size(); }
  Mask restricted_mask() const;
  Restriction restriction(Mask c) const { return Restriction::from_code(restricted, c); }
};

/// Bitstring c_0 c_1 ... c_{k-1}.
std::string code_bits(Mask c, int k);

/// Builds the profile without throwing on hypothesis failures; `ok` and
/// `diagnostics` report them.
TheoremProfile inspect(const GbfPoly& f, const std::vector<int>& restricted,
                       EndpointChoice choice = EndpointChoice::Lowest);

/// As inspect, but throws NotTheorem1Applicable when the profile is not ok.
TheoremProfile analyze(const GbfPoly& f, const std::vector<int>& restricted,
                       EndpointChoice choice = EndpointChoice::Lowest);

/// Coefficient of x_l in f|_{x=c} minus the coefficient of x_l in f.
/// Throws MixedIsolatedCoupling if x_l still meets an unrestricted variable at c.
std::uint32_t l_value(const GbfPoly& f, int l, const std::vector<int>& restricted, Mask c);

}  // namespace polycs
