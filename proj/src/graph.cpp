#include "polycs/graph.hpp"

#include <algorithm>
#include <bit>

#include "polycs/errors.hpp"

namespace polycs {

int RestrictionGraph::degree(int v) const {
  int d = 0;
  for (const auto& [e, w] : edges) {
    if (e.first == v || e.second == v) ++d;
  }
  return d;
}

RestrictionGraph graph_of(const GbfPoly& f_restricted, Mask restricted) {
  const Mask all = f_restricted.m() >= 32 ? ~Mask{0} : ((Mask{1} << f_restricted.m()) - 1);
  if ((restricted & ~all) != 0) throw InvalidArgument("restricted variable outside the GBF");
  RestrictionGraph g;
  g.m = f_restricted.m();
  g.vertices = all & ~restricted;
  for (const auto& [vars, c] : f_restricted.terms()) {
    if ((vars & restricted) != 0) {
      throw InvalidArgument("graph_of expects a restricted GBF; monomial uses a restricted variable");
    }
    const int deg = std::popcount(vars);
    if (deg >= 3) {
      throw DegreeTooHigh("restricted GBF has a monomial of degree " + std::to_string(deg));
    }
    if (deg == 2) {
      const auto idx = mask_indices(vars);
      g.edges.emplace(std::make_pair(idx[0], idx[1]), c);
    }
  }
  return g;
}

const char* to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::Path:
      return "path";
    case ShapeTag::PathPlusIsolated:
      return "path+isolated";
    case ShapeTag::Other:
      break;
  }
  return "other";
}

namespace {

// Walks the induced graph on `verts`; returns the walk if it is a single simple path.
bool as_path(const std::vector<int>& verts,
             const std::map<std::pair<int, int>, std::uint32_t>& edges,
             std::vector<int>& order) {
  order.clear();
  if (verts.empty()) return false;
  if (verts.size() == 1) {
    order = verts;
    return edges.empty();
  }
  if (edges.size() != verts.size() - 1) return false;
  std::map<int, std::vector<int>> adj;
  for (int v : verts) adj[v];
  for (const auto& [e, w] : edges) {
    auto a = adj.find(e.first);
    auto b = adj.find(e.second);
    if (a == adj.end() || b == adj.end()) return false;
    a->second.push_back(e.second);
    b->second.push_back(e.first);
  }
  int start = -1;
  for (const auto& [v, nb] : adj) {
    if (nb.size() > 2 || nb.empty()) return false;
    if (nb.size() == 1 && start < 0) start = v;
  }
  if (start < 0) return false;  // a cycle
  int prev = -1;
  int cur = start;
  while (true) {
    order.push_back(cur);
    int next = -1;
    for (int w : adj[cur]) {
      if (w != prev) next = w;
    }
    if (next < 0) break;
    prev = cur;
    cur = next;
    if (order.size() > verts.size()) return false;
  }
  // Edge count |V|-1 plus a walk covering all of V means connected and acyclic.
  return order.size() == verts.size();
}

}  // namespace

ShapeClass classify(const RestrictionGraph& g) {
  ShapeClass out;
  const auto verts = g.vertex_list();
  if (verts.empty()) return out;
  std::vector<int> order;
  if (as_path(verts, g.edges, order)) {
    out.tag = ShapeTag::Path;
    out.path_order = order;
    out.endpoints = {std::min(order.front(), order.back()), std::max(order.front(), order.back())};
    if (order.front() > order.back()) std::reverse(out.path_order.begin(), out.path_order.end());
    return out;
  }
  std::vector<int> isolated;
  for (int v : verts) {
    if (g.degree(v) == 0) isolated.push_back(v);
  }
  if (isolated.size() != 1 || verts.size() < 3) return out;
  std::vector<int> rest;
  for (int v : verts) {
    if (v != isolated[0]) rest.push_back(v);
  }
  if (!as_path(rest, g.edges, order)) return out;
  out.tag = ShapeTag::PathPlusIsolated;
  out.isolated = isolated[0];
  out.path_order = order;
  out.endpoints = {std::min(order.front(), order.back()), std::max(order.front(), order.back())};
  if (order.front() > order.back()) std::reverse(out.path_order.begin(), out.path_order.end());
  return out;
}

Mask TheoremProfile::restricted_mask() const { return index_mask(restricted, m); }

std::string code_bits(Mask c, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int a = 0; a < k; ++a) {
    if ((c >> a) & 1U) s[static_cast<std::size_t>(a)] = '1';
  }
  return s;
}

std::uint32_t l_value(const GbfPoly& f, int l, const std::vector<int>& restricted, Mask c) {
  const Mask rmask = index_mask(restricted, f.m());
  if (l < 0 || l >= f.m()) throw InvalidArgument("vertex index out of range");
  if ((rmask >> l) & 1U) throw InvalidArgument("l must be an unrestricted variable");
  if (restricted.size() < 32 && (c >> restricted.size()) != 0) {
    throw InvalidArgument("restriction code has more bits than restricted variables");
  }
  const GbfPoly fr = restrict(f, Restriction::from_code(restricted, c));
  const Mask lbit = Mask{1} << l;
  for (const auto& [vars, coeff] : fr.terms()) {
    if ((vars & lbit) != 0 && vars != lbit) {
      throw MixedIsolatedCoupling("x" + std::to_string(l) + " meets free variables at c=" +
                                  code_bits(c, static_cast<int>(restricted.size())));
    }
  }
  const std::uint32_t q = f.q();
  return (fr.coeff(lbit) + q - f.coeff(lbit)) % q;
}

TheoremProfile inspect(const GbfPoly& f, const std::vector<int>& restricted,
                       EndpointChoice choice) {
  TheoremProfile prof;
  prof.q = f.q();
  prof.m = f.m();
  prof.restricted = restricted;
  const Mask rmask = index_mask(restricted, f.m());
  const int k = static_cast<int>(restricted.size());
  if (k >= f.m()) {
    throw InvalidArgument("need at least one unrestricted variable (k < m)");
  }
  const std::uint32_t half = f.q() / 2;
  bool applicable = true;
  std::map<int, IsolatedGroup> by_label;

  for (Mask c = 0; c < (Mask{1} << k); ++c) {
    const std::string cs = code_bits(c, k);
    const GbfPoly fr = restrict(f, Restriction::from_code(restricted, c));
    RestrictionGraph g;
    try {
      g = graph_of(fr, rmask);
    } catch (const DegreeTooHigh& e) {
      prof.diagnostics.push_back("c=" + cs + ": " + e.what());
      applicable = false;
      continue;
    }
    ShapeClass shape = classify(g);
    for (const auto& [e, w] : g.edges) {
      if (w != half) {
        prof.edge_weight_ok = false;
        prof.diagnostics.push_back("c=" + cs + ": edge x" + std::to_string(e.first) + "-x" +
                                   std::to_string(e.second) + " has weight " + std::to_string(w) +
                                   ", expected " + std::to_string(half));
      }
    }
    switch (shape.tag) {
      case ShapeTag::Path:
        prof.S_M.push_back(c);
        break;
      case ShapeTag::PathPlusIsolated: {
        auto& grp = by_label[shape.isolated];
        grp.l = shape.isolated;
        grp.S.push_back(c);
        break;
      }
      case ShapeTag::Other:
        prof.diagnostics.push_back("c=" + cs +
                                   ": graph is neither a path nor a path plus one isolated vertex");
        applicable = false;
        break;
    }
    if (shape.tag != ShapeTag::Other) {
      prof.endpoint[c] =
          choice == EndpointChoice::Lowest ? shape.endpoints.first : shape.endpoints.second;
    }
    prof.shapes.emplace(c, std::move(shape));
  }

  for (auto& [label, grp] : by_label) {
    grp.g_l = f.coeff(Mask{1} << label);
    for (Mask c : grp.S) grp.L[c] = l_value(f, label, restricted, c);
    prof.groups.push_back(std::move(grp));
  }
  prof.ok = applicable && prof.edge_weight_ok;
  return prof;
}

TheoremProfile analyze(const GbfPoly& f, const std::vector<int>& restricted,
                       EndpointChoice choice) {
  TheoremProfile prof = inspect(f, restricted, choice);
  if (!prof.ok) {
    std::string msg = "GBF does not satisfy the path / isolated-vertex hypothesis";
    for (const auto& d : prof.diagnostics) msg += "\n  " + d;
    throw NotTheorem1Applicable(msg);
  }
  return prof;
}

}  // namespace polycs
