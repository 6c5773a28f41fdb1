#include "polycs/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "polycs/errors.hpp"

namespace polycs {

Json to_json(const GbfPoly& f) {
  Json terms = Json::array();
  for (const auto& [vars, c] : f.terms()) {
    terms.push_back({{"vars", mask_indices(vars)}, {"coeff", c}});
  }
  return {{"q", f.q()}, {"m", f.m()}, {"terms", terms}, {"text", f.render()}};
}

GbfPoly gbf_from_json(const Json& j) {
  try {
    const auto q = j.at("q").get<std::uint32_t>();
    const int m = j.at("m").get<int>();
    GbfPoly f(q, m);
    for (const auto& t : j.at("terms")) {
      const auto vars = t.at("vars").get<std::vector<int>>();
      Mask mask = 0;
      for (int v : vars) {
        if (v < 0 || v >= m) throw ParseError("term variable x" + std::to_string(v) + " out of range");
        mask |= Mask{1} << v;
      }
      f.add_term(mask, t.at("coeff").get<std::int64_t>());
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad GBF JSON: ") + e.what());
  }
}

Json to_json(const CycloValue& v) {
  if (v.is_integer()) return v.real_part_integer();
  return v.to_string();
}

Json to_json(const TheoremProfile& prof) {
  const int k = prof.k();
  Json sm = Json::array();
  for (Mask c : prof.S_M) sm.push_back(code_bits(c, k));
  Json groups = Json::array();
  for (const auto& g : prof.groups) {
    Json s = Json::array();
    Json L = Json::object();
    for (Mask c : g.S) {
      s.push_back(code_bits(c, k));
      L[code_bits(c, k)] = g.L.at(c);
    }
    groups.push_back({{"l", g.l}, {"N", g.N()}, {"S", s}, {"g_l", g.g_l}, {"L", L}});
  }
  Json endpoint = Json::object();
  for (const auto& [c, v] : prof.endpoint) endpoint[code_bits(c, k)] = v;
  Json shapes = Json::object();
  for (const auto& [c, sh] : prof.shapes) {
    Json one = {{"tag", to_string(sh.tag)}, {"path", sh.path_order}};
    if (sh.isolated >= 0) one["isolated"] = sh.isolated;
    shapes[code_bits(c, k)] = one;
  }
  return {{"q", prof.q},
          {"m", prof.m},
          {"k", k},
          {"restricted", prof.restricted},
          {"M", prof.M()},
          {"p", prof.p()},
          {"S_M", sm},
          {"groups", groups},
          {"endpoint", endpoint},
          {"shapes", shapes},
          {"edge_weight_ok", prof.edge_weight_ok},
          {"ok", prof.ok},
          {"diagnostics", prof.diagnostics}};
}

Json aacf_report(const AacfVector& A, const PmeprReport* pmepr) {
  Json off = Json::array();
  for (std::size_t tau : A.offpeak_support()) {
    const CycloValue v = A.at(static_cast<std::int64_t>(tau));
    off.push_back({{"tau", tau}, {"value", to_json(v)}, {"abs", v.abs()}});
  }
  Json out = {{"L", A.length()}, {"q", A.q()}, {"peak", to_json(A.at(0))}, {"offpeak", off}};
  if (pmepr) {
    out["pmepr_grid"] = pmepr->grid;
    out["pmepr_bound"] = pmepr->bound;
    out["oversample"] = pmepr->oversample;
  }
  return out;
}

void write_cs(std::ostream& os, const CsCandidate& cs) {
  os << "#CS q=" << cs.q << " m=" << cs.m << " size=" << cs.size() << " bound=" << cs.pmepr_bound
     << " provenance=" << cs.provenance << '\n';
  for (const auto& s : cs.sequences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) os << ' ';
      if (s.is_masked(i)) {
        os << '-';
      } else {
        os << s[i];
      }
    }
    os << '\n';
  }
}

SequenceFile read_sequences(std::istream& is, std::uint32_t default_q) {
  SequenceFile out;
  out.q = default_q;
  std::string line;
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string tok;
      while (hs >> tok) {
        if (tok.rfind("q=", 0) == 0) {
          try {
            out.q = static_cast<std::uint32_t>(std::stoul(tok.substr(2)));
          } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad q in header");
          }
        }
      }
      continue;
    }
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream ls(line);
    std::vector<std::uint32_t> row;
    std::string tok;
    while (ls >> tok) {
      if (tok == "-") {
        row.push_back(PolyphaseSeq::kMasked);
        continue;
      }
      try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(tok, &used);
        if (used != tok.size()) throw ParseError("");
        row.push_back(static_cast<std::uint32_t>(v));
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(lineno) + ": bad phase '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (out.q == 0) throw ParseError("sequence file has no '#CS q=' header and no --q was given");
  if (rows.empty()) throw ParseError("sequence file contains no sequences");
  const std::size_t len = rows.front().size();
  for (auto& r : rows) {
    if (r.size() != len) throw ParseError("sequences differ in length");
    for (auto v : r) {
      if (v != PolyphaseSeq::kMasked && v >= out.q) {
        throw ParseError("phase " + std::to_string(v) + " is not below q=" + std::to_string(out.q));
      }
    }
    out.sequences.emplace_back(out.q, std::move(r));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GbfPoly read_gbf(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad GBF JSON: ") + e.what());
    }
    return gbf_from_json(j);
  }
  // Allow comment lines in .gbf files.
  std::istringstream ss(text);
  std::string line, body;
  while (std::getline(ss, line)) {
    const auto p = line.find_first_not_of(" \t");
    if (p != std::string::npos && line[p] == '#') continue;
    body += line;
    body += ' ';
  }
  return parse_gbf(body);
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

}  // namespace

void write_tables_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  os << "family,m,q_or_h,r,log2_size,rate,rate_reference,d_L,d_E2\n";
  for (const auto& r : rows) {
    os << to_string(r.family) << ',' << r.m << ',' << r.q_or_h << ',';
    if (r.r >= 0) os << r.r;
    os << ',' << fixed(r.log2_size, 6) << ',' << fixed(r.rate, 6) << ',';
    if (r.rate_reference) os << fixed(*r.rate_reference, 6);
    os << ',';
    if (r.d_lee) os << *r.d_lee;
    os << ',';
    if (r.d_euclid_sq) os << fixed(*r.d_euclid_sq, 2);
    os << '\n';
  }
}

Json tables_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j = {{"table", r.table},
              {"family", to_string(r.family)},
              {"m", r.m},
              {"q_or_h", r.q_or_h},
              {"log2_size", r.log2_size},
              {"rate", r.rate},
              {"printed", r.printed},
              {"match", r.matches()}};
    if (r.r >= 0) j["r"] = r.r;
    if (r.rate_reference) j["rate_reference"] = *r.rate_reference;
    if (r.d_lee) j["d_L"] = *r.d_lee;
    if (r.d_euclid_sq) j["d_E2"] = *r.d_euclid_sq;
    out.push_back(j);
  }
  return out;
}

}  // namespace polycs
