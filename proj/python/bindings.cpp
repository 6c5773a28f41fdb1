#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "polycs/codebook.hpp"
#include "polycs/construct.hpp"
#include "polycs/errors.hpp"
#include "polycs/graph.hpp"
#include "polycs/io.hpp"

namespace py = pybind11;
using namespace polycs;

namespace {

// Hand JSON documents to Python as native dicts/lists.
py::object to_py(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

EndpointChoice endpoint_of(const std::string& s) {
  if (s == "lowest") return EndpointChoice::Lowest;
  if (s == "highest") return EndpointChoice::Highest;
  throw InvalidArgument("endpoint must be 'lowest' or 'highest'");
}

PolyphaseSeq as_seq(const std::vector<std::uint32_t>& phases, std::uint32_t q) {
  return PolyphaseSeq(q, phases);
}

std::vector<PolyphaseSeq> as_set(const std::vector<std::vector<std::uint32_t>>& rows,
                                 std::uint32_t q) {
  std::vector<PolyphaseSeq> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(q, r);
  return out;
}

std::vector<std::complex<double>> to_complex(const AacfVector& A) {
  std::vector<std::complex<double>> out;
  for (const auto& v : A.nonnegative()) out.push_back(v.to_complex());
  return out;
}

CodebookSpec make_spec(const std::string& family, int m, int h, int r, int k, std::uint32_t q,
                       int l1, int l2) {
  CodebookSpec s;
  s.family = parse_family(family);
  s.m = m;
  s.h = h;
  s.r = r;
  s.k = k;
  s.q = q;
  s.l1 = l1;
  s.l2 = l2;
  return s;
}

py::dict candidate_dict(const CsCandidate& cs) {
  py::dict d;
  std::vector<std::string> members;
  std::vector<std::vector<std::uint32_t>> seqs;
  for (const auto& g : cs.members) members.push_back(g.render());
  for (const auto& s : cs.sequences) seqs.push_back(s.phases());
  d["q"] = cs.q;
  d["m"] = cs.m;
  d["members"] = members;
  d["sequences"] = seqs;
  d["bound"] = cs.pmepr_bound;
  d["provenance"] = cs.provenance;
  d["predicted"] = to_py(aacf_report(cs.predicted));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Complementary sets of polyphase sequences from generalized Boolean functions";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  auto hyp = py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
  (void)hyp;

  py::class_<GbfPoly>(m, "Gbf")
      .def(py::init([](const std::string& text) { return parse_gbf(text); }), py::arg("text"))
      .def_property_readonly("q", &GbfPoly::q)
      .def_property_readonly("m", &GbfPoly::m)
      .def_property_readonly("degree", &GbfPoly::degree)
      .def_property_readonly("terms",
                             [](const GbfPoly& f) {
                               py::dict d;
                               for (const auto& [vars, c] : f.terms()) {
                                 d[py::tuple(py::cast(mask_indices(vars)))] = c;
                               }
                               return d;
                             })
      .def("eval_index", &GbfPoly::eval_index, py::arg("point"))
      .def("psi", [](const GbfPoly& f) { return psi(f).phases(); })
      .def("effective_degree", [](const GbfPoly& f) { return effective_degree(f); })
      .def("render", &GbfPoly::render)
      .def("__str__", &GbfPoly::render)
      .def("__repr__", [](const GbfPoly& f) { return "Gbf('" + f.render() + "')"; })
      .def("__eq__", [](const GbfPoly& a, const GbfPoly& b) { return a == b; })
      .def("__add__", [](const GbfPoly& a, const GbfPoly& b) { return a + b; })
      .def("__mul__", [](const GbfPoly& a, const GbfPoly& b) { return a * b; });

  m.def("parse_gbf", &parse_gbf, py::arg("text"));

  m.def(
      "analyze",
      [](const GbfPoly& f, const std::vector<int>& restricted, const std::string& endpoint) {
        return to_py(to_json(inspect(f, restricted, endpoint_of(endpoint))));
      },
      py::arg("f"), py::arg("restricted"), py::arg("endpoint") = "lowest",
      "Restriction profile; 'ok' says whether the construction applies.");

  m.def(
      "construct",
      [](const GbfPoly& f, const std::vector<int>& restricted, int corollary,
         const std::string& endpoint) {
        const TheoremProfile prof = analyze(f, restricted, endpoint_of(endpoint));
        switch (corollary) {
          case 0: return candidate_dict(theorem1_set(f, prof));
          case 1: return candidate_dict(corollary1_cs(f, prof));
          case 2: return candidate_dict(corollary2_cs(f, prof));
          default: throw InvalidArgument("corollary must be 0, 1 or 2");
        }
      },
      py::arg("f"), py::arg("restricted"), py::arg("corollary") = 0,
      py::arg("endpoint") = "lowest");

  m.def(
      "gdj_pair",
      [](const GbfPoly& f, std::uint32_t c, std::uint32_t cp) {
        return candidate_dict(gdj_pair(f, c, cp));
      },
      py::arg("f"), py::arg("c") = 0, py::arg("c_prime") = 0);

  m.def(
      "aacf",
      [](const std::vector<std::uint32_t>& a, std::uint32_t q) { return to_complex(aacf(as_seq(a, q))); },
      py::arg("phases"), py::arg("q"), "Autocorrelation for tau = 0 .. L-1.");
  m.def(
      "set_aacf",
      [](const std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t q) {
        return to_complex(set_aacf(as_set(rows, q)));
      },
      py::arg("sequences"), py::arg("q"));
  m.def(
      "is_cs",
      [](const std::vector<std::vector<std::uint32_t>>& rows, std::uint32_t q) {
        return is_cs(as_set(rows, q));
      },
      py::arg("sequences"), py::arg("q"));
  m.def(
      "pmepr",
      [](const std::vector<std::uint32_t>& a, std::uint32_t q, int oversample) {
        const PmeprReport r = pmepr_report(as_seq(a, q), oversample);
        return py::make_tuple(r.grid, r.bound);
      },
      py::arg("phases"), py::arg("q"), py::arg("oversample") = 64,
      "(grid PMEPR, autocorrelation bound).");

  m.def(
      "codebook_size",
      [](const std::string& family, int mm, int h, int r, int k, std::uint32_t q) {
        const BigInt n = codebook_size(make_spec(family, mm, h, r, k, q, 0, 1));
        return py::int_(py::str(n.str()));
      },
      py::arg("family"), py::arg("m"), py::arg("h") = 1, py::arg("r") = 0, py::arg("k") = 0,
      py::arg("q") = 2);
  m.def(
      "rate",
      [](const std::string& family, int mm, int h, int r, int k, std::uint32_t q) {
        const RateReport rep = rate(make_spec(family, mm, h, r, k, q, 0, 1));
        py::dict d;
        d["log2_size"] = rep.log2_size;
        d["rate"] = rep.rate;
        d["d_L"] = rep.d_lee ? py::cast(*rep.d_lee) : py::none();
        d["d_E2"] = rep.d_euclid_sq ? py::cast(*rep.d_euclid_sq) : py::none();
        return d;
      },
      py::arg("family"), py::arg("m"), py::arg("h") = 1, py::arg("r") = 0, py::arg("k") = 0,
      py::arg("q") = 2);
  m.def("reproduce_tables", [] { return to_py(tables_json(reproduce_tables())); });

  m.def(
      "enumerate_codebook",
      [](const std::string& family, int mm, int h, int r, int k, int l1, int l2,
         std::uint64_t limit) {
        std::vector<std::vector<std::uint32_t>> out;
        enumerate_codebook(make_spec(family, mm, h, r, k, 2, l1, l2), limit,
                           [&](const Codeword& cw) {
                             out.emplace_back(cw.phases.begin(), cw.phases.end());
                           });
        return out;
      },
      py::arg("family"), py::arg("m"), py::arg("h") = 1, py::arg("r") = 0, py::arg("k") = 0,
      py::arg("l1") = 0, py::arg("l2") = 1, py::arg("limit") = std::uint64_t{1} << 16);
  m.def(
      "erm_min_distance",
      [](int r, int mm, int h) {
        const DistanceReport d = erm_min_distance(r, mm, h);
        return py::make_tuple(d.d_lee, d.d_euclid_sq);
      },
      py::arg("r"), py::arg("m"), py::arg("h"));

  m.def(
      "random_qualifying_gbf",
      [](int mm, int k, std::uint32_t q, std::uint64_t seed, bool balanced) {
        SeededRng rng(seed);
        const QualifyingShape shape = random_shape(mm, k, balanced, rng);
        return random_qualifying_gbf(mm, q, shape, balanced, rng.below(~std::uint64_t{0}));
      },
      py::arg("m"), py::arg("k"), py::arg("q"), py::arg("seed"), py::arg("balanced") = false);
}
