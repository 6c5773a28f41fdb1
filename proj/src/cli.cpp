#include "polycs/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "polycs/codebook.hpp"
#include "polycs/construct.hpp"
#include "polycs/errors.hpp"
#include "polycs/graph.hpp"
#include "polycs/io.hpp"

namespace polycs::cli {

namespace {

struct Options {
  std::string input;
  std::vector<int> restrict_vars;
  std::string endpoint = "lowest";
  int corollary = 0;
  std::string special;
  std::uint32_t c = 0;
  std::uint32_t c_prime = 0;
  std::string out_path;
  std::uint32_t q = 0;
  int oversample = 64;
  bool csv = false;
  bool golden = false;
  std::string family = "ERM";
  int m = 4;
  int h = 1;
  int r = 1;
  int k = 1;
  int l1 = 0;
  int l2 = 1;
  std::uint64_t limit = std::uint64_t{1} << 20;
  bool count_only = false;
  bool with_gbf = false;
  bool distance = false;
  std::optional<std::uint64_t> seed;
  bool balanced = false;
};

EndpointChoice endpoint_of(const std::string& s) {
  if (s == "lowest") return EndpointChoice::Lowest;
  if (s == "highest") return EndpointChoice::Highest;
  throw InvalidArgument("--endpoint must be 'lowest' or 'highest'");
}

// The input is a file path unless it already looks like GBF text.
GbfPoly load_gbf(const std::string& input) {
  if (input.empty()) throw InvalidArgument("missing GBF input");
  if (input.find("q=") != std::string::npos || input.find('{') != std::string::npos) {
    return read_gbf(input);
  }
  return read_gbf(read_file(input));
}

SequenceFile load_sequences(const std::string& input, std::uint32_t q) {
  if (input.empty() || input == "-") return read_sequences(std::cin, q);
  std::ifstream in(input);
  if (!in) throw std::ios_base::failure("cannot open " + input);
  return read_sequences(in, q);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot write " + path);
  os << text;
  if (!os) throw std::ios_base::failure("write failed for " + path);
}

int do_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const GbfPoly f = load_gbf(o.input);
  const TheoremProfile prof = inspect(f, o.restrict_vars, endpoint_of(o.endpoint));
  out << to_json(prof).dump(2) << '\n';
  err << "k=" << prof.k() << " M=" << prof.M() << " p=" << prof.p();
  for (const auto& g : prof.groups) err << " N(x" << g.l << ")=" << g.N();
  err << (prof.ok ? "  applicable\n" : "  NOT applicable\n");
  for (const auto& d : prof.diagnostics) err << "  " << d << '\n';
  return prof.ok ? kOk : kHypothesis;
}

int do_construct(const Options& o, std::ostream& out, std::ostream& err) {
  const GbfPoly f = load_gbf(o.input);
  CsCandidate cs;
  if (o.special.empty()) {
    const TheoremProfile prof = analyze(f, o.restrict_vars, endpoint_of(o.endpoint));
    switch (o.corollary) {
      case 0: cs = theorem1_set(f, prof); break;
      case 1:
        try {
          cs = corollary1_cs(f, prof);
        } catch (const BalanceConditionFailed&) {
          err << "hint: the balance condition fails; try --corollary 2\n";
          throw;
        }
        break;
      case 2: cs = corollary2_cs(f, prof); break;
      default: throw InvalidArgument("--corollary must be 0, 1 or 2");
    }
  } else if (o.special == "gdj") {
    cs = gdj_pair(f, o.c, o.c_prime, endpoint_of(o.endpoint));
  } else if (o.special == "paterson") {
    cs = paterson_cs(f, o.restrict_vars);
  } else if (o.special == "schmidt") {
    cs = schmidt_cs(f, o.restrict_vars);
  } else {
    throw InvalidArgument("--special must be gdj, paterson or schmidt");
  }

  std::ostringstream exported;
  write_cs(exported, cs);
  Json members = Json::array();
  for (const auto& g : cs.members) members.push_back(g.render());
  Json report = {{"size", cs.size()},
                 {"bound", cs.pmepr_bound},
                 {"provenance", cs.provenance},
                 {"members", members},
                 {"predicted", aacf_report(cs.predicted)}};
  if (o.out_path.empty()) {
    out << exported.str();
  } else {
    write_text(o.out_path, exported.str());
    write_text(o.out_path + ".aacf.json", report.dump(2) + "\n");
    out << report.dump(2) << '\n';
  }
  err << cs.provenance << ": " << cs.size() << " sequences of length " << (1u << cs.m)
      << ", PMEPR bound " << cs.pmepr_bound << '\n';
  return kOk;
}

int do_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SequenceFile sf = load_sequences(o.input, o.q);
  const AacfVector sum = set_aacf(sf.sequences);
  const bool cs = is_cs(sf.sequences);
  Json report = {{"is_cs", cs}, {"size", sf.sequences.size()},
                 {"unmasked", sf.sequences.front().unmasked_count()},
                 {"aacf", aacf_report(sum)}};
  out << report.dump(2) << '\n';
  err << (cs ? "complementary set" : "NOT a complementary set") << " (" << sf.sequences.size()
      << " sequences, " << sum.offpeak_support().size() << " nonzero off-peak shifts)\n";
  return cs ? kOk : kHypothesis;
}

int do_pmepr(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<PolyphaseSeq> seqs;
  const bool gbf_text = o.input.find("q=") != std::string::npos;
  bool as_gbf = gbf_text;
  std::string text;
  if (!gbf_text && !o.input.empty() && o.input != "-") {
    text = read_file(o.input);
    // Sequence files carry a #CS header or start with phases; GBFs name q.
    const auto p = text.find_first_not_of(" \t\r\n");
    as_gbf = text.find("#CS") == std::string::npos &&
             (text.find("q=") != std::string::npos || (p != std::string::npos && text[p] == '{'));
  }
  if (as_gbf) {
    seqs.push_back(psi(gbf_text ? read_gbf(o.input) : read_gbf(text)));
  } else {
    seqs = load_sequences(o.input, o.q).sequences;
  }
  Json rows = Json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const PmeprReport rep = pmepr_report(seqs[i], o.oversample);
    worst = std::max(worst, rep.grid);
    rows.push_back({{"index", i}, {"grid", rep.grid}, {"bound", rep.bound},
                    {"oversample", rep.oversample}});
  }
  out << rows.dump(2) << '\n';
  err << seqs.size() << " sequence(s), max grid PMEPR " << worst << '\n';
  return kOk;
}

int do_tables(const Options& o, std::ostream& out, std::ostream& err) {
  const auto rows = reproduce_tables();
  if (o.csv) {
    write_tables_csv(out, rows);
  } else {
    out << tables_json(rows).dump(2) << '\n';
  }
  if (!o.golden) return kOk;
  int bad = 0;
  for (const auto& r : rows) {
    if (r.matches()) continue;
    ++bad;
    err << "mismatch: Table " << r.table << ' ' << to_string(r.family) << " m=" << r.m
        << " q_or_h=" << r.q_or_h;
    if (r.r >= 0) err << " r=" << r.r;
    err << " rate " << r.rate << " printed " << r.printed << '\n';
  }
  for (const auto& r : reproduce_table1()) {
    if (r.matches()) continue;
    ++bad;
    err << "mismatch: Table I k=" << r.k << " corollary " << r.corollary << " M=" << r.M
        << " p=" << r.p << ": computed (" << r.proposed << ", " << r.schmidt << ") printed ("
        << r.printed_proposed << ", " << r.printed_schmidt << ")\n";
  }
  err << (bad == 0 ? "all golden values match\n" : std::to_string(bad) + " golden mismatches\n");
  return bad == 0 ? kOk : kHypothesis;
}

int do_enumerate(const Options& o, std::ostream& out, std::ostream& err) {
  CodebookSpec spec;
  spec.family = parse_family(o.family);
  spec.m = o.m;
  spec.h = o.h;
  spec.q = o.q == 0 ? 2 : o.q;
  spec.r = o.r;
  spec.k = o.k;
  spec.l1 = o.l1;
  spec.l2 = o.l2;
  if (o.distance) {
    const DistanceReport d = verify_distance(spec, o.limit);
    const RateReport rr = rate(spec);
    Json j = {{"family", to_string(spec.family)}, {"d_L", d.d_lee}, {"d_E2", d.d_euclid_sq}};
    if (rr.d_lee) j["d_L_bound"] = *rr.d_lee;
    if (rr.d_euclid_sq) j["d_E2_bound"] = *rr.d_euclid_sq;
    out << j.dump(2) << '\n';
    return kOk;
  }
  const std::uint64_t n = enumerate_codebook(spec, o.limit, [&](const Codeword& cw) {
    if (o.count_only) return;
    for (std::size_t i = 0; i < cw.phases.size(); ++i) out << cw.phases[i];
    if (o.with_gbf) out << '\t' << cw.gbf().render();
    out << '\n';
  });
  if (o.count_only) out << n << '\n';
  err << to_string(spec.family) << ": " << n << " codewords (closed form "
      << codebook_size(spec).str() << ")\n";
  return kOk;
}

int do_random(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.seed) throw InvalidArgument("random requires --seed");
  const std::uint32_t q = o.q == 0 ? 2 : o.q;
  SeededRng rng(*o.seed);
  const QualifyingShape shape = random_shape(o.m, o.k, o.balanced, rng);
  const GbfPoly f = random_qualifying_gbf(o.m, q, shape, o.balanced, rng.below(~std::uint64_t{0}));
  Json groups = Json::array();
  for (const auto& [l, n] : shape.groups) groups.push_back({{"l", l}, {"N", n}});
  Json j = {{"seed", *o.seed},
            {"restricted", shape.restricted},
            {"M", shape.M},
            {"groups", groups},
            {"gbf", to_json(f)}};
  out << j.dump(2) << '\n';
  err << f.render() << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complementary sets from generalized Boolean functions"};
  app.require_subcommand(1);
  Options o;

  auto add_gbf_opts = [&](CLI::App* sc) {
    sc->add_option("input", o.input, "GBF file or inline GBF text")->required();
    sc->add_option("--restrict", o.restrict_vars, "restricted variable indices")->delimiter(',');
    sc->add_option("--endpoint", o.endpoint, "path end used for x_c: lowest|highest");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "restriction profile of a GBF");
  add_gbf_opts(analyze_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "build a (near-)complementary set");
  add_gbf_opts(construct_cmd);
  construct_cmd->add_option("--corollary", o.corollary, "0 = theorem set, 1 or 2");
  construct_cmd->add_option("--special", o.special, "gdj | paterson | schmidt");
  construct_cmd->add_option("--c", o.c, "GDJ offset c");
  construct_cmd->add_option("--cprime", o.c_prime, "GDJ offset c'");
  construct_cmd->add_option("--out", o.out_path, "write the set here (+ .aacf.json)");

  auto* verify_cmd = app.add_subcommand("verify", "exact complementarity check of a sequence file");
  verify_cmd->add_option("input", o.input, "sequence file ('-' for stdin)");
  verify_cmd->add_option("--q", o.q, "alphabet size when the file has no header");

  auto* pmepr_cmd = app.add_subcommand("pmepr", "oversampled PMEPR and autocorrelation bound");
  pmepr_cmd->add_option("input", o.input, "GBF or sequence file");
  pmepr_cmd->add_option("--q", o.q, "alphabet size when the file has no header");
  pmepr_cmd->add_option("--oversample", o.oversample, "grid oversampling factor")
      ->check(CLI::PositiveNumber);

  auto* tables_cmd = app.add_subcommand("tables", "code-rate tables");
  tables_cmd->add_flag("--csv", o.csv, "CSV instead of JSON");
  tables_cmd->add_flag("--golden", o.golden, "compare with the reference values");

  auto* enum_cmd = app.add_subcommand("enumerate", "stream the codewords of a small code");
  enum_cmd->set_help_flag("--help", "print this help and exit");
  enum_cmd->add_option("--family", o.family, "ERM, A, A1, R, R1, R2, C_corr4, C1_corr5, C2_corr5");
  enum_cmd->add_option("--m", o.m);
  enum_cmd->add_option("--h", o.h);
  enum_cmd->add_option("--q", o.q, "alphabet for S-families");
  enum_cmd->add_option("--r", o.r);
  enum_cmd->add_option("--k", o.k);
  enum_cmd->add_option("--l1", o.l1);
  enum_cmd->add_option("--l2", o.l2);
  enum_cmd->add_option("--limit", o.limit, "refuse codes larger than this");
  enum_cmd->add_flag("--count", o.count_only, "print only the number of codewords");
  enum_cmd->add_flag("--gbf", o.with_gbf, "append the defining GBF to each codeword");
  enum_cmd->add_flag("--distance", o.distance, "exhaustive minimum Lee / Euclidean distance");

  auto* random_cmd = app.add_subcommand("random", "seeded GBF satisfying the path hypothesis");
  random_cmd->add_option("--seed", o.seed)->required();
  random_cmd->add_option("--m", o.m);
  random_cmd->add_option("--k", o.k);
  random_cmd->add_option("--q", o.q);
  random_cmd->add_flag("--balanced", o.balanced, "even N_i with balanced L-terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (analyze_cmd->parsed()) return do_analyze(o, out, err);
    if (construct_cmd->parsed()) return do_construct(o, out, err);
    if (verify_cmd->parsed()) return do_verify(o, out, err);
    if (pmepr_cmd->parsed()) return do_pmepr(o, out, err);
    if (tables_cmd->parsed()) return do_tables(o, out, err);
    if (enum_cmd->parsed()) return do_enumerate(o, out, err);
    if (random_cmd->parsed()) return do_random(o, out, err);
  } catch (const BalanceConditionFailed& e) {
    Json j = {{"error", "BalanceConditionFailed"}, {"message", e.what()},
              {"group", e.group()}, {"label", e.label()}, {"histogram", e.histogram()}};
    out << j.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kHypothesis;
  } catch (const HypothesisError& e) {
    Json j = {{"error", "HypothesisError"}, {"message", e.what()}};
    out << j.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kHypothesis;
  } catch (const std::ios_base::failure& e) {
    err << "io error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace polycs::cli
