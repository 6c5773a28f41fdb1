#pragma once

// JSON and text serialisation for GBFs, profiles, correlation reports and
// complementary-set export files.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polycs/codebook.hpp"
#include "polycs/construct.hpp"
#include "polycs/correlation.hpp"
#include "polycs/gbf.hpp"
#include "polycs/graph.hpp"

namespace polycs {

using Json = nlohmann::ordered_json;

Json to_json(const GbfPoly& f);
GbfPoly gbf_from_json(const Json& j);

Json to_json(const CycloValue& v);
Json to_json(const TheoremProfile& prof);

/// Peak, nonzero off-peak shifts and optionally the PMEPR pair.
Json aacf_report(const AacfVector& A, const PmeprReport* pmepr = nullptr);

/// `#CS q= m= size= bound= provenance=` followed by one digit row per member.
void write_cs(std::ostream& os, const CsCandidate& cs);

struct SequenceFile {
  std::uint32_t q = 2;
  std::vector<PolyphaseSeq> sequences;
};

/// Reads a CS export or a bare list of rows. Rows are whitespace/comma separated
/// phases; `-` marks a masked entry. Without a header, q must be given.
SequenceFile read_sequences(std::istream& is, std::uint32_t default_q = 0);

/// Reads either GBF text or a GBF JSON document.
GbfPoly read_gbf(const std::string& text);
std::string read_file(const std::string& path);

void write_tables_csv(std::ostream& os, const std::vector<TableRow>& rows);
Json tables_json(const std::vector<TableRow>& rows);

}  // namespace polycs
