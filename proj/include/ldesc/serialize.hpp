#pragma once

// JSON encodings. Field elements are arrays of rational coefficient strings
// on the power basis of zeta_n; residue elements are arrays of length f of
// integers mod ell on the basis 1, y, ..., y^(f-1) of k = F_ell[y]/(h).

#include <string>
#include <string_view>

#include <json.hpp>

#include "ldesc/bundles.hpp"
#include "ldesc/counterexamples.hpp"
#include "ldesc/descent.hpp"

namespace ldesc {

using Json = nlohmann::ordered_json;

inline constexpr int kBundleSchema = 1;

Json to_json(const FieldElement& x);
Json to_json(const KMatrix& m);
Json to_json(const ResidueElement& x);
Json to_json(const ResMatrix& m);
Json to_json(const std::vector<FieldElement>& poly);
Json to_json(const std::vector<ResidueElement>& poly);
Json field_to_json(const Field& F);
Json residue_field_to_json(const ResidueFieldPtr& k);
Json form_to_json(const GramForm& f);
Json residue_form_to_json(const ResidueForm& f);
Json bundle_to_json(const Bundle& b);

// Parsing; errors are Error(Parse) naming the offending field path.
FieldElement element_from_json(const Field& F, const Json& j, const std::string& path);
KMatrix matrix_from_json(const Field& F, const Json& j, const std::string& path);
Field field_from_json(const Json& j, int precision_start, const std::string& path);
Bundle bundle_from_json(const Json& j);
/// Parse text (with line/column in syntax errors) and then the bundle.
Bundle bundle_from_text(const std::string& text);

Json balance_to_json(const BalanceResult& r);
Json charpoly_table_to_json(const GroupRep& rep, const std::vector<CharpolyRow>& rows);
Json certificates_to_json(const Certificates& c);
Json descent_to_json(const GroupRep& rep, const DescentResult& r);
Json certificate_to_json(const NonexistenceCertificate& c);

std::string sha256_hex(std::string_view data);

}  // namespace ldesc
