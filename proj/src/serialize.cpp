#include "ldesc/serialize.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace ldesc {

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Parse, (path.empty() ? std::string("bundle") : path) + ": " + msg);
}

// Message of an Error without its "Code: " prefix.
std::string bare(const Error& e) {
  std::string w = e.what();
  const auto name = error_code_name(e.code());
  if (w.rfind(name, 0) == 0 && w.size() > name.size() + 2) return w.substr(name.size() + 2);
  return w;
}

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(path, std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

mpq_class rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) parse_fail(path, "expected an integer or a rational string");
  const std::string s = j.get<std::string>();
  mpq_class q;
  if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) parse_fail(path, "bad rational '" + s + "'");
  if (q.get_den() == 0) parse_fail(path, "zero denominator");
  q.canonicalize();
  return q;
}

std::string join(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

}  // namespace

Json to_json(const FieldElement& x) {
  Json a = Json::array();
  for (const auto& c : x.coeffs()) a.push_back(c.get_str());
  return a;
}

Json to_json(const KMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ResidueElement& x) {
  Json a = Json::array();
  for (auto c : x.coeffs()) a.push_back(c);
  return a;
}

Json to_json(const ResMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const std::vector<FieldElement>& poly) {
  Json a = Json::array();
  for (const auto& c : poly) a.push_back(to_json(c));
  return a;
}

Json to_json(const std::vector<ResidueElement>& poly) {
  Json a = Json::array();
  for (const auto& c : poly) a.push_back(to_json(c));
  return a;
}

Json field_to_json(const Field& F) {
  const auto& s = F->spec();
  Json j;
  j["n"] = s.n;
  j["ell"] = s.ell;
  j["H"] = s.subgroup;
  j["prime_choice"] = s.prime_choice;
  j["involution"] = s.involution ? Json(*s.involution) : Json(nullptr);
  j["uniformizer"] = to_json(F->uniformizer());
  return j;
}

Json residue_field_to_json(const ResidueFieldPtr& k) {
  Json j;
  j["ell"] = k->characteristic();
  j["degree"] = k->degree();
  j["modulus"] = k->modulus();
  j["involution_power"] = k->involution_power() ? Json(*k->involution_power()) : Json(nullptr);
  return j;
}

Json form_to_json(const GramForm& f) {
  Json j;
  j["kind"] = to_string(f.kind());
  j["gram"] = to_json(f.gram());
  return j;
}

Json residue_form_to_json(const ResidueForm& f) {
  Json j;
  j["kind"] = f.kind_name();
  j["block_dims"] = {f.s, f.dim() - f.s};
  j["block_kinds"] = {to_string(f.bar_kind), to_string(f.tilde_kind)};
  j["gram"] = to_json(f.gram);
  return j;
}

Json bundle_to_json(const Bundle& b) {
  Json j;
  j["schema"] = kBundleSchema;
  j["field"] = field_to_json(b.form.field());
  j["form"] = form_to_json(b.form);
  Json gens = Json::array();
  for (const auto& g : b.generators) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  if (b.lattice) j["lattice"] = to_json(*b.lattice);
  Json opts;
  opts["max_group_order"] = b.options.max_group_order;
  opts["precision_start"] = b.options.precision_start;
  opts["enumeration_cap"] = b.options.enum_cap;
  j["options"] = std::move(opts);
  return j;
}

FieldElement element_from_json(const Field& F, const Json& j, const std::string& path) {
  std::vector<mpq_class> coeffs;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) coeffs.push_back(rational_from_json(j[i], join(path, i)));
  } else {
    coeffs.push_back(rational_from_json(j, path));
  }
  try {
    return F->element(std::move(coeffs));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + bare(e));
  }
}

KMatrix matrix_from_json(const Field& F, const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) parse_fail(path, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::vector<FieldElement> data;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = join(path, i);
    if (!j[i].is_array()) parse_fail(rp, "expected a row");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) parse_fail(rp, "row length differs from row 0");
    for (std::size_t c = 0; c < cols; ++c) data.push_back(element_from_json(F, j[i][c], join(rp, c)));
  }
  KMatrix m;
  m.assign(rows, cols, std::move(data));
  return m;
}

Field field_from_json(const Json& j, int precision_start, const std::string& path) {
  DescriptorSpec spec;
  spec.n = as_int(member(j, "n", path), join(path, "n"));
  spec.ell = as_int(member(j, "ell", path), join(path, "ell"));
  if (j.contains("H")) {
    const Json& h = j["H"];
    if (!h.is_array()) parse_fail(join(path, "H"), "expected an array");
    spec.subgroup.clear();
    for (std::size_t i = 0; i < h.size(); ++i) spec.subgroup.push_back(as_int(h[i], join(join(path, "H"), i)));
  }
  if (j.contains("prime_choice")) spec.prime_choice = static_cast<int>(as_int(j["prime_choice"], join(path, "prime_choice")));
  if (j.contains("involution") && !j["involution"].is_null())
    spec.involution = as_int(j["involution"], join(path, "involution"));
  spec.precision_start = precision_start;
  Field F;
  try {
    F = FieldDescriptor::make(spec);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + bare(e));
  }
  if (j.contains("uniformizer")) {
    const FieldElement u = element_from_json(F, j["uniformizer"], join(path, "uniformizer"));
    if (!(u == F->uniformizer())) {
      try {
        F = F->with_uniformizer(u);
      } catch (const Error& e) {
        throw Error(e.code(), join(path, "uniformizer") + ": " + bare(e));
      }
    }
  }
  return F;
}

Bundle bundle_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("", "expected a JSON object");
  const Json& schema = member(j, "schema", "");
  if (!schema.is_number_integer() || schema.get<int>() != kBundleSchema)
    parse_fail("schema", "unsupported schema (expected " + std::to_string(kBundleSchema) + ")");

  BundleOptions opts;
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) parse_fail("options", "expected an object");
    if (o.contains("max_group_order")) {
      const auto v = as_int(o["max_group_order"], "options.max_group_order");
      if (v < 1) parse_fail("options.max_group_order", "must be positive");
      opts.max_group_order = static_cast<std::size_t>(v);
    }
    if (o.contains("precision_start")) {
      const auto v = as_int(o["precision_start"], "options.precision_start");
      if (v < 1 || v > 4096) parse_fail("options.precision_start", "must be in [1, 4096]");
      opts.precision_start = static_cast<int>(v);
    }
    // enum_cap is the older spelling
    for (const char* key : {"enumeration_cap", "enum_cap"}) {
      if (!o.contains(key)) continue;
      const std::string path = std::string("options.") + key;
      const auto v = as_int(o[key], path);
      if (v < 1) parse_fail(path, "must be positive");
      opts.enum_cap = static_cast<std::size_t>(v);
      break;
    }
  }

  Field F = field_from_json(member(j, "field", ""), opts.precision_start, "field");
  const Json& form = member(j, "form", "");
  const Json& kind = member(form, "kind", "form");
  if (!kind.is_string()) parse_fail("form.kind", "expected a string");
  FormKind fk;
  try {
    fk = form_kind_from_string(kind.get<std::string>());
  } catch (const Error& e) {
    parse_fail("form.kind", bare(e));
  }
  KMatrix gram = matrix_from_json(F, member(form, "gram", "form"), "form.gram");
  if (!gram.square()) parse_fail("form.gram", "Gram matrix must be square");
  std::optional<GramForm> f;
  try {
    f.emplace(F, gram, fk);
  } catch (const Error& e) {
    throw Error(e.code(), "form: " + bare(e));
  }

  const Json& gens = member(j, "generators", "");
  if (!gens.is_array()) parse_fail("generators", "expected an array of matrices");
  std::vector<KMatrix> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    KMatrix g = matrix_from_json(F, gens[i], join("generators", i));
    if (g.rows() != gram.rows() || g.cols() != gram.rows())
      parse_fail(join("generators", i), "shape does not match the Gram matrix");
    generators.push_back(std::move(g));
  }
  std::optional<KMatrix> lattice;
  if (j.contains("lattice") && !j["lattice"].is_null()) {
    lattice = matrix_from_json(F, j["lattice"], "lattice");
    if (lattice->rows() != gram.rows() || !lattice->square()) parse_fail("lattice", "shape does not match the Gram matrix");
  }
  return Bundle{*f, std::move(generators), std::move(lattice), opts};
}

Bundle bundle_from_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return bundle_from_json(j);
}

Json balance_to_json(const BalanceResult& r) {
  Json j;
  j["scale_m"] = r.m;
  j["chain_length"] = r.j;
  j["length_bound"] = r.bound;
  j["scaled_form"] = form_to_json(r.scaled);
  Json chain = Json::array();
  for (const auto& l : r.chain) chain.push_back(to_json(l.basis()));
  j["chain"] = std::move(chain);
  j["balanced_lattice"] = to_json(r.T.basis());
  return j;
}

Json charpoly_table_to_json(const GroupRep& rep, const std::vector<CharpolyRow>& rows) {
  Json t = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Json row;
    row["element"] = i;
    row["word"] = rep.elements()[i].word;
    row["over_K"] = to_json(rows[i].over_K);
    row["reduced"] = to_json(rows[i].reduced);
    if (!rows[i].of_rho_bar.empty()) row["rho_bar"] = to_json(rows[i].of_rho_bar);
    t.push_back(std::move(row));
  }
  return t;
}

Json certificates_to_json(const Certificates& c) {
  Json j;
  j["faithful"] = c.faithful;
  j["charpoly_preserved"] = c.charpoly_preserved;
  j["f0_nondegenerate"] = c.f0_nondegenerate;
  j["kind_correct"] = c.kind_correct;
  j["hypothesis_2e_lt_ell_minus_1"] = c.hypothesis_2e_lt_ell_minus_1;
  j["isometries"] = c.isometries;
  j["multiplicative"] = c.multiplicative;
  return j;
}

Json descent_to_json(const GroupRep& rep, const DescentResult& r) {
  const Field& F = rep.field();
  Json j;
  j["field"] = field_to_json(F);
  j["ramification_index"] = F->ramification_index();
  j["residue_degree"] = F->residue_degree();
  j["involution_type"] = to_string(F->involution_type());
  j["residue_field"] = residue_field_to_json(F->residue_field());
  j["group_order"] = rep.order();
  j["dimension"] = rep.dim();
  j["balance"] = balance_to_json(r.balance);
  j["adapted_basis"] = to_json(r.adapted.basis);
  j["adapted_exponents"] = r.adapted.exps;
  j["block_dims"] = {r.s, rep.dim() - r.s};
  j["expected_block_kinds"] = {to_string(r.expected_bar_kind), to_string(r.expected_tilde_kind)};
  j["f0"] = residue_form_to_json(r.f0);
  Json rho = Json::array();
  for (std::size_t i = 0; i < r.rho_bar.size(); ++i) {
    Json e;
    e["element"] = i;
    e["word"] = rep.elements()[i].word;
    e["matrix"] = to_json(r.rho_bar[i]);
    rho.push_back(std::move(e));
  }
  j["rho_bar"] = std::move(rho);
  j["charpolys"] = charpoly_table_to_json(rep, r.charpolys);
  j["kernel"] = r.kernel;
  j["pairs_checked"] = r.pairs_checked;
  j["certificates"] = certificates_to_json(r.certificates);
  return j;
}

Json certificate_to_json(const NonexistenceCertificate& c) {
  Json j;
  j["tag"] = c.tag;
  j["ell"] = c.ell;
  j["search_space"] = c.search_space;
  Json counts;
  for (const auto& [k, v] : c.counts) counts[k] = v;
  j["counts"] = std::move(counts);
  Json checks;
  for (const auto& [k, v] : c.checks) checks[k] = v;
  j["checks"] = std::move(checks);
  j["verdict"] = c.verdict;
  return j;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::InternalInconsistency, "sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace ldesc
