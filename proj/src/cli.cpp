#include "ldesc/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ldesc/serialize.hpp"

namespace ldesc {

namespace {

struct CommonFlags {
  std::string out_path;
  std::optional<std::size_t> max_group_order;
  std::optional<int> precision_start;
  std::optional<std::size_t> enum_cap;
  bool no_timing = false;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--out", f.out_path, "write the report here instead of stdout");
  cmd->add_option("--max-group-order", f.max_group_order, "abort enumeration past this many elements (default 100000)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--precision-start", f.precision_start, "initial adic precision (default 32)")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("--enum-cap", f.enum_cap, "largest exhaustive search allowed (default 1000000)")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--no-timing", f.no_timing, "omit the timing block");
  cmd->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedBundle {
  std::string digest;
  Bundle bundle;
};

Bundle parse_with_overrides(const std::string& text, const CommonFlags& f) {
  if (!f.max_group_order && !f.precision_start && !f.enum_cap) return bundle_from_text(text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    return bundle_from_text(text);  // rethrows with a position
  }
  if (j.is_object()) {
    Json& o = j["options"];
    if (o.is_null()) o = Json::object();
    if (o.is_object()) {
      if (f.max_group_order) o["max_group_order"] = *f.max_group_order;
      if (f.precision_start) o["precision_start"] = *f.precision_start;
      if (f.enum_cap) {
        o.erase("enum_cap");
        o["enumeration_cap"] = *f.enum_cap;
      }
    }
  }
  return bundle_from_json(j);
}

// Flags given on the command line override the bundle's own options.
LoadedBundle load_bundle(const std::string& path, const CommonFlags& f) {
  const std::string text = read_file(path);
  return LoadedBundle{sha256_hex(text), parse_with_overrides(text, f)};
}

void emit(const CommonFlags& f, const std::string& body, std::ostream& out) {
  if (f.out_path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(f.out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Parse, "cannot write '" + f.out_path + "'");
  file << body;
}

Json report(const std::string& command, const std::optional<std::string>& digest, Json result) {
  Json r;
  r["schema"] = 1;
  r["tool"] = kToolName;
  r["version"] = kToolVersion;
  r["command"] = command;
  r["input_digest"] = digest ? Json(*digest) : Json(nullptr);
  r["result"] = std::move(result);
  return r;
}

std::string text_report(const Json& r) {
  std::ostringstream s;
  s << r["tool"].get<std::string>() << " " << r["version"].get<std::string>() << " " << r["command"].get<std::string>()
    << "\n";
  if (!r["input_digest"].is_null()) s << "input sha256: " << r["input_digest"].get<std::string>() << "\n";
  const Json& res = r["result"];
  const std::string cmd = r["command"];
  if (cmd == "descend") {
    s << "group order: " << res["group_order"] << ", dimension " << res["dimension"] << "\n";
    s << "e = " << res["ramification_index"] << ", f = " << res["residue_degree"]
      << ", involution: " << res["involution_type"].get<std::string>() << "\n";
    s << "scale m = " << res["balance"]["scale_m"] << ", chain length " << res["balance"]["chain_length"]
      << " (bound " << res["balance"]["length_bound"] << ")\n";
    s << "f0: " << res["f0"]["kind"].get<std::string>() << ", blocks " << res["f0"]["block_dims"][0] << " + "
      << res["f0"]["block_dims"][1] << "\n";
    s << "kernel size: " << res["kernel"].size() << "\n";
    for (const auto& [k, v] : res["certificates"].items()) s << "  " << k << ": " << (v.get<bool>() ? "true" : "false") << "\n";
  } else if (cmd == "charpoly") {
    s << "group order: " << res["group_order"] << "\n";
    for (const auto& row : res["table"])
      s << "  " << row["element"] << " word " << row["word"].dump() << "  K: " << row["over_K"].dump()
        << "  k: " << row["reduced"].dump() << "\n";
  } else if (cmd == "balance") {
    s << "scale m = " << res["scale_m"] << ", chain length " << res["chain_length"] << " (bound "
      << res["length_bound"] << ")\n";
    s << "balanced lattice: " << res["balanced_lattice"].dump() << "\n";
  } else if (cmd == "verify") {
    s << "tag " << res["tag"].get<std::string>() << ", ell = " << res["ell"] << "\n";
    s << "search space: " << res["search_space"].get<std::string>() << "\n";
    for (const auto& [k, v] : res["counts"].items()) s << "  " << k << " = " << v << "\n";
    for (const auto& [k, v] : res["checks"].items()) s << "  " << k << ": " << (v.get<bool>() ? "true" : "false") << "\n";
    s << "verdict: " << (res["verdict"].get<bool>() ? "true" : "false") << "\n";
  } else {
    s << res.dump(2) << "\n";
  }
  if (r.contains("timing")) s << "time: " << r["timing"]["wall_seconds"] << " s\n";
  return s.str();
}

void finish(const CommonFlags& f, Json r, std::chrono::steady_clock::time_point t0, std::ostream& out) {
  if (!f.no_timing) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r["timing"] = {{"wall_seconds", secs}};
  }
  emit(f, f.format == "text" ? text_report(r) : r.dump(2) + "\n", out);
}

Lattice start_lattice(const Bundle& b, const GroupRep& rep) {
  if (b.lattice) return Lattice(rep.field(), *b.lattice);
  return stabilize(Lattice::standard(rep.field(), rep.dim()), rep.matrices());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reduction of finite groups preserving forms over cyclotomic fields", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonFlags flags;
  std::string bundle_path;

  auto* descend_cmd = app.add_subcommand("descend", "balance a G-stable lattice and reduce the representation");
  descend_cmd->add_option("bundle", bundle_path, "bundle JSON file")->required();
  add_common(descend_cmd, flags);

  auto* charpoly_cmd = app.add_subcommand("charpoly", "characteristic polynomials over K and their reductions");
  charpoly_cmd->add_option("bundle", bundle_path, "bundle JSON file")->required();
  add_common(charpoly_cmd, flags);

  auto* balance_cmd = app.add_subcommand("balance", "run the lattice chain only");
  balance_cmd->add_option("bundle", bundle_path, "bundle JSON file")->required();
  add_common(balance_cmd, flags);

  std::string tag;
  std::int64_t ell = 0;
  auto* verify_cmd = app.add_subcommand("verify", "finite nonexistence certificates");
  verify_cmd->add_option("tag", tag, "lemma, prop5 or prop6")->required()->check(CLI::IsMember({"lemma", "prop5", "prop6"}));
  verify_cmd->add_option("--ell", ell, "odd prime")->required();
  add_common(verify_cmd, flags);

  std::string name;
  bool odd_scale = false;
  int prime_choice = 0;
  auto* export_cmd = app.add_subcommand("export-bundle", "write one of the built-in bundles as JSON");
  export_cmd->add_option("name", name, "q8, z4, ramified, prop5 or prop6")
      ->required()
      ->check(CLI::IsMember({"q8", "z4", "ramified", "prop5", "prop6"}));
  export_cmd->add_option("--ell", ell, "prime")->required();
  export_cmd->add_flag("--odd-scale", odd_scale, "ramified bundle needing an odd rescaling");
  export_cmd->add_option("--prime-choice", prime_choice, "prime above ell for q8");
  export_cmd->add_option("--out", flags.out_path, "write here instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*descend_cmd) {
      auto lb = load_bundle(bundle_path, flags);
      const GroupRep rep = make_group(lb.bundle);
      DescentOptions opts;
      opts.start = start_lattice(lb.bundle, rep);
      const DescentResult r = descend(rep, opts);
      finish(flags, report("descend", lb.digest, descent_to_json(rep, r)), t0, out);
      return r.certificates.all() ? 0 : 2;
    }
    if (*charpoly_cmd) {
      auto lb = load_bundle(bundle_path, flags);
      const GroupRep rep = make_group(lb.bundle);
      Json res;
      res["field"] = field_to_json(rep.field());
      res["group_order"] = rep.order();
      res["dimension"] = rep.dim();
      res["residue_field"] = residue_field_to_json(rep.field()->residue_field());
      res["table"] = charpoly_table_to_json(rep, charpoly_table(rep));
      finish(flags, report("charpoly", lb.digest, std::move(res)), t0, out);
      return 0;
    }
    if (*balance_cmd) {
      auto lb = load_bundle(bundle_path, flags);
      const GroupRep rep = make_group(lb.bundle);
      const BalanceResult r = balance(start_lattice(lb.bundle, rep), rep.form(), rep.generators());
      finish(flags, report("balance", lb.digest, balance_to_json(r)), t0, out);
      return 0;
    }
    if (*verify_cmd) {
      const NonexistenceCertificate c = [&] {
        if (tag == "lemma") return no_invariant_symmetric_form(ell);
        if (tag == "prop5") return verify_prop5(ell);
        return verify_prop6(ell, flags.enum_cap.value_or(kDefaultEnumerationCap));
      }();
      finish(flags, report("verify", std::nullopt, certificate_to_json(c)), t0, out);
      return c.verdict ? 0 : 2;
    }
    if (*export_cmd) {
      const Bundle b = [&] {
        if (name == "q8") return q8_bundle(ell, prime_choice);
        if (name == "z4") return z4_hermitian_bundle(ell);
        if (name == "ramified") return ramified_hermitian_bundle(ell, odd_scale);
        if (name == "prop5") return prop5_bundle(ell);
        return prop6_bundle(ell);
      }();
      emit(flags, bundle_to_json(b).dump(2) + "\n", out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace ldesc
