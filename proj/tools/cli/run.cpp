#include "run.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wrtwist/errors.hpp"

namespace wrtwist::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Integer parse_integer(const std::string& text, const char* what) {
  Integer z;
  if (text.empty() || z.set_str(text, 10) != 0) throw UsageError(std::string(what) + " must be an integer, got '" + text + "'");
  return z;
}

struct FieldSource {
  FieldPtr field;
  std::optional<FamilyInstance> instance;
  std::size_t fields_with_conductor = 0;
};

FamilyInstance family_instance(const RunConfig& cfg) {
  if (!cfg.family) throw UsageError("a family name is required (shanks, washington or kishi)");
  if (!cfg.n) throw UsageError("family parameter -n is required");
  return make_family_field(parse_family(*cfg.family), parse_integer(*cfg.n, "-n"));
}

FieldSource resolve_field(const RunConfig& cfg) {
  if (cfg.field_conductor) {
    Integer m = parse_integer(*cfg.field_conductor, "--field-conductor");
    auto all = conductor_params_all(m);
    if (cfg.field_index >= all.size())
      throw UsageError("--field-index " + std::to_string(cfg.field_index) + " out of range; conductor " + m.get_str() +
                       " has " + std::to_string(all.size()) + " field(s)");
    return {CubicField::from_conductor(all[cfg.field_index]), std::nullopt, all.size()};
  }
  if (cfg.family && cfg.n) {
    auto inst = family_instance(cfg);
    FieldPtr f = inst.field;
    return {f, std::move(inst), 0};
  }
  throw UsageError("select a field with --field-conductor <m> or --family <name> -n <n>");
}

Json args_json(const RunConfig& cfg) {
  Json j{{"seed", std::to_string(cfg.seed)}, {"precision", cfg.precision}, {"iterations", cfg.iterations},
         {"coeff_bound", cfg.coeff_bound},   {"t_max", cfg.t_max}};
  if (cfg.family) j["family"] = *cfg.family;
  if (cfg.n) j["n"] = *cfg.n;
  if (cfg.n_range) j["n_range"] = std::to_string(cfg.n_range->first) + ".." + std::to_string(cfg.n_range->second);
  if (cfg.field_conductor) {
    j["field_conductor"] = *cfg.field_conductor;
    j["field_index"] = cfg.field_index;
  }
  if (cfg.coords) j["coords"] = *cfg.coords;
  if (cfg.case_id) j["case"] = *cfg.case_id;
  if (cfg.command == "family") j["good_basis"] = cfg.good_basis;
  if (cfg.command == "ideal") {
    j["I"] = cfg.ideal_i;
    j["J"] = cfg.ideal_j;
    j["p0"] = cfg.p0;
    j["all"] = cfg.all_ideals;
  }
  return j;
}

// Index of a basis in the integral basis; 1 or -1 for a basis of O_F.
std::optional<Rational> index_in_order(const FieldPtr& F, const Basis3& b) {
  if (!F->has_integral_basis()) return std::nullopt;
  for (const auto& x : b)
    if (!F->is_integral(x)) return std::nullopt;
  return det3(coordinate_matrix(b)) / det3(coordinate_matrix(F->integral_basis()));
}

Json check_good_basis(const FamilyInstance& inst, const std::string& id, bool& mismatch) {
  auto gb = family_good_basis(inst, id);
  auto rep = test_good_basis(gb.basis);
  auto idx = index_in_order(inst.field, gb.basis);
  bool unimodular = idx && abs(*idx) == 1;
  bool gram_match = !gb.expected_gram || (rep.twisted_gram && *rep.twisted_gram == *gb.expected_gram);
  bool match = unimodular && rep.is_good && gram_match;
  if (!match) mismatch = true;
  Json j{{"case", id}, {"report", to_json(rep)}, {"unimodular", unimodular}, {"gram_match", gram_match}, {"match", match}};
  j["expected_gram"] = gb.expected_gram ? to_json(*gb.expected_gram) : Json(nullptr);
  return j;
}

CommandResult cmd_field(const RunConfig& cfg) {
  auto src = resolve_field(cfg);
  Json r = field_summary(src.field, cfg.precision);
  if (src.fields_with_conductor) r["fields_with_conductor"] = src.fields_with_conductor;
  return {r, kExitOk};
}

CommandResult cmd_family(const RunConfig& cfg) {
  auto inst = family_instance(cfg);
  Json r = to_json(inst);
  bool mismatch = false;
  if (cfg.good_basis) {
    if (!inst.integral_basis) family_integral_basis(inst);  // throws GateFailed
    std::vector<std::string> cases = cfg.case_id ? std::vector<std::string>{*cfg.case_id} : admissible_cases(inst);
    Json list = Json::array();
    for (const auto& id : cases) list.push_back(check_good_basis(inst, id, mismatch));
    r["good_bases"] = list;
  }
  return {r, mismatch ? kExitMismatch : kExitOk};
}

CommandResult cmd_test_basis(const RunConfig& cfg) {
  if (!cfg.coords) throw UsageError("test-basis needs --coords");
  auto src = resolve_field(cfg);
  Basis3 b = parse_coords(src.field, *cfg.coords);
  TwistReport rep = test_good_basis(b);
  if (rep.is_good) rep.principal_link = principal_link(rep, cfg.t_max);
  Json r{{"min_poly", src.field->poly_string()}, {"report", to_json(rep)}};
  r["oracle_wr"] = rep.twisted_gram ? Json(is_wr_lattice(*rep.twisted_gram).is_wr) : Json(nullptr);
  auto idx = index_in_order(src.field, b);
  r["index_in_order"] = idx ? to_json(*idx) : Json(nullptr);
  return {r, kExitOk};
}

CommandResult cmd_search(const RunConfig& cfg) {
  auto src = resolve_field(cfg);
  Basis3 b0 = cfg.coords ? parse_coords(src.field, *cfg.coords)
                         : (src.field->has_integral_basis()
                                ? src.field->integral_basis()
                                : throw UsageError("field has no integral basis; pass a starting basis with --coords"));
  SearchOptions opts{cfg.iterations, cfg.coeff_bound, cfg.seed, cfg.threads};
  auto found = good_basis_search(b0, opts);
  Json list = Json::array();
  for (const auto& rep : found) list.push_back(to_json(rep));
  return {Json{{"min_poly", src.field->poly_string()}, {"start_basis", to_json(b0)}, {"good_bases", list},
               {"distinct_twisted_grams", found.size()}},
          kExitOk};
}

CommandResult cmd_ideal(const RunConfig& cfg) {
  auto src = resolve_field(cfg);
  if (!src.field->conductor()) throw UsageError("ideal needs a field built with --field-conductor");
  std::vector<RamifiedSpec> specs;
  if (cfg.all_ideals) specs = all_ramified_specs(src.field);
  else specs.push_back({src.field, cfg.ideal_i, cfg.ideal_j, cfg.p0});
  Json list = Json::array();
  bool mismatch = false;
  for (const auto& s : specs) {
    auto ib = ideal_basis(s);
    auto gram = ideal_gram(ib);
    auto wr = is_wr_lattice(gram);
    auto status = ideal_wr_status(s);
    bool cov = covolume_ok(ib);
    bool agree = wr.is_wr == status.is_wr;
    if (!agree || !cov) mismatch = true;
    list.push_back({{"I", s.I},
                    {"J", s.J},
                    {"p0_exponent", s.p0_exponent},
                    {"norm", ideal_norm(s).get_str()},
                    {"basis", to_json(ib)},
                    {"gram", to_json(gram)},
                    {"first_minimum", to_json(wr.first_minimum)},
                    {"covolume_ok", cov},
                    {"claimed_wr", status.is_wr},
                    {"reason", to_string(status.reason)},
                    {"enumerated_wr", wr.is_wr},
                    {"agree", agree}});
  }
  return {Json{{"min_poly", src.field->poly_string()}, {"ideals", list}}, mismatch ? kExitMismatch : kExitOk};
}

CommandResult cmd_ortho(const RunConfig& cfg) {
  auto src = resolve_field(cfg);
  auto res = orthogonal_twist(src.field);
  return {Json{{"min_poly", src.field->poly_string()}, {"ortho", to_json(res)}}, kExitOk};
}

CommandResult cmd_verify_family(const RunConfig& cfg) {
  if (!cfg.family) throw UsageError("verify-family needs a family name");
  Family fam = parse_family(*cfg.family);
  std::pair<long, long> range;
  if (cfg.n_range) range = *cfg.n_range;
  else if (cfg.n) {
    long n = parse_integer(*cfg.n, "-n").get_si();
    range = {n, n};
  } else {
    throw UsageError("verify-family needs --n-range a..b or -n");
  }
  if (cfg.case_id) {
    auto all = family_cases(fam);
    if (std::find(all.begin(), all.end(), *cfg.case_id) == all.end())
      throw UsageError("unknown case '" + *cfg.case_id + "' for family " + to_string(fam));
  }
  Json list = Json::array();
  std::size_t checked = 0, matched = 0, skipped = 0;
  bool mismatch = false;
  for (long n = range.first; n <= range.second; ++n) {
    Json entry{{"n", std::to_string(n)}};
    std::optional<FamilyInstance> inst;
    try {
      inst = make_family_field(fam, Integer(n));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ReduciblePolynomial && e.kind() != ErrorKind::InvalidSpec) throw;
      entry["status"] = "skipped";
      entry["reason"] = e.what();
      ++skipped;
      list.push_back(entry);
      continue;
    }
    entry["conditions"] = to_json(inst->conditions_met);
    if (!inst->integral_basis) {
      entry["status"] = "skipped";
      entry["reason"] = "gate not met";
      ++skipped;
      list.push_back(entry);
      continue;
    }
    std::vector<std::string> cases = admissible_cases(*inst);
    if (cfg.case_id) {
      bool ok = std::find(cases.begin(), cases.end(), *cfg.case_id) != cases.end();
      cases = ok ? std::vector<std::string>{*cfg.case_id} : std::vector<std::string>{};
    }
    if (cases.empty()) {
      entry["status"] = "skipped";
      entry["reason"] = "no admissible case";
      ++skipped;
      list.push_back(entry);
      continue;
    }
    Json results = Json::array();
    bool local = false;
    for (const auto& id : cases) {
      bool bad = false;
      results.push_back(check_good_basis(*inst, id, bad));
      ++checked;
      if (bad) local = true;
      else ++matched;
    }
    if (local) mismatch = true;
    entry["status"] = local ? "mismatch" : "match";
    entry["cases"] = results;
    list.push_back(entry);
  }
  Json r{{"family", to_string(fam)},
         {"instances", list},
         {"checked", checked},
         {"matched", matched},
         {"mismatched", checked - matched},
         {"skipped", skipped}};
  return {r, mismatch ? kExitMismatch : kExitOk};
}

// ---------------------------------------------------------------- human output

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

void print_gram(std::ostream& os, const Json& g, const std::string& indent) {
  if (g.is_null()) {
    os << indent << "(no twisted Gram)\n";
    return;
  }
  std::string m[3][3] = {{g["s11"], g["u"], g["v"]}, {g["u"], g["s22"], g["w"]}, {g["v"], g["w"], g["s33"]}};
  std::size_t w = 0;
  for (auto& row : m)
    for (auto& x : row) w = std::max(w, x.size());
  for (auto& row : m) os << indent << "[ " << pad(row[0], w) << "  " << pad(row[1], w) << "  " << pad(row[2], w) << " ]\n";
}

void print_report(std::ostream& os, const Json& r, const std::string& indent) {
  os << indent << "basis:";
  for (const auto& b : r["basis"]) os << "  {" << b["text"].get<std::string>() << "}";
  os << "\n" << indent << "alpha0 = " << r["alpha0"]["text"].get<std::string>() << "\n";
  os << indent << "e1 = " << r["e1"].get<std::string>() << ", e2 = " << r["e2"].get<std::string>()
     << ", e3 = " << r["e3"].get<std::string>() << ", sign_ok = " << r["sign_ok"] << "\n";
  print_gram(os, r["twisted_gram"], indent + "  ");
  if (!r["wr_slack"].is_null()) {
    os << indent << "slack s/2-|u|,|v|,|w|:";
    for (const auto& x : r["wr_slack"]["half_bound"]) os << " " << x.get<std::string>();
    os << "   s-sums:";
    for (const auto& x : r["wr_slack"]["sum_bound"]) os << " " << x.get<std::string>();
    os << "\n";
  }
  os << indent << "good basis: " << (r["is_good"].get<bool>() ? "yes" : "no") << "\n";
  if (!r["principal_link"].is_null()) {
    const auto& p = r["principal_link"];
    os << indent << "principal link: psi = " << p["psi"]["text"].get<std::string>() << ", N(psi) = "
       << p["norm_psi"].get<std::string>() << ", t = " << p["t"] << ", verified = " << p["verified"]
       << ", |u|=|v|=|w| = " << p["equal_abs_offdiagonal"] << "\n";
  }
}

void print_human(std::ostream& os, const std::string& command, const Json& r) {
  if (command == "field") {
    if (!r["conductor"].is_null())
      os << "conductor m = " << r["conductor"]["m"].get<std::string>() << "  (a, b) = (" << r["conductor"]["a"].get<std::string>()
         << ", " << r["conductor"]["b"].get<std::string>() << ")\n";
    os << "min_poly: " << r["min_poly"].get<std::string>() << "\n";
    os << "disc(min_poly) = " << r["poly_discriminant"].get<std::string>() << "\n";
    if (!r["discriminant"].is_null()) os << "field discriminant = " << r["discriminant"].get<std::string>() << "\n";
    os << "sigma on {1, r, r^2} (columns):\n";
    for (int i = 0; i < 3; ++i) {
      os << "  ";
      for (int j = 0; j < 3; ++j) os << pad(r["galois"][i][j].get<std::string>(), 8);
      os << "\n";
    }
    if (!r["integral_basis"].is_null()) {
      os << "integral basis:";
      for (const auto& b : r["integral_basis"]) os << "  {" << b["text"].get<std::string>() << "}";
      os << "\n";
    }
    os << "roots:\n";
    for (const auto& x : r["roots"]) os << "  [" << x["lo"].get<std::string>() << ", " << x["hi"].get<std::string>() << "]\n";
    return;
  }
  if (command == "family") {
    os << r["family"].get<std::string>() << " n = " << r["n"].get<std::string>() << ": " << r["min_poly"].get<std::string>() << "\n";
    os << "gates:";
    for (const auto& [k, v] : r["conditions"].items()) os << "  " << k << "=" << v.get<std::string>();
    os << "\nbasis case: " << r["basis_case"].get<std::string>() << "\n";
    if (!r["integral_basis"].is_null()) {
      os << "integral basis:";
      for (const auto& b : r["integral_basis"]) os << "  {" << b["text"].get<std::string>() << "}";
      os << "\n";
    }
    if (r.contains("good_bases"))
      for (const auto& g : r["good_bases"]) {
        os << "case " << g["case"].get<std::string>() << ": " << (g["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
        print_report(os, g["report"], "  ");
        if (!g["expected_gram"].is_null()) {
          os << "  expected:\n";
          print_gram(os, g["expected_gram"], "    ");
        }
      }
    return;
  }
  if (command == "test-basis") {
    os << "min_poly: " << r["min_poly"].get<std::string>() << "\n";
    print_report(os, r["report"], "");
    if (!r["oracle_wr"].is_null()) os << "enumeration says twisted lattice WR: " << r["oracle_wr"] << "\n";
    return;
  }
  if (command == "search") {
    os << "min_poly: " << r["min_poly"].get<std::string>() << "\n";
    os << r["distinct_twisted_grams"] << " distinct twisted Gram(s) from good bases\n";
    for (const auto& rep : r["good_bases"]) print_report(os, rep, "  ");
    return;
  }
  if (command == "ideal") {
    os << "min_poly: " << r["min_poly"].get<std::string>() << "\n";
    for (const auto& x : r["ideals"]) {
      os << "I=" << x["I"].dump() << " J=" << x["J"].dump() << " p0^" << x["p0_exponent"] << "  N=" << x["norm"].get<std::string>()
         << "  " << x["basis"]["construction"].get<std::string>() << "  WR claimed=" << x["claimed_wr"]
         << " enumerated=" << x["enumerated_wr"] << " covolume_ok=" << x["covolume_ok"] << "\n";
      print_gram(os, x["gram"], "    ");
    }
    return;
  }
  if (command == "ortho") {
    const auto& o = r["ortho"];
    os << "min_poly: " << r["min_poly"].get<std::string>() << "\n";
    os << "status: " << o["status"].get<std::string>() << " after " << o["candidates_tried"] << " candidate(s)\n";
    if (!o["certificate"].is_null()) {
      const auto& c = o["certificate"];
      os << "delta = " << c["delta"]["text"].get<std::string>() << "  (" << c["delta_source"].get<std::string>() << ")\n";
      os << "Tr(delta^-1 w_i w_j), det " << c["unimodular_det"].get<std::string>() << ":\n";
      print_gram(os, c["unimodular_gram"], "  ");
      os << "frame Gram:\n";
      print_gram(os, c["frame_gram"], "  ");
    }
    return;
  }
  if (command == "verify-family") {
    for (const auto& e : r["instances"]) {
      os << r["family"].get<std::string>() << " n=" << pad(e["n"].get<std::string>(), 4) << "  " << e["status"].get<std::string>();
      if (e.contains("reason")) os << " (" << e["reason"].get<std::string>() << ")";
      if (e.contains("cases"))
        for (const auto& c : e["cases"]) os << "  " << c["case"].get<std::string>() << ":" << (c["match"].get<bool>() ? "ok" : "FAIL");
      os << "\n";
    }
    os << r["checked"] << " checked, " << r["matched"] << " matched, " << r["mismatched"] << " mismatched, " << r["skipped"]
       << " skipped\n";
  }
}

}  // namespace

Basis3 parse_coords(const FieldPtr& field, const std::string& text) {
  std::vector<Vec3> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Rational> vals;
    std::stringstream cs(row);
    std::string cell;
    while (std::getline(cs, cell, ',')) {
      try {
        vals.push_back(parse_rational(cell));
      } catch (const Error&) {
        throw UsageError("--coords entry '" + cell + "' is not a rational number");
      }
    }
    if (vals.size() != 3) throw UsageError("--coords rows need exactly 3 entries, got '" + row + "'");
    rows.push_back({vals[0], vals[1], vals[2]});
  }
  if (rows.size() != 3) throw UsageError("--coords needs exactly 3 rows separated by ';'");
  return {field->element(rows[0]), field->element(rows[1]), field->element(rows[2])};
}

CommandResult run_command(const RunConfig& cfg) {
  CommandResult res;
  if (cfg.command == "field") res = cmd_field(cfg);
  else if (cfg.command == "family") res = cmd_family(cfg);
  else if (cfg.command == "test-basis") res = cmd_test_basis(cfg);
  else if (cfg.command == "search") res = cmd_search(cfg);
  else if (cfg.command == "ideal") res = cmd_ideal(cfg);
  else if (cfg.command == "ortho") res = cmd_ortho(cfg);
  else if (cfg.command == "verify-family") res = cmd_verify_family(cfg);
  else throw UsageError("unknown command '" + cfg.command + "'");
  res.report = envelope(cfg.command, args_json(cfg), std::move(res.report));
  return res;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    auto res = run_command(cfg);
    if (cfg.json) out << serialize_report(res.report);
    else print_human(out, cfg.command, res.report["results"]);
    return res.exit_code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace wrtwist::cli
