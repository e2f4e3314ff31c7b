#include "config.hpp"

#include <CLI11.hpp>
#include <toml.hpp>

#include <set>
#include <sstream>

#include "wrtwist/errors.hpp"

namespace wrtwist::cli {

std::pair<long, long> parse_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw Error(ErrorKind::ParseError, "range must look like a..b, got '" + text + "'");
  try {
    std::size_t used = 0;
    std::string lo_text = text.substr(0, dots), hi_text = text.substr(dots + 2);
    long lo = std::stol(lo_text, &used);
    if (used != lo_text.size()) throw std::invalid_argument("trailing");
    long hi = std::stol(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument("trailing");
    if (lo > hi) throw Error(ErrorKind::ParseError, "range start exceeds end in '" + text + "'");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "range must look like a..b with integers, got '" + text + "'");
  }
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::ParseError, "prime index list must be comma separated integers, got '" + text + "'");
    }
  }
  return out;
}

namespace {

constexpr const char* kCoordsHelp =
    "Basis rows in the power basis of rho: rows separated by ';', rationals by ','. "
    "Example: \"1,0,0;0,1,0;0,0,1\" is {1, rho, rho^2}";

// Copies TOML values into cfg for every key whose flag was not given.
void apply_toml(RunConfig& cfg, const std::string& path, const std::set<std::string>& given) {
  toml::table tbl;
  try {
    tbl = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << e.description() << " at " << e.source().begin;
    throw Error(ErrorKind::ParseError, "config " + path + ": " + os.str());
  }
  auto take = [&](const char* key) { return tbl.contains(key) && !given.count(key); };
  auto str = [&](const char* key) -> std::string {
    if (auto v = tbl[key].value<std::string>()) return *v;
    if (auto v = tbl[key].value<std::int64_t>()) return std::to_string(*v);
    throw Error(ErrorKind::ParseError, std::string("config key '") + key + "' must be a string or integer");
  };
  auto integer = [&](const char* key) -> std::int64_t {
    if (auto v = tbl[key].value<std::int64_t>()) return *v;
    throw Error(ErrorKind::ParseError, std::string("config key '") + key + "' must be an integer");
  };
  auto boolean = [&](const char* key) -> bool {
    if (auto v = tbl[key].value<bool>()) return *v;
    throw Error(ErrorKind::ParseError, std::string("config key '") + key + "' must be a boolean");
  };
  auto positive = [&](const char* key) {
    auto v = integer(key);
    if (v <= 0) throw Error(ErrorKind::ParseError, std::string("config key '") + key + "' must be positive");
    return v;
  };
  if (take("json")) cfg.json = boolean("json");
  if (take("seed")) cfg.seed = static_cast<std::uint64_t>(integer("seed"));
  if (take("precision")) cfg.precision = static_cast<unsigned>(positive("precision"));
  if (take("iterations")) cfg.iterations = static_cast<std::size_t>(positive("iterations"));
  if (take("coeff_bound")) cfg.coeff_bound = static_cast<int>(positive("coeff_bound"));
  if (take("threads")) cfg.threads = static_cast<unsigned>(positive("threads"));
  if (take("t_max")) cfg.t_max = static_cast<int>(positive("t_max"));
  if (take("n_range")) cfg.n_range = parse_range(str("n_range"));
  if (take("field_conductor")) cfg.field_conductor = str("field_conductor");
  if (take("field_index")) cfg.field_index = static_cast<std::size_t>(integer("field_index"));
  if (take("case")) cfg.case_id = str("case");
  if (take("n")) cfg.n = str("n");
  if (take("family")) cfg.family = str("family");
  if (take("coords")) cfg.coords = str("coords");
  if (take("good_basis")) cfg.good_basis = boolean("good_basis");
  if (take("p0")) cfg.p0 = static_cast<int>(integer("p0"));
  if (take("I")) cfg.ideal_i = parse_index_list(str("I"));
  if (take("J")) cfg.ideal_j = parse_index_list(str("J"));
  if (take("all")) cfg.all_ideals = boolean("all");
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv) {
  CLI::App app{"Well-rounded twists of ideal lattices in real cyclic cubic fields"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string n_range, config_path, ideal_i, ideal_j, family;

  app.add_flag("--json", cfg.json, "Emit a JSON report (schema version 1)");
  app.add_option("--seed", cfg.seed, "Master seed for random unimodular searches (default 1)");
  app.add_option("--precision", cfg.precision, "Bits for printed root intervals (default 64)")->check(CLI::PositiveNumber);
  app.add_option("--iterations", cfg.iterations, "Search iterations (default 200)")->check(CLI::PositiveNumber);
  app.add_option("--coeff-bound", cfg.coeff_bound, "Bound on elementary-matrix coefficients (default 3)")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", cfg.threads, "Worker threads for search (default 1)")->check(CLI::PositiveNumber);
  app.add_option("--t-max", cfg.t_max, "Largest t tried in N(psi) | disc^t (default 4)")->check(CLI::PositiveNumber);
  app.add_option("--n-range", n_range, "Family parameter range a..b");
  app.add_option("--field-conductor", cfg.field_conductor, "Build the field from its conductor m");
  app.add_option("--field-index", cfg.field_index, "Which field of a composite conductor, ordered by b then a");
  app.add_option("--case", cfg.case_id, "Good-basis case id (shanks 1; washington 1, 2a, 2b; kishi A..F)");
  app.add_option("-n,--n", cfg.n, "Family parameter n");
  app.add_option("--family", family, "Family for field selection: shanks, washington or kishi");
  app.add_option("--coords", cfg.coords, kCoordsHelp);
  app.add_option("--config", config_path, "TOML file mirroring these flags; flags given on the command line win");

  auto* field = app.add_subcommand("field", "Build a field from its conductor and print its invariants");
  auto* fam = app.add_subcommand("family", "Build a family instance: gates, integral basis, good bases");
  fam->add_option("name", family, "shanks, washington or kishi");
  fam->add_flag("--good-basis", cfg.good_basis, "Run Algorithm 1 on the published good bases");
  auto* test = app.add_subcommand("test-basis", "Algorithm 1 on a basis given with --coords");
  auto* search = app.add_subcommand("search", "Random unimodular search for good bases");
  auto* ideal = app.add_subcommand("ideal", "Ramified ideal P_0^e P_I^2 P_J: basis and WR status");
  ideal->add_option("--I", ideal_i, "Comma separated 1-based indices of the squared primes");
  ideal->add_option("--J", ideal_j, "Comma separated 1-based indices of the simple primes");
  ideal->add_option("--p0", cfg.p0, "Exponent of the prime above 3 (3 | m only)");
  ideal->add_flag("--all", cfg.all_ideals, "Every ideal shape of the field");
  auto* ortho = app.add_subcommand("ortho", "Search for an orthogonal WR twist certificate");
  auto* verify = app.add_subcommand("verify-family", "Sweep n and compare twisted Grams with the closed forms");
  verify->add_option("name", family, "shanks, washington or kishi");
  for (auto* sub : {field, fam, test, search, ideal, ortho, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    ParseOutcome r;
    r.exit_code = code == 0 ? 0 : 2;
    r.message = out.str() + err.str();
    return r;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  std::set<std::string> given;
  auto mark = [&](const CLI::App& a, const char* flag, const char* key) {
    if (a.count(flag) > 0) given.insert(key);
  };
  mark(app, "--json", "json");
  mark(app, "--seed", "seed");
  mark(app, "--precision", "precision");
  mark(app, "--iterations", "iterations");
  mark(app, "--coeff-bound", "coeff_bound");
  mark(app, "--threads", "threads");
  mark(app, "--t-max", "t_max");
  mark(app, "--n-range", "n_range");
  mark(app, "--field-conductor", "field_conductor");
  mark(app, "--field-index", "field_index");
  mark(app, "--case", "case");
  mark(app, "-n", "n");
  mark(app, "--coords", "coords");
  if (!family.empty()) given.insert("family");
  mark(*fam, "--good-basis", "good_basis");
  mark(*ideal, "--I", "I");
  mark(*ideal, "--J", "J");
  mark(*ideal, "--p0", "p0");
  mark(*ideal, "--all", "all");

  try {
    if (!n_range.empty()) cfg.n_range = parse_range(n_range);
    if (!family.empty()) cfg.family = family;
    if (!ideal_i.empty()) cfg.ideal_i = parse_index_list(ideal_i);
    if (!ideal_j.empty()) cfg.ideal_j = parse_index_list(ideal_j);
    if (!config_path.empty()) apply_toml(cfg, config_path, given);
  } catch (const Error& e) {
    ParseOutcome r;
    r.exit_code = 2;
    r.message = std::string("error: ") + e.what() + "\n";
    return r;
  }
  return {cfg, 0, {}};
}

}  // namespace wrtwist::cli
