#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cuspk/cyclicbar.hpp"
#include "cuspk/errors.hpp"
#include "cuspk/kgroups.hpp"
#include "cuspk/semigroup.hpp"
#include "cuspk/witt/structure_table.hpp"

namespace cuspk::cli {
namespace {

using json = nlohmann::json;
using algebra::AbelianGroupStructure;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
std::string dec(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

json group_json(const AbelianGroupStructure& g) {
  json factors = json::array();
  for (const auto& d : g.invariant_factors()) factors.push_back(d.get_str());
  return {{"free_rank", dec(g.free_rank())}, {"invariant_factors", std::move(factors)}};
}

json graded_json(const bar::GradedGroups& groups) {
  json out = json::object();
  for (const auto& [degree, g] : groups) out[dec(degree)] = group_json(g);
  return out;
}

std::string graded_label(const bar::GradedGroups& groups) {
  if (groups.empty()) return "0";
  std::string s;
  for (const auto& [degree, g] : groups) {
    if (!s.empty()) s += ", ";
    s += "H_" + dec(degree) + "=" + g.to_string();
  }
  return s;
}

json pair_json(const CuspPair& pair) {
  return {{"a", dec(pair.a)},
          {"b", dec(pair.b)},
          {"p", dec(pair.p)},
          {"e", dec(pair.e)},
          {"u", dec(pair.u)},
          {"a_prime", dec(pair.a_prime)},
          {"swapped", pair.swapped}};
}

std::string field_label(const CuspPair& pair) { return "F_" + dec(pair.q()); }

std::string curve_label(const CuspPair& pair) {
  return field_label(pair) + "[x,y]/(y^" + dec(pair.a) + " - x^" + dec(pair.b) + ")";
}

// Everything a command produces; run() picks the encoding.
struct Report {
  json inputs = json::object();
  json result = json::object();
  json checks = json::object();
  std::ostringstream text;
  int code = kExitOk;
};

RouteSelection parse_routes(const std::string& spec) {
  if (spec == "all") return {};
  RouteSelection sel{false, false};
  std::stringstream in(spec);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == kRouteClosedForm) continue;  // always run
    if (name == kRouteWittQuotient)
      sel.witt_quotient = true;
    else if (name == kRouteTc)
      sel.tc = true;
    else
      throw UsageError("unknown route '" + name + "' (expected closed_form, witt_quotient, tc or all)");
  }
  return sel;
}

std::unique_ptr<witt::StructureTableCache> make_cache(const RunConfig& cfg) {
  std::filesystem::path dir = cfg.cache_dir ? std::filesystem::path(*cfg.cache_dir) : witt::default_cache_directory();
  return std::make_unique<witt::StructureTableCache>(dir, cfg.table_cap ? cfg.table_cap : witt::kDefaultTableCap);
}

KGroupOptions make_options(const RunConfig& cfg, witt::StructureTableCache* cache) {
  KGroupOptions options;
  if (cfg.witt_cap) options.witt_cap = cfg.witt_cap;
  if (cfg.table_cap) options.table_cap = cfg.table_cap;
  options.cache = cache;
  options.corrupt_h_offset = cfg.corrupt_h;
  return options;
}

unsigned resolve_r(const RunConfig& cfg, bool required) {
  long r = 0;
  if (cfg.r && cfg.j && 2 * *cfg.r != *cfg.j) throw UsageError("--r and --j disagree (j must be 2r)");
  if (cfg.r)
    r = *cfg.r;
  else if (cfg.j) {
    if (*cfg.j < 0 || *cfg.j % 2 != 0) throw UsageError("--j must be even and nonnegative here");
    r = *cfg.j / 2;
  } else if (required) {
    throw UsageError("one of --r or --j is required");
  }
  if (r < 0) throw UsageError("--r must be nonnegative");
  if (r > static_cast<long>(kMaxTruncation)) throw UsageError("--r must be at most " + dec(kMaxTruncation));
  return static_cast<unsigned>(r);
}

void cmd_kgroup(const RunConfig& cfg, Report& rep) {
  if (!cfg.j && !cfg.r) throw UsageError("one of --j or --r is required");
  if (cfg.r && *cfg.r < 0) throw UsageError("--r must be nonnegative");
  if (cfg.r && cfg.j && 2 * *cfg.r != *cfg.j) throw UsageError("--r and --j disagree (j must be 2r)");
  const long j = cfg.j ? *cfg.j : 2 * *cfg.r;
  const auto routes = parse_routes(cfg.routes);
  rep.inputs = {{"a", dec(cfg.a)}, {"b", dec(cfg.b)}, {"p", dec(cfg.p)}, {"e", dec(cfg.e)},
                {"j", dec(j)},     {"routes", cfg.routes}};

  const CuspPair pair = normalize_orientation(cfg.a, cfg.b, cfg.p, cfg.e);
  auto cache = make_cache(cfg);
  const KGroupResult res = k_group(pair, j, routes, make_options(cfg, cache.get()));

  json route_groups = json::object();
  for (const auto& [name, g] : res.routes) route_groups[name] = group_json(g);
  json skipped = json::object();
  for (const auto& [name, why] : res.skipped) skipped[name] = why;
  rep.result = {{"pair", pair_json(pair)},
                {"j", dec(j)},
                {"group", group_json(res.group)},
                {"group_label", res.group.to_string()},
                {"routes", std::move(route_groups)},
                {"skipped", std::move(skipped)},
                {"agree", res.agree},
                {"length", dec(res.length)},
                {"expected_length", dec(res.expected_length)}};
  rep.checks = {{"agree", res.agree}, {"length_ok", res.length_ok}};
  if (!res.agree || !res.length_ok) rep.code = kExitDisagree;

  auto& t = rep.text;
  t << "K_" << j << "(" << curve_label(pair) << ", (x,y)) = " << res.group.to_string() << '\n';
  if (pair.swapped) t << "  (oriented as a=" << pair.a << ", b=" << pair.b << " so that p does not divide b)\n";
  for (const auto& [name, g] : res.routes) t << "  " << std::left << std::setw(15) << name << g.to_string() << '\n';
  for (const auto& [name, why] : res.skipped)
    t << "  " << std::left << std::setw(15) << name << "skipped: " << why << '\n';
  if (j >= 0 && j % 2 == 0)
    t << "  " << std::setw(15) << "length" << res.length << " (expected " << res.expected_length << ")\n";
  t << "  " << std::setw(15) << "agree" << (res.agree ? "yes" : "NO") << '\n';
}

void cmd_bar(const RunConfig& cfg, Report& rep) {
  const long p = cfg.p ? cfg.p : 2;
  const unsigned cap = cfg.bar_cap ? cfg.bar_cap : bar::kDefaultBarCap;
  rep.inputs = {{"a", dec(cfg.a)}, {"b", dec(cfg.b)}, {"bar_cap", dec(cap)}};
  const CuspPair pair = normalize_orientation(cfg.a, cfg.b, p, 1);

  std::vector<bar::HomologyReport> reports;
  if (cfg.m) {
    if (*cfg.m < 1) throw UsageError("--m must be positive");
    if (*cfg.m > static_cast<long>(cap)) throw ResourceError("--m " + dec(*cfg.m) + " exceeds the bar cap " + dec(cap));
    rep.inputs["m"] = dec(*cfg.m);
    const auto m = static_cast<unsigned>(*cfg.m);
    const auto complex = bar::relative_complex(pair, m, cap);
    bar::HomologyReport one;
    one.m = m;
    one.groups = bar::homology(complex);
    one.predicted = bar::predicted_homology(pair, m);
    one.agree = bar::same_homology(one.groups, one.predicted);
    one.basis_size = complex.total_dimension();
    reports.push_back(std::move(one));
  } else {
    if (cfg.m_max < 1) throw UsageError("--m-max must be positive");
    if (cfg.m_max > static_cast<long>(cap))
      throw ResourceError("--m-max " + dec(cfg.m_max) + " exceeds the bar cap " + dec(cap));
    rep.inputs["m_max"] = dec(cfg.m_max);
    reports = bar::verify_bar(pair, static_cast<unsigned>(cfg.m_max), cap, cfg.jobs);
  }

  std::size_t agreeing = 0;
  json weights = json::array();
  for (const auto& r : reports) {
    agreeing += r.agree;
    weights.push_back({{"m", dec(r.m)},
                       {"basis_size", dec(r.basis_size)},
                       {"homology", graded_json(r.groups)},
                       {"predicted", graded_json(r.predicted)},
                       {"agree", r.agree}});
    rep.text << "m=" << std::left << std::setw(4) << r.m << "basis " << std::setw(8) << r.basis_size << "H: "
             << std::setw(24) << graded_label(r.groups) << "predicted: " << std::setw(24) << graded_label(r.predicted)
             << (r.agree ? "agree" : "DISAGREE") << '\n';
  }
  const bool all = agreeing == reports.size();
  rep.result = {{"pair", pair_json(pair)}, {"weights", std::move(weights)}};
  rep.checks = {{"agree", all}, {"agreeing", dec(agreeing)}, {"weights", dec(reports.size())}};
  if (!all) rep.code = kExitDisagree;
}

void cmd_profile(const RunConfig& cfg, Report& rep) {
  const unsigned r = resolve_r(cfg, true);
  rep.inputs = {{"a", dec(cfg.a)}, {"b", dec(cfg.b)}, {"p", dec(cfg.p)}, {"r", dec(r)}};
  const CuspPair pair = normalize_orientation(cfg.a, cfg.b, cfg.p, cfg.e);
  const auto set = truncation_set(pair, r);
  const auto profile = p_typical_profile(pair, r);
  const auto expected = sylvester_length(pair, r);

  json entries = json::array();
  rep.text << "p-typical profile of (a=" << pair.a << ", b=" << pair.b << ", p=" << pair.p << "), r=" << r << '\n';
  rep.text << "  S = " << set.to_string() << '\n';
  for (const auto& [m_prime, h] : profile.entries) {
    const unsigned s = s_exponent(pair, r, m_prime);
    entries.push_back({{"m_prime", dec(m_prime)}, {"s", dec(s)}, {"h", dec(h)}});
    rep.text << "  m'=" << std::left << std::setw(6) << m_prime << "s=" << std::setw(4) << s << "h=" << h << '\n';
  }
  json members = json::array();
  for (auto m : set.members()) members.push_back(dec(m));
  rep.result = {{"pair", pair_json(pair)},
                {"truncation_set", std::move(members)},
                {"entries", std::move(entries)},
                {"total_length", dec(profile.total_length)},
                {"sylvester_length", dec(expected)}};
  const bool ok = profile.total_length == expected;
  rep.checks = {{"total_matches_sylvester", ok}};
  rep.text << "  total " << profile.total_length << " (sylvester length " << expected << ")\n";
  if (!ok) rep.code = kExitDisagree;
}

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& x : items) s += (s.empty() ? "" : ",") + x;
  return s.empty() ? "-" : s;
}

void cmd_verify(const RunConfig& cfg, Report& rep) {
  std::vector<GridPoint> grid;
  if (cfg.a || cfg.b) {
    const CuspPair pair = normalize_orientation(cfg.a, cfg.b, cfg.p, cfg.e);
    grid.push_back({pair.a, pair.b, pair.p, pair.e, resolve_r(cfg, false)});
    rep.inputs = {{"point", grid.front().to_string()}};
  } else if (cfg.grid == "default") {
    grid = default_grid();
    rep.inputs = {{"grid", cfg.grid}};
  } else if (cfg.grid == "quick") {
    grid = quick_grid();
    rep.inputs = {{"grid", cfg.grid}};
  } else {
    throw UsageError("unknown grid '" + cfg.grid + "' (expected default or quick)");
  }
  rep.inputs["routes"] = cfg.routes;
  rep.inputs["with_bar"] = cfg.with_bar;
  const auto routes = parse_routes(cfg.routes);
  const unsigned cap = cfg.bar_cap ? cfg.bar_cap : bar::kDefaultBarCap;
  if (cfg.with_bar) {
    if (cfg.bar_m_max < 1) throw UsageError("--bar-m-max must be positive");
    if (cfg.bar_m_max > static_cast<long>(cap))
      throw ResourceError("--bar-m-max " + dec(cfg.bar_m_max) + " exceeds the bar cap " + dec(cap));
    rep.inputs["bar_m_max"] = dec(cfg.bar_m_max);
  }

  auto cache = make_cache(cfg);
  const GridReport report = verify_grid(grid, routes, make_options(cfg, cache.get()), cfg.jobs);

  auto& t = rep.text;
  json points = json::array();
  t << std::left << std::setw(30) << "point" << std::setw(30) << "routes" << "agree length result group\n";
  for (const auto& pt : report.points) {
    const auto& g = pt.point;
    points.push_back({{"a", dec(g.a)},
                      {"b", dec(g.b)},
                      {"p", dec(g.p)},
                      {"e", dec(g.e)},
                      {"r", dec(g.r)},
                      {"routes_run", pt.routes_run},
                      {"routes_skipped", pt.routes_skipped},
                      {"group_label", pt.group},
                      {"routes_agree", pt.routes_agree},
                      {"length_ok", pt.length_ok},
                      {"pass", pt.pass},
                      {"error", pt.error}});
    t << std::setw(30) << g.to_string() << std::setw(30) << join(pt.routes_run) << std::setw(6)
      << (pt.routes_agree ? "yes" : "NO") << std::setw(7) << (pt.length_ok ? "yes" : "NO") << std::setw(7)
      << (pt.pass ? "PASS" : "FAIL") << (pt.group.empty() ? "-" : pt.group);
    if (!pt.error.empty()) t << "  " << pt.error;
    t << '\n';
  }
  t << report.points.size() << " points, " << report.failures << " failures\n";
  rep.result = {{"points", std::move(points)}, {"failures", dec(report.failures)}};
  rep.checks = {{"grid", report.pass()}};
  bool ok = report.pass();

  if (cfg.with_bar) {
    json bars = json::array();
    bool bar_ok = true;
    for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
      const CuspPair pair = normalize_orientation(a, b, 2, 1);
      const auto reports = bar::verify_bar(pair, static_cast<unsigned>(cfg.bar_m_max), cap, cfg.jobs);
      std::size_t agreeing = 0;
      for (const auto& r : reports) agreeing += r.agree;
      const bool pass = agreeing == reports.size();
      bar_ok = bar_ok && pass;
      bars.push_back({{"a", dec(a)},
                      {"b", dec(b)},
                      {"m_max", dec(cfg.bar_m_max)},
                      {"agreeing", dec(agreeing)},
                      {"pass", pass}});
      t << "bar (" << a << "," << b << ") m<=" << cfg.bar_m_max << ": " << agreeing << "/" << reports.size()
        << " weights agree\n";
    }
    rep.result["bar"] = std::move(bars);
    rep.checks["bar"] = bar_ok;
    ok = ok && bar_ok;
  }
  t << "verify: " << (ok ? "PASS" : "FAIL") << '\n';
  if (!ok) rep.code = kExitDisagree;
}

witt::TruncationSet parse_set(const std::string& spec) {
  std::vector<std::uint32_t> members;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value < 1 || value > 1'000'000) throw UsageError("bad member '" + item + "' in --set");
    members.push_back(static_cast<std::uint32_t>(value));
  }
  if (members.empty()) throw UsageError("--set is empty");
  return witt::TruncationSet(std::move(members));
}

void cmd_witt_table(const RunConfig& cfg, Report& rep) {
  witt::TruncationSet set;
  if (cfg.set) {
    set = parse_set(*cfg.set);
    rep.inputs = {{"set", *cfg.set}};
  } else {
    const unsigned r = resolve_r(cfg, true);
    const CuspPair pair = normalize_orientation(cfg.a, cfg.b, cfg.p ? cfg.p : 2, 1);
    set = truncation_set(pair, r);
    rep.inputs = {{"a", dec(cfg.a)}, {"b", dec(cfg.b)}, {"r", dec(r)}};
  }
  auto cache = make_cache(cfg);
  const auto file = cache->file_for(set);
  const bool existed = std::filesystem::exists(file);
  const auto table = cache->get(set);

  std::size_t sum_terms = 0, product_terms = 0;
  for (const auto& poly : table->sum_polynomials()) sum_terms += poly.size();
  for (const auto& poly : table->product_polynomials()) product_terms += poly.size();
  json members = json::array();
  for (auto m : set.members()) members.push_back(dec(m));
  rep.result = {{"set", std::move(members)},
                {"size", dec(set.size())},
                {"file", file.string()},
                {"cached_before", existed},
                {"sum_terms", dec(sum_terms)},
                {"product_terms", dec(product_terms)}};
  rep.checks = {{"on_disk", std::filesystem::exists(file)}};
  if (cfg.show) rep.result["table"] = table->serialize();

  auto& t = rep.text;
  t << "S = " << set.to_string() << " (|S| = " << set.size() << ")\n";
  t << "file " << file.string() << (existed ? " (cached)" : " (built)") << '\n';
  t << "sum polynomials: " << sum_terms << " terms, product polynomials: " << product_terms << " terms\n";
  if (cfg.show) t << table->serialize();
}

void add_pair_options(CLI::App* sub, RunConfig& cfg, bool need_p) {
  sub->add_option("--a", cfg.a, "exponent of y")->required();
  sub->add_option("--b", cfg.b, "exponent of x")->required();
  auto* p = sub->add_option("--p", cfg.p, "characteristic of the field");
  if (need_p) p->required();
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "output encoding")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::text}, {"json", Format::json}},
                                          CLI::ignore_case));
  sub->add_option("--cache-dir", cfg.cache_dir, "structure table cache directory (default: $CUSPK_CACHE or user cache)");
  sub->add_option("--jobs", cfg.jobs, "worker threads, 0 for all cores");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Relative K-groups of the cusps y^a = x^b over finite fields", "cuspk"};
  app.require_subcommand(1);

  auto* kgroup = app.add_subcommand("kgroup", "compute K_j by every route that fits its cap");
  add_pair_options(kgroup, cfg, true);
  kgroup->add_option("--e", cfg.e, "degree of the field over F_p");
  kgroup->add_option("--j", cfg.j, "degree j");
  kgroup->add_option("--r", cfg.r, "shorthand for j = 2r");
  kgroup->add_option("--routes", cfg.routes, "comma list of closed_form, witt_quotient, tc, or all");
  kgroup->add_option("--witt-cap", cfg.witt_cap, "bound on q^|S| for the Witt enumeration");
  kgroup->add_option("--table-cap", cfg.table_cap, "bound on |S| for structure tables");
  add_common_options(kgroup, cfg);

  auto* barcmd = app.add_subcommand("bar", "homology of the relative cyclic bar construction vs prediction");
  add_pair_options(barcmd, cfg, false);
  barcmd->add_option("--m", cfg.m, "single weight");
  barcmd->add_option("--m-max", cfg.m_max, "weights 1..m-max");
  barcmd->add_option("--bar-cap", cfg.bar_cap, "largest weight allowed");
  add_common_options(barcmd, cfg);

  auto* profile = app.add_subcommand("profile", "p-typical profile m' -> h and its total length");
  add_pair_options(profile, cfg, true);
  profile->add_option("--r", cfg.r, "truncation level");
  profile->add_option("--j", cfg.j, "degree j = 2r");
  add_common_options(profile, cfg);

  auto* verify = app.add_subcommand("verify", "run the cross-checks over a grid or a single point");
  verify->add_option("--grid", cfg.grid, "default or quick");
  verify->add_option("--a", cfg.a, "single point: exponent of y");
  verify->add_option("--b", cfg.b, "single point: exponent of x");
  verify->add_option("--p", cfg.p, "single point: characteristic");
  verify->add_option("--e", cfg.e, "single point: field degree");
  verify->add_option("--r", cfg.r, "single point: truncation level");
  verify->add_option("--routes", cfg.routes, "comma list of closed_form, witt_quotient, tc, or all");
  verify->add_option("--witt-cap", cfg.witt_cap, "bound on q^|S| for the Witt enumeration");
  verify->add_option("--table-cap", cfg.table_cap, "bound on |S| for structure tables");
  verify->add_flag("--with-bar", cfg.with_bar, "also check the cyclic bar homology");
  verify->add_option("--bar-m-max", cfg.bar_m_max, "largest weight for --with-bar");
  verify->add_option("--bar-cap", cfg.bar_cap, "largest weight allowed");
  verify->add_option("--corrupt-h", cfg.corrupt_h)->group("");
  add_common_options(verify, cfg);

  auto* table = app.add_subcommand("witt-table", "build or inspect cached Witt structure polynomials");
  table->add_option("--set", cfg.set, "truncation set, e.g. 1,2,3,4,6");
  table->add_option("--a", cfg.a, "exponent of y");
  table->add_option("--b", cfg.b, "exponent of x");
  table->add_option("--p", cfg.p, "characteristic (orientation only)");
  table->add_option("--r", cfg.r, "truncation level");
  table->add_option("--table-cap", cfg.table_cap, "bound on |S|");
  table->add_flag("--show", cfg.show, "print the polynomials");
  add_common_options(table, cfg);

  std::vector<const char*> argv{"cuspk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report rep;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (kgroup->parsed()) {
      cfg.command = "kgroup";
      cmd_kgroup(cfg, rep);
    } else if (barcmd->parsed()) {
      cfg.command = "bar";
      cmd_bar(cfg, rep);
    } else if (profile->parsed()) {
      cfg.command = "profile";
      cmd_profile(cfg, rep);
    } else if (verify->parsed()) {
      cfg.command = "verify";
      cmd_verify(cfg, rep);
    } else {
      cfg.command = "witt-table";
      if (!cfg.set && !(cfg.a && cfg.b)) throw UsageError("witt-table needs --set or --a, --b and --r");
      cmd_witt_table(cfg, rep);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitDisagree;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (cfg.format == Format::json) {
    const json doc = {{"command", cfg.command},
                      {"inputs", rep.inputs},
                      {"result", rep.result},
                      {"checks", rep.checks},
                      {"timings_ms", {{"total", dec(elapsed)}}}};
    out << doc.dump(2) << '\n';
  } else {
    out << rep.text.str();
  }
  return rep.code;
}

}  // namespace cuspk::cli
