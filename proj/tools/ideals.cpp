#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/version.hpp>

#include "ideals/ideals.hpp"
#include "ideals/json_io.hpp"

namespace {

using ideals::json_io::json;

constexpr const char* kVersion = "0.1.0";

struct Outcome {
  json result;
  int exit_code = 0;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

// ---- aligned text rendering ----------------------------------------------

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",";
      out += scalar_text(v[i]);
    }
    return out + "]";
  }
  return v.dump();
}

bool is_flat(const json& v) {
  if (v.is_object()) return false;
  if (v.is_array())
    for (const auto& x : v)
      if (!is_flat(x)) return false;
  return true;
}

bool is_table(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v)
    if (!row.is_object()) return false;
  return true;
}

void render_table(const json& rows, std::ostream& os) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (const auto& [k, _] : row.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string s = row.contains(cols[c]) ? (is_flat(row[cols[c]]) ? scalar_text(row[cols[c]])
                                                                    : row[cols[c]].dump())
                                            : "";
      width[c] = std::max(width[c], s.size());
      line.push_back(std::move(s));
    }
    cells.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out += "  ";
      out += std::string(width[c] - line[c].size(), ' ') + line[c];
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    os << out << "\n";
  };
  emit(cols);
  for (const auto& line : cells) emit(line);
}

void render_text(const json& j, std::ostream& os, const std::string& prefix = "") {
  if (!j.is_object()) {
    os << scalar_text(j) << "\n";
    return;
  }
  std::size_t pad = 0;
  for (const auto& [k, v] : j.items())
    if (is_flat(v)) pad = std::max(pad, prefix.size() + k.size());
  for (const auto& [k, v] : j.items())
    if (is_flat(v)) os << prefix << k << std::string(pad - prefix.size() - k.size() + 2, ' ') << scalar_text(v) << "\n";
  for (const auto& [k, v] : j.items()) {
    if (is_flat(v)) continue;
    if (v.is_object()) {
      render_text(v, os, prefix + k + ".");
    } else if (is_table(v)) {
      os << "\n" << prefix << k << ":\n";
      render_table(v, os);
    } else {
      os << prefix << k << "  " << v.dump() << "\n";
    }
  }
}

// ---- subcommands ----------------------------------------------------------

struct Options {
  bool as_json = false;
  int threads = 1;

  std::string input;
  std::string action;
  std::string witness_out;
  std::string emit = "tree";
  int n = 0;
  int k = 0;
  int v = 0;
  int max_n = 0;
  int blocks = 0;
  int patterns = 0;
  int depth = 0;
  int trunc = 0;
  std::string side = "mass";
  int dagger = 0;
  int bounding = 0;
  bool full = false;
  bool use_solver = false;
  double budget_secs = 600;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 1'000'000;
};

std::chrono::duration<double> budget(const Options& o) { return std::chrono::duration<double>(o.budget_secs); }

Outcome run_hyper(const Options& o) {
  const auto h = ideals::json_io::hypergraph_from_json(read_json(o.input));
  if (o.action == "max-partition") {
    const auto w = ideals::max_partition(h);
    return {ideals::json_io::to_json(w), 0};
  }
  if (o.action == "isolated") {
    const auto iso = ideals::isolated_vertices(h);
    return {{{"isolated", ideals::to_indices(iso)}, {"count", ideals::popcount(iso)}}, 0};
  }
  if (o.action == "trim") {
    const auto t = ideals::trim_economical(h);
    return {ideals::json_io::to_json(t), 0};
  }
  if (o.action == "degrees") {
    const auto p = ideals::degree_profile(h);
    json classes = json::array();
    for (const auto& [d, size] : p.class_sizes)
      classes.push_back({{"degree", d}, {"vertices", size}, {"m_k", p.weighted.at(d)}});
    return {{{"degrees", p.degrees}, {"isolated", p.isolated}, {"classes", classes}}, 0};
  }
  // economical-bound check: no isolated vertex and no partition larger than n
  const auto iso = ideals::isolated_vertices(h);
  const auto big = ideals::partition_larger_than(h, o.n);
  json r = {{"n", o.n}, {"no_isolated", iso == 0}, {"max_partition_le_n", !big.has_value()}};
  if (big) r["partition"] = ideals::json_io::to_json(*big);
  return {r, iso == 0 && !big ? 0 : 1};
}

Outcome run_solve(const Options& o) {
  if (o.action == "H") {
    const auto r = ideals::exact_H(o.n, budget(o));
    json out = {{"n", o.n},
                {"value", r.value},
                {"proved_optimal", r.proved_optimal},
                {"harmonic_cap", ideals::harmonic_cap(o.n)},
                {"nodes", r.nodes}};
    if (r.witness) {
      const auto h = ideals::expand_witness(*r.witness);
      out["witness"] = ideals::json_io::to_json(h);
      out["witness_max_partition"] = ideals::max_partition(h).size();
      if (!o.witness_out.empty()) write_json(o.witness_out, ideals::json_io::to_json(h));
    }
    return {out, 0};
  }
  ideals::WitnessSearchOptions opt;
  opt.seed = o.seed;
  opt.budget = budget(o);
  opt.max_steps = o.max_steps;
  const auto r = ideals::search_witness(o.v, o.n, opt);
  json out = {{"v", o.v}, {"n", o.n}, {"found", r.witness.has_value()}, {"steps", r.steps},
              {"from_tree", r.from_tree}};
  if (r.witness) {
    out["witness"] = ideals::json_io::to_json(*r.witness);
    if (!o.witness_out.empty()) write_json(o.witness_out, ideals::json_io::to_json(*r.witness));
  }
  return {out, r.witness ? 0 : 1};
}

Outcome run_tree(const Options& o) {
  const auto t = ideals::build_T(o.n);
  if (o.emit == "tree") return {ideals::json_io::to_json(t), 0};
  if (o.emit == "family") return {ideals::json_io::to_json(ideals::build_bounding_family(o.n)), 0};
  return {ideals::json_io::to_json(ideals::branch_hypergraph(t)), 0};
}

Outcome run_family(const Options& o) {
  if (o.action == "search") {
    const auto r = ideals::search_full_non_dagger(o.k, o.n, budget(o));
    const char* names[] = {"found", "none_exists", "budget_exhausted"};
    json out = {{"k", o.k}, {"n", o.n}, {"outcome", names[static_cast<int>(r.outcome)]}, {"nodes", r.nodes}};
    if (r.family) out["family"] = ideals::json_io::to_json(*r.family);
    return {out, r.outcome == ideals::SearchOutcome::found ? 0 : 1};
  }
  const auto f = ideals::json_io::family_from_json(read_json(o.input));
  if (o.full) {
    const bool full = ideals::is_full(f);
    return {{{"full", full}}, full ? 0 : 1};
  }
  if (o.dagger > 0) {
    const auto [holds, w] = ideals::dagger_holds(f, o.dagger);
    json out = {{"n", o.dagger}, {"dagger", holds}};
    if (w) out["witness"] = ideals::json_io::to_json(*w);
    return {out, holds ? 0 : 1};
  }
  const bool full = ideals::is_full(f);
  const auto [holds, w] = ideals::dagger_holds(f, o.bounding);
  json out = {{"n", o.bounding}, {"full", full}, {"dagger", holds}, {"bounding", full && !holds}};
  if (w) out["witness"] = ideals::json_io::to_json(*w);
  return {out, full && !holds ? 0 : 1};
}

Outcome run_bounds(const Options& o) {
  if (o.action == "audit") {
    const auto lb = ideals::lower_bound_audit(o.max_n);
    const auto ha = ideals::harmonic_audit(o.max_n);
    json out = {{"max_n", o.max_n},
                {"f_below_k", lb.f_below_k},
                {"convexity", lb.convexity},
                {"convexity_inconclusive", lb.convexity_inconclusive},
                {"k_explicit", lb.k_explicit},
                {"harmonic", ha.holds}};
    if (ha.first_failure) out["harmonic_first_failure"] = *ha.first_failure;
    return {out, lb.passed() && ha.holds ? 0 : 1};
  }
  ideals::SolverFacts facts;
  json solver = json::array();
  if (o.use_solver) {
    for (int n = 1; n <= std::min(o.max_n, 7); ++n) {
      const auto r = ideals::exact_H(n, budget(o));
      if (r.proved_optimal) {
        facts.proven[n] = r.value;
      } else {
        facts.witnessed[n] = r.value;
      }
      solver.push_back({{"n", n}, {"value", r.value}, {"proved_optimal", r.proved_optimal}});
    }
  }
  json rows = json::array();
  for (const auto& r : ideals::derive_tables(o.max_n, facts)) rows.push_back(ideals::json_io::to_json(r));
  json out = {{"max_n", o.max_n}, {"rows", rows}};
  if (o.use_solver) out["solver"] = solver;
  return {out, 0};
}

Outcome run_series(const Options& o) {
  const auto spec = ideals::build_spec(o.n, o.blocks);
  if (o.action == "demo") {
    const auto p = ideals::demo_pattern(spec);
    const auto report = ideals::boundary_sums(spec, p);
    const auto verdicts = ideals::classify_pattern(spec, p);
    json rows = json::array();
    for (int m = 1; m <= spec.blocks(); ++m)
      for (int i = 1; i <= spec.series_count(); ++i)
        rows.push_back(ideals::json_io::series_row(
            m, i, report.at(i, m), ideals::to_string(verdicts[static_cast<std::size_t>(i - 1)].trend)));
    return {{{"n", o.n}, {"blocks", o.blocks}, {"rows", rows}}, 0};
  }
  std::mt19937_64 rng(o.seed);
  json rows = json::array();
  int violations = 0;
  int prior = 0;
  int triggers = 0;
  for (int k = 0; k < o.patterns; ++k) {
    const auto p = ideals::random_pattern(spec, rng);
    const auto a = ideals::claim_audit(spec, p);
    violations += a.violations;
    prior += a.prior_bound_violations;
    triggers += static_cast<int>(a.triggers.size());
    if (a.triggers.empty() && a.prior_bound_violations == 0) continue;
    const auto report = ideals::boundary_sums(spec, p);
    for (const auto& t : a.triggers) {
      const bool ok = t.own_negative && t.others_positive;
      auto row = ideals::json_io::series_row(t.block, t.series, report.at(t.series, t.block), ok ? "ok" : "violation");
      row["pattern"] = k;
      rows.push_back(std::move(row));
    }
  }
  json out = {{"n", o.n},
              {"blocks", o.blocks},
              {"patterns", o.patterns},
              {"triggers", triggers},
              {"violations", violations},
              {"prior_bound_violations", prior},
              {"rows", rows}};
  return {out, violations == 0 && prior == 0 ? 0 : 1};
}

Outcome run_tame(const Options& o) {
  const auto fam = ideals::json_io::series_family_from_json(read_json(o.input), o.trunc);
  const auto policy = o.side == "nonnegative" ? ideals::TameSidePolicy::prefer_nonnegative
                      : o.side == "negative"  ? ideals::TameSidePolicy::prefer_negative
                                              : ideals::TameSidePolicy::more_mass;
  const auto cert = ideals::build_tame_chain(fam, o.depth, policy);
  return {ideals::json_io::to_json(cert), 0};
}

json manifest_parameters(CLI::App* sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto& res = opt->results();
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    params[name] = res.size() == 1 ? json(res.front()) : json(res);
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite combinatorics of choosing between incompatible ideals"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.as_json, "emit JSON instead of aligned text");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);

  auto* hyper = app.add_subcommand("hyper", "partition queries on a hypergraph");
  hyper->add_option("action", o.action)
      ->required()
      ->check(CLI::IsMember({"max-partition", "isolated", "trim", "degrees", "check"}));
  hyper->add_option("--input", o.input, "hypergraph JSON")->required()->check(CLI::ExistingFile);
  hyper->add_option("--n", o.n, "partition bound for check")->check(CLI::NonNegativeNumber);

  auto* solve = app.add_subcommand("solve", "exact H(n) or randomized witness search");
  solve->add_option("target", o.action)->required()->check(CLI::IsMember({"H", "witness"}));
  solve->add_option("--n", o.n)->required()->check(CLI::Range(1, 16));
  solve->add_option("--v", o.v, "vertex target for witness search")->check(CLI::Range(1, 64));
  solve->add_option("--budget-secs", o.budget_secs)->check(CLI::PositiveNumber);
  solve->add_option("--witness", o.witness_out, "write the witness hypergraph here");
  auto* solve_seed = solve->add_option("--seed", o.seed);
  solve->add_option("--max-steps", o.max_steps);

  auto* tree = app.add_subcommand("tree", "the trees T_n");
  tree->add_option("action", o.action)->required()->check(CLI::IsMember({"build"}));
  tree->add_option("--n", o.n)->required()->check(CLI::Range(1, 64));
  tree->add_option("--emit", o.emit)->check(CLI::IsMember({"tree", "family", "hypergraph"}));

  auto* family = app.add_subcommand("family", "sign-function families");
  family->add_option("action", o.action)->required()->check(CLI::IsMember({"check", "search"}));
  family->add_option("--input", o.input, "family JSON")->check(CLI::ExistingFile);
  auto* fl_full = family->add_flag("--full", o.full);
  auto* fl_dagger = family->add_option("--dagger", o.dagger)->check(CLI::PositiveNumber);
  auto* fl_bounding = family->add_option("--bounding", o.bounding)->check(CLI::PositiveNumber);
  fl_full->excludes(fl_dagger)->excludes(fl_bounding);
  fl_dagger->excludes(fl_bounding);
  family->add_option("--k", o.k)->check(CLI::Range(1, 6));
  family->add_option("--n", o.n)->check(CLI::PositiveNumber);
  family->add_option("--budget-secs", o.budget_secs)->check(CLI::PositiveNumber);

  auto* bounds = app.add_subcommand("bounds", "H and I bounds table");
  bounds->add_option("action", o.action)->required()->check(CLI::IsMember({"table", "audit"}));
  bounds->add_option("--max-n", o.max_n)->required()->check(CLI::Range(1, 1 << 20));
  bounds->add_flag("--use-solver", o.use_solver, "run exact_H for n <= 7 and feed the results in");
  bounds->add_option("--budget-secs", o.budget_secs)->check(CLI::PositiveNumber);

  auto* series = app.add_subcommand("series", "block-structured series patterns");
  series->add_option("action", o.action)->required()->check(CLI::IsMember({"audit", "demo"}));
  series->add_option("--n", o.n)->required()->check(CLI::Range(1, 64));
  series->add_option("--blocks", o.blocks)->required()->check(CLI::Range(1, 64));
  series->add_option("--patterns", o.patterns)->check(CLI::NonNegativeNumber);
  auto* series_seed = series->add_option("--seed", o.seed);

  auto* tame = app.add_subcommand("tame", "tame-set certificates");
  tame->add_option("action", o.action)->required()->check(CLI::IsMember({"build"}));
  tame->add_option("--input", o.input, "series JSON")->required()->check(CLI::ExistingFile);
  tame->add_option("--depth", o.depth)->required()->check(CLI::NonNegativeNumber);
  tame->add_option("--trunc", o.trunc, "window length (0 keeps every given term)")->check(CLI::NonNegativeNumber);
  tame->add_option("--side", o.side, "which sign class each level keeps")
      ->check(CLI::IsMember({"mass", "nonnegative", "negative"}));

  auto usage = [&](const std::string& msg, CLI::App* where) {
    std::cerr << msg << "\n" << where->help();
    return 2;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    CLI::App* where = &app;
    for (auto* s : app.get_subcommands()) where = s;
    return usage(e.what(), where);
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  if (name == "solve" && o.action == "witness") {
    if (solve_seed->count() == 0) return usage("--seed is required for witness search", sub);
    if (o.v == 0) return usage("--v is required for witness search", sub);
  }
  if (name == "series" && o.action == "audit" && series_seed->count() == 0)
    return usage("--seed is required for series audit", sub);
  if (name == "hyper" && o.action == "check" && sub->get_option("--n")->count() == 0)
    return usage("--n is required for hyper check", sub);
  if (name == "family") {
    if (o.action == "check" && (o.input.empty() || (!o.full && o.dagger == 0 && o.bounding == 0)))
      return usage("family check needs --input and one of --full, --dagger N, --bounding N", sub);
    if (o.action == "search" && (o.k == 0 || o.n == 0)) return usage("family search needs --k and --n", sub);
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (name == "hyper") out = run_hyper(o);
    else if (name == "solve") out = run_solve(o);
    else if (name == "tree") out = run_tree(o);
    else if (name == "family") out = run_family(o);
    else if (name == "bounds") out = run_bounds(o);
    else if (name == "series") out = run_series(o);
    else out = run_tame(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream body;
  if (o.as_json) {
    body << out.result.dump() << "\n";
  } else {
    render_text(out.result, body);
  }
  const std::string text = body.str();
  std::cout << text << std::flush;

  const bool seeded = (name == "solve" && o.action == "witness") || (name == "series" && o.action == "audit");
  json manifest = {{"subcommand", name + " " + o.action},
                   {"parameters", manifest_parameters(sub)},
                   {"seed", seeded ? json(o.seed) : json(nullptr)},
                   {"threads", o.threads},
                   {"versions",
                    {{"ideals", kVersion},
                     {"boost", BOOST_LIB_VERSION},
                     {"cli11", CLI11_VERSION},
                     {"nlohmann_json",
                      std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                          "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                   {"elapsed_secs", elapsed},
                   {"exit_code", out.exit_code},
                   {"result_digest", "fnv1a64:" + hex64(fnv1a(text))}};
  std::cerr << manifest.dump() << "\n";
  return out.exit_code;
}
