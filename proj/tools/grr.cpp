// grr: command-line front end for GRR certification of Gamma_k Cayley graphs.
//
// Exit codes: 0 success, 2 usage or parse error, 3 resource limit,
// 4 internal inconsistency.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "grr/autgraph.hpp"
#include "grr/cayley.hpp"
#include "grr/groupspec.hpp"
#include "grr/grrcert.hpp"
#include "grr/report.hpp"
#include "grr/sampler.hpp"

using nlohmann::json;

namespace {

class Stopwatch {
 public:
  void lap(json& timings, const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    timings[phase] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

grr::AutSearchConfig search_config() {
  grr::AutSearchConfig cfg;
  if (const char* env = std::getenv("GRR_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw grr::ParseError("GRR_NODE_BUDGET must be a positive integer");
    cfg.node_budget = v;
  }
  return cfg;
}

std::size_t element_in(const grr::GroupTable& table, const std::string& text, const char* what) {
  const auto p = grr::parse_cycles(text, table.degree());
  const auto i = table.find(p);
  if (!i) throw grr::ParseError(std::string(what) + " = " + text + " is not in the group");
  return *i;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw grr::ParseError("bad k range \"" + text + "\" (expected a..b)");
  }
}

void emit(const json& report, bool as_json, const std::string& human) {
  if (as_json) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << human;
  }
}

// ------------------------------------------------------------ certify

struct CertifyArgs {
  std::string group, x, y;
  int k = 5;
  bool exhaustive = false;
  bool json = false;
};

int cmd_certify(const CertifyArgs& a) {
  if (a.k < 5) throw grr::ParseError("k must be at least 5");
  Stopwatch sw;
  json timings;
  const auto spec = grr::parse_group_spec(a.group);
  const auto table = grr::enumerate(spec.generators);
  sw.lap(timings, "enumerate");
  const std::size_t x = element_in(table, a.x, "x");
  const std::size_t y = element_in(table, a.y, "y");
  const auto cert = grr::certify_theorem1(table, x, y, a.k);
  sw.lap(timings, "certify");
  json results = grr::to_json(cert, table, x, y);
  int code = 0;
  std::ostringstream human;
  human << "group " << spec.name << " (order " << table.order() << "), k = " << a.k << '\n'
        << "verdict: " << grr::to_string(cert.verdict) << '\n';
  if (a.exhaustive) {
    const auto s = grr::gamma_k_connection_set(table, x, y, a.k);
    const auto cayley = grr::build_cayley(table, s);
    const auto aut = grr::automorphism_group(cayley.graph, std::nullopt, search_config());
    sw.lap(timings, "exhaustive");
    const bool grr_exhaustive = aut.order == table.order();
    json ex{{"aut_order", aut.order.str()}, {"grr", grr_exhaustive}};
    human << "|Aut(Gamma)| = " << aut.order << '\n';
    if (cert.aut_gs_order) {
      const bool agrees = (cert.verdict == grr::Verdict::grr_certified) == grr_exhaustive &&
                          aut.order == grr::BigInt(table.order()) * *cert.aut_gs_order;
      ex["agrees"] = agrees;
      human << "exhaustive check " << (agrees ? "agrees" : "DISAGREES") << '\n';
      if (!agrees) code = 4;
    }
    results["exhaustive"] = ex;
  }
  json inputs{{"group", a.group}, {"x", a.x}, {"y", a.y}, {"k", a.k}, {"exhaustive", a.exhaustive}};
  emit(grr::make_report("certify", inputs, results, timings), a.json, human.str());
  if (code == 4) std::cerr << "error: certificate and exhaustive search disagree\n";
  return code;
}

// ------------------------------------------------------------ construct-an

struct ConstructArgs {
  int n = 14;
  std::optional<int> p;
  std::string k_range;
  bool json = false;
};

int cmd_construct_an(const ConstructArgs& a) {
  Stopwatch sw;
  json timings;
  const auto c = grr::construct_an(a.n, a.p);
  const auto fix = grr::fixed_point_sets(c);
  sw.lap(timings, "construct");
  auto [k_lo, k_hi] = a.k_range.empty() ? std::pair{5, grr::k_max(a.n)} : parse_k_range(a.k_range);
  if (k_lo < 5 || k_hi < k_lo) throw grr::ParseError("k range must satisfy 5 <= a <= b");
  json certs = json::array();
  json skipped = json::array();
  std::ostringstream human;
  human << "n = " << c.n << ", p = " << c.p << '\n' << "x = " << c.x.to_string() << '\n'
        << "y = " << c.y.to_string() << '\n';
  for (int k = k_lo; k <= k_hi; ++k) {
    if (!grr::an_certificate_applies(c.n, c.p, k)) {
      skipped.push_back(k);
      continue;
    }
    const auto aut = grr::aut_gs_alternating(c.n, c.x, c.y, k);
    certs.push_back({{"k", k}, {"aut_gs_order", aut.size()}, {"grr", aut.size() == 1}});
    human << "k = " << k << ": |Aut(G,S)| = " << aut.size() << '\n';
  }
  sw.lap(timings, "aut_gs");
  json results{{"n", c.n},
               {"p", c.p},
               {"window", grr::prime_window(c.n)},
               {"parity", c.parity_branch == grr::AnConstruction::Parity::odd ? "odd" : "even"},
               {"x", c.x.to_string()},
               {"y", c.y.to_string()},
               {"fix_y", grr::one_indexed(fix.fix_y)},
               {"fix_conj_y", grr::one_indexed(fix.fix_conj_y)},
               {"fixed_points_match", true},
               {"certificates", certs},
               {"skipped_k", skipped}};
  json inputs{{"n", a.n}, {"p", a.p ? json(*a.p) : json()}, {"k", a.k_range}};
  emit(grr::make_report("construct-an", inputs, results, timings), a.json, human.str());
  return 0;
}

// ------------------------------------------------------------ census

struct CensusArgs {
  std::string file;
  int k = 5;
  bool exhaustive = false;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool json = false;
};

struct CensusEntry {
  std::string name, group, x, y;
};

std::vector<CensusEntry> read_census(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw grr::ParseError("cannot open " + path);
  std::vector<CensusEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto f = grr::split(line, '|');
    if (f.size() == 3) f.emplace_back();
    if (f.size() != 4 || f[0].empty() || f[1].empty() || f[2].empty()) {
      throw grr::ParseError(path + ":" + std::to_string(line_no) + ": expected 'name | group | x | y'");
    }
    out.push_back({f[0], f[1], f[2], f[3]});
  }
  return out;
}

json census_row(const CensusEntry& e, std::size_t index, const CensusArgs& a, const grr::AutSearchConfig& cfg) {
  json row{{"name", e.name}, {"group", e.group}, {"x", e.x}};
  try {
    const auto spec = grr::parse_group_spec(e.group);
    const auto table = grr::enumerate(spec.generators);
    const std::size_t x = element_in(table, e.x, "x");
    std::size_t y = 0;
    if (e.y.empty()) {
      try {
        grr::SamplerConfig sc{a.seed, 1, 64};
        y = table.index_of(grr::random_involution(spec.generators, sc, index));
      } catch (const grr::LimitExceeded&) {
        row["y"] = nullptr;
        row["status"] = "no_involution";
        return row;
      }
      row["y_source"] = "sampled";
    } else {
      y = element_in(table, e.y, "y");
      row["y_source"] = "given";
    }
    row["y"] = table.element(y).to_string();
    const auto cert = grr::certify_theorem1(table, x, y, a.k);
    row["certificate"] = grr::to_json(cert, table, x, y);
    row["status"] = "ok";
    if (a.exhaustive && cert.checks.connection_set_size_k && table.order() <= cfg.vertex_limit) {
      const auto s = grr::gamma_k_connection_set(table, x, y, a.k);
      const auto aut = grr::automorphism_group(grr::build_cayley(table, s).graph, std::nullopt, cfg);
      json ex{{"aut_order", aut.order.str()}, {"grr", aut.order == table.order()}};
      if (cert.aut_gs_order) {
        ex["agrees"] = (cert.verdict == grr::Verdict::grr_certified) == (aut.order == table.order()) &&
                       aut.order == grr::BigInt(table.order()) * *cert.aut_gs_order;
      }
      row["exhaustive"] = ex;
    }
  } catch (const grr::Error& err) {
    row["status"] = "error";
    row["error"] = err.what();
  }
  return row;
}

int cmd_census(const CensusArgs& a) {
  if (a.k < 5) throw grr::ParseError("k must be at least 5");
  if (a.jobs == 0) throw grr::ParseError("--jobs must be positive");
  Stopwatch sw;
  json timings;
  const auto entries = read_census(a.file);
  const auto cfg = search_config();
  std::vector<json> rows(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) rows[i] = census_row(entries[i], i, a, cfg);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(a.jobs, entries.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  sw.lap(timings, "census");

  int code = 0;
  std::ostringstream human;
  for (const auto& r : rows) {
    human << r["name"].get<std::string>() << "  " << r["status"].get<std::string>();
    if (r.contains("certificate")) human << "  " << r["certificate"]["verdict"].get<std::string>();
    if (r.contains("error")) human << "  " << r["error"].get<std::string>();
    if (r.contains("exhaustive")) {
      human << "  |Aut| = " << r["exhaustive"]["aut_order"].get<std::string>();
      if (r["exhaustive"].contains("agrees") && !r["exhaustive"]["agrees"].get<bool>()) code = 4;
    }
    human << '\n';
  }
  json inputs{{"file", a.file}, {"k", a.k}, {"exhaustive", a.exhaustive}, {"seed", a.seed}};
  emit(grr::make_report("census", inputs, json{{"rows", rows}}, timings), a.json, human.str());
  return code;
}

// ------------------------------------------------------------ sample

struct SampleArgs {
  std::string group, fixture, x;
  unsigned order = 0;
  std::size_t trials = 200;
  std::size_t word_length = 64;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_sample(const SampleArgs& a) {
  Stopwatch sw;
  json timings;
  std::vector<grr::Permutation> gens;
  if (!a.fixture.empty()) {
    std::ifstream in(a.fixture);
    if (!in) throw grr::ParseError("cannot open " + a.fixture);
    gens = grr::read_generator_fixture(in).generators;
  } else if (!a.group.empty()) {
    gens = grr::parse_group_spec(a.group).generators;
  } else {
    throw grr::ParseError("one of --group or --fixture is required");
  }
  if (gens.empty()) throw grr::ParseError("no generators");
  const grr::SamplerConfig cfg{a.seed, a.trials, a.word_length};
  grr::Permutation x;
  if (!a.x.empty()) {
    x = grr::parse_cycles(a.x, gens.front().degree());
  } else if (a.order != 0) {
    auto found = grr::element_of_order(gens, a.order, cfg);
    if (!found) throw grr::LimitExceeded("no element of order " + std::to_string(a.order) + " found");
    x = *found;
  } else {
    throw grr::ParseError("one of --x or --order is required");
  }
  const auto est = grr::estimate_generation_probability(gens, x, cfg);
  sw.lap(timings, "estimate");
  json results = grr::to_json(est);
  results["x"] = x.to_string();
  results["x_order"] = grr::order_of(x).str();
  json inputs{{"group", a.group}, {"fixture", a.fixture}, {"x", a.x}, {"order", a.order},
              {"trials", a.trials}, {"word_length", a.word_length}, {"seed", a.seed}};
  std::ostringstream human;
  human << "|x| = " << grr::order_of(x) << ", generated " << est.successes << " of " << est.trials
        << " trials (" << est.value() << ")\n";
  emit(grr::make_report("sample", inputs, results, timings), a.json, human.str());
  return 0;
}

// ------------------------------------------------------------ export

struct ExportArgs {
  std::string group, x, y, set, format = "graph6", out;
  int k = 0;
};

int cmd_export(const ExportArgs& a) {
  if (a.format != "graph6" && a.format != "dimacs") throw grr::ParseError("unknown format \"" + a.format + "\"");
  const auto spec = grr::parse_group_spec(a.group);
  const auto table = grr::enumerate(spec.generators);
  if (table.order() > search_config().vertex_limit) {
    throw grr::LimitExceeded("graph with " + std::to_string(table.order()) + " vertices exceeds the limit");
  }
  grr::ConnectionSet s;
  if (!a.set.empty()) {
    if (!a.x.empty() || !a.y.empty()) throw grr::ParseError("--set excludes --x/--y");
    std::vector<std::size_t> members;
    for (const auto& part : grr::split(a.set, ';')) members.push_back(element_in(table, part, "set member"));
    s = grr::make_connection_set(table, members);
  } else {
    if (a.x.empty() || a.y.empty() || a.k == 0) throw grr::ParseError("need --set, or --x, --y and --k");
    if (a.k < 5) throw grr::ParseError("k must be at least 5");
    s = grr::gamma_k_connection_set(table, element_in(table, a.x, "x"), element_in(table, a.y, "y"), a.k);
  }
  const auto g = grr::build_cayley(table, s).graph;
  const std::string text = a.format == "graph6" ? grr::to_graph6(g) + "\n" : grr::to_dimacs(g);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw grr::ParseError("cannot write " + a.out);
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GRR certification toolkit for Gamma_k Cayley graphs"};
  app.set_version_flag("--version", grr::kVersion);
  app.require_subcommand(1);

  CertifyArgs ca;
  auto* certify = app.add_subcommand("certify", "Check the hypotheses and certify Gamma_k(G,x,y)");
  certify->add_option("--group", ca.group, "A<n>, S<n>, C<n> or generators separated by ';'")->required();
  certify->add_option("--x", ca.x, "element of prime order")->required();
  certify->add_option("--y", ca.y, "involution")->required();
  certify->add_option("--k", ca.k, "valency (>= 5)")->required();
  certify->add_flag("--exhaustive", ca.exhaustive, "also compute Aut(Gamma) by search");
  certify->add_flag("--json", ca.json, "print a JSON report");

  ConstructArgs cn;
  auto* construct = app.add_subcommand("construct-an", "Build the A_n pair and check Aut(G,S)");
  construct->add_option("--n", cn.n, "degree (>= 14)")->required();
  construct->add_option("--p", cn.p, "window prime (default: largest)");
  construct->add_option("--k", cn.k_range, "valency range a..b");
  construct->add_flag("--json", cn.json, "print a JSON report");

  CensusArgs cs;
  auto* census = app.add_subcommand("census", "Certify every entry of a fixture file");
  census->add_option("--file", cs.file, "lines 'name | group | x | y' (y may be empty)")->required();
  census->add_option("--k", cs.k, "valency (>= 5)");
  census->add_flag("--exhaustive", cs.exhaustive, "verify small entries by search");
  census->add_option("--jobs", cs.jobs, "worker threads");
  census->add_option("--seed", cs.seed, "seed for sampled involutions");
  census->add_flag("--json", cs.json, "print a JSON report");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Estimate the probability that x and a random involution generate");
  sample->add_option("--group", sa.group, "group specification");
  sample->add_option("--fixture", sa.fixture, "generator fixture file");
  sample->add_option("--x", sa.x, "fixed element");
  sample->add_option("--order", sa.order, "sample x of this prime order instead");
  sample->add_option("--trials", sa.trials, "number of involutions");
  sample->add_option("--word-length", sa.word_length, "random word length");
  sample->add_option("--seed", sa.seed, "seed");
  sample->add_flag("--json", sa.json, "print a JSON report");

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "Write a Cayley graph as graph6 or DIMACS");
  exp->add_option("--group", ea.group, "group specification")->required();
  exp->add_option("--x", ea.x, "x for Gamma_k");
  exp->add_option("--y", ea.y, "y for Gamma_k");
  exp->add_option("--k", ea.k, "k for Gamma_k");
  exp->add_option("--set", ea.set, "explicit connection set, ';'-separated");
  exp->add_option("--format", ea.format, "graph6 or dimacs");
  exp->add_option("--out", ea.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*certify) return cmd_certify(ca);
    if (*construct) return cmd_construct_an(cn);
    if (*census) return cmd_census(cs);
    if (*sample) return cmd_sample(sa);
    if (*exp) return cmd_export(ea);
  } catch (const grr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const grr::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const grr::LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << '\n';
    return 3;
  } catch (const grr::InconsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
