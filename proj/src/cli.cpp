#include "vetocore/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vetocore/core.hpp"
#include "vetocore/distortion.hpp"
#include "vetocore/error.hpp"
#include "vetocore/flow_verify.hpp"
#include "vetocore/generators.hpp"
#include "vetocore/minority.hpp"
#include "vetocore/report.hpp"
#include "vetocore/veto.hpp"

namespace vetocore {

namespace {

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf || !(outf << bytes)) throw Error(ErrorCode::invalid_argument, "cannot write " + path);
}

std::optional<std::uint64_t> budget_override() {
  const char* env = std::getenv("VETOCORE_BUDGET");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (*end != '\0') throw Error(ErrorCode::invalid_argument, "VETOCORE_BUDGET must be a non-negative integer");
  return value;
}

void require_candidate(const Election& e, int c, const char* flag) {
  if (c < 0 || c >= e.m()) {
    throw Error(ErrorCode::invalid_argument, std::string(flag) + " must lie in [0, " + std::to_string(e.m()) + ")");
  }
}

struct Options {
  std::string file;
  int k = 1;
  bool timing = false;

  std::string order_file;
  bool enumerate = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;

  std::string objective;
  std::string alpha;
  std::optional<int> candidate;
  std::string engine = "exact";
  bool serial = false;

  int w = 0;
  int c_star = 0;

  std::string family;
  int m = 0;
  int n = 0;
  std::string delta = "0";
  std::string epsilon;
  std::string output;
};

Json header(const std::string& command, const std::string& bytes) {
  return Json{{"command", command}, {"input_digest", input_digest(bytes)}};
}

Json cmd_core(const Options& o) {
  const std::string bytes = read_bytes(o.file);
  const Election e = parse_election(bytes);
  Json report = header("core", bytes);
  report["k"] = o.k;
  Json certs = Json::array();
  CandidateSet core;
  for (const CoreCertificate& cert : core_certificates(e, o.k)) {
    if (cert.is_member()) core.push_back(cert.candidate);
    certs.push_back(to_json(cert));
  }
  report["core"] = core;
  report["certificates"] = std::move(certs);
  return report;
}

Json cmd_winners(const Options& o) {
  const std::string bytes = read_bytes(o.file);
  const Election e = parse_election(bytes);
  Json report = header("winners", bytes);
  report["k"] = o.k;
  if (!o.order_file.empty()) {
    const VetoOrder order = parse_veto_order(read_bytes(o.order_file));
    const VetoRun run = run_k_approval_veto(e, o.k, order);
    report["mode"] = "order";
    report["winners"] = run.winners;
    report["trace"] = to_json(run.trace);
    return report;
  }
  if (o.sample > 0) {
    report["mode"] = "sample";
    report["winners"] = enumerate_possible_winners(e, o.k, Sample{o.sample, o.seed});
  } else {
    report["mode"] = "exhaustive";
    report["winners"] = enumerate_possible_winners(e, o.k, Exhaustive{budget_override().value_or(kDefaultOrderCap)});
  }
  return report;
}

Json cmd_protection(const Options& o) {
  const std::string bytes = read_bytes(o.file);
  const Election e = parse_election(bytes);
  Json report = header("protection", bytes);
  Json items = Json::array();
  for (const Protection& p : protection_report(e)) items.push_back(to_json(p));
  report["protection"] = std::move(items);
  return report;
}

Json cmd_distortion(const Options& o) {
  const std::string bytes = read_bytes(o.file);
  const Election e = parse_election(bytes);
  Objective obj;
  if (o.objective == "utilitarian") {
    obj = Utilitarian{};
  } else if (o.objective == "egalitarian") {
    obj = Egalitarian{};
  } else if (o.objective == "percentile") {
    if (o.alpha.empty()) throw Error(ErrorCode::invalid_argument, "--alpha is required for percentile");
    obj = Percentile{parse_rational(o.alpha)};
    percentile_index(std::get<Percentile>(obj).alpha, e.n());
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown objective " + o.objective);
  }
  DistortionOptions opts;
  opts.engine = o.engine == "float" ? LpEngine::floating : LpEngine::exact;
  opts.exec = o.serial ? Execution::serial : Execution::parallel;
  if (auto cap = budget_override()) opts.subset_cap = *cap;

  std::vector<CandidateId> targets;
  if (o.candidate) {
    require_candidate(e, *o.candidate, "--candidate");
    targets.push_back(*o.candidate);
  } else {
    for (CandidateId c = 0; c < e.m(); ++c) targets.push_back(c);
  }
  Json report = header("distortion", bytes);
  report["engine"] = o.engine;
  Json results = Json::array();
  for (CandidateId w : targets) results.push_back(to_json(distortion(e, w, obj, opts)));
  report["results"] = std::move(results);
  return report;
}

Json cmd_verify_flow(const Options& o) {
  const std::string bytes = read_bytes(o.file);
  const Election e = parse_election(bytes);
  require_candidate(e, o.w, "--w");
  require_candidate(e, o.c_star, "--cstar");
  const CoreCertificate cert = core_membership(e, o.k, o.w);
  if (!cert.is_member()) {
    throw Error(ErrorCode::invalid_argument, "candidate " + std::to_string(o.w) + " is not in AVC_" + std::to_string(o.k));
  }
  const Circulation f = construct_distortion_flow(e, o.k, o.w, o.c_star, std::get<Matching>(cert.witness));
  const FlowCostReport cost = verify_flow(build_flow_network(e), f, o.k);
  Json report = header("verify-flow", bytes);
  report.update(to_json(cost, o.k));
  report["k"] = o.k;
  report["w"] = o.w;
  report["c_star"] = o.c_star;
  report["stage1_total"] = to_string(f.stage1_total);
  return report;
}

Json cmd_gen(const Options& o) {
  NamedInstance inst{o.family, Election(1, {Ranking{0}}), std::nullopt, {}};
  if (o.family == "util-lb") {
    inst = gen_util_lower_bound(o.k, o.m, parse_rational(o.delta));
  } else if (o.family == "percentile-unbounded") {
    inst = gen_percentile_unbounded(o.k, parse_rational(o.alpha.empty() ? "1/2" : o.alpha));
  } else if (o.family == "percentile-cyclic") {
    inst = gen_percentile_cyclic(parse_rational(o.alpha.empty() ? "1/2" : o.alpha),
                                 parse_rational(o.epsilon.empty() ? "1/10" : o.epsilon));
  } else if (o.family == "remark") {
    inst = gen_remark_example();
  } else if (o.family == "random") {
    inst.election = gen_random(o.n, o.m, o.seed);
  } else {
    throw Error(ErrorCode::bad_params, "unknown family " + o.family);
  }
  const std::string text = write_election(inst.election);
  write_bytes(o.output, text);
  write_bytes(o.output + ".witness.json", serialize_report(witness_sidecar(inst)));
  Json report = header("gen", text);
  report["family"] = o.family;
  report["n"] = inst.election.n();
  report["m"] = inst.election.m();
  Json expectations = Json::array();
  for (const Expectation& e : inst.expectations) expectations.push_back(describe(e));
  report["expectations"] = std::move(expectations);
  return report;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Veto core, minority protection and metric distortion analysis", "vetocore"};
  app.require_subcommand(1);
  app.add_flag("--timing", o.timing, "Add elapsed_ms to the report");

  auto* core = app.add_subcommand("core", "k-approval veto core with certificates");
  core->add_option("--k", o.k)->required();
  core->add_option("file", o.file)->required();

  auto* winners = app.add_subcommand("winners", "k-ApprovalVeto winners");
  winners->add_option("--k", o.k)->required();
  auto* order_opt = winners->add_option("--order", o.order_file, "Veto order file");
  auto* enum_opt = winners->add_flag("--enumerate", o.enumerate, "Union of winners over veto orders");
  order_opt->excludes(enum_opt);
  winners->add_option("--sample", o.sample, "Sample this many random orders instead")->needs(enum_opt);
  winners->add_option("--seed", o.seed);
  winners->add_option("file", o.file)->required();

  auto* protection = app.add_subcommand("protection", "Mutual minority protection per candidate");
  protection->add_option("file", o.file)->required();

  auto* dist = app.add_subcommand("distortion", "Exact metric distortion");
  dist->add_option("--objective", o.objective)->required()->check(
      CLI::IsMember({"utilitarian", "egalitarian", "percentile"}));
  dist->add_option("--alpha", o.alpha);
  dist->add_option("--candidate", o.candidate);
  dist->add_option("--engine", o.engine)->check(CLI::IsMember({"exact", "float"}));
  dist->add_flag("--serial", o.serial, "Use the serial reference path");
  dist->add_option("file", o.file)->required();

  auto* flow = app.add_subcommand("verify-flow", "Build and verify the 2k+1 flow certificate");
  flow->add_option("--k", o.k)->required();
  flow->add_option("--w", o.w)->required();
  flow->add_option("--cstar", o.c_star)->required();
  flow->add_option("file", o.file)->required();

  auto* gen = app.add_subcommand("gen", "Write a named or random instance");
  gen->add_option("--family", o.family)->required()->check(
      CLI::IsMember({"util-lb", "percentile-unbounded", "percentile-cyclic", "remark", "random"}));
  gen->add_option("--k", o.k);
  gen->add_option("--m", o.m);
  gen->add_option("--n", o.n);
  gen->add_option("--delta", o.delta);
  gen->add_option("--alpha", o.alpha);
  gen->add_option("--epsilon", o.epsilon);
  gen->add_option("--seed", o.seed);
  gen->add_option("-o,--output", o.output)->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitInputError;
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    Json report;
    if (core->parsed()) report = cmd_core(o);
    if (winners->parsed()) {
      if (o.order_file.empty() && !o.enumerate) throw Error(ErrorCode::invalid_argument, "need --order or --enumerate");
      report = cmd_winners(o);
    }
    if (protection->parsed()) report = cmd_protection(o);
    if (dist->parsed()) report = cmd_distortion(o);
    if (flow->parsed()) report = cmd_verify_flow(o);
    if (gen->parsed()) report = cmd_gen(o);
    if (o.timing) {
      report["elapsed_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out << serialize_report(report);
    return kExitOk;
  } catch (const Error& ex) {
    err << "error: " << error_code_name(ex.code()) << ": " << ex.what() << "\n";
    return ex.is_budget_refusal() ? kExitBudgetRefusal : kExitInputError;
  }
}

}  // namespace vetocore
