#include "vetocore/report.hpp"

#include <cstdint>
#include <cstdio>

#include "vetocore/error.hpp"

namespace vetocore {

Json to_json(const CoreCertificate& cert) {
  Json j;
  j["candidate"] = cert.candidate;
  if (const auto* m = std::get_if<Matching>(&cert.witness)) {
    j["status"] = "member";
    Json pairs = Json::array();
    for (const MatchedPair& p : m->pairs) pairs.push_back({p.voter, p.voter_copy, p.candidate, p.candidate_copy});
    j["matching"] = std::move(pairs);
  } else {
    const auto& b = std::get<BlockingCertificate>(cert.witness);
    j["status"] = "blocked";
    j["T"] = b.T;
    j["S"] = b.S;
  }
  return j;
}

CoreCertificate certificate_from_json(const Json& j) {
  CoreCertificate cert;
  cert.candidate = j.at("candidate").get<int>();
  if (j.at("status") == "member") {
    Matching m;
    for (const Json& p : j.at("matching")) {
      m.pairs.push_back(MatchedPair{p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<int>(), p.at(3).get<int>()});
    }
    cert.witness = std::move(m);
  } else {
    cert.witness = BlockingCertificate{j.at("T").get<VoterSet>(), j.at("S").get<CandidateSet>()};
  }
  return cert;
}

Json to_json(const Protection& p) {
  return Json{{"candidate", p.candidate},
              {"protection", p.level},
              {"witness", Json{{"S", p.witness.S}, {"T", p.witness.T}}}};
}

Json to_json(const DistanceAssignment& x) {
  Json rows = Json::array();
  for (VoterId v = 0; v < x.n(); ++v) {
    Json row = Json::array();
    for (CandidateId c = 0; c < x.m(); ++c) row.push_back(to_string(x.at(v, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

DistanceAssignment assignment_from_json(const Json& j) {
  const int n = static_cast<int>(j.size());
  const int m = n ? static_cast<int>(j.at(0).size()) : 0;
  DistanceAssignment x(n, m);
  for (VoterId v = 0; v < n; ++v) {
    if (static_cast<int>(j.at(v).size()) != m) throw Error(ErrorCode::dimension_mismatch, "ragged witness matrix");
    for (CandidateId c = 0; c < m; ++c) x.at(v, c) = parse_rational(j.at(v).at(c).get<std::string>());
  }
  return x;
}

Json to_json(const DistortionResult& r) {
  Json j;
  j["objective"] = objective_name(r.objective);
  if (const auto* p = std::get_if<Percentile>(&r.objective)) j["alpha"] = to_string(p->alpha);
  j["candidate"] = r.candidate;
  j["argmax_c_star"] = r.optimal_candidate;
  if (r.unbounded) {
    j["value"] = "unbounded";
    j["witness"] = nullptr;
  } else {
    j["value"] = to_string(r.value);
    j["witness"] = to_json(*r.witness);
  }
  return j;
}

Json to_json(const FlowCostReport& report, int k) {
  Json per_voter = Json::array();
  for (const Rational& c : report.per_voter) per_voter.push_back(to_string(c));
  return Json{{"max_cost", to_string(report.max_cost)},
              {"bound", to_string(Rational(2 * k + 1))},
              {"per_voter", std::move(per_voter)}};
}

Json to_json(const VetoTrace& trace) {
  Json events = Json::array();
  for (const VetoEvent& ev : trace.events) {
    events.push_back(Json{{"veto", ev.veto_index},
                          {"event", ev.kind == VetoEvent::Kind::eliminate ? "eliminate" : "decrement"},
                          {"candidate", ev.candidate}});
  }
  return events;
}

Json witness_sidecar(const NamedInstance& inst) {
  Json expectations = Json::array();
  for (const Expectation& e : inst.expectations) expectations.push_back(describe(e));
  return Json{{"family", inst.family},
              {"witness", inst.witness ? to_json(*inst.witness) : Json(nullptr)},
              {"expectations", std::move(expectations)}};
}

std::string serialize_report(const Json& report) { return report.dump(2) + "\n"; }

std::string input_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vetocore
