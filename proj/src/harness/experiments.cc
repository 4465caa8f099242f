// Copyright 2026 The fidoac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fidoac/harness/experiments.h"

#include <algorithm>
#include <set>

#include "fidoac/primitives/error.h"

namespace fidoac::harness {
namespace {

std::vector<const TokenCall*> PartnersOf(const Observation& o, const ServerInstance& s) {
  std::vector<const TokenCall*> out;
  for (const auto& t : o.token_calls) {
    if (Partnered(t, s)) out.push_back(&t);
  }
  return out;
}

// Conditions 1 and 2 shared by both event experiments.
bool RegisteredAndAccepted(const Observation& o, const ServerInstance& s) {
  if (s.handle.registration() || !s.accepted) return false;
  auto reg = o.servers.find({s.handle.party, s.handle.i, 0});
  if (reg == o.servers.end()) return false;
  return std::any_of(o.token_calls.begin(), o.token_calls.end(),
                     [&](const TokenCall& t) { return Partnered(t, reg->second); });
}

using CidSet = std::set<Bytes>;

CidSet Intersect(const CidSet& a, const CidSet& b) {
  CidSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.begin()));
  return out;
}

CidSet Union(const CidSet& a, const CidSet& b) {
  CidSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

}  // namespace

std::string Verdict::ToJson() const {
  nlohmann::json j = {{"experiment", ExperimentName(experiment)},
                      {"script", script},
                      {"win", win},
                      {"aborted", aborted},
                      {"trace", trace}};
  if (aborted) j["abort_reason"] = abort_reason;
  return j.dump();
}

Observation Observation::Of(const World& w) {
  Observation o;
  o.token_calls = w.token_calls();
  o.servers = w.server_instances();
  o.med_req_challenges = w.med_req_challenges();
  for (size_t s = 0; s < w.num_servers(); ++s) {
    o.server_ids.push_back(w.server_spec(static_cast<int>(s)).id);
  }
  for (size_t t = 0; t < w.num_tokens(); ++t) {
    auto& row = o.satisfies.emplace_back();
    for (size_t s = 0; s < w.num_servers(); ++s) {
      row.push_back(w.Satisfies(static_cast<int>(t), w.server_spec(static_cast<int>(s)).policy));
    }
  }
  return o;
}

bool ImpersonationWon(const Observation& o) {
  for (const auto& [h, s] : o.servers) {
    if (!RegisteredAndAccepted(o, s)) continue;
    auto partners = PartnersOf(o, s);
    if (partners.empty()) return true;
    for (const TokenCall* t : partners) {
      for (const auto& [h2, other] : o.servers) {
        if (h2 != h && Partnered(*t, other)) return true;
      }
    }
  }
  return false;
}

bool AttributeForgeryWon(const Observation& o) {
  const auto& asked = o.med_req_challenges;
  for (const auto& [h, s] : o.servers) {
    if (!RegisteredAndAccepted(o, s)) continue;
    Bytes c = s.challenge.MediatorChallenge();
    if (std::find(asked.begin(), asked.end(), c) != asked.end()) continue;
    auto partners = PartnersOf(o, s);
    if (partners.empty()) return true;
    for (const TokenCall* t : partners) {
      if (!o.satisfies.at(t->handle.party).at(h.party)) return true;
    }
  }
  return false;
}

bool UnlinkabilityWon(const Observation& o, const ChallengePhase& p, UnlLevel level) {
  if (!p.chosen || !p.guess || *p.guess != p.bit) return false;

  CidSet reg_ch, auth_ch;
  for (const auto& t : o.token_calls) {
    if (t.left_right) continue;
    for (int k = 0; k < 2; ++k) {
      if (t.handle.party == p.t[k] && t.handle.i == p.i[k]) return false;  // freshness
    }
    bool challenged_token = t.handle.party == p.t[0] || t.handle.party == p.t[1];
    bool challenged_server =
        t.id_s == o.server_ids.at(p.s[0]) || t.id_s == o.server_ids.at(p.s[1]);
    if (!challenged_token || !challenged_server) continue;
    (t.handle.registration() ? reg_ch : auth_ch).insert(t.cid);
  }
  CidSet reg_lr(p.reg_lr.begin(), p.reg_lr.end());
  CidSet auth_lr(p.auth_lr.begin(), p.auth_lr.end());

  CidSet bad;
  switch (level) {
    case UnlLevel::kWeak:
      bad = Intersect(Union(reg_ch, auth_ch), Union(reg_lr, auth_lr));
      break;
    case UnlLevel::kMedium:
      bad = Union(Intersect(Union(reg_ch, auth_ch), auth_lr),
                  Intersect(Union(reg_lr, auth_lr), auth_ch));
      break;
    case UnlLevel::kStrong:
      bad = Union(Intersect(reg_ch, auth_lr), Intersect(reg_lr, auth_ch));
      break;
  }
  return bad.empty();
}

bool IsDistinguishing(Experiment e) {
  return e == Experiment::kUnl || e == Experiment::kOrigPriv || e == Experiment::kAttPriv;
}

Verdict RunScript(const Script& script, const WorldOptions& options) {
  World world(options);
  Interpreter interp(world, script);
  interp.Run();

  Verdict v;
  v.experiment = script.experiment;
  v.script = script.name;
  v.aborted = interp.aborted();
  v.abort_reason = interp.abort_reason();
  v.trace = interp.trace();
  if (v.aborted) return v;

  const ChallengePhase& p = interp.phase();
  switch (script.experiment) {
    case Experiment::kImp: v.win = ImpersonationWon(Observation::Of(world)); break;
    case Experiment::kAttUnf: v.win = AttributeForgeryWon(Observation::Of(world)); break;
    case Experiment::kUnl:
      v.win = UnlinkabilityWon(Observation::Of(world), p, script.level);
      break;
    case Experiment::kOrigPriv:
    case Experiment::kAttPriv:
      v.win = p.chosen && p.guess && *p.guess == p.bit;
      break;
  }
  return v;
}

WinRate EstimateWinRate(const Script& script, int trials, const WorldOptions& options) {
  WinRate r;
  for (int n = 0; n < trials; ++n) {
    Verdict v = RunScript(script, options);
    ++r.trials;
    if (v.win) ++r.wins;
    if (v.aborted) ++r.aborts;
  }
  return r;
}

nlohmann::json ViewShape(const nlohmann::json& view, const std::vector<std::string>& drop) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : view.items()) {
    if (std::find(drop.begin(), drop.end(), k) != drop.end()) continue;
    if (v.is_string()) {
      try {
        out[k] = Base64UrlDecode(v.get<std::string>()).size();
      } catch (const Error&) {
        out[k] = "text";
      }
    } else if (v.is_object()) {
      out[k] = ViewShape(v, drop);
    } else {
      out[k] = v.type_name();
    }
  }
  return out;
}

}  // namespace fidoac::harness
