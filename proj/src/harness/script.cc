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

#include "fidoac/harness/script.h"

#include <fstream>
#include <sstream>

#include "fidoac/primitives/error.h"

namespace fidoac::harness {
namespace {

using nlohmann::json;

Bytes B(const json& v) { return Base64UrlDecode(v.get<std::string>()); }
std::string S(ByteSpan b) { return Base64UrlEncode(b); }

json Parse(const std::string& text) { return json::parse(text); }

json ReqToJson(const mediator::AttestRequest& r) {
  return {{"dg1_hash", S(r.dg1_hash.span())},
          {"pk_eid", S(r.pk_eid)},
          {"pi_pa", S(r.pi_pa)},
          {"c", S(r.c)},
          {"nonce", S(r.nonce)}};
}

mediator::AttestRequest ReqFromJson(const json& j) {
  mediator::AttestRequest r;
  Bytes h = B(j.at("dg1_hash"));
  Bytes n = B(j.at("nonce"));
  if (h.size() != r.dg1_hash.bytes.size() || n.size() != r.nonce.size()) {
    throw Error(ErrorCode::kMalformed, "request field has the wrong length");
  }
  std::copy(h.begin(), h.end(), r.dg1_hash.bytes.begin());
  std::copy(n.begin(), n.end(), r.nonce.begin());
  r.pk_eid = B(j.at("pk_eid"));
  r.pi_pa = B(j.at("pi_pa"));
  r.c = B(j.at("c"));
  return r;
}

json ChalToJson(const mediator::MediatorChallenge& c) {
  return {{"pk_m", S(c.pk_m)}, {"cmd_cha", S(c.cmd_cha.Encode())}};
}

mediator::MediatorChallenge ChalFromJson(const json& j) {
  return {B(j.at("pk_m")), primitives::Ciphertext::Decode(B(j.at("cmd_cha")))};
}

json AttToJson(const mediator::MediatorAttestation& a) {
  return {{"att_m", S(a.att_m)},
          {"sigma_m", a.sigma_m ? json(S(*a.sigma_m)) : json(nullptr)}};
}

eid::Attributes AttributesFromJson(const json& j) {
  eid::Attributes a;
  a.name = j.at("name").get<std::string>();
  a.birth_date = j.at("birth_date").get<std::string>();
  a.expiry_date = j.value("expiry_date", "301231");
  a.nationality = j.value("nationality", "DEU");
  a.sex = j.value("sex", "X");
  return a;
}

Handle HandleOf(const json& step, const char* party) {
  return {step.at(party).get<int>(), step.value("i", 0), step.value("j", 0)};
}

int RandomBit() { return primitives::RandomBytes(1)[0] & 1; }

}  // namespace

std::string_view ExperimentName(Experiment e) {
  switch (e) {
    case Experiment::kImp: return "imp";
    case Experiment::kAttUnf: return "attunf";
    case Experiment::kUnl: return "unl";
    case Experiment::kOrigPriv: return "origpriv";
    case Experiment::kAttPriv: return "attpriv";
  }
  return "unknown";
}

Experiment ParseExperiment(std::string_view name) {
  for (auto e : {Experiment::kImp, Experiment::kAttUnf, Experiment::kUnl,
                 Experiment::kOrigPriv, Experiment::kAttPriv}) {
    if (ExperimentName(e) == name) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment '" + std::string(name) + "'");
}

std::string_view UnlLevelName(UnlLevel level) {
  switch (level) {
    case UnlLevel::kWeak: return "weak";
    case UnlLevel::kMedium: return "medium";
    case UnlLevel::kStrong: return "strong";
  }
  return "unknown";
}

Script Script::FromJson(std::string_view text) {
  try {
    json j = json::parse(text);
    Script s;
    s.name = j.value("name", "");
    s.experiment = ParseExperiment(j.at("experiment").get<std::string>());
    std::string level = j.value("unl_level", "weak");
    if (level == "weak") s.level = UnlLevel::kWeak;
    else if (level == "medium") s.level = UnlLevel::kMedium;
    else if (level == "strong") s.level = UnlLevel::kStrong;
    else throw Error(ErrorCode::kMalformed, "unknown unl_level '" + level + "'");
    s.steps = j.at("steps");
    if (!s.steps.is_array()) throw Error(ErrorCode::kMalformed, "steps must be a list");
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformed, std::string("script: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kMalformed, e.what());
  }
}

Script Script::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJson(ss.str());
}

json Interpreter::Resolve(const json& v) const {
  if (!v.is_string()) return v;
  const auto& s = v.get_ref<const std::string&>();
  if (s.empty() || s[0] != '$') return v;
  auto slash = s.find('/');
  std::string name = s.substr(1, slash == std::string::npos ? std::string::npos : slash - 1);
  if (!vars_.contains(name)) throw Error(ErrorCode::kOracleAbort, "unbound variable " + name);
  if (slash == std::string::npos) return vars_.at(name);
  return vars_.at(name).at(json::json_pointer(s.substr(slash)));
}

json& Interpreter::Target(const std::string& ref) {
  if (ref.empty() || ref[0] != '$') {
    throw Error(ErrorCode::kOracleAbort, "target must be a variable reference");
  }
  auto slash = ref.find('/');
  std::string name =
      ref.substr(1, slash == std::string::npos ? std::string::npos : slash - 1);
  // A bare name may introduce a new variable; a path must lead into one.
  if (slash != std::string::npos && !vars_.contains(name)) {
    throw Error(ErrorCode::kOracleAbort, "unbound variable " + name);
  }
  json& root = vars_[name];
  return slash == std::string::npos ? root : root[json::json_pointer(ref.substr(slash))];
}

void Interpreter::Run() {
  for (size_t n = 0; n < script_.steps.size(); ++n) {
    const json& step = script_.steps[n];
    json entry = {{"step", n}, {"op", step.value("op", "")}};
    try {
      json out = Step(step);
      if (step.contains("as")) vars_[step["as"].get<std::string>()] = out;
      entry["result"] = std::move(out);
    } catch (const Error& e) {
      entry["error"] = ErrorCodeName(e.code());
      if (e.code() == ErrorCode::kOracleAbort || e.code() == ErrorCode::kAlreadySetup) {
        aborted_ = true;
        abort_reason_ = e.what();
      } else if (step.contains("as")) {
        vars_[step["as"].get<std::string>()] = {{"error", ErrorCodeName(e.code())}};
      }
    } catch (const json::exception& e) {
      entry["error"] = "script";
      aborted_ = true;
      abort_reason_ = e.what();
    }
    trace_.push_back(std::move(entry));
    if (aborted_) return;
  }
}

json Interpreter::LeftRight(const json& step, int side) {
  if (!phase_.chosen || script_.experiment != Experiment::kUnl) {
    throw Error(ErrorCode::kOracleAbort, "Left/Right before the challenge phase");
  }
  int k = side == 0 ? phase_.bit : 1 - phase_.bit;
  const ServerSpec& spec = world_.server_spec(phase_.s[side]);
  Handle h{phase_.t[k], phase_.i[k], phase_.j[k]};
  Bytes cid = step.contains("cid") ? B(Resolve(step["cid"])) : Bytes{};

  fido::BoundResponse r;
  if (step.value("client", true)) {
    auto cp = fido::ChallengeWithPolicy::FromJson(Resolve(step.at("challenge")).dump());
    if (!(cp.policy == spec.policy)) throw Error(ErrorCode::kOracleAbort, "policy mismatch");
    cp.id_s = spec.id;
    r = world_.ChallengeWithClient(h, cid, cp, true);
  } else {
    auto pol = nizk::ParsePolicy(Resolve(step.at("policy")).dump());
    if (!(pol == spec.policy)) throw Error(ErrorCode::kOracleAbort, "policy mismatch");
    r = world_.Challenge(h, spec.id, cid, B(Resolve(step.at("bound_challenge"))), true);
  }
  if (h.registration()) phase_.reg_lr.push_back(r.cid);
  else phase_.auth_lr.push_back(cid);
  ++phase_.j[k];
  return Parse(r.ToJson());
}

json Interpreter::Step(const json& step) {
  const std::string op = step.at("op").get<std::string>();

  if (op == "setup") {
    std::vector<ServerSpec> servers;
    for (const auto& s : step.at("servers")) {
      servers.push_back({s.at("id").get<std::string>(),
                         s.contains("policy") ? nizk::ParsePolicy(s["policy"].dump())
                                              : nizk::Policy::None()});
    }
    std::vector<std::optional<eid::Attributes>> tokens;
    for (const auto& t : step.at("tokens")) {
      if (t.is_null()) tokens.emplace_back();
      else tokens.emplace_back(AttributesFromJson(t));
    }
    world_.Setup(servers, tokens);
    return {{"servers", servers.size()}, {"tokens", tokens.size()}};
  }
  if (op == "start") {
    return Parse(world_.Start(HandleOf(step, "server")).ToJson());
  }
  if (op == "challenge") {
    Handle h = HandleOf(step, "token");
    Bytes cid = step.contains("cid") ? B(Resolve(step["cid"])) : Bytes{};
    if (step.value("client", false)) {
      auto cp = fido::ChallengeWithPolicy::FromJson(Resolve(step.at("challenge")).dump());
      return Parse(world_.ChallengeWithClient(h, cid, cp).ToJson());
    }
    return Parse(world_
                     .Challenge(h, Resolve(step.at("id_s")).get<std::string>(), cid,
                                B(Resolve(step.at("bound_challenge"))))
                     .ToJson());
  }
  if (op == "complete") {
    auto resp = fido::BoundResponse::FromJson(Resolve(step.at("response")).dump());
    return {{"accepted", world_.Complete(HandleOf(step, "server"),
                                         B(Resolve(step.at("cid"))), resp)}};
  }
  if (op == "mediator_challenge") {
    auto cp = fido::ChallengeWithPolicy::FromJson(Resolve(step.at("challenge")).dump());
    return {{"c", S(cp.MediatorChallenge())}};
  }
  if (op == "bind") {
    auto proof = client::AttributeProof::FromJson(Resolve(step.at("proof")).dump());
    return {{"bound_challenge", S(fido::BindChallenge(B(Resolve(step.at("rs"))), proof))}};
  }
  if (op == "med_req") {
    auto out = world_.MedReq(step.at("token").get<int>(), B(Resolve(step.at("c"))));
    return ReqToJson(out.req);
  }
  if (op == "med_chal") {
    return ChalToJson(
        world_.MedChal(step.at("session").get<int>(), ReqFromJson(Resolve(step.at("req")))));
  }
  if (op == "med_resp") {
    auto resp = world_.MedResp(step.at("token").get<int>(),
                               ChalFromJson(Resolve(step.at("chal"))));
    return {{"resp", S(resp.Encode())}};
  }
  if (op == "med_attest") {
    auto resp = primitives::Ciphertext::Decode(B(Resolve(step.at("resp")).at("resp")));
    return AttToJson(world_.MedAttest(step.at("session").get<int>(), resp));
  }
  if (op == "set") {
    json value = Resolve(step.at("value"));
    Target(step.at("target").get<std::string>()) = std::move(value);
    return nullptr;
  }
  if (op == "flip") {
    json& t = Target(step.at("target").get<std::string>());
    Bytes b = B(t);
    size_t bit = step.value("bit", 0);
    if (bit / 8 >= b.size()) throw Error(ErrorCode::kInvalidArgument, "bit out of range");
    b[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
    t = S(b);
    return nullptr;
  }
  if (op == "randomize") {
    Target(step.at("target").get<std::string>()) =
        S(primitives::RandomBytes(step.value("bytes", 64)));
    return nullptr;
  }

  // Challenge phases of the bit-guessing experiments.
  if (op == "unl_choose") {
    if (phase_.chosen) throw Error(ErrorCode::kOracleAbort, "challenge phase already ran");
    phase_.t[0] = step.at("t0").get<int>();
    phase_.t[1] = step.at("t1").get<int>();
    phase_.s[0] = step.at("sl").get<int>();
    phase_.s[1] = step.at("sr").get<int>();
    for (int side = 0; side < 2; ++side) {
      const auto& policy = world_.server_spec(phase_.s[side]).policy;
      if (world_.Satisfies(phase_.t[0], policy) != world_.Satisfies(phase_.t[1], policy)) {
        throw Error(ErrorCode::kOracleAbort, "tokens differ on a challenged policy");
      }
    }
    for (int k = 0; k < 2; ++k) {
      int i = 0;
      for (const auto& call : world_.token_calls()) {
        if (call.handle.party == phase_.t[k] && call.handle.registration()) {
          i = std::max(i, call.handle.i + 1);
        }
      }
      phase_.i[k] = i;
    }
    phase_.bit = RandomBit();
    phase_.chosen = true;
    return nullptr;
  }
  if (op == "left") return LeftRight(step, 0);
  if (op == "right") return LeftRight(step, 1);
  if (op == "orig_choose" || op == "att_choose") {
    if (phase_.chosen) throw Error(ErrorCode::kOracleAbort, "challenge phase already ran");
    int server;
    if (op == "orig_choose") {
      phase_.t[0] = phase_.t[1] = step.at("token").get<int>();
      phase_.s[0] = step.at("s0").get<int>();
      phase_.s[1] = step.at("s1").get<int>();
      world_.server_spec(phase_.s[1]);
      phase_.bit = RandomBit();
      server = phase_.s[phase_.bit];
    } else {
      phase_.t[0] = step.at("t0").get<int>();
      phase_.t[1] = step.at("t1").get<int>();
      phase_.s[0] = server = step.at("server").get<int>();
      world_.Reissue(phase_.t[0]);
      world_.Reissue(phase_.t[1]);
      phase_.bit = RandomBit();
    }
    phase_.chosen = true;
    Bytes c = world_.FreshChallenge(server).MediatorChallenge();
    return ReqToJson(world_.RequestAttestation(phase_.t[phase_.bit], c).req);
  }
  if (op == "respond") {
    if (!phase_.chosen || phase_.responded) {
      throw Error(ErrorCode::kOracleAbort, "no pending challenge request");
    }
    phase_.responded = true;
    auto resp =
        world_.MedResp(phase_.t[phase_.bit], ChalFromJson(Resolve(step.at("chal"))));
    return {{"resp", S(resp.Encode())}};
  }
  if (op == "guess") {
    if (phase_.guess) throw Error(ErrorCode::kOracleAbort, "already guessed");
    std::string rule = step.value("rule", "constant");
    int g = 0;
    if (rule == "constant") {
      g = step.value("bit", 0) & 1;
    } else if (rule == "equal") {
      g = Resolve(step.at("a")) == Resolve(step.at("b")) ? 1 : 0;
    } else if (rule == "lsb") {
      Bytes v = B(Resolve(step.at("value")));
      g = v.empty() ? 0 : v[0] & 1;
    } else {
      throw Error(ErrorCode::kOracleAbort, "unknown guess rule " + rule);
    }
    phase_.guess = g;
    return {{"guess", g}};
  }
  throw Error(ErrorCode::kOracleAbort, "unknown op '" + op + "'");
}

}  // namespace fidoac::harness
