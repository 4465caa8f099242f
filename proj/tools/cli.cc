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

#include "cli.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "fidoac/acserver/acserver.h"
#include "fidoac/eid/fixture.h"
#include "fidoac/flow/flow.h"
#include "fidoac/flow/local_service.h"
#include "fidoac/harness/experiments.h"
#include "fidoac/primitives/error.h"
#include "golden.h"
#include "json.hpp"

namespace fidoac::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr char kKeysFile[] = "deployment.keys";
constexpr char kAcServerFile[] = "acserver.conf";
constexpr char kDefaultOrigin[] = "https://rp.example";

std::atomic<bool> g_stop{false};

struct Common {
  std::string profile = "test";
  int tau = 0;  // 0 = default for the profile
  bool json = false;
};

uint32_t TauFor(const Common& c, HashProfile profile) {
  return c.tau > 0 ? static_cast<uint32_t>(c.tau) : nizk::DefaultTau(profile);
}

void AddCommon(CLI::App* app, Common& c) {
  app->add_option("--profile", c.profile, "Hash profile: test or default")
      ->check(CLI::IsMember({"test", "default"}));
  app->add_option("--tau", c.tau, "Proof repetitions (default: per profile)")
      ->check(CLI::PositiveNumber);
  app->add_flag("--json", c.json, "JSON report on stdout");
}

// "none", "age_over:N", "age_over:N:YYYYMMDD", or a JSON policy object.
nizk::Policy ParsePolicyFlag(const std::string& text) {
  if (!text.empty() && text[0] == '{') return nizk::ParsePolicy(text);
  if (text == "none") return nizk::Policy::None();
  const std::string prefix = "age_over:";
  if (text.rfind(prefix, 0) != 0) {
    throw Error(ErrorCode::kBadPolicy, "unknown policy '" + text + "'");
  }
  std::string rest = text.substr(prefix.size());
  auto colon = rest.find(':');
  int years = 0;
  try {
    years = std::stoi(rest.substr(0, colon));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kBadPolicy, "age_over needs a number of years");
  }
  eid::Date ref = colon == std::string::npos ? eid::Today()
                                             : eid::ParseYyyymmdd(rest.substr(colon + 1));
  return nizk::ParsePolicy(nizk::Policy::AgeOver(years, ref).ToJson());
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + p.string());
  return {std::istreambuf_iterator<char>(in), {}};
}

void WriteFile(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + p.string());
  out << text;
}

struct StoredDeployment {
  flow::DeploymentOptions options;
  flow::DeploymentKeys keys;
};

void SaveDeployment(const fs::path& dir, const StoredDeployment& s) {
  const auto& k = s.keys;
  eid::WriteKeyValueFile((dir / kKeysFile).string(),
                         {{"issuer_sk", HexEncode(k.issuer.sk)},
                          {"issuer_pk", HexEncode(k.issuer.pk)},
                          {"tee_root_sk", HexEncode(k.tee_root.sk)},
                          {"tee_root_pk", HexEncode(k.tee_root.pk)},
                          {"mediator_sk", HexEncode(k.mediator.sk)},
                          {"mediator_pk", HexEncode(k.mediator.pk)},
                          {"package_cert_fp", HexEncode(k.package_cert_fp.span())},
                          {"package_name", s.options.package_name},
                          {"profile", std::string(ProfileName(s.options.profile))},
                          {"tau", std::to_string(s.options.tau)}});
}

StoredDeployment LoadDeployment(const fs::path& dir) {
  auto kv = eid::ReadKeyValueFile((dir / kKeysFile).string());
  auto hex = [&](const char* key) { return HexDecode(eid::RequireKey(kv, key)); };
  StoredDeployment s;
  s.keys.issuer = {hex("issuer_sk"), hex("issuer_pk")};
  s.keys.tee_root = {hex("tee_root_sk"), hex("tee_root_pk")};
  s.keys.mediator = {hex("mediator_sk"), hex("mediator_pk")};
  Bytes fp = hex("package_cert_fp");
  if (fp.size() != 32) throw Error(ErrorCode::kMalformed, "package_cert_fp must be 32 bytes");
  std::copy(fp.begin(), fp.end(), s.keys.package_cert_fp.bytes.begin());
  s.options.package_name = eid::RequireKey(kv, "package_name");
  s.options.profile = ParseProfile(eid::RequireKey(kv, "profile"));
  s.options.tau = static_cast<uint32_t>(std::stoul(eid::RequireKey(kv, "tau")));
  return s;
}

std::string FormatStages(const flow::StageTimings& t) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "  eid_read    %9.2f ms\n  liveliness  %9.2f ms\n  prove       %9.2f ms\n"
                "  fido_sign   %9.2f ms\n  verify      %9.2f ms\n",
                t.eid_read, t.liveliness, t.prove, t.fido_sign, t.verify);
  return buf;
}

void PrintReport(const flow::FlowReport& r, bool as_json, std::ostream& out) {
  if (as_json) {
    out << r.ToJson() << "\n";
    return;
  }
  out << fido::FlowName(r.flow) << ": "
      << (r.accepted ? "accepted" : "rejected at " + std::string(flow::StageName(r.failed_stage)))
      << " (" << r.wall_ms << " ms)\n";
  if (!r.error.empty()) out << "  error: " << r.error << "\n";
  if (!r.accepted && r.failed_stage == flow::Stage::kVerify) {
    for (const auto& tag : r.result.ac.FailedChecks()) out << "  failed: " << tag << "\n";
    if (!r.result.b_fido) out << "  failed: b_fido\n";
  }
  out << FormatStages(r.ms);
}

void WaitForSignal() {
  g_stop = false;
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

// Birth date `years` before today, as YYMMDD. 29 February falls back to the
// 28th.
std::string BornYearsAgo(int years) {
  eid::Date t = eid::Today();
  eid::Date b{t.year - years, t.month, t.day};
  if (!eid::IsValidDate(b)) b.day = 28;
  return b.ToYyyymmdd().substr(2);
}

int CmdIssue(const Common& c, const std::string& dir, const std::string& id,
             const eid::Attributes& att, std::ostream& out) {
  fs::create_directories(dir);
  HashProfile profile = ParseProfile(c.profile);
  StoredDeployment s;
  if (fs::exists(fs::path(dir) / kKeysFile)) {
    s = LoadDeployment(dir);
    if (s.options.profile != profile) {
      throw Error(ErrorCode::kInvalidArgument,
                  "fixtures in " + dir + " use profile " +
                      std::string(ProfileName(s.options.profile)));
    }
  } else {
    s.options.profile = profile;
    s.options.tau = TauFor(c, profile);
    s.keys = flow::DeploymentKeys::Generate();
    SaveDeployment(dir, s);
    flow::Deployment d(s.options, s.keys);
    acserver::Config config;
    config.trust = d.Trust();
    WriteFile(fs::path(dir) / kAcServerFile, config.Format());
  }
  flow::Deployment d(s.options, s.keys);
  eid::Chip chip = d.Issue(att, eid::Today());
  fs::path path = fs::path(dir) / (id + ".eid");
  WriteFile(path, eid::SaveChipFixture(chip));
  if (c.json) {
    out << json{{"eid", path.string()},
                {"dg1_hash", HexEncode(chip.public_data().dg1_hash.span())},
                {"profile", ProfileName(profile)}}
               .dump()
        << "\n";
  } else {
    out << "issued " << path.string() << "\n";
  }
  return kExitAccepted;
}

int CmdRun(const Common& c, const std::string& dir, const std::string& id,
           const std::string& policy_text, const std::string& flow_name,
           const std::string& origin, std::ostream& out) {
  StoredDeployment s = LoadDeployment(dir);
  if (c.tau > 0) s.options.tau = static_cast<uint32_t>(c.tau);
  flow::Deployment d(s.options, s.keys);
  eid::Chip chip = eid::LoadChipFixture(ReadFile(fs::path(dir) / (id + ".eid")));
  client::Client holder(&chip, eid::DeriveAccessPassword(chip.attributes()));
  fido::Token token;
  fido::RelyingParty rp(origin, ParsePolicyFlag(policy_text), d.Trust());

  flow::FlowReport reg = flow::RunFlow(d, holder, token, rp, fido::Flow::kRegister);
  PrintReport(reg, c.json, out);
  if (flow_name == "register" || !reg.accepted) return reg.ExitCode();
  flow::FlowReport auth =
      flow::RunFlow(d, holder, token, rp, fido::Flow::kAuthenticate, reg.cid);
  PrintReport(auth, c.json, out);
  return auth.ExitCode();
}

struct Moments {
  double mean = 0;
  double stddev = 0;
};

Moments Summarize(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return m;
}

int CmdBench(const Common& c, int n, std::ostream& out, std::ostream& err) {
  HashProfile profile = ParseProfile(c.profile);
  flow::Deployment d({profile, TauFor(c, profile), std::string(flow::kDefaultPackageName)});
  eid::Chip chip =
      d.Issue({"Bench Holder", BornYearsAgo(33), "391231", "DEU", "X", "", ""}, eid::Today());
  client::Client holder(&chip, eid::DeriveAccessPassword(chip.attributes()));
  fido::Token token;
  fido::RelyingParty rp(kDefaultOrigin, nizk::Policy::AgeOver(18, eid::Today()), d.Trust());

  static constexpr const char* kStages[] = {"eid_read", "liveliness", "prove", "fido_sign",
                                            "verify"};
  std::vector<std::vector<double>> samples(std::size(kStages));
  for (int i = 0; i < n; ++i) {
    flow::FlowReport r = flow::RunFlow(d, holder, token, rp, fido::Flow::kRegister);
    if (!r.accepted) {
      err << "bench run " << i << " failed: " << r.error << "\n";
      return r.ExitCode();
    }
    double v[] = {r.ms.eid_read, r.ms.liveliness, r.ms.prove, r.ms.fido_sign, r.ms.verify};
    for (size_t k = 0; k < std::size(kStages); ++k) samples[k].push_back(v[k]);
  }

  json rows = json::array();
  std::vector<Moments> m;
  for (size_t k = 0; k < std::size(kStages); ++k) {
    m.push_back(Summarize(samples[k]));
    if (n > 0) rows.push_back({{"stage", kStages[k]}, {"mean_ms", m[k].mean},
                               {"stddev_ms", m[k].stddev}});
  }
  bool ordered = n == 0 || m[4].mean < m[2].mean;
  if (c.json) {
    out << json{{"profile", ProfileName(profile)}, {"tau", TauFor(c, profile)},
                {"iterations", n}, {"stages", rows}, {"verify_below_prove", ordered}}
               .dump()
        << "\n";
  } else {
    out << "profile " << ProfileName(profile) << ", tau " << TauFor(c, profile) << ", "
        << n << " runs\n";
    for (const auto& row : rows) {
      char buf[128];
      std::snprintf(buf, sizeof(buf), "  %-11s %10.3f ms  sd %8.3f\n",
                    row["stage"].get<std::string>().c_str(), row["mean_ms"].get<double>(),
                    row["stddev_ms"].get<double>());
      out << buf;
    }
  }
  if (!ordered) {
    err << "verify mean is not below prove mean\n";
    return kExitUsage;
  }
  return kExitAccepted;
}

int CmdExperiment(const Common& c, const std::string& path, int trials, std::ostream& out) {
  harness::Script script = harness::Script::Load(path);
  HashProfile profile = ParseProfile(c.profile);
  harness::WorldOptions options;
  options.profile = profile;
  options.tau = TauFor(c, profile);
  if (trials <= 1) {
    harness::Verdict v = harness::RunScript(script, options);
    if (c.json) {
      out << v.ToJson() << "\n";
    } else {
      out << ExperimentName(v.experiment) << " " << v.script << ": win=" << v.win
          << (v.aborted ? " (aborted: " + v.abort_reason + ")" : "") << "\n";
    }
    return kExitAccepted;
  }
  harness::WinRate r = harness::EstimateWinRate(script, trials, options);
  if (c.json) {
    out << json{{"experiment", ExperimentName(script.experiment)}, {"script", script.name},
                {"trials", r.trials}, {"wins", r.wins}, {"aborts", r.aborts},
                {"rate", r.rate()}}
               .dump()
        << "\n";
  } else {
    out << ExperimentName(script.experiment) << " " << script.name << ": " << r.wins << "/"
        << r.trials << " wins (rate " << r.rate() << ", " << r.aborts << " aborts)\n";
  }
  return kExitAccepted;
}

int CmdServe(const Common& c, const std::string& role, const std::string& config_path,
             const std::string& dir, const std::string& id, int port, std::ostream& out) {
  if (role == "acserver") {
    acserver::Config config = acserver::Config::Load(
        config_path.empty() ? (fs::path(dir) / kAcServerFile).string() : config_path);
    acserver::AcServer server(config);
    int bound = server.Start(acserver::ResolvePort(port, config));
    out << "acserver listening on 127.0.0.1:" << bound << std::endl;
    WaitForSignal();
    server.Stop();
    return kExitAccepted;
  }
  StoredDeployment s = LoadDeployment(dir);
  if (c.tau > 0) s.options.tau = static_cast<uint32_t>(c.tau);
  flow::Deployment d(s.options, s.keys);
  eid::Chip chip = eid::LoadChipFixture(ReadFile(fs::path(dir) / (id + ".eid")));
  client::Client holder(&chip, eid::DeriveAccessPassword(chip.attributes()));
  flow::LocalClientService service(d, holder);
  int bound = service.Start(port > 0 ? port : flow::ClientServicePort());
  out << "client service listening on 127.0.0.1:" << bound << std::endl;
  WaitForSignal();
  service.Stop();
  return kExitAccepted;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"FIDO2 authentication with attested eID attributes"};
  app.require_subcommand(1);
  Common common;
  std::string dir = "fixtures";

  auto* issue = app.add_subcommand("issue", "Issue a simulated eID into a fixtures directory");
  std::string id;
  eid::Attributes att{"", "", "391231", "DEU", "X", "", ""};
  AddCommon(issue, common);
  issue->add_option("--fixtures", dir, "Fixtures directory");
  issue->add_option("--id", id, "Fixture name")->required();
  issue->add_option("--name", att.name, "Holder name")->required();
  issue->add_option("--birth", att.birth_date, "Birth date YYMMDD")->required();
  issue->add_option("--expiry", att.expiry_date, "Expiry date YYMMDD");
  issue->add_option("--nationality", att.nationality, "Three-letter code");
  issue->add_option("--sex", att.sex, "One character");

  auto* run = app.add_subcommand("run", "Register, and optionally authenticate, in-process");
  std::string policy = "age_over:18";
  std::string flow_name = "authenticate";
  std::string origin = kDefaultOrigin;
  AddCommon(run, common);
  run->add_option("--fixtures", dir, "Fixtures directory");
  run->add_option("--eid", id, "eID fixture name")->required();
  run->add_option("--policy", policy, "none | age_over:N[:YYYYMMDD] | JSON");
  run->add_option("--flow", flow_name, "register or authenticate (registers first)")
      ->check(CLI::IsMember({"register", "authenticate"}));
  run->add_option("--origin", origin, "Relying-party identifier");

  auto* bench = app.add_subcommand("bench", "Per-stage timings over repeated registrations");
  int iterations = 10;
  AddCommon(bench, common);
  bench->add_option("-n,--iterations", iterations, "Runs")->check(CLI::NonNegativeNumber);

  auto* serve = app.add_subcommand("serve", "Run the attribute-check server or client service");
  std::string role = "acserver";
  std::string config_path;
  int port = 0;
  AddCommon(serve, common);
  serve->add_option("role", role, "acserver or client")
      ->check(CLI::IsMember({"acserver", "client"}));
  serve->add_option("--config", config_path, "acserver config (default: fixtures)");
  serve->add_option("--fixtures", dir, "Fixtures directory");
  serve->add_option("--eid", id, "eID fixture for the client service");
  serve->add_option("--port", port, "Port (default: environment, then config)");

  auto* experiment = app.add_subcommand("experiment", "Run an adversary script");
  std::string script_path;
  int trials = 1;
  AddCommon(experiment, common);
  experiment->add_option("script", script_path, "Script JSON")->required();
  experiment->add_option("--trials", trials, "Independent runs")->check(CLI::PositiveNumber);

  auto* golden = app.add_subcommand("golden", "Write bind_challenge vectors");
  std::string golden_out;
  int count = kDefaultGoldenCount;
  uint64_t seed = kDefaultGoldenSeed;
  golden->add_option("--out", golden_out, "Output file (default: stdout)");
  golden->add_option("--count", count, "Vectors")->check(CLI::PositiveNumber);
  golden->add_option("--seed", seed, "Generator seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitAccepted : kExitUsage;
  }

  try {
    if (*issue) return CmdIssue(common, dir, id, att, out);
    if (*run) return CmdRun(common, dir, id, policy, flow_name, origin, out);
    if (*bench) return CmdBench(common, iterations, out, err);
    if (*serve) {
      if (role == "client" && id.empty()) {
        err << "serve client needs --eid\n";
        return kExitUsage;
      }
      return CmdServe(common, role, config_path, dir, id, port, out);
    }
    if (*experiment) return CmdExperiment(common, script_path, trials, out);
    if (*golden) {
      std::string text = BindVectors(count, seed).dump(1) + "\n";
      if (golden_out.empty()) out << text;
      else WriteFile(golden_out, text);
      return kExitAccepted;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fidoac::cli
