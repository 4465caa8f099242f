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

#include "fidoac/acserver/acserver.h"

#include <charconv>

#include "fidoac/client/attribute_proof.h"
#include "fidoac/mediator/key_attestation.h"
#include "fidoac/primitives/error.h"
#include "httplib.h"
#include "json.hpp"

namespace fidoac::acserver {

using nlohmann::json;

namespace {

Response ErrorResponse(ErrorCode code, std::string_view message) {
  return {400, json{{"error", ErrorCodeName(code)}, {"message", message}}.dump()};
}

const std::string& Param(const std::map<std::string, std::string>& params,
                         const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorCode::kMalformed, "missing query parameter '" + key + "'");
  }
  return it->second;
}

std::string StringField(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw Error(ErrorCode::kMalformed, std::string("missing string field ") + key);
  }
  return j[key].get<std::string>();
}

}  // namespace

AcServer::AcServer(Config config) : config_(std::move(config)) {}

AcServer::~AcServer() { Stop(); }

Response AcServer::HandleCrs(const std::map<std::string, std::string>& params) const {
  try {
    nizk::Policy policy = nizk::ParsePolicy(std::string_view(Param(params, "policy")));
    HashProfile profile;
    try {
      profile = ParseProfile(Param(params, "profile"));
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformed, e.what());
    }
    const std::string& tau_text = Param(params, "tau");
    uint32_t tau = 0;
    auto [p, ec] = std::from_chars(tau_text.data(), tau_text.data() + tau_text.size(), tau);
    if (ec != std::errc() || p != tau_text.data() + tau_text.size()) {
      throw Error(ErrorCode::kMalformed, "tau must be a decimal integer");
    }
    auto crs = fido::CachedCrs(policy, profile, tau);
    json out{{"crs", Base64UrlEncode(crs->Encode())},
             {"digest", HexEncode(crs->Digest().span())}};
    return {200, out.dump()};
  } catch (const Error& e) {
    return ErrorResponse(e.code(), e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(ErrorCode::kMalformed, e.what());
  }
}

Response AcServer::HandleVerify(std::string_view body) const {
  client::AttributeProof proof;
  nizk::Policy policy;
  Bytes challenge;
  mediator::KeyAttestationCert cert;
  try {
    json j = json::parse(body, nullptr, /*allow_exceptions=*/false);
    if (!j.is_object()) throw Error(ErrorCode::kMalformed, "body must be a JSON object");
    if (!j.contains("proof") || !j["proof"].is_object() || !j.contains("policy") ||
        !j["policy"].is_object()) {
      throw Error(ErrorCode::kMalformed, "proof and policy must be objects");
    }
    proof = client::AttributeProof::FromJson(j["proof"].dump());
    policy = nizk::ParsePolicy(std::string_view(j["policy"].dump()));
    challenge = Base64UrlDecode(StringField(j, "challenge"));
    cert = mediator::KeyAttestationCert::Decode(
        Base64UrlDecode(StringField(j, "mediator_cert")));
  } catch (const Error& e) {
    return ErrorResponse(e.code(), e.what());
  } catch (const std::exception& e) {
    return ErrorResponse(ErrorCode::kMalformed, e.what());
  }

  fido::CheckAcResult r;
  try {
    r = fido::CheckAc(proof, policy, challenge, cert, config_.trust);
  } catch (const std::exception&) {
    // CheckAc does not throw; keep the service total regardless.
  }
  json out{{"ok", r.ok()}, {"reasons", r.FailedChecks()}};
  return {200, out.dump()};
}

void AcServer::Install(httplib::Server& server) const {
  server.Get("/crs", [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    Response r = HandleCrs(params);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  server.Post("/verify", [this](const httplib::Request& req, httplib::Response& res) {
    Response r = HandleVerify(req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        Response r = ErrorResponse(ErrorCode::kMalformed, "request could not be processed");
        res.status = r.status;
        res.set_content(r.body, "application/json");
      });
}

int AcServer::Start(int port) {
  Stop();
  server_ = std::make_unique<httplib::Server>();
  Install(*server_);
  int bound = port == 0 ? server_->bind_to_any_port("127.0.0.1")
                        : (server_->bind_to_port("127.0.0.1", port) ? port : -1);
  if (bound <= 0) {
    server_.reset();
    throw Error(ErrorCode::kInvalidArgument, "cannot bind acserver port");
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

bool AcServer::Listen(const std::string& host, int port) {
  Stop();
  server_ = std::make_unique<httplib::Server>();
  Install(*server_);
  return server_->listen(host, port);
}

void AcServer::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace fidoac::acserver
