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

#include "fidoac/flow/local_service.h"

#include <cstdlib>

#include "fidoac/primitives/error.h"
#include "httplib.h"
#include "json.hpp"

namespace fidoac::flow {

using nlohmann::json;

int ClientServicePort() {
  if (const char* env = std::getenv(std::string(kClientServicePortEnv).c_str())) {
    int port = std::atoi(env);
    if (port > 0 && port < 65536) return port;
  }
  return kDefaultClientServicePort;
}

LocalClientService::LocalClientService(const Deployment& d, client::Client& holder)
    : d_(d), holder_(holder) {}

LocalClientService::~LocalClientService() { Stop(); }

HttpResult LocalClientService::HandleAttributeProof(std::string_view body) {
  try {
    fido::ChallengeWithPolicy challenge = fido::ChallengeWithPolicy::FromJson(body);
    std::lock_guard<std::mutex> lock(mu_);
    ExtensionOutput ext = ProduceExtension(d_, holder_, challenge);
    json out;
    out["proof"] = json::parse(ext.proof.ToJson());
    out["mediator_cert"] = Base64UrlEncode(ext.mediator_cert.Encode());
    out["bound_challenge"] = Base64UrlEncode(ext.bound_challenge);
    return {200, out.dump()};
  } catch (const Error& e) {
    bool client_fault = e.code() == ErrorCode::kMalformed ||
                        e.code() == ErrorCode::kBadPolicy ||
                        e.code() == ErrorCode::kUnsupportedPolicy;
    json err{{"error", ErrorCodeName(e.code())}, {"message", e.what()}};
    return {client_fault ? 400 : 422, err.dump()};
  }
}

int LocalClientService::Start(int port) {
  Stop();
  server_ = std::make_unique<httplib::Server>();
  server_->Post("/fidoac/attribute-proof",
                [this](const httplib::Request& req, httplib::Response& res) {
                  HttpResult r = HandleAttributeProof(req.body);
                  res.status = r.status;
                  res.set_content(r.body, "application/json");
                });
  int bound = port == 0 ? server_->bind_to_any_port("127.0.0.1")
                        : (server_->bind_to_port("127.0.0.1", port) ? port : -1);
  if (bound <= 0) {
    server_.reset();
    throw Error(ErrorCode::kInvalidArgument, "cannot bind client service port");
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return bound;
}

void LocalClientService::Stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace fidoac::flow
