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

// Localhost HTTP endpoint through which a page-side script obtains an
// attribute proof for a FIDO challenge.
//
//   POST /fidoac/attribute-proof
//   body:  {"id_s": ..., "rs": b64u, "extensions": {"fidoac": <policy>}}
//   200:   {"proof": {...}, "mediator_cert": b64u, "bound_challenge": b64u}
//   4xx:   {"error": <code name>, "message": ...}

#ifndef FIDOAC_FLOW_LOCAL_SERVICE_H_
#define FIDOAC_FLOW_LOCAL_SERVICE_H_

#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "fidoac/flow/flow.h"

namespace httplib {
class Server;
}

namespace fidoac::flow {

inline constexpr int kDefaultClientServicePort = 8765;
inline constexpr std::string_view kClientServicePortEnv = "FIDOAC_CLIENT_PORT";

// Port from the environment override, else the default.
int ClientServicePort();

struct HttpResult {
  int status = 200;
  std::string body;
};

class LocalClientService {
 public:
  LocalClientService(const Deployment& d, client::Client& holder);
  ~LocalClientService();

  // Pure handler, usable without a socket.
  HttpResult HandleAttributeProof(std::string_view body);

  // Binds 127.0.0.1:`port` (0 picks a free port) and serves on a background
  // thread. Returns the bound port. Throws Error(kInvalidArgument) if binding
  // fails.
  int Start(int port);
  void Stop();

 private:
  const Deployment& d_;
  client::Client& holder_;
  std::mutex mu_;  // one session at a time per chip
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace fidoac::flow

#endif  // FIDOAC_FLOW_LOCAL_SERVICE_H_
