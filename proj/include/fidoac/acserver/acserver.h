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

// Stateless verification service for relying parties.
//
//   GET  /crs?policy=<json>&profile=test|default&tau=<n>
//        200 {"crs": b64u, "digest": hex}
//   POST /verify
//        {"proof": {...}, "policy": {...}, "challenge": b64u,
//         "mediator_cert": b64u}
//        200 {"ok": bool, "reasons": [...]}
//
// Malformed requests get 400 with {"error": ..., "message": ...}.

#ifndef FIDOAC_ACSERVER_ACSERVER_H_
#define FIDOAC_ACSERVER_ACSERVER_H_

#include <map>
#include <memory>
#include <string>
#include <thread>

#include "fidoac/acserver/config.h"

namespace httplib {
class Server;
}

namespace fidoac::acserver {

struct Response {
  int status = 200;
  std::string body;
  bool operator==(const Response&) const = default;
};

class AcServer {
 public:
  explicit AcServer(Config config);
  ~AcServer();

  Response HandleCrs(const std::map<std::string, std::string>& params) const;
  Response HandleVerify(std::string_view body) const;

  // Serves on 127.0.0.1:`port` (0 picks one) in a background thread and
  // returns the bound port. Throws Error(kInvalidArgument) if binding fails.
  int Start(int port);
  // Blocks serving on `host`:`port`.
  bool Listen(const std::string& host, int port);
  void Stop();

  const Config& config() const { return config_; }

 private:
  void Install(httplib::Server& server) const;

  Config config_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace fidoac::acserver

#endif  // FIDOAC_ACSERVER_ACSERVER_H_
