#include "traceforge/chat_client.hpp"

#include <fstream>
#include <sstream>

#include "traceforge/rng.hpp"
#include "traceforge/unicode.hpp"

#include "httplib.h"
#include "json.hpp"

namespace traceforge {

std::string_view role_name(Role r) {
  switch (r) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

std::string request_fingerprint(const std::vector<ChatMessage>& messages,
                                const ChatParams& params) {
  std::string canon;
  for (const ChatMessage& m : messages) {
    canon += role_name(m.role);
    canon += '\x1f';
    canon += m.text;
    canon += '\x1e';
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "t=%.6g;m=%d", params.temperature, params.max_tokens);
  canon += buf;

  uint64_t h = fnv1a64(canon);
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FileMockClient::FileMockClient(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TransportError("cannot open mock response file " + path.string());
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim_view(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("fingerprint") ||
        !j.contains("response")) {
      throw TransportError(path.string() + ": bad mock entry at line " + std::to_string(line_no));
    }
    responses_[j["fingerprint"].get<std::string>()] = j["response"].get<std::string>();
  }
}

std::string FileMockClient::complete(const std::vector<ChatMessage>& messages,
                                     const ChatParams& params) {
  std::string fp = request_fingerprint(messages, params);
  auto it = responses_.find(fp);
  if (it == responses_.end()) {
    throw TransportError("no canned response for request fingerprint " + fp);
  }
  return it->second;
}

HttpChatClient::HttpChatClient(Options options) : options_(std::move(options)) {}

std::string HttpChatClient::complete(const std::vector<ChatMessage>& messages,
                                     const ChatParams& params) {
  nlohmann::json body;
  body["model"] = options_.model;
  body["temperature"] = params.temperature;
  body["max_tokens"] = params.max_tokens;
  auto& msgs = body["messages"] = nlohmann::json::array();
  for (const ChatMessage& m : messages) {
    msgs.push_back({{"role", std::string(role_name(m.role))}, {"content", m.text}});
  }

  // One connection per call; httplib clients are not safe to share across
  // threads and completions dominate the cost anyway.
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds, 0);
  client.set_read_timeout(options_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }

  auto res = client.Post(options_.path, headers, body.dump(), "application/json");
  if (!res) {
    std::ostringstream os;
    os << "request to " << options_.base_url << options_.path << " failed: "
       << httplib::to_string(res.error());
    throw TransportError(os.str());
  }
  if (res->status != 200) {
    throw TransportError("endpoint returned status " + std::to_string(res->status) + ": " +
                         res->body.substr(0, 256));
  }
  nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
  if (j.is_discarded()) throw TransportError("endpoint returned malformed JSON");
  try {
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw TransportError(std::string("unexpected completion payload: ") + e.what());
  }
}

}  // namespace traceforge
