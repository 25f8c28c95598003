#pragma once
// Chat-completion client contract plus the two shipped implementations: an
// HTTP client speaking the common JSON chat-completion protocol, and a
// file-backed deterministic mock for tests (request fingerprint -> canned
// response). Implementations must tolerate concurrent complete() calls.

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace traceforge {

enum class Role { system, user, assistant };

std::string_view role_name(Role r);

struct ChatMessage {
  Role role = Role::user;
  std::string text;
};

struct ChatParams {
  double temperature = 0.0;
  int max_tokens = 4096;
};

class TransportError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ChatClient {
public:
  virtual ~ChatClient() = default;
  // Returns the completion text; throws TransportError on transport or
  // model failure.
  virtual std::string complete(const std::vector<ChatMessage>& messages,
                               const ChatParams& params) = 0;
};

// Stable hex digest of a request; the mock's lookup key.
std::string request_fingerprint(const std::vector<ChatMessage>& messages,
                                const ChatParams& params);

// JSONL file of {"fingerprint": "...", "response": "..."}. Unknown
// fingerprints raise TransportError, which the pipeline quarantines.
class FileMockClient : public ChatClient {
public:
  explicit FileMockClient(const std::filesystem::path& path);
  std::string complete(const std::vector<ChatMessage>& messages,
                       const ChatParams& params) override;

  size_t size() const { return responses_.size(); }

private:
  std::unordered_map<std::string, std::string> responses_;
};

// POSTs {model, messages, temperature, max_tokens} to
// {base_url}{path} and returns choices[0].message.content.
class HttpChatClient : public ChatClient {
public:
  struct Options {
    std::string base_url;  // e.g. "https://api.example.com"
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string api_key;  // sent as a bearer token when non-empty
    int timeout_seconds = 120;
  };

  explicit HttpChatClient(Options options);
  std::string complete(const std::vector<ChatMessage>& messages,
                       const ChatParams& params) override;

private:
  Options options_;
};

}  // namespace traceforge
