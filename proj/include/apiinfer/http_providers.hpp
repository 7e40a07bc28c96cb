#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "apiinfer/providers.hpp"

namespace apiinfer {

// Wire protocol version sent as "v" in every request body.
inline constexpr int kProtocolVersion = 1;

struct HttpEndpoint {
  std::string base_url;  // e.g. "http://127.0.0.1:8080"
  double timeout_s = 30.0;
  int retries = 2;
};

// POSTs `body` to base_url + path and returns the parsed JSON response.
// Retries on transport errors and 5xx; throws ProviderError when exhausted or
// when the sidecar answers with an {"error": ...} payload.
nlohmann::json post_json(const HttpEndpoint& endpoint, const std::string& path, const nlohmann::json& body);

// POST /embed {"v":1,"texts":[...]} -> {"dim":D,"vectors":[[...],...]}
class HttpEmbedder final : public EmbedderPort {
 public:
  explicit HttpEmbedder(HttpEndpoint endpoint);
  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;
  // Asks GET /healthz; falls back to embedding a probe text.
  int dim() const override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
};

// POST /summarize {"v":1,"code":...,"language":...} -> {"docstring":...}
// Code longer than code_char_budget is truncated before sending. Transport
// failures fall back to fallback_summary and set Summary::fell_back.
class HttpSummarizer final : public SummarizerPort {
 public:
  explicit HttpSummarizer(HttpEndpoint endpoint, std::size_t code_char_budget = 4000);
  Summary summarize(std::string_view code, Language lang) const override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
  std::size_t code_char_budget_;
};

// POST /complete {"v":1,"prompt":...,"max_new_tokens":N} -> {"text":...}
class HttpCompletion final : public CompletionPort {
 public:
  explicit HttpCompletion(HttpEndpoint endpoint);
  std::string complete(std::string_view prompt, int max_new_tokens) const override;
  std::string id() const override;

 private:
  HttpEndpoint endpoint_;
};

}  // namespace apiinfer
