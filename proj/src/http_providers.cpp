#include "apiinfer/http_providers.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>

#include "apiinfer/error.hpp"

namespace apiinfer {

using nlohmann::json;

namespace {

httplib::Client make_client(const HttpEndpoint& endpoint) {
  httplib::Client cli(endpoint.base_url);
  const auto usec = std::chrono::microseconds(static_cast<long long>(endpoint.timeout_s * 1e6));
  cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(usec).count(),
                             static_cast<long>(usec.count() % 1000000));
  cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(usec).count(),
                       static_cast<long>(usec.count() % 1000000));
  cli.set_write_timeout(std::chrono::duration_cast<std::chrono::seconds>(usec).count(),
                        static_cast<long>(usec.count() % 1000000));
  return cli;
}

}  // namespace

json post_json(const HttpEndpoint& endpoint, const std::string& path, const json& body) {
  std::string last_error = "no attempt made";
  for (int attempt = 0; attempt <= endpoint.retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
    auto cli = make_client(endpoint);
    auto res = cli.Post(path, body.dump(), "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    json payload;
    try {
      payload = json::parse(res->body);
    } catch (const json::exception& e) {
      last_error = "malformed response: " + std::string(e.what());
      if (res->status >= 500) continue;
      break;
    }
    if (res->status >= 500) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    if (res->status >= 400 || payload.contains("error")) {
      throw ProviderError(endpoint.base_url + path + ": " +
                          payload.value("error", "status " + std::to_string(res->status)));
    }
    return payload;
  }
  throw ProviderError(endpoint.base_url + path + ": " + last_error);
}

HttpEmbedder::HttpEmbedder(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

std::string HttpEmbedder::id() const { return "http-embed@" + endpoint_.base_url; }

std::vector<Embedding> HttpEmbedder::embed(const std::vector<std::string>& texts) const {
  const auto res = post_json(endpoint_, "/embed", json{{"v", kProtocolVersion}, {"texts", texts}});
  std::vector<Embedding> out;
  try {
    const int dim = res.at("dim").get<int>();
    const auto& rows = res.at("vectors");
    if (rows.size() != texts.size()) throw ProviderError("/embed returned " + std::to_string(rows.size()) +
                                                         " vectors for " + std::to_string(texts.size()) + " texts");
    for (const auto& row : rows) {
      const auto values = row.get<std::vector<double>>();
      if (static_cast<int>(values.size()) != dim) throw ProviderError("/embed vector dimension mismatch");
      Embedding v = Eigen::Map<const Embedding>(values.data(), dim);
      normalize_in_place(v);
      out.push_back(std::move(v));
    }
  } catch (const json::exception& e) {
    throw ProviderError(std::string("/embed response does not match the protocol: ") + e.what());
  }
  return out;
}

int HttpEmbedder::dim() const {
  auto cli = make_client(endpoint_);
  if (auto res = cli.Get("/healthz"); res && res->status == 200) {
    try {
      return json::parse(res->body).at("dim").get<int>();
    } catch (const json::exception&) {
    }
  }
  return static_cast<int>(embed_one("probe").size());
}

HttpSummarizer::HttpSummarizer(HttpEndpoint endpoint, std::size_t code_char_budget)
    : endpoint_(std::move(endpoint)), code_char_budget_(code_char_budget) {}

std::string HttpSummarizer::id() const { return "http-summarize@" + endpoint_.base_url; }

Summary HttpSummarizer::summarize(std::string_view code, Language lang) const {
  try {
    const auto res = post_json(endpoint_, "/summarize",
                               json{{"v", kProtocolVersion},
                                    {"code", std::string(code.substr(0, code_char_budget_))},
                                    {"language", std::string(to_string(lang))}});
    auto doc = res.at("docstring").get<std::string>();
    if (!doc.empty()) return {std::move(doc), false};
  } catch (const std::exception&) {
  }
  return {fallback_summary(code, lang), true};
}

HttpCompletion::HttpCompletion(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}

std::string HttpCompletion::id() const { return "http-complete@" + endpoint_.base_url; }

std::string HttpCompletion::complete(std::string_view prompt, int max_new_tokens) const {
  const auto res = post_json(endpoint_, "/complete",
                             json{{"v", kProtocolVersion}, {"prompt", std::string(prompt)}, {"max_new_tokens", max_new_tokens}});
  try {
    return res.at("text").get<std::string>();
  } catch (const json::exception& e) {
    throw ProviderError(std::string("/complete response does not match the protocol: ") + e.what());
  }
}

}  // namespace apiinfer
