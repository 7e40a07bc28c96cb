#include "apiinfer/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "apiinfer/error.hpp"

namespace apiinfer {

using nlohmann::json;

namespace {

constexpr std::pair<Mode, std::string_view> kModes[] = {
    {Mode::infile, "infile"},     {Mode::draft_only, "draft_only"}, {Mode::base, "base"},
    {Mode::plus_uer, "plus_uer"}, {Mode::plus_fsr, "plus_fsr"},     {Mode::full, "full"},
    {Mode::aim_over_external_draft, "aim_over_external_draft"},
};

constexpr std::pair<IdMatchMode, std::string_view> kIdModes[] = {
    {IdMatchMode::multiset, "multiset"}, {IdMatchMode::set, "set"}, {IdMatchMode::sequence, "sequence"}};

}  // namespace

std::string_view to_string(Mode mode) {
  for (const auto& [m, n] : kModes) {
    if (m == mode) return n;
  }
  return "unknown";
}

Mode mode_from_string(std::string_view name) {
  for (const auto& [m, n] : kModes) {
    if (n == name) return m;
  }
  throw Error("unknown mode: " + std::string(name));
}

std::string_view to_string(IdMatchMode mode) {
  for (const auto& [m, n] : kIdModes) {
    if (m == mode) return n;
  }
  return "unknown";
}

IdMatchMode id_match_mode_from_string(std::string_view name) {
  for (const auto& [m, n] : kIdModes) {
    if (n == name) return m;
  }
  throw Error("unknown id match mode: " + std::string(name));
}

json to_json(const RunConfig& c) {
  return json{{"repo_root", c.repo_root},
              {"language", to_string(c.language)},
              {"window_len", c.window_len},
              {"slide", c.slide},
              {"k", c.k},
              {"total_budget", c.total_budget},
              {"max_new_tokens", c.max_new_tokens},
              {"dim", c.dim},
              {"mode", to_string(c.mode)},
              {"seed", c.seed},
              {"workers", c.workers},
              {"rounds", c.rounds},
              {"uer_before_fsr", c.uer_before_fsr},
              {"id_match", to_string(c.id_match)},
              {"excludes", c.excludes},
              {"embedder", c.embedder},
              {"summarizer", c.summarizer},
              {"llm", c.llm},
              {"embed_url", c.embed_url},
              {"summarize_url", c.summarize_url},
              {"complete_url", c.complete_url},
              {"mock_oracle", c.mock_oracle},
              {"timeout_s", c.timeout_s},
              {"retries", c.retries},
              {"summarize_char_budget", c.summarize_char_budget}};
}

void merge_config(RunConfig& c, const json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  const json known = to_json(c);
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw Error("unknown config key: " + key);
  }
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("repo_root", c.repo_root);
    if (j.contains("language")) c.language = language_from_string(j.at("language").get<std::string>());
    get("window_len", c.window_len);
    get("slide", c.slide);
    get("k", c.k);
    get("total_budget", c.total_budget);
    get("max_new_tokens", c.max_new_tokens);
    get("dim", c.dim);
    if (j.contains("mode")) c.mode = mode_from_string(j.at("mode").get<std::string>());
    get("seed", c.seed);
    get("workers", c.workers);
    get("rounds", c.rounds);
    get("uer_before_fsr", c.uer_before_fsr);
    if (j.contains("id_match")) c.id_match = id_match_mode_from_string(j.at("id_match").get<std::string>());
    get("excludes", c.excludes);
    get("embedder", c.embedder);
    get("summarizer", c.summarizer);
    get("llm", c.llm);
    get("embed_url", c.embed_url);
    get("summarize_url", c.summarize_url);
    get("complete_url", c.complete_url);
    get("mock_oracle", c.mock_oracle);
    get("timeout_s", c.timeout_s);
    get("retries", c.retries);
    get("summarize_char_budget", c.summarize_char_budget);
  } catch (const json::exception& e) {
    throw Error(std::string("invalid config value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(std::string("invalid config value: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  RunConfig cfg;
  try {
    merge_config(cfg, json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(path + ": " + e.what());
  }
  return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
  if (const char* v = std::getenv("APIINFER_EMBED_URL")) cfg.embed_url = v;
  if (const char* v = std::getenv("APIINFER_SUMMARIZE_URL")) cfg.summarize_url = v;
  if (const char* v = std::getenv("APIINFER_COMPLETE_URL")) cfg.complete_url = v;
}

}  // namespace apiinfer
