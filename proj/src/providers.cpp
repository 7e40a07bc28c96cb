#include "apiinfer/providers.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <nlohmann/json.hpp>

#include "apiinfer/error.hpp"
#include "apiinfer/usage_examples.hpp"

namespace apiinfer {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// ------------------------------------------------------------ HashEmbedder

HashEmbedder::HashEmbedder(int dim, Language lang) : dim_(dim), lang_(lang) {
  if (dim < 1) throw Error("hash embedder dimension must be >= 1");
}

std::string HashEmbedder::id() const { return "hash-bow-fnv1a-" + std::to_string(dim_); }

std::size_t HashEmbedder::bucket(std::string_view token) const {
  return static_cast<std::size_t>(fnv1a64(token) % static_cast<std::uint64_t>(dim_));
}

std::vector<Embedding> HashEmbedder::embed(const std::vector<std::string>& texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    Embedding v = Embedding::Zero(dim_);
    for (const auto& tok : tokenize(text, lang_)) v(static_cast<Eigen::Index>(bucket(tok.text))) += 1.0;
    normalize_in_place(v);
    out.push_back(std::move(v));
  }
  return out;
}

// ------------------------------------------------------------ summaries

namespace {

bool is_op(const Token& t, std::string_view s) { return t.kind == TokenKind::op && t.text == s; }

std::size_t match_paren(const std::vector<Token>& toks, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::op) continue;
    const auto& s = toks[i].text;
    if (s == "(" || s == "[" || s == "{") ++depth;
    if ((s == ")" || s == "]" || s == "}") && --depth == 0) return i;
  }
  return toks.size();
}

// Depth-0 comma separated parts of (open, close).
std::vector<std::pair<std::size_t, std::size_t>> arg_parts(const std::vector<Token>& toks, std::size_t open,
                                                           std::size_t close, bool angle) {
  std::vector<std::pair<std::size_t, std::size_t>> parts;
  int depth = 0;
  std::size_t begin = open + 1;
  for (std::size_t i = open + 1; i < close; ++i) {
    const auto& s = toks[i].text;
    if (toks[i].kind != TokenKind::op) continue;
    if (s == "(" || s == "[" || s == "{" || (angle && s == "<")) ++depth;
    if (s == ")" || s == "]" || s == "}" || (angle && s == ">")) --depth;
    if (s == "," && depth == 0) {
      parts.emplace_back(begin, i);
      begin = i + 1;
    }
  }
  if (begin < close) parts.emplace_back(begin, close);
  return parts;
}

std::string sentence(std::string_view name, const std::vector<std::string>& params) {
  std::string out = "Performs";
  for (const auto& w : split_identifier_words(name)) out += " " + w;
  if (!params.empty()) {
    out += " given ";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out += ", ";
      out += params[i];
    }
  }
  return out + ".";
}

}  // namespace

std::vector<std::string> split_identifier_words(std::string_view name) {
  std::vector<std::string> words;
  std::string cur;
  for (char c : snake_case(name)) {
    if (c == '_') {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

std::string fallback_summary(std::string_view code, Language lang) {
  const auto toks = tokenize(code, lang);
  if (toks.empty()) return {};

  // A definition header.
  for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
    std::size_t name = toks.size();
    if (lang == Language::python && toks[i].text == "def" && toks[i + 1].kind == TokenKind::identifier &&
        is_op(toks[i + 2], "(")) {
      name = i + 1;
    } else if (lang == Language::java && toks[i + 1].kind == TokenKind::identifier && is_op(toks[i + 2], "(") &&
               (toks[i].kind == TokenKind::identifier || toks[i].kind == TokenKind::keyword ||
                is_op(toks[i], ">") || is_op(toks[i], "]")) &&
               toks[i].text != "new" && toks[i].text != "return" && toks[i].text != "throw") {
      const std::size_t close = match_paren(toks, i + 2);
      if (close + 1 < toks.size() && (is_op(toks[close + 1], "{") || toks[close + 1].text == "throws")) {
        name = i + 1;
      }
    }
    if (name == toks.size()) continue;
    const std::size_t close = match_paren(toks, name + 1);
    std::vector<std::string> params;
    for (auto [b, e] : arg_parts(toks, name + 1, std::min(close, toks.size()), lang == Language::java)) {
      if (lang == Language::python) {
        std::size_t j = b;
        while (j < e && (is_op(toks[j], "*") || is_op(toks[j], "**"))) ++j;
        if (j < e && toks[j].kind == TokenKind::identifier && toks[j].text != "self" && toks[j].text != "cls") {
          params.push_back(toks[j].text);
        }
      } else {
        for (std::size_t j = e; j > b; --j) {
          if (toks[j - 1].kind == TokenKind::identifier) {
            params.push_back(toks[j - 1].text);
            break;
          }
        }
      }
    }
    return sentence(toks[name].text, params);
  }

  // A call expression.
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::identifier || !is_op(toks[i + 1], "(")) continue;
    const std::size_t close = match_paren(toks, i + 1);
    std::vector<std::string> args;
    for (auto [b, e] : arg_parts(toks, i + 1, std::min(close, toks.size()), false)) {
      if (e == b + 1 && toks[b].kind == TokenKind::identifier) args.push_back(toks[b].text);
    }
    return sentence(toks[i].text, args);
  }

  std::vector<std::string> words;
  for (const auto& t : toks) {
    if (t.kind != TokenKind::identifier) continue;
    for (auto& w : split_identifier_words(t.text)) {
      if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(std::move(w));
    }
  }
  std::string out = "Performs";
  if (words.empty()) words.push_back("code");
  for (const auto& w : words) out += " " + w;
  return out + ".";
}

std::vector<SummaryExemplar> default_summary_exemplars(Language lang) {
  if (lang == Language::java) {
    return {
        {"public static int clamp(int value, int low, int high) {\n"
         "    if (value < low) return low;\n"
         "    if (value > high) return high;\n"
         "    return value;\n"
         "}",
         "Restricts value to the closed range [low, high] and returns the bounded result."},
        {"public List<String> readLines(Path file) throws IOException {\n"
         "    List<String> out = new ArrayList<>();\n"
         "    for (String line : Files.readAllLines(file)) {\n"
         "        if (!line.isBlank()) out.add(line.strip());\n"
         "    }\n"
         "    return out;\n"
         "}",
         "Reads a text file and returns its non-blank lines with surrounding whitespace removed."},
    };
  }
  return {
      {"def parse_duration(text):\n"
       "    units = {'s': 1, 'm': 60, 'h': 3600}\n"
       "    value, unit = text[:-1], text[-1]\n"
       "    return int(value) * units[unit]\n",
       "Converts a duration string such as '5m' into a number of seconds."},
      {"def chunk(items, size):\n"
       "    for start in range(0, len(items), size):\n"
       "        yield items[start:start + size]\n",
       "Splits a sequence into consecutive chunks of at most size elements."},
  };
}

std::string render_summary_prompt(std::string_view code, const std::vector<SummaryExemplar>& exemplars) {
  std::string out =
      "Write a one-sentence docstring describing what the function does. "
      "Follow the style of the examples.\n\n";
  for (const auto& ex : exemplars) {
    out += "Code:\n" + ex.code;
    if (!ex.code.ends_with('\n')) out += '\n';
    out += "Docstring:\n\"\"\"" + ex.docstring + "\"\"\"\n\n";
  }
  out += "Code:\n" + std::string(code);
  if (!code.ends_with('\n')) out += '\n';
  out += "Docstring:\n";
  return out;
}

std::string extract_docstring(std::string_view out) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(out);
  for (std::string_view q : {std::string_view("\"\"\""), std::string_view("'''")}) {
    if (s.starts_with(q)) {
      s.remove_prefix(q.size());
      const auto end = s.find(q);
      if (end != std::string_view::npos) s = s.substr(0, end);
      return std::string(trim(s));
    }
  }
  // Unquoted answers stop at the first blank line.
  const auto blank = s.find("\n\n");
  if (blank != std::string_view::npos) s = s.substr(0, blank);
  return std::string(trim(s));
}

TemplateSummarizer::TemplateSummarizer(const CompletionPort* llm, std::size_t code_char_budget,
                                       int max_new_tokens)
    : llm_(llm), code_char_budget_(code_char_budget), max_new_tokens_(max_new_tokens) {}

std::string TemplateSummarizer::id() const {
  return llm_ ? "template+" + llm_->id() : std::string("fallback-name-params");
}

Summary TemplateSummarizer::summarize(std::string_view code, Language lang) const {
  if (!llm_) return {fallback_summary(code, lang), false};
  try {
    const auto prompt = render_summary_prompt(code.substr(0, code_char_budget_), default_summary_exemplars(lang));
    auto doc = extract_docstring(llm_->complete(prompt, max_new_tokens_));
    if (!doc.empty()) return {std::move(doc), false};
  } catch (const std::exception&) {
  }
  return {fallback_summary(code, lang), true};
}

// ------------------------------------------------------------ mock LLM

std::string truncate_to_tokens(std::string_view text, int max_tokens, Language lang) {
  if (max_tokens < 0) return std::string(text);
  const auto toks = tokenize(text, lang);
  if (toks.size() <= static_cast<std::size_t>(max_tokens)) return std::string(text);
  if (max_tokens == 0) return {};
  const auto& last = toks[static_cast<std::size_t>(max_tokens) - 1];
  return std::string(text.substr(0, last.offset + last.text.size()));
}

MockLlm::MockLlm(std::vector<MockOracleEntry> entries, Language lang) : entries_(std::move(entries)), lang_(lang) {
  for (std::size_t i = 0; i < entries_.size(); ++i) by_cursor_line_.emplace(entries_[i].cursor_line, i);
}

const MockOracleEntry* MockLlm::find(std::string_view prompt) const {
  const auto nl = prompt.rfind('\n');
  const auto last = nl == std::string_view::npos ? prompt : prompt.substr(nl + 1);
  const auto it = by_cursor_line_.find(last);
  return it == by_cursor_line_.end() ? nullptr : &entries_[it->second];
}

std::string MockLlm::complete(std::string_view prompt, int max_new_tokens) const {
  if (prompt.empty()) return {};
  const auto* entry = find(prompt);
  if (!entry) return {};
  const bool evidence = std::any_of(entry->evidence.begin(), entry->evidence.end(), [&](const std::string& e) {
    return !e.empty() && prompt.find(e) != std::string_view::npos;
  });
  return truncate_to_tokens(evidence ? entry->ground_truth : entry->distractor, max_new_tokens, lang_);
}

std::vector<MockOracleEntry> load_mock_oracle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mock oracle file: " + path);
  std::vector<MockOracleEntry> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      out.push_back({j.at("task_id").get<std::string>(), j.at("cursor_line").get<std::string>(),
                     j.at("ground_truth").get<std::string>(), j.at("distractor").get<std::string>(),
                     j.at("evidence").get<std::vector<std::string>>()});
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": bad oracle record: " + e.what());
    }
  }
  return out;
}

void save_mock_oracle(const std::vector<MockOracleEntry>& entries, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write mock oracle file: " + path);
  for (const auto& e : entries) {
    out << json{{"task_id", e.task_id},
                {"cursor_line", e.cursor_line},
                {"ground_truth", e.ground_truth},
                {"distractor", e.distractor},
                {"evidence", e.evidence}}
               .dump()
        << '\n';
  }
}

}  // namespace apiinfer
