#include "apiinfer/corpus.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "apiinfer/error.hpp"
#include "apiinfer/syntax.hpp"

namespace apiinfer {

namespace fs = std::filesystem;

TokenSet make_token_set(const std::vector<Token>& tokens) {
  TokenSet set;
  set.reserve(tokens.size());
  for (const auto& t : tokens) set.push_back(t.text);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(begin, end - begin);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    begin = end + 1;
  }
  return lines;
}

}  // namespace

SourceFile load_source(std::string path, Language lang, std::string text) {
  SourceFile file;
  file.path = std::move(path);
  file.language = lang;
  file.text = std::move(text);
  file.lines = split_lines(file.text);
  file.token_lines.resize(file.lines.size());

  auto lexed = lex(file.text, lang);
  const auto outline = parse_outline(file.text, lexed.tokens, lexed.error, lang);
  if (!outline.ok) {
    file.parse_failed = true;
    file.parse_error = "line " + std::to_string(outline.error_line) + ": " + outline.error;
    file.token_lines.clear();
    return file;
  }
  for (auto& tok : lexed.tokens) {
    const auto idx = static_cast<std::size_t>(tok.line - 1);
    if (idx < file.token_lines.size()) file.token_lines[idx].push_back(std::move(tok));
  }
  return file;
}

bool path_excluded(const std::string& rel_path, const std::vector<std::string>& excludes) {
  if (excludes.empty()) return false;
  std::vector<std::string> candidates{rel_path};
  for (std::size_t pos = rel_path.find('/'); pos != std::string::npos; pos = rel_path.find('/', pos + 1)) {
    candidates.push_back(rel_path.substr(0, pos));
  }
  for (const auto& pattern : excludes) {
    for (const auto& c : candidates) {
      if (fnmatch(pattern.c_str(), c.c_str(), 0) == 0) return true;
    }
  }
  return false;
}

ScanResult scan_repo(const fs::path& root, const std::vector<std::string>& excludes) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error("repository root is not a readable directory: " + root.string());
  }
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw Error("cannot read repository root " + root.string() + ": " + ec.message());

  ScanResult result;
  std::vector<std::pair<std::string, Language>> found;
  const fs::recursive_directory_iterator end;
  // A failed increment leaves the iterator unusable; report it and stop walking.
  auto advance = [&] {
    it.increment(ec);
    if (ec) {
      result.warnings.push_back({root.string(), "directory walk stopped early: " + ec.message()});
      ec.clear();
      it = end;
    }
  };
  for (; it != end; advance()) {
    const auto& entry = *it;
    const std::string name = entry.path().filename().string();
    const std::string rel = fs::relative(entry.path(), root, ec).generic_string();
    if (entry.is_symlink(ec)) {
      if (entry.is_directory(ec)) it.disable_recursion_pending();
      continue;
    }
    if (entry.is_directory(ec)) {
      if (name.starts_with(".") || path_excluded(rel, excludes)) it.disable_recursion_pending();
      continue;
    }
    if (!entry.is_regular_file(ec)) continue;
    const auto lang = language_for_path(name);
    if (!lang || path_excluded(rel, excludes)) continue;
    found.emplace_back(rel, *lang);
  }
  std::sort(found.begin(), found.end());

  for (const auto& [rel, lang] : found) {
    std::ifstream in(root / rel, std::ios::binary);
    if (!in) {
      result.warnings.push_back({rel, "unreadable file skipped"});
      continue;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    result.files.push_back(load_source(rel, lang, buf.str()));
  }
  return result;
}

std::string join_lines(const std::vector<std::string>& lines, int first, int last) {
  std::string out;
  for (int i = first; i <= last && i <= static_cast<int>(lines.size()); ++i) {
    if (i > first) out += '\n';
    out += lines[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

std::vector<CodeWindow> windows(const SourceFile& file, int window_len, int slide) {
  if (window_len < 1 || slide < 1) throw Error("window_len and slide must be >= 1");
  std::vector<CodeWindow> out;
  const int n = static_cast<int>(file.lines.size());
  for (int start = 1; start <= n; start += slide) {
    CodeWindow w;
    w.file = file.path;
    w.start_line = start;
    w.end_line = std::min(n, start + window_len - 1);
    w.text = join_lines(file.lines, w.start_line, w.end_line);
    if (file.parse_failed) {
      w.token_set = make_token_set(tokenize(w.text, file.language));
    } else {
      std::vector<Token> toks;
      for (int l = w.start_line; l <= w.end_line; ++l) {
        const auto& line_tokens = file.token_lines[static_cast<std::size_t>(l - 1)];
        toks.insert(toks.end(), line_tokens.begin(), line_tokens.end());
      }
      w.token_set = make_token_set(toks);
    }
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace apiinfer
