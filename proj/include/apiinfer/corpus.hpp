#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "apiinfer/lexer.hpp"

namespace apiinfer {

// Sorted, deduplicated token texts.
using TokenSet = std::vector<std::string>;

TokenSet make_token_set(const std::vector<Token>& tokens);

struct SourceFile {
  std::string path;  // repository-relative, '/' separated
  Language language = Language::python;
  std::string text;
  std::vector<std::string> lines;
  // Tokens grouped by the line they start on.
  std::vector<std::vector<Token>> token_lines;
  bool parse_failed = false;
  std::string parse_error;

  std::size_t line_count() const { return lines.size(); }
  bool operator==(const SourceFile&) const = default;
};

// Lexes and validates `text`. A file that does not parse keeps its lines but
// has empty token_lines.
SourceFile load_source(std::string path, Language lang, std::string text);

struct ScanWarning {
  std::string path;
  std::string message;
};

struct ScanResult {
  std::vector<SourceFile> files;  // sorted by path
  std::vector<ScanWarning> warnings;
};

// Walks `root` for .py / .java files. Hidden directories and symlinks are
// skipped; `excludes` are fnmatch globs tested against the relative path and
// each of its parent directories. Throws apiinfer::Error if root is unusable.
ScanResult scan_repo(const std::filesystem::path& root,
                     const std::vector<std::string>& excludes = {});

bool path_excluded(const std::string& rel_path, const std::vector<std::string>& excludes);

struct CodeWindow {
  std::string file;
  int start_line = 1;  // 1-based, inclusive
  int end_line = 1;
  std::string text;
  TokenSet token_set;

  int length() const { return end_line - start_line + 1; }
  bool operator==(const CodeWindow&) const = default;
};

// Windows start at 1, 1+slide, 1+2*slide, ... for every start <= line count;
// a window is clipped at the end of the file.
std::vector<CodeWindow> windows(const SourceFile& file, int window_len, int slide);

// Joins lines [first, last] (1-based, inclusive) with '\n'.
std::string join_lines(const std::vector<std::string>& lines, int first, int last);

}  // namespace apiinfer
