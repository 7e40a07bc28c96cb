#include "apiinfer/bench.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "apiinfer/error.hpp"
#include "apiinfer/io.hpp"
#include "apiinfer/kb.hpp"
#include "apiinfer/syntax.hpp"

namespace apiinfer {

using nlohmann::json;

// ------------------------------------------------------------ import resolution

namespace {

std::string dirname(const std::string& path) {
  const auto slash = path.rfind('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash);
}

std::string dots_to_slashes(std::string s) {
  std::replace(s.begin(), s.end(), '.', '/');
  return s;
}

std::string join_path(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "/" + b;
}

// Repository paths and java type names used to decide internality.
struct RepoIndex {
  std::set<std::string> paths;
  std::set<std::string> java_types;                           // pkg.Type
  std::map<std::string, std::vector<std::string>> java_pkgs;  // pkg -> types

  explicit RepoIndex(const std::vector<SourceFile>& repo, const std::vector<Outline>& outlines) {
    for (std::size_t i = 0; i < repo.size(); ++i) {
      const auto& f = repo[i];
      paths.insert(f.path);
      if (f.language != Language::java) continue;
      std::string stem = f.path.substr(f.path.rfind('/') == std::string::npos ? 0 : f.path.rfind('/') + 1);
      stem = stem.substr(0, stem.size() - 5);  // ".java"
      const std::string pkg = outlines[i].package.value_or("");
      java_types.insert(pkg.empty() ? stem : pkg + "." + stem);
      java_pkgs[pkg].push_back(stem);
    }
  }

  // Exact match, or a suffix at a path-component boundary (src/ layouts).
  bool has_module_file(const std::string& rel, bool exact) const {
    for (const auto& cand : {rel + ".py", rel + "/__init__.py"}) {
      if (paths.count(cand)) return true;
      if (exact) continue;
      const std::string tail = "/" + cand;
      for (const auto& p : paths) {
        if (p.size() > tail.size() && p.compare(p.size() - tail.size(), tail.size(), tail) == 0) return true;
      }
    }
    return false;
  }

  bool is_java_type(std::string dotted) const {
    // An import of Outer.Inner resolves through Outer.
    while (!dotted.empty()) {
      if (java_types.count(dotted)) return true;
      const auto dot = dotted.rfind('.');
      if (dot == std::string::npos) break;
      dotted = dotted.substr(0, dot);
    }
    return false;
  }
};

// Local names bound by `stmt` that refer to repository code.
std::vector<std::string> internal_names(const ImportStatement& stmt, const SourceFile& file, const RepoIndex& index) {
  std::vector<std::string> out;
  if (file.language == Language::java) {
    if (stmt.wildcard) {
      if (stmt.is_static) {
        return {};  // members of a class; cannot be enumerated without the class body
      }
      const auto it = index.java_pkgs.find(stmt.module);
      if (it != index.java_pkgs.end()) out = it->second;
      return out;
    }
    if (index.is_java_type(stmt.module)) {
      for (const auto& n : stmt.names) out.push_back(n.bound);
    }
    return out;
  }

  if (stmt.wildcard) return {};  // bound names unknown without evaluating the module
  if (!stmt.is_from) {
    for (const auto& n : stmt.names) {
      if (index.has_module_file(dots_to_slashes(n.name), false)) out.push_back(n.bound);
    }
    return out;
  }
  if (stmt.level > 0) {
    std::string base = dirname(file.path);
    for (int up = 1; up < stmt.level; ++up) base = dirname(base);
    const std::string mod = join_path(base, dots_to_slashes(stmt.module));
    const bool module_internal = !stmt.module.empty() && index.has_module_file(mod, true);
    for (const auto& n : stmt.names) {
      if (module_internal || index.has_module_file(join_path(mod, n.name), true)) out.push_back(n.bound);
    }
    return out;
  }
  const std::string mod = dots_to_slashes(stmt.module);
  const bool module_internal = index.has_module_file(mod, false);
  for (const auto& n : stmt.names) {
    if (module_internal || index.has_module_file(mod + "/" + n.name, false)) out.push_back(n.bound);
  }
  return out;
}

std::vector<Token> flat_tokens(const SourceFile& f) {
  std::vector<Token> out;
  for (const auto& line : f.token_lines) out.insert(out.end(), line.begin(), line.end());
  return out;
}

std::string rtrim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

}  // namespace

bool is_internal_import(const ImportStatement& stmt, const SourceFile& file, const std::vector<SourceFile>& repo) {
  std::vector<Outline> outlines;
  for (const auto& f : repo) outlines.push_back(parse_outline(f));
  return !internal_names(stmt, file, RepoIndex(repo, outlines)).empty();
}

// ------------------------------------------------------------ mining

TaskSet mine_tasks(const std::vector<SourceFile>& repo, int n_per_repo, std::uint64_t seed,
                   const std::string& repo_root) {
  if (n_per_repo < 1) throw Error("n_per_repo must be >= 1");
  TaskSet set;
  set.repo_fingerprint = repo_fingerprint(repo);

  std::vector<Outline> outlines;
  outlines.reserve(repo.size());
  for (const auto& f : repo) outlines.push_back(parse_outline(f));
  const RepoIndex index(repo, outlines);

  struct Candidate {
    std::size_t file = 0;
    int line = 0;
    std::size_t cross_token = 0;  // index into the file's flat tokens
    std::vector<std::size_t> log_rows;
    std::set<int> masked;
  };
  std::vector<Candidate> candidates;

  for (std::size_t fi = 0; fi < repo.size(); ++fi) {
    const auto& f = repo[fi];
    const auto& outline = outlines[fi];
    if (!outline.ok || f.parse_failed) {
      set.diagnostics.push_back("skipped " + f.path + ": does not parse");
      continue;
    }
    const auto toks = flat_tokens(f);
    std::set<int> import_lines;
    for (const auto& s : outline.imports) {
      for (int l = s.first_line; l <= s.last_line; ++l) import_lines.insert(l);
    }

    std::map<int, Candidate> by_line;
    for (const auto& stmt : outline.imports) {
      const auto names = internal_names(stmt, f, index);
      if (names.empty()) continue;
      ConstructionRecord rec;
      rec.file = f.path;
      rec.import_first_line = stmt.first_line;
      rec.import_last_line = stmt.last_line;
      rec.import_text = join_lines(f.lines, stmt.first_line, stmt.last_line);
      rec.status = "unused";

      std::optional<std::size_t> first;
      for (std::size_t ti = 0; ti < toks.size(); ++ti) {
        const auto& t = toks[ti];
        if (t.kind != TokenKind::identifier || t.line <= stmt.last_line || import_lines.count(t.line)) continue;
        if (std::find(names.begin(), names.end(), t.text) == names.end()) continue;
        if (ti > 0 && toks[ti - 1].text == ".") continue;  // attribute, not the imported name
        first = ti;
        break;
      }
      if (first) {
        rec.symbol = toks[*first].text;
        rec.first_use_line = toks[*first].line;
        auto& cand = by_line[rec.first_use_line];
        if (cand.log_rows.empty() || *first < cand.cross_token) cand.cross_token = *first;
        cand.file = fi;
        cand.line = rec.first_use_line;
        cand.log_rows.push_back(set.construction_log.size());
        for (int l = stmt.first_line; l <= stmt.last_line; ++l) cand.masked.insert(l);
      } else {
        rec.symbol = names.front();
      }
      set.construction_log.push_back(std::move(rec));
    }
    for (auto& [line, cand] : by_line) candidates.push_back(std::move(cand));
  }

  std::mt19937_64 rng(seed);
  std::vector<CompletionTask> kept;
  std::vector<const Candidate*> kept_from;
  for (const auto& cand : candidates) {
    const auto& f = repo[cand.file];
    const auto toks = flat_tokens(f);
    const auto& cross = toks[cand.cross_token];

    // Cursor positions: starts of tokens on the line up to the cross-file token.
    std::vector<const Token*> starts;
    for (const auto& t : toks) {
      if (t.line == cand.line && t.offset <= cross.offset) starts.push_back(&t);
    }
    const Token* cursor = starts[static_cast<std::size_t>(rng() % starts.size())];
    const std::string& line_text = f.lines[static_cast<std::size_t>(cand.line - 1)];
    const auto col = static_cast<std::size_t>(cursor->column);

    CompletionTask task;
    task.task_id = f.path + ":" + std::to_string(cand.line);
    task.repo_root = repo_root;
    task.file = f.path;
    task.language = f.language;
    task.cursor_line = cand.line;
    task.cursor_column = cursor->column;
    task.ground_truth = rtrim(line_text.substr(col));
    std::string prefix;
    for (int l = 1; l < cand.line; ++l) {
      if (cand.masked.count(l)) continue;
      prefix += f.lines[static_cast<std::size_t>(l - 1)];
      prefix += '\n';
    }
    prefix += line_text.substr(0, col);
    task.prefix = std::move(prefix);
    for (int l : cand.masked) task.masked_import_lines.push_back({l, f.lines[static_cast<std::size_t>(l - 1)]});

    // The ground truth must not be copyable from elsewhere in the repository.
    const bool duplicated = std::any_of(repo.begin(), repo.end(), [&](const SourceFile& other) {
      return other.path != f.path && other.text.find(task.ground_truth) != std::string::npos;
    });
    if (duplicated) {
      for (auto r : cand.log_rows) set.construction_log[r].status = "duplicate_ground_truth";
      continue;
    }
    kept.push_back(std::move(task));
    kept_from.push_back(&cand);
  }

  std::vector<std::size_t> order(kept.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  const auto n = static_cast<std::size_t>(n_per_repo);
  if (order.size() > n) {
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      std::swap(order[i], order[static_cast<std::size_t>(rng() % (i + 1))]);
    }
  }
  std::vector<bool> chosen(kept.size(), false);
  for (std::size_t i = 0; i < std::min(n, order.size()); ++i) chosen[order[i]] = true;

  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (auto r : kept_from[i]->log_rows) {
      set.construction_log[r].status = chosen[i] ? "task" : "not_sampled";
      if (chosen[i]) set.construction_log[r].task_id = kept[i].task_id;
    }
    if (chosen[i]) set.tasks.push_back(std::move(kept[i]));
  }
  if (candidates.empty()) {
    set.diagnostics.push_back("no cross-file usages found in " + std::to_string(repo.size()) + " files");
  }
  return set;
}

// ------------------------------------------------------------ metrics

std::string normalize_ws(const std::string& s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(c);
  }
  return out;
}

namespace {

// Invalid bytes decode to themselves so every input has a code-point form.
std::u32string decode_utf8(const std::string& s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c >> 5) == 0x6) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c >> 4) == 0xe) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c >> 3) == 0x1e) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len > 0 && i + static_cast<std::size_t>(len) <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
      if ((cc >> 6) != 0x2) {
        ok = false;
      } else {
        cp = (cp << 6) | (cc & 0x3f);
      }
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

}  // namespace

std::size_t levenshtein(const std::string& a8, const std::string& b8) {
  const auto a = decode_utf8(a8);
  const auto b = decode_utf8(b8);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double edit_similarity(const std::string& a, const std::string& b) {
  const std::size_t longest = std::max(decode_utf8(a).size(), decode_utf8(b).size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

std::vector<std::string> identifiers(const std::string& code, Language lang) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(code, lang)) {
    if (t.kind == TokenKind::identifier) out.push_back(t.text);
  }
  return out;
}

IdMatch id_match(const std::vector<std::string>& pred, const std::vector<std::string>& gold, IdMatchMode mode) {
  std::vector<std::string> p = pred;
  std::vector<std::string> g = gold;
  if (mode == IdMatchMode::set) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  if (p.empty() && g.empty()) return {1, 1.0};

  IdMatch m;
  if (mode == IdMatchMode::sequence) {
    m.em = p == g ? 1 : 0;
  }
  std::sort(p.begin(), p.end());
  std::sort(g.begin(), g.end());
  if (mode != IdMatchMode::sequence) m.em = p == g ? 1 : 0;

  std::size_t common = 0;
  auto ip = p.begin();
  auto ig = g.begin();
  while (ip != p.end() && ig != g.end()) {
    if (*ip < *ig) {
      ++ip;
    } else if (*ig < *ip) {
      ++ig;
    } else {
      ++common;
      ++ip;
      ++ig;
    }
  }
  if (common == 0) return m;
  const double precision = static_cast<double>(common) / static_cast<double>(p.size());
  const double recall = static_cast<double>(common) / static_cast<double>(g.size());
  m.f1 = 2.0 * precision * recall / (precision + recall);
  return m;
}

IdMatch id_match(const std::string& pred, const std::string& gold, Language lang, IdMatchMode mode) {
  return id_match(identifiers(pred, lang), identifiers(gold, lang), mode);
}

TaskScore score_task(const CompletionTask& task, const std::optional<std::string>& prediction, IdMatchMode mode) {
  TaskScore s;
  s.task_id = task.task_id;
  s.missing = !prediction.has_value();
  const std::string pred = normalize_ws(prediction.value_or(""));
  const std::string gold = normalize_ws(task.ground_truth);
  s.code_em = pred == gold ? 1 : 0;
  s.code_es = edit_similarity(pred, gold);
  const auto id = id_match(pred, gold, task.language, mode);
  s.id_em = id.em;
  s.id_f1 = id.f1;
  return s;
}

MetricsReport score_run(const Predictions& predictions, const std::vector<CompletionTask>& tasks,
                        const std::string& mode, IdMatchMode id_mode) {
  MetricsReport r;
  r.mode = mode;
  for (const auto& t : tasks) {
    const auto it = predictions.find(t.task_id);
    auto s = score_task(t, it == predictions.end() ? std::nullopt : std::optional<std::string>(it->second), id_mode);
    r.missing += s.missing ? 1 : 0;
    r.per_task.push_back(std::move(s));
  }
  if (!r.per_task.empty()) {
    const double n = static_cast<double>(r.per_task.size());
    for (const auto& s : r.per_task) {
      r.aggregate.code_em += s.code_em;
      r.aggregate.code_es += s.code_es;
      r.aggregate.id_em += s.id_em;
      r.aggregate.id_f1 += s.id_f1;
    }
    r.aggregate.code_em *= 100.0 / n;
    r.aggregate.code_es *= 100.0 / n;
    r.aggregate.id_em *= 100.0 / n;
    r.aggregate.id_f1 *= 100.0 / n;
  }
  return r;
}

// ------------------------------------------------------------ comparison

namespace {

std::vector<std::size_t> unique_correct_counts(const std::vector<MetricsReport>& reports) {
  std::map<std::string, std::vector<std::size_t>> solvers;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const auto& s : reports[i].per_task) {
      if (s.code_em) solvers[s.task_id].push_back(i);
    }
  }
  std::vector<std::size_t> counts(reports.size(), 0);
  for (const auto& [id, who] : solvers) {
    if (who.size() == 1) ++counts[who.front()];
  }
  return counts;
}

}  // namespace

std::string render_table(const std::vector<MetricsReport>& reports) {
  const auto unique = unique_correct_counts(reports);
  std::size_t width = 4;
  for (const auto& r : reports) width = std::max(width, r.mode.size());

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::left << std::setw(static_cast<int>(width)) << "Mode" << " | " << std::setw(17) << "Code Match"
      << " | " << std::setw(17) << "ID Match" << " | Unique\n";
  out << std::setw(static_cast<int>(width)) << "" << " | " << std::right << std::setw(8) << "EM" << std::setw(9)
      << "ES" << " | " << std::setw(8) << "EM" << std::setw(9) << "F1" << " | Correct\n";
  out << std::string(width, '-') << "-+-" << std::string(17, '-') << "-+-" << std::string(17, '-') << "-+--------\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& a = reports[i].aggregate;
    out << std::left << std::setw(static_cast<int>(width)) << reports[i].mode << " | " << std::right
        << std::setw(8) << a.code_em << std::setw(9) << a.code_es << " | " << std::setw(8) << a.id_em
        << std::setw(9) << a.id_f1 << " | " << std::setw(7) << unique[i] << "\n";
  }
  return out.str();
}

Comparison compare_runs(const std::vector<MetricsReport>& reports) {
  Comparison c;
  for (const auto& r : reports) {
    c.modes.push_back(r.mode);
    c.aggregates.push_back(r.aggregate);
  }
  c.unique_correct = unique_correct_counts(reports);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (std::size_t j = i + 1; j < reports.size(); ++j) {
      const auto& a = reports[i].aggregate;
      const auto& b = reports[j].aggregate;
      c.deltas.push_back({reports[i].mode, reports[j].mode,
                          {b.code_em - a.code_em, b.code_es - a.code_es, b.id_em - a.id_em, b.id_f1 - a.id_f1}});
    }
  }
  c.table = render_table(reports);
  return c;
}

// ------------------------------------------------------------ serialization

namespace {

json aggregate_json(const Aggregate& a) {
  return json{{"code_em", a.code_em}, {"code_es", a.code_es}, {"id_em", a.id_em}, {"id_f1", a.id_f1}};
}

Aggregate aggregate_from_json(const json& j) {
  return Aggregate{j.at("code_em").get<double>(), j.at("code_es").get<double>(), j.at("id_em").get<double>(),
                   j.at("id_f1").get<double>()};
}

std::vector<json> parse_jsonl(const std::string& text, const std::string& path) {
  std::vector<json> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace

json to_json(const MetricsReport& r) {
  json per_task = json::array();
  for (const auto& s : r.per_task) {
    per_task.push_back({{"task_id", s.task_id},
                        {"code_em", s.code_em},
                        {"code_es", s.code_es},
                        {"id_em", s.id_em},
                        {"id_f1", s.id_f1},
                        {"missing", s.missing}});
  }
  json j{{"mode", r.mode},
         {"n_tasks", r.per_task.size()},
         {"missing", r.missing},
         {"aggregate", aggregate_json(r.aggregate)},
         {"per_task", per_task}};
  j["timing"] = r.timing ? json{{"kb_build_s", r.timing->kb_build_s}, {"mean_inference_s", r.timing->mean_inference_s}}
                         : json(nullptr);
  return j;
}

MetricsReport report_from_json(const json& j) {
  try {
    MetricsReport r;
    r.mode = j.at("mode").get<std::string>();
    r.missing = j.value("missing", std::size_t{0});
    r.aggregate = aggregate_from_json(j.at("aggregate"));
    for (const auto& s : j.at("per_task")) {
      r.per_task.push_back(TaskScore{s.at("task_id").get<std::string>(), s.at("code_em").get<int>(),
                                     s.at("code_es").get<double>(), s.at("id_em").get<int>(),
                                     s.at("id_f1").get<double>(), s.value("missing", false)});
    }
    if (j.contains("timing") && !j.at("timing").is_null()) {
      r.timing = Timing{j["timing"].at("kb_build_s").get<double>(), j["timing"].at("mean_inference_s").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed metrics report: ") + e.what());
  }
}

json to_json(const Comparison& c) {
  json rows = json::array();
  for (std::size_t i = 0; i < c.modes.size(); ++i) {
    rows.push_back({{"mode", c.modes[i]},
                    {"aggregate", aggregate_json(c.aggregates[i])},
                    {"unique_correct", c.unique_correct[i]}});
  }
  json deltas = json::array();
  for (const auto& d : c.deltas) deltas.push_back({{"from", d.from}, {"to", d.to}, {"delta", aggregate_json(d.delta)}});
  return json{{"runs", rows}, {"deltas", deltas}, {"table", c.table}};
}

json to_json(const ConstructionRecord& r) {
  return json{{"file", r.file},
              {"import_first_line", r.import_first_line},
              {"import_last_line", r.import_last_line},
              {"import_text", r.import_text},
              {"symbol", r.symbol},
              {"first_use_line", r.first_use_line},
              {"status", r.status},
              {"task_id", r.task_id}};
}

void save_tasks(const std::vector<CompletionTask>& tasks, const std::string& path) {
  std::string out;
  for (const auto& t : tasks) out += to_json(t).dump() + "\n";
  write_file_atomic(path, out);
}

std::vector<CompletionTask> load_tasks(const std::string& path) {
  std::vector<CompletionTask> tasks;
  for (const auto& row : parse_jsonl(read_file(path, "task set"), path)) tasks.push_back(task_from_json(row));
  return tasks;
}

void save_predictions(const std::vector<std::pair<std::string, std::string>>& predictions, const std::string& path) {
  std::string out;
  for (const auto& [id, pred] : predictions) out += json{{"task_id", id}, {"prediction", pred}}.dump() + "\n";
  write_file_atomic(path, out);
}

Predictions load_predictions(const std::string& path) {
  Predictions p;
  for (const auto& row : parse_jsonl(read_file(path, "predictions"), path)) {
    try {
      p[row.at("task_id").get<std::string>()] = row.at("prediction").get<std::string>();
    } catch (const json::exception& e) {
      throw Error(path + ": malformed prediction: " + e.what());
    }
  }
  return p;
}

}  // namespace apiinfer
