#include "apiinfer/kb.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "apiinfer/error.hpp"
#include "apiinfer/io.hpp"

namespace apiinfer {

using nlohmann::json;

namespace {

std::string hex64(std::uint64_t v, int digits = 16) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf + (16 - digits));
}

json vector_json(const Embedding& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Embedding vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Embedding>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::string> optional_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

json entry_json(const KbEntry& e) {
  const auto& a = e.api;
  json ues = json::array();
  for (const auto& ue : e.usage_examples) ues.push_back({{"text", ue.text}, {"form", to_string(ue.form)}});
  json ue_vecs = json::array();
  for (Eigen::Index r = 0; r < e.ue_embeddings.rows(); ++r) {
    ue_vecs.push_back(vector_json(e.ue_embeddings.row(r).transpose()));
  }
  return json{{"qualified_name", e.qualified_name},
              {"name", a.name},
              {"signature", a.signature},
              {"header", a.header},
              {"class_name", optional_json(a.class_name)},
              {"enclosing_class_decl", optional_json(a.enclosing_class_decl)},
              {"outer_class", optional_json(a.outer_class)},
              {"body", a.body},
              {"file", a.file},
              {"language", to_string(a.language)},
              {"kind", to_string(a.kind)},
              {"is_static", a.is_static},
              {"param_names", a.param_names},
              {"return_type", optional_json(a.return_type)},
              {"start_line", a.start_line},
              {"end_line", a.end_line},
              {"usage_examples", ues},
              {"ue_embeddings", ue_vecs},
              {"docstring", e.docstring},
              {"doc_embedding", vector_json(e.doc_embedding)},
              {"degraded", e.degraded}};
}

KbEntry entry_from_json(const json& j, int dim) {
  KbEntry e;
  auto& a = e.api;
  e.qualified_name = j.at("qualified_name").get<std::string>();
  a.name = j.at("name").get<std::string>();
  a.signature = j.at("signature").get<std::string>();
  a.header = j.at("header").get<std::string>();
  a.class_name = optional_from_json(j.at("class_name"));
  a.enclosing_class_decl = optional_from_json(j.at("enclosing_class_decl"));
  a.outer_class = optional_from_json(j.at("outer_class"));
  a.body = j.at("body").get<std::string>();
  a.file = j.at("file").get<std::string>();
  a.language = language_from_string(j.at("language").get<std::string>());
  a.kind = api_kind_from_string(j.at("kind").get<std::string>());
  a.is_static = j.at("is_static").get<bool>();
  a.param_names = j.at("param_names").get<std::vector<std::string>>();
  a.return_type = optional_from_json(j.at("return_type"));
  a.start_line = j.at("start_line").get<int>();
  a.end_line = j.at("end_line").get<int>();
  for (const auto& ue : j.at("usage_examples")) {
    e.usage_examples.push_back({ue.at("text").get<std::string>(), usage_form_from_string(ue.at("form").get<std::string>())});
  }
  const auto& rows = j.at("ue_embeddings");
  if (rows.size() != e.usage_examples.size()) {
    throw Error(std::to_string(rows.size()) + " usage-example vectors for " +
                std::to_string(e.usage_examples.size()) + " usage examples");
  }
  e.ue_embeddings.resize(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Embedding v = vector_from_json(rows[r]);
    if (v.size() != dim) throw Error("usage-example vector of dimension " + std::to_string(v.size()) +
                                     ", header declares " + std::to_string(dim));
    e.ue_embeddings.row(static_cast<Eigen::Index>(r)) = v.transpose();
  }
  e.docstring = j.at("docstring").get<std::string>();
  e.doc_embedding = vector_from_json(j.at("doc_embedding"));
  if (e.doc_embedding.size() != dim) {
    throw Error("docstring vector of dimension " + std::to_string(e.doc_embedding.size()) +
                ", header declares " + std::to_string(dim));
  }
  e.degraded = j.at("degraded").get<bool>();
  return e;
}

}  // namespace

bool operator==(const KbEntry& a, const KbEntry& b) {
  auto same = [](const auto& x, const auto& y) {
    return x.rows() == y.rows() && x.cols() == y.cols() && (x.size() == 0 || x == y);
  };
  return a.api == b.api && a.usage_examples == b.usage_examples && same(a.ue_embeddings, b.ue_embeddings) &&
         a.docstring == b.docstring && same(a.doc_embedding, b.doc_embedding) &&
         a.qualified_name == b.qualified_name && a.degraded == b.degraded;
}

std::string repo_fingerprint(const std::vector<SourceFile>& files) {
  std::vector<std::pair<std::string, std::uint64_t>> pairs;
  pairs.reserve(files.size());
  for (const auto& f : files) pairs.emplace_back(f.path, fnv1a64(f.text));
  std::sort(pairs.begin(), pairs.end());
  std::uint64_t h = fnv1a64("");
  for (const auto& [path, content] : pairs) {
    h = fnv1a64(path, h);
    h = fnv1a64(hex64(content), h);
  }
  return hex64(h);
}

std::string qualified_name(const ApiRecord& r) {
  std::string q = r.file + "::";
  if (r.class_name) q += *r.class_name + ".";
  return q + r.name + "#" + hex64(fnv1a64(r.signature), 8);
}

KnowledgeBase build_kb(const std::vector<SourceFile>& repo, const EmbedderPort& embedder,
                       const SummarizerPort& summarizer, const BuildOptions& options, BuildReport* report) {
  std::vector<std::string> warnings;
  auto records = extract_repo_apis(repo, &warnings);

  KnowledgeBase kb;
  kb.header.dim = embedder.dim();
  kb.header.embedder_id = embedder.id();
  kb.header.summarizer_id = summarizer.id();
  kb.header.repo_fingerprint = repo_fingerprint(repo);
  kb.entries.resize(records.size());

  const int dim = kb.header.dim;
  std::vector<std::string> entry_warnings(records.size());
  auto build_one = [&](std::size_t i) {
    KbEntry& e = kb.entries[i];
    e.api = std::move(records[i]);
    e.usage_examples = synth_usage_examples(e.api);
    if (e.usage_examples.empty()) {
      entry_warnings[i] = e.api.file + ": no usage-example rule for " + e.api.name + " (" +
                          std::string(to_string(e.api.kind)) + ")";
    }
    e.ue_embeddings = EmbeddingMatrix::Zero(static_cast<Eigen::Index>(e.usage_examples.size()), dim);
    try {
      std::vector<std::string> texts;
      for (const auto& ue : e.usage_examples) texts.push_back(ue.text);
      if (!texts.empty()) {
        const auto vecs = embedder.embed(texts);
        for (std::size_t r = 0; r < vecs.size(); ++r) e.ue_embeddings.row(static_cast<Eigen::Index>(r)) = vecs[r].transpose();
      }
    } catch (const std::exception& ex) {
      e.degraded = true;
      entry_warnings[i] = e.api.name + ": usage-example embedding failed: " + ex.what();
    }
    e.doc_embedding = Embedding::Zero(dim);
    try {
      const auto summary = summarizer.summarize(e.api.body, e.api.language);
      e.docstring = summary.text;
      if (summary.fell_back) e.degraded = true;
      e.doc_embedding = embedder.embed_one(e.docstring);
    } catch (const std::exception& ex) {
      e.degraded = true;
      e.docstring.clear();
      e.doc_embedding = Embedding::Zero(dim);
      entry_warnings[i] = e.api.name + ": summarization failed: " + ex.what();
    }
  };

  const std::size_t workers = static_cast<std::size_t>(std::max(1, options.workers));
  if (workers == 1 || records.size() < 2) {
    for (std::size_t i = 0; i < records.size(); ++i) build_one(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < records.size(); i += workers) build_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::map<std::string, int> seen;
  for (auto& e : kb.entries) {
    std::string q = qualified_name(e.api);
    if (seen[q]++ > 0) q += "@L" + std::to_string(e.api.start_line);
    e.qualified_name = std::move(q);
  }

  if (report) {
    report->warnings = std::move(warnings);
    for (auto& w : entry_warnings) {
      if (!w.empty()) report->warnings.push_back(std::move(w));
    }
    report->degraded = static_cast<std::size_t>(
        std::count_if(kb.entries.begin(), kb.entries.end(), [](const KbEntry& e) { return e.degraded; }));
  }
  return kb;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::string out = json{{"dim", kb.header.dim},
                         {"embedder_id", kb.header.embedder_id},
                         {"summarizer_id", kb.header.summarizer_id},
                         {"repo_fingerprint", kb.header.repo_fingerprint},
                         {"entries", kb.entries.size()}}
                        .dump();
  out += '\n';
  for (const auto& e : kb.entries) {
    out += entry_json(e).dump();
    out += '\n';
  }
  return out;
}

void save_kb(const KnowledgeBase& kb, const std::string& path) { write_file_atomic(path, serialize_kb(kb)); }

KnowledgeBase parse_kb(const std::string& text, const std::string& source_name) {
  KnowledgeBase kb;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int last_valid = 0;
  std::optional<std::size_t> declared;
  auto fail = [&](const std::string& what) -> Error {
    return Error(source_name + ":" + std::to_string(line_no) + ": " + what + " (last valid line " +
                 std::to_string(last_valid) + ")");
  };

  if (!std::getline(in, line)) {
    line_no = 1;
    throw fail("missing header line");
  }
  line_no = 1;
  try {
    const auto h = json::parse(line);
    kb.header.dim = h.at("dim").get<int>();
    kb.header.embedder_id = h.at("embedder_id").get<std::string>();
    kb.header.summarizer_id = h.at("summarizer_id").get<std::string>();
    kb.header.repo_fingerprint = h.at("repo_fingerprint").get<std::string>();
    if (h.contains("entries")) declared = h.at("entries").get<std::size_t>();
  } catch (const json::exception& e) {
    throw fail(std::string("invalid header: ") + e.what());
  }
  if (kb.header.dim < 1) throw fail("invalid header: dim must be >= 1");
  last_valid = 1;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      kb.entries.push_back(entry_from_json(json::parse(line), kb.header.dim));
    } catch (const json::exception& e) {
      throw fail(std::string("corrupt record: ") + e.what());
    } catch (const Error& e) {
      throw fail(std::string("corrupt record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw fail(std::string("corrupt record: ") + e.what());
    }
    last_valid = line_no;
  }
  if (declared && *declared != kb.entries.size()) {
    ++line_no;
    throw fail("truncated: header declares " + std::to_string(*declared) + " entries, found " +
               std::to_string(kb.entries.size()));
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) { return parse_kb(read_file(path, "knowledge base"), path); }

std::vector<std::string> validate_kb(const KnowledgeBase& kb) {
  std::vector<std::string> issues;
  std::map<std::string, int> names;
  for (const auto& e : kb.entries) {
    const std::string& q = e.qualified_name;
    if (names[q]++ > 0) issues.push_back(q + ": duplicate qualified_name");
    if (e.ue_embeddings.rows() != static_cast<Eigen::Index>(e.usage_examples.size())) {
      issues.push_back(q + ": usage-example vector count mismatch");
    }
    if (e.ue_embeddings.rows() > 0 && e.ue_embeddings.cols() != kb.header.dim) {
      issues.push_back(q + ": usage-example vector dimension mismatch");
    }
    for (Eigen::Index r = 0; r < e.ue_embeddings.rows(); ++r) {
      const auto row = e.ue_embeddings.row(r);
      if (!is_unit(row) && !(e.degraded && row.isZero())) {
        issues.push_back(q + ": usage-example vector " + std::to_string(r) + " not unit norm");
      }
    }
    if (e.doc_embedding.size() != kb.header.dim) issues.push_back(q + ": docstring vector dimension mismatch");
    if (!is_unit(e.doc_embedding) && !(e.degraded && e.doc_embedding.isZero())) {
      issues.push_back(q + ": docstring vector not unit norm");
    }
  }
  return issues;
}

}  // namespace apiinfer
