#pragma once

#include <map>
#include <string>
#include <vector>

#include "apiinfer/pipeline.hpp"
#include "apiinfer/providers.hpp"

namespace apiinfer {

// A generated python repository with 40 completion tasks and the oracle table
// for MockLlm. Three task families:
//   s: the answer sits in another file right after code identical to the
//      task's context, behind a "# reusable:" marker (similar-code retrieval).
//   u: the draft calls a near-miss name with the target's parameter names
//      (usage-example retrieval).
//   f: the draft defines a local helper equivalent to the target
//      (functional-semantic retrieval).
// The mock answers correctly only when the target's definition header or the
// marker is in the prompt.
struct MockSuite {
  std::vector<std::pair<std::string, std::string>> files;  // repo-relative path, content
  std::vector<CompletionTask> tasks;
  std::vector<MockOracleEntry> oracle;
  std::map<std::string, char> family;  // task_id -> 's' | 'u' | 'f'
};

MockSuite make_mock_suite();

struct MockSuitePaths {
  std::string repo;    // <dir>/repo
  std::string tasks;   // <dir>/tasks.jsonl
  std::string oracle;  // <dir>/oracle.jsonl
};

// Writes the repository, tasks and oracle under `dir`; task repo_root is the
// written repo path.
MockSuitePaths write_mock_suite(const MockSuite& suite, const std::string& dir);

}  // namespace apiinfer
