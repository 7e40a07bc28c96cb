#pragma once

// Twelve API definitions covering every row of the usage-example rule table,
// with the call forms written out by hand.

#include <map>
#include <string>
#include <vector>

#include "apiinfer/api.hpp"
#include "apiinfer/corpus.hpp"

namespace ue_fixture {

inline std::vector<apiinfer::SourceFile> sources() {
  using apiinfer::Language;
  using apiinfer::load_source;
  std::vector<apiinfer::SourceFile> files;
  files.push_back(load_source("utils/io.py", Language::python,
                              "import csv\n"
                              "\n"
                              "\n"
                              "def load_data(path, fmt):\n"
                              "    with open(path) as fh:\n"
                              "        return list(csv.reader(fh)) if fmt == 'csv' else fh.read()\n"));
  files.push_back(load_source("main.py", Language::python,
                              "def run():\n"
                              "    return 0\n"));
  files.push_back(load_source("structures.py", Language::python,
                              "class RingBuffer:\n"
                              "    def push(self, item):\n"
                              "        self.items.append(item)\n"
                              "\n"
                              "\n"
                              "class MathUtil:\n"
                              "    @staticmethod\n"
                              "    def clamp(x, lo, hi):\n"
                              "        return max(lo, min(x, hi))\n"
                              "\n"
                              "\n"
                              "class Config:\n"
                              "    @classmethod\n"
                              "    def from_file(cls, path):\n"
                              "        return cls()\n"
                              "\n"
                              "\n"
                              "class HTTPServer:\n"
                              "    def __init__(self, host, port=8080):\n"
                              "        self.addr = (host, port)\n"
                              "\n"
                              "\n"
                              "class Registry:\n"
                              "    def __init__(self):\n"
                              "        self.items = {}\n"));
  files.push_back(load_source("src/RingQueue.java", Language::java,
                              "package demo;\n"
                              "\n"
                              "public class RingQueue {\n"
                              "    private int count;\n"
                              "\n"
                              "    public int size() {\n"
                              "        return count;\n"
                              "    }\n"
                              "}\n"));
  files.push_back(load_source("src/StringUtils.java", Language::java,
                              "package demo;\n"
                              "\n"
                              "import java.util.List;\n"
                              "\n"
                              "public final class StringUtils {\n"
                              "    public static List<String> splitWords(String text, int limit) {\n"
                              "        return List.of(text.split(\" \", limit));\n"
                              "    }\n"
                              "}\n"));
  files.push_back(load_source("src/Matrix.java", Language::java,
                              "package demo;\n"
                              "\n"
                              "public class Matrix {\n"
                              "    private double[][] cells;\n"
                              "\n"
                              "    public double[] row(int i) {\n"
                              "        return cells[i];\n"
                              "    }\n"
                              "}\n"));
  files.push_back(load_source("src/Account.java", Language::java,
                              "package demo;\n"
                              "\n"
                              "public class Account {\n"
                              "    private final String owner;\n"
                              "    private long balance;\n"
                              "\n"
                              "    public Account(String owner, long balance) {\n"
                              "        this.owner = owner;\n"
                              "        this.balance = balance;\n"
                              "    }\n"
                              "}\n"));
  files.push_back(load_source("src/Graph.java", Language::java,
                              "package demo;\n"
                              "\n"
                              "public class Graph {\n"
                              "    class Node {\n"
                              "        void link(Node other) {\n"
                              "            other.hashCode();\n"
                              "        }\n"
                              "    }\n"
                              "}\n"));
  return files;
}

// Keyed by "file::Class.name" (no class part for module functions).
inline std::map<std::string, std::vector<std::string>> expected() {
  return {
      {"utils/io.py::load_data", {"load_data(path, fmt)", "io.load_data(path, fmt)", "load_data()", "io.load_data()"}},
      {"main.py::run", {"run()", "main.run()"}},
      {"structures.py::RingBuffer.push",
       {"ring_buffer.push(item)", "RingBuffer.push(item)", "ring_buffer.push()", "RingBuffer.push()"}},
      {"structures.py::MathUtil.clamp",
       {"math_util.clamp(x, lo, hi)", "MathUtil.clamp(x, lo, hi)", "math_util.clamp()", "MathUtil.clamp()"}},
      {"structures.py::Config.from_file",
       {"config.from_file(path)", "Config.from_file(path)", "config.from_file()", "Config.from_file()"}},
      {"structures.py::HTTPServer.__init__",
       {"HTTPServer(host, port)", "http_server = HTTPServer(host, port)", "HTTPServer()", "http_server = HTTPServer()"}},
      {"structures.py::Registry.__init__", {"Registry()", "registry = Registry()"}},
      {"src/RingQueue.java::RingQueue.size", {"ringQueue.size()"}},
      {"src/StringUtils.java::StringUtils.splitWords",
       {"stringUtils.splitWords(text, limit)", "StringUtils.splitWords(text, limit)",
        "List<String> list = stringUtils.splitWords(text, limit)"}},
      {"src/Matrix.java::Matrix.row", {"matrix.row(i)", "double[] doubleArray = matrix.row(i)"}},
      {"src/Account.java::Account.Account",
       {"Account account = new Account(owner, balance)", "new Account(owner, balance)"}},
      {"src/Graph.java::Node.link", {"graph.node.link(other)"}},
  };
}

inline std::string key(const apiinfer::ApiRecord& r) {
  return r.file + "::" + (r.class_name ? *r.class_name + "." : std::string()) + r.name;
}

}  // namespace ue_fixture
