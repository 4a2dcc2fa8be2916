// Synthetic program-alignment corpora with known-by-construction outcomes.
// Each problem has a python source plus java and cpp targets, every program
// being the same count of blank-line-separated blocks. The corrupted variant
// damages the java target of selected problems in one of three ways, and the
// expected_* fields carry the resulting rejection tallies for the mock
// backend's deterministic behavior.
#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

namespace fixtures {

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path = std::filesystem::temp_directory_path() /
           (tag + "-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

enum class Corruption { None, Parsing, Mismatch, Filtered };

struct ProblemSpec {
  std::string id;
  int blocks = 0;
  Corruption corruption = Corruption::None;
};

struct CorpusFixture {
  std::vector<ProblemSpec> specs;
  std::string pa_jsonl;

  // expected unordered-mode outcome under the mock backend
  std::uint64_t expected_accepted = 0;
  std::uint64_t expected_parsing = 0;
  std::uint64_t expected_mismatch = 0;
  std::uint64_t expected_filtered = 0;
};

inline std::string python_block(int j, int salt) {
  return "a" + std::to_string(j) + " = " + std::to_string(j) + "\n" +
         "b" + std::to_string(j) + " = a" + std::to_string(j) + " + " +
         std::to_string(salt) + "\n";
}

inline std::string c_block(int j, int salt) {
  return "int a" + std::to_string(j) + " = " + std::to_string(j) + ";\n" +
         "int b" + std::to_string(j) + " = a" + std::to_string(j) + " + " +
         std::to_string(salt) + ";\n";
}

inline std::string join_blocks(const std::vector<std::string>& blocks) {
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n";
    out += blocks[i];
  }
  return out;
}

inline CorpusFixture make_corpus(int problems, bool corrupted) {
  CorpusFixture fx;
  nlohmann::ordered_json record;
  std::string jsonl;

  for (int i = 0; i < problems; ++i) {
    ProblemSpec spec;
    char id[16];
    std::snprintf(id, sizeof(id), "prob%03d", i);
    spec.id = id;
    spec.blocks = 2 + (i % 4);
    if (corrupted) {
      if (i < 5) spec.corruption = Corruption::Parsing;
      else if (i < 10) spec.corruption = Corruption::Mismatch;
      else if (i < 15) spec.corruption = Corruption::Filtered;
    }

    std::vector<std::string> py, java, cpp;
    for (int j = 1; j <= spec.blocks; ++j) {
      py.push_back(python_block(j, i));
      java.push_back(c_block(j, i));
      cpp.push_back(c_block(j, i));
    }

    const int b = spec.blocks;
    switch (spec.corruption) {
      case Corruption::None:
        fx.expected_accepted += 3 * b;
        break;
      case Corruption::Parsing:
        // unterminated string inside the last java block: stage 2 re-emits
        // it verbatim and segmentation fails for that one target
        java.back() += "String s = \"oops;\n";
        fx.expected_parsing += 1;     // one event for the failed (py, java) rewrite
        fx.expected_accepted += b;    // only cpp-python survives
        break;
      case Corruption::Mismatch:
        // one block fewer: the mock inserts b-1 comments, so java's
        // signature disagrees with both other members
        java.pop_back();
        fx.expected_mismatch += 2;    // java-cpp and java-python
        fx.expected_accepted += b;    // cpp-python survives
        break;
      case Corruption::Filtered:
        // an import-only block: both pairs touching java lose that index
        java[1] = "import java.util.ArrayList;\n";
        fx.expected_filtered += 2;
        fx.expected_accepted += 3 * b - 2;
        break;
    }

    const auto add = [&](const char* lang, const std::vector<std::string>& blocks) {
      record = {{"problem_id", spec.id},
                {"language", lang},
                {"source_text", join_blocks(blocks)}};
      jsonl += record.dump();
      jsonl += "\n";
    };
    add("python", py);
    add("java", java);
    add("cpp", cpp);

    fx.specs.push_back(std::move(spec));
  }

  fx.pa_jsonl = std::move(jsonl);
  return fx;
}

}  // namespace fixtures
