#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>

#include <sys/wait.h>
#include <vector>

#include "driftkit/bpe.hpp"

namespace driftkit::testing {

inline std::filesystem::path source_dir() { return DRIFTKIT_SOURCE_DIR; }

inline std::filesystem::path desk_corpus() { return source_dir() / "data" / "corpus" / "desk.jsonl"; }
inline std::filesystem::path desk_tokenizer() { return source_dir() / "data" / "tokenizers" / "desk-llama3.json"; }

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("driftkit-" + tag + "-" + std::to_string(rd()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Character-level spec: every listed token gets the next id, merges in order.
inline TokenizerSpec char_spec(const std::vector<std::string>& tokens,
                               const std::vector<std::pair<std::string, std::string>>& merges,
                               bool pretokenize = false) {
  TokenizerSpec spec;
  spec.name = "fixture";
  std::int64_t id = 0;
  for (const auto& t : tokens) spec.vocab.emplace(t, id++);
  spec.merges = merges;
  spec.pretokenizer.enabled = pretokenize;
  return spec;
}

/// Byte-level spec with all 256 byte symbols plus merges building each of `words`
/// left to right (each word is given as raw bytes).
inline TokenizerSpec byte_spec(const std::vector<std::string>& words, PretokenizerConfig pre = PretokenizerConfig::llama3()) {
  TokenizerSpec spec;
  spec.name = "byte-fixture";
  spec.byte_level = true;
  spec.pretokenizer = pre;
  std::int64_t id = 0;
  for (int b = 0; b < 256; ++b) spec.vocab.emplace(byte_symbol(static_cast<unsigned char>(b)), id++);
  for (const auto& w : words) {
    std::string acc = byte_symbol(static_cast<unsigned char>(w[0]));
    for (std::size_t k = 1; k < w.size(); ++k) {
      const std::string next = byte_symbol(static_cast<unsigned char>(w[k]));
      if (!spec.vocab.contains(acc + next)) {
        spec.merges.emplace_back(acc, next);
        spec.vocab.emplace(acc + next, id++);
      }
      acc += next;
    }
  }
  return spec;
}

/// Runs a shell command, returning (exit status, captured stdout).
inline std::pair<int, std::string> run_command(const std::string& command) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace driftkit::testing
