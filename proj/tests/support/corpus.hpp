#pragma once

// The hand-written corpus in tests/corpus with the initial settings each
// program is run from.

#include <string>
#include <utility>
#include <vector>

#include "cuc/ast.hpp"

namespace cuc::testing {

struct CorpusEntry {
  std::string file;  // relative to the corpus directory
  std::vector<std::pair<std::string, std::vector<Value>>> store;
  Label pc = 1;
};

const std::vector<CorpusEntry>& corpus();

std::string corpus_dir();
std::string programs_dir();
std::string read_text(const std::string& path);

CodeTree load_corpus_program(const CorpusEntry& e);
StateSet corpus_initial_states(const CorpusEntry& e);

}  // namespace cuc::testing
