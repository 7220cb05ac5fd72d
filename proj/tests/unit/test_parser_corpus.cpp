#include "doctest.h"
#include "support/corpus.hpp"
#include "wargame/parsing/parser.hpp"

using namespace wargame;

TEST_CASE("hand-labeled corpus is parsed exactly") {
  const auto corpus = testing::load_parser_corpus(std::string(WARGAME_FIXTURE_DIR) + "/parser_corpus.jsonl");
  REQUIRE(corpus.size() >= 30);
  int exact = 0;
  for (const auto& e : corpus) {
    CAPTURE(e.text);
    CAPTURE(e.note);
    std::string got;
    try {
      got = parse_selection(e.text, e.move).selections.to_bit_string();
    } catch (const ParseError& err) {
      got = std::string("error: ") + err.what();
    }
    CHECK(got == e.expected);
    exact += got == e.expected;
  }
  CHECK(exact == static_cast<int>(corpus.size()));
}

TEST_CASE("corpus covers every sample final-answer line") {
  const auto corpus = testing::load_parser_corpus(std::string(WARGAME_FIXTURE_DIR) + "/parser_corpus.jsonl");
  int final_lines = 0;
  for (const auto& e : corpus) final_lines += e.note.starts_with("final-answer line");
  CHECK(final_lines == 6);
}
