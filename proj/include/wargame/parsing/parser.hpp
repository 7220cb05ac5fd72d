#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wargame/core/response.hpp"
#include "wargame/util/error.hpp"

namespace wargame {

enum class ParseConfidence : std::uint8_t { ExactLetters, TitleMatch, Mixed };
std::string_view to_string(ParseConfidence c) noexcept;

enum class ParseErrorKind : std::uint8_t { EmptyText, NoSelectionFound, AmbiguousNegation };
std::string_view to_string(ParseErrorKind k) noexcept;

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

struct MatchedSpan {
  std::size_t action;  // catalog index
  std::size_t offset;  // byte offset into the parsed text
  std::size_t length;
  bool from_letter;

  friend bool operator==(const MatchedSpan&, const MatchedSpan&) = default;
};

struct ParseOutcome {
  ActionSet selections;  // only bits of the parsed move
  std::vector<MatchedSpan> spans;
  ParseConfidence confidence = ParseConfidence::ExactLetters;
  bool explicit_none = false;
  std::vector<std::string> diagnostics;

  friend bool operator==(const ParseOutcome&, const ParseOutcome&) = default;
};

// Versioned pattern lists used by the selection parser.
inline constexpr std::string_view kParserRulesVersion = "selection-rules-v1";

// Reads the final selections of one move from free text.
//
// Letter rule: "(b)", "b)", "(a1)", "(a)(1)", "(1)" after a Military Action
// mention, and bare letters after "option"/"options" ("options b, c, and e").
// A letter directly followed by its own title absorbs the title.
// Title rule: case-insensitive title match (trailing period optional), longest
// match first. With letters present, a title outside the letter spans only
// counts in a clause that carries an explicit selection verb.
// Negated mentions ("not (d)", "avoid", "rather than", ...) never set bits.
//
// When the text has a "Selected Orders:" / "Selected Actions:" heading only
// the section under it is read. Throws ParseError.
ParseOutcome parse_selection(std::string_view text, Move move);

// Canonical "(x) Title" list joined by ", "; "none" when the move is empty.
std::string render_selection(ActionSet v, Move move);

struct SectionText {
  std::string text;
  bool heading_found = false;
  std::vector<std::string> diagnostics;
};

// Prose after the "Desired End State" heading, or the whole text without one.
SectionText parse_end_state(std::string_view text);
// Prose after the "Course of Action" heading, or empty without one.
SectionText parse_course_of_action(std::string_view text);

}  // namespace wargame
