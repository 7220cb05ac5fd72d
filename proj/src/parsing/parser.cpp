#include "wargame/parsing/parser.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "wargame/util/text.hpp"

namespace wargame {

std::string_view to_string(ParseConfidence c) noexcept {
  switch (c) {
    case ParseConfidence::TitleMatch:
      return "title-match";
    case ParseConfidence::Mixed:
      return "mixed";
    case ParseConfidence::ExactLetters:
      break;
  }
  return "exact-letters";
}

std::string_view to_string(ParseErrorKind k) noexcept {
  switch (k) {
    case ParseErrorKind::EmptyText:
      return "EmptyText";
    case ParseErrorKind::AmbiguousNegation:
      return "AmbiguousNegation";
    case ParseErrorKind::NoSelectionFound:
      break;
  }
  return "NoSelectionFound";
}

namespace {

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// ---------------------------------------------------------------- sections

enum class HeadingKind { Selection, EndState, CourseOfAction };

struct Heading {
  std::string_view name;
  HeadingKind kind;
};

// Longer names first so "selected actions" wins over "selected".
constexpr std::array<Heading, 10> kHeadings{{
    {"selected response actions", HeadingKind::Selection},
    {"selected actions", HeadingKind::Selection},
    {"selected orders", HeadingKind::Selection},
    {"selected options", HeadingKind::Selection},
    {"selected", HeadingKind::Selection},
    {"describe your desired end state", HeadingKind::EndState},
    {"desired end state", HeadingKind::EndState},
    {"end state", HeadingKind::EndState},
    {"describe your course of action", HeadingKind::CourseOfAction},
    {"course of action", HeadingKind::CourseOfAction},
}};

struct HeadingHit {
  HeadingKind kind;
  std::size_t line_begin;
  std::size_t content_begin;
};

// Recognizes a heading line such as "**Selected Orders:** (b)" or "(1) Desired End State:".
std::optional<HeadingHit> match_heading(const std::string& low, std::size_t line_begin, std::size_t line_end) {
  std::size_t p = line_begin;
  auto skip_decor = [&] {
    while (p < line_end && (is_space(low[p]) || low[p] == '*' || low[p] == '#' || low[p] == '-' || low[p] == '_'))
      ++p;
  };
  skip_decor();
  // optional numbering: "(1)", "1.", "1)"
  if (p + 2 < line_end && low[p] == '(' && is_digit(low[p + 1]) && low[p + 2] == ')') {
    p += 3;
  } else if (p + 1 < line_end && is_digit(low[p]) && (low[p + 1] == '.' || low[p + 1] == ')')) {
    p += 2;
  }
  skip_decor();
  for (const auto& h : kHeadings) {
    if (low.compare(p, h.name.size(), h.name) != 0) continue;
    std::size_t q = p + h.name.size();
    if (q < line_end && is_alnum(low[q])) continue;
    while (q < line_end && (low[q] == '*' || low[q] == '_' || low[q] == ' ' || low[q] == '\t')) ++q;
    if (q < line_end && low[q] == ':') {
      ++q;
      while (q < line_end && (low[q] == '*' || low[q] == '_')) ++q;
      return HeadingHit{h.kind, line_begin, q};
    }
    if (q >= line_end || low[q] == '\r') return HeadingHit{h.kind, line_begin, std::min(line_end + 1, low.size())};
    return std::nullopt;
  }
  return std::nullopt;
}

struct Section {
  bool found = false;
  std::size_t begin = 0;
  std::size_t end = 0;
};

Section find_section(const std::string& low, HeadingKind kind) {
  std::vector<HeadingHit> hits;
  std::size_t line = 0;
  while (line <= low.size()) {
    std::size_t nl = low.find('\n', line);
    if (nl == std::string::npos) nl = low.size();
    if (auto h = match_heading(low, line, nl)) hits.push_back(*h);
    line = nl + 1;
  }
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (hits[i].kind != kind) continue;
    Section s;
    s.found = true;
    s.begin = hits[i].content_begin;
    s.end = low.size();
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      if (hits[j].line_begin >= s.begin) {
        s.end = hits[j].line_begin;
        break;
      }
    }
    return s;
  }
  return {};
}

// ------------------------------------------------------------------- cues

enum class CueKind { Affirm, NegVerbal, NegObject };

struct Pattern {
  std::string_view text;
  CueKind kind;
  bool stem;  // matches any word continuing the text
};

constexpr std::array<Pattern, 28> kCues{{
    {"select", CueKind::Affirm, true},
    {"choos", CueKind::Affirm, true},
    {"chose", CueKind::Affirm, true},
    {"recommend", CueKind::Affirm, true},
    {"opt for", CueKind::Affirm, false},
    {"opting for", CueKind::Affirm, false},
    {"authoriz", CueKind::Affirm, true},
    {"authoris", CueKind::Affirm, true},
    {"includ", CueKind::Affirm, true},
    {"support", CueKind::Affirm, true},
    {"prefer", CueKind::Affirm, true},
    {"endors", CueKind::Affirm, true},
    {"adopt", CueKind::Affirm, true},
    {"approv", CueKind::Affirm, true},
    {"go with", CueKind::Affirm, false},
    {"proceed with", CueKind::Affirm, false},
    {"consensus", CueKind::Affirm, false},
    {"converging", CueKind::Affirm, false},
    {"tending toward", CueKind::Affirm, true},
    {"not", CueKind::NegVerbal, false},
    {"never", CueKind::NegVerbal, false},
    {"cannot", CueKind::NegVerbal, false},
    {"avoid", CueKind::NegObject, true},
    {"rather than", CueKind::NegObject, false},
    {"reject", CueKind::NegObject, true},
    {"exclud", CueKind::NegObject, true},
    {"instead of", CueKind::NegObject, false},
    {"against", CueKind::NegObject, false},
}};

struct CueHit {
  std::size_t pos;
  std::size_t end;
  CueKind kind;
};

std::vector<CueHit> scan_cues(std::string_view s) {
  std::vector<CueHit> hits;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "n't") == 0 || s.compare(i, 5, "n\xE2\x80\x99t") == 0) {
      const std::size_t len = s[i + 1] == '\'' ? 3 : 5;
      hits.push_back({i, i + len, CueKind::NegVerbal});
      i += len - 1;
      continue;
    }
    if (i > 0 && is_alpha(s[i - 1])) continue;
    for (const auto& p : kCues) {
      if (s.compare(i, p.text.size(), p.text) != 0) continue;
      std::size_t end = i + p.text.size();
      if (p.stem) {
        while (end < s.size() && is_alpha(s[end])) ++end;
      } else if (end < s.size() && is_alpha(s[end])) {
        continue;
      }
      if (p.text == "against") {
        // only "against option..." or directly before the mention
        std::size_t q = end;
        while (q < s.size() && is_space(s[q])) ++q;
        if (q < s.size() && s.compare(q, 6, "option") != 0) continue;
      }
      hits.push_back({i, end, p.kind});
      i = end - 1;
      break;
    }
  }
  return hits;
}

// Words from `from` to `to`, or npos when punctuation intervenes.
std::size_t plain_words_between(std::string_view s, std::size_t from, std::size_t to) {
  std::size_t n = 0;
  bool in_word = false;
  for (std::size_t i = from; i < to && i < s.size(); ++i) {
    if (!is_space(s[i]) && !is_alpha(s[i]) && s[i] != '\'') return std::string_view::npos;
    const bool w = is_alpha(s[i]);
    if (w && !in_word) ++n;
    in_word = w;
  }
  return n;
}

// A verbal negator ("not", "n't", "never") also negates a selection verb up
// to three words after it: "we would not select".
bool prefix_negated(std::string_view prefix) {
  constexpr std::size_t kNone = std::string_view::npos;
  enum { None, Aff, Neg } state = None;
  std::size_t verbal_end = kNone;
  for (const auto& h : scan_cues(prefix)) {
    if (h.kind == CueKind::NegVerbal) {
      state = Neg;
      verbal_end = h.end;
    } else if (h.kind == CueKind::NegObject) {
      state = Neg;
      verbal_end = kNone;
    } else if (!(state == Neg && verbal_end != kNone && plain_words_between(prefix, verbal_end, h.pos) <= 3)) {
      state = Aff;
      verbal_end = kNone;
    }
  }
  return state == Neg;
}

bool has_affirm_cue(std::string_view clause) {
  const auto hits = scan_cues(clause);
  return std::any_of(hits.begin(), hits.end(), [](const CueHit& h) { return h.kind == CueKind::Affirm; });
}

// --------------------------------------------------------------- mentions

struct Mention {
  std::size_t action;
  std::size_t begin;
  std::size_t end;
  bool letter;
};

class Scanner {
 public:
  Scanner(std::string_view text, Move move, std::size_t lo, std::size_t hi)
      : text_(text), low_(util::to_lower(text)), move_(move), lo_(lo), hi_(hi) {}

  void run(ParseOutcome& out);

 private:
  void scan_letters();
  void absorb_titles();
  void scan_titles();
  bool in_span(std::size_t pos) const;
  bool is_delimiter(std::size_t pos, std::size_t& len) const;
  std::size_t clause_begin(std::size_t pos) const;
  std::size_t clause_end(std::size_t pos) const;
  std::string masked(std::size_t from, std::size_t to) const;
  bool military_context(std::size_t pos) const;
  void add_letter(std::string_view code, std::size_t begin, std::size_t end);
  bool none_statement() const;

  std::string_view text_;
  std::string low_;
  Move move_;
  std::size_t lo_, hi_;
  std::vector<Mention> mentions_;
  std::vector<std::string> notes_;
};

void Scanner::add_letter(std::string_view code, std::size_t begin, std::size_t end) {
  const auto idx = catalog().find(move_, code);
  if (!idx) {
    notes_.push_back("ignored unknown option (" + std::string(code) + ") for " + std::string(to_string(move_)) +
                     " at offset " + std::to_string(begin));
    return;
  }
  mentions_.push_back({*idx, begin, end, true});
}

bool Scanner::military_context(std::size_t pos) const {
  for (const auto& m : mentions_)
    if (m.letter && m.begin < pos && catalog().at(m.action).code == "a") return true;
  const auto at = low_.find("military action", lo_);
  return at != std::string::npos && at < pos;
}

void Scanner::scan_letters() {
  const std::string& s = low_;
  auto at = [&](std::size_t i) -> char { return i < hi_ ? s[i] : '\0'; };
  std::size_t i = lo_;
  while (i < hi_) {
    const char c = s[i];
    if (c == '(') {
      if (move_ == Move::Two && at(i + 1) == 'a' && at(i + 2) == ')' && at(i + 3) == '(' && at(i + 4) >= '1' &&
          at(i + 4) <= '3' && at(i + 5) == ')') {
        add_letter(std::string("a") + at(i + 4), i, i + 6);
        i += 6;
        continue;
      }
      if (is_alpha(at(i + 1)) && is_digit(at(i + 2)) && at(i + 3) == ')') {
        add_letter(std::string(1, at(i + 1)) + at(i + 2), i, i + 4);
        i += 4;
        continue;
      }
      if (is_alpha(at(i + 1)) && at(i + 2) == ')') {
        add_letter(std::string(1, at(i + 1)), i, i + 3);
        i += 3;
        continue;
      }
      if (move_ == Move::Two && at(i + 1) >= '1' && at(i + 1) <= '3' && at(i + 2) == ')' && military_context(i)) {
        add_letter(std::string("a") + at(i + 1), i, i + 3);
        i += 3;
        continue;
      }
    } else if (c >= 'a' && c <= 'z' && text_[i] == c && at(i + 1) == ')' && !is_alnum(at(i + 2)) &&
               (i == lo_ || is_space(s[i - 1]) || s[i - 1] == ',')) {
      add_letter(std::string(1, c), i, i + 2);
      i += 2;
      continue;
    } else if (s.compare(i, 6, "option") == 0 && (i == 0 || !is_alpha(s[i - 1]))) {
      std::size_t j = i + 6;
      if (at(j) == 's') ++j;
      if (is_alpha(at(j))) {
        ++i;
        continue;
      }
      // bare letter list: "options b, c, and e"
      for (;;) {
        while (j < hi_ && is_space(s[j])) ++j;
        if (!(is_alpha(at(j)) && !is_alnum(at(j + 1)) && at(j + 1) != ')' && at(j + 1) != '\'')) break;
        std::size_t k = j + 1;
        while (k < hi_ && s[k] == ' ') ++k;
        const bool separated = k >= hi_ || s[k] == ',' || s[k] == '.' || s[k] == ';' || s[k] == '&' ||
                               s[k] == '/' || s[k] == '\n' || s.compare(k, 4, "and ") == 0 ||
                               s.compare(k, 3, "or ") == 0;
        if (!separated) break;
        add_letter(std::string(1, s[j]), j, j + 1);
        j = k;
        for (;;) {
          while (j < hi_ && s[j] == ' ') ++j;
          if (at(j) == ',' || at(j) == '&' || at(j) == '/') {
            ++j;
          } else if (s.compare(j, 4, "and ") == 0) {
            j += 4;
          } else if (s.compare(j, 3, "or ") == 0) {
            j += 3;
          } else {
            break;
          }
        }
      }
      i = std::max(i + 6, j);
      continue;
    }
    ++i;
  }
}

// Bytes skipped between a letter and its title: spaces, quotes, dashes, colon.
std::size_t skip_joiners(const std::string& s, std::size_t i, std::size_t hi) {
  for (;;) {
    if (i < hi && (s[i] == ' ' || s[i] == '\t' || s[i] == '"' || s[i] == '\'' || s[i] == '-' || s[i] == ':')) {
      ++i;
    } else if (i + 2 < hi && static_cast<unsigned char>(s[i]) == 0xE2 &&
               static_cast<unsigned char>(s[i + 1]) == 0x80) {
      const auto b = static_cast<unsigned char>(s[i + 2]);
      if (b == 0x93 || b == 0x94 || b == 0x98 || b == 0x99 || b == 0x9C || b == 0x9D)
        i += 3;
      else
        return i;
    } else {
      return i;
    }
  }
}

std::size_t skip_closing_quote(const std::string& s, std::size_t i, std::size_t hi) {
  if (i < hi && (s[i] == '"' || s[i] == '\'')) return i + 1;
  if (i + 2 < hi && static_cast<unsigned char>(s[i]) == 0xE2 && static_cast<unsigned char>(s[i + 1]) == 0x80) {
    const auto b = static_cast<unsigned char>(s[i + 2]);
    if (b == 0x99 || b == 0x9D) return i + 3;
  }
  return i;
}

void Scanner::absorb_titles() {
  for (auto& m : mentions_) {
    const std::string title = util::to_lower(catalog().at(m.action).title);
    const std::size_t k = skip_joiners(low_, m.end, hi_);
    std::size_t len = 0;
    if (k + title.size() <= hi_ && low_.compare(k, title.size(), title) == 0) {
      len = title.size();
    } else if (title.back() == '.' && k + title.size() - 1 <= hi_ &&
               low_.compare(k, title.size() - 1, title, 0, title.size() - 1) == 0) {
      len = title.size() - 1;
    }
    if (len == 0) continue;
    // the next letter must not be swallowed
    const std::size_t new_end = skip_closing_quote(low_, k + len, hi_);
    bool clash = false;
    for (const auto& o : mentions_)
      if (&o != &m && o.begin >= m.end && o.begin < new_end) clash = true;
    if (!clash) m.end = new_end;
  }
}

void Scanner::scan_titles() {
  std::vector<Mention> cands;
  for (const auto& a : catalog().actions(move_)) {
    std::string t = util::to_lower(a.title);
    std::vector<std::string> forms{t};
    if (t.back() == '.') forms.push_back(t.substr(0, t.size() - 1));
    for (const auto& f : forms) {
      for (std::size_t p = low_.find(f, lo_); p != std::string::npos && p + f.size() <= hi_;
           p = low_.find(f, p + 1)) {
        const bool left = p == 0 || !is_alnum(low_[p - 1]);
        const bool right = p + f.size() >= low_.size() || !is_alnum(low_[p + f.size()]) || f.back() == '.';
        if (left && right) cands.push_back({a.index, p, p + f.size(), false});
      }
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Mention& x, const Mention& y) {
    if (x.end - x.begin != y.end - y.begin) return x.end - x.begin > y.end - y.begin;
    return x.begin < y.begin;
  });
  const std::size_t letters = mentions_.size();
  for (const auto& c : cands) {
    bool overlap = false;
    for (const auto& m : mentions_)
      if (c.begin < m.end && m.begin < c.end) overlap = true;
    if (!overlap) mentions_.push_back(c);
  }
  std::sort(mentions_.begin() + static_cast<std::ptrdiff_t>(letters), mentions_.end(),
            [](const Mention& x, const Mention& y) { return x.begin < y.begin; });
}

bool Scanner::in_span(std::size_t pos) const {
  return std::any_of(mentions_.begin(), mentions_.end(),
                     [&](const Mention& m) { return pos >= m.begin && pos < m.end; });
}

bool Scanner::is_delimiter(std::size_t pos, std::size_t& len) const {
  const char c = low_[pos];
  len = 1;
  if (c == ';' || c == '!' || c == '?' || c == '\n') return true;
  if (c == '.') return pos + 1 >= low_.size() || is_space(low_[pos + 1]) || low_[pos + 1] == '"';
  if (c == ' ') {
    if (low_.compare(pos, 5, " but ") == 0) {
      len = 5;
      return true;
    }
    if (low_.compare(pos, 7, " while ") == 0) {
      len = 7;
      return true;
    }
  }
  return false;
}

std::size_t Scanner::clause_begin(std::size_t pos) const {
  for (std::size_t i = pos; i > lo_; --i) {
    const std::size_t p = i - 1;
    std::size_t len = 0;
    if (!in_span(p) && is_delimiter(p, len)) return p + len;
  }
  return lo_;
}

std::size_t Scanner::clause_end(std::size_t pos) const {
  for (std::size_t p = pos; p < hi_; ++p) {
    std::size_t len = 0;
    if (!in_span(p) && is_delimiter(p, len)) return p;
  }
  return hi_;
}

std::string Scanner::masked(std::size_t from, std::size_t to) const {
  std::string out = low_.substr(from, to - from);
  for (const auto& m : mentions_)
    for (std::size_t p = std::max(m.begin, from); p < std::min(m.end, to); ++p) out[p - from] = ' ';
  return out;
}

bool Scanner::none_statement() const {
  const std::string_view sec(low_.data() + lo_, hi_ - lo_);
  for (std::string_view w : {"none", "no actions", "no action", "no options", "no orders", "nothing"}) {
    for (std::size_t p = sec.find(w); p != std::string_view::npos; p = sec.find(w, p + 1)) {
      const bool left = p == 0 || !is_alpha(sec[p - 1]);
      const bool right = p + w.size() >= sec.size() || !is_alpha(sec[p + w.size()]);
      if (left && right) return true;
    }
  }
  return false;
}

void Scanner::run(ParseOutcome& out) {
  scan_letters();
  absorb_titles();
  scan_titles();

  struct Judged {
    const Mention* m;
    bool negated;
  };
  std::vector<Judged> judged;
  bool letters_affirmed = false;
  for (const auto& m : mentions_) {
    const std::size_t cb = clause_begin(m.begin);
    const bool neg = prefix_negated(masked(cb, m.begin));
    judged.push_back({&m, neg});
    if (m.letter && !neg) letters_affirmed = true;
  }

  bool negated_seen = false;
  bool used_letters = false, used_titles = false;
  for (const auto& j : judged) {
    const Action& a = catalog().at(j.m->action);
    if (j.negated) {
      negated_seen = true;
      notes_.push_back("negated mention of " + std::string(a.label) + " at offset " + std::to_string(j.m->begin) +
                       " ignored");
      continue;
    }
    if (!j.m->letter && letters_affirmed) {
      const std::size_t cb = clause_begin(j.m->begin);
      const std::size_t ce = clause_end(j.m->end);
      if (!has_affirm_cue(masked(cb, ce))) {
        notes_.push_back("title of " + std::string(a.label) + " at offset " + std::to_string(j.m->begin) +
                         " outside the letter selections ignored");
        continue;
      }
    }
    out.selections.set(a.index);
    out.spans.push_back({a.index, j.m->begin, j.m->end - j.m->begin, j.m->letter});
    (j.m->letter ? used_letters : used_titles) = true;
  }
  std::sort(out.spans.begin(), out.spans.end(),
            [](const MatchedSpan& x, const MatchedSpan& y) { return x.offset < y.offset; });
  out.confidence = used_titles ? (used_letters ? ParseConfidence::Mixed : ParseConfidence::TitleMatch)
                               : ParseConfidence::ExactLetters;
  out.diagnostics = std::move(notes_);

  if (out.selections.empty()) {
    if (none_statement()) {
      out.explicit_none = true;
      return;
    }
    if (negated_seen)
      throw ParseError(ParseErrorKind::AmbiguousNegation,
                       "options are mentioned only in negated form; no selection can be read");
    throw ParseError(ParseErrorKind::NoSelectionFound, "no option letter or title found in the answer");
  }
}

}  // namespace

ParseOutcome parse_selection(std::string_view text, Move move) {
  if (util::trim(text).empty()) throw ParseError(ParseErrorKind::EmptyText, "answer text is empty");
  const std::string low = util::to_lower(text);
  const Section sec = find_section(low, HeadingKind::Selection);
  ParseOutcome out;
  Scanner scanner(text, move, sec.found ? sec.begin : 0, sec.found ? sec.end : text.size());
  scanner.run(out);
  return out;
}

std::string render_selection(ActionSet v, Move move) {
  std::vector<std::string> parts;
  for (const auto& a : catalog().actions(move))
    if (v.test(a.index)) parts.push_back(std::string(a.label) + " " + std::string(a.title));
  return parts.empty() ? "none" : util::join(parts, ", ");
}

namespace {

SectionText extract(std::string_view text, HeadingKind kind, bool whole_if_missing) {
  SectionText out;
  const std::string low = util::to_lower(text);
  const Section sec = find_section(low, kind);
  if (sec.found) {
    out.heading_found = true;
    out.text = std::string(util::trim(text.substr(sec.begin, sec.end - sec.begin)));
    if (out.text.empty()) out.diagnostics.push_back("heading present but its section is empty");
  } else if (whole_if_missing) {
    out.text = std::string(util::trim(text));
    if (out.text.empty()) out.diagnostics.push_back("empty answer text");
  }
  return out;
}

}  // namespace

SectionText parse_end_state(std::string_view text) { return extract(text, HeadingKind::EndState, true); }

SectionText parse_course_of_action(std::string_view text) {
  return extract(text, HeadingKind::CourseOfAction, false);
}

}  // namespace wargame
