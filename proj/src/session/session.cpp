#include "wargame/session/session.hpp"

#include <istream>
#include <ostream>

#include "wargame/parsing/parser.hpp"
#include "wargame/util/text.hpp"
#include "wargame/util/time.hpp"

namespace wargame {

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::Briefing:
      return "briefing";
    case Phase::Move1Dialog:
      return "move1-dialog";
    case Phase::Move1Answer:
      return "move1-answer";
    case Phase::Move2Brief:
      return "move2-brief";
    case Phase::Move2Dialog:
      return "move2-dialog";
    case Phase::Move2Answer:
      return "move2-answer";
    case Phase::Complete:
      return "complete";
    case Phase::Failed:
      break;
  }
  return "failed";
}

GameSession::GameSession(const PromptBuilder& prompts, Gateway& gateway, GameSetup setup)
    : prompts_(&prompts), gateway_(&gateway), setup_(std::move(setup)), backend_(gateway.descriptor()) {
  if (setup_.game_id.empty()) throw ConfigError("game id is empty");
  if (setup_.team.size() != kTeamSize)
    throw ConfigError("team must have " + std::to_string(kTeamSize) + " players, got " +
                      std::to_string(setup_.team.size()));
  for (const auto& p : setup_.team) validate_profile(p);
  if (setup_.variant.dialog_chunks < 0) throw ConfigError("dialog_chunks must be >= 0");
  if (setup_.variant.words_per_chunk <= 0) throw ConfigError("words_per_chunk must be > 0");
  moves_.resize(2);
  moves_[0].move = 1;
  moves_[1].move = 2;
  started_at_ = util::iso8601_now();
}

Move GameSession::current_move() const noexcept {
  switch (phase_) {
    case Phase::Briefing:
    case Phase::Move1Dialog:
    case Phase::Move1Answer:
      return Move::One;
    default:
      return Move::Two;
  }
}

void GameSession::push_user(std::string text) {
  move_record().transcript.push_back({Role::User, text, {}, {}});
  history_.push_back({Role::User, std::move(text)});
}

void GameSession::prompt(std::string text) {
  if (awaiting_reply_) return;
  push_user(std::move(text));
  awaiting_reply_ = true;
}

std::string GameSession::request(TurnKind kind, int budget_words) {
  CompletionRequest req;
  req.game_key = setup_.game_id;
  req.turn_index = turn_index_;
  req.history = history_;
  req.budget_words = budget_words;
  req.kind = kind;
  req.move = current_move();
  req.chunk_index = chunk_;
  req.treatment = setup_.treatment;
  req.variant = setup_.variant;
  req.seed = setup_.seed;
  CompletionResult res = gateway_->complete(req);
  ++turn_index_;
  awaiting_reply_ = false;
  move_record().transcript.push_back({Role::Assistant, res.text, res.request_hash, std::string(to_string(kind))});
  history_.push_back({Role::Assistant, res.text});
  return res.text;
}

void GameSession::after_brief(Move m) {
  chunk_ = 0;
  if (m == Move::One)
    phase_ = setup_.variant.dialog_chunks > 0 ? Phase::Move1Dialog : Phase::Move1Answer;
  else
    phase_ = setup_.variant.dialog_chunks > 0 ? Phase::Move2Dialog : Phase::Move2Answer;
}

void GameSession::answer_step() {
  const Move m = current_move();
  MoveRecord& rec = move_record();
  const bool first = rec.elicitations == 0;
  prompt(first ? prompts_->answer_elicitation(m, setup_.variant) : prompts_->reelicit_reminder());
  const std::string text = request(first ? TurnKind::Answer : TurnKind::Reelicit, kAnswerBudgetWords);
  ++rec.elicitations;
  rec.answer_text = text;
  try {
    const ParseOutcome out = parse_selection(text, m);
    rec.confidence = std::string(to_string(out.confidence));
    rec.diagnostics = out.diagnostics;
    response_.selections = response_.selections | out.selections.only(m);
    if (m == Move::One) {
      response_.end_state_1 = parse_end_state(text).text;
      phase_ = Phase::Move2Brief;
      chunk_ = 0;
    } else {
      response_.end_state_2 = parse_end_state(text).text;
      response_.course_plan_2 = parse_course_of_action(text).text;
      phase_ = Phase::Complete;
      finished_at_ = util::iso8601_now();
    }
  } catch (const ParseError& e) {
    rec.confidence.clear();
    rec.diagnostics.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    if (rec.elicitations > kMaxReelicits) {
      failure_ = "move " + std::to_string(static_cast<int>(m)) + " answer unparseable after " +
                 std::to_string(rec.elicitations) + " elicitations: " + e.what();
      phase_ = Phase::Failed;
      finished_at_ = util::iso8601_now();
    }
  }
}

void GameSession::step() {
  switch (phase_) {
    case Phase::Briefing:
      if (history_.empty()) {
        history_.push_back({Role::System, prompts_->system_prompt(setup_.team, setup_.variant)});
        moves_[0].transcript.push_back({Role::System, history_.back().content, {}, {}});
        push_user(prompts_->move1_prompt(setup_.treatment, setup_.variant));
      }
      after_brief(Move::One);
      return;
    case Phase::Move1Dialog:
    case Phase::Move2Dialog: {
      const Move m = current_move();
      prompt(prompts_->dialog_instruction(m, chunk_, setup_.variant));
      request(TurnKind::Dialog, setup_.variant.words_per_chunk);
      if (++chunk_ >= setup_.variant.dialog_chunks) {
        chunk_ = 0;
        phase_ = m == Move::One ? Phase::Move1Answer : Phase::Move2Answer;
      }
      return;
    }
    case Phase::Move1Answer:
    case Phase::Move2Answer:
      answer_step();
      return;
    case Phase::Move2Brief:
      prompt(prompts_->move2_handshake(setup_.variant));
      request(TurnKind::Handshake, kHandshakeBudgetWords);
      push_user(prompts_->move2_prompt(setup_.treatment.china_posture));
      after_brief(Move::Two);
      return;
    case Phase::Complete:
    case Phase::Failed:
      return;
  }
}

GameRecord GameSession::record() const {
  GameRecord r;
  r.game_id = setup_.game_id;
  r.experiment = setup_.experiment;
  r.source = RecordSource::Llm;
  r.team_index = setup_.team_index;
  r.team = setup_.team;
  r.treatment = setup_.treatment;
  r.variant = setup_.variant;
  r.seed = setup_.seed;
  r.backend = backend_;
  r.scenario_version = prompts_->script().version();
  r.parser_rules = std::string(kParserRulesVersion);
  for (const auto& m : moves_)
    if (!m.transcript.empty()) r.moves.push_back(m);
  r.started_at = started_at_;
  r.finished_at = finished_at_;
  if (phase_ == Phase::Complete) {
    r.status = RecordStatus::Complete;
    r.response = response_;
  } else if (phase_ == Phase::Failed) {
    r.status = RecordStatus::Failed;
    r.failure = failure_;
  } else {
    r.status = RecordStatus::Incomplete;
    r.failure = "stopped in phase " + std::string(to_string(phase_));
  }
  return r;
}

GameRecord run_game(const PromptBuilder& prompts, Gateway& gateway, const GameSetup& setup) {
  GameSession session(prompts, gateway, setup);
  try {
    while (!session.done()) session.step();
  } catch (const GatewayError& e) {
    GameRecord partial = session.record();
    partial.failure = std::string(e.type()) + " in phase " + std::string(to_string(session.phase())) + ": " + e.what();
    partial.finished_at = util::iso8601_now();
    const std::string what = "game " + setup.game_id + " aborted: " + partial.failure;
    throw SessionAborted(what, std::move(partial), std::string(e.type()));
  }
  return session.record();
}

void StreamChannel::show(std::string_view text) { *out_ << text << "\n\n" << std::flush; }

std::optional<std::string> StreamChannel::ask(std::string_view prompt) {
  *out_ << prompt << std::flush;
  std::string line;
  if (!std::getline(*in_, line)) return std::nullopt;
  return line;
}

std::optional<ActionSet> parse_letter_entry(std::string_view input, Move move) {
  std::string s = util::to_lower(util::trim(input));
  for (char& c : s)
    if (c == ',' || c == ';' || c == '(' || c == ')') c = ' ';
  ActionSet out;
  bool none = false;
  bool letters = false;
  for (const auto& tok : util::split(s, ' ')) {
    if (tok.empty()) continue;
    if (tok == "none") {
      none = true;
      continue;
    }
    const auto idx = catalog().find(move, tok);
    if (!idx) return std::nullopt;
    out.set(*idx);
    letters = true;
  }
  if (none == letters) return std::nullopt;
  return out;
}

namespace {

std::string valid_letters(Move m) {
  std::vector<std::string> codes;
  for (const auto& a : catalog().actions(m)) codes.emplace_back(a.code);
  return util::join(codes, ", ");
}

}  // namespace

GameRecord run_human_game(const PromptBuilder& prompts, InteractiveChannel& io, const GameSetup& setup) {
  for (const auto& p : setup.team) validate_profile(p);
  GameRecord r;
  r.game_id = setup.game_id;
  r.experiment = setup.experiment;
  r.source = RecordSource::Human;
  r.team_index = setup.team_index;
  r.team = setup.team;
  r.treatment = setup.treatment;
  r.variant = setup.variant;
  r.seed = setup.seed;
  r.backend = {"human", "operator", "", 0.0, ""};
  r.scenario_version = prompts.script().version();
  r.started_at = util::iso8601_now();
  ResponseVector response;

  auto abort = [&](int move) {
    r.status = RecordStatus::Incomplete;
    r.failure = "operator aborted during move " + std::to_string(move);
    r.finished_at = util::iso8601_now();
    return r;
  };
  auto ask = [&](MoveRecord& rec, const std::string& prompt) -> std::optional<std::string> {
    auto answer = io.ask(prompt);
    if (answer) {
      rec.transcript.push_back({Role::User, prompt, {}, {}});
      rec.transcript.push_back({Role::Assistant, *answer, {}, "answer"});
    }
    return answer;
  };

  for (Move m : {Move::One, Move::Two}) {
    MoveRecord rec;
    rec.move = static_cast<int>(m);
    const std::string brief =
        m == Move::One ? prompts.move1_prompt(setup.treatment, setup.variant)
                       : prompts.move2_prompt(setup.treatment.china_posture);
    io.show(brief);
    rec.transcript.push_back({Role::User, brief, {}, {}});
    r.moves.push_back(rec);
    MoveRecord& cur = r.moves.back();

    std::string course;
    if (m == Move::Two) {
      const auto c = ask(cur, "Course of action: ");
      if (!c) return abort(2);
      course = std::string(util::trim(*c));
    }
    const std::string label = m == Move::One ? "orders" : "actions";
    std::optional<ActionSet> picked;
    while (!picked) {
      const auto line = ask(cur, "Selected " + label + " (letters separated by commas, or none): ");
      if (!line) return abort(static_cast<int>(m));
      ++cur.elicitations;
      picked = parse_letter_entry(*line, m);
      if (!picked) io.show("Unrecognised selection '" + *line + "'. Valid letters: " + valid_letters(m) + ", none.");
    }
    const auto end_state = ask(cur, "Desired end state: ");
    if (!end_state) return abort(static_cast<int>(m));
    cur.answer_text = render_selection(*picked, m);
    cur.confidence = std::string(to_string(ParseConfidence::ExactLetters));
    response.selections = response.selections | *picked;
    if (m == Move::One) {
      response.end_state_1 = std::string(util::trim(*end_state));
    } else {
      response.end_state_2 = std::string(util::trim(*end_state));
      response.course_plan_2 = course;
    }
  }
  r.status = RecordStatus::Complete;
  r.response = response;
  r.finished_at = util::iso8601_now();
  return r;
}

}  // namespace wargame
