// wargame: run, ingest, analyze and play the two-move crisis wargame.

#include <unistd.h>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wargame/experiment/config.hpp"
#include "wargame/experiment/human.hpp"
#include "wargame/experiment/runner.hpp"
#include "wargame/gateway/scripted.hpp"
#include "wargame/parsing/parser.hpp"
#include "wargame/report/bundle.hpp"
#include "wargame/util/text.hpp"
#include "wargame/util/time.hpp"

namespace fs = std::filesystem;
using namespace wargame;

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailedGames = 1;
constexpr int kUsage = 2;
constexpr int kError = 3;

struct RunFlags {
  std::string config;
  std::optional<int> dialog_chunks, words_per_chunk, teams, parallelism;
  std::optional<std::uint64_t> seed;
  std::string store, transcripts, backend, fixture, persona, name;
  std::size_t max_games = 0;
  bool allow_partial = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("config", f.config, "Experiment YAML file")->required();
  cmd->add_option("--dialog-chunks", f.dialog_chunks, "Dialog chunks per move (0 = answer directly)");
  cmd->add_option("--words-per-chunk", f.words_per_chunk, "Words requested per dialog chunk");
  cmd->add_option("--teams", f.teams, "Number of teams");
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--parallelism", f.parallelism, "Concurrent games");
  cmd->add_option("--name", f.name, "Experiment label stored in records");
  cmd->add_option("--store", f.store, "Record store (JSONL)");
  cmd->add_option("--transcripts", f.transcripts, "Transcript log (JSONL)");
  cmd->add_option("--backend", f.backend, "scripted | synthetic | http");
  cmd->add_option("--fixture", f.fixture, "Scripted backend fixture");
  cmd->add_option("--persona", f.persona, "none | strict-pacifists | aggressive-sociopaths");
  cmd->add_option("--max-games", f.max_games, "Stop after this many new games");
  cmd->add_flag("--allow-partial", f.allow_partial, "Exit 0 even when games fail");
}

ExperimentConfig configure(const RunFlags& f) {
  ExperimentConfig cfg = load_experiment_config(f.config);
  if (f.dialog_chunks) cfg.variant.dialog_chunks = *f.dialog_chunks;
  if (f.words_per_chunk) cfg.variant.words_per_chunk = *f.words_per_chunk;
  if (f.teams) cfg.n_teams = *f.teams;
  if (f.seed) cfg.master_seed = *f.seed;
  if (f.parallelism) cfg.parallelism = *f.parallelism;
  if (!f.name.empty()) cfg.name = f.name;
  if (!f.store.empty()) cfg.records = f.store;
  if (!f.transcripts.empty()) cfg.transcripts = f.transcripts;
  if (!f.backend.empty()) cfg.backend.kind = f.backend;
  if (!f.fixture.empty()) cfg.backend.fixture = f.fixture;
  if (!f.persona.empty()) cfg.variant.persona = parse_persona(f.persona);
  cfg.validate();
  return cfg;
}

void print_report(const RunReport& r, std::ostream& out) {
  out << "planned " << r.planned << ", completed " << r.completed << ", failed " << r.failed << ", skipped "
      << r.skipped << ", aborted " << r.aborted << ", not started " << r.not_started << "\n";
  for (const auto& e : r.errors) out << "  " << e << "\n";
}

int cmd_run(const RunFlags& f) {
  const ExperimentConfig cfg = configure(f);
  RunOptions opts;
  if (f.max_games) opts.max_new_games = f.max_games;
  const auto result = run_experiment(cfg, opts);
  print_report(result.report, std::cout);
  std::cout << "records: " << cfg.records.string() << "\n";
  const bool clean = result.report.failed == 0 && !result.report.partial();
  return clean || f.allow_partial ? kOk : kFailedGames;
}

int cmd_ingest(const std::string& csv, const std::string& store_path, const std::string& experiment) {
  const auto res = ingest_human_csv(csv, experiment);
  for (const auto& e : res.errors) std::cerr << csv << ":" << e.line << ": " << e.message << "\n";
  RecordStore store(store_path);
  std::size_t added = 0;
  for (const auto& r : res.records) {
    if (store.finalized(r.game_id)) continue;
    store.append(r);
    ++added;
  }
  std::cout << "ingested " << added << " of " << res.records.size() << " rows (" << res.errors.size()
            << " rejected), sha256 " << res.sha256 << "\n";
  return res.errors.empty() ? kOk : kFailedGames;
}

struct AnalyzeFlags {
  std::vector<std::string> records;
  std::vector<std::string> contrasts;
  std::string out = "report";
  std::string group_by = "experiment";
  int resamples = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  bool no_baseline = false;
  std::vector<int> lengths;
};

int cmd_analyze(const AnalyzeFlags& f) {
  ReportOptions opts;
  for (const auto& c : f.contrasts) opts.contrasts.push_back(parse_contrast(c));
  opts.group_by = f.group_by;
  opts.bootstrap.resamples = f.resamples;
  opts.bootstrap.seed = f.seed;
  opts.bootstrap.threads = f.threads;
  opts.lda_random_baseline = !f.no_baseline;
  opts.expected_lengths = f.lengths;
  std::vector<GameRecord> records;
  for (const auto& p : f.records) {
    if (!fs::exists(p)) throw Error("record file not found: " + p);
    for (auto& r : RecordStore::read(p)) records.push_back(std::move(r));
  }
  const auto bundle = build_report(records, opts);
  write_bundle(bundle, f.out);
  for (const auto& w : bundle.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << bundle.files.size() << " files to " << f.out << "\n";
  return kOk;
}

volatile std::sig_atomic_t g_interrupted = 0;

void on_sigint(int) { g_interrupted = 1; }

// Reads from the terminal; an interrupt ends input like EOF.
class TerminalChannel : public StreamChannel {
 public:
  TerminalChannel(std::istream& in, std::ostream& out) : StreamChannel(in, out) {}
  std::optional<std::string> ask(std::string_view prompt) override {
    if (g_interrupted) return std::nullopt;
    auto line = StreamChannel::ask(prompt);
    if (g_interrupted) return std::nullopt;
    return line;
  }
};

struct PlayFlags {
  std::string accuracy = "low", training = "basic", posture = "revisionist";
  std::string store = "human-play.jsonl";
  std::string experiment = "human-play";
  std::string game_id;
  std::string input;
};

int cmd_play(const PlayFlags& f) {
  GameSetup setup;
  setup.treatment.ai_accuracy = parse_ai_accuracy(f.accuracy);
  setup.treatment.crew_training = parse_crew_training(f.training);
  setup.treatment.china_posture = parse_china_posture(f.posture);
  setup.experiment = f.experiment;
  setup.game_id = f.game_id.empty() ? "play-" + util::iso8601_now() : f.game_id;
  const ScenarioScript script = ScenarioScript::load_default();
  const PromptBuilder prompts(script);

  GameRecord rec;
  if (!f.input.empty()) {
    std::ifstream in(f.input);
    if (!in) throw Error("cannot read " + f.input);
    StreamChannel io(in, std::cout);
    rec = run_human_game(prompts, io, setup);
  } else {
    if (!isatty(STDIN_FILENO)) throw Error("play needs an interactive terminal (or --input FILE)");
    struct sigaction sa {};
    sa.sa_handler = on_sigint;  // no SA_RESTART: the blocked read returns
    sigaction(SIGINT, &sa, nullptr);
    TerminalChannel io(std::cin, std::cout);
    rec = run_human_game(prompts, io, setup);
  }
  RecordStore(f.store).append(rec);
  std::cout << "\n" << rec.game_id << ": " << to_string(rec.status) << " (" << f.store << ")\n";
  return rec.complete() ? kOk : kFailedGames;
}

int cmd_parse(const std::string& file, int move) {
  std::stringstream ss;
  if (file == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(file);
    if (!in) throw Error("cannot read " + file);
    ss << in.rdbuf();
  }
  const Move m = move == 2 ? Move::Two : Move::One;
  try {
    const auto out = parse_selection(ss.str(), m);
    std::cout << "bits: " << out.selections.to_bit_string() << "\n"
              << "selected: " << render_selection(out.selections, m) << "\n"
              << "confidence: " << to_string(out.confidence) << "\n";
    for (const auto& d : out.diagnostics) std::cout << "note: " << d << "\n";
  } catch (const ParseError& e) {
    std::cout << "parse error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kFailedGames;
  }
  const auto end_state = parse_end_state(ss.str());
  if (end_state.heading_found) std::cout << "end state: " << end_state.text << "\n";
  return kOk;
}

std::ofstream open_out(const std::string& path) {
  if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  return out;
}

// Plays the config's plan on the synthetic backend and saves every reply
// as a scripted fixture, so the same run replays offline.
int cmd_record_fixture(const std::string& config, const std::string& out, const std::string& model) {
  ExperimentConfig cfg = load_experiment_config(config);
  ProfileDataset dataset;
  if (!cfg.profiles.empty()) dataset = load_profiles(cfg.profiles);
  const auto plan = plan_experiment(cfg, cfg.profiles.empty() ? nullptr : &dataset);
  BackendSpec spec;
  spec.kind = "synthetic";
  spec.response_model = model;
  auto synthetic = make_backend(spec);
  RecordingBackend recorder(*synthetic);
  Gateway gateway(recorder, nullptr);
  const fs::path tmp = fs::temp_directory_path() / ("wargame-fixture-" + std::to_string(::getpid()) + ".jsonl");
  fs::remove(tmp);
  const ScenarioScript script = ScenarioScript::load_default();
  const PromptBuilder prompts(script);
  ExperimentResult res;
  {
    RecordStore store(tmp);
    res = run_experiment(plan, prompts, gateway, store, cfg.parallelism);
  }
  fs::remove(tmp);
  if (const auto parent = fs::path(out).parent_path(); !parent.empty()) fs::create_directories(parent);
  recorder.write(out);
  std::cout << "recorded " << recorder.size() << " replies for " << res.records.size() << " games to " << out << "\n";
  return res.report.completed == plan.size() ? kOk : kFailedGames;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-move crisis wargame: simulated and human teams, statistics and reports"};
  app.require_subcommand(1);
  int status = kOk;

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Play every game of an experiment config");
  add_run_flags(run, run_flags);
  run->callback([&] { status = cmd_run(run_flags); });

  auto* resume = app.add_subcommand("resume", "Continue an interrupted run from its record store");
  add_run_flags(resume, run_flags);
  resume->callback([&] { status = cmd_run(run_flags); });

  std::string ingest_csv, ingest_store = "human.jsonl", ingest_exp = "human";
  auto* ingest = app.add_subcommand("ingest", "Convert a human results CSV into game records");
  ingest->add_option("csv", ingest_csv)->required()->check(CLI::ExistingFile);
  ingest->add_option("--store", ingest_store, "Record store to append to");
  ingest->add_option("--experiment", ingest_exp, "Experiment label for the records");
  ingest->callback([&] { status = cmd_ingest(ingest_csv, ingest_store, ingest_exp); });

  AnalyzeFlags af;
  auto* analyze = app.add_subcommand("analyze", "Write tables and plot data for record files");
  analyze->add_option("records", af.records, "Record stores")->required();
  analyze->add_option("--contrast", af.contrasts, "field:A,B (repeatable)");
  analyze->add_option("--group-by", af.group_by, "Field for per-group tables and LDA classes");
  analyze->add_option("--out", af.out, "Output directory");
  analyze->add_option("--resamples", af.resamples, "Bootstrap resamples");
  analyze->add_option("--seed", af.seed, "Bootstrap seed");
  analyze->add_option("--threads", af.threads, "Bootstrap threads (results do not depend on it)");
  analyze->add_option("--expect-lengths", af.lengths, "Dialog lengths the curves should cover")->delimiter(',');
  analyze->add_flag("--no-random-baseline", af.no_baseline, "Leave random vectors out of the LDA");
  analyze->callback([&] { status = cmd_analyze(af); });

  PlayFlags pf;
  auto* play = app.add_subcommand("play", "Play one game as a human team at the terminal");
  play->add_option("--ai-accuracy", pf.accuracy, "low | high");
  play->add_option("--crew-training", pf.training, "basic | extensive");
  play->add_option("--china-posture", pf.posture, "revisionist | status-quo");
  play->add_option("--store", pf.store, "Record store to append to");
  play->add_option("--experiment", pf.experiment, "Experiment label");
  play->add_option("--game-id", pf.game_id, "Game id (default: play-<timestamp>)");
  play->add_option("--input", pf.input, "Read answers from a file instead of the terminal");
  play->callback([&] { status = cmd_play(pf); });

  std::string parse_file = "-";
  int parse_move = 1;
  auto* parse = app.add_subcommand("parse", "Run the selection parser on a saved answer");
  parse->add_option("file", parse_file, "Answer text (- for stdin)");
  parse->add_option("--move", parse_move, "1 or 2")->check(CLI::Range(1, 2));
  parse->callback([&] { status = cmd_parse(parse_file, parse_move); });

  auto* fixtures = app.add_subcommand("fixtures", "Generate synthetic datasets and replay fixtures");
  fixtures->require_subcommand(1);
  SyntheticHumanSpec hs;
  std::string human_out = "synthetic-human.csv";
  auto* fx_human = fixtures->add_subcommand("human-csv", "Synthetic dataset in the human CSV schema");
  fx_human->add_option("--out", human_out);
  fx_human->add_option("--teams", hs.teams);
  fx_human->add_option("--seed", hs.seed);
  fx_human->callback([&] {
    auto out = open_out(human_out);
    write_synthetic_human_csv(out, hs);
  });
  std::size_t prof_rows = 107;
  std::uint64_t prof_seed = 1;
  std::string prof_out = "synthetic-profiles.csv";
  auto* fx_prof = fixtures->add_subcommand("profiles", "Synthetic player profile dataset");
  fx_prof->add_option("--out", prof_out);
  fx_prof->add_option("--rows", prof_rows);
  fx_prof->add_option("--seed", prof_seed);
  fx_prof->callback([&] {
    auto out = open_out(prof_out);
    write_synthetic_profiles(out, prof_rows, prof_seed);
  });
  std::string rec_config, rec_out = "scripted.jsonl", rec_model = "human-pattern";
  auto* fx_rec = fixtures->add_subcommand("scripted", "Record a replay fixture for a config");
  fx_rec->add_option("config", rec_config)->required();
  fx_rec->add_option("--out", rec_out);
  fx_rec->add_option("--response-model", rec_model, "human-pattern | null");
  fx_rec->callback([&] { status = cmd_record_fixture(rec_config, rec_out, rec_model); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}
