#include "wargame/experiment/store.hpp"

namespace wargame {

namespace {

struct Scan {
  std::vector<GameRecord> records;
  std::map<std::string, std::size_t> final_index;
  bool missing_newline = false;
};

Scan scan(const std::filesystem::path& path) {
  Scan s;
  std::ifstream in(path, std::ios::binary);
  if (!in) return s;
  std::string line;
  std::uintmax_t offset = 0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const bool terminated = !in.eof();
    const std::uintmax_t next = offset + line.size() + (terminated ? 1 : 0);
    if (!line.empty()) {
      try {
        GameRecord r = parse_record(line);
        if (r.status != RecordStatus::Incomplete) {
          if (!s.final_index.emplace(r.game_id, s.records.size()).second)
            throw StoreCorrupt(path.string() + ":" + std::to_string(n) + ": second final record for game " + r.game_id,
                               offset, n);
        }
        s.records.push_back(std::move(r));
      } catch (const SchemaError& e) {
        throw StoreCorrupt(path.string() + ":" + std::to_string(n) + ": " + e.what() +
                               " (last good offset " + std::to_string(offset) + ")",
                           offset, n);
      }
    }
    s.missing_newline = !terminated && !line.empty();
    offset = next;
  }
  return s;
}

}  // namespace

RecordStore::RecordStore(std::filesystem::path path) : path_(std::move(path)) {
  Scan s = scan(path_);
  records_ = std::move(s.records);
  final_index_ = std::move(s.final_index);
  needs_newline_ = s.missing_newline;
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw ConfigError("cannot open record store " + path_.string());
}

void RecordStore::append(const GameRecord& r) {
  validate_record(r);
  std::string line = serialize_record(r) + "\n";
  std::lock_guard lock(mu_);
  if (r.status != RecordStatus::Incomplete && final_index_.count(r.game_id))
    throw Error("game " + r.game_id + " already has a final record in " + path_.string());
  if (needs_newline_) line.insert(line.begin(), '\n');
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.flush();
  if (!out_) throw Error("write to record store failed: " + path_.string());
  needs_newline_ = false;
  if (r.status != RecordStatus::Incomplete) final_index_[r.game_id] = records_.size();
  records_.push_back(r);
}

bool RecordStore::finalized(const std::string& game_id) const {
  std::lock_guard lock(mu_);
  return final_index_.count(game_id) > 0;
}

std::vector<GameRecord> RecordStore::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

std::vector<GameRecord> RecordStore::final_records() const {
  std::lock_guard lock(mu_);
  std::vector<GameRecord> out;
  for (const auto& r : records_)
    if (r.status != RecordStatus::Incomplete) out.push_back(r);
  return out;
}

std::vector<GameRecord> RecordStore::read(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ConfigError("record file not found: " + path.string());
  return scan(path).records;
}

void RecordStore::truncate(const std::filesystem::path& path, std::uintmax_t offset) {
  std::filesystem::resize_file(path, offset);
}

}  // namespace wargame
