#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "wargame/session/record.hpp"

namespace wargame {

// The store file cannot be read past `last_good_offset`.
class StoreCorrupt : public Error {
 public:
  StoreCorrupt(const std::string& what, std::uintmax_t last_good_offset, std::size_t line)
      : Error(what), offset_(last_good_offset), line_(line) {}
  std::uintmax_t last_good_offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::uintmax_t offset_;
  std::size_t line_;
};

// Append-only JSONL file of GameRecords, one per line.
//
// Complete and Failed records are final: a second final record for the same
// game id is corruption. Incomplete records may be followed by a later
// attempt. Appends are serialized by a mutex and flushed one line at a time.
class RecordStore {
 public:
  // Creates the file if needed and scans it. Throws StoreCorrupt.
  explicit RecordStore(std::filesystem::path path);

  void append(const GameRecord& r);

  bool finalized(const std::string& game_id) const;
  // Records in file order.
  std::vector<GameRecord> records() const;
  // Final records only, newest attempt of each id.
  std::vector<GameRecord> final_records() const;
  const std::filesystem::path& path() const noexcept { return path_; }

  // Whole-file read with the same rules; throws StoreCorrupt.
  static std::vector<GameRecord> read(const std::filesystem::path& path);
  // Cuts a corrupt tail at the reported offset.
  static void truncate(const std::filesystem::path& path, std::uintmax_t offset);

 private:
  std::filesystem::path path_;
  mutable std::mutex mu_;
  std::vector<GameRecord> records_;
  std::map<std::string, std::size_t> final_index_;
  std::ofstream out_;
  bool needs_newline_ = false;
};

}  // namespace wargame
