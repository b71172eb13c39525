#pragma once

// Parallel corpora are two aligned UTF-8 files with one sentence per line;
// review records are JSON objects, one per line. Readers stream: memory is
// bounded by the longest line, never by the corpus size.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ugcmt {

struct SentencePair {
  std::string src;
  std::optional<std::string> tgt;
  std::optional<std::string> corpus_label;
  std::optional<std::string> review_id;
  std::uint64_t line_no = 0;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

struct ReviewRecord {
  std::string review_id;
  std::vector<SentencePair> sentences;
  std::optional<std::string> venue_type;
  std::optional<std::string> location;
  std::optional<double> rating;  // [0, 10]
};

enum class SplitName { kPE, kHT, kValid, kTest, kOther };

std::string_view to_string(SplitName name);
SplitName parse_split_name(std::string_view name);

class ParallelReader;

/// A named split backed by a pair of aligned files.
struct CorpusSplit {
  SplitName name = SplitName::kOther;
  std::filesystem::path src;
  std::filesystem::path tgt;

  ParallelReader open() const;
};

/// Line reader with UTF-8 validation and NFC normalization on read. Lines
/// that needed normalization are counted and reported once through the log
/// when the reader is destroyed or finish() is called.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  /// Reads from a caller-owned stream (stdin). `name` is used in messages.
  LineReader(std::istream& in, std::string name);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;

  /// Next line without its terminator; nullopt at end of input.
  std::optional<std::string> next();

  /// Byte offset of the next line.
  std::uint64_t offset() const { return offset_; }
  /// Repositions to a line start previously returned by offset(). Only for
  /// seekable (file-backed) readers.
  void seek(std::uint64_t offset);

  std::uint64_t lines_read() const { return lines_; }
  std::uint64_t normalized_lines() const { return normalized_; }
  const std::string& name() const { return name_; }

  /// Emits the normalization summary (idempotent).
  void finish();

  void set_normalize(bool on) { normalize_ = on; }
  void suppress_report() { reported_ = true; }

 private:
  std::unique_ptr<std::ifstream> owned_;
  std::istream* in_ = nullptr;
  std::string name_;
  std::uint64_t lines_ = 0;
  std::uint64_t offset_ = 0;
  std::uint64_t normalized_ = 0;
  std::uint64_t first_normalized_line_ = 0;
  bool normalize_ = true;
  bool reported_ = false;
};

/// Counts lines of a file (the trailing line without newline counts).
std::uint64_t count_lines(const std::filesystem::path& path);

/// Streams aligned pairs from a source and a target file.
class ParallelReader {
 public:
  ParallelReader(const std::filesystem::path& src_path,
                 const std::filesystem::path& tgt_path);

  /// Throws DataError when one side runs out before the other; the message
  /// names both line counts.
  std::optional<SentencePair> next();

 private:
  LineReader src_;
  LineReader tgt_;
  std::filesystem::path src_path_;
  std::filesystem::path tgt_path_;
  std::uint64_t line_no_ = 0;
};

/// Convenience: reads every pair into memory (tests, small corpora).
std::vector<SentencePair> read_parallel(const std::filesystem::path& src_path,
                                        const std::filesystem::path& tgt_path);

/// Writes one sentence per line. Rejects interior newlines with DataError.
class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);
  explicit LineWriter(std::ostream& out);
  ~LineWriter();
  LineWriter(LineWriter&&) noexcept;
  LineWriter& operator=(LineWriter&&) noexcept;

  void write(std::string_view line);
  void flush();

 private:
  std::unique_ptr<std::ofstream> owned_;
  std::ostream* out_ = nullptr;
};

class ParallelWriter {
 public:
  ParallelWriter(const std::filesystem::path& src_path,
                 const std::filesystem::path& tgt_path);
  void write(const SentencePair& pair);
  void flush();

 private:
  LineWriter src_;
  LineWriter tgt_;
};

void write_parallel(const std::vector<SentencePair>& pairs,
                    const std::filesystem::path& src_path,
                    const std::filesystem::path& tgt_path);

/// Throws DataError if `line` contains '\n' or '\r'.
void check_single_line(std::string_view line);

/// Streams review records. In strict mode a malformed line is fatal; in
/// lenient mode it is skipped with a warning. A missing review_id or an empty
/// sentence list is always an error naming the record index.
class ReviewReader {
 public:
  ReviewReader(const std::filesystem::path& path, bool strict);
  ReviewReader(std::istream& in, std::string name, bool strict);

  std::optional<ReviewRecord> next();

  std::uint64_t records_read() const { return records_; }
  std::uint64_t records_skipped() const { return skipped_; }

 private:
  LineReader lines_;
  bool strict_;
  std::uint64_t records_ = 0;
  std::uint64_t skipped_ = 0;
  std::uint64_t sentence_no_ = 0;
};

std::vector<ReviewRecord> read_reviews(const std::filesystem::path& path,
                                       bool strict = true);

/// One JSON object per line: review_id, sentences[{src,tgt?}], venue_type,
/// location, rating.
std::string format_review(const ReviewRecord& record);

}  // namespace ugcmt
