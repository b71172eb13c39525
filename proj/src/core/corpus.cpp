#include "ugcmt/core/corpus.hpp"

#include <fmt/format.h>

#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <utility>

#include "ugcmt/core/error.hpp"
#include "ugcmt/core/log.hpp"
#include "ugcmt/core/text.hpp"

namespace ugcmt {

std::string_view to_string(SplitName name) {
  switch (name) {
    case SplitName::kPE:
      return "PE";
    case SplitName::kHT:
      return "HT";
    case SplitName::kValid:
      return "valid";
    case SplitName::kTest:
      return "test";
    case SplitName::kOther:
      return "other";
  }
  return "other";
}

SplitName parse_split_name(std::string_view name) {
  if (name == "PE") return SplitName::kPE;
  if (name == "HT") return SplitName::kHT;
  if (name == "valid") return SplitName::kValid;
  if (name == "test") return SplitName::kTest;
  return SplitName::kOther;
}

ParallelReader CorpusSplit::open() const { return ParallelReader(src, tgt); }

// ---------------------------------------------------------------- LineReader

LineReader::LineReader(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ifstream>(path, std::ios::binary)),
      in_(owned_.get()),
      name_(path.string()) {
  if (!*owned_) throw DataError(fmt::format("cannot open '{}'", name_));
}

LineReader::LineReader(std::istream& in, std::string name)
    : in_(&in), name_(std::move(name)) {}

LineReader::~LineReader() {
  if (in_) finish();
}

LineReader::LineReader(LineReader&& other) noexcept
    : owned_(std::move(other.owned_)),
      in_(std::exchange(other.in_, nullptr)),
      name_(std::move(other.name_)),
      lines_(other.lines_),
      offset_(other.offset_),
      normalized_(other.normalized_),
      first_normalized_line_(other.first_normalized_line_),
      normalize_(other.normalize_),
      reported_(other.reported_) {}

LineReader& LineReader::operator=(LineReader&& other) noexcept {
  if (this != &other) {
    if (in_) finish();
    owned_ = std::move(other.owned_);
    in_ = std::exchange(other.in_, nullptr);
    name_ = std::move(other.name_);
    lines_ = other.lines_;
    offset_ = other.offset_;
    normalized_ = other.normalized_;
    first_normalized_line_ = other.first_normalized_line_;
    normalize_ = other.normalize_;
    reported_ = other.reported_;
  }
  return *this;
}

std::optional<std::string> LineReader::next() {
  std::string line;
  if (!std::getline(*in_, line)) {
    if (in_->bad()) throw DataError(fmt::format("read error on '{}'", name_));
    return std::nullopt;
  }
  const std::uint64_t line_start = offset_;
  offset_ += line.size() + (in_->eof() ? 0 : 1);
  ++lines_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (auto bad = text::find_invalid_utf8(line)) {
    throw DataError(fmt::format("'{}': invalid UTF-8 at byte offset {} (line {})",
                                name_, line_start + *bad, lines_));
  }
  if (normalize_ && !text::is_nfc(line)) {
    line = text::to_nfc(line);
    if (normalized_++ == 0) first_normalized_line_ = lines_;
  }
  return line;
}

void LineReader::seek(std::uint64_t offset) {
  in_->clear();
  in_->seekg(static_cast<std::streamoff>(offset));
  if (!*in_) throw DataError(fmt::format("cannot seek '{}' to byte {}", name_, offset));
  offset_ = offset;
}

void LineReader::finish() {
  if (reported_) return;
  reported_ = true;
  if (normalized_ > 0) {
    log::warn("nfc_normalized", {{"input", name_},
                                 {"lines", normalized_},
                                 {"first_line", first_normalized_line_}});
  }
}

std::uint64_t count_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  std::uint64_t n = 0;
  char buf[1 << 16];
  char last = '\n';
  while (in) {
    in.read(buf, sizeof buf);
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) n += buf[i] == '\n';
    if (got > 0) last = buf[got - 1];
  }
  if (last != '\n') ++n;
  return n;
}

// ------------------------------------------------------------ ParallelReader

ParallelReader::ParallelReader(const std::filesystem::path& src_path,
                               const std::filesystem::path& tgt_path)
    : src_(src_path), tgt_(tgt_path), src_path_(src_path), tgt_path_(tgt_path) {}

std::optional<SentencePair> ParallelReader::next() {
  auto s = src_.next();
  auto t = tgt_.next();
  if (s && t) {
    SentencePair p;
    p.src = std::move(*s);
    p.tgt = std::move(*t);
    p.line_no = ++line_no_;
    return p;
  }
  if (!s && !t) {
    src_.finish();
    tgt_.finish();
    return std::nullopt;
  }
  throw DataError(fmt::format(
      "line-count mismatch: '{}' has {} lines, '{}' has {} lines",
      src_path_.string(), count_lines(src_path_), tgt_path_.string(),
      count_lines(tgt_path_)));
}

std::vector<SentencePair> read_parallel(const std::filesystem::path& src_path,
                                        const std::filesystem::path& tgt_path) {
  ParallelReader reader(src_path, tgt_path);
  std::vector<SentencePair> out;
  while (auto p = reader.next()) out.push_back(std::move(*p));
  return out;
}

// ---------------------------------------------------------------- LineWriter

void check_single_line(std::string_view line) {
  const auto pos = line.find_first_of("\r\n");
  if (pos != std::string_view::npos) {
    throw DataError(
        fmt::format("sentence contains a newline at byte {}: sentences must "
                    "be single lines",
                    pos));
  }
}

LineWriter::LineWriter(const std::filesystem::path& path)
    : owned_(std::make_unique<std::ofstream>(path, std::ios::binary)),
      out_(owned_.get()) {
  if (!*owned_) throw DataError(fmt::format("cannot write '{}'", path.string()));
}

LineWriter::LineWriter(std::ostream& out) : out_(&out) {}

LineWriter::~LineWriter() {
  if (out_) out_->flush();
}

LineWriter::LineWriter(LineWriter&& other) noexcept
    : owned_(std::move(other.owned_)), out_(std::exchange(other.out_, nullptr)) {}

LineWriter& LineWriter::operator=(LineWriter&& other) noexcept {
  if (this != &other) {
    if (out_) out_->flush();
    owned_ = std::move(other.owned_);
    out_ = std::exchange(other.out_, nullptr);
  }
  return *this;
}

void LineWriter::write(std::string_view line) {
  check_single_line(line);
  out_->write(line.data(), static_cast<std::streamsize>(line.size()));
  out_->put('\n');
  if (!*out_) throw DataError("write failed");
}

void LineWriter::flush() { out_->flush(); }

ParallelWriter::ParallelWriter(const std::filesystem::path& src_path,
                               const std::filesystem::path& tgt_path)
    : src_(src_path), tgt_(tgt_path) {}

void ParallelWriter::write(const SentencePair& pair) {
  // Validate both sides before writing either so the files stay aligned.
  check_single_line(pair.src);
  check_single_line(pair.tgt.value_or(""));
  src_.write(pair.src);
  tgt_.write(pair.tgt.value_or(""));
}

void ParallelWriter::flush() {
  src_.flush();
  tgt_.flush();
}

void write_parallel(const std::vector<SentencePair>& pairs,
                    const std::filesystem::path& src_path,
                    const std::filesystem::path& tgt_path) {
  ParallelWriter w(src_path, tgt_path);
  for (const auto& p : pairs) w.write(p);
}

// -------------------------------------------------------------- ReviewReader

namespace {

std::string id_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw DataError("review_id must be a string or an integer");
}

}  // namespace

ReviewReader::ReviewReader(const std::filesystem::path& path, bool strict)
    : lines_(path), strict_(strict) {}

ReviewReader::ReviewReader(std::istream& in, std::string name, bool strict)
    : lines_(in, std::move(name)), strict_(strict) {}

std::optional<ReviewRecord> ReviewReader::next() {
  while (auto line = lines_.next()) {
    const std::uint64_t index = lines_.lines_read();
    if (line->find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(*line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      if (strict_) {
        throw DataError(fmt::format("{}: record {} is not a JSON object",
                                    lines_.name(), index));
      }
      ++skipped_;
      log::warn("review_skipped", {{"input", lines_.name()}, {"record", index}});
      continue;
    }
    if (!j.contains("review_id") || j["review_id"].is_null()) {
      throw DataError(fmt::format("{}: record {} has no review_id",
                                  lines_.name(), index));
    }
    ReviewRecord rec;
    try {
      rec.review_id = id_to_string(j["review_id"]);
      const auto& sents = j.value("sentences", nlohmann::json::array());
      if (!sents.is_array() || sents.empty()) {
        throw DataError(fmt::format("{}: record {} has no sentences",
                                    lines_.name(), index));
      }
      for (const auto& s : sents) {
        SentencePair p;
        if (s.is_string()) {
          p.src = s.get<std::string>();
        } else if (s.is_object() && s.contains("src")) {
          p.src = s["src"].get<std::string>();
          if (s.contains("tgt") && !s["tgt"].is_null()) {
            p.tgt = s["tgt"].get<std::string>();
          }
        } else {
          throw DataError(fmt::format("{}: record {} has a malformed sentence",
                                      lines_.name(), index));
        }
        p.review_id = rec.review_id;
        p.line_no = ++sentence_no_;
        rec.sentences.push_back(std::move(p));
      }
      if (j.contains("venue_type") && !j["venue_type"].is_null()) {
        rec.venue_type = j["venue_type"].get<std::string>();
      }
      if (j.contains("location") && !j["location"].is_null()) {
        rec.location = j["location"].get<std::string>();
      }
      if (j.contains("rating") && !j["rating"].is_null()) {
        const double r = j["rating"].get<double>();
        if (!(r >= 0.0 && r <= 10.0)) {
          throw DataError(fmt::format("{}: record {} rating {} outside [0,10]",
                                      lines_.name(), index, r));
        }
        rec.rating = r;
      }
    } catch (const nlohmann::json::exception& e) {
      if (strict_) {
        throw DataError(fmt::format("{}: record {} malformed: {}",
                                    lines_.name(), index, e.what()));
      }
      ++skipped_;
      log::warn("review_skipped", {{"input", lines_.name()}, {"record", index}});
      continue;
    }
    ++records_;
    return rec;
  }
  return std::nullopt;
}

std::vector<ReviewRecord> read_reviews(const std::filesystem::path& path,
                                       bool strict) {
  ReviewReader reader(path, strict);
  std::vector<ReviewRecord> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

std::string format_review(const ReviewRecord& record) {
  nlohmann::json j;
  j["review_id"] = record.review_id;
  auto sents = nlohmann::json::array();
  for (const auto& s : record.sentences) {
    check_single_line(s.src);
    nlohmann::json o{{"src", s.src}};
    if (s.tgt) o["tgt"] = *s.tgt;
    sents.push_back(std::move(o));
  }
  j["sentences"] = std::move(sents);
  if (record.venue_type) j["venue_type"] = *record.venue_type;
  if (record.location) j["location"] = *record.location;
  if (record.rating) j["rating"] = *record.rating;
  return j.dump();
}

}  // namespace ugcmt
