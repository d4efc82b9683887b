#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "photocorr/core.hpp"

namespace photocorr {

// PTAG layout, all integers little-endian:
//
//   offset  size  field
//   0       4     magic "PTAG"
//   4       2     version (1)
//   6       8     resolution_ps, picoseconds per tick
//   14      8     duration_ticks
//   22      8     record_count
//   30      9*n   records: u64 time_ticks, u8 channel (0=A, 1=B, 2=Bprime)
//
// Records are ordered by (time, channel).
inline constexpr char kTagFileMagic[4] = {'P', 'T', 'A', 'G'};
inline constexpr std::uint16_t kTagFileVersion = 1;
inline constexpr std::size_t kTagHeaderSize = 30;
inline constexpr std::size_t kTagRecordSize = 9;

class TagFileError : public std::runtime_error {
 public:
  enum class Kind { Format, Truncation, Ordering, Io };

  TagFileError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class FormatError : public TagFileError {
 public:
  explicit FormatError(const std::string& message) : TagFileError(Kind::Format, message) {}
};

class TruncationError : public TagFileError {
 public:
  TruncationError(std::uint64_t offset, const std::string& message)
      : TagFileError(Kind::Truncation, message), offset_(offset) {}
  // Byte offset of the incomplete header or record.
  [[nodiscard]] std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

class OrderingError : public TagFileError {
 public:
  OrderingError(std::uint64_t record, const std::string& message)
      : TagFileError(Kind::Ordering, message), record_(record) {}
  // Zero-based index of the first record that breaks the order.
  [[nodiscard]] std::uint64_t record() const { return record_; }

 private:
  std::uint64_t record_;
};

class IoError : public TagFileError {
 public:
  IoError(std::uint64_t bytes_written, const std::string& message)
      : TagFileError(Kind::Io, message), bytes_written_(bytes_written) {}
  [[nodiscard]] std::uint64_t bytes_written() const { return bytes_written_; }

 private:
  std::uint64_t bytes_written_;
};

struct TagFileHeader {
  std::uint16_t version = kTagFileVersion;
  std::uint64_t resolution_ps = 1;
  std::uint64_t duration_ticks = 0;
  std::uint64_t record_count = 0;
};

// Merges the channels in (time, channel) order and writes header + records.
// Returns the number of records. Throws IoError on sink failure.
std::uint64_t write_tags(const ChannelStreams& streams, std::ostream& sink);

struct ReadOptions {
  // Reject (default) or sort out-of-order records.
  SortPolicy order = SortPolicy::Reject;
};

// Throws FormatError, TruncationError, OrderingError or IoError.
ChannelStreams read_tags(std::istream& source, const ReadOptions& options = {});

TagFileHeader read_tag_header(std::istream& source);

// File-path conveniences; open failures raise IoError.
std::uint64_t write_tag_file(const ChannelStreams& streams, const std::string& path);
ChannelStreams read_tag_file(const std::string& path, const ReadOptions& options = {});

}  // namespace photocorr
