#include "photocorr/timetag_io.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

namespace photocorr {

namespace {

constexpr std::size_t kBlockRecords = 1 << 16;

void put_u16(unsigned char* p, std::uint16_t v) {
  p[0] = static_cast<unsigned char>(v);
  p[1] = static_cast<unsigned char>(v >> 8);
}

void put_u64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<unsigned char>(v >> (8 * i));
  }
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | p[i];
  }
  return v;
}

struct Record {
  Picoseconds time;
  std::uint8_t channel;
  friend auto operator<=>(const Record&, const Record&) = default;
};

class Writer {
 public:
  explicit Writer(std::ostream& sink) : sink_(sink) {}

  void write(const unsigned char* data, std::size_t n) {
    sink_.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!sink_) {
      throw IoError(written_, "tag sink write failed after " + std::to_string(written_) + " bytes");
    }
    written_ += n;
  }

 private:
  std::ostream& sink_;
  std::uint64_t written_ = 0;
};

// Reads exactly n bytes; returns the count actually obtained.
std::size_t read_some(std::istream& source, unsigned char* data, std::size_t n) {
  source.read(reinterpret_cast<char*>(data), static_cast<std::streamsize>(n));
  const auto got = static_cast<std::size_t>(source.gcount());
  if (source.bad()) {
    throw IoError(0, "tag source read failed");
  }
  return got;
}

}  // namespace

std::uint64_t write_tags(const ChannelStreams& streams, std::ostream& sink) {
  const Picoseconds duration = streams.a.duration();
  if (streams.b.duration() != duration || streams.bprime.duration() != duration) {
    throw std::invalid_argument("write_tags needs streams with a common duration");
  }

  // Three-way merge in (time, channel) order.
  std::array<std::size_t, 3> pos{0, 0, 0};
  const std::array<const TimeTagStream*, 3> src{&streams.a, &streams.b, &streams.bprime};
  const std::uint64_t total = streams.total_tags();

  Writer out(sink);
  std::array<unsigned char, kTagHeaderSize> header{};
  std::memcpy(header.data(), kTagFileMagic, 4);
  put_u16(header.data() + 4, kTagFileVersion);
  put_u64(header.data() + 6, 1);
  put_u64(header.data() + 14, static_cast<std::uint64_t>(duration));
  put_u64(header.data() + 22, total);
  out.write(header.data(), header.size());

  std::vector<unsigned char> block;
  block.reserve(kBlockRecords * kTagRecordSize);
  for (std::uint64_t written = 0; written < total; ++written) {
    int best = -1;
    for (int c = 0; c < 3; ++c) {
      if (pos[c] < src[c]->size() &&
          (best < 0 || (*src[c])[pos[c]].time < (*src[best])[pos[best]].time)) {
        best = c;
      }
    }
    unsigned char record[kTagRecordSize];
    put_u64(record, static_cast<std::uint64_t>((*src[best])[pos[best]].time));
    record[8] = static_cast<unsigned char>(best);
    ++pos[best];
    block.insert(block.end(), record, record + kTagRecordSize);
    if (block.size() >= kBlockRecords * kTagRecordSize) {
      out.write(block.data(), block.size());
      block.clear();
    }
  }
  if (!block.empty()) {
    out.write(block.data(), block.size());
  }
  sink.flush();
  if (!sink) {
    throw IoError(kTagHeaderSize + total * kTagRecordSize, "tag sink flush failed");
  }
  return total;
}

TagFileHeader read_tag_header(std::istream& source) {
  std::array<unsigned char, kTagHeaderSize> raw{};
  const std::size_t got = read_some(source, raw.data(), raw.size());
  if (got >= 4 && std::memcmp(raw.data(), kTagFileMagic, 4) != 0) {
    throw FormatError("bad magic: not a PTAG file");
  }
  if (got < kTagHeaderSize) {
    throw TruncationError(0, "truncated header: " + std::to_string(got) + " of " +
                                 std::to_string(kTagHeaderSize) + " bytes");
  }
  TagFileHeader h;
  h.version = get_u16(raw.data() + 4);
  h.resolution_ps = get_u64(raw.data() + 6);
  h.duration_ticks = get_u64(raw.data() + 14);
  h.record_count = get_u64(raw.data() + 22);
  if (h.version != kTagFileVersion) {
    throw FormatError("unsupported PTAG version " + std::to_string(h.version));
  }
  if (h.resolution_ps == 0) {
    throw FormatError("resolution_ps must be positive");
  }
  constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<Picoseconds>::max());
  if (h.duration_ticks > kMax / h.resolution_ps) {
    throw FormatError("duration overflows the picosecond range");
  }
  return h;
}

ChannelStreams read_tags(std::istream& source, const ReadOptions& options) {
  const TagFileHeader header = read_tag_header(source);
  const auto res = static_cast<Picoseconds>(header.resolution_ps);
  const auto duration = static_cast<Picoseconds>(header.duration_ticks) * res;

  std::array<std::vector<Picoseconds>, 3> times;
  const auto hint = static_cast<std::size_t>(std::min<std::uint64_t>(header.record_count, 1 << 20));
  for (auto& t : times) {
    t.reserve(hint / 3 + 1);
  }

  std::vector<unsigned char> block(kBlockRecords * kTagRecordSize);
  Record previous{-1, 0};
  std::uint64_t index = 0;
  while (index < header.record_count) {
    const std::uint64_t want = std::min<std::uint64_t>(kBlockRecords, header.record_count - index);
    const std::size_t bytes = static_cast<std::size_t>(want) * kTagRecordSize;
    const std::size_t got = read_some(source, block.data(), bytes);
    const std::size_t complete = got / kTagRecordSize;
    for (std::size_t r = 0; r < complete; ++r, ++index) {
      const unsigned char* p = block.data() + r * kTagRecordSize;
      const std::uint64_t ticks = get_u64(p);
      const std::uint8_t channel = p[8];
      if (channel > 2) {
        throw FormatError("record " + std::to_string(index) + " has unknown channel " +
                          std::to_string(channel));
      }
      if (ticks >= header.duration_ticks) {
        throw FormatError("record " + std::to_string(index) + " at tick " + std::to_string(ticks) +
                          " is not below the duration " + std::to_string(header.duration_ticks));
      }
      const Record current{static_cast<Picoseconds>(ticks) * res, channel};
      if (current < previous && options.order == SortPolicy::Reject) {
        throw OrderingError(index, "record " + std::to_string(index) +
                                       " is out of (time, channel) order");
      }
      previous = current;
      times[channel].push_back(current.time);
    }
    if (got < bytes) {
      const std::uint64_t offset = kTagHeaderSize + index * kTagRecordSize;
      throw TruncationError(offset, "truncated record " + std::to_string(index) + " at byte " +
                                        std::to_string(offset) + " (header declares " +
                                        std::to_string(header.record_count) + " records)");
    }
  }
  if (source.peek() != std::istream::traits_type::eof()) {
    throw FormatError("trailing bytes after " + std::to_string(header.record_count) + " records");
  }

  ChannelStreams out;
  for (const Channel ch : kAllChannels) {
    out[ch] = TimeTagStream::from_times(std::move(times[index_of(ch)]), ch, duration,
                                        options.order);
  }
  return out;
}

std::uint64_t write_tag_file(const ChannelStreams& streams, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError(0, "cannot open " + path + " for writing");
  }
  return write_tags(streams, file);
}

ChannelStreams read_tag_file(const std::string& path, const ReadOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError(0, "cannot open " + path + " for reading");
  }
  return read_tags(file, options);
}

}  // namespace photocorr
