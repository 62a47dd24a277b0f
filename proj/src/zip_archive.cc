// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

#include "tiou/zip_archive.h"

#include <zlib.h>

#include <cstdint>
#include <fstream>
#include <iterator>

#include "tiou/errors.h"

namespace tiou {

namespace {

constexpr std::uint32_t kLocalHeader = 0x04034b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kEndOfDirectory = 0x06054b50;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvaluationError("cannot open archive " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Reader {
 public:
  Reader(const std::string& data, const std::string& name)
      : data_(data), name_(name) {}

  std::uint32_t u16(std::size_t at) const {
    need(at, 2);
    return byte(at) | byte(at + 1) << 8;
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4);
    return byte(at) | byte(at + 1) << 8 | byte(at + 2) << 16 |
           byte(at + 3) << 24;
  }
  std::string bytes(std::size_t at, std::size_t n) const {
    need(at, n);
    return data_.substr(at, n);
  }
  std::size_t size() const { return data_.size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw EvaluationError("zip archive " + name_ + ": " + what);
  }

 private:
  std::uint32_t byte(std::size_t at) const {
    return static_cast<unsigned char>(data_[at]);
  }
  void need(std::size_t at, std::size_t n) const {
    if (at + n > data_.size()) fail("truncated");
  }

  const std::string& data_;
  std::string name_;
};

std::string inflate_raw(const std::string& in, std::size_t out_size,
                        const Reader& r) {
  std::string out(out_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) r.fail("inflate init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != out_size) {
    r.fail("corrupt deflate stream");
  }
  return out;
}

std::string deflate_raw(const std::string& in) {
  z_stream zs{};
  if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw EvaluationError("deflate init failed");
  }
  std::string out(deflateBound(&zs, static_cast<uLong>(in.size())), '\0');
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = deflate(&zs, Z_FINISH);
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw EvaluationError("deflate failed");
  out.resize(zs.total_out);
  return out;
}

void put16(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>(v & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& s, std::uint32_t v) {
  put16(s, v & 0xffff);
  put16(s, v >> 16);
}

}  // namespace

bool is_zip_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  char sig[4] = {};
  if (!in.read(sig, 4)) return false;
  return sig[0] == 'P' && sig[1] == 'K' && sig[2] == 3 && sig[3] == 4;
}

std::vector<ArchiveEntry> read_zip(const std::filesystem::path& path) {
  const std::string data = slurp(path);
  const Reader r(data, path.string());
  if (data.size() < 22) r.fail("too small");

  std::size_t eocd = std::string::npos;
  const std::size_t lowest = data.size() > 0xffff + 22 ? data.size() - 0xffff - 22 : 0;
  for (std::size_t at = data.size() - 22 + 1; at-- > lowest;) {
    if (r.u32(at) == kEndOfDirectory) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string::npos) r.fail("no end-of-central-directory record");

  const std::uint32_t count = r.u16(eocd + 10);
  std::size_t at = r.u32(eocd + 16);
  if (count == 0xffff || at == 0xffffffffu) r.fail("zip64 is not supported");

  std::vector<ArchiveEntry> entries;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (r.u32(at) != kCentralHeader) r.fail("bad central directory entry");
    const std::uint32_t flags = r.u16(at + 8);
    const std::uint32_t method = r.u16(at + 10);
    const std::uint32_t packed = r.u32(at + 20);
    const std::uint32_t unpacked = r.u32(at + 24);
    const std::uint32_t name_len = r.u16(at + 28);
    const std::uint32_t extra_len = r.u16(at + 30);
    const std::uint32_t comment_len = r.u16(at + 32);
    const std::uint32_t local = r.u32(at + 42);
    std::string name = r.bytes(at + 46, name_len);
    at += 46 + name_len + extra_len + comment_len;

    if (!name.empty() && name.back() == '/') continue;  // directory
    if (flags & 1) r.fail(name + " is encrypted");
    if (r.u32(local) != kLocalHeader) r.fail("bad local header for " + name);
    const std::size_t body =
        local + 30 + r.u16(local + 26) + r.u16(local + 28);
    std::string raw = r.bytes(body, packed);
    if (method == 0) {
      if (packed != unpacked) r.fail("size mismatch in stored entry " + name);
      entries.push_back({std::move(name), std::move(raw)});
    } else if (method == 8) {
      entries.push_back({std::move(name), inflate_raw(raw, unpacked, r)});
    } else {
      r.fail(name + " uses unsupported compression method " +
             std::to_string(method));
    }
  }
  return entries;
}

void write_zip(const std::filesystem::path& path,
               const std::vector<ArchiveEntry>& entries, bool deflate) {
  std::string out;
  std::string directory;
  for (const ArchiveEntry& e : entries) {
    const std::string body = deflate ? deflate_raw(e.contents) : e.contents;
    const auto crc = static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(e.contents.data()),
              static_cast<uInt>(e.contents.size())));
    const auto offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t method = deflate ? 8 : 0;

    put32(out, kLocalHeader);
    put16(out, 20);
    put16(out, 0);
    put16(out, method);
    put32(out, 0);  // dos time/date
    put32(out, crc);
    put32(out, static_cast<std::uint32_t>(body.size()));
    put32(out, static_cast<std::uint32_t>(e.contents.size()));
    put16(out, static_cast<std::uint32_t>(e.name.size()));
    put16(out, 0);
    out += e.name;
    out += body;

    put32(directory, kCentralHeader);
    put16(directory, 20);
    put16(directory, 20);
    put16(directory, 0);
    put16(directory, method);
    put32(directory, 0);
    put32(directory, crc);
    put32(directory, static_cast<std::uint32_t>(body.size()));
    put32(directory, static_cast<std::uint32_t>(e.contents.size()));
    put16(directory, static_cast<std::uint32_t>(e.name.size()));
    put16(directory, 0);
    put16(directory, 0);
    put16(directory, 0);
    put16(directory, 0);
    put32(directory, 0);
    put32(directory, offset);
    directory += e.name;
  }
  const auto dir_offset = static_cast<std::uint32_t>(out.size());
  out += directory;
  put32(out, kEndOfDirectory);
  put16(out, 0);
  put16(out, 0);
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put16(out, static_cast<std::uint32_t>(entries.size()));
  put32(out, static_cast<std::uint32_t>(directory.size()));
  put32(out, dir_offset);
  put16(out, 0);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw EvaluationError("cannot write archive " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

}  // namespace tiou
