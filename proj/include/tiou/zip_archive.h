// Copyright 2026 The TIoU Evaluation Authors
// SPDX-License-Identifier: Apache-2.0

// Minimal zip container support: stored and deflated entries, no zip64,
// no encryption. Enough for ICDAR-style submission archives.

#ifndef TIOU_ZIP_ARCHIVE_H_
#define TIOU_ZIP_ARCHIVE_H_

#include <filesystem>
#include <string>
#include <vector>

namespace tiou {

struct ArchiveEntry {
  std::string name;
  std::string contents;
};

// True when the file starts with a local-file-header signature.
bool is_zip_file(const std::filesystem::path& path);

// Regular-file entries in central-directory order. Throws EvaluationError on
// a malformed or unsupported archive.
std::vector<ArchiveEntry> read_zip(const std::filesystem::path& path);

// Writes entries as a zip archive, deflating each one when `deflate` is set.
void write_zip(const std::filesystem::path& path,
               const std::vector<ArchiveEntry>& entries, bool deflate = true);

}  // namespace tiou

#endif  // TIOU_ZIP_ARCHIVE_H_
