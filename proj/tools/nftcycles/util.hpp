#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nftcli {

// Hex SHA-256 of a file's bytes; throws std::runtime_error on I/O failure.
std::string sha256_file(const std::filesystem::path& path);

// Writes through a same-directory temp file and renames into place, so a
// failed run never leaves a partial output.
void write_file_atomic(const std::filesystem::path& target,
                       const std::function<void(std::ostream&)>& fill);

std::int64_t seconds_from_hours(double hours);

// Safe component for timing_<wallet>.csv filenames.
std::string sanitize_filename(std::string_view name);

}  // namespace nftcli
