#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace ptq {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& data);

/// 16 lowercase hex digits of fnv1a64(data).
std::string content_hash(const std::string& data);

/// `<stem>_<hash>` where the hash covers `snapshot`.
std::string artifact_stem(const std::string& stem, const std::string& snapshot);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ptq
