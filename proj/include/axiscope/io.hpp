#pragma once
// Input files: plain text or gzip, detected from content.

#include <filesystem>
#include <istream>
#include <memory>

namespace axiscope {

/// Opens `path` for reading; gzip-compressed files are inflated on the fly.
/// Throws IoError when the file cannot be opened.
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

}  // namespace axiscope
