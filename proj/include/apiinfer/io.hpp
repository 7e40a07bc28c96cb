#pragma once

#include <string>

namespace apiinfer {

// Writes through `path`.tmp and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

// Whole file as bytes; throws apiinfer::Error naming `what` when unreadable.
std::string read_file(const std::string& path, const std::string& what = "file");

}  // namespace apiinfer
