#pragma once

#include <filesystem>
#include <string_view>

namespace postmine {

/// Location of a file shipped in the source tree's data/ directory
/// ("lexicon/positive-words.txt", "keywords/default.conf", ...).
std::filesystem::path bundled_path(std::string_view relative);

}  // namespace postmine
