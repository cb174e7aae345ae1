#include "postmine/bundled.hpp"

#ifndef POSTMINE_DATA_DIR
#error "POSTMINE_DATA_DIR must be defined by the build"
#endif

namespace postmine {

std::filesystem::path bundled_path(std::string_view relative) {
    return std::filesystem::path(POSTMINE_DATA_DIR) / std::filesystem::path(relative);
}

}  // namespace postmine
