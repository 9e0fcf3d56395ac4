#pragma once

#include <string_view>

namespace utie {

using WarningSink = void (*)(std::string_view message, void* user);

// Replaces the process-wide warning sink. Passing nullptr restores the
// default, which writes "warning: <message>" to stderr.
void set_warning_sink(WarningSink sink, void* user) noexcept;

void warn(std::string_view message);

}  // namespace utie
