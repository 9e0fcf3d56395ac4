#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace utie {

// Reads a 2-D NPY v1.0 array. '<f4' is read as-is; '<f8' is narrowed to
// float32 and a warning is recorded (into `warnings` when given, otherwise
// through the process warning sink).
Matrix read_matrix(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// Writes NPY v1.0, '<f4', C order. The header is padded to a multiple of 64
// bytes exactly as numpy.save does, so output is byte-identical to numpy.
void write_matrix(const Matrix& matrix, const std::filesystem::path& path);

}  // namespace utie
