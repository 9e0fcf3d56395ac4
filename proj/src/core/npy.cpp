#include "core/npy.hpp"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "core/error.hpp"
#include "core/log.hpp"

namespace utie {

namespace {

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicSize = 6;
constexpr std::size_t kPreludeSize = kMagicSize + 2 + 2;  // magic, version, u16 length
constexpr std::size_t kHeaderAlign = 64;

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T from_little_endian(const unsigned char* p) {
  T value;
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

template <typename T>
void to_little_endian(T value, unsigned char* p) {
  std::memcpy(p, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(p[i], p[sizeof(T) - 1 - i]);
  }
}

// Parsed form of the python-literal header dict.
struct HeaderDict {
  std::optional<std::string> descr;
  std::optional<bool> fortran_order;
  std::optional<std::vector<std::size_t>> shape;
};

// Recursive-descent parser for the subset of python literal syntax used in
// NPY headers: a dict of str keys to str, bool, or tuple-of-int values.
class HeaderParser {
 public:
  explicit HeaderParser(std::string_view text) : text_(text) {}

  HeaderDict parse() {
    HeaderDict dict;
    expect('{');
    while (true) {
      skip_space();
      if (peek() == '}') {
        ++pos_;
        break;
      }
      std::string key = parse_string();
      expect(':');
      skip_space();
      if (key == "descr") {
        dict.descr = parse_string();
      } else if (key == "fortran_order") {
        dict.fortran_order = parse_bool();
      } else if (key == "shape") {
        dict.shape = parse_tuple();
      } else {
        bad("unexpected key '" + key + "'");
      }
      skip_space();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != '}') {
        bad("expected ',' or '}'");
      }
    }
    skip_space();
    if (pos_ != text_.size()) bad("trailing characters after header dict");
    return dict;
  }

 private:
  [[noreturn]] void bad(const std::string& what) const {
    fail(ErrorCode::kMalformedHeader, "NPY header: " + what);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) bad(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string parse_string() {
    skip_space();
    const char quote = peek();
    if (quote != '\'' && quote != '"') bad("expected string");
    ++pos_;
    const std::size_t end = text_.find(quote, pos_);
    if (end == std::string_view::npos) bad("unterminated string");
    std::string out(text_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return out;
  }

  bool parse_bool() {
    if (text_.substr(pos_, 4) == "True") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "False") {
      pos_ += 5;
      return false;
    }
    bad("expected True or False");
  }

  std::vector<std::size_t> parse_tuple() {
    expect('(');
    std::vector<std::size_t> dims;
    while (true) {
      skip_space();
      if (peek() == ')') {
        ++pos_;
        return dims;
      }
      if (!std::isdigit(static_cast<unsigned char>(peek()))) bad("expected dimension");
      std::size_t value = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        value = value * 10 + static_cast<std::size_t>(peek() - '0');
        ++pos_;
      }
      dims.push_back(value);
      skip_space();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ')') {
        bad("expected ',' or ')'");
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::kIoError, "read failed for " + path.string());
  return bytes;
}

}  // namespace

Matrix read_matrix(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  const std::string bytes = read_file(path);
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::string where = " in " + path.string();

  if (bytes.size() < kPreludeSize || bytes.compare(0, kMagicSize, kMagic, kMagicSize) != 0) {
    fail(ErrorCode::kMalformedHeader, "missing NPY magic" + where);
  }
  if (raw[6] != 1 || raw[7] != 0) {
    fail(ErrorCode::kMalformedHeader, "unsupported NPY version " + std::to_string(raw[6]) + "." +
                                          std::to_string(raw[7]) + where + " (only 1.0)");
  }
  const std::size_t header_len = from_little_endian<std::uint16_t>(raw + 8);
  if (bytes.size() < kPreludeSize + header_len) {
    fail(ErrorCode::kMalformedHeader, "truncated NPY header" + where);
  }
  const HeaderDict dict =
      HeaderParser(std::string_view(bytes).substr(kPreludeSize, header_len)).parse();
  if (!dict.descr || !dict.fortran_order || !dict.shape) {
    fail(ErrorCode::kMalformedHeader, "NPY header lacks descr/fortran_order/shape" + where);
  }

  const bool is_f4 = *dict.descr == "<f4";
  const bool is_f8 = *dict.descr == "<f8";
  if (!is_f4 && !is_f8) {
    fail(ErrorCode::kUnsupportedDescriptor, "unsupported dtype '" + *dict.descr + "'" + where);
  }
  if (*dict.fortran_order) {
    fail(ErrorCode::kUnsupportedDescriptor, "column-major (fortran_order) arrays unsupported" + where);
  }
  if (dict.shape->size() != 2) {
    fail(ErrorCode::kShapeError, "expected a 2-D array, got " + std::to_string(dict.shape->size()) +
                                     " dimensions" + where);
  }

  const std::size_t rows = (*dict.shape)[0];
  const std::size_t cols = (*dict.shape)[1];
  const std::size_t width = is_f4 ? 4 : 8;
  const std::size_t payload = bytes.size() - kPreludeSize - header_len;
  if (cols != 0 && rows > payload / width / cols) {
    fail(ErrorCode::kMalformedHeader, "payload shorter than declared shape" + where);
  }
  if (payload != rows * cols * width) {
    fail(ErrorCode::kMalformedHeader, "payload size does not match declared shape" + where);
  }

  const unsigned char* p = raw + kPreludeSize + header_len;
  std::vector<float> data(rows * cols);
  if (is_f4) {
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = from_little_endian<float>(p + 4 * i);
  } else {
    for (std::size_t i = 0; i < data.size(); ++i) {
      data[i] = static_cast<float>(from_little_endian<double>(p + 8 * i));
    }
    const std::string message = "narrowed '<f8' array to float32" + where;
    if (warnings != nullptr) {
      warnings->push_back(message);
    } else {
      warn(message);
    }
  }
  return Matrix(rows, cols, std::move(data));
}

void write_matrix(const Matrix& matrix, const std::filesystem::path& path) {
  if (matrix.empty()) fail(ErrorCode::kInvalidArgument, "refusing to write an empty matrix");

  std::ostringstream dict;
  dict << "{'descr': '<f4', 'fortran_order': False, 'shape': (" << matrix.rows() << ", "
       << matrix.cols() << "), }";
  std::string header = dict.str();
  // numpy pads with spaces and terminates with '\n' so the data starts aligned.
  const std::size_t unpadded = kPreludeSize + header.size() + 1;
  const std::size_t padding = (kHeaderAlign - unpadded % kHeaderAlign) % kHeaderAlign;
  header.append(padding, ' ');
  header.push_back('\n');
  if (header.size() > 0xFFFF) fail(ErrorCode::kShapeError, "NPY v1.0 header too large");

  std::string out(kMagic, kMagicSize);
  out.push_back('\x01');
  out.push_back('\x00');
  unsigned char len[2];
  to_little_endian(static_cast<std::uint16_t>(header.size()), len);
  out.append(reinterpret_cast<const char*>(len), 2);
  out += header;
  const std::size_t payload_at = out.size();
  out.resize(payload_at + matrix.data().size() * 4);
  auto* p = reinterpret_cast<unsigned char*>(out.data() + payload_at);
  for (std::size_t i = 0; i < matrix.data().size(); ++i) to_little_endian(matrix.data()[i], p + 4 * i);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

}  // namespace utie
