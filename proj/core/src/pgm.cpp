#include "gsr/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gsr {

namespace {

[[noreturn]] void fail(const std::string& path, std::istream& in,
                       const std::string& what) {
  const auto off = in.tellg();
  throw parse_error(path + ": " + what + " (byte offset " +
                    std::to_string(off < 0 ? -1 : static_cast<long long>(off)) + ")");
}

// Skips whitespace and '#' comment lines, then reads one unsigned integer
// token.
long read_token(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF) fail(path, in, "unexpected end of header");
  long value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = in.get();
  }
  if (!any) fail(path, in, "expected an integer");
  return value;
}

} // namespace

Signal read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path + ": cannot open file");

  char m0 = 0, m1 = 0;
  in.get(m0).get(m1);
  const bool binary = m0 == 'P' && m1 == '5';
  const bool ascii = m0 == 'P' && m1 == '2';
  if (!binary && !ascii) fail(path, in, "bad magic, expected P5 or P2");

  const long width = read_token(in, path);
  const long height = read_token(in, path);
  const long maxval = read_token(in, path);
  if (width <= 0 || height <= 0) fail(path, in, "non-positive dimensions");
  if (maxval != 255) fail(path, in, "maxval must be 255, got " + std::to_string(maxval));

  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> pixels(n);

  if (binary) {
    // Header ends with exactly one whitespace character, already consumed by
    // read_token's lookahead.
    std::vector<unsigned char> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
      fail(path, in, "truncated pixel data");
    for (std::size_t i = 0; i < n; ++i) pixels[i] = raw[i] / 255.0;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = read_token(in, path);
      if (v < 0 || v > 255) fail(path, in, "pixel value out of range");
      pixels[i] = v / 255.0;
    }
  }

  return Signal(std::move(pixels),
                Shape{static_cast<std::size_t>(height), static_cast<std::size_t>(width)});
}

void write_pgm(const Signal& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");

  const std::size_t h = image.shape().rows, w = image.shape().cols;
  out << "P5\n" << w << " " << h << "\n255\n";
  std::vector<unsigned char> raw(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    double v = image[i];
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace gsr
