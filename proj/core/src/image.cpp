#include "hallway/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hallway/error.hpp"

namespace hallway {

namespace {

constexpr double kGamma = 2.2;

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_positive_int(const std::string& tok, const std::string& path) {
  if (tok.empty()) throw Error(Errc::malformed_file, "truncated header in " + path);
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw Error(Errc::malformed_file, "non-numeric header field '" + tok + "' in " + path);
  long v = std::strtol(tok.c_str(), nullptr, 10);
  if (v <= 0 || v > 1 << 20)
    throw Error(Errc::malformed_file, "header value out of range in " + path);
  return static_cast<int>(v);
}

}  // namespace

double srgb_decode(int code) { return std::pow(code / 255.0, kGamma); }

int srgb_encode(double value) {
  value = std::fmin(1.0, std::fmax(0.0, value));
  return static_cast<int>(std::lround(255.0 * std::pow(value, 1.0 / kGamma)));
}

Image load_image(const std::string& path, Transfer transfer) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot open " + path);

  if (next_token(in) != "P6") throw Error(Errc::malformed_file, "bad magic in " + path);
  const int width = parse_positive_int(next_token(in), path);
  const int height = parse_positive_int(next_token(in), path);
  const std::string maxval = next_token(in);
  if (maxval.empty()) throw Error(Errc::malformed_file, "truncated header in " + path);
  if (maxval != "255") throw Error(Errc::unsupported_depth, "maxval " + maxval + " in " + path);

  const size_t n = static_cast<size_t>(width) * height * 3;
  std::vector<unsigned char> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
  if (static_cast<size_t>(in.gcount()) != n)
    throw Error(Errc::malformed_file, "truncated pixel data in " + path);

  Image img(width, height);
  if (transfer == Transfer::srgb) {
    // 256 possible codes; decode once.
    double lut[256];
    for (int i = 0; i < 256; ++i) lut[i] = srgb_decode(i);
    for (size_t i = 0; i < n; ++i) img.data[i] = lut[raw[i]];
  } else {
    for (size_t i = 0; i < n; ++i) img.data[i] = raw[i] / 255.0;
  }
  return img;
}

void save_image(const Image& img, const std::string& path, Transfer transfer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io_failure, "cannot open " + path + " for writing");

  out << "P6\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> raw(img.data.size());
  if (transfer == Transfer::srgb) {
    for (size_t i = 0; i < img.data.size(); ++i)
      raw[i] = static_cast<unsigned char>(srgb_encode(img.data[i]));
  } else {
    for (size_t i = 0; i < img.data.size(); ++i) {
      double v = std::fmin(1.0, std::fmax(0.0, img.data[i]));
      raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(Errc::io_failure, "write failed for " + path);
}

}  // namespace hallway
