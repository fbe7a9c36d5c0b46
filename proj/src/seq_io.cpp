#include "nkpde/seq_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nkpde {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double parse_strict_double(const std::string& s, const char* what) {
  if (s.empty()) throw FormatError(std::string(what) + ": empty number");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError(std::string(what) + ": trailing characters in '" + s + "'");
  if (errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL))
    throw FormatError(std::string(what) + ": value out of range in '" + s + "'");
  return v;
}

}  // namespace

void write_cosseq(std::ostream& os, const std::vector<RealSeq>& comps) {
  for (const auto& u : comps) {
    os << "cosseq v1 " << u.len() << "\n";
    for (double v : u.c) os << format_double(v) << "\n";
  }
}

std::vector<RealSeq> read_cosseq(std::istream& is) {
  std::vector<RealSeq> comps;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream hdr(line);
    std::string word, ver;
    long long n = -1;
    hdr >> word >> ver >> n;
    if (word != "cosseq" || ver != "v1" || n < 0 || !hdr || !(hdr >> std::ws).eof())
      throw FormatError("cosseq: bad header line '" + line + "'");
    RealSeq u = RealSeq::zeros(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      if (!std::getline(is, line))
        throw FormatError("cosseq: truncated block, expected " + std::to_string(n) +
                          " coefficients");
      u.c[static_cast<std::size_t>(i)] = parse_strict_double(line, "cosseq");
    }
    comps.push_back(std::move(u));
  }
  if (comps.empty()) throw FormatError("cosseq: no blocks found");
  return comps;
}

void write_cosseq_file(const std::string& path, const std::vector<RealSeq>& comps) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot open for writing: " + path);
  write_cosseq(f, comps);
  if (!f.good()) throw FormatError("write failed: " + path);
}

std::vector<RealSeq> read_cosseq_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open: " + path);
  return read_cosseq(f);
}

}  // namespace nkpde
