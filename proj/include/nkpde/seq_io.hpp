#ifndef NKPDE_SEQ_IO_HPP
#define NKPDE_SEQ_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkpde/seq.hpp"

namespace nkpde {

struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// "cosseq v1" text format: per component one block
//   cosseq v1 <length>
//   <coefficient>            (one per line, %.17g)
// Pairs are stored as two consecutive blocks in the same file.
void write_cosseq(std::ostream& os, const std::vector<RealSeq>& comps);
std::vector<RealSeq> read_cosseq(std::istream& is);

void write_cosseq_file(const std::string& path, const std::vector<RealSeq>& comps);
std::vector<RealSeq> read_cosseq_file(const std::string& path);

// Canonical shortest-round-trip rendering used across all text formats.
std::string format_double(double x);

}  // namespace nkpde

#endif
