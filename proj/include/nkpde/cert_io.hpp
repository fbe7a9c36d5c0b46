#ifndef NKPDE_CERT_IO_HPP
#define NKPDE_CERT_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nkpde/certify.hpp"
#include "nkpde/seq_io.hpp"

namespace nkpde {

// "nkcert v1": line-oriented, fixed section order, every interval rendered as
// [lo, hi] with an optional "tainted" marker.  write(read(s)) == s bytewise.
void write_certificate(std::ostream& os, const Certificate& c);
Certificate read_certificate(std::istream& is);

void write_certificate_file(const std::string& path, const Certificate& c);
Certificate read_certificate_file(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);

// Hash of the canonical "cosseq v1" serialization of the state.
std::uint64_t solution_hash(const RealVec& u);

}  // namespace nkpde

#endif
