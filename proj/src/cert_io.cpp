#include "nkpde/cert_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nkpde {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t solution_hash(const RealVec& u) {
  std::ostringstream ss;
  write_cosseq(ss, u);
  return fnv1a64(ss.str());
}

namespace {

const char* const kBoundNames[] = {"Y",     "Z1_finite", "Z1_tail", "Z1",
                                   "Z2",    "hyp_w",     "r_min",   "r_max"};

std::string render_interval(const Interval& x) {
  std::string s = "[" + format_double(x.lo) + ", " + format_double(x.hi) + "]";
  if (x.tainted) s += " tainted";
  return s;
}

double parse_double(const std::string& s, const char* what) {
  if (s.empty()) throw FormatError(std::string("nkcert: ") + what + ": empty number");
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw FormatError(std::string("nkcert: ") + what + ": bad number '" + s + "'");
  if (errno == ERANGE && (v == HUGE_VAL || v == -HUGE_VAL))
    throw FormatError(std::string("nkcert: ") + what + ": out of range '" + s + "'");
  return v;
}

// "[lo, hi]" optionally followed by " tainted".
Interval parse_interval(const std::string& s, const char* what) {
  std::string body = s;
  bool tainted = false;
  const std::string marker = " tainted";
  if (body.size() > marker.size() &&
      body.compare(body.size() - marker.size(), marker.size(), marker) == 0) {
    tainted = true;
    body.erase(body.size() - marker.size());
  }
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw FormatError(std::string("nkcert: ") + what + ": expected [lo, hi] in '" + s + "'");
  body = body.substr(1, body.size() - 2);
  const std::size_t comma = body.find(", ");
  if (comma == std::string::npos)
    throw FormatError(std::string("nkcert: ") + what + ": expected [lo, hi] in '" + s + "'");
  Interval r;
  r.lo = parse_double(body.substr(0, comma), what);
  r.hi = parse_double(body.substr(comma + 2), what);
  if (r.lo > r.hi) throw FormatError(std::string("nkcert: ") + what + ": endpoints out of order");
  r.tainted = tainted;
  return r;
}

std::string render_hash(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct LineReader {
  std::istream& is;
  std::string line;
  bool have = false;

  explicit LineReader(std::istream& s) : is(s) {}

  const std::string& peek() {
    if (!have) {
      if (!std::getline(is, line)) throw FormatError("nkcert: unexpected end of file");
      have = true;
    }
    return line;
  }
  std::string take() {
    peek();
    have = false;
    return std::move(line);
  }
  bool at_end() {
    if (have) return false;
    if (!std::getline(is, line)) return true;
    have = true;
    return false;
  }
};

// "key rest" -> rest, enforcing the key.
std::string expect_keyed(LineReader& r, const std::string& key) {
  std::string l = r.take();
  if (l.compare(0, key.size() + 1, key + " ") != 0)
    throw FormatError("nkcert: expected '" + key + " ...', got '" + l + "'");
  return l.substr(key.size() + 1);
}

}  // namespace

void write_certificate(std::ostream& os, const Certificate& c) {
  os << "nkcert v1\n";
  os << "family " << c.family << "\n";
  os << "dim " << c.dim << "\n";
  os << "N " << c.N << "\n";
  os << "nu " << format_double(c.nu) << "\n";
  os << "hash " << render_hash(c.solution_hash) << "\n";
  for (const auto& [name, value] : c.params)
    os << "param " << name << " " << render_interval(value) << "\n";
  const Interval* bounds[] = {&c.Y,  &c.Z1_finite, &c.Z1_tail, &c.Z1,
                              &c.Z2, &c.hyp_w,     &c.r_min,   &c.r_max};
  for (std::size_t i = 0; i < 8; ++i)
    os << "bound " << kBoundNames[i] << " " << render_interval(*bounds[i]) << "\n";
  os << "value r " << format_double(c.r) << "\n";
  os << "value c0_bound " << format_double(c.c0_bound) << "\n";
  os << "flag hyp_w_ok " << (c.hyp_w_ok ? 1 : 0) << "\n";
  os << "flag conditions_ok " << (c.conditions_ok ? 1 : 0) << "\n";
  os << "flag tainted " << (c.tainted ? 1 : 0) << "\n";
  for (const auto& [name, value] : c.diagnostics)
    os << "diag " << name << " " << format_double(value) << "\n";
  os << "end nkcert v1\n";
}

Certificate read_certificate(std::istream& is) {
  LineReader r(is);
  if (r.take() != "nkcert v1") throw FormatError("nkcert: missing 'nkcert v1' header");
  Certificate c;
  c.family = expect_keyed(r, "family");
  if (c.family != "scalar" && c.family != "skt" && c.family != "dae")
    throw FormatError("nkcert: unknown family '" + c.family + "'");
  c.dim = static_cast<std::size_t>(parse_double(expect_keyed(r, "dim"), "dim"));
  c.N = static_cast<std::size_t>(parse_double(expect_keyed(r, "N"), "N"));
  c.nu = parse_double(expect_keyed(r, "nu"), "nu");
  {
    std::string h = expect_keyed(r, "hash");
    if (h.size() != 16) throw FormatError("nkcert: hash must be 16 hex digits");
    c.solution_hash = std::strtoull(h.c_str(), nullptr, 16);
  }
  while (r.peek().compare(0, 6, "param ") == 0) {
    std::string rest = expect_keyed(r, "param");
    const std::size_t sp = rest.find(' ');
    if (sp == std::string::npos) throw FormatError("nkcert: malformed param line");
    c.params.emplace_back(rest.substr(0, sp), parse_interval(rest.substr(sp + 1), "param"));
  }
  Interval* bounds[] = {&c.Y,  &c.Z1_finite, &c.Z1_tail, &c.Z1,
                        &c.Z2, &c.hyp_w,     &c.r_min,   &c.r_max};
  for (std::size_t i = 0; i < 8; ++i) {
    std::string rest = expect_keyed(r, "bound");
    const std::string want = std::string(kBoundNames[i]) + " ";
    if (rest.compare(0, want.size(), want) != 0)
      throw FormatError("nkcert: expected bound " + std::string(kBoundNames[i]));
    *bounds[i] = parse_interval(rest.substr(want.size()), kBoundNames[i]);
  }
  {
    std::string rest = expect_keyed(r, "value");
    if (rest.compare(0, 2, "r ") != 0) throw FormatError("nkcert: expected 'value r'");
    c.r = parse_double(rest.substr(2), "r");
    rest = expect_keyed(r, "value");
    if (rest.compare(0, 9, "c0_bound ") != 0)
      throw FormatError("nkcert: expected 'value c0_bound'");
    c.c0_bound = parse_double(rest.substr(9), "c0_bound");
  }
  auto read_flag = [&](const char* name) {
    std::string rest = expect_keyed(r, "flag");
    const std::string want = std::string(name) + " ";
    if (rest.compare(0, want.size(), want) != 0)
      throw FormatError("nkcert: expected flag " + std::string(name));
    std::string v = rest.substr(want.size());
    if (v != "0" && v != "1") throw FormatError("nkcert: flag must be 0 or 1");
    return v == "1";
  };
  c.hyp_w_ok = read_flag("hyp_w_ok");
  c.conditions_ok = read_flag("conditions_ok");
  c.tainted = read_flag("tainted");
  while (r.peek().compare(0, 5, "diag ") == 0) {
    std::string rest = expect_keyed(r, "diag");
    const std::size_t sp = rest.find(' ');
    if (sp == std::string::npos) throw FormatError("nkcert: malformed diag line");
    c.diagnostics[rest.substr(0, sp)] = parse_double(rest.substr(sp + 1), "diag");
  }
  if (r.take() != "end nkcert v1") throw FormatError("nkcert: missing end marker");
  return c;
}

void write_certificate_file(const std::string& path, const Certificate& c) {
  std::ofstream f(path);
  if (!f) throw FormatError("cannot open for writing: " + path);
  write_certificate(f, c);
  if (!f.good()) throw FormatError("write failed: " + path);
}

Certificate read_certificate_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open: " + path);
  return read_certificate(f);
}

}  // namespace nkpde
