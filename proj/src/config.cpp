#include "nkpde/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace nkpde {
namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
  std::ostringstream os;
  os << name;
  if (line > 0) os << ":" << line;
  os << ": " << msg;
  throw ConfigError(os.str());
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

long long to_ll_digits(const std::string& digits, bool* overflow) {
  long long v = 0;
  for (char ch : digits) {
    if (__builtin_mul_overflow(v, 10ll, &v) ||
        __builtin_add_overflow(v, (long long)(ch - '0'), &v)) {
      *overflow = true;
      return 0;
    }
  }
  return v;
}

bool all_digits(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Interval parse_exact(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  long long sign = 1;
  if (s[0] == '+' || s[0] == '-') {
    if (s[0] == '-') sign = -1;
    s = s.substr(1);
  }
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    std::string ps = s.substr(0, slash), qs = s.substr(slash + 1);
    if (!all_digits(ps) || !all_digits(qs))
      throw std::invalid_argument("rational must be integer/integer: '" + text + "'");
    bool ovf = false;
    long long p = to_ll_digits(ps, &ovf);
    long long q = to_ll_digits(qs, &ovf);
    if (ovf) throw std::invalid_argument("rational overflows: '" + text + "'");
    if (q == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return from_ratio(sign * p, q);
  }

  // decimal with optional exponent: digits[.digits][e[+-]digits]
  long long exp10 = 0;
  std::size_t epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    std::string es = s.substr(epos + 1);
    s = s.substr(0, epos);
    long long esign = 1;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      if (es[0] == '-') esign = -1;
      es = es.substr(1);
    }
    if (!all_digits(es)) throw std::invalid_argument("bad exponent: '" + text + "'");
    bool ovf = false;
    exp10 = esign * to_ll_digits(es, &ovf);
    if (ovf || exp10 > 64 || exp10 < -64)
      throw std::invalid_argument("exponent out of range: '" + text + "'");
  }
  std::string ip = s, fp;
  std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if (ip.empty() && fp.empty()) throw std::invalid_argument("bad number: '" + text + "'");
  if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
    throw std::invalid_argument("bad number: '" + text + "'");
  bool ovf = false;
  long long p = to_ll_digits(ip + fp, &ovf);
  if (ovf) throw std::invalid_argument("too many digits: '" + text + "'");
  long long net = exp10 - (long long)fp.size();
  long long q = 1;
  while (net > 0 && !ovf) {
    ovf = __builtin_mul_overflow(p, 10ll, &p);
    --net;
  }
  while (net < 0 && !ovf) {
    ovf = __builtin_mul_overflow(q, 10ll, &q);
    ++net;
  }
  if (ovf) throw std::invalid_argument("value needs too many digits: '" + text + "'");
  return from_ratio(sign * p, q);
}

namespace {

class Reader {
 public:
  Reader(std::vector<Entry> entries, std::string name)
      : entries_(std::move(entries)), name_(std::move(name)) {}

  const Entry* find(const std::string& sec, const std::string& key) const {
    const Entry* hit = nullptr;
    for (const Entry& e : entries_) {
      if (e.section != sec || e.key != key) continue;
      if (hit) fail(name_, e.line, "duplicate key '" + key + "'");
      hit = &e;
    }
    if (hit) used_.insert(hit);
    return hit;
  }

  std::vector<const Entry*> find_all(const std::string& sec, const std::string& key) const {
    std::vector<const Entry*> out;
    for (const Entry& e : entries_) {
      if (e.section == sec && e.key == key) {
        out.push_back(&e);
        used_.insert(&e);
      }
    }
    return out;
  }

  const Entry& require(const std::string& sec, const std::string& key) const {
    const Entry* e = find(sec, key);
    if (!e) fail(name_, 0, "[" + sec + "] missing key '" + key + "'");
    return *e;
  }

  Interval exact(const Entry& e) const {
    try {
      return parse_exact(e.value);
    } catch (const std::invalid_argument& ex) {
      fail(name_, e.line, std::string(ex.what()));
    }
  }

  double number(const Entry& e) const {
    char* end = nullptr;
    double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
      fail(name_, e.line, "not a number: '" + e.value + "'");
    return v;
  }

  long long integer(const Entry& e) const {
    char* end = nullptr;
    long long v = std::strtoll(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
      fail(name_, e.line, "not an integer: '" + e.value + "'");
    return v;
  }

  bool onoff(const Entry& e) const {
    if (e.value == "on") return true;
    if (e.value == "off") return false;
    fail(name_, e.line, "'" + e.key + "' must be on or off");
  }

  void reject_unused() const {
    for (const Entry& e : entries_)
      if (!used_.count(&e))
        fail(name_, e.line, "unknown key '" + e.key + "' in [" + e.section + "]");
  }

  const std::string& name() const { return name_; }

 private:
  std::vector<Entry> entries_;
  std::string name_;
  mutable std::set<const Entry*> used_;
};

CosSeq build_forcing(const Reader& r) {
  CosSeq g = default_forcing();
  if (const Entry* e = r.find("problem", "forcing")) {
    if (e->value == "zero")
      g = CosSeq::zeros(1);
    else if (e->value != "default")
      fail(r.name(), e->line, "forcing must be default or zero");
  }
  for (const Entry* e : r.find_all("problem", "gmode")) {
    std::vector<std::string> t = tokens(e->value);
    if (t.size() != 2) fail(r.name(), e->line, "gmode needs: <mode> <value>");
    char* end = nullptr;
    long long k = std::strtoll(t[0].c_str(), &end, 10);
    if (end == t[0].c_str() || *end != '\0' || k < 0 || k > 8192)
      fail(r.name(), e->line, "bad gmode index '" + t[0] + "'");
    Interval v;
    try {
      v = parse_exact(t[1]);
    } catch (const std::invalid_argument& ex) {
      fail(r.name(), e->line, std::string(ex.what()));
    }
    if ((std::size_t)k >= g.c.size()) g.c.resize((std::size_t)k + 1, Interval());
    g.c[(std::size_t)k] = g.c[(std::size_t)k] + v;
  }
  return g;
}

Problem build_problem(const Reader& r) {
  const Entry& fam = r.require("problem", "family");
  if (fam.value == "scalar") {
    ScalarQuadraticProblem p;
    p.alpha = r.exact(r.require("problem", "alpha"));
    p.beta = r.exact(r.require("problem", "beta"));
    p.g = build_forcing(r);
    return Problem(p);
  }
  if (fam.value == "skt") {
    SKTProblem p;
    const std::pair<const char*, Interval*> keys[] = {
        {"d1", &p.d1},   {"d2", &p.d2},   {"d11", &p.d11}, {"d12", &p.d12},
        {"d21", &p.d21}, {"d22", &p.d22}, {"r1", &p.r1},   {"r2", &p.r2},
        {"a1", &p.a1},   {"a2", &p.a2},   {"b1", &p.b1},   {"b2", &p.b2}};
    for (auto& [key, dst] : keys) *dst = r.exact(r.require("problem", key));
    return Problem(p);
  }
  if (fam.value == "dae") {
    RationalDiffusionProblem p;
    p.gamma = r.exact(r.require("problem", "gamma"));
    p.alpha = r.exact(r.require("problem", "alpha"));
    p.beta = r.exact(r.require("problem", "beta"));
    p.g = build_forcing(r);
    return Problem(p);
  }
  fail(r.name(), fam.line, "family must be scalar, skt, or dae");
}

SolverOptions build_solver(const Reader& r, const Problem& p, std::size_t n) {
  SolverOptions s;
  if (const Entry* e = r.find("solver", "max_iters")) {
    long long v = r.integer(*e);
    if (v < 1) fail(r.name(), e->line, "max_iters must be >= 1");
    s.newton.max_iters = (std::size_t)v;
  }
  if (const Entry* e = r.find("solver", "tol")) {
    s.newton.residual_tol = r.number(*e);
    if (!(s.newton.residual_tol > 0)) fail(r.name(), e->line, "tol must be > 0");
  }
  if (const Entry* e = r.find("solver", "damping")) {
    s.newton.damping = r.number(*e);
    if (!(s.newton.damping > 0 && s.newton.damping <= 1))
      fail(r.name(), e->line, "damping must be in (0, 1]");
  }
  if (const Entry* e = r.find("solver", "perturb")) {
    s.perturb = r.number(*e);
    if (s.perturb < 0) fail(r.name(), e->line, "perturb must be >= 0");
  }

  const Entry* g = r.find("solver", "guess");
  std::string base = g ? g->value : "zero";
  const bool is_skt = family_of(p) == Family::skt;
  if (base == "file") {
    s.guess_from_file = true;
    const Entry& init = r.require("solver", "initial");
    s.initial_path = init.value;
  } else if (base == "zero") {
    s.guess.base = BaseState::zero;
  } else if (base == "constant") {
    s.guess.base = BaseState::constant;
    s.guess.constant1 = r.number(r.require("solver", "constant1"));
    if (const Entry* c2 = r.find("solver", "constant2")) {
      if (!is_skt) fail(r.name(), c2->line, "constant2 only applies to family=skt");
      s.guess.constant2 = r.number(*c2);
    } else if (is_skt) {
      fail(r.name(), 0, "[solver] missing key 'constant2'");
    }
  } else if (base == "coexistence" || base == "extinction1" || base == "extinction2") {
    if (!is_skt)
      fail(r.name(), g->line, "guess '" + base + "' only applies to family=skt");
    s.guess.base = base == "coexistence"    ? BaseState::coexistence
                   : base == "extinction1" ? BaseState::extinction1
                                           : BaseState::extinction2;
  } else {
    fail(r.name(), g->line,
         "guess must be zero, constant, coexistence, extinction1, extinction2, or file");
  }

  const std::size_t d = dim_of(p);
  for (const Entry* e : r.find_all("solver", "mode")) {
    if (s.guess_from_file)
      fail(r.name(), e->line, "mode entries cannot be combined with guess = file");
    std::vector<std::string> t = tokens(e->value);
    if (t.size() != 3) fail(r.name(), e->line, "mode needs: <component> <mode> <amplitude>");
    char* end = nullptr;
    long long comp = std::strtoll(t[0].c_str(), &end, 10);
    bool ok = end != t[0].c_str() && *end == '\0';
    end = nullptr;
    long long k = std::strtoll(t[1].c_str(), &end, 10);
    ok = ok && end != t[1].c_str() && *end == '\0';
    end = nullptr;
    double amp = std::strtod(t[2].c_str(), &end);
    ok = ok && end != t[2].c_str() && *end == '\0';
    if (!ok) fail(r.name(), e->line, "mode needs: <component> <mode> <amplitude>");
    if (comp < 0 || (std::size_t)comp >= d)
      fail(r.name(), e->line, "mode component out of range for this family");
    if (k < 0 || (std::size_t)k >= n) fail(r.name(), e->line, "mode index must be < N");
    s.guess.modes.emplace_back((std::size_t)comp, (std::size_t)k, amp);
  }
  return s;
}

}  // namespace

RunConfig parse_config(std::istream& is, const std::string& name) {
  static const std::set<std::string> known_sections = {
      "problem", "discretization", "solver", "validation", "output"};

  std::vector<Entry> entries;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_sections.count(section))
        fail(name, lineno, "unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(name, lineno, "expected key = value");
    if (section.empty()) fail(name, lineno, "key outside any [section]");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, lineno, "empty key");
    if (value.empty()) fail(name, lineno, "empty value for key '" + key + "'");
    entries.push_back({section, key, value, lineno});
  }

  Reader r(std::move(entries), name);
  RunConfig cfg;
  cfg.problem = build_problem(r);

  const Entry& ne = r.require("discretization", "N");
  long long nval = r.integer(ne);
  if (nval < 2) fail(name, ne.line, "N must be >= 2");
  cfg.N = (std::size_t)nval;

  const Entry& nue = r.require("discretization", "nu");
  cfg.nu = r.exact(nue);
  cfg.nu_mid = midpoint(cfg.nu);
  if (cfg.nu_mid < 1.0) fail(name, nue.line, "nu must be >= 1");
  cfg.nu_is_one = cfg.nu_mid == 1.0;

  if (const Entry* e = r.find("discretization", "pad_factor")) {
    cfg.pad_factor = r.number(*e);
    if (!(cfg.pad_factor >= 1.0)) fail(name, e->line, "pad_factor must be >= 1");
  }

  cfg.solver = build_solver(r, cfg.problem, cfg.N);

  if (const Entry* e = r.find("validation", "enabled")) cfg.validation.enabled = r.onoff(*e);
  if (const Entry* e = r.find("validation", "policy")) {
    if (e->value != "midpoint")
      fail(name, e->line, "policy '" + e->value + "' not supported (only: midpoint)");
    cfg.validation.policy = e->value;
  }

  if (const Entry* e = r.find("output", "dir")) cfg.output.dir = e->value;
  if (const Entry* e = r.find("output", "report")) cfg.output.report = r.onoff(*e);
  if (const Entry* e = r.find("output", "certificate"))
    cfg.output.certificate = r.onoff(*e);

  r.reject_unused();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open");
  return parse_config(is, path);
}

}  // namespace nkpde
