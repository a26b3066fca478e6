#include "gch/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gch/errors.hpp"

namespace gch {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  throw ConfigError("line " + std::to_string(line) + ": " + key + ": " + what);
}

double to_real(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) fail(key, e.line, "expected a real number, got '" + e.value + "'");
  return v;
}

std::size_t to_count(const std::string& key, const Entry& e) {
  unsigned long long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    fail(key, e.line, "expected a non-negative integer, got '" + e.value + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> to_list(const std::string& key, const Entry& e) {
  std::string s = e.value;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_real(key, Entry{tok, e.line}));
  return out;
}

const std::set<std::string> kKnownKeys = {
    "family", "amplitude", "samples", "k",      "n",           "t_end", "cfl",
    "dt_max", "dt_min",    "blowup_threshold",  "rhs_form",    "record_stride",
    "x0",     "out_dir"};

}  // namespace

SimConfig parse_config_text(std::string_view text) {
  std::map<std::string, Entry> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(std::string_view(raw).substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line) + ": expected 'key = value', got '" + content + "'");
    }
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (!kKnownKeys.count(key)) fail(key, line, "unknown key");
    if (entries.count(key)) fail(key, line, "duplicate key (first set on line " + std::to_string(entries[key].line) + ")");
    if (value.empty()) fail(key, line, "missing value");
    entries[key] = Entry{value, line};
  }

  auto require = [&](const std::string& key) -> const Entry& {
    const auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  };
  auto optional = [&](const std::string& key) -> const Entry* {
    const auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  SimConfig cfg;
  {
    const Entry& e = require("family");
    try {
      cfg.initial_data.family = parse_family(e.value);
    } catch (const ConfigError& err) {
      fail("family", e.line, err.what());
    }
  }
  if (cfg.initial_data.family == Family::CustomSamples) {
    cfg.initial_data.samples = to_list("samples", require("samples"));
    if (const Entry* e = optional("amplitude")) fail("amplitude", e->line, "not used with custom samples");
  } else {
    cfg.initial_data.amplitude = to_real("amplitude", require("amplitude"));
    if (const Entry* e = optional("samples")) fail("samples", e->line, "only valid with family = custom");
  }
  cfg.k = to_real("k", require("k"));
  cfg.n = to_count("n", require("n"));
  cfg.t_end = to_real("t_end", require("t_end"));
  if (const Entry* e = optional("cfl")) cfg.cfl = to_real("cfl", *e);
  if (const Entry* e = optional("dt_max")) cfg.dt_max = to_real("dt_max", *e);
  if (const Entry* e = optional("dt_min")) cfg.dt_min = to_real("dt_min", *e);
  if (const Entry* e = optional("blowup_threshold")) cfg.blowup_threshold = to_real("blowup_threshold", *e);
  if (const Entry* e = optional("record_stride")) cfg.record_stride = to_count("record_stride", *e);
  if (const Entry* e = optional("x0")) cfg.x0 = to_real("x0", *e);
  if (const Entry* e = optional("out_dir")) cfg.out_dir = e->value;
  if (const Entry* e = optional("rhs_form")) {
    try {
      cfg.rhs_form = parse_rhs_form(e->value);
    } catch (const ConfigError& err) {
      fail("rhs_form", e->line, err.what());
    }
  }
  validate(cfg);
  return cfg;
}

SimConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string format_config(const SimConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "family = " << to_string(cfg.initial_data.family) << '\n';
  if (cfg.initial_data.family == Family::CustomSamples) {
    out << "samples = ";
    for (std::size_t i = 0; i < cfg.initial_data.samples.size(); ++i) {
      out << (i ? ", " : "") << cfg.initial_data.samples[i];
    }
    out << '\n';
  } else {
    out << "amplitude = " << cfg.initial_data.amplitude << '\n';
  }
  out << "k = " << cfg.k << '\n'
      << "n = " << cfg.n << '\n'
      << "t_end = " << cfg.t_end << '\n'
      << "cfl = " << cfg.cfl << '\n'
      << "dt_max = " << cfg.dt_max << '\n'
      << "dt_min = " << cfg.dt_min << '\n'
      << "blowup_threshold = " << cfg.blowup_threshold << '\n'
      << "rhs_form = " << to_string(cfg.rhs_form) << '\n'
      << "record_stride = " << cfg.record_stride << '\n'
      << "x0 = " << cfg.x0 << '\n';
  if (!cfg.out_dir.empty()) out << "out_dir = " << cfg.out_dir << '\n';
  return out.str();
}

}  // namespace gch
