#include "sharedzero/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sharedzero {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("'" + key + "' expects a real number, got '" + value + "'");
  return out;
}

long to_integer(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'");
  return out;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Complex coefficients as "re" or "re:im", comma separated.
std::vector<Complex> to_coeffs(const std::string& key, const std::string& value) {
  std::vector<Complex> out;
  for (const auto& item : split_list(value)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(to_real(key, item), 0.0);
    } else {
      out.emplace_back(to_real(key, item.substr(0, colon)), to_real(key, item.substr(colon + 1)));
    }
  }
  if (out.empty()) throw ConfigError("'" + key + "' needs at least one coefficient");
  return out;
}

const char* const kFamilies[] = {"normal_form",      "weiss",      "positive_exp",
                                 "im_exp_of",        "shifted_power", "moebius_of",
                                 "sector_reflected", "fefferman",  "poisson_disk"};

bool apply_field(FieldParams& f, const std::string& key, const std::string& sub,
                 const std::string& value) {
  if (sub == "family") {
    const std::string name = trim(value);
    bool known = false;
    for (const char* fam : kFamilies) known = known || name == fam;
    if (!known) throw ConfigError("unknown family '" + name + "'");
    f.family = name;
  } else if (sub == "k") {
    f.k = static_cast<int>(to_integer(key, value));
  } else if (sub == "alpha") {
    f.alpha = to_real(key, value);
  } else if (sub == "epsilon") {
    f.epsilon = to_real(key, value);
  } else if (sub == "coeffs") {
    f.coeffs = to_coeffs(key, value);
  } else if (sub == "a") {
    f.a = to_real(key, value);
  } else if (sub == "c") {
    f.c = to_real(key, value);
  } else if (sub == "d") {
    f.d = to_real(key, value);
  } else if (sub == "samples") {
    f.samples.clear();
    for (const auto& item : split_list(value)) f.samples.push_back(to_real(key, item));
  } else if (sub == "radius") {
    f.radius = to_real(key, value);
  } else if (sub == "scale") {
    f.scale = to_real(key, value);
  } else {
    return false;
  }
  return true;
}

}  // namespace

Command parse_command(const std::string& name) {
  const std::string n = trim(name);
  if (n == "verify-pde") return Command::verify_pde;
  if (n == "verify-deltaF") return Command::verify_deltaF;
  if (n == "verify-qform") return Command::verify_qform;
  if (n == "verify-bochner") return Command::verify_bochner;
  if (n == "certify-bound") return Command::certify_bound;
  if (n == "sector-poisson") return Command::sector_poisson;
  if (n == "counterexample") return Command::counterexample;
  if (n == "suite") return Command::suite;
  throw ConfigError("unknown command '" + n + "'");
}

std::string command_name(Command c) {
  switch (c) {
    case Command::verify_pde: return "verify-pde";
    case Command::verify_deltaF: return "verify-deltaF";
    case Command::verify_qform: return "verify-qform";
    case Command::verify_bochner: return "verify-bochner";
    case Command::certify_bound: return "certify-bound";
    case Command::sector_poisson: return "sector-poisson";
    case Command::counterexample: return "counterexample";
    case Command::suite: return "suite";
  }
  return "suite";
}

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key.rfind("u.", 0) == 0 || key.rfind("v.", 0) == 0) {
    FieldParams& f = key[0] == 'u' ? cfg.u : cfg.v;
    if (!apply_field(f, key, key.substr(2), value)) throw ConfigError("unknown key '" + key + "'");
    return;
  }
  if (key == "family" || key == "alpha" || key == "epsilon" || key == "coeffs") {
    apply_field(cfg.u, key, key, value);
  } else if (key == "command") {
    cfg.command = parse_command(value);
  } else if (key == "k") {
    cfg.k = static_cast<int>(to_integer(key, value));
    cfg.u.k = cfg.k;
    cfg.v.k = cfg.k;
  } else if (key == "t") {
    cfg.t = to_real(key, value);
  } else if (key == "eps") {
    cfg.eps = to_real(key, value);
  } else if (key == "grid.radius") {
    cfg.grid_radius = to_real(key, value);
  } else if (key == "grid.n") {
    cfg.grid_n = static_cast<int>(to_integer(key, value));
  } else if (key == "grid.band") {
    cfg.band = to_real(key, value);
  } else if (key == "step") {
    cfg.step = to_real(key, value);
    if (!(cfg.step > 0)) throw ConfigError("step must be > 0");
  } else if (key == "tol") {
    cfg.tol = to_real(key, value);
    if (!(cfg.tol > 0)) throw ConfigError("tol must be > 0");
  } else if (key == "count") {
    cfg.count = to_integer(key, value);
  } else if (key == "seed") {
    const long s = to_integer(key, value);
    if (s < 0) throw ConfigError("seed must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "data") {
    cfg.data = trim(value);
  } else if (key == "output") {
    cfg.output = trim(value);
  } else if (key == "format") {
    const std::string f = trim(value);
    if (f == "json") {
      cfg.format = OutputFormat::json;
    } else if (f == "csv") {
      cfg.format = OutputFormat::csv;
    } else {
      throw ConfigError("format must be json or csv");
    }
  } else if (key == "timing") {
    const std::string b = trim(value);
    if (b != "true" && b != "false") throw ConfigError("timing must be true or false");
    cfg.timing = b == "true";
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

void validate(const RunConfig& cfg) {
  if (cfg.tol < 0) throw ConfigError("tol must be > 0");
  if (!(cfg.step >= 0)) throw ConfigError("step must be > 0");
  if (cfg.grid_n < 2) throw ConfigError("grid.n must be >= 2");
  if (!(cfg.grid_radius > 0 && cfg.grid_radius < 2)) throw ConfigError("grid.radius must lie in (0, 2)");
  if (cfg.band < 0) throw ConfigError("grid.band must be >= 0");
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (cfg.count < 1) throw ConfigError("count must be >= 1");
}

std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open data file '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    out.push_back(to_real("data", line));
  }
  return out;
}

}  // namespace sharedzero
