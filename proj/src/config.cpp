#include "nslit/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "nslit/error.hpp"
#include "nslit/io.hpp"

namespace nslit {

namespace {

enum class Section { None, Scenario, Params, Grid, Slit, Outputs };

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

struct Parser {
  std::size_t line = 0;
  std::size_t value_col = 0;

  [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::size_t col) const {
    throw Error(code, msg, line, col);
  }

  double number(std::string_view v) const {
    double out = 0.0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || v.empty()) {
      fail(ErrorCode::SyntaxError, "expected a number, got '" + std::string(v) + "'", value_col);
    }
    return out;
  }

  std::size_t count(std::string_view v) const {
    std::size_t out = 0;
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || v.empty()) {
      fail(ErrorCode::SyntaxError, "expected a non-negative integer, got '" + std::string(v) + "'",
           value_col);
    }
    return out;
  }

  bool boolean(std::string_view v) const {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(ErrorCode::SyntaxError, "expected true or false, got '" + std::string(v) + "'",
         value_col);
  }

  std::string text(std::string_view v) const {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
      std::string_view inner = v.substr(1, v.size() - 2);
      if (inner.find('"') != std::string_view::npos) {
        fail(ErrorCode::SyntaxError, "stray quote in string", value_col);
      }
      return std::string(inner);
    }
    if (!is_identifier(v)) {
      fail(ErrorCode::SyntaxError, "names must be identifiers or quoted strings", value_col);
    }
    return std::string(v);
  }
};

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  double hbar = 2.0, mass = 1.0, omega = 1.0;
  Section section = Section::None;
  std::set<std::string> seen;  // keys of the current section
  std::size_t params_line = 0;
  Parser p;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++p.line;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::string_view body = raw;
    const std::size_t hash = body.find('#');
    if (hash != std::string_view::npos) body = body.substr(0, hash);
    const std::size_t lead = body.find_first_not_of(" \t");
    if (lead == std::string_view::npos) continue;
    const std::size_t col = lead + 1;
    body = trim(body);

    if (body.front() == '[') {
      std::string_view name;
      bool array = false;
      if (body.starts_with("[[") && body.ends_with("]]") && body.size() > 4) {
        name = trim(body.substr(2, body.size() - 4));
        array = true;
      } else if (body.ends_with("]") && body.size() > 2 && !body.starts_with("[[")) {
        name = trim(body.substr(1, body.size() - 2));
      } else {
        p.fail(ErrorCode::SyntaxError, "malformed section header", col);
      }
      if (array && name == "slit") {
        section = Section::Slit;
        cfg.slits.emplace_back();
      } else if (!array && name == "scenario") {
        section = Section::Scenario;
      } else if (!array && name == "params") {
        section = Section::Params;
        params_line = p.line;
      } else if (!array && name == "grid") {
        section = Section::Grid;
      } else if (!array && name == "outputs") {
        section = Section::Outputs;
      } else {
        p.fail(ErrorCode::UnknownKey, "unknown section '" + std::string(name) + "'", col);
      }
      if (section != Section::Slit) {
        const std::string tag = "section:" + std::string(name);
        if (!seen.insert(tag).second) {
          p.fail(ErrorCode::SyntaxError, "section [" + std::string(name) + "] repeated", col);
        }
      }
      // keys are tracked per section instance
      std::erase_if(seen, [](const std::string& k) { return !k.starts_with("section:"); });
      continue;
    }

    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) p.fail(ErrorCode::SyntaxError, "expected key = value", col);
    const std::string key(trim(body.substr(0, eq)));
    std::string_view value = trim(body.substr(eq + 1));
    p.value_col = raw.find_first_not_of(" \t", raw.find('=') + 1) + 1;
    if (!is_identifier(key)) p.fail(ErrorCode::SyntaxError, "malformed key", col);
    if (value.empty()) p.fail(ErrorCode::SyntaxError, "missing value for '" + key + "'", p.value_col);
    if (section == Section::None) {
      p.fail(ErrorCode::SyntaxError, "key '" + key + "' outside any section", col);
    }
    if (!seen.insert(key).second) p.fail(ErrorCode::SyntaxError, "duplicate key '" + key + "'", col);

    auto unknown = [&] { p.fail(ErrorCode::UnknownKey, "unknown key '" + key + "'", col); };
    switch (section) {
      case Section::Scenario:
        if (key == "name") cfg.name = p.text(value);
        else unknown();
        break;
      case Section::Params: {
        double v = 0.0;
        if (key == "hbar") hbar = v = p.number(value);
        else if (key == "mass") mass = v = p.number(value);
        else if (key == "omega") omega = v = p.number(value);
        else unknown();
        if (!(v > 0.0)) p.fail(ErrorCode::NonPositiveInput, key + " must be > 0", p.value_col);
        break;
      }
      case Section::Grid:
        if (key == "x_min") cfg.grid.x_min = p.number(value);
        else if (key == "x_max") cfg.grid.x_max = p.number(value);
        else if (key == "nx") cfg.grid.nx = p.count(value);
        else if (key == "t_max") cfg.grid.t_max = p.number(value);
        else if (key == "nt") cfg.grid.nt = p.count(value);
        else unknown();
        break;
      case Section::Slit: {
        SlitSpec& s = cfg.slits.back();
        if (key == "center") s.center = p.number(value);
        else if (key == "sigma0") {
          s.sigma0 = p.number(value);
          if (!(s.sigma0 > 0.0)) {
            p.fail(ErrorCode::NonPositiveSigma, "sigma0 must be > 0", p.value_col);
          }
        } else if (key == "weight") {
          s.weight = p.number(value);
          if (!(s.weight >= 0.0)) p.fail(ErrorCode::NegativeWeight, "weight must be >= 0", p.value_col);
        } else if (key == "phase_offset") s.phase_offset = p.number(value);
        else if (key == "velocity_x") s.velocity_x = p.number(value);
        else unknown();
        break;
      }
      case Section::Outputs:
        if (key == "products") {
          std::string_view rest = value;
          while (true) {
            const std::size_t comma = rest.find(',');
            const std::string_view item = trim(rest.substr(0, comma));
            const auto prod = product_from_name(item);
            if (!prod) {
              p.fail(ErrorCode::UnknownKey, "unknown product '" + std::string(item) + "'",
                     p.value_col);
            }
            cfg.outputs.insert(*prod);
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
          }
        } else if (key == "trajectory_seeds") {
          cfg.trajectory_seeds = p.count(value);
        } else if (key == "fdm_check") {
          cfg.fdm_check = p.boolean(value);
        } else {
          unknown();
        }
        break;
      case Section::None:
        break;
    }
  }

  try {
    cfg.params = derive_params(hbar, mass, omega);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), params_line);
  }
  return validate_scenario(std::move(cfg));
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  auto num = [](double v) { return format_double(v); };
  out << "[scenario]\nname = \"" << cfg.name << "\"\n\n";
  out << "[params]\nhbar = " << num(cfg.params.hbar) << "\nmass = " << num(cfg.params.mass)
      << "\nomega = " << num(cfg.params.omega) << "\n\n";
  const GridSpec& g = cfg.grid;
  out << "[grid]\nx_min = " << num(g.x_min) << "\nx_max = " << num(g.x_max) << "\nnx = " << g.nx
      << "\nt_max = " << num(g.t_max) << "\nnt = " << g.nt << "\n";
  for (const SlitSpec& s : cfg.slits) {
    out << "\n[[slit]]\ncenter = " << num(s.center) << "\nsigma0 = " << num(s.sigma0)
        << "\nweight = " << num(s.weight) << "\nphase_offset = " << num(s.phase_offset)
        << "\nvelocity_x = " << num(s.velocity_x) << "\n";
  }
  out << "\n[outputs]\n";
  if (!cfg.outputs.empty()) {
    out << "products = ";
    bool first = true;
    for (Product prod : cfg.outputs) {
      out << (first ? "" : ", ") << product_name(prod);
      first = false;
    }
    out << "\n";
  }
  out << "trajectory_seeds = " << cfg.trajectory_seeds << "\nfdm_check = "
      << (cfg.fdm_check ? "true" : "false") << "\n";
  return out.str();
}

std::string scenario_hash(const ScenarioConfig& cfg) { return sha256_hex(serialize_config(cfg)); }

}  // namespace nslit
