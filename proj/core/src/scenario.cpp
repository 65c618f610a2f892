#include "relaypay/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "relaypay/error.hpp"

namespace relaypay {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ParseError(std::string(key) + ": expected " + std::string(want) + ", got '" +
                   std::string(value) + "'");
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

template <typename Int>
Int to_integer(std::string_view key, std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "an integer");
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Field {
  std::string key;
  std::string target;  // aliases (dB forms) share the target of the linear key
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::string(const Scenario&)> get;  // empty for load-only aliases
};

template <typename Proj>
Field number(std::string key, Proj proj) {
  Field f;
  f.key = key;
  f.target = key;
  f.set = [proj, key](Scenario& s, std::string_view v) { proj(s) = to_double(key, v); };
  f.get = [proj](const Scenario& s) {
    Scenario copy = s;
    return fmt(proj(copy));
  };
  return f;
}

template <typename Int, typename Proj>
Field integer(std::string key, Proj proj) {
  Field f;
  f.key = key;
  f.target = key;
  f.set = [proj, key](Scenario& s, std::string_view v) { proj(s) = to_integer<Int>(key, v); };
  f.get = [proj](const Scenario& s) {
    Scenario copy = s;
    return std::to_string(proj(copy));
  };
  return f;
}

Field decibel(std::string key, std::string target, DecibelRef ref, double& (*proj)(Scenario&)) {
  Field f;
  f.key = key;
  f.target = std::move(target);
  f.set = [proj, key, ref](Scenario& s, std::string_view v) {
    proj(s) = from_decibels(to_double(key, v), ref);
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> t;
    t.push_back(number("channel.alpha", [](Scenario& s) -> double& { return s.sim.channel.alpha; }));
    t.push_back(number("channel.r0", [](Scenario& s) -> double& { return s.sim.channel.r0; }));
    t.push_back(number("channel.G0", [](Scenario& s) -> double& { return s.sim.channel.G0; }));
    t.push_back(decibel("channel.G0_db", "channel.G0", DecibelRef::dB,
                        [](Scenario& s) -> double& { return s.sim.channel.G0; }));
    t.push_back(number("channel.sigma2", [](Scenario& s) -> double& { return s.sim.channel.sigma2; }));
    t.push_back(decibel("channel.sigma2_dbm", "channel.sigma2", DecibelRef::dBm,
                        [](Scenario& s) -> double& { return s.sim.channel.sigma2; }));
    t.push_back(number("channel.energy_scale", [](Scenario& s) -> double& { return s.energy_scale; }));

    t.push_back(number("econ.B_max", [](Scenario& s) -> double& { return s.sim.econ.B_max; }));
    t.push_back(number("econ.zeta_max", [](Scenario& s) -> double& { return s.sim.econ.zeta_max; }));
    t.push_back(number("econ.epsilon", [](Scenario& s) -> double& { return s.sim.econ.epsilon; }));
    t.push_back(number("econ.gamma", [](Scenario& s) -> double& { return s.sim.econ.gamma; }));

    t.push_back(number("geometry.width", [](Scenario& s) -> double& { return s.sim.geometry.width; }));
    t.push_back(number("geometry.height", [](Scenario& s) -> double& { return s.sim.geometry.height; }));
    t.push_back(number("geometry.bs_x", [](Scenario& s) -> double& { return s.sim.geometry.bs_x; }));
    t.push_back(number("geometry.bs_y", [](Scenario& s) -> double& { return s.sim.geometry.bs_y; }));
    t.push_back(number("geometry.lambda", [](Scenario& s) -> double& { return s.sim.geometry.lambda; }));
    t.push_back(number("geometry.rho", [](Scenario& s) -> double& { return s.sim.geometry.rho; }));
    t.push_back(number("geometry.d", [](Scenario& s) -> double& { return s.sim.geometry.d; }));
    {
      Field f;
      f.key = f.target = "geometry.placement";
      f.set = [](Scenario& s, std::string_view v) {
        if (v == "fixed") {
          s.sim.geometry.placement = Placement::Fixed;
        } else if (v == "density") {
          s.sim.geometry.placement = Placement::Density;
        } else {
          bad_value("geometry.placement", v, "fixed or density");
        }
      };
      f.get = [](const Scenario& s) {
        return std::string(s.sim.geometry.placement == Placement::Fixed ? "fixed" : "density");
      };
      t.push_back(std::move(f));
    }
    t.push_back(integer<int>("geometry.mt_count", [](Scenario& s) -> int& { return s.sim.geometry.mt_count; }));

    t.push_back(integer<int>("sim.slots", [](Scenario& s) -> int& { return s.sim.slots; }));
    {
      Field f;
      f.key = f.target = "sim.scheme";
      f.set = [](Scenario& s, std::string_view v) {
        const auto scheme = parse_scheme(v);
        if (!scheme) bad_value("sim.scheme", v, "DT, PartNSD, PartSD, FullNSD or FullSD");
        s.sim.scheme = *scheme;
      };
      f.get = [](const Scenario& s) { return std::string(to_string(s.sim.scheme)); };
      t.push_back(std::move(f));
    }
    t.push_back(number("sim.E_max", [](Scenario& s) -> double& { return s.sim.E_max; }));
    t.push_back(number("sim.D_i", [](Scenario& s) -> double& { return s.sim.D_i; }));
    t.push_back(integer<int>("sim.overlap_retries", [](Scenario& s) -> int& { return s.sim.overlap_retries; }));
    {
      Field f;
      f.key = f.target = "sim.outage_energy";
      f.set = [](Scenario& s, std::string_view v) {
        if (v == "none") {
          s.sim.outage_energy = OutageEnergy::None;
        } else if (v == "capped") {
          s.sim.outage_energy = OutageEnergy::Capped;
        } else {
          bad_value("sim.outage_energy", v, "none or capped");
        }
      };
      f.get = [](const Scenario& s) {
        return std::string(s.sim.outage_energy == OutageEnergy::None ? "none" : "capped");
      };
      t.push_back(std::move(f));
    }
    t.push_back(integer<std::uint64_t>("sim.seed", [](Scenario& s) -> std::uint64_t& { return s.sim.seed.seed; }));
    t.push_back(integer<std::uint64_t>("sim.stream", [](Scenario& s) -> std::uint64_t& { return s.sim.seed.stream_id; }));

    t.push_back(number("alg.tau", [](Scenario& s) -> double& { return s.sim.alg.tau; }));
    t.push_back(number("alg.delta_pi", [](Scenario& s) -> double& { return s.sim.alg.delta_pi; }));
    t.push_back(number("alg.delta_Dr", [](Scenario& s) -> double& { return s.sim.alg.delta_Dr; }));
    t.push_back(number("alg.delta_C", [](Scenario& s) -> double& { return s.sim.alg.delta_C; }));
    t.push_back(integer<int>("alg.max_outer", [](Scenario& s) -> int& { return s.sim.alg.max_outer; }));

    t.push_back(number("source.r", [](Scenario& s) -> double& { return s.source.r; }));
    t.push_back(number("source.eta", [](Scenario& s) -> double& { return s.source.eta; }));
    t.push_back(number("source.B", [](Scenario& s) -> double& { return s.source.B; }));
    t.push_back(number("source.D", [](Scenario& s) -> double& { return s.source.D; }));
    t.push_back(number("source.mu_N", [](Scenario& s) -> double& { return s.source.mu_N; }));

    t.push_back(integer<int>("sweep.reps", [](Scenario& s) -> int& { return s.reps; }));
    return t;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const Field& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace

ChannelParams Scenario::effective_channel() const {
  ChannelParams ch = sim.channel;
  ch.sigma2 *= energy_scale;
  return ch;
}

SimConfig Scenario::sim_config() const {
  SimConfig cfg = sim;
  cfg.channel = effective_channel();
  return cfg;
}

void Scenario::validate() const {
  if (!(energy_scale > 0.0)) throw ValidationError("channel.energy_scale must be > 0");
  sim_config().validate();
  if (!(source.r >= 0.0)) throw ValidationError("source.r must be >= 0");
  if (!(source.eta > 0.0)) throw ValidationError("source.eta must be > 0");
  if (!(source.B >= 0.0 && source.B <= sim.econ.B_max)) {
    throw ValidationError("source.B must be in [0, econ.B_max]");
  }
  if (!(source.D > 0.0)) throw ValidationError("source.D must be > 0");
  if (!(source.mu_N >= 0.0)) throw ValidationError("source.mu_N must be >= 0");
  if (reps < 1) throw ValidationError("sweep.reps must be >= 1");
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::set<std::string> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 'section.key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ParseError(std::string(key) + ": unknown key (line " + std::to_string(line_no) + ")");
    if (value.empty()) throw ParseError(std::string(key) + ": missing value");
    if (!seen.insert(f->target).second) {
      throw ParseError(std::string(key) + ": " + f->target + " set more than once");
    }
    try {
      f->set(s, value);
    } catch (const DomainError& e) {
      throw ParseError(std::string(key) + ": " + e.what());
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  for (const Field& f : fields()) {
    if (!f.get) continue;
    out += f.key;
    out += " = ";
    out += f.get(s);
    out += '\n';
  }
  return out;
}

}  // namespace relaypay
