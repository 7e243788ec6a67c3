#include "drisim/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "drisim/common.hpp"

namespace drisim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, const std::string& source, int line,
                    const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    fail(source, line, "key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

long long parse_int(const std::string& v, const std::string& source, int line,
                    const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    fail(source, line, "key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v, const std::string& source, int line,
                        const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE)
    fail(source, line, "key '" + key + "': expected an unsigned integer, got '" + v + "'");
  return x;
}

std::vector<double> parse_double_list(const std::string& v, const std::string& source,
                                      int line, const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split(v, ','))
    out.push_back(parse_double(item, source, line, key));
  return out;
}

Point2D parse_point(const std::string& v, const std::string& source, int line,
                    const std::string& key) {
  const auto parts = split(v, ',');
  if (parts.size() != 2)
    fail(source, line, "key '" + key + "': expected 'x,y', got '" + v + "'");
  return {parse_double(parts[0], source, line, key),
          parse_double(parts[1], source, line, key)};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt(xs[i]);
  }
  return out;
}

std::string fmt_point(const Point2D& p) { return fmt(p.x) + "," + fmt(p.y); }

std::optional<SchemeId> scheme_from_name(const std::string& name) {
  if (name == "ris_only") return SchemeId::RisOnly;
  if (name == "single_relay") return SchemeId::SingleRelay;
  if (name == "two_relay") return SchemeId::TwoRelay;
  if (name == "enhanced") return SchemeId::Enhanced;
  return std::nullopt;
}

}  // namespace

SweepConfig parse_config_text(const std::string& text, const std::string& source) {
  SweepConfig cfg;
  cfg.points.clear();  // must come from the config

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(source, line, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(source, line, "empty key");

    if (key == "schemes") {
      cfg.schemes.clear();
      if (!value.empty()) {
        for (const std::string& name : split(value, ',')) {
          const auto id = scheme_from_name(name);
          if (!id) fail(source, line, "unknown scheme '" + name + "'");
          cfg.schemes.push_back(*id);
        }
      }
    } else if (key == "axis") {
      if (value == "snr_db")
        cfg.axis = SweepAxis::TransmitSnrDb;
      else if (value == "elements")
        cfg.axis = SweepAxis::ElementsPerRis;
      else if (value == "inr_db")
        cfg.axis = SweepAxis::InrDb;
      else
        fail(source, line, "axis must be snr_db, elements, or inr_db");
    } else if (key == "points") {
      cfg.points = parse_double_list(value, source, line, key);
    } else if (key == "fixed.m") {
      cfg.fixed.m = static_cast<int>(parse_int(value, source, line, key));
    } else if (key == "fixed.snr_db") {
      cfg.fixed.snr_db = parse_double(value, source, line, key);
    } else if (key == "fixed.inr_db") {
      cfg.fixed.inr_db = parse_double(value, source, line, key);
    } else if (key == "enhanced.inr_db") {
      cfg.enhanced_inr_db = parse_double_list(value, source, line, key);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(parse_int(value, source, line, key));
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, source, line, key);
    } else if (key == "power.p1_fraction") {
      cfg.p1_fraction = parse_double(value, source, line, key);
    } else if (key == "channel.rician_k_db") {
      cfg.rician_k_db = parse_double(value, source, line, key);
    } else if (key == "channel.los_exponent") {
      cfg.los_exponent = parse_double(value, source, line, key);
    } else if (key == "channel.nlos_exponent") {
      cfg.nlos_exponent = parse_double(value, source, line, key);
    } else if (key == "channel.noise_power") {
      cfg.noise_power = parse_double(value, source, line, key);
    } else if (key == "topology.preset") {
      if (value != "paper") fail(source, line, "unknown topology preset '" + value + "'");
      cfg.nodes = paper_layout();
    } else if (key == "topology.s") {
      cfg.nodes.s = parse_point(value, source, line, key);
    } else if (key == "topology.i1") {
      cfg.nodes.i1 = parse_point(value, source, line, key);
    } else if (key == "topology.i2") {
      cfg.nodes.i2 = parse_point(value, source, line, key);
    } else if (key == "topology.d") {
      cfg.nodes.d = parse_point(value, source, line, key);
    } else if (key == "topology.r") {
      if (value == "none")
        cfg.nodes.r.reset();
      else
        cfg.nodes.r = parse_point(value, source, line, key);
    } else if (key == "topology.r1") {
      if (value == "none")
        cfg.nodes.r1.reset();
      else
        cfg.nodes.r1 = parse_point(value, source, line, key);
    } else if (key == "topology.r2") {
      if (value == "none")
        cfg.nodes.r2.reset();
      else
        cfg.nodes.r2 = parse_point(value, source, line, key);
    } else if (key == "optimizer.max_iters") {
      cfg.optimizer.max_iters = static_cast<int>(parse_int(value, source, line, key));
    } else if (key == "optimizer.rel_tol") {
      cfg.optimizer.rel_tol = parse_double(value, source, line, key);
    } else if (key == "optimizer.init") {
      if (value == "all_ones")
        cfg.optimizer.init = AoSettings::Init::AllOnes;
      else if (value == "seeded")
        cfg.optimizer.init = AoSettings::Init::Seeded;
      else
        fail(source, line, "optimizer.init must be all_ones or seeded");
    } else if (key == "optimizer.init_seed") {
      cfg.optimizer.init_seed = parse_u64(value, source, line, key);
    } else if (key == "optimizer.warmup_iters") {
      cfg.optimizer.warmup_iters = static_cast<int>(parse_int(value, source, line, key));
    } else if (key == "optimizer.restarts") {
      cfg.optimizer.restarts = static_cast<int>(parse_int(value, source, line, key));
    } else if (key == "optimizer.stop_metric") {
      if (value == "rate")
        cfg.optimizer.stop_metric = AoSettings::StopMetric::Rate;
      else if (value == "snr")
        cfg.optimizer.stop_metric = AoSettings::StopMetric::Snr;
      else
        fail(source, line, "optimizer.stop_metric must be rate or snr");
    } else {
      fail(source, line, "unknown key '" + key + "'");
    }
  }

  validate(cfg);
  return cfg;
}

SweepConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string serialize_config(const SweepConfig& cfg) {
  std::ostringstream out;
  out << "schemes = ";
  for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
    if (i) out << ',';
    out << scheme_name(cfg.schemes[i]);
  }
  out << '\n';
  out << "axis = " << axis_name(cfg.axis) << '\n';
  out << "points = " << fmt_list(cfg.points) << '\n';
  out << "fixed.m = " << cfg.fixed.m << '\n';
  out << "fixed.snr_db = " << fmt(cfg.fixed.snr_db) << '\n';
  out << "fixed.inr_db = " << fmt(cfg.fixed.inr_db) << '\n';
  out << "enhanced.inr_db = " << fmt_list(cfg.enhanced_inr_db) << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "power.p1_fraction = " << fmt(cfg.p1_fraction) << '\n';
  out << "channel.rician_k_db = " << fmt(cfg.rician_k_db) << '\n';
  out << "channel.los_exponent = " << fmt(cfg.los_exponent) << '\n';
  out << "channel.nlos_exponent = " << fmt(cfg.nlos_exponent) << '\n';
  out << "channel.noise_power = " << fmt(cfg.noise_power) << '\n';
  out << "topology.s = " << fmt_point(cfg.nodes.s) << '\n';
  out << "topology.i1 = " << fmt_point(cfg.nodes.i1) << '\n';
  out << "topology.i2 = " << fmt_point(cfg.nodes.i2) << '\n';
  out << "topology.d = " << fmt_point(cfg.nodes.d) << '\n';
  out << "topology.r = " << (cfg.nodes.r ? fmt_point(*cfg.nodes.r) : "none") << '\n';
  out << "topology.r1 = " << (cfg.nodes.r1 ? fmt_point(*cfg.nodes.r1) : "none") << '\n';
  out << "topology.r2 = " << (cfg.nodes.r2 ? fmt_point(*cfg.nodes.r2) : "none") << '\n';
  out << "optimizer.max_iters = " << cfg.optimizer.max_iters << '\n';
  out << "optimizer.rel_tol = " << fmt(cfg.optimizer.rel_tol) << '\n';
  out << "optimizer.init = "
      << (cfg.optimizer.init == AoSettings::Init::AllOnes ? "all_ones" : "seeded") << '\n';
  out << "optimizer.init_seed = " << cfg.optimizer.init_seed << '\n';
  out << "optimizer.warmup_iters = " << cfg.optimizer.warmup_iters << '\n';
  out << "optimizer.restarts = " << cfg.optimizer.restarts << '\n';
  out << "optimizer.stop_metric = "
      << (cfg.optimizer.stop_metric == AoSettings::StopMetric::Rate ? "rate" : "snr")
      << '\n';
  return out.str();
}

namespace {

const char* kFig2Config = R"(# Achievable rate vs transmit SNR, 128 elements per surface
schemes = ris_only,single_relay,two_relay,enhanced
axis = snr_db
points = -10,-5,0,5,10,15,20,25,30,35,40,45,50,55,60
fixed.m = 128
fixed.snr_db = 50
fixed.inr_db = 0
enhanced.inr_db = 0,10,20
trials = 500
seed = 1
)";

const char* kFig3Config = R"(# Achievable rate vs elements per surface, 50 dB transmit SNR
schemes = ris_only,single_relay,two_relay,enhanced
axis = elements
points = 100,150,200,250,300,400,500,600,700,800,1000,1200
fixed.m = 128
fixed.snr_db = 50
fixed.inr_db = 0
enhanced.inr_db = 0
trials = 500
seed = 1
)";

const char* kPropsConfig = R"(# Fractional-optimizer property suite
props.instances = 1000
props.m_list = 1,2,4,8,16
props.seed = 1
props.slack = 1e-9
)";

}  // namespace

std::vector<std::string> preset_names() { return {"fig2", "fig3", "appendix-props"}; }

std::optional<Preset> find_preset(const std::string& name) {
  if (name == "fig2") return Preset{PresetKind::Sweep, kFig2Config};
  if (name == "fig3") return Preset{PresetKind::Sweep, kFig3Config};
  if (name == "appendix-props") return Preset{PresetKind::Props, kPropsConfig};
  return std::nullopt;
}

PropsConfig parse_props_text(const std::string& text, const std::string& source) {
  PropsConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) fail(source, line, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key == "props.instances") {
      cfg.instances = static_cast<int>(parse_int(value, source, line, key));
      if (cfg.instances < 1) fail(source, line, "props.instances must be >= 1");
    } else if (key == "props.m_list") {
      cfg.m_list.clear();
      for (double x : parse_double_list(value, source, line, key)) {
        if (x < 1 || x != static_cast<int>(x))
          fail(source, line, "props.m_list entries must be integers >= 1");
        cfg.m_list.push_back(static_cast<int>(x));
      }
      if (cfg.m_list.empty()) fail(source, line, "props.m_list must be non-empty");
    } else if (key == "props.seed") {
      cfg.seed = parse_u64(value, source, line, key);
    } else if (key == "props.slack") {
      cfg.slack = parse_double(value, source, line, key);
      if (!(cfg.slack > 0)) fail(source, line, "props.slack must be > 0");
    } else {
      fail(source, line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace drisim
