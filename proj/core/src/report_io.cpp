#include "drisim/report_io.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "drisim/common.hpp"
#include "drisim/config.hpp"

namespace drisim {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_for_write(const std::string& path, const char* what) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(std::string(what) + ": cannot write '" + path + "'");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path, const char* what) {
  out.flush();
  if (!out) throw std::runtime_error(std::string(what) + ": write failed for '" + path + "'");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void emit_csv(const SweepReport& report, const std::string& path) {
  std::ofstream out = open_for_write(path, "emit_csv");
  out << "curve,axis,axis_value,mean_rate_bps_hz,std_err,trials\n";
  const char* axis = axis_name(report.config.axis);
  for (const Curve& curve : report.curves) {
    for (const CurvePoint& pt : curve.points) {
      out << csv_quote(curve.label) << ',' << axis << ',' << fmt(pt.axis_value) << ','
          << fmt(pt.mean_rate) << ',' << fmt(pt.std_err) << ',' << report.config.trials
          << '\n';
    }
  }
  finish_write(out, path, "emit_csv");
}

void emit_plot_data(const SweepReport& report, const std::string& path) {
  std::ofstream out = open_for_write(path, "emit_plot_data");
  const char* axis = axis_name(report.config.axis);
  bool first = true;
  for (const Curve& curve : report.curves) {
    if (!first) out << '\n';
    first = false;
    out << "# curve: " << curve.label << '\n';
    out << "# scheme: " << scheme_name(curve.scheme) << '\n';
    if (curve.scheme == SchemeId::Enhanced && report.config.axis != SweepAxis::InrDb)
      out << "# inr_db: " << fmt(curve.inr_db) << '\n';
    out << "# columns: " << axis << " mean_rate_bps_hz std_err\n";
    for (const CurvePoint& pt : curve.points)
      out << fmt(pt.axis_value) << ' ' << fmt(pt.mean_rate) << ' ' << fmt(pt.std_err)
          << '\n';
  }
  finish_write(out, path, "emit_plot_data");
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json j;
  j["tool"] = manifest.tool;
  j["version"] = manifest.version;
  j["created_utc"] = manifest.created_utc;
  j["source"] = manifest.source;
  j["config"] = manifest.config_text;
  j["seed"] = manifest.seed;
  j["outputs"] = manifest.outputs;
  j["wall_seconds"] = manifest.wall_seconds;
  std::ofstream out = open_for_write(path, "write_manifest");
  out << j.dump(2) << '\n';
  finish_write(out, path, "write_manifest");
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_manifest: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  RunManifest m;
  m.tool = j.at("tool").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.created_utc = j.at("created_utc").get<std::string>();
  m.source = j.at("source").get<std::string>();
  m.config_text = j.at("config").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.wall_seconds = j.at("wall_seconds").get<double>();
  return m;
}

std::vector<std::string> write_run_outputs(const SweepReport& report,
                                           const std::string& out_dir,
                                           const std::string& name,
                                           bool with_csv, bool with_plot,
                                           const std::string& source) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::string base = (fs::path(out_dir) / name).string();

  std::vector<std::string> outputs;
  if (with_csv) {
    emit_csv(report, base + ".csv");
    outputs.push_back(base + ".csv");
  }
  if (with_plot) {
    emit_plot_data(report, base + ".plot.txt");
    outputs.push_back(base + ".plot.txt");
  }

  const std::string config_path = base + ".config";
  {
    std::ofstream out = open_for_write(config_path, "write_run_outputs");
    out << serialize_config(report.config);
    finish_write(out, config_path, "write_run_outputs");
  }
  outputs.push_back(config_path);

  RunManifest manifest;
  manifest.tool = kToolName;
  manifest.version = kToolVersion;
  manifest.created_utc = utc_now();
  manifest.source = source;
  manifest.config_text = serialize_config(report.config);
  manifest.seed = report.config.seed;
  manifest.outputs = outputs;
  manifest.wall_seconds = report.wall_seconds;
  write_manifest(manifest, base + ".manifest.json");
  outputs.push_back(base + ".manifest.json");
  return outputs;
}

}  // namespace drisim
