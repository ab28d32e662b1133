// bcher: run verification checks from JSON configurations.
//
//   bcher verify <config.json> [--out report.json] [--no-timing]
//   bcher suite paper [--out dir] [--no-timing]
//   bcher blocks --q <file>
//   bcher group --spec <file> [--enumerate]
//
// Exit status: 0 when every check passes, 1 when a check fails or errors, 2 on invalid input.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bcher/bcher.hpp"

namespace fs = std::filesystem;
using namespace bcher;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path, std::string("invalid JSON: ") + e.what());
  }
}

std::string status_line(const Report& r, const std::string& name) {
  std::ostringstream os;
  std::string tag = r.status;
  std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
  os << tag << "  " << name << "  (" << r.check << ")";
  if (r.status == "error" && r.details.contains("error")) os << "  " << r.details["error"].get<std::string>();
  return os.str();
}

// A config file holds one check object or an array of them.
std::vector<json> configs_in(const json& doc) {
  if (doc.is_array()) return std::vector<json>(doc.begin(), doc.end());
  return {doc};
}

int cmd_verify(const std::string& path, const std::string& out, bool timing) {
  const json doc = read_json(path);
  std::vector<Report> reports;
  for (const auto& c : configs_in(doc)) reports.push_back(run_check(c));
  json j;
  if (reports.size() == 1) {
    j = report_to_json(reports[0], timing);
  } else {
    j = json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r, timing));
  }
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw IOError("cannot open " + out + " for writing");
    f << j.dump(2) << "\n";
    for (const auto& r : reports) std::cerr << status_line(r, path) << "\n";
  }
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); }) ? 0 : 1;
}

fs::path suite_dir(const std::string& name) {
  fs::path p(name);
  if (fs::is_directory(p)) return p;
  for (const fs::path& base : {fs::path(BCHER_DATA_DIR), fs::path("tools/configs")}) {
    if (fs::is_directory(base / (name + "-suite"))) return base / (name + "-suite");
    if (fs::is_directory(base / name)) return base / name;
  }
  throw IOError("no suite named " + name);
}

int cmd_suite(const std::string& name, const std::string& out, bool timing) {
  const fs::path dir = suite_dir(name);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (!out.empty()) fs::create_directories(out);
  std::size_t passed = 0, total = 0;
  for (const auto& file : files) {
    const json doc = read_json(file.string());
    const auto cfgs = configs_in(doc);
    for (std::size_t k = 0; k < cfgs.size(); ++k) {
      Report r;
      try {
        r = run_check(cfgs[k]);
      } catch (const ConfigError& e) {
        r.check = cfgs[k].value("check", std::string("?"));
        r.params = cfgs[k];
        r.details["error"] = e.what();
      }
      std::string label = file.stem().string() + (cfgs.size() > 1 ? "#" + std::to_string(k + 1) : "");
      std::cout << status_line(r, label) << std::endl;
      ++total;
      passed += r.passed();
      if (!out.empty()) emit_report(r, (fs::path(out) / (label + ".report.json")).string(), timing);
    }
  }
  std::cout << passed << "/" << total << " checks passed\n";
  return passed == total ? 0 : 1;
}

int cmd_blocks(const std::string& path) {
  const json doc = read_json(path);
  Cfg c(doc);
  FieldPtr f = checks::ambient(c);
  QMatrixPtr q = doc.is_object() && doc.contains("Q") ? checks::q_of(c, f) : qmatrix_from_json(c, f);
  std::cout << checks::blocks_json(block_structure(*q)).dump(2) << "\n";
  return 0;
}

int cmd_group(const std::string& path, bool enumerate) {
  const json doc = read_json(path);
  Cfg c(doc);
  FieldPtr f = checks::ambient(c);
  Group g = group_from_json(c.has("group") ? c.at("group") : c, f);
  json out{{"order", g.size()}, {"rank", g.rank()}, {"generators", json::array()}};
  for (const auto& w : g.generators()) out["generators"].push_back(w.str());
  if (enumerate) {
    out["elements"] = json::array();
    for (const auto& w : g.elements()) out["elements"].push_back(w.str());
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for braided Dunkl operators and Cherednik-type algebras", "bcher"};
  app.set_version_flag("--version", std::string(BCHER_VERSION));
  app.require_subcommand(1);

  std::string config, out, suite, qfile, spec;
  bool no_timing = false, enumerate = false;

  auto* verify = app.add_subcommand("verify", "Run the checks in a configuration file");
  verify->add_option("config", config, "Configuration (one check object or an array)")->required();
  verify->add_option("--out", out, "Write the report here instead of stdout");
  verify->add_flag("--no-timing", no_timing, "Omit duration_ms so reports are byte-stable");

  auto* suite_cmd = app.add_subcommand("suite", "Run every configuration of a bundled suite");
  suite_cmd->add_option("name", suite, "Suite name (paper, controls) or directory")->required();
  suite_cmd->add_option("--out", out, "Directory for one report per check");
  suite_cmd->add_flag("--no-timing", no_timing, "Omit duration_ms so reports are byte-stable");

  auto* blocks = app.add_subcommand("blocks", "Print the block decomposition of a q-matrix");
  blocks->add_option("--q", qfile, "JSON file with the q-matrix")->required();

  auto* group = app.add_subcommand("group", "Generate a group from a specification");
  group->add_option("--spec", spec, "JSON group specification")->required();
  group->add_flag("--enumerate", enumerate, "List all elements");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(config, out, !no_timing);
    if (*suite_cmd) return cmd_suite(suite, out, !no_timing);
    if (*blocks) return cmd_blocks(qfile);
    if (*group) return cmd_group(spec, enumerate);
  } catch (const ConfigError& e) {
    std::cerr << "config error at " << e.what() << "\n";
    return 2;
  } catch (const IOError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
