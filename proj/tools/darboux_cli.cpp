#include <darboux/scene.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Options {
  std::string scene;
  std::vector<std::string> families;
  std::vector<std::string> constants;
  std::string grid;
  double tol = 0.0;
  std::string out;
  std::vector<std::string> formats;
  bool report_only = false;
};

void addSceneOptions(CLI::App* cmd, Options& o) {
  cmd->add_option("--scene", o.scene, "built-in scene name or path to a JSON scene")->required();
  cmd->add_option("--family", o.families, "families to construct (hcc1..icc3), comma separated")->delimiter(',');
  cmd->add_option("--const", o.constants, "family constant name=value (repeatable)");
  cmd->add_option("--grid", o.grid, "grid override s0:s1:n");
  cmd->add_option("--tol", o.tol, "relative constancy tolerance");
  cmd->add_option("--out", o.out, "output directory for exports");
  cmd->add_option("--format", o.formats, "export formats: csv, obj, json (comma separated)")->delimiter(',');
  cmd->add_flag("--report-only", o.report_only, "report failed verdicts without a failing exit status");
}

darboux::SceneConfig configure(const Options& o) {
  darboux::SceneConfig cfg = darboux::loadScene(o.scene);
  if (!o.families.empty()) {
    cfg.families.clear();
    for (const auto& f : o.families) cfg.families.push_back(darboux::parseFamily(f));
  }
  for (const auto& c : o.constants) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) darboux::fail(darboux::ErrorKind::config, "--const expects name=value, got '" + c + "'");
    double value = 0.0;
    try {
      value = darboux::evaluate_constant(darboux::parse(c.substr(eq + 1)));
    } catch (const darboux::Error& e) {
      darboux::fail(darboux::ErrorKind::config, "--const " + c + ": " + e.what());
    }
    cfg.constants.set(c.substr(0, eq), value);
  }
  if (!o.grid.empty()) cfg.grid = darboux::GridSpec::parse(o.grid);
  if (o.tol != 0.0) {
    if (!(o.tol > 0.0)) darboux::fail(darboux::ErrorKind::config, "--tol must be positive");
    cfg.rel_tol = o.tol;
  }
  return cfg;
}

int runCommand(const std::string& name, const Options& o) {
  using darboux::Stage;
  std::optional<darboux::SceneConfig> cfg;
  try {
    cfg = configure(o);
  } catch (const darboux::Error& e) {
    std::cerr << "error: config: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return darboux::exitCodeFor(e.kind());
  }

  darboux::RunOptions opt;
  opt.report_only = o.report_only;
  opt.out_dir = o.out;
  if (!o.formats.empty()) opt.formats = o.formats;
  if (name == "validate") opt.last = Stage::validate;
  else if (name == "frames") opt.last = Stage::frames;
  else if (name == "classify") opt.last = Stage::classify;
  else if (name == "associate" || name == "export") opt.last = Stage::construct;
  else opt.last = Stage::verify;
  if (name == "frames") opt.formats = std::vector<std::string>{"csv"};
  opt.export_frames = name == "frames" || name == "export" || name == "run";

  darboux::RunResult r;
  try {
    r = darboux::runScene(*cfg, opt);
  } catch (const darboux::Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return darboux::exitCodeFor(e.kind());
  }

  if (name == "frames" && o.out.empty() && !r.exports.empty()) std::cout << r.exports.front().payload;
  else std::cout << r.report;
  if (!r.error.empty()) std::cerr << "error: " << r.error << '\n';
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Darboux frames, surface-curve classification and associated helices"};
  app.require_subcommand(1);

  Options o;
  app.add_subcommand("list-builtins", "list built-in scenes");
  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check unit speed and normality of the scene curve"},
      {"frames", "compute the Darboux frame and curvatures"},
      {"classify", "classify the base curve"},
      {"associate", "construct the requested associated curves"},
      {"verify", "construct and certify the associated curves as general helices"},
      {"export", "construct and write CSV/OBJ/JSON exports"},
      {"run", "full pipeline: validate, frames, classify, construct, verify, export"},
  };
  for (const auto& [name, help] : commands) addSceneOptions(app.add_subcommand(name, help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return darboux::exit_code::config;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  if (cmd->get_name() == "list-builtins") {
    for (const auto& line : darboux::listBuiltins()) std::cout << line << '\n';
    return darboux::exit_code::ok;
  }
  if (cmd->get_name() == "export" && o.out.empty()) {
    std::cerr << "error: config: export needs --out\n";
    return darboux::exit_code::config;
  }
  return runCommand(cmd->get_name(), o);
}
