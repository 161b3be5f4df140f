#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logfit/report.hpp"

namespace fs = std::filesystem;
using namespace logfit;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_file(const fs::path& path, const CommandRequest& req, const RunOptions& opt) {
  try {
    return run_command(req, parse_problem(read_file(path)), opt);
  } catch (const parse_error& e) {
    Report r;
    r.status = ExitStatus::input_error;
    r.data["command"] = req.name;
    r.data["error"] = path.filename().string() + ":" + e.what();
    r.line("error: " + path.filename().string() + ":" + e.what());
    return r;
  } catch (const error& e) {
    Report r;
    r.status = ExitStatus::input_error;
    r.data["command"] = req.name;
    r.data["error"] = e.what();
    r.line(std::string("error: ") + e.what());
    return r;
  }
}

std::optional<RationalPoint> parse_point_option(const std::string& text) {
  if (text.empty()) return std::nullopt;
  RationalPoint a;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto q = parse_rational(piece);
    if (!q) throw CLI::ValidationError("--at", "invalid rational '" + piece + "'");
    a.coords.push_back(*q);
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logarithmic Fitting ideals, preparation tests and monomialisation of morphisms of pairs"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  RunOptions opt;
  app.add_flag("--json", json, "JSON output");
  app.add_option("--max-depth", opt.max_depth, "Blowup depth cap")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for point sampling")->capture_default_str();

  std::string file, at, corpus_dir, corpus_command = "classify";
  std::size_t k = 0;
  std::vector<std::string> center;
  CommandRequest req;

  auto with_file = [&](CLI::App* sub) { sub->add_option("file", file, "Problem file")->required()->check(CLI::ExistingFile); };
  auto with_at = [&](CLI::App* sub) { sub->add_option("--at", at, "Point, comma separated rationals"); };

  auto* fitting = app.add_subcommand("fitting", "Log-Fitting ideal of pulled-back log k-forms");
  fitting->add_option("--k", k, "Form degree")->required();
  with_file(fitting);
  for (const char* name : {"logrank", "rank", "classify", "lradapted", "verify-monomial"}) {
    auto* sub = app.add_subcommand(name);
    with_at(sub);
    with_file(sub);
  }
  app.get_subcommand("logrank")->description("Rank of the log Jacobian at a point");
  app.get_subcommand("rank")->description("Rank of the Jacobian at a point");
  app.get_subcommand("classify")->description("Quasi-prepared, strongly prepared and monomial tests");
  app.get_subcommand("lradapted")->description("Log-rank adapted check for the supplied filtration and target ideal");
  app.get_subcommand("verify-monomial")->description("Monomial morphism test with exponent matrix");
  for (const char* name : {"grk", "imagedim", "quasiprepared", "principalize", "monomialize"}) with_file(app.add_subcommand(name));
  app.get_subcommand("grk")->description("Geometric rank");
  app.get_subcommand("imagedim")->description("Dimension of the closure of the image");
  app.get_subcommand("quasiprepared")->description("Quasi-preparedness with diagnostics");
  app.get_subcommand("principalize")->description("Principalize the top log-Fitting ideal by coordinate blowups");
  app.get_subcommand("monomialize")->description("Monomialisation driver for monomial morphisms onto surfaces");
  auto* blowup = app.add_subcommand("blowup", "Charts of a coordinate blowup and the transformed morphism");
  blowup->add_option("--center", center, "Center variables")->required()->delimiter(',');
  with_file(blowup);
  auto* corpus = app.add_subcommand("corpus", "Run a command on every .lf file of a directory");
  corpus->add_option("dir", corpus_dir, "Directory")->required()->check(CLI::ExistingDirectory);
  corpus->add_option("--command", corpus_command, "Command to run")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitStatus::input_error);
  }

  auto* sub = app.get_subcommands().front();
  try {
    req.at = parse_point_option(at);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(ExitStatus::input_error);
  }

  if (sub == corpus) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".lf") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    CommandRequest creq{corpus_command, std::nullopt, std::nullopt, {}};
    std::vector<std::future<Report>> jobs;
    for (const auto& f : files) jobs.push_back(std::async(std::launch::async, run_file, f, creq, opt));
    int worst = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      auto r = jobs[i].get();
      if (!json) std::cout << "== " << files[i].filename().string() << "\n";
      else r.data["file"] = files[i].filename().string();
      std::cout << r.render(json);
      worst = std::max(worst, static_cast<int>(r.status));
    }
    return worst;
  }

  req.name = sub->get_name();
  if (sub == fitting) req.k = k;
  req.center = center;
  auto report = run_file(file, req, opt);
  std::cout << report.render(json);
  return static_cast<int>(report.status);
}
