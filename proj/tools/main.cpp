#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "cauchylab/config.hpp"
#include "cauchylab/experiments.hpp"
#include "cauchylab/report.hpp"

namespace {

struct VerbOptions {
  std::string kind;
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  bool plot = false;
  bool log_scale = false;
};

int run_verb(const VerbOptions& opt) {
  using namespace cauchylab;
  Config config = opt.config_path.empty()
                      ? Config::parse_string(default_config_text(opt.kind),
                                             "<builtin " + opt.kind + ">")
                      : Config::parse_file(opt.config_path);
  std::string kind = config.text_or("kind", opt.kind);
  if (kind != opt.kind)
    throw std::runtime_error("config kind '" + kind +
                             "' does not match the requested command '" + opt.kind + "'");

  std::optional<std::uint64_t> seed;
  if (opt.seed >= 0) seed = static_cast<std::uint64_t>(opt.seed);
  Report report = run_experiment(config, seed);

  std::filesystem::path out = opt.out_dir.empty()
                                  ? std::filesystem::path("out-" + opt.kind)
                                  : std::filesystem::path(opt.out_dir);
  write_report(report, out, opt.plot, opt.log_scale);

  int failures = 0;
  for (const auto& a : report.assertions) {
    if (!a.pass) {
      ++failures;
      std::cout << "FAIL  " << a.name << "  lhs=" << a.lhs << " rhs=" << a.rhs
                << " slack=" << a.slack << "\n";
    }
  }
  std::cout << (failures == 0 ? "PASS" : "FAIL") << "  " << report.kind
            << "  (" << report.assertions.size() << " assertions, seed "
            << report.seed << ")  ->  " << out.string() << "\n";
  return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cauchylab: Cauchy data spaces and orthogonalized Calderon "
               "projections for parameter families of elliptic problems"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> verbs[] = {
      {"verify", "verify-all"},
      {"sweep-1d", "sweep-1d"},
      {"disk-crossing", "disk-crossing"},
      {"subspace-lab", "subspace-random"},
      {"scale-lab", "scale-random"},
  };

  std::vector<std::shared_ptr<VerbOptions>> options;
  for (const auto& [name, kind] : verbs) {
    auto opt = std::make_shared<VerbOptions>();
    opt->kind = kind;
    CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " experiment");
    sub->add_option("--config", opt->config_path, "experiment config file");
    sub->add_option("--out", opt->out_dir, "output directory");
    sub->add_option("--seed", opt->seed, "seed override");
    sub->add_flag("--plot", opt->plot, "emit SVG plots");
    sub->add_flag("--log-scale", opt->log_scale, "log-scale plot ordinates");
    options.push_back(opt);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < options.size(); ++i)
      if (app.get_subcommands().at(0)->get_name() == verbs[i].first)
        return run_verb(*options[i]);
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
