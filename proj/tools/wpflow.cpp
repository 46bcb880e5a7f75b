#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wpflow/commands.hpp"
#include "wpflow/config.hpp"
#include "wpflow/errors.hpp"
#include "wpflow/io.hpp"
#include "wpflow/verify.hpp"

using namespace wpflow;

namespace {

constexpr int kUsage = 2;

struct SpecSource {
  std::string preset;
  std::string config;
  std::vector<std::string> overrides;
  std::string out;

  void add_to(CLI::App* app) {
    auto* p = app->add_option("--preset", preset, "named preset (see `wpflow presets`)");
    auto* c = app->add_option("--config", config, "key = value configuration file");
    p->excludes(c);
    app->add_option("--set", overrides, "override one key, e.g. --set flow.kappa=8");
    app->add_option("--out", out, "output directory");
  }

  RunSpec resolve() const {
    if (preset.empty() && config.empty())
      throw ConfigError("one of --preset or --config is required", "preset");
    RunSpec spec = preset.empty() ? RunSpec::load(config) : wpflow::preset(preset);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw ConfigError("--set expects key=value, got '" + kv + "'", kv);
      spec.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!out.empty()) spec.output_dir = out;
    spec.validate();
    return spec;
  }
};

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static metric extensions of Bartnik data by a geometric curve flow"};
  app.require_subcommand(1);

  SpecSource run_src;
  auto* run_cmd = app.add_subcommand("run", "run one flow and write CSV artifacts");
  run_src.add_to(run_cmd);

  SpecSource sweep_src;
  std::string sweep_param, sweep_values;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* sweep_cmd = app.add_subcommand("sweep", "run one flow per parameter value");
  sweep_src.add_to(sweep_cmd);
  sweep_cmd->add_option("--param", sweep_param, "A, kappa, N or r_target")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
  sweep_cmd->add_option("--jobs", jobs, "concurrent runs");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run an oracle verification suite");
  verify_cmd->add_option("suite", suite, "spectral, ode, modes, masses or all");

  std::string bg_text = "euclidean", curve_text, frame_text = "wp", data_out;
  int data_n = 30;
  auto* make_cmd = app.add_subcommand("make-data", "write Bartnik data induced on a curve");
  make_cmd->add_option("--background", bg_text, "euclidean, schwarzschild:M, zv:M:delta, cc:M");
  make_cmd->add_option("--curve", curve_text, "circle:R or ellipse:rho:z")->required();
  make_cmd->add_option("--frame", frame_text, "wp or schwarzschild:M");
  make_cmd->add_option("-N", data_n, "collocation intervals");
  make_cmd->add_option("-o,--output", data_out, "output file")->required();

  std::string pin, pout;
  double A = 0.1, tau0 = 0.5, sigma = 0.125;
  bool squared = false;
  auto* perturb_cmd = app.add_subcommand("perturb", "perturb the Killing norm of Bartnik data");
  perturb_cmd->add_option("-i,--input", pin, "input Bartnik data file")->required();
  perturb_cmd->add_option("-o,--output", pout, "output file")->required();
  perturb_cmd->add_option("-A", A, "amplitude");
  perturb_cmd->add_option("--tau0", tau0, "centre as a fraction of L_bar");
  perturb_cmd->add_option("--sigma", sigma, "width as a fraction of L_bar");
  perturb_cmd->add_flag("--squared", squared, "use exp(-x^2) instead of exp(-x)");

  std::string show;
  auto* presets_cmd = app.add_subcommand("presets", "list presets or print one");
  presets_cmd->add_option("name", show, "preset to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run_cmd) {
      const RunSpec spec = run_src.resolve();
      const RunOutcome o = run_and_write(spec);
      const FlowTrajectory& tr = o.trajectory;
      const FlowSample& f = tr.final_sample;
      std::cout << "status " << to_string(tr.status) << "\n"
                << tr.message << "\n"
                << std::setprecision(10) << "steps " << tr.steps << "  t " << f.t << "  L " << f.L
                << "  m_adm " << f.masses.m_adm << "  m_hawking " << f.masses.m_hawking
                << "  m_pn " << f.masses.m_pn << "\n"
                << "artifacts in " << spec.output_dir << "\n";
      for (const auto& l : tr.log) std::cout << l << "\n";
      return o.exit_code;
    }
    if (*sweep_cmd) {
      const RunSpec base = sweep_src.resolve();
      const std::vector<double> values = parse_values(sweep_values);
      const auto rows = run_sweep(base, sweep_param, values, base.output_dir, jobs);
      std::cout << std::setprecision(10);
      for (const auto& r : rows)
        std::cout << sweep_param << "=" << r.value << "  " << r.status << "  m_adm " << r.m_adm
                  << "  m_hawking " << r.m_hawking << "  m_pn " << r.m_pn << "\n";
      std::cout << "summary in " << base.output_dir << "/summary.csv\n";
      return 0;
    }
    if (*verify_cmd) {
      std::vector<std::string> suites =
          suite == "all" ? verify_suites() : std::vector<std::string>{suite};
      bool all = true;
      for (const auto& s : suites) {
        for (const VerifyResult& r : run_verify(s)) {
          all = all && r.pass;
          std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " value=" << r.value
                    << " tol=" << r.tolerance;
          if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
          std::cout << "\n";
        }
      }
      return all ? 0 : 1;
    }
    if (*make_cmd) {
      const auto bg = BackgroundMetric::parse(bg_text);
      const CurveSpec cs = CurveSpec::parse(curve_text, frame_text);
      write_bartnik(data_out, induced_data(cs, bg, data_n));
      return 0;
    }
    if (*perturb_cmd) {
      const BartnikData d = read_bartnik(pin);
      write_bartnik(pout, perturb_bartnik(d, A, tau0 * d.L_bar(), sigma * d.L_bar(), squared));
      return 0;
    }
    if (*presets_cmd) {
      if (show.empty()) {
        for (const auto& n : preset_names()) std::cout << n << "\n";
      } else {
        std::cout << preset(show).to_text();
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
