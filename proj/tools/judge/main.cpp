#include <algorithm>
#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "judge/backend/backend.hpp"
#include "judge/backend/errors.hpp"
#include "judge/model/bundle.hpp"
#include "judge/runner/assist.hpp"
#include "judge/runner/config.hpp"
#include "judge/runner/discovery.hpp"
#include "judge/runner/evaluation.hpp"

namespace {

struct BackendFlags {
  std::string kind = "mock";
  std::string model;
  std::string base_url;
  int max_retries = 2;
  int timeout_seconds = 60;
  int budget = 4;
  std::string mock_rules;
  std::string replay;
  std::string record;

  void add_to(CLI::App& app) {
    app.add_option("--backend", kind, "Judge backend")->check(CLI::IsMember({"http", "mock"}));
    app.add_option("--model", model, "Judge model name (http backend)");
    app.add_option("--base-url", base_url, "Chat-completions endpoint base URL; defaults to $JUDGE_BASE_URL");
    app.add_option("--max-retries", max_retries, "Corrective retries per call")->check(CLI::NonNegativeNumber);
    app.add_option("--timeout", timeout_seconds, "Per-request timeout in seconds")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget, "Maximum in-flight backend requests")->check(CLI::PositiveNumber);
    app.add_option("--mock-rules", mock_rules, "JSON rule table for the mock backend")->check(CLI::ExistingFile);
    app.add_option("--replay-cassette", replay, "Serve http requests from a recorded cassette")
        ->check(CLI::ExistingFile);
    app.add_option("--record-cassette", record, "Append live http exchanges to a cassette");
  }

  judge::backend::BackendConfig config() const {
    judge::backend::BackendConfig c;
    c.kind = *judge::backend::parse_backend_kind(kind);
    c.model_name = model;
    c.base_url = base_url;
    c.max_retries = max_retries;
    c.request_timeout = std::chrono::seconds(timeout_seconds);
    c.concurrency_budget = budget;
    if (!mock_rules.empty()) {
      std::ifstream in(mock_rules);
      c.mock_rules = judge::backend::MockRuleTable::from_json(nlohmann::json::parse(in));
    } else if (c.kind == judge::backend::BackendKind::Mock) {
      c.mock_rules = judge::backend::MockRuleTable::defaults();
    }
    if (!replay.empty()) c.replay_cassette = replay;
    if (!record.empty()) c.record_cassette = record;
    c.apply_environment();
    return c;
  }
};

void print_problems(const std::vector<judge::runner::BundleProblem>& problems) {
  for (const auto& p : problems) {
    for (const auto& v : p.violations) {
      std::cerr << "invalid: " << p.bundle.string() << " " << v.path << " [" << judge::model::to_string(v.code)
                << "] " << v.message << '\n';
    }
  }
}

judge::runner::AssistServer* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stage-wise judge for GUI testing agent trajectories"};
  app.set_version_flag("--version", std::string(judge::runner::version()));
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Judge every trajectory run and write reports");
  judge::runner::RunConfig rc;
  BackendFlags run_backend;
  std::string cases, trajectories, out, k_list = "1,3", consistency = "deterministic", routing = "by_case";
  bool ablate_retrieval = false, unified = false, macro = false, strict_mode = false;
  run->add_option("--cases", cases, "Case directory")->required();
  run->add_option("--trajectories", trajectories, "Trajectory directory")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--k", k_list, "Comma-separated Pass@k values");
  run->add_option("--consistency", consistency, "Report consistency check")
      ->check(CLI::IsMember({"deterministic", "model"}));
  run->add_option("--window", rc.judge.consistency.window, "Step tolerance for deterministic consistency");
  run->add_flag("--strict-fault-mode", strict_mode, "Require verified fault modes to match the case");
  run->add_option("--routing", routing, "Verifier routing")->check(CLI::IsMember({"by_case", "run_both"}));
  run->add_flag("--ablate-retrieval", ablate_retrieval, "Judge the whole trajectory as one segment");
  run->add_flag("--unified-verifier", unified, "Use the merged verifier prompt");
  run->add_flag("--macro", macro, "Macro-average aggregate columns");
  run->add_option("--concurrency", rc.concurrency, "Worker threads")->check(CLI::PositiveNumber);
  run->add_option("--display-fan-out", rc.judge.display_fan_out, "Concurrent display checks per run")
      ->check(CLI::PositiveNumber);
  run->add_option("--model-glob", rc.filters.model_glob, "Only agent models matching the glob");
  run->add_option("--case-glob", rc.filters.case_glob, "Only cases matching the glob");
  run->add_option("--fault-mode-glob", rc.filters.fault_mode_glob, "Only fault modes matching the glob");
  run->add_option("--seed", rc.seed, "Reserved");
  run->add_flag("--strict", rc.strict, "Exit nonzero when any run is unscored");
  run_backend.add_to(*run);

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the verifiers over HTTP");
  BackendFlags serve_backend;
  std::string host = "127.0.0.1";
  int port = 8080;
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_backend.add_to(*serve);

  // validate
  auto* validate = app.add_subcommand("validate", "Check case and trajectory bundles");
  std::string v_cases, v_trajectories;
  validate->add_option("--cases", v_cases, "Case directory")->required()->check(CLI::ExistingDirectory);
  validate->add_option("--trajectories", v_trajectories, "Trajectory directory")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      rc.cases_dir = cases;
      rc.trajectories_dir = trajectories;
      rc.output_dir = out;
      rc.k_values = judge::runner::parse_k_list(k_list);
      rc.judge.consistency.mode = *judge::verify::parse_consistency_mode(consistency);
      rc.judge.consistency.strict_fault_mode = strict_mode;
      rc.judge.routing =
          routing == "run_both" ? judge::verify::VerifierRouting::RunBoth : judge::verify::VerifierRouting::ByCase;
      rc.judge.no_retrieval = ablate_retrieval;
      rc.judge.unified_verifier = unified;
      rc.averaging = macro ? judge::metrics::Averaging::Macro : judge::metrics::Averaging::Micro;
      rc.backend = run_backend.config();

      const auto summary = judge::runner::run_evaluation(rc);
      for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
      print_problems(summary.problems);
      std::size_t unscored = 0;
      for (const auto& o : summary.outcomes) unscored += o.scored() ? 0 : 1;
      std::cout << "judged " << summary.outcomes.size() << " runs (" << unscored << " unscored, "
                << summary.problems.size() << " invalid bundles); reports in " << rc.output_dir.string() << '\n';
      return summary.exit_code;
    }

    if (*serve) {
      auto backend = judge::backend::make_backend(serve_backend.config());
      judge::runner::AssistServer server(*backend);
      const int bound = server.bind(host, port);
      if (bound <= 0) {
        std::cerr << "cannot bind " << host << ":" << port << '\n';
        return judge::runner::kExitConfig;
      }
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << bound << " (backend " << backend->kind() << ")"
                << std::endl;
      server.serve();
      g_server = nullptr;
      return judge::runner::kExitOk;
    }

    if (*validate) {
      std::vector<judge::runner::BundleProblem> problems;
      std::vector<judge::model::EvaluationCase> loaded;
      try {
        loaded = judge::model::load_cases(v_cases);
      } catch (const judge::model::ValidationError& e) {
        problems.push_back({e.bundle(), e.violations()});
      }
      std::size_t runs = 0;
      if (!v_trajectories.empty() && problems.empty()) {
        for (const auto& loc : judge::runner::discover_runs(v_trajectories)) {
          ++runs;
          const auto it = std::find_if(loaded.begin(), loaded.end(),
                                       [&](const auto& ec) { return ec.case_id == loc.case_id; });
          if (it == loaded.end()) {
            problems.push_back({loc.path,
                                {{judge::model::ViolationCode::CaseMismatch, "/", "no case named '" + loc.case_id + "'"}}});
            continue;
          }
          try {
            judge::model::validate_trajectory(loc.path, *it);
          } catch (const judge::model::ValidationError& e) {
            problems.push_back({e.bundle(), e.violations()});
          }
        }
      }
      print_problems(problems);
      std::cout << loaded.size() << " cases, " << runs << " runs, " << problems.size() << " invalid bundles\n";
      return problems.empty() ? judge::runner::kExitOk : judge::runner::kExitValidation;
    }
  } catch (const judge::backend::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return judge::runner::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return judge::runner::kExitConfig;
  }
  return judge::runner::kExitOk;
}
