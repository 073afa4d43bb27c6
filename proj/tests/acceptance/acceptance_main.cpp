#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <httplib.h>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "builders.hpp"
#include "fakes.hpp"
#include "fuzz.hpp"
#include "judge/backend/backend.hpp"
#include "judge/backend/errors.hpp"
#include "judge/backend/prompts.hpp"
#include "judge/backend/schemas.hpp"
#include "judge/backend/structured.hpp"
#include "judge/metrics/report.hpp"
#include "judge/retrieval/retriever.hpp"
#include "judge/runner/assist.hpp"
#include "judge/runner/evaluation.hpp"
#include "oracles.hpp"

using namespace judge;
using judge::testing::golden_dir;
using judge::testing::read_text;
using judge::testing::TempDir;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

runner::RunConfig golden_config(const fs::path& out) {
  runner::RunConfig config;
  config.cases_dir = golden_dir() / "cases";
  config.trajectories_dir = golden_dir() / "trajectories";
  config.output_dir = out;
  config.backend.mock_rules = backend::MockRuleTable::defaults();
  return config;
}

Outcome retrieval_oracle() {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::size_t> length(0, 50);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int trials = 10000;
  int mismatches = 0;
  const auto start = Clock::now();
  for (int trial = 0; trial < trials; ++trial) {
    const std::size_t n = length(rng);
    const double p_pre = unit(rng), p_ev = unit(rng);
    std::vector<judge::testing::StepFlags> flags(n);
    for (auto& f : flags) {
      f.precondition = unit(rng) < p_pre;
      f.evidence = unit(rng) < p_ev;
    }
    auto t = judge::testing::trajectory_from_posts(std::vector<std::string>(n, "s"));
    judge::testing::FlagMatcher matcher(flags);
    const auto r = retrieval::retrieve_segments(t, model::TestBasis{}, matcher);
    if (r.segments != judge::testing::brute_force_segments(flags) ||
        r.reach != judge::testing::brute_force_reach(flags)) {
      ++mismatches;
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 10.0, std::to_string(trials) + " sequences, " + std::to_string(mismatches) +
                                                 " mismatches, " + std::to_string(elapsed) + " s"};
}

Outcome verdict_fuzz() {
  std::mt19937_64 rng(2);
  backend::MockBackend mock;
  const int configurations = 5000;
  int violations = 0;
  for (int i = 0; i < configurations; ++i) {
    auto s = judge::testing::random_scenario(rng);
    auto outcome = verify::judge_trajectory(s.ec, s.ec.tasks.front(), s.trajectory, mock, s.options);
    const auto* v = std::get_if<model::Verdict>(&outcome);
    if (v == nullptr) {
      ++violations;
      continue;
    }
    const bool display = s.ec.defect_class() == model::DefectClass::Display;
    if (v->detect() && !v->reach()) ++violations;
    if (!display && v->detect() && v->trigger() != model::Trigger::True) ++violations;
    if (display && v->trigger() != model::Trigger::NotApplicable) ++violations;
  }
  return {violations == 0, std::to_string(configurations) + " configurations, " + std::to_string(violations) +
                               " violations"};
}

Outcome golden_report() {
  TempDir dir;
  const auto summary = runner::run_evaluation(golden_config(dir.path()));
  const bool same = read_text(dir.path() / "report.json") == read_text(golden_dir() / "expected" / "report.json");
  return {summary.exit_code == runner::kExitOk && same,
          std::to_string(summary.outcomes.size()) + " runs, report " + (same ? "byte-identical" : "differs")};
}

Outcome metric_arithmetic() {
  std::size_t triples = 0, arithmetic = 0, bounds = 0;
  for (std::size_t tp = 0; tp <= 40; ++tp) {
    for (std::size_t fp = 0; fp <= 40; ++fp) {
      for (std::size_t fn = 0; fn <= 40; ++fn) {
        ++triples;
        const auto s = metrics::recall_f1({tp, fp, fn});
        const auto o = judge::testing::spreadsheet_scores(tp, fp, fn);
        if (std::abs(s.recall - o.recall) > 1e-12 || std::abs(s.precision - o.precision) > 1e-12 ||
            std::abs(s.f1 - o.f1) > 1e-12) {
          ++arithmetic;
        }
        if (s.f1 > std::max(s.recall, s.precision) + 1e-12 || s.f1 < std::min(s.recall, s.precision) - 1e-12) {
          ++bounds;
        }
      }
    }
  }
  std::mt19937_64 rng(4);
  metrics::ReportConfig config;
  config.k_values = {1, 2, 3, 4};
  const int sets = 1000;
  std::size_t monotonicity = 0;
  for (int i = 0; i < sets; ++i) {
    const auto runs = judge::testing::random_outcomes(rng);
    for (const auto& m : metrics::aggregate_report(runs, config).models) {
      for (std::size_t b = 1; b < m.pass_at.size(); ++b) {
        for (auto stage : metrics::kAllStages) {
          for (auto column : metrics::kAllColumns) {
            const auto& prev = m.pass_at[b - 1].at(stage).at(column).counts;
            const auto& cur = m.pass_at[b].at(stage).at(column).counts;
            if (cur.tp < prev.tp || cur.fn > prev.fn) ++monotonicity;
          }
        }
      }
    }
  }
  return {arithmetic == 0 && bounds == 0 && monotonicity == 0,
          std::to_string(triples) + " triples (" + std::to_string(arithmetic) + " off, " + std::to_string(bounds) +
              " bound breaks), " + std::to_string(sets) + " outcome sets (" + std::to_string(monotonicity) +
              " Pass@k regressions)"};
}

Outcome display_trigger_inheritance() {
  TempDir dir;
  const auto summary = runner::run_evaluation(golden_config(dir.path()));
  std::size_t compared = 0, differing = 0;
  for (const auto& m : summary.report.models) {
    for (const auto& block : m.pass_at) {
      for (auto column : {metrics::Column::CR, metrics::Column::EL, metrics::Column::Display}) {
        ++compared;
        if (block.at(metrics::Stage::Trigger).at(column).counts != block.at(metrics::Stage::Reach).at(column).counts) {
          ++differing;
        }
      }
    }
  }
  return {compared > 0 && differing == 0,
          std::to_string(compared) + " display cells, " + std::to_string(differing) + " differ"};
}

std::string all_text(const backend::MessageSequence& messages) {
  std::string out;
  for (const auto& m : messages) out += m.text() + "\n";
  return out;
}

Outcome prompt_fidelity() {
  using namespace backend;
  model::Observation obs;
  obs.step = 2;
  obs.text = "settings";
  obs.image.inline_bytes = judge::testing::fake_png(2);
  auto t = judge::testing::trajectory_from_posts({"home", "search", "search"});
  auto transitions = verify::transitions_of(t, {1, 3});
  model::NavigationTask task{"t1", "Search", "launcher"};
  model::TestBasis basis{"home", "tap", "results", {}};

  std::vector<std::string> missing;
  if (all_text(render_prompt(TemplateId::Retrieval, retrieval_context(obs, "Settings"))).find("Page Key Point") ==
      std::string::npos) {
    missing.push_back("retrieval");
  }
  if (all_text(render_prompt(TemplateId::Display, display_context(obs))).find("Display Defects Detector") ==
      std::string::npos) {
    missing.push_back("display");
  }
  if (all_text(render_prompt(TemplateId::Interaction, interaction_context(task, basis, transitions, transitions[1])))
          .find("Judge only the current step") == std::string::npos) {
    missing.push_back("interaction");
  }

  const json match = {{"matched", true}, {"reason", "settings visible"}};
  const json display = {{"has_defect", true},
                        {"defects",
                         {{{"type", "DD.ElementLayout"},
                           {"evidence", {"icons overlap"}},
                           {"location_hint", "toolbar"},
                           {"reason", "overlap"}}}}};
  const json interaction = {
      {"has_defect", true},
      {"defect", {{"type", "ID.OperationNoResponse"}, {"step", 4}, {"reason", "no change"}, {"effect", "none"}}}};
  const json consistency = {{"consistent", true}, {"reason", "same step"}};
  int round_trips = 0;
  round_trips += to_json_value(parse_match(match)) == match;
  round_trips += to_json_value(parse_display(display)) == display;
  round_trips += to_json_value(parse_interaction(interaction)) == interaction;
  round_trips += to_json_value(parse_consistency(consistency)) == consistency;
  std::string detail = "anchors missing: " + std::to_string(missing.size()) + ", schema round trips " +
                       std::to_string(round_trips) + "/4";
  return {missing.empty() && round_trips == 4, detail};
}

Outcome repair_ladder() {
  using judge::testing::ScriptedTransport;
  const std::string good = R"({"matched": true, "reason": "settings visible"})";
  const backend::MessageSequence prompt = {
      backend::Message{backend::Role::System, {backend::ContentPart::make_text("system")}},
      backend::Message{backend::Role::User, {backend::ContentPart::make_text("user")}}};
  const int retries = 2;
  auto attempt = [&](const std::string& reply, std::size_t& calls) {
    ScriptedTransport transport({ScriptedTransport::reply(reply)});
    std::string result;
    try {
      backend::complete_structured(prompt, backend::SchemaId::Match, {"judge-model", retries}, transport);
      result = "parse";
    } catch (const backend::BackendFailure&) {
      result = "BackendFailure";
    }
    calls = transport.calls();
    return result;
  };
  std::size_t c1 = 0, c2 = 0, c3 = 0;
  const auto fenced = attempt("```json\n" + good + "\n```", c1);
  const auto prose = attempt("Sure. " + good + " Let me know.", c2);
  const auto garbage = attempt("I cannot help with that.", c3);
  const std::size_t budget = 1 + retries;
  const bool pass = fenced == "parse" && prose == "parse" && garbage == "BackendFailure" && c1 <= budget &&
                    c2 <= budget && c3 <= budget;
  return {pass, fenced + ", " + prose + ", " + garbage + " with " + std::to_string(c1) + "/" + std::to_string(c2) +
                    "/" + std::to_string(c3) + " calls (budget " + std::to_string(budget) + ")"};
}

Outcome determinism() {
  std::vector<std::string> reports;
  for (std::size_t workers : {1u, 4u, 16u, 16u}) {
    TempDir dir;
    auto config = golden_config(dir.path());
    config.concurrency = workers;
    config.judge.display_fan_out = std::min<std::size_t>(workers, 4);
    runner::run_evaluation(config);
    reports.push_back(read_text(dir.path() / "report.json"));
  }
  const bool same = std::all_of(reports.begin(), reports.end(), [&](const auto& r) { return r == reports[0]; });
  return {same, "concurrency 1, 4, 16 and a repeated 16: " + std::string(same ? "identical" : "different")};
}

Outcome assist_contract() {
  backend::MockBackend mock;
  judge::testing::CountingBackend counting(mock);
  runner::AssistHandler handler(counting);

  const json request = {
      {"task", {{"instruction", "Search for cats"}}},
      {"history", json::array()},
      {"transition",
       {{"step", 2},
        {"pre", {{"text", "query: cats"}}},
        {"post", {{"text", "query: cats"}}},
        {"action", {{"action", "tap"}, {"target", "search button"}}}}}};
  auto r = handler.handle("POST", "/verify/interaction", request.dump());
  verify::Transition t;
  t.ordinal = 2;
  t.pre.step = t.post.step = 2;
  t.pre.phase = model::Phase::Pre;
  t.pre.text = "query: cats";
  t.post.text = "query: cats";
  t.action = {"", "tap", "search button", true};
  std::vector<verify::Transition> history{t};
  const auto direct = mock.verify_interaction_transition({"", "Search for cats", ""}, {}, history, t);
  const bool identical = r.status == 200 && r.body["finding"] == backend::to_json_value(direct);

  const auto before = counting.total();
  json malformed = request;
  malformed.erase("transition");
  const int bad1 = handler.handle("POST", "/verify/interaction", malformed.dump()).status;
  const int bad2 = handler.handle("POST", "/verify/display", R"({"observation": {"image_path": "/x.png"}})").status;
  const bool rejected = bad1 == 400 && bad2 == 400 && counting.total() == before;

  runner::AssistServer server(mock);
  const int port = server.bind("127.0.0.1", 0);
  std::thread serving([&] { server.serve(); });
  httplib::Client client("127.0.0.1", port);
  for (int i = 0; i < 200 && !client.Get("/healthz"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(5));
  double worst_ms = 0;
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    const auto start = Clock::now();
    auto res = client.Post("/verify/interaction", request.dump(), "application/json");
    worst_ms = std::max(worst_ms, seconds_since(start) * 1000.0);
    ok = ok && res && res->status == 200;
  }
  server.stop();
  serving.join();
  const bool fast = ok && worst_ms < 50.0;
  return {identical && rejected && fast, std::string("findings ") + (identical ? "identical" : "differ") +
                                             ", malformed " + (rejected ? "rejected before backend" : "leaked") +
                                             ", worst round trip " + std::to_string(worst_ms) + " ms"};
}

Outcome ablations() {
  std::vector<std::string> notes;
  bool pass = true;
  for (int mode = 0; mode < 2; ++mode) {
    TempDir dir;
    auto config = golden_config(dir.path());
    (mode == 0 ? config.judge.no_retrieval : config.judge.unified_verifier) = true;
    const auto summary = runner::run_evaluation(config);
    const auto j = json::parse(read_text(dir.path() / "report.json"));
    bool well_formed = summary.exit_code == runner::kExitOk && j["models"].size() == 3;
    for (const auto& m : j["models"]) {
      for (const auto& block : m["pass_at"]) {
        const auto& detect = block["stages"][2];
        well_formed = well_formed && detect["stage"] == "detect";
        for (const auto& cell : detect["cells"]) {
          well_formed = well_formed && cell["evaluated"].get<bool>() && cell["f1"].is_number();
        }
      }
    }
    pass = pass && well_formed;
    notes.push_back(std::string(mode == 0 ? "no-retrieval " : "unified-verifier ") +
                    (well_formed ? "ok" : "malformed"));
  }
  return {pass, notes[0] + ", " + notes[1]};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"retrieval-oracle-equivalence", retrieval_oracle},
      {"verdict-monotonicity-fuzz", verdict_fuzz},
      {"golden-end-to-end", golden_report},
      {"metric-arithmetic", metric_arithmetic},
      {"display-trigger-inheritance", display_trigger_inheritance},
      {"prompt-fidelity", prompt_fidelity},
      {"repair-ladder", repair_ladder},
      {"determinism", determinism},
      {"assist-service-contract", assist_contract},
      {"ablation-modes", ablations},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
