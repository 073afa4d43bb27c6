#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "judge/metrics/report.hpp"

namespace judge::metrics {

namespace {

nlohmann::json flags_json(const Scores& s) {
  nlohmann::json flags = nlohmann::json::array();
  if (s.empty) flags.push_back("empty");
  if (s.degenerate) flags.push_back("degenerate");
  return flags;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string flag_text(const Scores& s) {
  std::string out;
  if (s.empty) out += "empty";
  if (s.degenerate) out += out.empty() ? "degenerate" : "|degenerate";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

nlohmann::json report_json(const BenchmarkReport& report) {
  nlohmann::json j;
  j["format"] = "judge-report/1";
  const auto& c = report.config;
  j["config"] = {{"backend", c.backend},
                 {"judge_model", c.judge_model},
                 {"k_values", c.k_values},
                 {"ablations", {{"no_retrieval", c.no_retrieval}, {"unified_verifier", c.unified_verifier}}},
                 {"consistency", c.consistency},
                 {"routing", c.routing},
                 {"averaging", std::string(to_string(c.averaging))}};
  j["models"] = nlohmann::json::array();
  for (const auto& m : report.models) {
    nlohmann::json mj{{"model_id", m.model_id},
                      {"units", m.units},
                      {"excluded_units", m.excluded_units},
                      {"scored_runs", m.scored_runs},
                      {"unscored_runs", m.unscored_runs}};
    mj["pass_at"] = nlohmann::json::array();
    for (const auto& block : m.pass_at) {
      nlohmann::json bj{{"k", block.k}};
      bj["stages"] = nlohmann::json::array();
      for (const auto& st : block.stages) {
        nlohmann::json sj{{"stage", std::string(to_string(st.stage))}};
        sj["cells"] = nlohmann::json::array();
        for (Column column : kAllColumns) {
          const Cell& cell = st.at(column);
          nlohmann::json cj{{"column", std::string(to_string(column))}, {"evaluated", cell.evaluated}};
          if (cell.evaluated) {
            cj["tp"] = cell.counts.tp;
            cj["fp"] = cell.counts.fp;
            cj["fn"] = cell.counts.fn;
            cj["recall"] = cell.scores.recall;
            cj["precision"] = cell.scores.precision;
            cj["f1"] = cell.scores.f1;
            cj["flags"] = flags_json(cell.scores);
          }
          sj["cells"].push_back(std::move(cj));
        }
        bj["stages"].push_back(std::move(sj));
      }
      mj["pass_at"].push_back(std::move(bj));
    }
    j["models"].push_back(std::move(mj));
  }
  j["unscored"] = nlohmann::json::array();
  for (const auto& u : report.unscored) {
    j["unscored"].push_back({{"model_id", u.model_id},
                             {"case_id", u.case_id},
                             {"task_id", u.task_id},
                             {"run_index", u.run_index},
                             {"reason", u.reason}});
  }
  return j;
}

std::string summary_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "model,k,stage,column,evaluated,tp,fp,fn,recall,precision,f1,flags\n";
  for (const auto& m : report.models) {
    for (const auto& block : m.pass_at) {
      for (const auto& st : block.stages) {
        for (Column column : kAllColumns) {
          const Cell& cell = st.at(column);
          out << m.model_id << ',' << block.k << ',' << to_string(st.stage) << ',' << to_string(column) << ',';
          if (!cell.evaluated) {
            out << "false,,,,,,,not_evaluated\n";
            continue;
          }
          out << "true," << cell.counts.tp << ',' << cell.counts.fp << ',' << cell.counts.fn << ','
              << fixed(cell.scores.recall, 6) << ',' << fixed(cell.scores.precision, 6) << ','
              << fixed(cell.scores.f1, 6) << ',' << flag_text(cell.scores) << '\n';
        }
      }
    }
  }
  return out.str();
}

std::string summary_markdown(const BenchmarkReport& report) {
  std::ostringstream out;
  const auto& c = report.config;
  out << "# Evaluation summary\n\n";
  out << "- backend: " << c.backend;
  if (!c.judge_model.empty()) out << " (" << c.judge_model << ")";
  out << "\n- consistency: " << c.consistency << "\n- averaging: " << to_string(c.averaging) << "\n";
  out << "- retrieval: " << (c.no_retrieval ? "disabled" : "enabled")
      << "\n- verifier: " << (c.unified_verifier ? "unified" : "split") << "\n";
  out << "\nValues are percentages. `n/e` marks a stage that was not evaluated, `-` an empty cell.\n";

  for (std::size_t ki = 0; ki < c.k_values.size(); ++ki) {
    out << "\n## Pass@" << c.k_values[ki] << "\n";
    for (Stage stage : kAllStages) {
      out << "\n### " << to_string(stage) << "\n\n| Model |";
      for (Column column : kAllColumns) out << ' ' << to_string(column) << " Recall | " << to_string(column) << " F1 |";
      out << "\n|---|";
      for (std::size_t i = 0; i < kAllColumns.size(); ++i) out << "---:|---:|";
      out << '\n';
      for (const auto& m : report.models) {
        if (ki >= m.pass_at.size()) continue;
        out << "| " << m.model_id << " |";
        const StageTable& st = m.pass_at[ki].at(stage);
        for (Column column : kAllColumns) {
          const Cell& cell = st.at(column);
          if (!cell.evaluated) {
            out << " n/e | n/e |";
          } else if (cell.scores.empty) {
            out << " - | - |";
          } else {
            out << ' ' << fixed(cell.scores.recall * 100.0, 2) << " | " << fixed(cell.scores.f1 * 100.0, 2) << " |";
          }
        }
        out << '\n';
      }
    }
  }

  out << "\n## Runs\n\n| Model | Units | Excluded units | Scored runs | Unscored runs |\n|---|---:|---:|---:|---:|\n";
  for (const auto& m : report.models) {
    out << "| " << m.model_id << " | " << m.units << " | " << m.excluded_units << " | " << m.scored_runs << " | "
        << m.unscored_runs << " |\n";
  }
  return out.str();
}

void write_report_files(const BenchmarkReport& report, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir / "report.json", report_json(report).dump(2) + "\n");
  write_text(out_dir / "summary.csv", summary_csv(report));
  write_text(out_dir / "summary.md", summary_markdown(report));
}

}  // namespace judge::metrics
