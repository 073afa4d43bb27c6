#include "judge/model/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "judge/model/json.hpp"

namespace judge::model {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(ViolationCode code) noexcept {
  switch (code) {
    case ViolationCode::MissingField: return "MissingField";
    case ViolationCode::BadValue: return "BadValue";
    case ViolationCode::BadFaultMode: return "BadFaultMode";
    case ViolationCode::EmptyTasks: return "EmptyTasks";
    case ViolationCode::DuplicateTaskId: return "DuplicateTaskId";
    case ViolationCode::DuplicateCaseId: return "DuplicateCaseId";
    case ViolationCode::StepGap: return "StepGap";
    case ViolationCode::DanglingImage: return "DanglingImage";
    case ViolationCode::ClaimOutOfRange: return "ClaimOutOfRange";
    case ViolationCode::CaseMismatch: return "CaseMismatch";
    case ViolationCode::Unreadable: return "Unreadable";
  }
  return "";
}

namespace {

std::string summarize(const fs::path& bundle, const std::vector<Violation>& violations) {
  std::ostringstream out;
  out << bundle.string() << ": " << violations.size() << " violation(s)";
  for (const Violation& v : violations) {
    out << "\n  [" << to_string(v.code) << "] " << v.path << ": " << v.message;
  }
  return out.str();
}

/// Field access that records violations instead of throwing.
class Reader {
 public:
  explicit Reader(std::vector<Violation>& sink) : sink_(sink) {}

  void report(ViolationCode code, std::string path, std::string message) {
    sink_.push_back(Violation{code, std::move(path), std::move(message)});
  }

  const json* field(const json& obj, const std::string& key, const std::string& path, bool required) {
    if (!obj.is_object()) {
      report(ViolationCode::BadValue, path, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) report(ViolationCode::MissingField, path + "/" + key, "required field missing");
      return nullptr;
    }
    return &*it;
  }

  std::string string(const json& obj, const std::string& key, const std::string& path,
                     bool required = true, bool non_empty = false) {
    const json* value = field(obj, key, path, required);
    if (value == nullptr) return {};
    if (!value->is_string()) {
      report(ViolationCode::BadValue, path + "/" + key, "expected a string");
      return {};
    }
    std::string text = value->get<std::string>();
    if (non_empty && text.empty()) {
      report(ViolationCode::MissingField, path + "/" + key, "must not be empty");
    }
    return text;
  }

  std::optional<std::string> optional_string(const json& obj, const std::string& key,
                                             const std::string& path) {
    const json* value = field(obj, key, path, false);
    if (value == nullptr) return std::nullopt;
    if (!value->is_string()) {
      report(ViolationCode::BadValue, path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return value->get<std::string>();
  }

  std::optional<std::size_t> ordinal(const json& obj, const std::string& key, const std::string& path) {
    const json* value = field(obj, key, path, true);
    if (value == nullptr) return std::nullopt;
    if (!value->is_number_integer() || value->get<long long>() < 0) {
      report(ViolationCode::BadValue, path + "/" + key, "expected a non-negative integer");
      return std::nullopt;
    }
    return value->get<std::size_t>();
  }

  bool boolean(const json& obj, const std::string& key, const std::string& path) {
    const json* value = field(obj, key, path, true);
    if (value == nullptr) return false;
    if (!value->is_boolean()) {
      report(ViolationCode::BadValue, path + "/" + key, "expected a boolean");
      return false;
    }
    return value->get<bool>();
  }

  const json* array(const json& obj, const std::string& key, const std::string& path, bool required = true) {
    const json* value = field(obj, key, path, required);
    if (value == nullptr) return nullptr;
    if (!value->is_array()) {
      report(ViolationCode::BadValue, path + "/" + key, "expected an array");
      return nullptr;
    }
    return value;
  }

  std::optional<FaultMode> fault_mode(const json& obj, const std::string& key, const std::string& path,
                                      bool required) {
    const json* value = field(obj, key, path, required);
    if (value == nullptr) return std::nullopt;
    if (!value->is_string()) {
      report(ViolationCode::BadFaultMode, path + "/" + key, "expected a dotted fault-mode identifier");
      return std::nullopt;
    }
    auto mode = parse_fault_mode(value->get<std::string>());
    if (!mode) {
      report(ViolationCode::BadFaultMode, path + "/" + key,
             "unknown fault mode '" + value->get<std::string>() + "'");
    }
    return mode;
  }

 private:
  std::vector<Violation>& sink_;
};

std::optional<json> read_json(const fs::path& file, std::vector<Violation>& violations) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    violations.push_back({ViolationCode::Unreadable, file.filename().string(), "cannot open file"});
    return std::nullopt;
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    violations.push_back({ViolationCode::Unreadable, file.filename().string(), e.what()});
    return std::nullopt;
  }
}

void write_json(const fs::path& file, const json& value) {
  fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << value.dump(2) << '\n';
}

TestBasis read_basis(Reader& r, const json& obj, const std::string& path) {
  TestBasis basis;
  basis.precondition = r.string(obj, "precondition", path, true, true);
  basis.trigger = r.string(obj, "trigger", path, false);
  basis.evidence = r.string(obj, "evidence", path, true, true);
  if (const json* labels = r.field(obj, "deterministic_labels", path, false)) {
    if (!labels->is_object()) {
      r.report(ViolationCode::BadValue, path + "/deterministic_labels", "expected an object");
    } else {
      for (const auto& [key, marker] : labels->items()) {
        auto role = parse_basis_role(key);
        if (!role) {
          r.report(ViolationCode::BadValue, path + "/deterministic_labels/" + key, "unknown basis role");
          continue;
        }
        if (!marker.is_string() || marker.get<std::string>().empty()) {
          r.report(ViolationCode::BadValue, path + "/deterministic_labels/" + key,
                   "marker must be a non-empty string");
          continue;
        }
        basis.deterministic_labels[*role] = marker.get<std::string>();
      }
    }
  }
  return basis;
}

void check_image(Reader& r, const fs::path& root, const std::string& relative, const std::string& path,
                 ImageRef& out) {
  out.relative_path = relative;
  if (relative.empty()) return;  // already reported as missing
  const fs::path resolved = fs::weakly_canonical(root / relative);
  std::error_code ec;
  if (!fs::is_regular_file(resolved, ec) || fs::file_size(resolved, ec) == 0 || ec) {
    r.report(ViolationCode::DanglingImage, path, "image '" + relative + "' missing or empty");
    return;
  }
  out.resolved_path = resolved;
}

}  // namespace

ValidationError::ValidationError(fs::path bundle, std::vector<Violation> violations)
    : std::runtime_error(summarize(bundle, violations)),
      bundle_(std::move(bundle)),
      violations_(std::move(violations)) {}

bool ValidationError::has(ViolationCode code) const noexcept {
  return std::any_of(violations_.begin(), violations_.end(),
                     [code](const Violation& v) { return v.code == code; });
}

EvaluationCase validate_case(const fs::path& case_dir) {
  std::vector<Violation> violations;
  const fs::path manifest = case_dir / kCaseManifest;
  auto doc = read_json(manifest, violations);
  if (!doc) throw ValidationError(manifest, std::move(violations));

  Reader r(violations);
  const json& root = *doc;
  EvaluationCase ec;
  ec.case_id = r.string(root, "case_id", "", true, true);
  ec.app_id = r.string(root, "app_id", "", true, true);
  ec.app_category = r.string(root, "app_category", "", false);
  if (auto mode = r.fault_mode(root, "fault_mode", "", true)) ec.fault_mode = *mode;
  ec.defect_description = r.string(root, "defect_description", "", true, true);

  if (const json* scenario = r.field(root, "scenario", "", false)) {
    ec.scenario.reset_notes = r.string(*scenario, "reset_notes", "/scenario", false);
    if (const json* conditions = r.array(*scenario, "initial_conditions", "/scenario", false)) {
      for (std::size_t i = 0; i < conditions->size(); ++i) {
        if (!(*conditions)[i].is_string()) {
          r.report(ViolationCode::BadValue, "/scenario/initial_conditions/" + std::to_string(i),
                   "expected a string");
          continue;
        }
        ec.scenario.initial_conditions.push_back((*conditions)[i].get<std::string>());
      }
    }
  }

  if (const json* basis = r.field(root, "test_basis", "", true)) {
    ec.test_basis = read_basis(r, *basis, "/test_basis");
  }

  if (const json* tasks = r.array(root, "tasks", "")) {
    if (tasks->empty()) r.report(ViolationCode::EmptyTasks, "/tasks", "a case needs at least one task");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tasks->size(); ++i) {
      const std::string path = "/tasks/" + std::to_string(i);
      NavigationTask task;
      task.task_id = r.string((*tasks)[i], "task_id", path, true, true);
      task.instruction = r.string((*tasks)[i], "instruction", path, true, true);
      task.entry_point = r.string((*tasks)[i], "entry_point", path, false);
      if (!task.task_id.empty() && !seen.insert(task.task_id).second) {
        r.report(ViolationCode::DuplicateTaskId, path + "/task_id", "duplicate task id '" + task.task_id + "'");
      }
      ec.tasks.push_back(std::move(task));
    }
  }

  if (!violations.empty()) throw ValidationError(manifest, std::move(violations));
  return ec;
}

Trajectory validate_trajectory(const fs::path& run_dir, const EvaluationCase& ec) {
  std::vector<Violation> violations;
  const fs::path manifest = run_dir / kTrajectoryManifest;
  auto doc = read_json(manifest, violations);
  if (!doc) throw ValidationError(manifest, std::move(violations));

  Reader r(violations);
  const json& root = *doc;
  Trajectory t;
  t.run_id = r.string(root, "run_id", "", true, true);
  t.model_id = r.string(root, "model_id", "", true, true);
  t.case_id = r.string(root, "case_id", "", true, true);
  t.task_id = r.string(root, "task_id", "", true, true);
  if (!t.case_id.empty() && t.case_id != ec.case_id) {
    r.report(ViolationCode::CaseMismatch, "/case_id",
             "trajectory names case '" + t.case_id + "' but was loaded against '" + ec.case_id + "'");
  }
  if (!t.task_id.empty() && ec.find_task(t.task_id) == nullptr) {
    r.report(ViolationCode::CaseMismatch, "/task_id",
             "task '" + t.task_id + "' is not defined by case '" + ec.case_id + "'");
  }

  if (const json* steps = r.array(root, "steps", "")) {
    for (std::size_t i = 0; i < steps->size(); ++i) {
      const json& raw = (*steps)[i];
      const std::string path = "/steps/" + std::to_string(i);
      Step step;
      if (auto index = r.ordinal(raw, "index", path)) {
        step.index = *index;
        if (*index != i + 1) {
          r.report(ViolationCode::StepGap, path + "/index",
                   "expected index " + std::to_string(i + 1) + ", found " + std::to_string(*index));
        }
      }
      step.thought = r.string(raw, "thought", path, false);
      step.action = r.string(raw, "action", path, true, true);
      step.target = r.string(raw, "target", path, false);
      step.hit = r.boolean(raw, "hit", path);
      check_image(r, run_dir, r.string(raw, "pre_image", path, true, true), path + "/pre_image",
                  step.pre_image);
      check_image(r, run_dir, r.string(raw, "post_image", path, true, true), path + "/post_image",
                  step.post_image);
      step.pre_text = r.optional_string(raw, "pre_text", path);
      step.post_text = r.optional_string(raw, "post_text", path);
      t.steps.push_back(std::move(step));
    }
  }

  const fs::path report_file = run_dir / kReportFile;
  if (fs::exists(report_file)) {
    std::vector<Violation> report_violations;
    if (auto report = read_json(report_file, report_violations)) {
      Reader rr(violations);
      if (const json* claims = rr.array(*report, "claims", "report.json")) {
        for (std::size_t i = 0; i < claims->size(); ++i) {
          const std::string path = "report.json/claims/" + std::to_string(i);
          DefectClaim claim;
          if (auto step = rr.ordinal((*claims)[i], "step", path)) {
            claim.step = *step;
            if (*step < 1 || *step > t.steps.size()) {
              rr.report(ViolationCode::ClaimOutOfRange, path + "/step",
                        "claim step " + std::to_string(*step) + " outside [1, " +
                            std::to_string(t.steps.size()) + "]");
            }
          }
          claim.claimed_fault_mode = rr.fault_mode((*claims)[i], "fault_mode", path, false);
          claim.description = rr.string((*claims)[i], "description", path, true, true);
          t.report.claims.push_back(std::move(claim));
        }
      }
    }
    violations.insert(violations.end(), report_violations.begin(), report_violations.end());
  }

  if (!violations.empty()) throw ValidationError(run_dir, std::move(violations));
  return t;
}

std::vector<EvaluationCase> load_cases(const fs::path& cases_dir) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(cases_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / kCaseManifest)) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());

  std::vector<EvaluationCase> cases;
  std::vector<Violation> duplicates;
  std::set<std::string> seen;
  for (const fs::path& dir : dirs) {
    EvaluationCase ec = validate_case(dir);
    if (!seen.insert(ec.case_id).second) {
      duplicates.push_back({ViolationCode::DuplicateCaseId, dir.filename().string(),
                            "case id '" + ec.case_id + "' already defined"});
      continue;
    }
    cases.push_back(std::move(ec));
  }
  if (!duplicates.empty()) throw ValidationError(cases_dir, std::move(duplicates));
  std::sort(cases.begin(), cases.end(),
            [](const EvaluationCase& a, const EvaluationCase& b) { return a.case_id < b.case_id; });
  return cases;
}

void write_case(const fs::path& case_dir, const EvaluationCase& ec) {
  write_json(case_dir / kCaseManifest, json(ec));
}

void write_trajectory(const fs::path& run_dir, const Trajectory& trajectory) {
  write_json(run_dir / kTrajectoryManifest, json(trajectory));
  const fs::path report_file = run_dir / kReportFile;
  if (!trajectory.report.empty()) {
    write_json(report_file, json(trajectory.report));
  } else if (fs::exists(report_file)) {
    fs::remove(report_file);
  }
}

}  // namespace judge::model
