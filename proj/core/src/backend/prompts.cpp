#include "judge/backend/prompts.hpp"

#include <cctype>
#include <sstream>

#include "judge/backend/errors.hpp"

namespace judge::backend {

namespace assets {
extern const std::string_view retrieval;
extern const std::string_view display;
extern const std::string_view interaction;
extern const std::string_view consistency;
extern const std::string_view unified;
}  // namespace assets

std::string_view to_string(TemplateId id) noexcept {
  switch (id) {
    case TemplateId::Retrieval: return "retrieval";
    case TemplateId::Display: return "display";
    case TemplateId::Interaction: return "interaction";
    case TemplateId::Consistency: return "consistency";
    case TemplateId::Unified: return "unified";
  }
  return "";
}

std::optional<TemplateId> parse_template_id(std::string_view text) noexcept {
  for (TemplateId id : {TemplateId::Retrieval, TemplateId::Display, TemplateId::Interaction,
                        TemplateId::Consistency, TemplateId::Unified}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

namespace {

bool is_name_char(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

/// Calls visit(name) for each placeholder, fill(text) for literal runs.
template <typename Literal, typename Placeholder>
void scan_placeholders(std::string_view body, Literal&& literal, Placeholder&& placeholder) {
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t open = body.find('{', pos);
    if (open == std::string_view::npos) break;
    std::size_t close = open + 1;
    while (close < body.size() && is_name_char(body[close])) ++close;
    if (close < body.size() && body[close] == '}' && close > open + 1) {
      literal(body.substr(pos, open - pos));
      placeholder(std::string(body.substr(open + 1, close - open - 1)));
      pos = close + 1;
    } else {
      literal(body.substr(pos, open + 1 - pos));
      pos = open + 1;
    }
  }
  literal(body.substr(pos));
}

std::set<std::string> placeholders_in(std::string_view body) {
  std::set<std::string> names;
  scan_placeholders(body, [](std::string_view) {}, [&](std::string name) { names.insert(std::move(name)); });
  return names;
}

std::optional<SchemaId> parse_schema(std::string_view text) {
  for (SchemaId id : {SchemaId::Match, SchemaId::Display, SchemaId::Interaction, SchemaId::Consistency,
                      SchemaId::Unified}) {
    if (to_string(id) == text) return id;
  }
  return std::nullopt;
}

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

PromptTemplate load_builtin(TemplateId id) {
  std::string_view text;
  switch (id) {
    case TemplateId::Retrieval: text = assets::retrieval; break;
    case TemplateId::Display: text = assets::display; break;
    case TemplateId::Interaction: text = assets::interaction; break;
    case TemplateId::Consistency: text = assets::consistency; break;
    case TemplateId::Unified: text = assets::unified; break;
  }
  return parse_prompt_asset(text);
}

std::string render_body(std::string_view body, const PromptContext& context) {
  std::string out;
  scan_placeholders(
      body, [&](std::string_view literal) { out.append(literal); },
      [&](const std::string& name) {
        if (auto it = context.values.find(name); it != context.values.end()) out += it->second;
      });
  return out;
}

std::string observation_text(const model::Observation& obs) {
  return obs.text && !obs.text->empty() ? *obs.text : std::string("(not provided)");
}

}  // namespace

PromptTemplate parse_prompt_asset(std::string_view text) {
  PromptTemplate tmpl;
  enum class Section { Header, System, User } section = Section::Header;
  std::string system;
  std::string user;
  bool have_id = false;
  bool have_schema = false;

  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line == "[system]") {
      section = Section::System;
      continue;
    }
    if (line == "[user]") {
      section = Section::User;
      continue;
    }
    switch (section) {
      case Section::Header: {
        if (line.empty()) continue;
        if (line.rfind("# ", 0) != 0 || line.find(':') == std::string::npos) {
          throw std::invalid_argument("prompt asset: malformed header line '" + line + "'");
        }
        const std::size_t colon = line.find(':');
        const std::string key = trim(std::string_view(line).substr(2, colon - 2));
        const std::string value = trim(std::string_view(line).substr(colon + 1));
        if (key == "id") {
          auto id = parse_template_id(value);
          if (!id) throw std::invalid_argument("prompt asset: unknown id '" + value + "'");
          tmpl.id = *id;
          have_id = true;
        } else if (key == "version") {
          tmpl.version = std::stoi(value);
        } else if (key == "schema") {
          auto schema = parse_schema(value);
          if (!schema) throw std::invalid_argument("prompt asset: unknown schema '" + value + "'");
          tmpl.output_schema = *schema;
          have_schema = true;
        } else if (key == "optional") {
          std::istringstream names(value);
          std::string name;
          while (std::getline(names, name, ',')) tmpl.optional_context.insert(trim(name));
        }
        break;
      }
      case Section::System:
        system += line;
        system += '\n';
        break;
      case Section::User:
        user += line;
        user += '\n';
        break;
    }
  }
  if (!have_id || !have_schema) throw std::invalid_argument("prompt asset: id and schema are required");
  tmpl.system_body = trim(system);
  tmpl.user_body = trim(user);
  for (const std::string& name : placeholders_in(tmpl.system_body + "\n" + tmpl.user_body)) {
    if (!tmpl.optional_context.contains(name)) tmpl.required_context.insert(name);
  }
  return tmpl;
}

const PromptTemplate& prompt_template(TemplateId id) {
  static const PromptTemplate retrieval = load_builtin(TemplateId::Retrieval);
  static const PromptTemplate display = load_builtin(TemplateId::Display);
  static const PromptTemplate interaction = load_builtin(TemplateId::Interaction);
  static const PromptTemplate consistency = load_builtin(TemplateId::Consistency);
  static const PromptTemplate unified = load_builtin(TemplateId::Unified);
  switch (id) {
    case TemplateId::Retrieval: return retrieval;
    case TemplateId::Display: return display;
    case TemplateId::Interaction: return interaction;
    case TemplateId::Consistency: return consistency;
    case TemplateId::Unified: break;
  }
  return unified;
}

MessageSequence render_prompt(TemplateId id, const PromptContext& context) {
  return render_prompt(prompt_template(id), context);
}

MessageSequence render_prompt(const PromptTemplate& tmpl, const PromptContext& context) {
  std::string missing;
  for (const std::string& name : tmpl.required_context) {
    auto it = context.values.find(name);
    if (it == context.values.end() || it->second.empty()) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  }
  if (!missing.empty()) {
    throw MissingPlaceholder(std::string(to_string(tmpl.id)) + " prompt: missing " + missing);
  }

  Message system{Role::System, {ContentPart::make_text(render_body(tmpl.system_body, context))}};
  Message user{Role::User, {ContentPart::make_text(render_body(tmpl.user_body, context))}};
  for (const ImageAttachment& attachment : context.images) {
    if (!attachment.label.empty()) user.parts.push_back(ContentPart::make_text(attachment.label));
    user.parts.push_back(ContentPart::make_image(attachment.image));
  }
  return {std::move(system), std::move(user)};
}

PromptContext retrieval_context(const model::Observation& observation, std::string key_point) {
  PromptContext context;
  context.values["current_kp"] = std::move(key_point);
  context.values["step"] = std::to_string(observation.step);
  if (observation.text) context.values["page_text"] = *observation.text;
  if (!observation.image.empty()) context.images.push_back({"Current screenshot:", observation.image});
  return context;
}

PromptContext display_context(const model::Observation& observation) {
  PromptContext context;
  context.values["page_summary"] = observation_text(observation);
  if (!observation.image.empty()) context.images.push_back({"Screenshot:", observation.image});
  return context;
}

std::string format_history_entry(std::size_t position, const verify::Transition& t) {
  std::ostringstream out;
  out << "[History " << position << "] step " << t.ordinal << " | thought: " << t.action.thought
      << " | action: " << t.action.action << " | target: " << t.action.target
      << " | hit: " << (t.action.hit ? "true" : "false") << " | pre-state: " << observation_text(t.pre)
      << " | post-state: " << observation_text(t.post);
  return out.str();
}

std::string format_current_step(const verify::Transition& t) {
  std::ostringstream out;
  out << "[Current step] step " << t.ordinal << '\n'
      << "thought: " << t.action.thought << '\n'
      << "action: " << t.action.action << '\n'
      << "target: " << t.action.target << '\n'
      << "hit: " << (t.action.hit ? "true" : "false") << '\n'
      << "pre-state: " << observation_text(t.pre) << '\n'
      << "post-state: " << observation_text(t.post);
  return out.str();
}

PromptContext interaction_context(const model::NavigationTask& task, const model::TestBasis& basis,
                                  std::span<const verify::Transition> history,
                                  const verify::Transition& current) {
  PromptContext context;
  std::ostringstream task_text;
  task_text << "- " << task.instruction;
  if (!task.entry_point.empty()) task_text << " (entry: " << task.entry_point << ")";
  context.values["task"] = task_text.str();

  std::ostringstream basis_text;
  basis_text << "- precondition: " << basis.precondition << '\n';
  if (!basis.trigger.empty()) basis_text << "- trigger: " << basis.trigger << '\n';
  basis_text << "- evidence: " << basis.evidence;
  context.values["basis"] = basis_text.str();

  std::ostringstream history_text;
  for (std::size_t i = 0; i < history.size(); ++i) {
    if (i > 0) history_text << '\n';
    history_text << format_history_entry(i + 1, history[i]);
  }
  context.values["history"] = history.empty() ? std::string("(none)") : history_text.str();
  context.values["transition"] = format_current_step(current);

  if (!current.pre.image.empty()) context.images.push_back({"pre:", current.pre.image});
  if (!current.post.image.empty()) context.images.push_back({"post:", current.post.image});
  return context;
}

PromptContext consistency_context(const model::DefectClaim& claim, const model::VerifiedDefect& defect) {
  PromptContext context;
  context.values["claim_step"] = std::to_string(claim.step);
  context.values["claim_fault_mode"] =
      claim.claimed_fault_mode ? std::string(model::to_string(*claim.claimed_fault_mode)) : "(not stated)";
  context.values["claim_description"] = claim.description;
  context.values["defect_step"] = std::to_string(defect.step);
  context.values["defect_fault_mode"] = std::string(model::to_string(defect.fault_mode));
  context.values["defect_reason"] = defect.reason.empty() ? std::string("(none)") : defect.reason;
  context.values["defect_locator"] = defect.locator.empty() ? std::string("(none)") : defect.locator;
  return context;
}

}  // namespace judge::backend
