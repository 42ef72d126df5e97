#include "issuebench/judge.hpp"

#include <algorithm>

#include "issuebench/errors.hpp"
#include "issuebench/prompts.hpp"

namespace issuebench {

namespace {

constexpr std::array<std::string_view, 4> kLabelNames = {"M1", "M2", "M3", "M4"};

std::string label_name(int label) { return std::string(kLabelNames[static_cast<size_t>(label)]); }

std::string field_key(int label) {
  return "m" + std::to_string(label + 1);
}

// --- schema checks; every failure names the offending path ---

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) {
    throw SchemaViolationError(path, "expected an object, got " + std::string(j.type_name()));
  }
}

void require_keys(const Json& j, const std::string& path,
                  const std::vector<std::string>& required) {
  for (const std::string& key : required) {
    if (!j.contains(key)) {
      throw SchemaViolationError(path + "." + key, "required field is missing");
    }
  }
  for (const auto& item : j.items()) {
    if (std::find(required.begin(), required.end(), item.key()) == required.end()) {
      throw SchemaViolationError(path + "." + item.key(), "unexpected field");
    }
  }
}

std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    throw SchemaViolationError(path, "expected a string, got " + std::string(j.type_name()));
  }
  return j.get<std::string>();
}

long long require_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw SchemaViolationError(path, "expected a non-negative integer");
  }
  return j.get<long long>();
}

IssueStatus parse_status(const Json& j, const std::string& path) {
  const std::string raw = require_string(j, path);
  const std::string lowered = to_lower(raw);
  if (lowered == "caught") return IssueStatus::Caught;
  if (lowered == "partial") return IssueStatus::Partial;
  if (lowered == "missed") return IssueStatus::Missed;
  throw SchemaViolationError(path, "status \"" + raw + "\" is not one of Caught|Partial|Missed");
}

Severity parse_severity(const Json& j, const std::string& path) {
  const std::string raw = require_string(j, path);
  const std::string lowered = to_lower(raw);
  if (lowered == "core") return Severity::Core;
  if (lowered == "important") return Severity::Important;
  if (lowered == "secondary") return Severity::Secondary;
  throw SchemaViolationError(path,
                             "severity \"" + raw + "\" is not one of core|important|secondary");
}

int parse_label(const Json& j, const std::string& path) {
  const std::string raw = require_string(j, path);
  const std::string lowered = to_lower(raw);
  for (int i = 0; i < 4; ++i) {
    if (lowered == "m" + std::to_string(i + 1)) return i;
  }
  throw SchemaViolationError(path, "best_rigour \"" + raw + "\" is not one of M1|M2|M3|M4");
}

}  // namespace

std::pair<std::string, std::string> render_judge_prompt(const JudgePayload& payload) {
  std::string user =
      render_template(prompts::kJudgeUserTemplate, {{"payload_json", payload.dump()}});
  return {std::string(prompts::kJudgeSystem), std::move(user)};
}

BlindVerdict validate_verdict(const std::string& raw_json) {
  Json root;
  try {
    root = Json::parse(raw_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaViolationError("$", std::string("invalid JSON: ") + e.what());
  }
  require_object(root, "$");
  require_keys(root, "$", {"paper_title", "decision", "summary", "issues", "analysis"});

  BlindVerdict verdict;
  verdict.paper_title = require_string(root.at("paper_title"), "$.paper_title");
  verdict.decision = require_string(root.at("decision"), "$.decision");

  const Json& summary = root.at("summary");
  require_object(summary, "summary");
  require_keys(summary, "summary", {"total_issues", "best_rigour_counts", "short_takeaway"});
  verdict.total_issues = require_count(summary.at("total_issues"), "summary.total_issues");
  const Json& counts = summary.at("best_rigour_counts");
  require_object(counts, "summary.best_rigour_counts");
  require_keys(counts, "summary.best_rigour_counts", {"M1", "M2", "M3", "M4"});
  for (int label = 0; label < 4; ++label) {
    verdict.best_rigour_counts[static_cast<size_t>(label)] =
        require_count(counts.at(label_name(label)),
                      "summary.best_rigour_counts." + label_name(label));
  }
  verdict.short_takeaway = require_string(summary.at("short_takeaway"), "summary.short_takeaway");

  const Json& issues = root.at("issues");
  if (!issues.is_array()) {
    throw SchemaViolationError("issues", "expected an array");
  }
  for (size_t i = 0; i < issues.size(); ++i) {
    const std::string row_path = "issues[" + std::to_string(i) + "]";
    const Json& row = issues.at(i);
    require_object(row, row_path);
    require_keys(row, row_path, {"topic", "severity", "m1", "m2", "m3", "m4", "best_rigour"});

    BlindIssueRow parsed;
    parsed.topic = require_string(row.at("topic"), row_path + ".topic");
    if (parsed.topic.empty()) {
      throw SchemaViolationError(row_path + ".topic", "topic must be non-empty");
    }
    parsed.severity = parse_severity(row.at("severity"), row_path + ".severity");
    for (int label = 0; label < 4; ++label) {
      const std::string key = field_key(label);
      const std::string cell_path = row_path + "." + key;
      const Json& cell = row.at(key);
      require_object(cell, cell_path);
      require_keys(cell, cell_path, {"status", "note"});
      parsed.by_label[static_cast<size_t>(label)].status =
          parse_status(cell.at("status"), cell_path + ".status");
      parsed.by_label[static_cast<size_t>(label)].note =
          require_string(cell.at("note"), cell_path + ".note");
    }
    parsed.best_rigour_label = parse_label(row.at("best_rigour"), row_path + ".best_rigour");
    verdict.issues.push_back(std::move(parsed));
  }

  const Json& analysis = root.at("analysis");
  require_object(analysis, "analysis");
  require_keys(analysis, "analysis",
               {"what_m1_added", "what_m2_added", "what_m3_added", "what_m4_added",
                "prompt_lessons"});
  for (int label = 0; label < 4; ++label) {
    const std::string key = "what_" + field_key(label) + "_added";
    verdict.what_added[static_cast<size_t>(label)] =
        require_string(analysis.at(key), "analysis." + key);
  }
  const Json& lessons = analysis.at("prompt_lessons");
  if (!lessons.is_array()) {
    throw SchemaViolationError("analysis.prompt_lessons", "expected an array");
  }
  for (size_t i = 0; i < lessons.size(); ++i) {
    verdict.prompt_lessons.push_back(
        require_string(lessons.at(i), "analysis.prompt_lessons[" + std::to_string(i) + "]"));
  }

  // count consistencies
  if (verdict.total_issues != static_cast<long long>(verdict.issues.size())) {
    throw SchemaViolationError("summary.total_issues",
                               "declares " + std::to_string(verdict.total_issues) + " but issues has " +
                                   std::to_string(verdict.issues.size()) + " rows");
  }
  std::array<long long, 4> tally{};
  for (const BlindIssueRow& row : verdict.issues) {
    ++tally[static_cast<size_t>(row.best_rigour_label)];
  }
  for (int label = 0; label < 4; ++label) {
    if (tally[static_cast<size_t>(label)] != verdict.best_rigour_counts[static_cast<size_t>(label)]) {
      throw SchemaViolationError(
          "summary.best_rigour_counts." + label_name(label),
          "declares " + std::to_string(verdict.best_rigour_counts[static_cast<size_t>(label)]) +
              " but issues tally to " + std::to_string(tally[static_cast<size_t>(label)]));
    }
  }
  return verdict;
}

Json BlindVerdict::to_json() const {
  Json root;
  root["paper_title"] = paper_title;
  root["decision"] = decision;
  Json summary;
  summary["total_issues"] = total_issues;
  Json counts;
  for (int label = 0; label < 4; ++label) {
    counts[label_name(label)] = best_rigour_counts[static_cast<size_t>(label)];
  }
  summary["best_rigour_counts"] = std::move(counts);
  summary["short_takeaway"] = short_takeaway;
  root["summary"] = std::move(summary);
  Json rows = Json::array();
  for (const BlindIssueRow& row : issues) {
    Json r;
    r["topic"] = row.topic;
    r["severity"] = to_string(row.severity);
    for (int label = 0; label < 4; ++label) {
      Json cell;
      cell["status"] = to_string(row.by_label[static_cast<size_t>(label)].status);
      cell["note"] = row.by_label[static_cast<size_t>(label)].note;
      r[field_key(label)] = std::move(cell);
    }
    r["best_rigour"] = label_name(row.best_rigour_label);
    rows.push_back(std::move(r));
  }
  root["issues"] = std::move(rows);
  Json analysis;
  for (int label = 0; label < 4; ++label) {
    analysis["what_" + field_key(label) + "_added"] = what_added[static_cast<size_t>(label)];
  }
  analysis["prompt_lessons"] = prompt_lessons;
  root["analysis"] = std::move(analysis);
  return root;
}

namespace {

/// Models occasionally wrap the JSON in a markdown fence; strip it before
/// validation. The archived raw text keeps the fence.
std::string extract_json_body(const std::string& raw) {
  std::string text = trim(raw);
  if (text.rfind("```", 0) == 0) {
    const size_t first_newline = text.find('\n');
    const size_t last_fence = text.rfind("```");
    if (first_newline != std::string::npos && last_fence > first_newline) {
      text = trim(text.substr(first_newline + 1, last_fence - first_newline - 1));
    }
  }
  return text;
}

}  // namespace

BlindVerdict judge_paper(const JudgePayload& payload, const std::string& model_id,
                         LlmGateway& gateway, const JudgeOptions& options) {
  auto [system_prompt, base_user] = render_judge_prompt(payload);

  const int total_attempts = 1 + std::max(0, options.reask_attempts);
  std::string last_error;
  for (int attempt = 0; attempt < total_attempts; ++attempt) {
    ChatRequest request;
    request.model_id = model_id;
    request.system_prompt = system_prompt;
    request.user_prompt = base_user;
    request.temperature = 0.0;
    request.max_output_tokens = options.max_output_tokens;
    if (attempt > 0) {
      request.user_prompt += "\n\nYour previous response (attempt " + std::to_string(attempt) +
                             ") failed validation: " + last_error +
                             "\nReturn ONLY corrected valid JSON.";
    }
    const ChatResponse response = gateway.complete(request);
    if (options.archive) {
      options.archive(attempt + 1, response.text);
    }
    try {
      return validate_verdict(extract_json_body(response.text));
    } catch (const SchemaViolationError& e) {
      last_error = e.what();
    }
  }
  throw JudgeRejectedError(payload.paper_title(), total_attempts, last_error);
}

IssueMatrix unblind(const BlindVerdict& verdict, const BlindMap& map, const PaperRecord& paper) {
  if (map.paper_id != paper.paper_id) {
    throw MapMismatchError(paper.paper_id, map.paper_id);
  }
  IssueMatrix matrix;
  matrix.paper_id = paper.paper_id;
  matrix.paper_title = verdict.paper_title;
  matrix.stratum = paper.stratum;
  matrix.decision = verdict.decision;
  matrix.short_takeaway = verdict.short_takeaway;
  for (int label = 0; label < 4; ++label) {
    const SourceName source = map.source_for_label(label);
    matrix.best_rigour_counts[source] = verdict.best_rigour_counts[static_cast<size_t>(label)];
    matrix.what_added[source] = verdict.what_added[static_cast<size_t>(label)];
  }
  matrix.prompt_lessons = verdict.prompt_lessons;

  for (size_t i = 0; i < verdict.issues.size(); ++i) {
    const BlindIssueRow& blind_row = verdict.issues[i];
    IssueRow row;
    row.paper_id = paper.paper_id;
    row.stratum = paper.stratum;
    row.topic = blind_row.topic;
    row.severity = blind_row.severity;
    for (int label = 0; label < 4; ++label) {
      row.status_of(map.source_for_label(label)) = blind_row.by_label[static_cast<size_t>(label)];
    }
    row.best_rigour = map.source_for_label(blind_row.best_rigour_label);
    if (row.status_of(row.best_rigour).status == IssueStatus::Missed) {
      matrix.lint.push_back("row " + std::to_string(i) + ": best_rigour source " +
                            std::string(to_string(row.best_rigour)) +
                            " has status Missed (topic: " + row.topic + ")");
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

BlindVerdict reblind(const IssueMatrix& matrix, const BlindMap& map) {
  if (map.paper_id != matrix.paper_id) {
    throw MapMismatchError(matrix.paper_id, map.paper_id);
  }
  BlindVerdict verdict;
  verdict.paper_title = matrix.paper_title;
  verdict.decision = matrix.decision;
  verdict.total_issues = static_cast<long long>(matrix.rows.size());
  verdict.short_takeaway = matrix.short_takeaway;
  for (int label = 0; label < 4; ++label) {
    const SourceName source = map.source_for_label(label);
    auto counts_it = matrix.best_rigour_counts.find(source);
    verdict.best_rigour_counts[static_cast<size_t>(label)] =
        counts_it == matrix.best_rigour_counts.end() ? 0 : counts_it->second;
    auto added_it = matrix.what_added.find(source);
    verdict.what_added[static_cast<size_t>(label)] =
        added_it == matrix.what_added.end() ? std::string{} : added_it->second;
  }
  verdict.prompt_lessons = matrix.prompt_lessons;
  for (const IssueRow& row : matrix.rows) {
    BlindIssueRow blind_row;
    blind_row.topic = row.topic;
    blind_row.severity = row.severity;
    for (int label = 0; label < 4; ++label) {
      blind_row.by_label[static_cast<size_t>(label)] = row.status_of(map.source_for_label(label));
    }
    blind_row.best_rigour_label = map.label_for_source(row.best_rigour);
    verdict.issues.push_back(std::move(blind_row));
  }
  return verdict;
}

}  // namespace issuebench
