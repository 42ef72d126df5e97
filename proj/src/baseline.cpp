#include "issuebench/baseline.hpp"

#include <sstream>

#include "issuebench/errors.hpp"
#include "issuebench/prompts.hpp"

namespace issuebench {

std::string_view to_string(DecisionLabel d) {
  switch (d) {
    case DecisionLabel::Accept: return "Accept";
    case DecisionLabel::Borderline: return "Borderline";
    case DecisionLabel::Reject: return "Reject";
    case DecisionLabel::StrongReject: return "Strong Reject";
  }
  throw Error("bad decision label");
}

DecisionLabel decision_label_from_string(std::string_view s) {
  const std::string lowered = to_lower(trim(s));
  if (lowered == "accept") return DecisionLabel::Accept;
  if (lowered == "borderline") return DecisionLabel::Borderline;
  if (lowered == "reject") return DecisionLabel::Reject;
  if (lowered == "strong reject") return DecisionLabel::StrongReject;
  throw Error("unknown decision label: " + std::string(s));
}

std::pair<std::string, std::string> render_flaw_finder_prompt(const PaperRecord& paper) {
  if (paper.body_text.empty()) {
    throw Error("paper body is empty: " + paper.paper_id);
  }
  std::string user = render_template(prompts::kFlawFinderUserTemplate,
                                     {{"title", paper.title}, {"paper_text", paper.body_text}});
  return {std::string(prompts::kFlawFinderSystem), std::move(user)};
}

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

/// Value of a "**Key:** value" line, if the line carries that key.
std::optional<std::string> bold_field(const std::string& line, std::string_view key) {
  const std::string prefix = "**" + std::string(key) + ":**";
  const std::string trimmed = trim(line);
  if (trimmed.rfind(prefix, 0) != 0) return std::nullopt;
  return trim(trimmed.substr(prefix.size()));
}

}  // namespace

ParseResult parse_review(const std::string& text) {
  const std::vector<std::string> lines = split_lines(text);

  // Locate each required "## " heading (case-sensitive, literal).
  std::map<std::string, std::pair<size_t, size_t>> spans;  // heading -> [first, last) body lines
  std::vector<std::pair<std::string, size_t>> found;       // in document order
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string trimmed = trim(lines[i]);
    if (trimmed.rfind("## ", 0) != 0) continue;
    const std::string name = trim(trimmed.substr(3));
    for (std::string_view required : kReviewSections) {
      if (name == required) {
        found.emplace_back(name, i);
        break;
      }
    }
  }
  for (std::string_view required : kReviewSections) {
    bool present = false;
    for (const auto& [name, line] : found) {
      if (name == required) present = true;
    }
    if (!present) {
      throw MissingSectionError(std::string(required));
    }
  }
  for (size_t k = 0; k < found.size(); ++k) {
    const size_t begin = found[k].second + 1;
    const size_t end = (k + 1 < found.size()) ? found[k + 1].second : lines.size();
    spans[found[k].first] = {begin, end};
  }

  ParseResult result;
  for (const auto& [name, span] : spans) {
    std::string body;
    for (size_t i = span.first; i < span.second; ++i) {
      body += lines[i];
      body += '\n';
    }
    result.review.sections[name] = body;
  }

  // POINTERS bullets
  const auto& pointer_span = spans.at("POINTERS");
  for (size_t i = pointer_span.first; i < pointer_span.second; ++i) {
    const std::string trimmed = trim(lines[i]);
    if (trimmed.rfind("- ", 0) == 0 || trimmed.rfind("* ", 0) == 0) {
      result.review.pointers.push_back(trim(trimmed.substr(2)));
    }
  }
  const size_t bullets = result.review.pointers.size();
  if (bullets < 8 || bullets > 20) {
    result.warnings.push_back("PointerCountOutOfRange: " + std::to_string(bullets) +
                              " bullets (expected 8-20)");
  }

  // ACCEPTANCE RECOMMENDATION block
  const auto& rec_span = spans.at("ACCEPTANCE RECOMMENDATION");
  std::optional<int> score;
  std::optional<DecisionLabel> decision;
  std::optional<DecisionStratum> tier;
  std::string reasoning;
  for (size_t i = rec_span.first; i < rec_span.second; ++i) {
    if (auto v = bold_field(lines[i], "Score")) {
      // exact format: X/10
      const size_t slash = v->find("/10");
      if (slash == std::string::npos) {
        throw MalformedRecommendationError("Score line is not of the form X/10: " + *v);
      }
      const std::string digits = trim(v->substr(0, slash));
      int parsed = 0;
      try {
        parsed = std::stoi(digits);
      } catch (const std::exception&) {
        throw MalformedRecommendationError("unparseable score: " + *v);
      }
      if (parsed < 1 || parsed > 10 || digits != std::to_string(parsed)) {
        throw MalformedRecommendationError("score out of range 1-10: " + digits);
      }
      score = parsed;
    } else if (auto v = bold_field(lines[i], "Decision")) {
      decision = decision_label_from_string(*v);
    } else if (auto v = bold_field(lines[i], "Tier prediction")) {
      tier = stratum_from_string(to_lower(trim(*v)));
    } else if (auto v = bold_field(lines[i], "Reasoning")) {
      reasoning = *v;
    }
  }
  if (!score.has_value()) {
    throw MalformedRecommendationError("no \"**Score:** X/10\" line");
  }
  if (!decision.has_value()) {
    throw MalformedRecommendationError("no \"**Decision:**\" line");
  }
  if (!tier.has_value()) {
    throw MalformedRecommendationError("no \"**Tier prediction:**\" line");
  }
  result.review.score = *score;
  result.review.decision_label = *decision;
  result.review.tier_prediction = *tier;
  result.review.reasoning = reasoning;
  return result;
}

ReviewStream generate_baseline_review(const PaperRecord& paper, const std::string& model_id,
                                      SourceName slot, LlmGateway& gateway,
                                      const BaselineOptions& options) {
  if (slot != SourceName::BaselineA && slot != SourceName::BaselineB) {
    throw Error("baseline slot must be BaselineA or BaselineB");
  }
  auto [system_prompt, user_prompt] = render_flaw_finder_prompt(paper);

  ChatRequest request;
  request.model_id = model_id;
  request.system_prompt = std::move(system_prompt);
  request.user_prompt = std::move(user_prompt);
  request.temperature = 0.0;
  request.max_output_tokens = options.max_output_tokens;

  const int total_attempts = 1 + std::max(0, options.regen_attempts);
  std::string last_error;
  for (int attempt = 0; attempt < total_attempts; ++attempt) {
    CompleteOptions copts;
    if (attempt > 0) {
      // temperature-0 parse failures usually mean truncation; retry fresh
      // with a larger budget instead of re-reading the cached bad response
      copts.bypass_cache = true;
      request.max_output_tokens = options.regen_max_output_tokens;
    }
    const ChatResponse response = gateway.complete(request, copts);
    try {
      parse_review(response.text);
      ReviewStream stream;
      stream.source = slot;
      stream.content = response.text;  // raw text, exactly as returned
      return stream;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw ReviewRejectedError(paper.paper_id, total_attempts, last_error);
}

}  // namespace issuebench
