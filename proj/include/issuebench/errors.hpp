#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace issuebench {

/// Base class for every error this library raises deliberately.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- corpus loading ---

class MissingStreamError : public Error {
 public:
  MissingStreamError(std::string paper_id, std::string source, std::string path)
      : Error("missing stream " + source + " for paper " + paper_id + " (expected " + path + ")"),
        paper_id(std::move(paper_id)),
        source(std::move(source)),
        path(std::move(path)) {}
  std::string paper_id;
  std::string source;
  std::string path;
};

class DuplicatePaperError : public Error {
 public:
  explicit DuplicatePaperError(std::string paper_id, std::string path = {})
      : Error("duplicate paper id " + paper_id + (path.empty() ? "" : " at " + path)),
        paper_id(std::move(paper_id)) {}
  std::string paper_id;
};

class MalformedDocumentError : public Error {
 public:
  MalformedDocumentError(std::string path, const std::string& reason)
      : Error("malformed document " + path + ": " + reason), path(std::move(path)) {}
  std::string path;
};

// --- gateway ---

class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& what) : Error("provider error: " + what) {}
};

class BudgetExceededError : public Error {
 public:
  explicit BudgetExceededError(long long cap)
      : Error("provider call budget exceeded (cap " + std::to_string(cap) + ")"), cap(cap) {}
  long long cap;
};

// --- baseline review parsing ---

class MissingSectionError : public Error {
 public:
  explicit MissingSectionError(std::string section)
      : Error("review is missing required section \"" + section + "\""),
        section(std::move(section)) {}
  std::string section;
};

class MalformedRecommendationError : public Error {
 public:
  explicit MalformedRecommendationError(const std::string& detail)
      : Error("malformed acceptance recommendation: " + detail) {}
};

class ReviewRejectedError : public Error {
 public:
  ReviewRejectedError(std::string paper_id, int attempts, const std::string& last_error)
      : Error("review for paper " + paper_id + " rejected after " + std::to_string(attempts) +
              " attempts; last error: " + last_error),
        paper_id(std::move(paper_id)),
        attempts(attempts) {}
  std::string paper_id;
  int attempts;
};

// --- judge ---

/// Machine-readable location of the first schema failure in a judge response.
class SchemaViolationError : public Error {
 public:
  SchemaViolationError(std::string path, std::string reason)
      : Error("schema violation at " + path + ": " + reason),
        path(std::move(path)),
        reason(std::move(reason)) {}
  std::string path;
  std::string reason;
};

class JudgeRejectedError : public Error {
 public:
  JudgeRejectedError(std::string paper_id, int attempts, const std::string& last_error)
      : Error("judge verdict for paper " + paper_id + " rejected after " +
              std::to_string(attempts) + " attempts; last error: " + last_error),
        paper_id(std::move(paper_id)),
        attempts(attempts) {}
  std::string paper_id;
  int attempts;
};

class MapMismatchError : public Error {
 public:
  MapMismatchError(const std::string& expected, const std::string& got)
      : Error("blind map is for paper " + got + " but verdict belongs to " + expected) {}
};

// --- metrics ---

class EmptySliceError : public Error {
 public:
  explicit EmptySliceError(const std::string& what) : Error("empty slice: " + what) {}
};

class EmptyCorpusError : public Error {
 public:
  EmptyCorpusError() : Error("corpus matrix contains no papers") {}
};

// --- pipeline ---

class IncompleteRunError : public Error {
 public:
  explicit IncompleteRunError(std::vector<std::string> missing)
      : Error(missing.empty()
                  ? std::string("run incomplete: no judged matrices to report on")
                  : "run incomplete: " + std::to_string(missing.size()) + " paper(s) not judged"),
        missing(std::move(missing)) {}
  std::vector<std::string> missing;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

}  // namespace issuebench
