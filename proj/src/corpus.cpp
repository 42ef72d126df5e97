#include "issuebench/corpus.hpp"

#include <algorithm>

#include "issuebench/errors.hpp"

namespace issuebench {

namespace fs = std::filesystem;

const PaperRecord* Corpus::find_paper(const std::string& paper_id) const {
  auto it = std::lower_bound(papers.begin(), papers.end(), paper_id,
                             [](const PaperRecord& p, const std::string& id) {
                               return p.paper_id < id;
                             });
  if (it == papers.end() || it->paper_id != paper_id) return nullptr;
  return &*it;
}

const ReviewStream* Corpus::find_stream(const std::string& paper_id, SourceName source) const {
  auto it = streams.find({paper_id, source});
  return it == streams.end() ? nullptr : &it->second;
}

const ReviewStream* StreamSet::by_source(SourceName s) const {
  switch (s) {
    case SourceName::Human: return human;
    case SourceName::Candidate: return candidate;
    case SourceName::BaselineA: return baseline_a;
    case SourceName::BaselineB: return baseline_b;
  }
  return nullptr;
}

std::string stream_filename(SourceName source) {
  switch (source) {
    case SourceName::Candidate: return "candidate.md";
    case SourceName::BaselineA: return "baseline_a.md";
    case SourceName::BaselineB: return "baseline_b.md";
    case SourceName::Human: break;
  }
  throw Error("the Human source is a directory, not a single file");
}

namespace {

std::string read_required_text(const fs::path& path) {
  if (!fs::exists(path)) {
    throw MalformedDocumentError(path.string(), "file missing");
  }
  std::string text = read_text_file(path);
  if (trim(text).empty()) {
    throw MalformedDocumentError(path.string(), "file is empty");
  }
  return text;
}

std::optional<Json> read_optional_json(const fs::path& path) {
  if (!fs::exists(path)) return std::nullopt;
  return read_json_file(path);
}

HumanBundle load_human_bundle(const fs::path& paper_dir, const std::string& paper_id) {
  const fs::path reviews_path = paper_dir / kHumanReviewsFile;
  if (!fs::exists(reviews_path)) {
    throw MissingStreamError(paper_id, "Human", reviews_path.string());
  }
  HumanBundle bundle;
  bundle.reviews = read_json_file(reviews_path);
  if (!bundle.reviews.is_array() || bundle.reviews.empty()) {
    throw MalformedDocumentError(reviews_path.string(), "reviews must be a non-empty JSON array");
  }
  bundle.meta_review = read_optional_json(paper_dir / kHumanMetaReviewFile);
  bundle.decision = read_optional_json(paper_dir / kHumanDecisionFile);
  bundle.metadata = read_optional_json(paper_dir / kHumanMetadataFile);
  return bundle;
}

void load_text_stream(Corpus& corpus, const fs::path& paper_dir, const std::string& paper_id,
                      SourceName source, bool required) {
  const fs::path path = paper_dir / stream_filename(source);
  if (!fs::exists(path)) {
    if (required) {
      throw MissingStreamError(paper_id, std::string(to_string(source)), path.string());
    }
    return;
  }
  ReviewStream stream;
  stream.source = source;
  stream.content = read_required_text(path);
  corpus.streams.emplace(std::make_pair(paper_id, source), std::move(stream));
}

}  // namespace

Corpus load_corpus(const fs::path& root, const LoadOptions& options) {
  if (!fs::exists(root) || !fs::is_directory(root)) {
    throw Error("corpus root does not exist: " + root.string());
  }

  // Only the four strata folders are paper containers; anything else at the
  // top level (run artifacts, caches) is ignored.
  std::vector<std::pair<std::string, DecisionStratum>> paper_dirs;
  for (DecisionStratum stratum : kAllStrata) {
    const fs::path stratum_dir = root / std::string(to_string(stratum));
    if (!fs::exists(stratum_dir)) continue;
    for (const auto& entry : fs::directory_iterator(stratum_dir)) {
      if (entry.is_directory()) {
        paper_dirs.emplace_back(entry.path().filename().string(), stratum);
      }
    }
  }
  std::sort(paper_dirs.begin(), paper_dirs.end());
  for (size_t i = 1; i < paper_dirs.size(); ++i) {
    if (paper_dirs[i].first == paper_dirs[i - 1].first) {
      throw DuplicatePaperError(paper_dirs[i].first,
                                (root / std::string(to_string(paper_dirs[i].second)) /
                                 paper_dirs[i].first).string());
    }
  }

  Corpus corpus;
  for (const auto& [paper_id, stratum] : paper_dirs) {
    const fs::path paper_dir = root / std::string(to_string(stratum)) / paper_id;

    PaperRecord record;
    record.paper_id = paper_id;
    record.stratum = stratum;
    record.title = trim(read_required_text(paper_dir / kTitleFile));
    record.body_text = read_required_text(paper_dir / kBodyFile);

    ReviewStream human;
    human.source = SourceName::Human;
    human.content = load_human_bundle(paper_dir, paper_id);
    corpus.streams.emplace(std::make_pair(paper_id, SourceName::Human), std::move(human));

    load_text_stream(corpus, paper_dir, paper_id, SourceName::Candidate,
                     options.require_candidate);
    load_text_stream(corpus, paper_dir, paper_id, SourceName::BaselineA,
                     options.require_baselines);
    load_text_stream(corpus, paper_dir, paper_id, SourceName::BaselineB,
                     options.require_baselines);

    corpus.papers.push_back(std::move(record));
  }
  return corpus;
}

std::map<DecisionStratum, long long> stratum_counts(const Corpus& corpus) {
  std::map<DecisionStratum, long long> counts;
  for (DecisionStratum s : kAllStrata) counts[s] = 0;
  for (const PaperRecord& paper : corpus.papers) {
    ++counts[paper.stratum];
  }
  return counts;
}

StreamSet streams_for(const Corpus& corpus, const std::string& paper_id) {
  StreamSet set;
  for (SourceName source : kAllSources) {
    const ReviewStream* stream = corpus.find_stream(paper_id, source);
    if (stream == nullptr) {
      throw MissingStreamError(paper_id, std::string(to_string(source)),
                               source == SourceName::Human
                                   ? std::string(kHumanReviewsFile)
                                   : stream_filename(source));
    }
    switch (source) {
      case SourceName::Human: set.human = stream; break;
      case SourceName::Candidate: set.candidate = stream; break;
      case SourceName::BaselineA: set.baseline_a = stream; break;
      case SourceName::BaselineB: set.baseline_b = stream; break;
    }
  }
  return set;
}

Json corpus_to_json(const Corpus& corpus) {
  Json papers = Json::array();
  for (const PaperRecord& paper : corpus.papers) {
    Json p;
    p["paper_id"] = paper.paper_id;
    p["title"] = paper.title;
    p["stratum"] = to_string(paper.stratum);
    p["body_sha256"] = sha256_hex(paper.body_text);
    Json streams = Json::object();
    for (SourceName source : kAllSources) {
      const ReviewStream* stream = corpus.find_stream(paper.paper_id, source);
      if (stream == nullptr) continue;
      if (stream->is_bundle()) {
        const HumanBundle& bundle = stream->bundle();
        Json b;
        b["reviews"] = bundle.reviews;
        b["meta_review"] = bundle.meta_review.has_value() ? *bundle.meta_review : Json(nullptr);
        b["decision"] = bundle.decision.has_value() ? *bundle.decision : Json(nullptr);
        b["metadata"] = bundle.metadata.has_value() ? *bundle.metadata : Json(nullptr);
        streams[std::string(to_string(source))] = std::move(b);
      } else {
        streams[std::string(to_string(source))] = stream->text();
      }
    }
    p["streams"] = std::move(streams);
    papers.push_back(std::move(p));
  }
  Json out;
  out["papers"] = std::move(papers);
  return out;
}

}  // namespace issuebench
