#include "issuebench/prompts.hpp"

namespace issuebench::prompts {

const std::string_view kFlawFinderSystem =
    "You are a rigorous ML/AI research reviewer with deep subfield expertise. You are fair, "
    "technical, and evidence-driven. Your task is simple: find the most important flaws, risks, "
    "unsupported claims, missing validations, and domain-level issues in the paper. Do not be "
    "hostile for the sake of it. Do not assume generic benchmark criticisms are sufficient; "
    "actively consider domain-specific concerns that a specialist would raise. Support your "
    "points with concrete evidence from the paper when possible.";

const std::string_view kFlawFinderUserTemplate =
    R"__(Review this ML/AI paper with one goal: find the most decision-relevant flaws.

Important instructions:
- Be fair, technical, and domain-aware.
- Look for domain-specific issues that a generic reviewer might miss.
- Focus on unsupported claims, hidden assumptions, weak baselines, edge cases, confounds, missing validations, and incorrect or overstated statements.
- Do not use any historical review notes or external checklists.

Return markdown with these sections exactly:
- ## CORE CLAIM
- ## MAIN RISKS
- ## DOMAIN-SPECIFIC CONCERNS
- ## MISSING VALIDATION
- ## SHARPEST FLAW
- ## ACCEPTANCE RECOMMENDATION
- ## POINTERS

For ## POINTERS:
- Output 8-20 bullets.
- Each bullet must contain exactly one concrete criticism or risk.
- Do not include praise.
- Do not merge multiple issues into one bullet.

In ## ACCEPTANCE RECOMMENDATION use this exact format:
**Score:** X/10
**Decision:** Accept / Borderline / Reject / Strong Reject
**Tier prediction:** oral / accepted / conditional / rejected
**Reasoning:** <1 sentence>

Paper title: {title}

Paper text:
{paper_text})__";

const std::string_view kJudgeSystem =
    "You are a meticulous research-paper review meta-judge. You exhaustively extract "
    "decision-relevant review concerns from four blinded review sources (M1, M2, M3, M4), then "
    "build a normalized union-of-issues matrix. Prefer granular, non-overlapping issue rows "
    "over coarse summaries. Stay domain-agnostic: apply the same standards regardless of field "
    "or venue. Score sources only by content quality — do not infer provider identity from "
    "labels or writing style. Return only valid JSON.";

const std::string_view kJudgeUserTemplate =
    R"__(Create an EXHAUSTIVE judged union-of-issues matrix from these sources.

You are comparing whether each blinded source (M1, M2, M3, M4) identified each issue.
Your goal is maximum recall of distinct, decision-relevant concerns — not a short executive summary.
Use ONLY the labels M1, M2, M3, M4 in your JSON — never substitute provider or method names.

━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
PHASE 1 — EXTRACT (do this mentally before writing JSON)
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
For EACH source separately (M1, M2, M3, M4):
  1. List every distinct concern, weakness, question, or requested evidence.
  2. Include both major flaws and secondary concerns (presentation, citations, scope gaps).
  3. Do NOT merge related items yet — keep them separate at this stage.
  4. For M1: note reviewer identifiers when available and whether a meta-review or decision record
     indicates the concern was later addressed.
  5. For M2/M3/M4: cite specific evidence from the review when available.


Coverage checklist — scan ALL sources for issues in each category before deduplicating:
  A. Core claims and mechanism validity (theory vs practice, internal consistency, causal attribution)
  B. Method design (assumptions, design choices, implementation fidelity)
  C. Comparison fairness (baseline choice, fidelity, missing alternatives, matched resources)
  D. Controls and ablations (component isolation, simpler alternatives, confound removal)
  E. Evaluation scope (datasets, settings, populations, generalization, external validity)
  F. Metrics and costs (primary vs proxy metrics, efficiency, resource use, strength of claims)
  G. Statistical rigor (sample sizes, variance, uncertainty, significance, replication and anything else relevant to the paper)
  H. Validity of proxies and intermediate signals (calibration, measurement, diagnostic evidence)
  I. Interpretability, failure modes, and edge cases
  J. Novelty, related work, and citation accuracy
  K. Reproducibility, deployment, and practical applicability
  L. Data integrity (leakage, overlap, selection bias, annotation quality)
  M. Presentation clarity (writing, figures, tables, overclaiming)
  N. Anything else relevant to the paper.


━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
PHASE 2 — UNION (build the matrix rows)
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
  1. Take the union of all Phase-1 items across all sources.
  2. Merge ONLY when two items are truly the same concern (same root cause, same missing evidence
     or experiment). Do NOT merge merely because issues are related or thematically adjacent.
     When in doubt, keep separate rows rather than combine.
  3. Include every distinct concern raised by any source. Row count should reflect source breadth —
     do not collapse many distinct concerns into a small summary set.
  4. Each row must be a real decision-relevant review concern, not praise.
  5. Order rows by severity: foundational validity issues first, then experimental or evidentiary
     gaps, then secondary or presentation issues.

━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
PHASE 3 — SCORE each source per row
━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━━
Use exactly these source statuses: "Caught", "Partial", "Missed".
Use exactly these best_rigour values: "M1", "M2", "M3", "M4".

  - "Caught"     = source clearly identified the issue with useful specificity.
  - "Partial"    = source gestured at it but missed key mechanism, evidence, or implication.
  - "Missed"     = source did not identify it.

  - best_rigour  = the single source with the most detailed, evidence-backed, actionable treatment.
  - Score by content quality only. Do not favor length, verbosity, or apparent model identity.
  - Notes should be 1–3 sentences — specific but not essay-length.
  - In notes, refer to sources as M1/M2/M3/M4 only (never "human", "GPT", "Claude", etc.).

Return ONLY valid JSON with this schema:
{
  "paper_title": "...",
  "decision": "...",
  "summary": {
    "total_issues": 0,
    "best_rigour_counts": {"M1": 0, "M2": 0, "M3": 0, "M4": 0},
    "short_takeaway": "..."
  },
  "issues": [
    {
      "topic": "...",
      "severity": "core|important|secondary",
      "m1": {"status": "Caught|Partial|Missed", "note": "..."},
      "m2": {"status": "Caught|Partial|Missed", "note": "..."},
      "m3": {"status": "Caught|Partial|Missed", "note": "..."},
      "m4": {"status": "Caught|Partial|Missed", "note": "..."},
      "best_rigour": "M1|M2|M3|M4"
    }
  ],
  "analysis": {
    "what_m1_added": "...",
    "what_m2_added": "...",
    "what_m3_added": "...",
    "what_m4_added": "...",
    "prompt_lessons": ["...", "..."]
  }
}

Sources:
{payload_json})__";

}  // namespace issuebench::prompts
