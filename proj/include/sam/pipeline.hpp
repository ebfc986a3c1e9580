#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sam/errors.hpp"
#include "sam/lexicon.hpp"
#include "sam/metrics.hpp"
#include "sam/sam.hpp"
#include "sam/stats.hpp"
#include "sam/textproc.hpp"

namespace sam::pipeline {

/// One dataset row. JSONL fields: id, src, hyp, ref, human, ext.
struct SegmentRecord {
  std::string id;
  std::optional<std::string> source;
  std::string hypothesis;
  std::string reference;
  std::optional<double> human_score;  // [1, 10]
  std::map<std::string, double> external_scores;
};

inline SegmentRecord parse_record(std::string_view line, std::size_t line_no) {
  using nlohmann::json;
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
  }
  if (!obj.is_object()) throw ParseError("record must be a JSON object", line_no);

  auto required_string = [&](const char* key) {
    if (!obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"", line_no);
    if (!obj[key].is_string()) {
      throw ParseError(std::string("field \"") + key + "\" must be a string", line_no);
    }
    auto value = obj[key].get<std::string>();
    if (value.empty()) throw ParseError(std::string("field \"") + key + "\" is empty", line_no);
    return value;
  };

  SegmentRecord rec;
  rec.id = required_string("id");
  rec.hypothesis = required_string("hyp");
  rec.reference = required_string("ref");
  if (obj.contains("src") && !obj["src"].is_null()) {
    if (!obj["src"].is_string()) throw ParseError("field \"src\" must be a string", line_no);
    rec.source = obj["src"].get<std::string>();
  }
  if (obj.contains("human") && !obj["human"].is_null()) {
    if (!obj["human"].is_number()) throw ParseError("field \"human\" must be a number", line_no);
    double h = obj["human"].get<double>();
    if (!(h >= 1.0 && h <= 10.0)) throw RangeError("human score outside [1,10]", line_no);
    rec.human_score = h;
  }
  if (obj.contains("ext") && !obj["ext"].is_null()) {
    if (!obj["ext"].is_object()) throw ParseError("field \"ext\" must be an object", line_no);
    for (const auto& [name, value] : obj["ext"].items()) {
      if (!value.is_number()) {
        throw ParseError("ext score \"" + name + "\" must be a number", line_no);
      }
      double v = value.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) {
        throw RangeError("ext score \"" + name + "\" outside [0,1]", line_no);
      }
      rec.external_scores[name] = v;
    }
  }
  return rec;
}

/// Reads a JSONL dataset; blank lines are skipped. Ids must be unique.
inline std::vector<SegmentRecord> read_dataset(std::istream& in) {
  std::vector<SegmentRecord> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (sam::detail::trim(line).empty()) continue;
    auto rec = parse_record(line, line_no);
    if (!ids.insert(rec.id).second) {
      throw DatasetError("duplicate segment id '" + rec.id + "' at line " +
                         std::to_string(line_no));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<SegmentRecord> load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path);
  return read_dataset(in);
}

/// A metric chosen for evaluation. External metrics read scores from `scores`
/// when given, otherwise from each record's `ext` object.
struct MetricSpec {
  enum class Kind { Bleu, Meteor, External };
  Kind kind = Kind::Bleu;
  std::string name = "bleu";
  std::optional<ExternalScores> scores;
};

/// Parses "bleu,meteor,ext:NAME=FILE,ext:NAME". Files are loaded eagerly.
inline std::vector<MetricSpec> parse_metric_list(std::string_view list) {
  std::vector<MetricSpec> out;
  std::set<std::string> names;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    std::string item(sam::detail::trim(
        list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start)));
    start = comma == std::string_view::npos ? list.size() + 1 : comma + 1;
    if (item.empty()) continue;
    MetricSpec spec;
    if (item == "bleu") {
      spec.kind = MetricSpec::Kind::Bleu;
      spec.name = "bleu";
    } else if (item == "meteor") {
      spec.kind = MetricSpec::Kind::Meteor;
      spec.name = "meteor";
    } else if (item.rfind("ext:", 0) == 0) {
      spec.kind = MetricSpec::Kind::External;
      std::string rest = item.substr(4);
      auto eq = rest.find('=');
      spec.name = rest.substr(0, eq);
      if (spec.name.empty()) throw std::invalid_argument("empty external metric name");
      if (eq != std::string::npos) spec.scores = load_external_scores(rest.substr(eq + 1));
    } else {
      throw std::invalid_argument("unknown metric '" + item + "'");
    }
    if (!names.insert(spec.name).second) {
      throw std::invalid_argument("metric listed twice: " + spec.name);
    }
    out.push_back(std::move(spec));
  }
  if (out.empty()) throw std::invalid_argument("no metrics selected");
  return out;
}

struct SegmentScore {
  std::string id;
  std::string metric_name;
  double base_score = 0.0;
  double penalty_p = 0.0;
  double adjusted_score = 0.0;
};

/// SAM analysis of one segment; metric independent.
struct SegmentSam {
  std::string id;
  double s_h = 0.0;
  double s_r = 0.0;
  double penalty_p = 0.0;
  std::vector<WordSentiment> hyp_detail;
  std::vector<WordSentiment> ref_detail;
};

struct CorrelationEntry {
  std::string metric;  // base metric name
  bool sam_adjusted = false;
  stats::CorrelationReport report;  // report.metric_name is "<metric>" or "<metric>+sam"
};

struct MetricCoverage {
  std::size_t scored = 0;    // segments with a base score
  std::size_t excluded = 0;  // human-scored segments lacking a base score
};

struct DatasetSummary {
  std::size_t segments = 0;
  std::size_t human_scored = 0;
  std::map<std::string, MetricCoverage> coverage;
};

struct EvaluationReport {
  std::vector<SegmentSam> sam;
  std::vector<SegmentScore> per_segment;
  std::vector<CorrelationEntry> correlations;
  DatasetSummary dataset_summary;
  std::vector<std::string> warnings;
};

struct EvaluateOptions {
  bool correlate = true;
  bool with_sam = true;     // emit adjusted-score correlations
  bool without_sam = true;  // emit raw-score correlations
};

namespace detail {

template <typename Fn>
auto annotate(const std::string& context, Fn&& fn) {
  try {
    return fn();
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(context + ": " + e.what());
  } catch (const DimensionError& e) {
    throw DimensionError(context + ": " + e.what());
  }
}

}  // namespace detail

/// Scores every segment with every metric, applies the SAM adjustment and,
/// unless disabled, correlates raw and adjusted scores with human scores.
inline EvaluationReport evaluate(const std::vector<SegmentRecord>& dataset,
                                 const SentimentLexicon& lexicon,
                                 const std::vector<MetricSpec>& metrics,
                                 const EvaluateOptions& options = {},
                                 const Analyzer& analyzer = Analyzer()) {
  EvaluationReport report;
  report.dataset_summary.segments = dataset.size();
  for (const auto& rec : dataset) {
    if (rec.human_score) ++report.dataset_summary.human_scored;
  }
  if (options.correlate && report.dataset_summary.human_scored < 2) {
    throw DegenerateInputError("need at least 2 human-scored segments, have " +
                               std::to_string(report.dataset_summary.human_scored));
  }

  report.sam.reserve(dataset.size());
  for (const auto& rec : dataset) {
    SamResult r = score_tokens(analyzer.analyze(tokenize(rec.hypothesis)),
                               analyzer.analyze(tokenize(rec.reference)), 1.0, lexicon);
    report.sam.push_back(SegmentSam{rec.id, r.s_h, r.s_r, r.penalty_p,
                                    std::move(r.hyp_detail), std::move(r.ref_detail)});
  }

  struct Series {
    std::vector<double> raw, adjusted, human;
  };
  std::vector<Series> series(metrics.size());

  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const auto& spec = metrics[m];
    auto& cov = report.dataset_summary.coverage[spec.name];
    for (std::size_t s = 0; s < dataset.size(); ++s) {
      const auto& rec = dataset[s];
      std::optional<double> base;
      ScoreFlags flags;
      switch (spec.kind) {
        case MetricSpec::Kind::Bleu:
          base = bleu_sentence(rec.hypothesis, rec.reference, &flags);
          break;
        case MetricSpec::Kind::Meteor:
          base = meteor_lite(rec.hypothesis, rec.reference, &flags);
          break;
        case MetricSpec::Kind::External:
          if (spec.scores) {
            auto it = spec.scores->scores.find(rec.id);
            if (it != spec.scores->scores.end()) base = it->second.value;
          } else {
            auto it = rec.external_scores.find(spec.name);
            if (it != rec.external_scores.end()) base = it->second;
          }
          break;
      }
      if (flags.empty_input) {
        report.warnings.push_back(spec.name + ": empty tokenized input for segment '" +
                                  rec.id + "', scored 0");
      }
      if (!base) {
        if (rec.human_score) ++cov.excluded;
        continue;
      }
      ++cov.scored;
      const double p = report.sam[s].penalty_p;
      const double adjusted = adjust(*base, p);
      report.per_segment.push_back(SegmentScore{rec.id, spec.name, *base, p, adjusted});
      if (rec.human_score) {
        series[m].raw.push_back(*base);
        series[m].adjusted.push_back(adjusted);
        series[m].human.push_back(*rec.human_score);
      }
    }
    if (spec.scores) {
      for (const auto& w : spec.scores->warnings) report.warnings.push_back(w);
    }
  }

  if (!options.correlate) return report;

  for (std::size_t m = 0; m < metrics.size(); ++m) {
    const auto& name = metrics[m].name;
    const auto& s = series[m];
    if (options.without_sam) {
      auto r = detail::annotate(name, [&] { return stats::correlate(name, s.raw, s.human); });
      report.correlations.push_back({name, false, std::move(r)});
    }
    if (options.with_sam) {
      auto r = detail::annotate(name + "+sam", [&] {
        return stats::correlate(name + "+sam", s.adjusted, s.human);
      });
      report.correlations.push_back({name, true, std::move(r)});
    }
  }
  return report;
}

// Serialization.

inline nlohmann::ordered_json detail_to_json(const std::vector<WordSentiment>& detail) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : detail) {
    arr.push_back({{"lemma", d.lemma},
                   {"pos", std::string(1, to_char(d.pos))},
                   {"score", d.score},
                   {"weight", d.weight}});
  }
  return arr;
}

inline nlohmann::ordered_json to_json(const EvaluationReport& report) {
  using nlohmann::ordered_json;
  ordered_json out;
  ordered_json summary;
  summary["segments"] = report.dataset_summary.segments;
  summary["human_scored"] = report.dataset_summary.human_scored;
  ordered_json coverage = ordered_json::object();
  for (const auto& [name, cov] : report.dataset_summary.coverage) {
    coverage[name] = {{"scored", cov.scored}, {"excluded", cov.excluded}};
  }
  summary["coverage"] = coverage;
  out["dataset_summary"] = summary;

  ordered_json sam = ordered_json::array();
  for (const auto& s : report.sam) {
    sam.push_back({{"id", s.id},
                   {"s_h", s.s_h},
                   {"s_r", s.s_r},
                   {"penalty_p", s.penalty_p},
                   {"hyp_mismatches", detail_to_json(s.hyp_detail)},
                   {"ref_mismatches", detail_to_json(s.ref_detail)}});
  }
  out["sam"] = sam;

  ordered_json rows = ordered_json::array();
  for (const auto& r : report.per_segment) {
    rows.push_back({{"id", r.id},
                    {"metric", r.metric_name},
                    {"base_score", r.base_score},
                    {"penalty_p", r.penalty_p},
                    {"adjusted_score", r.adjusted_score}});
  }
  out["per_segment"] = rows;

  ordered_json corr = ordered_json::array();
  for (const auto& c : report.correlations) {
    corr.push_back({{"metric", c.metric},
                    {"variant", c.sam_adjusted ? "sam" : "raw"},
                    {"name", c.report.metric_name},
                    {"pearson_r", c.report.pearson_r},
                    {"abs_pearson", c.report.abs_pearson},
                    {"kendall_tau", c.report.kendall_tau},
                    {"n_segments", c.report.n_segments}});
  }
  out["correlations"] = corr;
  out["warnings"] = report.warnings;
  return out;
}

inline std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

/// Aligned plain-text rendering; values rounded to 3 decimals.
inline std::string to_text(const EvaluationReport& report) {
  std::ostringstream out;
  const auto& sum = report.dataset_summary;
  out << "segments: " << sum.segments << "  human-scored: " << sum.human_scored << "\n";
  for (const auto& [name, cov] : sum.coverage) {
    out << "  " << std::left << std::setw(16) << name << " scored " << cov.scored
        << "  excluded " << cov.excluded << "\n";
  }
  out << "\n"
      << std::left << std::setw(20) << "id" << std::setw(16) << "metric" << std::right
      << std::setw(8) << "base" << std::setw(8) << "p" << std::setw(10) << "adjusted"
      << "\n";
  for (const auto& r : report.per_segment) {
    out << std::left << std::setw(20) << r.id << std::setw(16) << r.metric_name
        << std::right << std::setw(8) << fixed3(r.base_score) << std::setw(8)
        << fixed3(r.penalty_p) << std::setw(10) << fixed3(r.adjusted_score) << "\n";
  }
  if (!report.correlations.empty()) {
    out << "\n"
        << std::left << std::setw(20) << "metric" << std::right << std::setw(10)
        << "pearson" << std::setw(10) << "|r|" << std::setw(10) << "kendall"
        << std::setw(6) << "n" << "\n";
    for (const auto& c : report.correlations) {
      out << std::left << std::setw(20) << c.report.metric_name << std::right
          << std::setw(10) << fixed3(c.report.pearson_r) << std::setw(10)
          << fixed3(c.report.abs_pearson) << std::setw(10) << fixed3(c.report.kendall_tau)
          << std::setw(6) << c.report.n_segments << "\n";
    }
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  return out.str();
}

/// Metric x correlation-type matrix for heatmaps.
inline std::string to_correlations_csv(const EvaluationReport& report) {
  std::ostringstream out;
  out << "metric,pearson_r,abs_pearson,kendall_tau,n_segments\n";
  char buf[160];
  for (const auto& c : report.correlations) {
    std::snprintf(buf, sizeof buf, "%s,%.6f,%.6f,%.6f,%zu\n", c.report.metric_name.c_str(),
                  c.report.pearson_r, c.report.abs_pearson, c.report.kendall_tau,
                  c.report.n_segments);
    out << buf;
  }
  return out.str();
}

}  // namespace sam::pipeline
