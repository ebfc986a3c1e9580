#include <gtest/gtest.h>

#include <sstream>

#include "sam/pipeline.hpp"
#include "sam/worked_examples.hpp"
#include "test_util.hpp"

namespace pl = sam::pipeline;

namespace {
std::vector<pl::SegmentRecord> read(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return pl::read_dataset(in);
}

pl::MetricSpec ext(const std::string& name) {
  pl::MetricSpec m;
  m.kind = pl::MetricSpec::Kind::External;
  m.name = name;
  return m;
}
}  // namespace

TEST(LoadDataset, ParsesRecord) {
  auto ds = read(
      R"({"id":"ex4","hyp":"What is this amount of anger, I don’t understand!","ref":"What is this amount of happiness, I don’t understand!","human":2.0})"
      "\n");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].id, "ex4");
  EXPECT_EQ(ds[0].human_score, 2.0);
  EXPECT_FALSE(ds[0].source);
  EXPECT_TRUE(ds[0].external_scores.empty());
}

TEST(LoadDataset, OptionalFields) {
  auto ds = read(
      R"({"id":"a","src":"مرحبا","hyp":"x","ref":"y","ext":{"bertscore":0.9}})"
      "\n\n"
      R"({"id":"b","hyp":"x","ref":"y","human":null})"
      "\n");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(*ds[0].source, "مرحبا");
  EXPECT_DOUBLE_EQ(ds[0].external_scores.at("bertscore"), 0.9);
  EXPECT_FALSE(ds[1].human_score);
}

TEST(LoadDataset, EmptyFile) {
  TempFile f("", ".jsonl");
  EXPECT_TRUE(pl::load_dataset(f.path()).empty());
}

TEST(LoadDataset, MissingRefReportsLine) {
  try {
    read("{\"id\":\"a\",\"hyp\":\"x\",\"ref\":\"y\"}\n{\"id\":\"b\",\"hyp\":\"x\"}\n");
    FAIL();
  } catch (const sam::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("ref"), std::string::npos);
  }
}

TEST(LoadDataset, Errors) {
  EXPECT_THROW(read("{\"id\":\"a\",\"hyp\":\"x\",\"ref\":\"y\"}\n{\"id\":\"a\",\"hyp\":\"x\","
                    "\"ref\":\"y\"}\n"),
               sam::DatasetError);
  EXPECT_THROW(read("not json\n"), sam::ParseError);
  EXPECT_THROW(read(R"({"id":"a","hyp":"","ref":"y"})"), sam::ParseError);
  EXPECT_THROW(read(R"({"id":"a","hyp":"x","ref":"y","human":11})"), sam::RangeError);
  EXPECT_THROW(read(R"({"id":"a","hyp":"x","ref":"y","ext":{"m":2}})"), sam::RangeError);
  EXPECT_THROW(pl::load_dataset("/nonexistent.jsonl"), sam::IoError);
}

TEST(ParseMetricList, Variants) {
  auto m = pl::parse_metric_list("bleu, meteor,ext:bertscore");
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].kind, pl::MetricSpec::Kind::Bleu);
  EXPECT_EQ(m[2].name, "bertscore");
  EXPECT_FALSE(m[2].scores);

  TempFile f(R"({"metric":"bertscore","scores":{"a":0.5}})", ".json");
  auto withfile = pl::parse_metric_list("ext:bs=" + f.path());
  ASSERT_TRUE(withfile[0].scores);
  EXPECT_EQ(withfile[0].scores->scores.size(), 1u);

  EXPECT_THROW(pl::parse_metric_list("chrf"), std::invalid_argument);
  EXPECT_THROW(pl::parse_metric_list("bleu,bleu"), std::invalid_argument);
  EXPECT_THROW(pl::parse_metric_list(""), std::invalid_argument);
}

TEST(Evaluate, IdenticalRankingGivesKendallOne) {
  auto ds = read(R"({"id":"s1","hyp":"a b","ref":"c d","human":9,"ext":{"m":0.9}}
{"id":"s2","hyp":"a b","ref":"c d","human":2,"ext":{"m":0.1}}
{"id":"s3","hyp":"a b","ref":"c d","human":5,"ext":{"m":0.5}}
)");
  auto rep = pl::evaluate(ds, sam::worked_example_lexicon(), {ext("m")});
  ASSERT_EQ(rep.correlations.size(), 2u);
  EXPECT_FALSE(rep.correlations[0].sam_adjusted);
  EXPECT_TRUE(rep.correlations[1].sam_adjusted);
  EXPECT_EQ(rep.correlations[1].report.metric_name, "m+sam");
  EXPECT_DOUBLE_EQ(rep.correlations[1].report.kendall_tau, 1.0);
  EXPECT_EQ(rep.correlations[1].report.n_segments, 3u);
}

TEST(Evaluate, WorkedExamplesInsideDataset) {
  std::string jsonl;
  for (const auto& ex : sam::kWorkedExamples) {
    nlohmann::json row = {{"id", std::string(ex.label)},
                          {"hyp", std::string(ex.hypothesis)},
                          {"ref", std::string(ex.reference)},
                          {"human", 2.0},
                          {"ext", {{"paper", ex.base_score}}}};
    jsonl += row.dump() + "\n";
  }
  auto ds = read(jsonl);
  auto rep = pl::evaluate(ds, sam::load_lexicon(fixture("mini_lexicon.tsv")), {ext("paper")},
                          {.correlate = false});
  ASSERT_EQ(rep.per_segment.size(), 2u);
  EXPECT_NEAR(rep.per_segment[0].adjusted_score, 0.46, 0.005);
  EXPECT_NEAR(rep.per_segment[1].adjusted_score, 0.20, 0.005);
  EXPECT_TRUE(rep.correlations.empty());
}

TEST(Evaluate, CoverageAndExclusions) {
  auto ds = read(R"({"id":"s1","hyp":"good day","ref":"bad day","human":2,"ext":{"m":0.4}}
{"id":"s2","hyp":"good day","ref":"good day","human":9,"ext":{"m":0.9}}
{"id":"s3","hyp":"nice day","ref":"good day","human":7}
{"id":"s4","hyp":"fine day","ref":"good day","human":6,"ext":{"m":0.7}}
{"id":"s5","hyp":"a","ref":"b","ext":{"m":0.2}}
)");
  auto lex = sam::load_lexicon(fixture("sentiwords_subset.tsv"));
  auto rep = pl::evaluate(ds, lex, {pl::MetricSpec{}, ext("m")});
  const auto& sum = rep.dataset_summary;
  EXPECT_EQ(sum.segments, 5u);
  EXPECT_EQ(sum.human_scored, 4u);
  EXPECT_EQ(sum.coverage.at("bleu").scored, 5u);
  EXPECT_EQ(sum.coverage.at("m").scored, 4u);
  EXPECT_EQ(sum.coverage.at("m").excluded, 1u);
  for (const auto& c : rep.correlations) {
    auto expected = sum.human_scored - sum.coverage.at(c.metric).excluded;
    EXPECT_EQ(c.report.n_segments, expected) << c.report.metric_name;
  }
  for (const auto& row : rep.per_segment) EXPECT_LE(row.adjusted_score, row.base_score);
}

TEST(Evaluate, TooFewHumanScores) {
  auto ds = read(R"({"id":"s1","hyp":"a","ref":"b","human":3}
{"id":"s2","hyp":"a","ref":"b"}
)");
  EXPECT_THROW(pl::evaluate(ds, sam::worked_example_lexicon(), {pl::MetricSpec{}}),
               sam::DegenerateInputError);
  EXPECT_NO_THROW(pl::evaluate(ds, sam::worked_example_lexicon(), {pl::MetricSpec{}},
                               {.correlate = false}));
}

TEST(Evaluate, DegenerateCorrelationNamesMetric) {
  auto ds = read(R"({"id":"s1","hyp":"a","ref":"b","human":3,"ext":{"flat":0.5}}
{"id":"s2","hyp":"a","ref":"b","human":8,"ext":{"flat":0.5}}
)");
  try {
    pl::evaluate(ds, sam::worked_example_lexicon(), {ext("flat")});
    FAIL();
  } catch (const sam::DegenerateInputError& e) {
    EXPECT_NE(std::string(e.what()).find("flat"), std::string::npos);
  }
}

TEST(Evaluate, SamVariantSelection) {
  auto ds = read(R"({"id":"s1","hyp":"a","ref":"a","human":3,"ext":{"m":0.2}}
{"id":"s2","hyp":"a","ref":"a","human":8,"ext":{"m":0.6}}
)");
  auto rep = pl::evaluate(ds, sam::worked_example_lexicon(), {ext("m")},
                          {.with_sam = true, .without_sam = false});
  ASSERT_EQ(rep.correlations.size(), 1u);
  EXPECT_TRUE(rep.correlations[0].sam_adjusted);
}

TEST(Evaluate, DeterministicAndSegmentIndependent) {
  auto ds = pl::load_dataset(fixture("synthetic_corpus.jsonl"));
  auto lex = sam::load_lexicon(fixture("sentiwords_subset.tsv"));
  auto metrics = pl::parse_metric_list("bleu,meteor");
  auto a = pl::evaluate(ds, lex, metrics);
  auto b = pl::evaluate(ds, lex, metrics);
  EXPECT_EQ(pl::to_json(a).dump(), pl::to_json(b).dump());
  EXPECT_EQ(pl::to_text(a), pl::to_text(b));
  EXPECT_EQ(pl::to_correlations_csv(a), pl::to_correlations_csv(b));

  auto reduced = ds;
  reduced.erase(reduced.begin() + 7);
  auto c = pl::evaluate(reduced, lex, metrics);
  auto key = [](const pl::SegmentScore& s) { return s.id + "/" + s.metric_name; };
  std::map<std::string, pl::SegmentScore> full;
  for (const auto& row : a.per_segment) full[key(row)] = row;
  EXPECT_EQ(c.per_segment.size(), a.per_segment.size() - 2);
  for (const auto& row : c.per_segment) {
    const auto& ref = full.at(key(row));
    EXPECT_EQ(row.base_score, ref.base_score);
    EXPECT_EQ(row.penalty_p, ref.penalty_p);
    EXPECT_EQ(row.adjusted_score, ref.adjusted_score);
  }
}

TEST(Serialization, JsonShapeAndCsvMatrix) {
  auto ds = pl::load_dataset(fixture("synthetic_corpus.jsonl"));
  auto rep = pl::evaluate(ds, sam::load_lexicon(fixture("sentiwords_subset.tsv")),
                          pl::parse_metric_list("bleu"));
  auto j = pl::to_json(rep);
  EXPECT_EQ(j["dataset_summary"]["segments"], 60);
  EXPECT_EQ(j["per_segment"].size(), 60u);
  EXPECT_EQ(j["correlations"].size(), 2u);
  EXPECT_EQ(j["correlations"][1]["variant"], "sam");
  EXPECT_TRUE(j["sam"][0]["hyp_mismatches"].is_array());

  auto csv = pl::to_correlations_csv(rep);
  std::istringstream lines(csv);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  EXPECT_EQ(header, "metric,pearson_r,abs_pearson,kendall_tau,n_segments");
  EXPECT_EQ(row1.rfind("bleu,", 0), 0u);
  EXPECT_EQ(row2.rfind("bleu+sam,", 0), 0u);
}
