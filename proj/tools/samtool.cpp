// samtool: SAM-adjusted MT metric scoring and correlation with human scores.
//
//   samtool score     --dataset D --lexicon L [--metrics bleu,meteor,ext:NAME=FILE] --out DIR
//   samtool correlate --dataset D --lexicon L [--metrics ...] --out DIR [--with-sam] [--without-sam]
//   samtool selftest  [--lexicon L]
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sam/lexicon.hpp"
#include "sam/pipeline.hpp"
#include "sam/sam.hpp"
#include "sam/textproc.hpp"
#include "sam/worked_examples.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonArgs {
  std::string dataset;
  std::string lexicon;
  std::string metrics = "bleu,meteor";
  std::string out;
  std::string exceptions;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--dataset", args.dataset, "JSONL dataset")->required();
  cmd->add_option("--lexicon", args.lexicon, "lexicon file (lemma#pos<TAB>score)")->required();
  cmd->add_option("--metrics", args.metrics, "bleu,meteor,ext:NAME=FILE,ext:NAME");
  cmd->add_option("--out", args.out, "output directory")->required();
  cmd->add_option("--exceptions", args.exceptions, "lemma exception table override");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sam::IoError(path.string());
  out << content;
  if (!out) throw sam::IoError(path.string());
}

int run_pipeline(const CommonArgs& args, const sam::pipeline::EvaluateOptions& options) {
  std::vector<sam::pipeline::MetricSpec> metrics;
  try {
    metrics = sam::pipeline::parse_metric_list(args.metrics);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  auto lexicon = sam::load_lexicon(args.lexicon);
  std::optional<sam::LemmaExceptions> exceptions;
  if (!args.exceptions.empty()) exceptions = sam::LemmaExceptions::load(args.exceptions);
  sam::Analyzer analyzer(exceptions ? *exceptions : sam::LemmaExceptions::builtin());

  auto dataset = sam::pipeline::load_dataset(args.dataset);
  auto report = sam::pipeline::evaluate(dataset, lexicon, metrics, options, analyzer);

  std::filesystem::path out(args.out);
  std::filesystem::create_directories(out);
  write_file(out / "report.json", sam::pipeline::to_json(report).dump(2) + "\n");
  write_file(out / "report.txt", sam::pipeline::to_text(report));
  if (options.correlate) {
    write_file(out / "correlations.csv", sam::pipeline::to_correlations_csv(report));
  }
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "wrote " << (out / "report.json").string() << "\n";
  return 0;
}

int run_selftest(const std::string& lexicon_path) {
  auto lexicon = lexicon_path.empty() ? sam::worked_example_lexicon()
                                      : sam::load_lexicon(lexicon_path);
  std::printf("%-9s %-14s %-16s %7s %7s %7s %6s %9s  %s\n", "example", "w_h", "w_r", "S_h",
              "S_r", "p", "C_hr", "Score+SAM", "status");
  bool ok = true;
  for (const auto& ex : sam::kWorkedExamples) {
    auto r = sam::score_pair(ex.hypothesis, ex.reference, ex.base_score, lexicon);
    auto words = [](const std::vector<sam::WordSentiment>& detail) {
      std::string s;
      for (const auto& d : detail) {
        if (!s.empty()) s += ",";
        s += d.lemma + "#" + sam::to_char(d.pos);
      }
      return s.empty() ? std::string("-") : s;
    };
    const bool pass = std::abs(r.penalty_p - ex.expected_penalty) <= 0.0005 &&
                      std::abs(r.adjusted_score - ex.expected_adjusted) <= 0.005;
    ok = ok && pass;
    std::printf("%-9s %-14s %-16s %7.3f %7.3f %7.4f %6.2f %9.2f  %s\n",
                std::string(ex.label).c_str(), words(r.hyp_detail).c_str(),
                words(r.ref_detail).c_str(), r.s_h, r.s_r, r.penalty_p, r.base_score,
                r.adjusted_score, pass ? "ok" : "FAIL");
  }
  return ok ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sentiment-aware adjustment of MT quality scores"};
  app.require_subcommand(1);

  CommonArgs score_args;
  auto* score = app.add_subcommand("score", "score segments, with and without SAM");
  add_common(score, score_args);

  CommonArgs corr_args;
  bool with_sam = false;
  bool without_sam = false;
  auto* correlate = app.add_subcommand("correlate", "correlate scores with human judgements");
  add_common(correlate, corr_args);
  correlate->add_flag("--with-sam", with_sam, "report SAM-adjusted correlations");
  correlate->add_flag("--without-sam", without_sam, "report raw correlations");

  std::string selftest_lexicon;
  auto* selftest = app.add_subcommand("selftest", "reproduce the worked SAM examples");
  selftest->add_option("--lexicon", selftest_lexicon, "lexicon file (default: built-in)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*score) {
      sam::pipeline::EvaluateOptions options;
      options.correlate = false;
      return run_pipeline(score_args, options);
    }
    if (*correlate) {
      sam::pipeline::EvaluateOptions options;
      if (with_sam || without_sam) {
        options.with_sam = with_sam;
        options.without_sam = without_sam;
      }
      return run_pipeline(corr_args, options);
    }
    if (*selftest) return run_selftest(selftest_lexicon);
  } catch (const sam::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
