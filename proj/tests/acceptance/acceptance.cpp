/*
 * Copyright 2026 The opbias Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opbias.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace opbias;

constexpr StanceLabel S = StanceLabel::Support;
constexpr StanceLabel A = StanceLabel::Against;
constexpr StanceLabel N = StanceLabel::Neutral;

// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " (got %.17g, want %.17g, tol %g)", got, want, tol);
      failures.push_back(what + buf);
    }
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<void(Checker&)> body;
};

// Two-opinion scenario table. Opinion A -> support, B -> against,
// C -> neutral; the source holds {A, B}.
void scenario_table(Checker& c) {
  struct Row {
    const char* name;
    OpinionSet summary;
    double p, r, f1;
  };
  const OpinionSet source{S, A};
  const Row rows[] = {
      {"good precision, weak recall", {S}, 1.0, 0.5, 2.0 / 3.0},
      {"good precision, good recall", {S, A}, 1.0, 1.0, 1.0},
      {"weak precision, weak recall", {S, N}, 0.5, 0.5, 0.5},
      {"bad precision, bad recall", {N}, 0.0, 0.0, 0.0},
  };
  for (const Row& row : rows) {
    const DiversityScore s = diversity_score(source, row.summary);
    c.near(s.precision, row.p, 1e-9, std::string(row.name) + " precision");
    c.near(s.recall, row.r, 1e-9, std::string(row.name) + " recall");
    c.near(s.f1, row.f1, 1e-9, std::string(row.name) + " f1");
  }
}

void worked_example(Checker& c) {
  const OpinionSet source{S, A, N};
  const DiversityScore chatgpt = diversity_score(source, {S, A});
  const DiversityScore pegasus = diversity_score(source, {N});
  c.expect(chatgpt.precision == 1.0 && chatgpt.recall == 2.0 / 3.0, "ChatGPT P=2/2 R=2/3");
  c.expect(chatgpt.f1 == 0.8, "ChatGPT F1 == 0.8");
  c.expect(pegasus.precision == 1.0 && pegasus.recall == 1.0 / 3.0, "Pegasus P=1/1 R=1/3");
  c.expect(pegasus.f1 == 0.5, "Pegasus F1 == 0.5");
}

void oracle_equivalence(Checker& c) {
  int pairs = 0;
  for (unsigned src = 1; src < 8; ++src) {
    for (unsigned sum = 0; sum < 8; ++sum) {
      OpinionSet a(OpinionSource::FromSources), b(OpinionSource::FromSummary);
      std::vector<std::string> an, bn;
      for (StanceLabel l : kAllStances) {
        if (src & (1u << index_of(l))) {
          a.insert(l);
          an.emplace_back(to_string(l));
        }
        if (sum & (1u << index_of(l))) {
          b.insert(l);
          bn.emplace_back(to_string(l));
        }
      }
      const DiversityScore got = diversity_score(a, b);
      const oracle::SetScores want = oracle::brute_force_prf(an, bn);
      const std::string tag = "pair " + std::to_string(src) + "/" + std::to_string(sum);
      c.expect(got.precision == want.precision.to_double(), tag + " precision");
      c.expect(got.recall == want.recall.to_double(), tag + " recall");
      c.expect(got.f1 == want.f1.to_double(), tag + " f1");
      ++pairs;
    }
  }
  c.expect(pairs == 56, "56 pairs enumerated");
}

void numeric_properties(Checker& c) {
  std::mt19937_64 rng(424242);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> expo(-8.0, 8.0);
  auto random_vec = [&](std::size_t dim) {
    std::vector<double> v(dim);
    const double scale = std::pow(10.0, expo(rng));
    for (double& x : v) x = g(rng) * scale;
    return v;
  };

  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = 1 + rng() % 768;
    const auto a = random_vec(dim);
    const auto b = random_vec(dim);
    c.near(cosine_similarity(a, a), 1.0, 1e-9, "self-similarity");
    const double alpha = std::pow(10.0, expo(rng)), beta = std::pow(10.0, expo(rng));
    auto as = a, bs = b;
    for (double& x : as) x *= alpha;
    for (double& x : bs) x *= beta;
    c.near(cosine_similarity(as, bs), cosine_similarity(a, b), 1e-9, "scale invariance");
  }

  for (int i = 0; i < 200; ++i) {
    std::vector<std::vector<double>> vs(1 + rng() % 50);
    const std::size_t dim = 1 + rng() % 64;
    for (auto& v : vs) v = random_vec(dim);
    const auto base = mean_pool(vs);
    const auto reference = oracle::extended_mean(vs);
    for (std::size_t k = 0; k < dim; ++k) {
      c.near(base[k], reference[k], 1e-12 * std::max(1.0, std::abs(reference[k])),
             "pooled mean vs extended precision");
    }
    std::shuffle(vs.begin(), vs.end(), rng);
    c.expect(mean_pool(vs) == base, "pooling permutation invariance (bitwise)");
  }

  for (int i = 0; i < 1000; ++i) {
    std::vector<StanceLabel> labels(1 + rng() % 300);
    for (auto& l : labels) l = kAllStances[rng() % 3];
    const auto d = stance_distribution(labels);
    c.near(d[S] + d[A] + d[N], 1.0, 1e-12, "distribution sums to 1");
  }

  std::gamma_distribution<double> gam(1.0, 1.0);
  auto random_dist = [&] {
    StanceDistribution d;
    double s = gam(rng), a = gam(rng), n = gam(rng);
    const double t = s + a + n;
    d.proportions = {s / t, a / t, n / t};
    d.unit_count = 1;
    return d;
  };
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_dist(), q = random_dist(), r = random_dist();
    const double pq = distribution_distance(p, q);
    c.expect(pq == distribution_distance(q, p), "total variation symmetry");
    c.expect(distribution_distance(p, r) <= pq + distribution_distance(q, r) + 1e-12,
             "total variation triangle inequality");
  }
}

RunConfig synthetic_config() {
  RunConfig cfg;
  cfg.corpus_path = "corpus.jsonl";
  cfg.summaries = {{"alpha", "summaries_alpha.jsonl"}, {"beta", "summaries_beta.jsonl"}};
  cfg.annotations_path = "annotations.jsonl";
  cfg.gold_lengths_path = "gold_lengths.jsonl";
  return cfg;
}

void end_to_end_golden(Checker& c) {
  const fs::path saved = fs::current_path();
  fs::current_path(OPBIAS_SOURCE_DIR "/data/synthetic");
  testing::TempDir run1, run2;
  try {
    const EvaluationReport report = run_evaluation(synthetic_config());
    emit_report(report, run1.path().string());
    emit_report(run_evaluation(synthetic_config()), run2.path().string());

    const fs::path golden = OPBIAS_SOURCE_DIR "/tests/golden";
    for (std::string_view name : {kReportJson, kReportTsv, kReportText}) {
      const std::string a = testing::read_file(run1.path() / name);
      c.expect(a == testing::read_file(run2.path() / name),
               std::string(name) + " identical across runs");
      c.expect(a == testing::read_file(golden / name), std::string(name) + " matches golden");
    }

    std::ifstream in(golden / "expected_cells.json");
    const auto want = nlohmann::json::parse(in);
    int cells = 0;
    for (const auto& cell : want["cells"]) {
      for (const TopicResult& t : report.topics) {
        if (t.topic_id != cell["topic_id"]) continue;
        for (const ModelCell& m : t.cells) {
          if (m.model != cell["model"]) continue;
          const std::string tag = t.topic_id + "/" + m.model;
          c.near(m.diversity.f1, cell["diversity_f1"], 1e-12, tag + " diversity_f1");
          c.near(m.diversity.precision, cell["diversity_precision"], 1e-12, tag + " precision");
          c.near(m.diversity.recall, cell["diversity_recall"], 1e-12, tag + " recall");
          c.near(m.similarity, cell["similarity"], 1e-12, tag + " similarity");
          c.near(m.distance_to_source, cell["distribution_distance_to_source"], 1e-12,
                 tag + " distance");
          c.expect(m.rank_by_diversity == cell["rank_by_diversity"], tag + " diversity rank");
          c.expect(m.rank_by_similarity == cell["rank_by_similarity"], tag + " similarity rank");
          ++cells;
        }
      }
    }
    c.expect(cells == 4, "all 4 (topic, model) cells compared");
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  fs::current_path(saved);
}

// Published results table: (topic, model) -> {diversity, rank, similarity, rank}.
struct PublishedCell {
  double div;
  std::size_t div_rank;
  double sim;
  std::size_t sim_rank;
};

void table_layout(Checker& c) {
  const std::vector<std::string> models = {"BART",    "Pegasus",  "T5",      "ChatGPT",
                                           "Copycat", "TextRank", "LexRank", "Hybrid TFIDF"};
  const std::vector<std::string> topics = {"CDC", "Stay at Home Orders", "Wearing a Face Mask"};
  const PublishedCell table[8][3] = {
      {{0.7449, 1, 0.8503, 4}, {0.7681, 2, 0.8373, 7}, {0.8147, 1, 0.8412, 6}},
      {{0.5265, 7, 0.8745, 3}, {0.7576, 3, 0.8775, 3}, {0.3692, 5, 0.8768, 3}},
      {{0.6346, 3, 0.8451, 5}, {0.7417, 5, 0.8407, 6}, {0.4692, 4, 0.8327, 7}},
      {{0.7282, 2, 0.8818, 2}, {0.8014, 1, 0.8515, 5}, {0.6006, 3, 0.8498, 5}},
      {{0.5265, 7, 0.6725, 8}, {0.7014, 8, 0.7288, 8}, {0.6737, 2, 0.7177, 8}},
      {{0.5338, 6, 0.8370, 6}, {0.7417, 5, 0.8519, 4}, {0.2615, 8, 0.8828, 2}},
      {{0.5530, 5, 0.8208, 7}, {0.7569, 4, 0.8817, 2}, {0.3590, 7, 0.8607, 4}},
      {{0.5697, 4, 0.8914, 1}, {0.7063, 7, 0.8923, 1}, {0.3667, 6, 0.8965, 1}},
  };

  EvaluationReport report;
  report.models = models;
  for (std::size_t t = 0; t < topics.size(); ++t) {
    std::map<std::string, double> div, sim;
    for (std::size_t m = 0; m < models.size(); ++m) {
      div[models[m]] = table[m][t].div;
      sim[models[m]] = table[m][t].sim;
    }
    const auto div_rank = rank_models(div);
    const auto sim_rank = rank_models(sim);
    TopicResult tr;
    tr.topic_id = topics[t];
    tr.display_name = topics[t];
    for (std::size_t m = 0; m < models.size(); ++m) {
      c.expect(div_rank.at(models[m]) == table[m][t].div_rank,
               topics[t] + "/" + models[m] + " diversity rank");
      c.expect(sim_rank.at(models[m]) == table[m][t].sim_rank,
               topics[t] + "/" + models[m] + " similarity rank");
      ModelCell cell;
      cell.model = models[m];
      cell.diversity.f1 = table[m][t].div;
      cell.similarity = table[m][t].sim;
      cell.rank_by_diversity = div_rank.at(models[m]);
      cell.rank_by_similarity = sim_rank.at(models[m]);
      StanceDistribution d;
      d.proportions = {1.0, 0.0, 0.0};
      d.unit_count = 1;
      cell.distribution = d;
      tr.cells.push_back(cell);
    }
    report.topics.push_back(tr);
  }

  const std::string text = report_to_text(report);
  std::istringstream lines(text);
  std::string line;
  int tied_cells = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("Pegasus", 0) == 0 || line.rfind("Copycat", 0) == 0) {
      // First data column is CDC diversity.
      const auto first_cell = line.find(" | ");
      tied_cells += line.compare(first_cell + 3, 10, "0.5265 (7)") == 0;
    }
    if (line.rfind("Hybrid TFIDF", 0) == 0) {
      c.expect(line.find("0.8965 (1)") != std::string::npos, "Hybrid TFIDF face-mask similarity");
    }
  }
  c.expect(tied_cells == 2, "two tied '0.5265 (7)' CDC cells rendered");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "opinion precision/recall scenario table (exact to 1e-9)", 1.0, scenario_table},
      {"AC2", "worked example: ChatGPT F1 0.8, Pegasus F1 0.5", 1.0, worked_example},
      {"AC3", "56-pair brute-force oracle equivalence", 1.0, oracle_equivalence},
      {"AC4", "numeric property suite", 60.0, numeric_properties},
      {"AC5", "end-to-end golden run, byte-identical on repeat", 5.0, end_to_end_golden},
      {"AC6", "results-table layout: 4 decimals, bracketed ranks, shared ties", 1.0, table_layout},
  };

  int failed = 0;
  for (const Criterion& crit : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(checker);
    } catch (const std::exception& e) {
      checker.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > crit.time_limit_s) {
      checker.expect(false, "runtime " + std::to_string(secs) + "s exceeds limit");
    }
    const bool ok = checker.failures.empty();
    failed += !ok;
    std::printf("[%s] %s %s (%.3fs)\n", ok ? "PASS" : "FAIL", crit.id.c_str(), crit.title.c_str(),
                secs);
    const std::size_t shown = std::min<std::size_t>(checker.failures.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      std::printf("       - %s\n", checker.failures[i].c_str());
    }
    if (checker.failures.size() > shown) {
      std::printf("       ... %zu more\n", checker.failures.size() - shown);
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
