// Copyright 2026 The kbaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kbaug/dataset.hpp"

#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "testutil.hpp"

using namespace kbaug;

namespace {

LabelIndex fixture_index() {
  return LabelIndex::build(
      load_kb_dump(testutil::data_file("kb_fixture.jsonl")));
}

}  // namespace

TEST_CASE("load_dataset parses TSV rows") {
  testutil::TempDir tmp;
  const auto path = tmp.write("d.tsv",
                              "q1\twho is it\tit is him\t1\n"
                              "q1\twho is it\tnobody knows\t0\n"
                              "q2\thow many\tthree of them\t1\n");
  const auto dataset = load_dataset(path, DatasetFormat::tsv);
  REQUIRE(dataset.pairs.size() == 3);
  CHECK(dataset.pairs[0].qid == "q1");
  CHECK(dataset.pairs[0].cid == "0");
  CHECK(dataset.pairs[1].cid == "1");
  CHECK(dataset.pairs[2].qid == "q2");
  CHECK(dataset.pairs[2].cid == "0");
  CHECK(dataset.pairs[0].question.raw == "who is it");
  CHECK(dataset.pairs[0].answer.raw == "it is him");
  CHECK(dataset.pairs[0].label == 1);
  CHECK_FALSE(dataset.tagged);
}

TEST_CASE("load_dataset rejects a bad label with its line number") {
  testutil::TempDir tmp;
  const auto path = tmp.write("d.tsv",
                              "q1\ta\tb\t1\n"
                              "q1\ta\tc\t2\n");
  CHECK_THROWS_WITH(load_dataset(path, DatasetFormat::tsv),
                    doctest::Contains(":2: invalid label"));
}

TEST_CASE("load_dataset rejects a short row with its line number") {
  testutil::TempDir tmp;
  const auto path = tmp.write("d.tsv", "q1\ta\tb\n");
  CHECK_THROWS_WITH(load_dataset(path, DatasetFormat::tsv),
                    doctest::Contains(":1:"));
}

TEST_CASE("load_dataset rejects duplicate (qid, cid)") {
  testutil::TempDir tmp;
  const auto path = tmp.write(
      "d.jsonl",
      R"({"qid": "q1", "cid": "0", "question": "a", "answer": "b", "label": 1})"
      "\n"
      R"({"qid": "q1", "cid": "0", "question": "a", "answer": "c", "label": 0})"
      "\n");
  CHECK_THROWS_WITH(load_dataset(path, DatasetFormat::jsonl),
                    doctest::Contains("duplicate"));
}

TEST_CASE("jsonl labels may be absent but not out of range") {
  testutil::TempDir tmp;
  const auto ok = tmp.write(
      "ok.jsonl", R"({"qid": "q1", "question": "a", "answer": "b"})" "\n");
  const auto dataset = load_dataset(ok, DatasetFormat::jsonl);
  REQUIRE(dataset.pairs.size() == 1);
  CHECK_FALSE(dataset.pairs[0].label.has_value());

  const auto bad = tmp.write(
      "bad.jsonl",
      R"({"qid": "q1", "question": "a", "answer": "b", "label": 2})" "\n");
  CHECK_THROWS_WITH(load_dataset(bad, DatasetFormat::jsonl),
                    doctest::Contains("invalid label"));
}

TEST_CASE("clean load drops questions without positives") {
  testutil::TempDir tmp;
  const auto path = tmp.write("d.tsv",
                              "q1\ta\tb\t1\n"
                              "q1\ta\tc\t0\n"
                              "q2\td\te\t0\n");
  LoadOptions options;
  options.clean = true;
  const auto dataset = load_dataset(path, DatasetFormat::tsv, options);
  REQUIRE(dataset.pairs.size() == 2);
  CHECK(dataset.pairs[0].qid == "q1");
  CHECK(dataset.pairs[1].qid == "q1");
}

TEST_CASE("parse_format") {
  CHECK(parse_format("tsv") == DatasetFormat::tsv);
  CHECK(parse_format("jsonl") == DatasetFormat::jsonl);
  CHECK_THROWS(parse_format("csv"));
}

TEST_CASE("write_augmented emits the worked kb_tags record") {
  const auto index = fixture_index();
  testutil::TempDir tmp;
  Dataset dataset;
  dataset.name = "fixture";
  dataset.pairs.push_back(tag_pair(index, "How old is Elton John's husband",
                                   "David Furnish is 57 years old.", 1, "q1",
                                   "0"));
  dataset.tagged = true;
  const auto selections = select_contexts(dataset, ContextFilter::intersection);
  const auto out = tmp.file("aug.jsonl");
  CHECK(write_augmented(dataset, selections, SerializeOptions{}, out) == 1);

  std::ifstream in(out);
  std::string line;
  REQUIRE(std::getline(in, line));
  const auto record = nlohmann::json::parse(line);
  CHECK(record["qid"] == "q1");
  CHECK(record["text"] == "David Furnish is 57 years old.");
  CHECK(record["label"] == 1);
  REQUIRE(record["kb_tags"].size() == 2);
  const auto& tag = record["kb_tags"][0];
  CHECK(tag["kb_id"] == "e-478772");
  CHECK(tag["popularity"] == 0.981);
  CHECK(tag["candidate_title"] == "David Furnish");
  CHECK(tag["candidate_aliases"] == "David James Furnish, Elton John's husband");
  CHECK(tag["collection"] == "celebrity");
  CHECK(tag["relations"] == "married_to, years_old, birth_date");
}

TEST_CASE("write_augmented emits empty kb_tags for untagged pairs") {
  const auto index = fixture_index();
  testutil::TempDir tmp;
  Dataset dataset;
  dataset.pairs.push_back(
      tag_pair(index, "how many humps", "two humps", 0, "q1", "0"));
  dataset.tagged = true;
  const auto selections = select_contexts(dataset, ContextFilter::intersection);
  const auto out = tmp.file("aug.jsonl");
  write_augmented(dataset, selections, SerializeOptions{}, out);
  const auto record =
      nlohmann::json::parse(testutil::read_file(out));
  CHECK(record["kb_tags"].is_array());
  CHECK(record["kb_tags"].empty());
  CHECK(record["sequence"] == "how many humps <\\s> two humps");
}

TEST_CASE("write_augmented fails on an unwritable path") {
  const auto index = fixture_index();
  Dataset dataset;
  dataset.pairs.push_back(tag_pair(index, "a", "b", 1, "q1", "0"));
  dataset.tagged = true;
  const auto selections = select_contexts(dataset, ContextFilter::intersection);
  CHECK_THROWS(write_augmented(dataset, selections, SerializeOptions{},
                               "/nonexistent-dir/aug.jsonl"));
}

TEST_CASE("every written line is valid JSON and loads back identically") {
  const auto index = fixture_index();
  testutil::TempDir tmp;
  auto dataset = load_dataset(testutil::data_file("pairs_fixture.tsv"),
                              DatasetFormat::tsv);
  tag_dataset(index, dataset);
  const auto selections = select_contexts(dataset, ContextFilter::intersection);
  const auto out = tmp.file("aug.jsonl");
  const auto count =
      write_augmented(dataset, selections, SerializeOptions{}, out);
  CHECK(count == dataset.pairs.size());

  std::ifstream in(out);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK_NOTHROW(nlohmann::json::parse(line));
  }
  CHECK(lines == count);

  // Round-trip: the augmented file is itself a loadable JSONL dataset.
  const auto reloaded = load_dataset(out, DatasetFormat::jsonl);
  REQUIRE(reloaded.pairs.size() == dataset.pairs.size());
  for (std::size_t i = 0; i < reloaded.pairs.size(); ++i) {
    CHECK(reloaded.pairs[i].qid == dataset.pairs[i].qid);
    CHECK(reloaded.pairs[i].cid == dataset.pairs[i].cid);
    CHECK(reloaded.pairs[i].question.raw == dataset.pairs[i].question.raw);
    CHECK(reloaded.pairs[i].answer.raw == dataset.pairs[i].answer.raw);
    CHECK(reloaded.pairs[i].label == dataset.pairs[i].label);
  }
}

TEST_CASE("split stats on the fixture") {
  const auto index = fixture_index();
  auto dataset = load_dataset(testutil::data_file("pairs_fixture.tsv"),
                              DatasetFormat::tsv);
  tag_dataset(index, dataset);
  const auto stats = compute_split_stats(dataset);
  CHECK(stats.n_pairs == 4);
  // The two camel pairs tag nothing against the fixture KB.
  CHECK(stats.pct_without_kb == doctest::Approx(50.0));
  CHECK(stats.n_correct_with_kb == 1);
  CHECK(stats.n_incorrect_with_kb == 1);
}

TEST_CASE("split stats edge cases") {
  SUBCASE("empty dataset is all zeros") {
    Dataset dataset;
    const auto stats = compute_split_stats(dataset);
    CHECK(stats.n_pairs == 0);
    CHECK(stats.pct_without_kb == 0.0);
    CHECK(stats.n_correct_with_kb == 0);
    CHECK(stats.n_incorrect_with_kb == 0);
  }

  SUBCASE("a 30% untagged split reports 30") {
    const auto index = fixture_index();
    Dataset dataset;
    for (int i = 0; i < 100; ++i) {
      const bool tagged_pair = i >= 30;
      dataset.pairs.push_back(tag_pair(
          index, tagged_pair ? "david furnish" : "nothing here",
          tagged_pair ? "the answer mentions 57" : "still nothing", i % 2,
          "q" + std::to_string(i), "0"));
    }
    dataset.tagged = true;
    const auto stats = compute_split_stats(dataset);
    CHECK(stats.pct_without_kb == doctest::Approx(30.0));
  }

  SUBCASE("unlabeled pairs are an error") {
    const auto index = fixture_index();
    Dataset dataset;
    dataset.pairs.push_back(
        tag_pair(index, "a", "b", std::nullopt, "q1", "0"));
    dataset.tagged = true;
    CHECK_THROWS_WITH(compute_split_stats(dataset), doctest::Contains("unlabeled"));
  }

  SUBCASE("untagged dataset is an error") {
    Dataset dataset;
    TaggedPair pair;
    pair.qid = "q";
    pair.cid = "0";
    pair.label = 1;
    dataset.pairs.push_back(pair);
    CHECK_THROWS_WITH(compute_split_stats(dataset), doctest::Contains("not tagged"));
  }
}

TEST_CASE("filter coverage on constructed fixtures") {
  const auto index = fixture_index();

  SUBCASE("no intersections means zero coverage") {
    Dataset dataset;
    for (int i = 0; i < 10; ++i) {
      // Question tags the husband entry, answer tags 57: never the same id.
      dataset.pairs.push_back(tag_pair(index, "her husband", "aged 57", 1,
                                       "q" + std::to_string(i), "0"));
    }
    dataset.tagged = true;
    CHECK(compute_filter_coverage(dataset, ContextFilter::intersection) == 0.0);
    // 1best picks 57, whose collection is "quantity".
    CHECK(compute_filter_coverage(dataset, ContextFilter::one_best) == 100.0);
  }

  SUBCASE("a known 8.3% intersection fixture") {
    Dataset dataset;
    for (int i = 0; i < 1000; ++i) {
      const bool intersecting = i < 83;
      dataset.pairs.push_back(tag_pair(
          index, intersecting ? "about david furnish" : "about nothing",
          intersecting ? "david furnish answered" : "nothing answered", 1,
          "q" + std::to_string(i), "0"));
    }
    dataset.tagged = true;
    CHECK(compute_filter_coverage(dataset, ContextFilter::intersection) ==
          doctest::Approx(8.3));
  }

  SUBCASE("empty dataset has zero coverage") {
    Dataset dataset;
    CHECK(compute_filter_coverage(dataset, ContextFilter::intersection) == 0.0);
  }
}

TEST_CASE("intersection coverage never beats 1best when collections exist") {
  testutil::Rng rng(2468);
  for (int round = 0; round < 20; ++round) {
    const auto entries = testutil::random_kb(rng, 30, /*all_collections=*/true);
    const auto index = LabelIndex::build(std::vector<KbEntry>(entries));
    Dataset dataset;
    for (int i = 0; i < 50; ++i) {
      dataset.pairs.push_back(tag_pair(index, testutil::random_text(rng, 12),
                                       testutil::random_text(rng, 12), 1,
                                       "q" + std::to_string(i), "0"));
    }
    dataset.tagged = true;
    CHECK(compute_filter_coverage(dataset, ContextFilter::intersection) <=
          compute_filter_coverage(dataset, ContextFilter::one_best));
  }
}

TEST_CASE("stats are invariant under pair order") {
  testutil::Rng rng(1357);
  const auto entries = testutil::random_kb(rng, 20);
  const auto index = LabelIndex::build(std::vector<KbEntry>(entries));
  Dataset dataset;
  for (int i = 0; i < 60; ++i) {
    dataset.pairs.push_back(tag_pair(index, testutil::random_text(rng, 10),
                                     testutil::random_text(rng, 10),
                                     rng.between(0, 1),
                                     "q" + std::to_string(i), "0"));
  }
  dataset.tagged = true;
  const auto before = compute_split_stats(dataset);
  std::shuffle(dataset.pairs.begin(), dataset.pairs.end(), rng.engine);
  const auto after = compute_split_stats(dataset);
  CHECK(before.pct_without_kb == after.pct_without_kb);
  CHECK(before.n_correct_with_kb == after.n_correct_with_kb);
  CHECK(before.n_incorrect_with_kb == after.n_incorrect_with_kb);
}

TEST_CASE("format_pct matches the reported rendering") {
  CHECK(format_pct(0.0) == ".000%");
  CHECK(format_pct(30.0) == "30.000%");
  CHECK(format_pct(8.3) == "8.300%");
  CHECK(format_pct(0.02) == ".020%");
  CHECK(format_pct(100.0) == "100.000%");
}
