// tests/unit/trial_data_test.cc

// Copyright 2026  The sre-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <sstream>

#include <gtest/gtest.h>

#include "generators.h"
#include "sre/synth.h"
#include "sre/trial_data.h"

namespace sre {
namespace {

const std::string kHeader = std::string(kKeyHeader) + "\n";

TEST(KeyParse, MinimalFile) {
  std::istringstream in(kHeader + "m1\ts1\ttarget\tmale\tY\tN\tY\t1\taudio\n");
  TrialKey key = read_key(in);
  ASSERT_EQ(key.size(), 1u);
  const TrialRecord &r = key.records()[0];
  EXPECT_EQ(r.id.model_id, "m1");
  EXPECT_TRUE(r.meta.is_target());
  EXPECT_EQ(r.meta.gender, Gender::kMale);
  EXPECT_EQ(r.meta.language_match, Match::kNo);
  EXPECT_EQ(r.meta.phone_match, Match::kYes);
}

TEST(KeyParse, BadGenderNamesLineAndField) {
  std::istringstream in(kHeader + "m1\ts1\ttarget\tother\tY\tN\tY\t1\taudio\n");
  try {
    read_key(in, "k.tsv");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.field(), "gender");
  }
}

TEST(KeyParse, WrongHeaderAndFieldCount) {
  std::istringstream bad_header("modelid\tsegmentid\n");
  EXPECT_THROW(read_key(bad_header), ParseError);
  std::istringstream short_row(kHeader + "m1\ts1\ttarget\n");
  EXPECT_THROW(read_key(short_row), ParseError);
}

TEST(KeyParse, PhoneMatchOnNontargetRejected) {
  std::istringstream in(kHeader + "m1\ts1\tnontarget\tmale\tY\tY\tY\t1\taudio\n");
  EXPECT_THROW(read_key(in), ParseError);
}

TEST(KeyParse, DuplicateTrialRejected) {
  std::istringstream in(kHeader + "m1\ts1\ttarget\tmale\tY\tY\tY\t1\taudio\n" +
                        "m1\ts1\tnontarget\tmale\tY\tY\tN\t1\taudio\n");
  EXPECT_THROW(read_key(in), ParseError);
}

TEST(KeyRoundTrip, SyntheticKey) {
  synth::SynthConfig config;
  config.n_speakers = 60;
  config.seed = 3;
  TrialKey key = synth::generate_key(config);
  ASSERT_GE(key.size(), 10000u);
  std::stringstream io;
  write_key(key, io);
  EXPECT_EQ(read_key(io), key);
}

TEST(ScoreParse, SingleLine) {
  std::istringstream in(std::string(kScoreHeader) + "\nm001\tseg07\t2.5\n");
  ScoreSet s = read_scores(in);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.find({"m001", "seg07"}), 2.5);
}

TEST(ScoreParse, NanIsAnError) {
  std::istringstream in(std::string(kScoreHeader) + "\nm001\tseg07\tNaN\n");
  EXPECT_THROW(read_scores(in), ParseError);
  std::istringstream scan_in(std::string(kScoreHeader) + "\nm001\tseg07\tNaN\n");
  EXPECT_EQ(scan_scores(scan_in).nonfinite_scores, 1u);
}

TEST(ScoreRoundTrip, BitExact) {
  testing::Gen g(11);
  std::vector<ScoreEntry> entries;
  for (int i = 0; i < 200000; ++i) {
    double v = g.normal(0, 10) * std::pow(10.0, g.uniform(-8, 8));
    entries.push_back({{"m" + std::to_string(i % 97), "s" + std::to_string(i)}, v});
  }
  ScoreSet s(std::move(entries));
  std::stringstream io;
  write_scores(s, io);
  EXPECT_EQ(read_scores(io), s);
}

TEST(Embeddings, ReadAndRaggedRow) {
  std::istringstream in("segmentid\tspeaker\tdim=4\n"
                        "a\tp\t1\t2\t3\t4\nb\tp\t1\t2\t3\t4\nc\tq\t0\t0\t0\t1\n");
  EmbeddingTable t = read_embeddings(in);
  EXPECT_EQ(t.dim(), 4u);
  EXPECT_EQ(t.size(), 3u);

  std::istringstream ragged("segmentid\tspeaker\tdim=4\na\tp\t1\t2\t3\n");
  try {
    read_embeddings(ragged);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Embeddings, RoundTrip) {
  testing::Gen g(5);
  std::vector<EmbeddingRow> rows;
  for (int i = 0; i < 500; ++i) {
    EmbeddingRow r{"seg" + std::to_string(i), "spk" + std::to_string(i % 40), {}};
    for (int j = 0; j < 256; ++j) r.vector.push_back(g.normal());
    rows.push_back(std::move(r));
  }
  EmbeddingTable t(256, std::move(rows));
  std::stringstream io;
  write_embeddings(t, io);
  EXPECT_EQ(read_embeddings(io), t);
}

TEST(Enrollment, RoundTrip) {
  EnrollmentMap m{{"m1", {"a", "b", "c"}}, {"m2", {"d"}}};
  std::stringstream io;
  write_enrollment(m, io);
  EXPECT_EQ(read_enrollment(io), m);
}

class ValidateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::Gen g(7);
    key_ = g.audio_key(50);
    scores_ = g.scores_for(key_);
  }
  TrialKey key_;
  ScoreSet scores_;
};

TEST_F(ValidateTest, ExactCoverAccepted) {
  ValidationReport r = validate_submission(scores_, key_);
  EXPECT_TRUE(r.accepted());
  EXPECT_EQ(r.missing_trials, 0u);
  EXPECT_EQ(r.extra_trials, 0u);
}

TEST_F(ValidateTest, MissingAndExtraCountedIndependently) {
  std::vector<ScoreEntry> e(scores_.entries().begin(), scores_.entries().end());
  e.erase(e.begin());
  ValidationReport one_missing = validate_submission(ScoreSet(e), key_);
  EXPECT_FALSE(one_missing.accepted());
  EXPECT_EQ(one_missing.missing_trials, 1u);
  EXPECT_EQ(one_missing.extra_trials, 0u);

  e.push_back({{"zz", "zz"}, 0.0});
  ValidationReport both = validate_submission(ScoreSet(e), key_);
  EXPECT_EQ(both.missing_trials, 1u);
  EXPECT_EQ(both.extra_trials, 1u);
}

TEST_F(ValidateTest, MalformedLinesReported) {
  std::istringstream in(std::string(kScoreHeader) + "\nm\ts\n" + "m\ts2\tabc\n");
  ScoreScan scan = scan_scores(in);
  EXPECT_EQ(scan.malformed_lines, (std::vector<std::size_t>{2, 3}));
  ValidationReport r = validate_submission(scan, key_);
  EXPECT_EQ(r.malformed_lines, 2u);
  EXPECT_FALSE(r.accepted());
}

TEST(KeyOrder, PermutationInvariant) {
  testing::Gen g(9);
  TrialKey key = g.audio_key(300);
  std::vector<TrialRecord> shuffled(key.records().begin(), key.records().end());
  std::shuffle(shuffled.begin(), shuffled.end(), g.rng());
  EXPECT_EQ(TrialKey(Track::kAudio, shuffled), key);
}

}  // namespace
}  // namespace sre
