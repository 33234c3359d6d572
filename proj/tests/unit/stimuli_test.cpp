// Copyright 2026 The affectkit Authors
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


#include <gtest/gtest.h>
#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>

#include "affectkit/assets.hpp"
#include "affectkit/error.hpp"
#include "affectkit/stimuli.hpp"
#include "affectkit/text.hpp"

namespace affect {
namespace {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

// Guards the transcribed tables against accidental edits.
TEST(Fixtures, ChecksumsArePinned) {
  const std::map<std::string, std::string> pinned = {
      {"anet20", "5e03ba8b48569ed4f3327028f112357cf26b98d0f39a9563574d513e61c7b185"},
      {"anet20_predictions", "8e08520f013d34401c4377971c6e1b320ff4b082614cfa97167a18fcaa205775"},
      {"elicitation12", "b34b8df08205fbccfe8082b5d8194bb2d3b14522c2434fd730ed0319621bcbdf"},
      {"elicitation12_frames", "136369ea5bb77b1a419b3a6bae54091dda26b1133779f7257c2222bfb0c0188e"},
      {"octant_generation", "20c26c28c0bc655812fbdafe0d30ce9b8787aedc9d68d2f807b72bd66990ebf1"},
      {"word_mapping", "af84987e3ad5f56e6456a1e78ac444426ac45c0c5785f129f9b5454d449124fc"},
      {"words20", "d0122765db10c9fb5656c53cfe23f1940a3189120d888d780981b4019e7b0fe2"},
      {"words20_predictions", "32d8ae09784ce14548a12c276c1ade104c3d70aeaeeb5d68e1eec4e2140d97c7"},
  };
  EXPECT_EQ(fixture_names().size(), pinned.size());
  for (const auto& [name, digest] : pinned) EXPECT_EQ(sha256_hex(fixture_file(name)), digest) << name;
}

TEST(Fixtures, ShapesAndSpotValues) {
  const auto& f = fixtures();
  EXPECT_EQ(f.anet20.size(), 20u);
  EXPECT_EQ(f.anet20.scale(), Scale::anet_1_9);
  EXPECT_EQ(f.words20.size(), 20u);
  EXPECT_EQ(f.words20.scale(), Scale::russell_m1_1);
  EXPECT_EQ(f.anet20_predictions.size(), 20u);
  EXPECT_EQ(f.anet20_failed_dominance.size(), 20u);
  EXPECT_EQ(f.words20_predictions.size(), 20u);
  EXPECT_EQ(f.word_mapping.size(), 20u);
  EXPECT_EQ(f.octant_generation.size(), 9u);
  EXPECT_EQ(f.elicitation.size(), 12u);

  EXPECT_EQ(f.anet20.items().front().id, "4650");
  EXPECT_DOUBLE_EQ(f.anet20_predictions.front().vad.v(), 0.81);
  EXPECT_DOUBLE_EQ(f.anet20_failed_dominance.front().vad.d(), 0.57);
  EXPECT_EQ(f.word_mapping.front().numeric_word, "excited");
  EXPECT_NE(f.octant_generation.front().generated_situation.find("peaceful park"), std::string::npos);
  EXPECT_EQ(f.octant_generation[2].rating, "V-A-A+");
  EXPECT_TRUE(f.words20.contains("mildly annoyed"));
}

TEST(Fixtures, UnknownNameIsNotFound) {
  try {
    fixture_file("anet120");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_found);
  }
}

constexpr const char* kSmall =
    "#name=tiny\n#kind=situation\n#scale=anet_1_9\n"
    "id,text,v,a,d,sd_v,sd_a,sd_d\n"
    "1,\"Calm, quiet lake\",7,2,6,1,1,1\n"
    "2,Storm,2,8,2,2,2,2\n"
    "3,Exam passed,8.5,6,7.25,0.5,0.5,0.5\n";

TEST(DatasetCsv, LoadsAndRoundTrips) {
  const auto d = load_dataset_csv(kSmall);
  EXPECT_EQ(d.name(), "tiny");
  EXPECT_EQ(d.kind(), StimulusKind::situation);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.find("1").text, "Calm, quiet lake");
  EXPECT_DOUBLE_EQ(d.find("3").ground_truth.d(), 7.25);
  const auto again = load_dataset_csv(to_csv(d));
  ASSERT_EQ(again.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(again.items()[i].id, d.items()[i].id);
    EXPECT_EQ(again.items()[i].text, d.items()[i].text);
    EXPECT_EQ(again.items()[i].ground_truth, d.items()[i].ground_truth);
  }
  EXPECT_EQ(to_csv(again), to_csv(d));
}

TEST(DatasetCsv, EmbeddedFixturesRoundTripCanonically) {
  for (const auto* d : {&fixtures().anet20, &fixtures().words20}) {
    const auto again = load_dataset_csv(to_csv(*d));
    EXPECT_EQ(to_csv(again), to_csv(*d));
    for (std::size_t i = 0; i < d->size(); ++i) EXPECT_EQ(again.items()[i].ground_truth, d->items()[i].ground_truth);
  }
}

std::size_t parse_error_row(std::string_view csv) {
  try {
    load_dataset_csv(csv);
  } catch (const ParseError& e) {
    return e.row();
  }
  ADD_FAILURE() << "no parse error";
  return 0;
}

TEST(DatasetCsv, ErrorsNameTheLine) {
  EXPECT_EQ(parse_error_row("#kind=word\nid,text,v,a,d\na,a,0,0,0\n"), 1u);
  EXPECT_EQ(parse_error_row("#scale=unit_0_1\nid,text,v,a,d\n"), 2u);
  EXPECT_EQ(parse_error_row("#scale=unit_0_1\nid,text,v,a,d\nx,y,0.5,0.5,0.5\nz,w,0.5,oops,0.5\n"), 4u);
  EXPECT_EQ(parse_error_row("#scale=unit_0_1\nid,text,v,a,d\nx,y,0.5,0.5,1.5\n"), 3u);
  EXPECT_EQ(parse_error_row("#scale=unit_0_1\nid,text,v,a,d\nx,y,0.5,0.5,0.5\nx,z,0.5,0.5,0.5\n"), 4u);
  EXPECT_EQ(parse_error_row("#scale=unit_0_1\nid,label,v,a,d\nx,y,0.5,0.5,0.5\n"), 2u);
}

TEST(DatasetCsv, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "affectkit_tiny.csv";
  text::write_file(path, kSmall);
  EXPECT_EQ(load_dataset_csv_file(path).size(), 3u);
  std::filesystem::remove(path);
  try {
    load_dataset_csv_file(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io);
  }
}

TEST(Reliability, PicksSmallestSpreadWithIdTieBreak) {
  const auto d = load_dataset_csv(kSmall);
  const auto top = select_most_reliable(d, 2);
  ASSERT_EQ(top.size(), 2u);
  EXPECT_EQ(top.items()[0].id, "3");
  EXPECT_EQ(top.items()[1].id, "1");
  EXPECT_THROW(select_most_reliable(d, 0), Error);
  EXPECT_THROW(select_most_reliable(d, 4), Error);
  EXPECT_THROW(select_most_reliable(fixtures().anet20, 5), Error);  // no standard deviations
}

TEST(Predictions, AlignByStimulusId) {
  const auto& f = fixtures();
  const auto aligned = aligned_predictions(f.anet20, f.anet20_predictions);
  ASSERT_EQ(aligned.size(), 20u);
  EXPECT_EQ(aligned.front(), f.anet20_predictions.front().vad);
  std::vector<PredictionRecord> partial(f.anet20_predictions.begin(), f.anet20_predictions.begin() + 5);
  EXPECT_THROW(aligned_predictions(f.anet20, partial), Error);
}

TEST(Dataset, RejectsDuplicatesAndWrongScale) {
  const VadTriple unit(0.5, 0.5, 0.5, Scale::unit_0_1);
  EXPECT_THROW(Dataset("d", StimulusKind::word, Scale::unit_0_1,
                       {{"a", StimulusKind::word, "a", unit, std::nullopt}, {"a", StimulusKind::word, "b", unit, std::nullopt}}),
               Error);
  EXPECT_THROW(Dataset("d", StimulusKind::word, Scale::anet_1_9, {{"a", StimulusKind::word, "a", unit, std::nullopt}}),
               Error);
  EXPECT_THROW(Dataset("d", StimulusKind::word, Scale::unit_0_1, {}), Error);
}

}  // namespace
}  // namespace affect
