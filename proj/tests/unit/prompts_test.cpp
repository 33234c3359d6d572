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

#include <fstream>
#include <random>
#include <sstream>

#include "affectkit/error.hpp"
#include "affectkit/prompts.hpp"
#include "affectkit/stimuli.hpp"

namespace affect::prompts {
namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::string(AFFECTKIT_GOLDEN_DIR) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> word_texts() { return fixtures().words20.texts(); }

TEST(RenderTemplate, FillsBindingsVerbatim) {
  EXPECT_EQ(render_template("a {{x}} b {{y}}", {{"x", "1"}, {"y", "{{x}}"}}), "a 1 b {{x}}");
  EXPECT_THROW(render_template("a {{x}} b {{y}}", {{"x", "1"}}), Error);
  EXPECT_THROW(render_template("a {{x", {{"x", "1"}}), Error);
}

TEST(Sentiment, ClauseFlagAndBlockLayout) {
  const std::vector<std::string> block = {"first", "second"};
  const auto on = render_sentiment_prompt(true, block);
  const auto off = render_sentiment_prompt(false, block);
  EXPECT_NE(on.find("Remember that dominance"), std::string::npos);
  EXPECT_EQ(off.find("Remember that dominance"), std::string::npos);
  EXPECT_NE(off.find("between 0 and 1, with 0 being low, and 1 being high. Assess"), std::string::npos);
  EXPECT_TRUE(on.ends_with("Just acknowledge you got it.\n\n1. first\n2. second"));
  EXPECT_THROW(stimulus_block({}), Error);
}

TEST(Golden, AllTemplates) {
  const auto texts = fixtures().anet20.texts();
  const std::vector<std::string> first3(texts.begin(), texts.begin() + 3);
  EXPECT_EQ(render_sentiment_prompt(true, first3), golden("p1_dominance_on.txt"));
  EXPECT_EQ(render_sentiment_prompt(false, first3), golden("p1_dominance_off.txt"));
  EXPECT_EQ(render_numeric_mapping_prompt(), golden("p2_numeric_mapping.txt"));
  EXPECT_EQ(render_word_pick_prompt(texts.front(), word_texts()), golden("p3_word_pick.txt"));
  EXPECT_EQ(render_word_pick_prompt(texts.front(), word_texts(), WordPickVariant::perspective),
            golden("p3_word_pick_perspective.txt"));
  EXPECT_EQ(render_octant_prompt(Octant::corner(Sign::plus, Sign::minus, Sign::minus)),
            golden("p4_octant_vplus_aminus_dminus.txt"));
  EXPECT_EQ(render_octant_prompt(Octant::neutral()), golden("p4_octant_neutral.txt"));
  EXPECT_EQ(render_chatocc_prompt(occ::rules_in_presentation_order(), "Anne just passed her exam."),
            golden("p5_chatocc_joy.txt"));
}

TEST(VadTable, ParsesPipeTables) {
  const std::string reply =
      "Sure! Here are the values:\n\n"
      "| Sentence | Valence | Arousal | Dominance |\n"
      "|:--|--:|--:|--:|\n"
      "| 1. You win | 0.81 | 0.93 | 0.55 |\n"
      "| 2. You lose | 0.1 | .4 | 0.2 |\n"
      "\nLet me know if you need anything else.";
  const auto rows = parse_vad_table(reply, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].label, "1. You win");
  EXPECT_DOUBLE_EQ(rows[0].vad.a(), 0.93);
  EXPECT_DOUBLE_EQ(rows[1].vad.a(), 0.4);
}

TEST(VadTable, ParsesWhitespaceColumns) {
  const auto rows = parse_vad_table("Item  V     A     D\n1     0.50  0.25  0.75\n2     1     0     0.5\n", 2);
  EXPECT_DOUBLE_EQ(rows[0].vad.d(), 0.75);
  EXPECT_DOUBLE_EQ(rows[1].vad.v(), 1.0);
}

TEST(VadTable, ErrorsCarryLocation) {
  try {
    parse_vad_table("| # | V | A | D |\n| 1 | 0.5 | high | 0.5 |\n", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  try {
    parse_vad_table("| 1 | 0.5 | 1.5 | 0.5 |\n", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 1u);
  }
  try {
    parse_vad_table("| 1 | 0.5 | 0.5 | 0.5 |\n", 2);
    FAIL();
  } catch (const RowCountError& e) {
    EXPECT_EQ(e.expected(), 2u);
    EXPECT_EQ(e.found(), 1u);
  }
}

TEST(VadTable, RenderedTablesParseBack) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<VadTriple> rows;
    for (int i = 0; i < 1 + trial % 25; ++i) rows.emplace_back(unit(rng), unit(rng), unit(rng), Scale::unit_0_1);
    const auto parsed = parse_vad_table(render_vad_table(rows), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(parsed[i].vad, rows[i]);
  }
  EXPECT_THROW(render_vad_table(std::vector<VadTriple>{VadTriple(5, 5, 5, Scale::anet_1_9)}), Error);
}

TEST(WordPair, PrimaryAlternatesAndHallucinations) {
  const auto words = word_texts();
  const auto a = parse_word_pair("serious (alert), suspicious", words);
  EXPECT_EQ(a.primary, (std::vector<std::string>{"serious", "suspicious"}));
  EXPECT_EQ(a.alternates, (std::vector<std::string>{"alert"}));
  EXPECT_TRUE(a.hallucinated.empty());

  const auto b = parse_word_pair("Alert, Mildly_Annoyed.", words);
  EXPECT_EQ(b.primary, (std::vector<std::string>{"alert", "mildly annoyed"}));

  const auto c = parse_word_pair("serious, anxious", words);
  EXPECT_EQ(c.hallucinated, (std::vector<std::string>{"anxious"}));
  EXPECT_THROW(parse_word_pair("excited", words), ParseError);
}

TEST(EmotionLabel, FirstLabelWinsAndIntensityFollowsKeyword) {
  const auto a = parse_emotion_label("Emotion: Happy for\nIntensity: medium\nRule: a desirable event ...");
  EXPECT_EQ(a.label, occ::EmotionLabel::HappyFor);
  EXPECT_EQ(a.intensity, occ::Ordinal::medium);
  EXPECT_EQ(parse_emotion_label("Distress").label, occ::EmotionLabel::Distress);
  EXPECT_FALSE(parse_emotion_label("Distress").intensity.has_value());
  EXPECT_EQ(parse_emotion_label("This is Fears-confirmed (high)").label, occ::EmotionLabel::Despair);
  EXPECT_EQ(parse_emotion_label("Satisfac.").label, occ::EmotionLabel::Satisfaction);
  // "joyful" is not the label "joy".
  EXPECT_THROW(parse_emotion_label("Anne feels joyful"), ParseError);
  const std::vector<occ::EmotionLabel> only_hope = {occ::EmotionLabel::Hope};
  EXPECT_EQ(parse_emotion_label("Fear? No, hope.", only_hope).label, occ::EmotionLabel::Hope);
}

TEST(NumericMapping, ReadsIndexedLines) {
  const auto words = word_texts();
  const auto picks = parse_numeric_mapping(
      "Sure:\n1. You are both aroused... - excited\n2: confused\n3) 0.5 distance -> mildly annoyed\n5. nothing here", 5,
      words);
  ASSERT_EQ(picks.size(), 5u);
  EXPECT_EQ(picks[0], "excited");
  EXPECT_EQ(picks[1], "confused");
  EXPECT_EQ(picks[2], "mildly annoyed");
  EXPECT_FALSE(picks[3].has_value());
  EXPECT_FALSE(picks[4].has_value());
}

}  // namespace
}  // namespace affect::prompts
