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


#ifndef AFFECTKIT_PROMPTS_HPP_
#define AFFECTKIT_PROMPTS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "affectkit/affect_space.hpp"
#include "affectkit/error.hpp"
#include "affectkit/metrics.hpp"
#include "affectkit/occ.hpp"

namespace affect::prompts {

enum class TemplateId {
  P1,  // VAD sentiment rating instruction
  P2,  // numeric situation -> word mapping
  P3,  // pick two words for a situation
  P4,  // invent a situation for an octant
  P5,  // chatOCC rules + situation
};

std::string_view to_string(TemplateId id) noexcept;

/// Stimuli per P1 session.
inline constexpr std::size_t kSentimentBatchSize = 20;

using Bindings = std::map<std::string, std::string, std::less<>>;

/// Replaces every {{name}} in `body`. Throws Error(invalid_argument) when a
/// placeholder has no binding. Bound values are inserted verbatim and are
/// not scanned for further placeholders.
std::string render_template(std::string_view body, const Bindings& bindings);

// P1 is sent as two messages: the instruction (answered by an
// acknowledgement) and then the numbered block of stimuli.
std::string sentiment_instruction(bool include_dominance_clause);
std::string stimulus_block(std::span<const std::string> block);
/// Instruction and block joined by a blank line. Throws on an empty block.
std::string render_sentiment_prompt(bool include_dominance_clause, std::span<const std::string> block);

std::string render_numeric_mapping_prompt();

enum class WordPickVariant {
  standard,
  perspective,  // experimental: asks for the feeling of the individual
};

std::string render_word_pick_prompt(std::string_view situation, std::span<const std::string> words,
                                    WordPickVariant variant = WordPickVariant::standard);

/// Signs become "high"/"low"; the neutral octant fills every slot with "neutral".
std::string render_octant_prompt(const Octant& octant);

/// One "<Emotion>: <rule text>" line per rule, in the given order.
std::string render_chatocc_prompt(std::span<const occ::EmotionRule> rules, std::string_view situation);

/// Pipe table with a "#" index column, shortest round-trip number text.
std::string render_vad_table(std::span<const VadTriple> rows);

// ---- response parsing ----------------------------------------------------

struct ParsedVadRow {
  std::size_t index;  // 1-based position among the data rows
  std::string label;  // leading cells before the three values, if any
  VadTriple vad;      // unit_0_1
};

/// A well-formed table with the wrong number of data rows.
class RowCountError : public ParseError {
 public:
  RowCountError(std::size_t expected, std::size_t found);
  std::size_t expected() const noexcept { return expected_; }
  std::size_t found() const noexcept { return found_; }

 private:
  std::size_t expected_;
  std::size_t found_;
};

/// Accepts pipe tables and whitespace-aligned columns; the last three cells
/// of a data row are V, A, D. Header and separator rows are skipped, prose
/// lines are ignored. Throws ParseError (with line/cell) on non-numeric or
/// out-of-range cells and when the row count differs from expected_count.
std::vector<ParsedVadRow> parse_vad_table(std::string_view text, std::size_t expected_count);

struct WordPick {
  std::vector<std::string> primary;  // exactly two
  std::vector<std::string> alternates;
  std::vector<std::string> hallucinated;

  WordPair pair() const { return {primary.at(0), primary.at(1)}; }
};

/// "serious (alert), suspicious" -> primary {serious, suspicious},
/// alternates {alert}. Throws ParseError when fewer than two words are found.
WordPick parse_word_pair(std::string_view text, std::span<const std::string> allowed);

struct LabelReading {
  occ::EmotionLabel label;
  std::optional<occ::Ordinal> intensity;
};

/// First emotion name (or known synonym) in text order wins.
LabelReading parse_emotion_label(std::string_view text,
                                 std::span<const occ::EmotionLabel> labels = occ::kAllLabels);

/// For each situation index 1..situation_count, the word chosen for it in a
/// P2 answer (last allowed word on the line that starts with the index).
std::vector<std::optional<std::string>> parse_numeric_mapping(std::string_view text, std::size_t situation_count,
                                                              std::span<const std::string> words);

}  // namespace affect::prompts

#endif  // AFFECTKIT_PROMPTS_HPP_
