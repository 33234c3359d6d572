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


#include "affectkit/prompts.hpp"

#include "affectkit/assets.hpp"
#include "affectkit/error.hpp"
#include "affectkit/text.hpp"

namespace affect::prompts {

std::string_view to_string(TemplateId id) noexcept {
  switch (id) {
    case TemplateId::P1: return "P1";
    case TemplateId::P2: return "P2";
    case TemplateId::P3: return "P3";
    case TemplateId::P4: return "P4";
    case TemplateId::P5: return "P5";
  }
  return "?";
}

std::string render_template(std::string_view body, const Bindings& bindings) {
  std::string out;
  out.reserve(body.size());
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto open = body.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(body.substr(pos));
      break;
    }
    const auto close = body.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw Error(ErrorKind::invalid_argument, "unterminated placeholder in template");
    }
    out.append(body.substr(pos, open - pos));
    const auto name = body.substr(open + 2, close - open - 2);
    const auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error(ErrorKind::invalid_argument, "missing binding for placeholder '" + std::string(name) + "'");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

std::string sentiment_instruction(bool include_dominance_clause) {
  return render_template(
      assets::get("prompts/p1_sentiment.txt"),
      {{"dominance_clause",
        include_dominance_clause ? std::string(assets::get("prompts/p1_dominance_clause.txt")) : std::string()}});
}

std::string stimulus_block(std::span<const std::string> block) {
  if (block.empty()) throw Error(ErrorKind::invalid_argument, "stimulus block is empty");
  std::string out;
  for (std::size_t i = 0; i < block.size(); ++i) {
    if (i > 0) out.push_back('\n');
    out += std::to_string(i + 1) + ". " + block[i];
  }
  return out;
}

std::string render_sentiment_prompt(bool include_dominance_clause, std::span<const std::string> block) {
  return sentiment_instruction(include_dominance_clause) + "\n\n" + stimulus_block(block);
}

std::string render_numeric_mapping_prompt() { return std::string(assets::get("prompts/p2_numeric_mapping.txt")); }

std::string render_word_pick_prompt(std::string_view situation, std::span<const std::string> words,
                                    WordPickVariant variant) {
  if (words.empty()) throw Error(ErrorKind::invalid_argument, "word list is empty");
  std::string list;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) list += ", ";
    list += words[i];
  }
  const auto body = variant == WordPickVariant::standard ? assets::get("prompts/p3_word_pick.txt")
                                                         : assets::get("prompts/p3_word_pick_perspective.txt");
  return render_template(body, {{"situation", std::string(situation)}, {"words", list}});
}

std::string render_octant_prompt(const Octant& octant) {
  auto level = [](Sign s) -> std::string {
    switch (s) {
      case Sign::plus: return "high";
      case Sign::minus: return "low";
      case Sign::neutral: return "neutral";
    }
    return "neutral";
  };
  return render_template(assets::get("prompts/p4_octant_situation.txt"),
                         {{"valence", level(octant.v())}, {"arousal", level(octant.a())}, {"dominance", level(octant.d())}});
}

std::string render_chatocc_prompt(std::span<const occ::EmotionRule> rules, std::string_view situation) {
  if (rules.empty()) throw Error(ErrorKind::invalid_argument, "rule list is empty");
  std::string listing;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i > 0) listing.push_back('\n');
    listing += std::string(occ::display_name(rules[i].label)) + ": " + rules[i].text;
  }
  return render_template(assets::get("prompts/p5_chatocc.txt"),
                         {{"rules", listing}, {"situation", std::string(situation)}});
}

std::string render_vad_table(std::span<const VadTriple> rows) {
  std::string out = "| # | Valence | Arousal | Dominance |\n|---|---|---|---|";
  for (const auto& row : rows) {
    if (row.scale() != Scale::unit_0_1) throw Error(ErrorKind::scale_mismatch, "VAD tables hold unit_0_1 values");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += "\n| " + std::to_string(i + 1) + " | " + text::format_number(rows[i].v()) + " | " +
           text::format_number(rows[i].a()) + " | " + text::format_number(rows[i].d()) + " |";
  }
  return out;
}

}  // namespace affect::prompts
