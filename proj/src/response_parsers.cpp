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


#include <algorithm>
#include <cctype>

#include "affectkit/error.hpp"
#include "affectkit/prompts.hpp"
#include "affectkit/text.hpp"

namespace affect::prompts {

namespace {

bool is_separator_cell(std::string_view cell) {
  return !cell.empty() && cell.find_first_not_of("-:= ") == std::string_view::npos;
}

std::vector<std::string_view> whitespace_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Occurrences of known terms in `haystack` (already normalized), longest
// term first at each position, whole words only, left to right.
std::vector<std::string> find_terms(std::string_view haystack, const std::vector<std::string>& terms_by_length) {
  std::vector<std::string> found;
  std::size_t pos = 0;
  while (pos < haystack.size()) {
    if (pos > 0 && text::is_word_char(haystack[pos - 1])) {
      ++pos;
      continue;
    }
    bool matched = false;
    for (const auto& term : terms_by_length) {
      if (haystack.compare(pos, term.size(), term) != 0) continue;
      const auto end = pos + term.size();
      if (end < haystack.size() && text::is_word_char(haystack[end])) continue;
      found.push_back(term);
      pos = end;
      matched = true;
      break;
    }
    if (!matched) ++pos;
  }
  return found;
}

std::vector<std::string> by_length_desc(std::span<const std::string> words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(text::normalize_term(w));
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.size() > y.size(); });
  return out;
}

// Strips list markers, quotes and trailing punctuation around a candidate.
std::string clean_piece(std::string_view piece) {
  piece = text::trim(piece);
  while (!piece.empty() && (std::isdigit(static_cast<unsigned char>(piece.front())) ||
                            std::string_view("-*•.):\"'`").find(piece.front()) != std::string_view::npos ||
                            std::isspace(static_cast<unsigned char>(piece.front())))) {
    piece.remove_prefix(1);
  }
  while (!piece.empty() && (std::string_view(".,;:!?\"'`*").find(piece.back()) != std::string_view::npos ||
                            std::isspace(static_cast<unsigned char>(piece.back())))) {
    piece.remove_suffix(1);
  }
  return text::normalize_term(piece);
}

std::size_t word_count(std::string_view s) { return whitespace_tokens(s).size(); }

std::vector<std::string> split_pieces(std::string_view s) {
  std::vector<std::string> pieces;
  std::string current;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == ',' || c == ';' || c == '\n' || c == '/') {
      pieces.push_back(current);
      current.clear();
      continue;
    }
    current.push_back(c);
  }
  pieces.push_back(current);

  // " and " also separates two words.
  std::vector<std::string> out;
  for (const auto& p : pieces) {
    const auto lower = text::to_lower(p);
    std::size_t start = 0;
    while (true) {
      const auto pos = lower.find(" and ", start);
      if (pos == std::string::npos) {
        out.push_back(p.substr(start));
        break;
      }
      out.push_back(p.substr(start, pos - start));
      start = pos + 5;
    }
  }
  return out;
}

std::vector<std::string> candidates_from(std::string_view segment, const std::vector<std::string>& allowed_sorted) {
  std::vector<std::string> out;
  for (const auto& raw : split_pieces(segment)) {
    const auto piece = clean_piece(raw);
    if (piece.empty()) continue;
    if (std::find(allowed_sorted.begin(), allowed_sorted.end(), piece) != allowed_sorted.end() ||
        word_count(piece) <= 2) {
      out.push_back(piece);
      continue;
    }
    for (auto& term : find_terms(piece, allowed_sorted)) out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

RowCountError::RowCountError(std::size_t expected, std::size_t found)
    : ParseError("expected " + std::to_string(expected) + " table rows, found " + std::to_string(found), 0, 0),
      expected_(expected),
      found_(found) {}

std::vector<ParsedVadRow> parse_vad_table(std::string_view input, std::size_t expected_count) {
  std::vector<ParsedVadRow> rows;
  const auto lines = text::split_lines(input);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    const auto line = text::trim(lines[li]);
    if (line.empty()) continue;

    const bool piped = line.find('|') != std::string_view::npos;
    std::vector<std::string_view> cells;
    if (piped) {
      cells = text::split(line, '|');
      for (auto& c : cells) c = text::trim(c);
      if (!cells.empty() && cells.front().empty() && line.front() == '|') cells.erase(cells.begin());
      if (!cells.empty() && cells.back().empty() && line.back() == '|') cells.pop_back();
      if (std::all_of(cells.begin(), cells.end(), is_separator_cell)) continue;
    } else {
      cells = whitespace_tokens(line);
    }
    if (cells.size() < 3) continue;

    const std::size_t first_value = cells.size() - 3;
    std::array<std::optional<double>, 3> values;
    std::size_t numeric = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      values[k] = text::parse_number(cells[first_value + k]);
      if (values[k]) ++numeric;
    }
    if (numeric == 0) continue;  // header or prose
    if (numeric < 3) {
      if (!piped) continue;  // prose with stray numbers is not a table row
      for (std::size_t k = 0; k < 3; ++k) {
        if (!values[k]) {
          throw ParseError("line " + std::to_string(line_no) + ": cell '" + std::string(cells[first_value + k]) +
                               "' is not a number",
                           line_no, first_value + k + 1);
        }
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (*values[k] < 0.0 || *values[k] > 1.0) {
        throw ParseError("line " + std::to_string(line_no) + ": value " + std::string(cells[first_value + k]) +
                             " outside [0, 1]",
                         line_no, first_value + k + 1);
      }
    }
    std::string label;
    for (std::size_t k = 0; k < first_value; ++k) {
      if (k > 0) label.push_back(' ');
      label.append(cells[k]);
    }
    rows.push_back({rows.size() + 1, std::move(label), VadTriple(*values[0], *values[1], *values[2], Scale::unit_0_1)});
  }
  if (rows.size() != expected_count) {
    throw RowCountError(expected_count, rows.size());
  }
  return rows;
}

WordPick parse_word_pair(std::string_view input, std::span<const std::string> allowed) {
  const auto allowed_sorted = by_length_desc(allowed);

  std::string main;
  std::vector<std::string> parenthesized;
  int depth = 0;
  for (char c : input) {
    if (c == '(') {
      if (depth++ == 0) parenthesized.emplace_back();
      main.push_back(' ');
      continue;
    }
    if (c == ')' && depth > 0) {
      --depth;
      continue;
    }
    if (depth > 0) parenthesized.back().push_back(c);
    else main.push_back(c);
  }

  WordPick pick;
  for (auto& term : candidates_from(main, allowed_sorted)) {
    if (pick.primary.size() == 2) break;
    if (std::find(pick.primary.begin(), pick.primary.end(), term) == pick.primary.end()) {
      pick.primary.push_back(std::move(term));
    }
  }
  if (pick.primary.size() < 2) {
    throw ParseError("expected two words, found " + std::to_string(pick.primary.size()) + " in '" +
                         std::string(input) + "'",
                     0, 0);
  }
  for (const auto& group : parenthesized) {
    for (auto& term : candidates_from(group, allowed_sorted)) {
      if (std::find(pick.alternates.begin(), pick.alternates.end(), term) == pick.alternates.end()) {
        pick.alternates.push_back(std::move(term));
      }
    }
  }
  auto flag = [&](const std::string& w) {
    const bool known = std::find(allowed_sorted.begin(), allowed_sorted.end(), w) != allowed_sorted.end();
    if (!known && std::find(pick.hallucinated.begin(), pick.hallucinated.end(), w) == pick.hallucinated.end()) {
      pick.hallucinated.push_back(w);
    }
  };
  for (const auto& w : pick.primary) flag(w);
  for (const auto& w : pick.alternates) flag(w);
  return pick;
}

LabelReading parse_emotion_label(std::string_view input, std::span<const occ::EmotionLabel> labels) {
  using occ::EmotionLabel;
  struct Synonym {
    std::string text;
    EmotionLabel label;
  };
  static const std::vector<Synonym> kSynonyms = [] {
    std::vector<Synonym> s = {
        {"joy", EmotionLabel::Joy},
        {"distress", EmotionLabel::Distress},
        {"happy for", EmotionLabel::HappyFor},
        {"happy-for", EmotionLabel::HappyFor},
        {"happyfor", EmotionLabel::HappyFor},
        {"pity", EmotionLabel::Pity},
        {"gloating", EmotionLabel::Gloating},
        {"resentment", EmotionLabel::Resentment},
        {"hope", EmotionLabel::Hope},
        {"fear", EmotionLabel::Fear},
        {"satisfaction", EmotionLabel::Satisfaction},
        {"satisfac.", EmotionLabel::Satisfaction},
        {"despair", EmotionLabel::Despair},
        {"fears-confirmed", EmotionLabel::Despair},
        {"fears confirmed", EmotionLabel::Despair},
        {"relief", EmotionLabel::Relief},
        {"disappointment", EmotionLabel::Disappointment},
        {"disapp.", EmotionLabel::Disappointment},
    };
    std::stable_sort(s.begin(), s.end(), [](const auto& x, const auto& y) { return x.text.size() > y.text.size(); });
    return s;
  }();

  const auto lower = text::to_lower(input);
  std::optional<EmotionLabel> found;
  for (std::size_t pos = 0; pos < lower.size() && !found; ++pos) {
    if (pos > 0 && text::is_word_char(lower[pos - 1])) continue;
    for (const auto& syn : kSynonyms) {
      if (std::find(labels.begin(), labels.end(), syn.label) == labels.end()) continue;
      if (lower.compare(pos, syn.text.size(), syn.text) != 0) continue;
      const auto end = pos + syn.text.size();
      // Abbreviations end in '.', which is already a boundary.
      if (syn.text.back() != '.' && end < lower.size() && text::is_word_char(lower[end])) continue;
      found = syn.label;
      break;
    }
  }
  if (!found) throw ParseError("no emotion label found in response: '" + std::string(input) + "'", 0, 0);

  static const std::vector<std::string> kLevels = {"medium", "high", "low"};
  auto level_after = [&](std::size_t from) -> std::optional<occ::Ordinal> {
    const auto hits = find_terms(std::string_view(lower).substr(from), kLevels);
    if (hits.empty()) return std::nullopt;
    return occ::parse_ordinal(hits.front());
  };
  std::optional<occ::Ordinal> level;
  if (const auto key = lower.find("intensity"); key != std::string::npos) level = level_after(key);
  if (!level) level = level_after(0);
  return {*found, level};
}

std::vector<std::optional<std::string>> parse_numeric_mapping(std::string_view input, std::size_t situation_count,
                                                              std::span<const std::string> words) {
  const auto sorted = by_length_desc(words);
  std::vector<std::optional<std::string>> out(situation_count);
  for (const auto line : text::split_lines(input)) {
    const auto lower = text::normalize_term(line);
    // The first standalone integer on the line names the situation.
    std::optional<std::size_t> index;
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(lower[i]))) continue;
      if (i > 0 && std::isalnum(static_cast<unsigned char>(lower[i - 1]))) continue;
      std::size_t j = i;
      while (j < lower.size() && std::isdigit(static_cast<unsigned char>(lower[j]))) ++j;
      if (j < lower.size() && (std::isalpha(static_cast<unsigned char>(lower[j])) ||
                               (lower[j] == '.' && j + 1 < lower.size() && std::isdigit(static_cast<unsigned char>(lower[j + 1]))))) {
        i = j;
        continue;
      }
      index = std::stoul(lower.substr(i, j - i));
      break;
    }
    if (!index || *index < 1 || *index > situation_count || out[*index - 1]) continue;
    const auto hits = find_terms(lower, sorted);
    if (hits.empty()) continue;
    out[*index - 1] = hits.back();
  }
  return out;
}

}  // namespace affect::prompts
