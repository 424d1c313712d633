#include "fnd/corpus/text.hpp"

#include <algorithm>
#include <array>

namespace fnd::corpus {
namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

// Emoji blocks (Unicode 15): pictographs, emoticons, transport, supplemental
// symbols, dingbats, misc symbols, regional indicators, mahjong/cards.
constexpr std::array kEmojiRanges{
    Range{0x1F000, 0x1F02F}, Range{0x1F0A0, 0x1F0FF}, Range{0x1F1E6, 0x1F1FF},
    Range{0x1F300, 0x1F5FF}, Range{0x1F600, 0x1F64F}, Range{0x1F680, 0x1F6FF},
    Range{0x1F700, 0x1F77F}, Range{0x1F780, 0x1F7FF}, Range{0x1F800, 0x1F8FF},
    Range{0x1F900, 0x1F9FF}, Range{0x1FA70, 0x1FAFF}, Range{0x2600, 0x26FF},
    Range{0x2700, 0x27BF},   Range{0x2B00, 0x2BFF},   Range{0x231A, 0x231B},
    Range{0x23E9, 0x23FA},
};

// Zero-width joiner, variation selectors and skin-tone modifiers continue the
// preceding emoji.
bool is_emoji_continuation(char32_t cp) {
  return cp == 0x200D || (cp >= 0xFE00 && cp <= 0xFE0F) || (cp >= 0x1F3FB && cp <= 0x1F3FF) ||
         cp == 0x20E3;
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' ||
         cp == U'\v' || cp == 0x00A0 || cp == 0x2028 || cp == 0x2029 || cp == 0x3000 ||
         (cp >= 0x2000 && cp <= 0x200A);
}

bool is_ascii_alpha(char32_t cp) { return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z'); }
bool is_ascii_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_letter(char32_t cp) {
  if (is_ascii_alpha(cp)) return true;
  // Latin-1 supplement and beyond; anything not punctuation/emoji/space.
  return cp >= 0xC0 && !is_punctuation_codepoint(cp) && !is_emoji_codepoint(cp) &&
         !is_emoji_continuation(cp) && !is_space(cp) && cp != 0xD7 && cp != 0xF7;
}

bool starts_with_ci(std::u32string_view s, std::u32string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    char32_t c = s[i];
    if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
    if (c != prefix[i]) return false;
  }
  return true;
}

bool chunk_is_url(std::u32string_view chunk) {
  return starts_with_ci(chunk, U"http://") || starts_with_ci(chunk, U"https://") ||
         starts_with_ci(chunk, U"www.");
}

// URLs commonly end a sentence; trailing punctuation is split back off.
std::size_t url_end(std::u32string_view chunk) {
  std::size_t end = chunk.size();
  while (end > 0) {
    const char32_t c = chunk[end - 1];
    if (c == U'.' || c == U',' || c == U'!' || c == U'?' || c == U';' || c == U':' ||
        c == U')' || c == U'"' || c == U'\'') {
      --end;
    } else {
      break;
    }
  }
  return end;
}

void split_chunk(std::u32string_view chunk, Tokens& out) {
  std::u32string word;
  auto flush = [&] {
    if (!word.empty()) {
      out.push_back(encode_utf8(word));
      word.clear();
    }
  };

  std::size_t i = 0;
  while (i < chunk.size()) {
    const char32_t cp = chunk[i];
    if (chunk_is_url(chunk.substr(i)) && word.empty()) {
      const std::u32string_view rest = chunk.substr(i);
      const std::size_t end = url_end(rest);
      out.push_back(encode_utf8(rest.substr(0, end)));
      i += end;
      continue;
    }
    if (is_emoji_codepoint(cp)) {
      flush();
      std::u32string emoji(1, cp);
      ++i;
      while (i < chunk.size() && is_emoji_continuation(chunk[i])) {
        emoji.push_back(chunk[i]);
        ++i;
        // ZWJ sequences glue the next pictograph on.
        if (emoji.back() == 0x200D && i < chunk.size() && is_emoji_codepoint(chunk[i])) {
          emoji.push_back(chunk[i]);
          ++i;
        }
      }
      out.push_back(encode_utf8(emoji));
      continue;
    }
    if (is_emoji_continuation(cp)) {
      ++i;  // stray selector
      continue;
    }
    if (is_punctuation_codepoint(cp)) {
      const bool next_is_word = i + 1 < chunk.size() && is_letter(chunk[i + 1]);
      const bool next_is_alnum =
          i + 1 < chunk.size() && (is_letter(chunk[i + 1]) || is_ascii_digit(chunk[i + 1]));
      const bool next_is_digit = i + 1 < chunk.size() && is_ascii_digit(chunk[i + 1]);
      if ((cp == U'#' || cp == U'@') && word.empty() && next_is_alnum) {
        word.push_back(cp);
        ++i;
        continue;
      }
      if ((cp == U'-' || cp == U'+') && word.empty() && next_is_digit) {
        word.push_back(cp);
        ++i;
        continue;
      }
      if ((cp == U'\'' || cp == 0x2019) && !word.empty() && is_letter(word.back()) &&
          next_is_word) {
        word.push_back(cp);
        ++i;
        continue;
      }
      flush();
      out.push_back(encode_utf8(std::u32string(1, cp)));
      ++i;
      continue;
    }
    word.push_back(cp);
    ++i;
  }
  flush();
}

}  // namespace

std::size_t length_cap(TextField field) {
  switch (field) {
    case TextField::kTitle: return 30;
    case TextField::kBody: return 1000;
    case TextField::kTimeline: return 1000;
    case TextField::kDescription: return 50;
  }
  return 0;
}

bool is_user_text(TextField field) {
  return field == TextField::kTimeline || field == TextField::kDescription;
}

bool is_emoji_codepoint(char32_t cp) {
  return std::any_of(kEmojiRanges.begin(), kEmojiRanges.end(),
                     [cp](const Range& r) { return cp >= r.lo && cp <= r.hi; });
}

bool is_punctuation_codepoint(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  // Latin-1 punctuation, general punctuation, CJK punctuation.
  return (cp >= 0xA1 && cp <= 0xBF && cp != 0xAA && cp != 0xB5 && cp != 0xBA) ||
         (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x3003) || (cp >= 0x3008 && cp <= 0x3011);
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 >> 5) == 0x6) {
      len = 2;
    } else if ((b0 >> 4) == 0xE) {
      len = 3;
    } else if ((b0 >> 3) == 0x1E) {
      len = 4;
    }
    if (len > 1) {
      if (i + len > text.size()) {
        len = 1;
      } else {
        cp = len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
        for (std::size_t k = 1; k < len; ++k) {
          const auto bk = static_cast<unsigned char>(text[i + k]);
          if ((bk >> 6) != 0x2) {
            cp = 0xFFFD;
            len = 1;
            break;
          }
          cp = (cp << 6) | (bk & 0x3F);
        }
      }
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

Tokens tokenize(std::string_view text) {
  Tokens out;
  const std::u32string cps = decode_utf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    if (j > i) split_chunk(std::u32string_view(cps).substr(i, j - i), out);
    i = j;
  }
  return out;
}

bool is_special_tag(std::string_view token) {
  return token == kPadTag || token == kUnkTag || token == kUrlTag || token == kIntTag ||
         token == kCapTag || token == kEmojiTag || token == kSepTag;
}

bool is_url(std::string_view token) {
  const std::u32string cps = decode_utf8(token);
  return chunk_is_url(cps);
}

bool is_integer(std::string_view token) {
  std::size_t i = 0;
  if (!token.empty() && (token[0] == '-' || token[0] == '+')) i = 1;
  if (i == token.size()) return false;
  return std::all_of(token.begin() + static_cast<std::ptrdiff_t>(i), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool is_all_caps(std::string_view token) {
  std::size_t alpha = 0;
  for (char c : token) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') ++alpha;
  }
  return alpha >= 2;
}

bool is_emoji_token(std::string_view token) {
  const std::u32string cps = decode_utf8(token);
  if (cps.empty() || !is_emoji_codepoint(cps.front())) return false;
  return std::all_of(cps.begin(), cps.end(),
                     [](char32_t c) { return is_emoji_codepoint(c) || is_emoji_continuation(c); });
}

bool is_punctuation_token(std::string_view token) {
  const std::u32string cps = decode_utf8(token);
  return !cps.empty() && std::all_of(cps.begin(), cps.end(), is_punctuation_codepoint);
}

std::string to_lower(std::string_view token) {
  std::string out(token);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Tokens normalize(const Tokens& tokens, TextField field) {
  const bool tag_emoji = is_user_text(field);
  const std::size_t cap = length_cap(field);
  Tokens out;
  out.reserve(std::min(cap, tokens.size() * 2));
  for (std::size_t i = 0; i < tokens.size() && out.size() < cap; ++i) {
    const std::string& tok = tokens[i];
    if (is_special_tag(tok)) {
      out.push_back(tok);
    } else if (is_url(tok)) {
      out.emplace_back(kUrlTag);
    } else if (is_integer(tok)) {
      out.emplace_back(kIntTag);
    } else if (tag_emoji && is_emoji_token(tok)) {
      // Re-normalizing already-tagged text must not double the tag.
      if (i == 0 || tokens[i - 1] != kEmojiTag) out.emplace_back(kEmojiTag);
      out.push_back(tok);
    } else if (is_all_caps(tok)) {
      if (i == 0 || tokens[i - 1] != kCapTag) out.emplace_back(kCapTag);
      out.push_back(to_lower(tok));
    } else {
      out.push_back(to_lower(tok));
    }
  }
  if (out.size() > cap) out.resize(cap);
  return out;
}

Tokens preprocess(std::string_view text, TextField field) { return normalize(tokenize(text), field); }

}  // namespace fnd::corpus
