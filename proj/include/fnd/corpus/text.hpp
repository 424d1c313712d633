#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fnd::corpus {

using Tokens = std::vector<std::string>;

inline constexpr std::string_view kPadTag = "<PAD>";
inline constexpr std::string_view kUnkTag = "<UNK>";
inline constexpr std::string_view kUrlTag = "<URL>";
inline constexpr std::string_view kIntTag = "<INT>";
inline constexpr std::string_view kCapTag = "<CAP>";
inline constexpr std::string_view kEmojiTag = "<EMOJI>";
inline constexpr std::string_view kSepTag = "<SEP>";

// Which text a token list came from; decides the length cap and whether
// emoji tagging applies (user-generated text only).
enum class TextField { kTitle, kBody, kTimeline, kDescription };

std::size_t length_cap(TextField field);
bool is_user_text(TextField field);

/// Whitespace split, then punctuation marks and emoji split into their own
/// tokens. URL-shaped chunks stay whole, '#'/'@' stay attached to the word
/// they prefix, a leading sign stays on an integer, and an apostrophe between
/// two letters stays inside the word. Casing is preserved.
Tokens tokenize(std::string_view text);

/// Placeholder substitution, <CAP>/<EMOJI> tagging, lowercasing and
/// truncation to the field's cap (tags count toward the cap).
Tokens normalize(const Tokens& tokens, TextField field);

/// tokenize followed by normalize.
Tokens preprocess(std::string_view text, TextField field);

bool is_special_tag(std::string_view token);
bool is_url(std::string_view token);
bool is_integer(std::string_view token);
/// At least two alphabetic characters, all of them uppercase.
bool is_all_caps(std::string_view token);
/// Token made only of emoji code points (with joiners/selectors).
bool is_emoji_token(std::string_view token);
/// Token made only of punctuation code points.
bool is_punctuation_token(std::string_view token);

bool is_emoji_codepoint(char32_t cp);
bool is_punctuation_codepoint(char32_t cp);

std::u32string decode_utf8(std::string_view text);
std::string encode_utf8(std::u32string_view text);

/// ASCII lowercase; other bytes untouched.
std::string to_lower(std::string_view token);

}  // namespace fnd::corpus
