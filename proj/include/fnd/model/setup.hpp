#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace fnd::model {

// Input configurations: news only, user text only (timeline, description or
// both), and news combined with each user-text variant.
enum class Setup { kNews, kTL, kDE, kTLDE, kNTL, kNDE, kNTLDE };

inline constexpr std::array kAllSetups{Setup::kNews, Setup::kTL,  Setup::kDE,   Setup::kTLDE,
                                       Setup::kNTL,  Setup::kNDE, Setup::kNTLDE};

std::string_view setup_name(Setup setup);
/// Exact, case-sensitive match against the seven names.
std::optional<Setup> parse_setup(std::string_view name);
/// "News, TL, DE, TL+DE, N+TL, N+DE, N+TL+DE"
std::string valid_setup_names();

bool uses_news(Setup setup);
bool uses_users(Setup setup);
bool uses_timeline(Setup setup);
bool uses_description(Setup setup);
std::size_t modality_count(Setup setup);

}  // namespace fnd::model
