#include "fnd/model/setup.hpp"

namespace fnd::model {

std::string_view setup_name(Setup setup) {
  switch (setup) {
    case Setup::kNews: return "News";
    case Setup::kTL: return "TL";
    case Setup::kDE: return "DE";
    case Setup::kTLDE: return "TL+DE";
    case Setup::kNTL: return "N+TL";
    case Setup::kNDE: return "N+DE";
    case Setup::kNTLDE: return "N+TL+DE";
  }
  return "?";
}

std::optional<Setup> parse_setup(std::string_view name) {
  for (Setup s : kAllSetups) {
    if (setup_name(s) == name) return s;
  }
  return std::nullopt;
}

std::string valid_setup_names() {
  std::string out;
  for (Setup s : kAllSetups) {
    if (!out.empty()) out += ", ";
    out += setup_name(s);
  }
  return out;
}

bool uses_news(Setup s) { return s == Setup::kNews || s == Setup::kNTL || s == Setup::kNDE || s == Setup::kNTLDE; }

bool uses_users(Setup s) { return s != Setup::kNews; }

bool uses_timeline(Setup s) {
  return s == Setup::kTL || s == Setup::kTLDE || s == Setup::kNTL || s == Setup::kNTLDE;
}

bool uses_description(Setup s) {
  return s == Setup::kDE || s == Setup::kTLDE || s == Setup::kNDE || s == Setup::kNTLDE;
}

std::size_t modality_count(Setup s) { return (uses_news(s) ? 1 : 0) + (uses_users(s) ? 1 : 0); }

}  // namespace fnd::model
