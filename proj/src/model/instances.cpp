#include "fnd/model/instances.hpp"

#include "fnd/util/error.hpp"

namespace fnd::model {

using corpus::Vocabulary;

corpus::Document news_document(const corpus::EncodedNews& news) {
  corpus::Document doc = news.title;
  doc.push_back(Vocabulary::kSep);
  doc.insert(doc.end(), news.body.begin(), news.body.end());
  return doc;
}

corpus::Document user_document(const corpus::EncodedUser& user, Setup setup) {
  const bool tl = uses_timeline(setup);
  const bool de = uses_description(setup);
  corpus::Document doc;
  if (tl) doc = user.timeline;
  if (de && user.description) {
    if (tl) doc.push_back(Vocabulary::kSep);
    doc.insert(doc.end(), user.description->begin(), user.description->end());
  }
  if (doc.empty()) doc.push_back(Vocabulary::kPad);
  return doc;
}

std::vector<Instance> make_instances(const corpus::EncodedDataset& data, Setup setup,
                                     std::span<const std::size_t> indices) {
  std::vector<Instance> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    const corpus::EncodedNews& news = data.news.at(i);
    Instance inst;
    inst.id = news.id;
    inst.label = news.label;
    if (uses_news(setup)) inst.news = news_document(news);
    if (uses_users(setup)) {
      for (const std::string& uid : news.users) {
        auto it = data.users.find(uid);
        if (it == data.users.end()) {
          throw InputError("news " + news.id + " references unknown user " + uid);
        }
        inst.users.push_back(user_document(it->second, setup));
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace fnd::model
