#include "fnd/echograph/topics.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fnd/interpret/attribution.hpp"
#include "fnd/util/error.hpp"
#include "fnd/util/io.hpp"

namespace fnd::echograph {

bool TopicVector::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

std::vector<double> topic_activations(const corpus::Document& doc, const nn::ConvEncoder& encoder,
                                      const corpus::Vocabulary& vocab,
                                      const interpret::Lexicon& lexicon) {
  std::vector<double> t(lexicon.topics.size(), 0.0);
  const corpus::Document docs[] = {doc};
  for (const interpret::RelevantNgram& r :
       interpret::extract_relevant_ngrams(encoder, docs, vocab)) {
    std::set<std::size_t> topics;
    for (const std::string& tok : r.tokens) {
      for (const std::string& name : lexicon.topics_of(tok)) topics.insert(*lexicon.topic_index(name));
    }
    for (std::size_t i : topics) t[i] += r.activation;
  }
  return t;
}

TopicVector topic_vector(const corpus::EncodedUser& user, const model::FakeNewsModel& model,
                         const corpus::Vocabulary& vocab, const interpret::Lexicon& lexicon) {
  const model::Setup setup = model.config().setup;
  if (setup != model::Setup::kTL && setup != model::Setup::kDE) {
    throw std::invalid_argument("topic vectors need a TL or DE model, got " +
                                std::string(model::setup_name(setup)));
  }
  TopicVector tv;
  tv.user_id = user.id;
  const corpus::Document* text = nullptr;
  if (setup == model::Setup::kTL) {
    text = &user.timeline;
  } else if (user.description) {
    text = &*user.description;
  }
  if (text == nullptr || text->empty()) {
    tv.values.assign(lexicon.topics.size(), 0.0);
  } else {
    tv.values = topic_activations(*text, model.user_encoder(), vocab, lexicon);
  }
  return tv;
}

std::string topic_vectors_tsv(const std::vector<TopicVector>& vectors,
                              const std::vector<std::string>& topic_names) {
  std::string out = "#topics";
  for (const std::string& n : topic_names) out += "\t" + n;
  out += "\n";
  for (const TopicVector& v : vectors) {
    out += v.user_id;
    for (double x : v.values) out += "\t" + io::format_double(x);
    out += "\n";
  }
  return out;
}

std::map<std::string, std::vector<double>> parse_topic_vectors_tsv(std::string_view text) {
  std::map<std::string, std::vector<double>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id;
    std::getline(fields, id, '\t');
    std::vector<double> values;
    std::string cell;
    while (std::getline(fields, cell, '\t')) {
      try {
        values.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("topic vectors line " + std::to_string(line_no) + ": bad number");
      }
    }
    if (width == 0) width = values.size();
    if (values.size() != width || width == 0) {
      throw InputError("topic vectors line " + std::to_string(line_no) + ": inconsistent width");
    }
    out[id] = std::move(values);
  }
  return out;
}

}  // namespace fnd::echograph
