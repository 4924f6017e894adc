#include "cascade_ner/features.hpp"

#include <algorithm>
#include <cctype>

#include "cascade_ner/error.hpp"
#include "cascade_ner/hash.hpp"

namespace cascade_ner {

void FeatureVector::add(std::string_view feature) {
  ids.push_back(fnv1a64(feature));
}

bool FeatureVector::contains(std::string_view feature) const {
  const FeatureId id = fnv1a64(feature);
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string word_shape(std::string_view word) {
  std::string shape;
  shape.reserve(word.size());
  for (unsigned char c : word) {
    if (c >= 'A' && c <= 'Z') shape += 'X';
    else if (c >= 'a' && c <= 'z') shape += 'x';
    else if (c >= '0' && c <= '9') shape += 'd';
    else shape += '#';
  }
  return shape;
}

namespace {

std::string lowercased(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_capitalized(std::string_view word) {
  return !word.empty() && word.front() >= 'A' && word.front() <= 'Z';
}

bool is_all_caps(std::string_view word) {
  bool has_alpha = false;
  for (unsigned char c : word) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') has_alpha = true;
  }
  return has_alpha;
}

bool contains_digit(std::string_view word) {
  return std::any_of(word.begin(), word.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

// The fixed per-word template set; `slot` is "" for the focus token and
// "[-2]".."[+2]" for neighbors.
void add_word_templates(const std::string& word, const std::string& slot,
                        FeatureVector& features) {
  features.add("w" + slot + "=" + word);
  features.add("lw" + slot + "=" + lowercased(word));
  features.add("shape" + slot + "=" + word_shape(word));
  for (size_t k = 1; k <= 3 && k <= word.size(); ++k) {
    features.add("pre" + std::to_string(k) + slot + "=" + word.substr(0, k));
    features.add("suf" + std::to_string(k) + slot + "=" +
                 word.substr(word.size() - k));
  }
  if (is_capitalized(word)) features.add("cap" + slot + "=1");
  if (is_all_caps(word)) features.add("allcaps" + slot + "=1");
  if (contains_digit(word)) features.add("digit" + slot + "=1");
}

std::string offset_slot(int offset) {
  return offset < 0 ? "[" + std::to_string(offset) + "]"
                    : "[+" + std::to_string(offset) + "]";
}

}  // namespace

FeatureVector featurize_token(const Sentence& sentence, int i) {
  if (i < 0 || i >= sentence.size()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "token index " + std::to_string(i) + " in sentence '" +
                    sentence.id() + "' of length " +
                    std::to_string(sentence.size()));
  }
  FeatureVector features;
  add_word_templates(sentence.text_at(i), "", features);
  for (int offset : {-2, -1, 1, 2}) {
    const int j = i + offset;
    const std::string slot = offset_slot(offset);
    if (j < 0) {
      features.add("w" + slot + "=<BOS>");
    } else if (j >= sentence.size()) {
      features.add("w" + slot + "=<EOS>");
    } else {
      add_word_templates(sentence.text_at(j), slot, features);
    }
  }
  return features;
}

FeatureVector featurize_sentence(const Sentence& sentence) {
  FeatureVector features;
  for (const Token& token : sentence.tokens()) {
    features.add("w=" + token.text);
    features.add("lw=" + lowercased(token.text));
    features.add("shape=" + word_shape(token.text));
  }
  for (int i = 0; i + 1 < sentence.size(); ++i) {
    features.add("bg=" + lowercased(sentence.text_at(i)) + " " +
                 lowercased(sentence.text_at(i + 1)));
  }
  return features;
}

std::string SpanQuery::prompt() const {
  return "What is " + span_text + " in the sentence: " + sentence_text;
}

SpanQuery make_span_query(const Sentence& sentence, const Span& span,
                          int context_window) {
  if (span.start < 0 || span.end > sentence.size()) {
    throw Error(ErrorKind::kSpanOutOfRange,
                "span [" + std::to_string(span.start) + ", " +
                    std::to_string(span.end) + ") outside sentence '" +
                    sentence.id() + "'");
  }
  SpanQuery query;
  for (int i = span.start; i < span.end; ++i) {
    if (i > span.start) query.span_text += ' ';
    query.span_text += sentence.text_at(i);
  }
  for (int i = std::max(0, span.start - context_window); i < span.start; ++i) {
    query.left_context.push_back(sentence.text_at(i));
  }
  for (int i = span.end; i < std::min(sentence.size(), span.end + context_window);
       ++i) {
    query.right_context.push_back(sentence.text_at(i));
  }
  query.sentence_text = sentence.joined_text();
  return query;
}

FeatureVector featurize_span_query(const SpanQuery& query) {
  FeatureVector features;
  features.add("span=" + query.span_text);

  std::vector<std::string> span_tokens;
  {
    std::string token;
    for (char c : query.span_text) {
      if (c == ' ') {
        if (!token.empty()) span_tokens.push_back(std::move(token));
        token.clear();
      } else {
        token += c;
      }
    }
    if (!token.empty()) span_tokens.push_back(std::move(token));
  }
  for (const std::string& token : span_tokens) {
    features.add("stok=" + token);
    features.add("slw=" + lowercased(token));
    features.add("sshape=" + word_shape(token));
  }
  const size_t length = span_tokens.size();
  features.add("len=" + (length >= 5 ? std::string("5+") : std::to_string(length)));

  // Nearest-first context slots; missing slots emit sentinels.
  for (int d = 1; d <= kSpanContextWindow; ++d) {
    const int li = static_cast<int>(query.left_context.size()) - d;
    features.add("left-" + std::to_string(d) + "=" +
                 (li >= 0 ? query.left_context[li] : "<BOS>"));
    const size_t ri = static_cast<size_t>(d) - 1;
    features.add("right-" + std::to_string(d) + "=" +
                 (ri < query.right_context.size() ? query.right_context[ri]
                                                  : "<EOS>"));
  }

  // Sentence bag, as in the question prompt.
  std::string word;
  for (char c : query.sentence_text) {
    if (c == ' ') {
      if (!word.empty()) features.add("sw=" + lowercased(word));
      word.clear();
    } else {
      word += c;
    }
  }
  if (!word.empty()) features.add("sw=" + lowercased(word));
  return features;
}

}  // namespace cascade_ner
