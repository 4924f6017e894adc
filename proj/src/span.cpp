#include "cascade_ner/span.hpp"

#include <algorithm>
#include <string>

#include "cascade_ner/error.hpp"

namespace cascade_ner {

Span::Span(int start, int end, std::optional<EntityType> type)
    : start(start), end(end), type(type) {
  if (start < 0 || start >= end) {
    throw Error(ErrorKind::kSpanOutOfRange,
                "invalid span [" + std::to_string(start) + ", " +
                    std::to_string(end) + ")");
  }
}

std::vector<Span> decode_bio(const TagSequence& tags) {
  const bool typed = tags.scheme == TagScheme::kFull27;
  std::vector<Span> spans;

  int open_start = -1;
  std::optional<EntityType> open_type;
  auto close = [&](int end) {
    if (open_start >= 0) {
      spans.emplace_back(open_start, end, open_type);
      open_start = -1;
      open_type.reset();
    }
  };

  const int n = tags.size();
  for (int i = 0; i < n; ++i) {
    const int id = tags.labels[i];
    if (typed) {
      if (id == kFull27O) {
        close(i);
        continue;
      }
      const EntityType type = static_cast<EntityType>(id / 2);
      const bool begin = (id % 2) == 0;
      if (begin || open_start < 0 || open_type != type) {
        // B always opens; a stray or type-changing I also opens a new span.
        close(i);
        open_start = i;
        open_type = type;
      }
    } else {
      if (id == kUntypedO) {
        close(i);
      } else if (id == kUntypedB || open_start < 0) {
        close(i);
        open_start = i;
      }
      // a continuing I extends the open span
    }
  }
  close(n);
  return spans;
}

TagSequence encode_bio(std::span<const Span> spans, int length, TagScheme scheme) {
  if (length < 0) {
    throw Error(ErrorKind::kSpanOutOfRange, "negative sequence length");
  }
  std::vector<Span> sorted(spans.begin(), spans.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Span& a, const Span& b) { return a.start < b.start; });

  const int o_id = scheme == TagScheme::kFull27 ? kFull27O : kUntypedO;
  std::vector<int> labels(static_cast<size_t>(length), o_id);
  int previous_end = 0;
  for (const Span& span : sorted) {
    if (span.end > length) {
      throw Error(ErrorKind::kSpanOutOfRange,
                  "span [" + std::to_string(span.start) + ", " +
                      std::to_string(span.end) + ") exceeds length " +
                      std::to_string(length));
    }
    if (span.start < previous_end) {
      throw Error(ErrorKind::kOverlappingSpans,
                  "span starting at " + std::to_string(span.start) +
                      " overlaps the previous span");
    }
    previous_end = span.end;

    if (scheme == TagScheme::kFull27) {
      if (!span.type) {
        throw Error(ErrorKind::kMissingTypeForFullScheme,
                    "span [" + std::to_string(span.start) + ", " +
                        std::to_string(span.end) + ") has no type");
      }
      labels[span.start] = full27_begin(*span.type);
      for (int i = span.start + 1; i < span.end; ++i) {
        labels[i] = full27_inside(*span.type);
      }
    } else {
      labels[span.start] = kUntypedB;
      for (int i = span.start + 1; i < span.end; ++i) labels[i] = kUntypedI;
    }
  }
  return TagSequence(scheme, std::move(labels));
}

TagSequence collapse_scheme(const TagSequence& tags) {
  if (tags.scheme != TagScheme::kFull27) {
    throw Error(ErrorKind::kSchemeMismatch, "collapse_scheme expects full27 tags");
  }
  std::vector<int> labels;
  labels.reserve(tags.labels.size());
  for (int id : tags.labels) {
    if (id == kFull27O) {
      labels.push_back(kUntypedO);
    } else {
      labels.push_back(id % 2 == 0 ? kUntypedB : kUntypedI);
    }
  }
  return TagSequence(TagScheme::kUntyped3, std::move(labels));
}

std::vector<Span> apply_types(std::span<const Span> spans,
                              std::span<const EntityType> types) {
  if (spans.size() != types.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                std::to_string(spans.size()) + " spans vs " +
                    std::to_string(types.size()) + " types");
  }
  std::vector<Span> out;
  out.reserve(spans.size());
  for (size_t i = 0; i < spans.size(); ++i) {
    out.emplace_back(spans[i].start, spans[i].end, types[i]);
  }
  return out;
}

int sentence_entity_label(const TagSequence& tags) {
  return decode_bio(tags).empty() ? 0 : 1;
}

std::vector<Span> erase_types(std::span<const Span> spans) {
  std::vector<Span> out;
  out.reserve(spans.size());
  for (const Span& span : spans) out.emplace_back(span.start, span.end);
  return out;
}

}  // namespace cascade_ner
