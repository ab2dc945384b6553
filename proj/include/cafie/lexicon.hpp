#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace cafie {

struct Group {
  std::string name;
  std::vector<std::string> tokens;  // declaration order matters
};

struct Attribute {
  std::string name;
  std::vector<Group> groups;
  // surface -> (group name -> aligned replacement), e.g. "he" -> {female: "she"}
  std::map<std::string, std::map<std::string, std::string>> pair_map;
};

/// Immutable after load; all operations below are pure.
struct AttributeLexicon {
  std::vector<Attribute> attributes;

  const Attribute* find_attribute(const std::string& name) const;
};

struct SensitiveSpan {
  std::string attribute;
  std::string group;
  std::string surface;     // exact slice of the source text
  std::size_t char_start = 0;
  std::size_t char_end = 0;
  std::string normalized;  // lowercased surface
};

struct Counterfactual {
  std::string text;
  std::string target_group;
  std::vector<std::pair<SensitiveSpan, std::string>> substitutions;
};

struct CounterfactualSet {
  std::string source_text;
  std::vector<Counterfactual> counterfactuals;

  std::size_t r() const { return counterfactuals.size(); }
};

AttributeLexicon load_lexicon(const std::string& path);
AttributeLexicon parse_lexicon(const std::string& json_text);

/// Maximal case-insensitive whole-word matches, non-overlapping, sorted by
/// position; longest match wins; attribute declaration order breaks ties.
std::vector<SensitiveSpan> detect_sensitive(const std::string& text,
                                            const AttributeLexicon& lexicon);

/// One counterfactual per (triggering attribute, other group), in lexicon
/// declaration order, capped at max_per_attribute. Every span of the
/// triggering attribute is replaced consistently.
CounterfactualSet build_counterfactuals(const std::string& text,
                                        const std::vector<SensitiveSpan>& spans,
                                        const AttributeLexicon& lexicon,
                                        std::size_t max_per_attribute);

/// Transfers the casing pattern of `surface` onto `replacement`.
std::string match_casing(const std::string& surface,
                         const std::string& replacement);

}  // namespace cafie
