#include "cafie/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cafie/errors.hpp"

namespace cafie {

namespace {

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c >= 0x80;
}

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

void reject_unknown_fields(const nlohmann::json& obj,
                           const std::set<std::string>& allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError("unknown field \"" + it.key() + "\" in " + where);
}

}  // namespace

const Attribute* AttributeLexicon::find_attribute(
    const std::string& name) const {
  for (const auto& a : attributes)
    if (a.name == name) return &a;
  return nullptr;
}

AttributeLexicon parse_lexicon(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("lexicon JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("lexicon root must be an object");
  reject_unknown_fields(j, {"attributes"}, "lexicon root");
  if (!j.contains("attributes") || !j["attributes"].is_array())
    throw ParseError("lexicon requires an \"attributes\" array");

  AttributeLexicon lex;
  std::set<std::string> attr_names;
  for (const auto& ja : j["attributes"]) {
    if (!ja.is_object()) throw ParseError("attribute must be an object");
    reject_unknown_fields(ja, {"name", "groups", "pair_map"}, "attribute");
    Attribute attr;
    attr.name = ja.at("name").get<std::string>();
    if (!attr_names.insert(attr.name).second)
      throw ValidationError("duplicate attribute name: " + attr.name);

    std::set<std::string> group_names;
    std::set<std::string> seen_tokens;  // lowercased, per attribute
    for (const auto& jg : ja.at("groups")) {
      reject_unknown_fields(jg, {"name", "tokens"},
                            "group of attribute " + attr.name);
      Group g;
      g.name = jg.at("name").get<std::string>();
      if (!group_names.insert(g.name).second)
        throw ValidationError("duplicate group name \"" + g.name +
                              "\" in attribute " + attr.name);
      for (const auto& jt : jg.at("tokens")) {
        std::string tok = jt.get<std::string>();
        if (tok.empty())
          throw ValidationError("empty token in group " + g.name);
        if (!seen_tokens.insert(to_lower(tok)).second)
          throw ValidationError("token \"" + tok +
                                "\" appears in two groups of attribute " +
                                attr.name);
        g.tokens.push_back(std::move(tok));
      }
      if (g.tokens.empty())
        throw ValidationError("empty token list in group " + g.name +
                              " of attribute " + attr.name);
      attr.groups.push_back(std::move(g));
    }
    if (attr.groups.empty())
      throw ValidationError("attribute " + attr.name + " has no groups");

    if (ja.contains("pair_map")) {
      for (auto it = ja["pair_map"].begin(); it != ja["pair_map"].end(); ++it) {
        const std::string surface = to_lower(it.key());
        if (!seen_tokens.count(surface))
          throw ValidationError("pair_map entry \"" + it.key() +
                                "\" is not a token of attribute " + attr.name);
        std::map<std::string, std::string> m;
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
          m[jt.key()] = jt.value().get<std::string>();
        attr.pair_map[surface] = std::move(m);
      }
    }
    lex.attributes.push_back(std::move(attr));
  }
  return lex;
}

AttributeLexicon load_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open lexicon file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lexicon(ss.str());
}

std::vector<SensitiveSpan> detect_sensitive(const std::string& text,
                                            const AttributeLexicon& lexicon) {
  const std::string lowered = to_lower(text);

  struct Candidate {
    std::size_t start, end;
    std::size_t attr_index;
    const Attribute* attr;
    const Group* group;
    std::string normalized;
  };
  std::vector<Candidate> candidates;

  for (std::size_t ai = 0; ai < lexicon.attributes.size(); ++ai) {
    const Attribute& attr = lexicon.attributes[ai];
    for (const Group& g : attr.groups) {
      for (const std::string& tok : g.tokens) {
        const std::string needle = to_lower(tok);
        std::size_t pos = 0;
        while ((pos = lowered.find(needle, pos)) != std::string::npos) {
          const std::size_t end = pos + needle.size();
          const bool left_ok =
              pos == 0 || !is_word_char(static_cast<unsigned char>(lowered[pos - 1]));
          const bool right_ok =
              end == lowered.size() ||
              !is_word_char(static_cast<unsigned char>(lowered[end]));
          if (left_ok && right_ok)
            candidates.push_back({pos, end, ai, &attr, &g, needle});
          ++pos;
        }
      }
    }
  }

  // Longest match wins at a position; attribute declaration order breaks ties.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.start != b.start) return a.start < b.start;
              if (a.end != b.end) return a.end > b.end;
              return a.attr_index < b.attr_index;
            });

  std::vector<SensitiveSpan> spans;
  std::size_t cursor = 0;
  for (const Candidate& c : candidates) {
    if (c.start < cursor) continue;
    spans.push_back({c.attr->name, c.group->name,
                     text.substr(c.start, c.end - c.start), c.start, c.end,
                     c.normalized});
    cursor = c.end;
  }
  return spans;
}

std::string match_casing(const std::string& surface,
                         const std::string& replacement) {
  auto is_up = [](unsigned char c) { return std::isupper(c) != 0; };
  auto has_alpha = [](const std::string& s) {
    return std::any_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isalpha(c) != 0; });
  };
  if (!has_alpha(surface)) return replacement;

  const bool all_upper = std::all_of(surface.begin(), surface.end(),
                                     [&](unsigned char c) {
                                       return !std::isalpha(c) || is_up(c);
                                     });
  std::string out = replacement;
  if (all_upper && surface.size() > 1) {
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return out;
  }
  if (is_up(static_cast<unsigned char>(surface[0])) && !out.empty())
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

CounterfactualSet build_counterfactuals(const std::string& text,
                                        const std::vector<SensitiveSpan>& spans,
                                        const AttributeLexicon& lexicon,
                                        std::size_t max_per_attribute) {
  CounterfactualSet set;
  set.source_text = text;

  for (const Attribute& attr : lexicon.attributes) {
    std::vector<const SensitiveSpan*> attr_spans;
    std::set<std::string> source_groups;
    for (const auto& s : spans)
      if (s.attribute == attr.name) {
        attr_spans.push_back(&s);
        source_groups.insert(s.group);
      }
    if (attr_spans.empty()) continue;

    std::size_t emitted = 0;
    for (const Group& target : attr.groups) {
      if (emitted >= max_per_attribute) break;
      if (source_groups.count(target.name)) continue;  // never map onto itself

      Counterfactual cf;
      cf.target_group = target.name;
      cf.text = text;
      // Replace right-to-left so earlier offsets stay valid.
      for (auto it = attr_spans.rbegin(); it != attr_spans.rend(); ++it) {
        const SensitiveSpan& s = **it;
        std::string repl;
        auto pm = attr.pair_map.find(s.normalized);
        if (pm != attr.pair_map.end()) {
          for (const auto& [gname, word] : pm->second)
            if (!attr.groups.empty() &&
                std::none_of(attr.groups.begin(), attr.groups.end(),
                             [&](const Group& g) { return g.name == gname; }))
              throw SubstitutionError("pair_map for \"" + s.normalized +
                                      "\" points to unknown group " + gname);
          auto hit = pm->second.find(target.name);
          if (hit != pm->second.end()) repl = hit->second;
        }
        if (repl.empty()) repl = target.tokens.front();
        repl = match_casing(s.surface, repl);
        cf.text.replace(s.char_start, s.char_end - s.char_start, repl);
        cf.substitutions.emplace_back(s, repl);
      }
      std::reverse(cf.substitutions.begin(), cf.substitutions.end());
      set.counterfactuals.push_back(std::move(cf));
      ++emitted;
    }
  }
  return set;
}

}  // namespace cafie
