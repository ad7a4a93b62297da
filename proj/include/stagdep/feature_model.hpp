// Feature extraction from parser configurations.
//
// Feature strings render as "templateId=v1|v2|..." with compact address
// codes: S0w = stack-top form, B0p = buffer-front POS, B0s = its supertag,
// S0ld = deprel of S0's leftmost dependent, S0hp = POS of S0's head, and
// "dist" for the bucketed S0/B0 distance.  Missing positions contribute
// the NULL marker; node 0 renders as ROOT for form/pos/stag.
#pragma once

#include <string>
#include <vector>

#include "stagdep/conllx.hpp"
#include "stagdep/transition.hpp"

namespace stagdep {

enum class Place { S0, S1, S2, B0, B1, B2, B3, LdepS0, RdepS0, LdepB0, HeadS0 };
enum class Attr { Form, Pos, Stag, Deprel };

struct Address {
  Place place;
  Attr attr;
};

struct FeatureTemplate {
  bool is_distance = false;
  std::vector<Address> addrs;  // empty for the distance template
  std::string id;
};

struct FeatureTemplateSet {
  std::string name;  // "baseline", "supertag" or "custom"
  std::vector<FeatureTemplate> templates;

  bool uses_stag() const;
};

// Which annotation slot supplies the stag attribute.
enum class StagSource { Gold, Pred };

FeatureTemplateSet baseline_templates();
FeatureTemplateSet supertag_templates();  // baseline plus the stag templates
FeatureTemplateSet template_set_by_name(const std::string& name);

// One template per line, addresses joined by "+", e.g. "S0.pos+B0.stag";
// "dist(S0,B0)" (or "dist") selects the distance template; "#" comments.
FeatureTemplateSet load_templates_file(const std::string& path);
// Serialization of a set back into the file syntax, templates joined by ";".
std::string templates_to_spec(const FeatureTemplateSet& set);
FeatureTemplateSet templates_from_spec(const std::string& name, const std::string& spec);

std::string resolve_address(const ParserConfig& c, const Sentence& s, const Address& addr,
                            StagSource source = StagSource::Gold);

// Exactly one feature string per template.  Throws DataError when a stag
// template needs an annotation the sentence does not carry.
std::vector<std::string> extract_features(const ParserConfig& c, const Sentence& s,
                                          const FeatureTemplateSet& set,
                                          StagSource source = StagSource::Gold);

}  // namespace stagdep
