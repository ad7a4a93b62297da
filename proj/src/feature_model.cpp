#include "stagdep/feature_model.hpp"

#include <cstdlib>
#include <fstream>

namespace stagdep {

namespace {

constexpr const char* kNull = "NULL";
constexpr const char* kRoot = "ROOT";

const char* place_code(Place p) {
  switch (p) {
    case Place::S0: return "S0";
    case Place::S1: return "S1";
    case Place::S2: return "S2";
    case Place::B0: return "B0";
    case Place::B1: return "B1";
    case Place::B2: return "B2";
    case Place::B3: return "B3";
    case Place::LdepS0: return "S0l";
    case Place::RdepS0: return "S0r";
    case Place::LdepB0: return "B0l";
    case Place::HeadS0: return "S0h";
  }
  return "?";
}

const char* place_name(Place p) {
  switch (p) {
    case Place::S0: return "S0";
    case Place::S1: return "S1";
    case Place::S2: return "S2";
    case Place::B0: return "B0";
    case Place::B1: return "B1";
    case Place::B2: return "B2";
    case Place::B3: return "B3";
    case Place::LdepS0: return "ldep(S0)";
    case Place::RdepS0: return "rdep(S0)";
    case Place::LdepB0: return "ldep(B0)";
    case Place::HeadS0: return "head(S0)";
  }
  return "?";
}

char attr_code(Attr a) {
  switch (a) {
    case Attr::Form: return 'w';
    case Attr::Pos: return 'p';
    case Attr::Stag: return 's';
    case Attr::Deprel: return 'd';
  }
  return '?';
}

const char* attr_name(Attr a) {
  switch (a) {
    case Attr::Form: return "form";
    case Attr::Pos: return "pos";
    case Attr::Stag: return "stag";
    case Attr::Deprel: return "deprel";
  }
  return "?";
}

std::string address_code(const Address& addr) {
  return std::string(place_code(addr.place)) + attr_code(addr.attr);
}

FeatureTemplate make_template(std::vector<Address> addrs) {
  FeatureTemplate t;
  t.addrs = std::move(addrs);
  std::vector<std::string> codes;
  for (const Address& a : t.addrs) codes.push_back(address_code(a));
  t.id = join(codes, "+");
  return t;
}

FeatureTemplate distance_template() {
  FeatureTemplate t;
  t.is_distance = true;
  t.id = "dist";
  return t;
}

int resolve_place(const ParserConfig& c, Place p) {
  switch (p) {
    case Place::S0: return c.stack_at(0);
    case Place::S1: return c.stack_at(1);
    case Place::S2: return c.stack_at(2);
    case Place::B0: return c.buffer_at(0);
    case Place::B1: return c.buffer_at(1);
    case Place::B2: return c.buffer_at(2);
    case Place::B3: return c.buffer_at(3);
    case Place::LdepS0: {
      int s0 = c.stack_at(0);
      return s0 < 0 ? -1 : c.leftmost_dep(s0);
    }
    case Place::RdepS0: {
      int s0 = c.stack_at(0);
      return s0 < 0 ? -1 : c.rightmost_dep(s0);
    }
    case Place::LdepB0: {
      int b0 = c.buffer_at(0);
      return b0 < 0 ? -1 : c.leftmost_dep(b0);
    }
    case Place::HeadS0: {
      int s0 = c.stack_at(0);
      return s0 <= 0 ? -1 : c.head_of(s0);
    }
  }
  return -1;
}

std::string distance_bucket(const ParserConfig& c) {
  int s0 = c.stack_at(0);
  int b0 = c.buffer_at(0);
  if (s0 < 0 || b0 < 0) return kNull;
  int d = b0 > s0 ? b0 - s0 : s0 - b0;
  if (d <= 4) return std::to_string(d);
  if (d <= 6) return "5-6";
  return "7+";
}

}  // namespace

bool FeatureTemplateSet::uses_stag() const {
  for (const FeatureTemplate& t : templates) {
    for (const Address& a : t.addrs) {
      if (a.attr == Attr::Stag) return true;
    }
  }
  return false;
}

FeatureTemplateSet baseline_templates() {
  using enum Place;
  using enum Attr;
  FeatureTemplateSet set;
  set.name = "baseline";
  auto add = [&](std::vector<Address> addrs) { set.templates.push_back(make_template(std::move(addrs))); };
  add({{S0, Form}});
  add({{S0, Pos}});
  add({{S0, Form}, {S0, Pos}});
  add({{S1, Pos}});
  add({{S2, Pos}});
  add({{B0, Form}});
  add({{B0, Pos}});
  add({{B0, Form}, {B0, Pos}});
  add({{B1, Form}});
  add({{B1, Pos}});
  add({{B2, Pos}});
  add({{B3, Pos}});
  add({{S0, Pos}, {B0, Pos}});
  add({{S0, Pos}, {B0, Pos}, {B1, Pos}});
  add({{S1, Pos}, {S0, Pos}, {B0, Pos}});
  add({{S0, Form}, {B0, Form}});
  add({{LdepS0, Deprel}});
  add({{RdepS0, Deprel}});
  add({{LdepB0, Deprel}});
  add({{HeadS0, Pos}});
  set.templates.push_back(distance_template());
  return set;
}

FeatureTemplateSet supertag_templates() {
  using enum Place;
  using enum Attr;
  FeatureTemplateSet set = baseline_templates();
  set.name = "supertag";
  auto add = [&](std::vector<Address> addrs) { set.templates.push_back(make_template(std::move(addrs))); };
  add({{S0, Stag}});
  add({{S1, Stag}});
  add({{B0, Stag}});
  add({{B1, Stag}});
  add({{S0, Stag}, {B0, Stag}});
  add({{S0, Stag}, {B0, Pos}});
  add({{S0, Pos}, {B0, Stag}});
  add({{S0, Stag}, {B0, Stag}, {B1, Stag}});
  add({{S0, Form}, {B0, Stag}});
  return set;
}

FeatureTemplateSet template_set_by_name(const std::string& name) {
  if (name == "baseline") return baseline_templates();
  if (name == "supertag") return supertag_templates();
  throw DataError("unknown template set '" + name + "' (expected baseline or supertag)");
}

namespace {

Address parse_address(const std::string& text) {
  size_t dot = text.rfind('.');
  if (dot == std::string::npos) {
    throw DataError("template address '" + text + "' lacks an attribute (expected e.g. S0.pos)");
  }
  std::string place_str = text.substr(0, dot);
  std::string attr_str = text.substr(dot + 1);
  Address addr{};
  bool found = false;
  for (Place p : {Place::S0, Place::S1, Place::S2, Place::B0, Place::B1, Place::B2, Place::B3,
                  Place::LdepS0, Place::RdepS0, Place::LdepB0, Place::HeadS0}) {
    if (place_str == place_name(p)) {
      addr.place = p;
      found = true;
      break;
    }
  }
  if (!found) throw DataError("unknown template position '" + place_str + "'");
  if (attr_str == "form") addr.attr = Attr::Form;
  else if (attr_str == "pos") addr.attr = Attr::Pos;
  else if (attr_str == "stag") addr.attr = Attr::Stag;
  else if (attr_str == "deprel") addr.attr = Attr::Deprel;
  else throw DataError("unknown template attribute '" + attr_str + "'");
  return addr;
}

FeatureTemplate parse_template_line(const std::string& text) {
  if (text == "dist" || text == "dist(S0,B0)") return distance_template();
  std::vector<Address> addrs;
  for (const std::string& part : split(text, '+')) {
    addrs.push_back(parse_address(std::string(trim(part))));
  }
  return make_template(std::move(addrs));
}

}  // namespace

FeatureTemplateSet load_templates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open templates file " + path);
  FeatureTemplateSet set;
  set.name = "custom";
  std::string line;
  while (std::getline(in, line)) {
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    set.templates.push_back(parse_template_line(std::string(sv)));
  }
  if (set.templates.empty()) throw DataError(path + ": no templates");
  return set;
}

std::string templates_to_spec(const FeatureTemplateSet& set) {
  std::vector<std::string> lines;
  for (const FeatureTemplate& t : set.templates) {
    if (t.is_distance) {
      lines.push_back("dist(S0,B0)");
      continue;
    }
    std::vector<std::string> parts;
    for (const Address& a : t.addrs) {
      parts.push_back(std::string(place_name(a.place)) + "." + attr_name(a.attr));
    }
    lines.push_back(join(parts, "+"));
  }
  return join(lines, ";");
}

FeatureTemplateSet templates_from_spec(const std::string& name, const std::string& spec) {
  FeatureTemplateSet set;
  set.name = name;
  for (const std::string& part : split(spec, ';')) {
    if (!trim(part).empty()) set.templates.push_back(parse_template_line(std::string(trim(part))));
  }
  if (set.templates.empty()) throw DataError("empty template spec");
  return set;
}

std::string resolve_address(const ParserConfig& c, const Sentence& s, const Address& addr,
                            StagSource source) {
  int node = resolve_place(c, addr.place);
  if (node < 0) return kNull;
  if (node == 0) {
    return addr.attr == Attr::Deprel ? kNull : kRoot;
  }
  const Token& tok = s.token(node);
  switch (addr.attr) {
    case Attr::Form: return tok.form;
    case Attr::Pos: return tok.pos;
    case Attr::Stag: {
      const std::optional<std::string>& stag =
          source == StagSource::Pred ? tok.pred_supertag : tok.gold_supertag;
      if (!stag) {
        throw DataError("token " + std::to_string(node) + " ('" + tok.form + "') lacks a " +
                        (source == StagSource::Pred ? "predicted" : "gold") +
                        " supertag annotation required by the template set");
      }
      return *stag;
    }
    case Attr::Deprel: {
      const std::string& l = c.label_of(node);
      return l.empty() ? kNull : l;
    }
  }
  return kNull;
}

std::vector<std::string> extract_features(const ParserConfig& c, const Sentence& s,
                                          const FeatureTemplateSet& set, StagSource source) {
  std::vector<std::string> out;
  out.reserve(set.templates.size());
  for (const FeatureTemplate& t : set.templates) {
    std::string feature = t.id;
    feature += '=';
    if (t.is_distance) {
      feature += distance_bucket(c);
    } else {
      for (size_t i = 0; i < t.addrs.size(); ++i) {
        if (i > 0) feature += '|';
        feature += resolve_address(c, s, t.addrs[i], source);
      }
    }
    out.push_back(std::move(feature));
  }
  return out;
}

}  // namespace stagdep
