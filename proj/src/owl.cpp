#include "bilanz/owl.hpp"

#include <istream>
#include <map>
#include <sstream>
#include <utility>

#include "bilanz/errors.hpp"

namespace bilanz {

namespace {

constexpr const char* kImportsUrl = "http://protege.stanford.edu/plugins/owl/protege";

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// --- minimal XML document model ---------------------------------------------

struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<XmlNode> children;
  std::string text;
  std::size_t line = 0;

  const std::string* attr(const std::string& key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

/// Hand-rolled reader for the emitted subset: elements, attributes, character
/// data, XML declaration and comments. No namespaces resolution, DTDs or
/// CDATA; prefixes are treated as part of the element name.
class XmlReader {
 public:
  explicit XmlReader(std::string_view src) : src_(src) {}

  XmlNode parse_document() {
    skip_misc();
    if (eof()) throw ParseError("empty document: no root element", line_);
    XmlNode root = parse_element();
    skip_misc();
    if (!eof()) throw ParseError("content after the root element", line_);
    return root;
  }

 private:
  bool eof() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }
  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  void expect(char c) {
    if (eof() || peek() != c)
      throw ParseError(std::string("expected '") + c + "'", line_);
    take();
  }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r')) take();
  }

  void skip_until(std::string_view terminator) {
    while (!eof() && !starts_with(terminator)) take();
    if (eof()) throw ParseError("unterminated markup", line_);
    for (std::size_t i = 0; i < terminator.size(); ++i) take();
  }

  void skip_misc() {
    while (true) {
      skip_ws();
      if (starts_with("<?")) skip_until("?>");
      else if (starts_with("<!--")) skip_until("-->");
      else return;
    }
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == ':' || c == '_' || c == '-' || c == '.';
  }

  std::string parse_name() {
    std::string name;
    while (!eof() && name_char(peek())) name += take();
    if (name.empty()) throw ParseError("expected a name", line_);
    return name;
  }

  std::string decode_entity() {
    // positioned on '&'
    take();
    std::string entity;
    while (!eof() && peek() != ';' && entity.size() < 8) entity += take();
    if (eof() || peek() != ';') throw ParseError("malformed entity reference", line_);
    take();
    if (entity == "amp") return "&";
    if (entity == "lt") return "<";
    if (entity == "gt") return ">";
    if (entity == "quot") return "\"";
    if (entity == "apos") return "'";
    throw ParseError("unsupported entity '&" + entity + ";'", line_);
  }

  std::string parse_attr_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) throw ParseError("expected quoted value", line_);
    char quote = take();
    std::string value;
    while (!eof() && peek() != quote) {
      if (peek() == '<') throw ParseError("'<' in attribute value", line_);
      if (peek() == '&') value += decode_entity();
      else value += take();
    }
    if (eof()) throw ParseError("unterminated attribute value", line_);
    take();
    return value;
  }

  XmlNode parse_element() {
    XmlNode node;
    node.line = line_;
    expect('<');
    node.name = parse_name();
    while (true) {
      skip_ws();
      if (eof()) throw ParseError("unterminated element <" + node.name + ">", line_);
      if (starts_with("/>")) {
        take();
        take();
        return node;
      }
      if (peek() == '>') {
        take();
        parse_content(node);
        return node;
      }
      std::string key = parse_name();
      skip_ws();
      expect('=');
      skip_ws();
      node.attrs.emplace_back(key, parse_attr_value());
    }
  }

  void parse_content(XmlNode& node) {
    while (true) {
      if (eof()) throw ParseError("missing </" + node.name + ">", line_);
      if (starts_with("</")) {
        take();
        take();
        std::string closing = parse_name();
        if (closing != node.name)
          throw ParseError("mismatched </" + closing + ">, expected </" + node.name + ">", line_);
        skip_ws();
        expect('>');
        return;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (peek() == '<') {
        node.children.push_back(parse_element());
      } else if (peek() == '&') {
        node.text += decode_entity();
      } else {
        node.text += take();
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

// --- subset interpretation ---------------------------------------------------

std::string strip_ref(const std::string& ref) {
  return !ref.empty() && ref.front() == '#' ? ref.substr(1) : ref;
}

/// rdf:resource attribute or a nested <owl:Class rdf:about="#X"/>.
std::string parse_class_ref(const XmlNode& node) {
  if (const std::string* resource = node.attr("rdf:resource")) return strip_ref(*resource);
  const XmlNode* ref = nullptr;
  for (const XmlNode& child : node.children) {
    if (child.name != "owl:Class")
      throw ParseError("element outside the supported subset: <" + child.name + ">", child.line);
    if (ref) throw ParseError("multiple class references in <" + node.name + ">", child.line);
    ref = &child;
  }
  if (!ref) throw ParseError("<" + node.name + "> carries no class reference", node.line);
  if (const std::string* about = ref->attr("rdf:about")) return strip_ref(*about);
  if (const std::string* id = ref->attr("rdf:ID")) return strip_ref(*id);
  throw ParseError("class reference without rdf:about", ref->line);
}

struct ClassDecl {
  OntClass cls;
  std::size_t line = 0;
};

ClassDecl parse_class(const XmlNode& node) {
  ClassDecl decl;
  decl.line = node.line;
  if (const std::string* id = node.attr("rdf:ID")) decl.cls.id = *id;
  else if (const std::string* about = node.attr("rdf:about")) decl.cls.id = strip_ref(*about);
  else throw ParseError("owl:Class without rdf:ID", node.line);

  for (const XmlNode& child : node.children) {
    if (child.name == "rdfs:comment") {
      if (decl.cls.comment) throw ParseError("multiple rdfs:comment on '" + decl.cls.id + "'", child.line);
      decl.cls.comment = child.text;
    } else if (child.name == "rdfs:subClassOf") {
      if (decl.cls.parent)
        throw ParseError("multiple rdfs:subClassOf on '" + decl.cls.id + "'", child.line);
      decl.cls.parent = parse_class_ref(child);
    } else if (child.name == "owl:disjointWith") {
      decl.cls.disjoint_with.insert(parse_class_ref(child));
    } else {
      throw ParseError("element outside the supported subset: <" + child.name + ">", child.line);
    }
  }
  return decl;
}

}  // namespace

std::string export_owl(const OntologyTree& tree) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n";
  out << "<rdf:RDF xmlns:owl=\"http://www.w3.org/2002/07/owl#\""
         " xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\""
         " xmlns:rdfs=\"http://www.w3.org/2000/01/rdf-schema#\">\n";
  out << "  <owl:Ontology rdf:about=\"\">\n";
  out << "    <owl:imports rdf:resource=\"" << kImportsUrl << "\"/>\n";
  out << "  </owl:Ontology>\n";
  for (const auto& [id, cls] : tree.classes()) {
    bool empty = !cls.comment && !cls.parent && cls.disjoint_with.empty();
    out << "  <owl:Class rdf:ID=\"" << xml_escape(id) << "\"";
    if (empty) {
      out << "/>\n";
      continue;
    }
    out << ">\n";
    if (cls.comment)
      out << "    <rdfs:comment xml:lang=\"en\">" << xml_escape(*cls.comment)
          << "</rdfs:comment>\n";
    if (cls.parent)
      out << "    <rdfs:subClassOf rdf:resource=\"#" << xml_escape(*cls.parent) << "\"/>\n";
    for (const std::string& other : cls.disjoint_with)
      out << "    <owl:disjointWith rdf:resource=\"#" << xml_escape(other) << "\"/>\n";
    out << "  </owl:Class>\n";
  }
  out << "</rdf:RDF>\n";
  return out.str();
}

OntologyTree import_owl(const std::string& document) {
  XmlReader reader(document);
  XmlNode root = reader.parse_document();
  if (root.name != "rdf:RDF")
    throw ParseError("expected <rdf:RDF> root, got <" + root.name + ">", root.line);

  std::vector<ClassDecl> decls;
  for (const XmlNode& child : root.children) {
    if (child.name == "owl:Ontology") {
      for (const XmlNode& sub : child.children)
        if (sub.name != "owl:imports" && sub.name != "owl:Ontology")
          throw ParseError("element outside the supported subset: <" + sub.name + ">", sub.line);
      continue;
    }
    if (child.name != "owl:Class")
      throw ParseError("element outside the supported subset: <" + child.name + ">", child.line);
    decls.push_back(parse_class(child));
  }
  if (decls.empty()) throw OntologyError("document declares no classes (no root)");

  std::map<std::string, const ClassDecl*> by_id;
  for (const ClassDecl& decl : decls) {
    if (!by_id.emplace(decl.cls.id, &decl).second)
      throw OntologyError("duplicate class id '" + decl.cls.id + "'");
  }
  for (const ClassDecl& decl : decls) {
    if (decl.cls.parent && !by_id.count(*decl.cls.parent))
      throw OntologyError("dangling subClassOf reference '#" + *decl.cls.parent + "' on '" +
                          decl.cls.id + "'");
    for (const std::string& other : decl.cls.disjoint_with)
      if (!by_id.count(other))
        throw OntologyError("dangling disjointWith reference '#" + other + "' on '" +
                            decl.cls.id + "'");
  }

  // Insert parents before children; anything left over sits on a parent cycle.
  OntologyTree tree;
  std::map<std::string, const ClassDecl*> pending = by_id;
  while (!pending.empty()) {
    bool progressed = false;
    for (auto it = pending.begin(); it != pending.end();) {
      const OntClass& cls = it->second->cls;
      if (!cls.parent || tree.has_class(*cls.parent)) {
        OntClass copy = cls;
        copy.disjoint_with.clear();  // applied after all classes exist
        tree.add_class(std::move(copy));
        it = pending.erase(it);
        progressed = true;
      } else {
        ++it;
      }
    }
    if (!progressed)
      throw OntologyError("subClassOf cycle involving '" + pending.begin()->first + "'");
  }
  for (const ClassDecl& decl : decls)
    for (const std::string& other : decl.cls.disjoint_with) tree.add_disjoint(decl.cls.id, other);
  return tree;
}

OntologyTree import_owl(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return import_owl(buffer.str());
}

}  // namespace bilanz
