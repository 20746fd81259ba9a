#pragma once

#include <iosfwd>
#include <string>

#include "bilanz/ontology.hpp"

namespace bilanz {

/// Serializes the class structure as an RDF/OWL-subset XML document:
/// owl:Class with rdf:ID, rdfs:subClassOf, rdfs:comment (xml:lang="en"),
/// owl:disjointWith. Classes appear in lexicographic id order, so identical
/// trees produce identical bytes. Slots and instances are not part of the
/// subset and are not emitted.
std::string export_owl(const OntologyTree& tree);

/// Reads a document in the subset emitted by export_owl (subClassOf and
/// disjointWith are accepted both as rdf:resource attributes and as nested
/// owl:Class rdf:about elements, matching common OWL snippets). Elements
/// outside the subset are rejected. Throws ParseError (with line) for
/// malformed XML and OntologyError for dangling references, duplicate ids,
/// or a missing/ambiguous root.
OntologyTree import_owl(std::istream& in);
OntologyTree import_owl(const std::string& document);

}  // namespace bilanz
