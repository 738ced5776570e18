#pragma once

#include <string>

#include "tempofilt/filtration.hpp"
#include "tempofilt/gram.hpp"
#include "tempofilt/persistence.hpp"
#include "tempofilt/temporal_graph.hpp"

namespace tempofilt {

// Column layout of a contact-sequence line. Trailing extra fields are ignored,
// which covers sensor datasets that append metadata columns.
enum class ColumnOrder { TUV, UVT };

ColumnOrder column_order_from_string(const std::string& name);

// Whole-file text helpers. Paths ending in ".gz" are compressed/decompressed
// transparently; writes go to a temp file in the target directory and are
// renamed into place, so readers never observe partial output.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal representation; infinities print as "inf"/"-inf".
std::string format_double(double v);

// Contact sequences: whitespace-delimited lines, '#' starts a comment line,
// vertices are arbitrary whitespace-free tokens mapped to dense ids in order
// of first appearance. A leading "# order name0 name1 ..." comment (written by
// format_contact_sequence) pins the id assignment and the vertex count so that
// write -> read reproduces a graph exactly, isolated vertices included.
TemporalGraph parse_contact_sequence(const std::string& text, ColumnOrder order,
                                     const std::string& origin);
TemporalGraph read_contact_sequence(const std::string& path,
                                    ColumnOrder order = ColumnOrder::TUV);
std::string format_contact_sequence(const TemporalGraph& g);
void write_contact_sequence(const TemporalGraph& g, const std::string& path);

// Filtered graphs: "# vertices N" header, then "u v value" lines ("inf" for
// edges with an empty neighborhood).
FilteredGraph parse_filtered_graph(const std::string& text, const std::string& origin);
FilteredGraph read_filtered_graph(const std::string& path);
std::string format_filtered_graph(const FilteredGraph& g);
void write_filtered_graph(const FilteredGraph& g, const std::string& path);

// Diagrams: "degree birth death" lines, death may be "inf".
PersistenceDiagram parse_diagram(const std::string& text, const std::string& origin);
PersistenceDiagram read_diagram(const std::string& path);
std::string format_diagram(const PersistenceDiagram& d);
void write_diagram(const PersistenceDiagram& d, const std::string& path);

// Gram matrices: CSV whose first row holds the ids, followed by a dense
// square matrix of kernel values.
GramMatrix parse_gram_csv(const std::string& text, const std::string& origin);
GramMatrix read_gram_csv(const std::string& path);
std::string format_gram_csv(const GramMatrix& g);
void write_gram_csv(const GramMatrix& g, const std::string& path);

}  // namespace tempofilt
