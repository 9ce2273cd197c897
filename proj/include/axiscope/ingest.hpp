#pragma once
// Streaming readers that build a frozen KnowledgeBase from dump files.
//
// Statement-JSONL (one record per line):
//   {"s":"Q5","p":"P279","o":"Q8205328","rank":"normal","q":[["P1013","Q23766486"]]}
// "o" is an entity id string, null (novalue), {"text":"..."} or "~somevalue".
// "rank" defaults to normal and "q" to empty. An optional "refs" array is
// kept verbatim as opaque reference blobs; other unknown fields are ignored.
//
// N-Triples carries the truthy view only: every triple becomes a normal-rank
// statement without qualifiers, so axis extraction over it finds nothing.

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include "axiscope/model.hpp"

namespace axiscope {

class MalformedRecord : public Error {
public:
    MalformedRecord(std::size_t line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

enum class DumpFormat { jsonl, ntriples };
enum class OnMalformed { fail, skip };

struct IngestOptions {
    DumpFormat format = DumpFormat::jsonl;
    std::optional<std::set<PropertyId>> property_allowlist;
    OnMalformed on_malformed = OnMalformed::fail;
    std::string entity_prefix = "http://www.wikidata.org/entity/";
    std::string property_prefix = "http://www.wikidata.org/prop/direct/";
};

struct IngestError {
    std::size_t line = 0;
    std::string message;
};

struct IngestReport {
    std::size_t lines_read = 0;  // non-blank lines
    std::size_t statements_kept = 0;
    std::size_t statements_dropped = 0;  // well-formed but filtered out
    std::size_t malformed_lines = 0;
    std::optional<IngestError> first_error;

    IngestReport& operator+=(const IngestReport& other);
};

/// Appends the records of one stream to `builder`. Several inputs can be
/// loaded into one builder before freezing.
IngestReport ingest_into(KnowledgeBaseBuilder& builder, std::istream& in, const IngestOptions& opts);

std::pair<KnowledgeBase, IngestReport> ingest_jsonl(std::istream& in, IngestOptions opts = {});
std::pair<KnowledgeBase, IngestReport> ingest_ntriples(std::istream& in, IngestOptions opts = {});

/// Parses one Statement-JSONL record. Throws MalformedRecord (line 0).
Statement parse_statement_json(std::string_view line);

/// Debug dump: writes every statement as Statement-JSONL, in key order.
void export_jsonl(const KnowledgeBase& kb, std::ostream& out);
std::string statement_to_json(const Statement& s);

}  // namespace axiscope
