#include "axiscope/ingest.hpp"

#include <cctype>

#include <json.hpp>

namespace axiscope {

using nlohmann::json;

IngestReport& IngestReport::operator+=(const IngestReport& other) {
    lines_read += other.lines_read;
    statements_kept += other.statements_kept;
    statements_dropped += other.statements_dropped;
    malformed_lines += other.malformed_lines;
    if (!first_error && other.first_error) first_error = other.first_error;
    return *this;
}

namespace {

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

struct Bad {
    std::string message;
};

EntityId entity_field(const json& j, const char* what) {
    if (!j.is_string()) throw Bad{std::string(what) + " must be an entity id string"};
    auto id = try_parse_entity_id(j.get_ref<const std::string&>());
    if (!id) throw Bad{std::string("malformed entity id in ") + what};
    return *id;
}

PropertyId property_field(const json& j, const char* what) {
    if (!j.is_string()) throw Bad{std::string(what) + " must be a property id string"};
    auto id = try_parse_property_id(j.get_ref<const std::string&>());
    if (!id) throw Bad{std::string("malformed property id in ") + what};
    return *id;
}

Value value_field(const json& j, const char* what) {
    if (j.is_null()) return Value::novalue();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "~somevalue") return Value::somevalue();
        auto id = try_parse_entity_id(s);
        if (!id) throw Bad{std::string("malformed entity id in ") + what};
        return *id;
    }
    if (j.is_object()) {
        auto it = j.find("text");
        if (it == j.end() || !it->is_string()) throw Bad{std::string(what) + " object needs a string \"text\""};
        return Value::text(it->get<std::string>());
    }
    throw Bad{std::string(what) + " has unsupported type"};
}

Statement parse_record(std::string_view line) {
    json j = json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded()) throw Bad{"invalid JSON"};
    if (!j.is_object()) throw Bad{"record is not a JSON object"};

    Statement s;
    auto subj = j.find("s");
    auto prop = j.find("p");
    auto obj = j.find("o");
    if (subj == j.end()) throw Bad{"missing \"s\""};
    if (prop == j.end()) throw Bad{"missing \"p\""};
    if (obj == j.end()) throw Bad{"missing \"o\""};
    s.subject = entity_field(*subj, "\"s\"");
    s.property = property_field(*prop, "\"p\"");
    s.value = value_field(*obj, "\"o\"");

    if (auto r = j.find("rank"); r != j.end()) {
        if (!r->is_string()) throw Bad{"\"rank\" must be a string"};
        auto rank = parse_rank(r->get_ref<const std::string&>());
        if (!rank) throw Bad{"unknown rank '" + r->get<std::string>() + "'"};
        s.rank = *rank;
    }
    if (auto q = j.find("q"); q != j.end() && !q->is_null()) {
        if (!q->is_array()) throw Bad{"\"q\" must be an array"};
        s.qualifiers.reserve(q->size());
        for (const auto& pair : *q) {
            if (!pair.is_array() || pair.size() != 2) throw Bad{"qualifier must be a [property, value] pair"};
            s.qualifiers.push_back(Qualifier{property_field(pair[0], "qualifier"), value_field(pair[1], "qualifier")});
        }
    }
    if (auto refs = j.find("refs"); refs != j.end() && !refs->is_null()) {
        if (!refs->is_array()) throw Bad{"\"refs\" must be an array"};
        for (const auto& r : *refs) s.references.push_back(r.dump());
    }
    return s;
}

// --- N-Triples -------------------------------------------------------------

enum class TermKind { iri, literal, blank };

struct Term {
    TermKind kind;
    std::string text;
};

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp <= 0x10FFFF) {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        throw Bad{"code point out of range"};
    }
}

class TripleLexer {
public:
    explicit TripleLexer(std::string_view line) : s_(line) {}

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size() || s_[pos_] == '#';
    }

    Term term() {
        skip_ws();
        if (pos_ >= s_.size()) throw Bad{"unexpected end of triple"};
        char c = s_[pos_];
        if (c == '<') return iri();
        if (c == '"') return literal();
        if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') return blank();
        throw Bad{"unexpected character in triple"};
    }

    void expect_dot() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '.') throw Bad{"triple must end with '.'"};
        ++pos_;
        if (!at_end()) throw Bad{"trailing characters after '.'"};
    }

private:
    std::uint32_t hex(std::size_t digits) {
        if (pos_ + digits > s_.size()) throw Bad{"truncated \\u escape"};
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < digits; ++i) {
            char h = s_[pos_++];
            v <<= 4;
            if (h >= '0' && h <= '9') v |= static_cast<std::uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') v |= static_cast<std::uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') v |= static_cast<std::uint32_t>(h - 'A' + 10);
            else throw Bad{"bad hex digit in escape"};
        }
        return v;
    }

    Term iri() {
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= s_.size()) throw Bad{"unterminated IRI"};
            char c = s_[pos_++];
            if (c == '>') break;
            if (c == '\\') {
                if (pos_ >= s_.size()) throw Bad{"dangling escape in IRI"};
                char e = s_[pos_++];
                if (e == 'u') append_utf8(out, hex(4));
                else if (e == 'U') append_utf8(out, hex(8));
                else throw Bad{"invalid escape in IRI"};
                continue;
            }
            if (c == ' ' || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
                throw Bad{"invalid character in IRI"};
            out += c;
        }
        return {TermKind::iri, std::move(out)};
    }

    Term literal() {
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= s_.size()) throw Bad{"unterminated literal"};
            char c = s_[pos_++];
            if (c == '"') break;
            if (c != '\\') {
                out += c;
                continue;
            }
            if (pos_ >= s_.size()) throw Bad{"dangling escape in literal"};
            switch (char e = s_[pos_++]) {
                case 't': out += '\t'; break;
                case 'b': out += '\b'; break;
                case 'n': out += '\n'; break;
                case 'r': out += '\r'; break;
                case 'f': out += '\f'; break;
                case '"': out += '"'; break;
                case '\'': out += '\''; break;
                case '\\': out += '\\'; break;
                case 'u': append_utf8(out, hex(4)); break;
                case 'U': append_utf8(out, hex(8)); break;
                default: throw Bad{std::string("invalid escape \\") + e + " in literal"};
            }
        }
        // Language tag or datatype are accepted and discarded.
        if (pos_ < s_.size() && s_[pos_] == '@') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
            if (pos_ == start) throw Bad{"empty language tag"};
        } else if (s_.substr(pos_, 2) == "^^") {
            pos_ += 2;
            if (pos_ >= s_.size() || s_[pos_] != '<') throw Bad{"datatype must be an IRI"};
            iri();
        }
        return {TermKind::literal, std::move(out)};
    }

    Term blank() {
        pos_ += 2;
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
        if (pos_ == start) throw Bad{"empty blank node label"};
        return {TermKind::blank, std::string(s_.substr(start, pos_ - start))};
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

std::optional<EntityId> entity_iri(const Term& t, const std::string& prefix) {
    if (t.kind != TermKind::iri || t.text.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    return try_parse_entity_id(std::string_view(t.text).substr(prefix.size()));
}

// Returns nullopt when the triple lies outside the configured namespaces.
std::optional<Statement> parse_triple(std::string_view line, const IngestOptions& opts) {
    TripleLexer lex(line);
    Term s = lex.term();
    Term p = lex.term();
    Term o = lex.term();
    lex.expect_dot();

    if (s.kind == TermKind::literal) throw Bad{"literal in subject position"};
    if (p.kind != TermKind::iri) throw Bad{"predicate must be an IRI"};

    auto subject = entity_iri(s, opts.entity_prefix);
    if (!subject) return std::nullopt;
    if (p.text.compare(0, opts.property_prefix.size(), opts.property_prefix) != 0) return std::nullopt;
    auto property = try_parse_property_id(std::string_view(p.text).substr(opts.property_prefix.size()));
    if (!property) return std::nullopt;

    Statement st;
    st.subject = *subject;
    st.property = *property;
    if (o.kind == TermKind::blank) {
        st.value = Value::somevalue();
    } else if (auto e = entity_iri(o, opts.entity_prefix)) {
        st.value = *e;
    } else {
        st.value = Value::text(std::move(o.text));
    }
    return st;
}

}  // namespace

Statement parse_statement_json(std::string_view line) {
    try {
        return parse_record(line);
    } catch (const Bad& b) {
        throw MalformedRecord(0, b.message);
    }
}

IngestReport ingest_into(KnowledgeBaseBuilder& builder, std::istream& in, const IngestOptions& opts) {
    IngestReport report;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        if (opts.format == DumpFormat::ntriples && line.find_first_not_of(" \t") != std::string::npos &&
            line[line.find_first_not_of(" \t")] == '#')
            continue;
        ++report.lines_read;

        std::optional<Statement> st;
        try {
            if (opts.format == DumpFormat::jsonl) st = parse_record(line);
            else st = parse_triple(line, opts);
        } catch (const Bad& b) {
            ++report.malformed_lines;
            if (!report.first_error) report.first_error = IngestError{lineno, b.message};
            if (opts.on_malformed == OnMalformed::fail) throw MalformedRecord(lineno, b.message);
            continue;
        }

        if (!st || (opts.property_allowlist && !opts.property_allowlist->contains(st->property))) {
            ++report.statements_dropped;
            continue;
        }
        builder.add(st->subject, st->property, std::move(st->value), st->rank, std::move(st->qualifiers),
                    std::move(st->references));
        ++report.statements_kept;
    }
    if (in.bad()) throw IoError("read failure after line " + std::to_string(lineno));
    return report;
}

std::pair<KnowledgeBase, IngestReport> ingest_jsonl(std::istream& in, IngestOptions opts) {
    opts.format = DumpFormat::jsonl;
    KnowledgeBaseBuilder b;
    IngestReport r = ingest_into(b, in, opts);
    return {std::move(b).freeze(), std::move(r)};
}

std::pair<KnowledgeBase, IngestReport> ingest_ntriples(std::istream& in, IngestOptions opts) {
    opts.format = DumpFormat::ntriples;
    KnowledgeBaseBuilder b;
    IngestReport r = ingest_into(b, in, opts);
    return {std::move(b).freeze(), std::move(r)};
}

namespace {

json value_json(const Value& v) {
    if (v.is_entity()) return to_string(v.entity());
    if (v.is_text()) return json{{"text", v.text()}};
    if (v.is_somevalue()) return "~somevalue";
    return nullptr;
}

}  // namespace

std::string statement_to_json(const Statement& s) {
    json j;
    j["s"] = to_string(s.subject);
    j["p"] = to_string(s.property);
    j["o"] = value_json(s.value);
    j["rank"] = std::string(to_string(s.rank));
    if (!s.qualifiers.empty()) {
        json q = json::array();
        for (const auto& qual : s.qualifiers) q.push_back(json::array({to_string(qual.property), value_json(qual.value)}));
        j["q"] = std::move(q);
    }
    if (!s.references.empty()) {
        json refs = json::array();
        for (const auto& r : s.references) refs.push_back(json::parse(r));
        j["refs"] = std::move(refs);
    }
    return j.dump();
}

void export_jsonl(const KnowledgeBase& kb, std::ostream& out) {
    for (const auto& s : kb.statements()) out << statement_to_json(s) << '\n';
}

}  // namespace axiscope
