#include "snic/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "snic/errors.hpp"

namespace snic::io {

using Json = nlohmann::ordered_json;

namespace {

// ------------------------------------------------------------- printing

void print(const Json& j, std::string& out, int depth);

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void indent(std::string& out, int depth) { out.append(static_cast<std::size_t>(depth) * 2, ' '); }

void print_array(const Json& j, std::string& out, int depth) {
    if (j.empty()) {
        out += "[]";
        return;
    }
    bool flat = true;
    for (const auto& v : j) flat = flat && scalar(v);
    if (flat) {
        out += '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ',';
            out += j[i].dump();
        }
        out += ']';
        return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
        indent(out, depth + 1);
        print(j[i], out, depth + 1);
        out += i + 1 < j.size() ? ",\n" : "\n";
    }
    indent(out, depth);
    out += ']';
}

void print_object(const Json& j, std::string& out, int depth) {
    if (j.empty()) {
        out += "{}";
        return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
        indent(out, depth + 1);
        out += Json(key).dump();
        out += ": ";
        print(value, out, depth + 1);
        out += ++i < j.size() ? ",\n" : "\n";
    }
    indent(out, depth);
    out += '}';
}

void print(const Json& j, std::string& out, int depth) {
    if (j.is_object())
        print_object(j, out, depth);
    else if (j.is_array())
        print_array(j, out, depth);
    else
        out += j.dump();
}

std::string render(const Json& j) {
    std::string out;
    print(j, out, 0);
    out += '\n';
    return out;
}

Json header(DocumentKind kind) {
    Json j = Json::object();
    j["kind"] = std::string(to_string(kind));
    j["format_version"] = kFormatVersion;
    return j;
}

Json ids(const IdSet& set) {
    Json a = Json::array();
    for (const auto& s : set) a.push_back(s);
    return a;
}

Json function_json(const FiniteFunction& f) {
    Json j = Json::object();
    Json slots = Json::array();
    for (const auto& s : f.slots()) slots.push_back(Json{{"name", s.name}, {"alphabet", s.alphabet.size}});
    j["slots"] = std::move(slots);
    j["output_alphabet"] = f.output().size;
    j["table"] = f.table();
    return j;
}

// -------------------------------------------------------------- parsing

[[noreturn]] void fail(const std::string& what) { throw FormatError(what); }

// Field access that rejects unknown keys once every expected key was read.
class Reader {
public:
    Reader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) fail(where_ + ": expected an object");
    }
    const Json& required(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end()) fail(where_ + ": missing field \"" + key + "\"");
        return *it;
    }
    const Json* optional(const std::string& key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }
    void finish() const {
        for (const auto& [key, value] : j_.items())
            if (!seen_.count(key)) fail(where_ + ": unknown field \"" + key + "\"");
    }
    const std::string& where() const { return where_; }

private:
    const Json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

std::string str(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where + ": expected a string");
    return j.get<std::string>();
}

std::uint64_t uint(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) fail(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

Alphabet alphabet(const Json& j, const std::string& where) { return Alphabet{uint(j, where)}; }

IdSet id_set(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array of strings");
    IdSet out;
    for (const auto& v : j)
        if (!out.insert(str(v, where)).second) fail(where + ": duplicate entry " + v.get<std::string>());
    return out;
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where + ": expected an array");
    return j;
}

const Json& object(const Json& j, const std::string& where) {
    if (!j.is_object()) fail(where + ": expected an object");
    return j;
}

FiniteFunction parse_function(const Json& j, const std::string& where) {
    Reader r(j, where);
    std::vector<Slot> slots;
    for (const auto& s : array(r.required("slots"), where + ".slots")) {
        Reader rs(s, where + ".slots[]");
        slots.push_back({str(rs.required("name"), where + ".slots[].name"),
                         alphabet(rs.required("alphabet"), where + ".slots[].alphabet")});
        rs.finish();
    }
    const Alphabet out = alphabet(r.required("output_alphabet"), where + ".output_alphabet");
    std::vector<Symbol> table;
    for (const auto& v : array(r.required("table"), where + ".table")) {
        const std::uint64_t x = uint(v, where + ".table");
        if (x > std::numeric_limits<Symbol>::max()) fail(where + ".table: entry out of range");
        table.push_back(static_cast<Symbol>(x));
    }
    r.finish();
    try {
        return FiniteFunction(std::move(slots), out, std::move(table));
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        fail(where + ": " + e.what());
    }
}

std::map<std::string, FiniteFunction> function_map(const Json& j, const std::string& where) {
    std::map<std::string, FiniteFunction> out;
    for (const auto& [key, value] : object(j, where).items()) out.emplace(key, parse_function(value, where + "." + key));
    return out;
}

Json document(std::string_view text, DocumentKind expected) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail("document is not a JSON object");
    const DocumentKind kind = peek_kind(text);
    if (kind != expected)
        fail("expected a " + std::string(to_string(expected)) + " document, found " + std::string(to_string(kind)));
    return j;
}

template <class T, class F>
T guarded(F&& body) {
    try {
        return body();
    } catch (const FormatError&) {
        throw;
    } catch (const Json::exception& e) {
        fail(std::string("malformed document: ") + e.what());
    }
}

std::string_view origin_kind_name(OriginKind kind) {
    switch (kind) {
        case OriginKind::source: return "source";
        case OriginKind::edge: return "edge";
        case OriginKind::node: return "node";
    }
    return "?";
}

OriginKind origin_kind(const std::string& text, const std::string& where) {
    for (auto k : {OriginKind::source, OriginKind::edge, OriginKind::node})
        if (origin_kind_name(k) == text) return k;
    fail(where + ": unknown origin kind " + text);
}

}  // namespace

std::string_view to_string(DocumentKind kind) noexcept {
    switch (kind) {
        case DocumentKind::network_instance: return "network-instance";
        case DocumentKind::index_instance: return "index-instance";
        case DocumentKind::network_code: return "network-code";
        case DocumentKind::index_code: return "index-code";
        case DocumentKind::index_to_network_mapping: return "index-to-network-mapping";
        case DocumentKind::network_to_index_mapping: return "network-to-index-mapping";
        case DocumentKind::augmentation_record: return "augmentation-record";
    }
    return "?";
}

DocumentKind peek_kind(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text.begin(), text.end());
    } catch (const Json::exception& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) fail("document is not a JSON object");
    auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) fail("document has no \"kind\"");
    auto version = j.find("format_version");
    if (version == j.end() || !version->is_number_integer() || version->get<long long>() != kFormatVersion)
        fail("unsupported or missing \"format_version\" (expected 1)");
    const std::string name = kind->get<std::string>();
    for (int k = 0; k <= static_cast<int>(DocumentKind::augmentation_record); ++k)
        if (to_string(static_cast<DocumentKind>(k)) == name) return static_cast<DocumentKind>(k);
    fail("unknown document kind \"" + name + "\"");
}

// ------------------------------------------------------------------ emit

std::string emit(const NetworkInstance& instance) {
    Json j = header(DocumentKind::network_instance);
    j["nodes"] = instance.nodes;
    Json edges = Json::array();
    for (const auto& e : instance.edges)
        edges.push_back(Json{{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"alphabet", e.alphabet.size}});
    j["edges"] = std::move(edges);
    Json sources = Json::array();
    for (const auto& s : instance.sources)
        sources.push_back(Json{{"id", s.id},
                               {"origin", s.origin},
                               {"alphabet", s.alphabet.size},
                               {"destinations", ids(s.destinations)}});
    j["sources"] = std::move(sources);
    Json eves = Json::array();
    for (const auto& r : instance.eavesdroppers)
        eves.push_back(
            Json{{"id", r.id}, {"tapped_edges", ids(r.tapped_edges)}, {"target_sources", ids(r.target_sources)}});
    j["eavesdroppers"] = std::move(eves);
    j["block_size_n"] = instance.block_size_n;
    return render(j);
}

std::string emit(const IndexInstance& instance) {
    Json j = header(DocumentKind::index_instance);
    Json messages = Json::array();
    for (const auto& m : instance.messages) messages.push_back(Json{{"id", m.id}, {"alphabet", m.alphabet.size}});
    j["messages"] = std::move(messages);
    Json receivers = Json::array();
    for (const auto& r : instance.receivers)
        receivers.push_back(Json{{"id", r.id}, {"wants", ids(r.wants)}, {"has", ids(r.has)}});
    j["receivers"] = std::move(receivers);
    Json eves = Json::array();
    for (const auto& r : instance.eavesdroppers)
        eves.push_back(
            Json{{"id", r.id}, {"side_info", ids(r.side_info)}, {"target_messages", ids(r.target_messages)}});
    j["eavesdroppers"] = std::move(eves);
    j["broadcast_alphabet"] = instance.broadcast_alphabet.size;
    j["block_size_n"] = instance.block_size_n;
    return render(j);
}

std::string emit(const NetworkCode& code) {
    Json j = header(DocumentKind::network_code);
    Json keys = Json::object();
    for (const auto& [node, a] : code.key_alphabets) keys[node] = a.size;
    j["key_alphabets"] = std::move(keys);
    Json edges = Json::object();
    for (const auto& [id, f] : code.edge_functions) edges[id] = function_json(f);
    j["edge_functions"] = std::move(edges);
    Json decoders = Json::object();
    for (const auto& [id, f] : code.node_decoders) decoders[id] = function_json(f);
    j["node_decoders"] = std::move(decoders);
    return render(j);
}

std::string emit(const IndexCode& code) {
    Json j = header(DocumentKind::index_code);
    j["key_alphabet"] = code.key_alphabet.size;
    j["encoder"] = function_json(code.encoder);
    Json decoders = Json::object();
    for (const auto& [id, f] : code.decoders) decoders[id] = function_json(f);
    j["decoders"] = std::move(decoders);
    return render(j);
}

std::string emit(const IndexToNetworkMapping& mapping) {
    Json j = header(DocumentKind::index_to_network_mapping);
    Json messages = Json::object();
    for (const auto& [m, node] : mapping.node_for_message) messages[m] = node;
    j["node_for_message"] = std::move(messages);
    Json receivers = Json::object();
    for (const auto& [r, node] : mapping.receiver_node) receivers[r] = node;
    j["receiver_node"] = std::move(receivers);
    j["relay_nodes"] = Json::array({mapping.relay_nodes.first, mapping.relay_nodes.second});
    Json roles = Json::object();
    for (const auto& [e, role] : mapping.edge_roles) roles[e] = std::string(to_string(role));
    j["edge_roles"] = std::move(roles);
    return render(j);
}

std::string emit(const NetworkToIndexMapping& mapping) {
    Json j = header(DocumentKind::network_to_index_mapping);
    auto origins = [](const std::map<std::string, OriginRef>& m) {
        Json o = Json::object();
        for (const auto& [id, ref] : m) o[id] = Json{{"kind", std::string(origin_kind_name(ref.kind))}, {"id", ref.id}};
        return o;
    };
    j["message_origin"] = origins(mapping.message_origin);
    j["receiver_origin"] = origins(mapping.receiver_origin);
    j["broadcast_edges"] = mapping.broadcast_edges;
    return render(j);
}

std::string emit(const AugmentationRecord& record) {
    Json j = header(DocumentKind::augmentation_record);
    Json ids_json = Json::object();
    for (const auto& [node, id] : record.key_source_ids) ids_json[node] = id;
    j["key_source_ids"] = std::move(ids_json);
    Json sizes = Json::object();
    for (const auto& [node, a] : record.key_alphabets) sizes[node] = a.size;
    j["key_alphabets"] = std::move(sizes);
    return render(j);
}

// ----------------------------------------------------------------- parse

NetworkInstance parse_network_instance(std::string_view text) {
    const Json j = document(text, DocumentKind::network_instance);
    return guarded<NetworkInstance>([&] {
        Reader r(j, "network-instance");
        r.required("kind");
        r.required("format_version");
        NetworkInstance out;
        for (const auto& n : array(r.required("nodes"), "nodes")) out.nodes.push_back(str(n, "nodes"));
        for (const auto& e : array(r.required("edges"), "edges")) {
            Reader re(e, "edges[]");
            out.edges.push_back({str(re.required("id"), "edges[].id"), str(re.required("tail"), "edges[].tail"),
                                 str(re.required("head"), "edges[].head"),
                                 alphabet(re.required("alphabet"), "edges[].alphabet")});
            re.finish();
        }
        for (const auto& s : array(r.required("sources"), "sources")) {
            Reader rs(s, "sources[]");
            out.sources.push_back({str(rs.required("id"), "sources[].id"),
                                   str(rs.required("origin"), "sources[].origin"),
                                   alphabet(rs.required("alphabet"), "sources[].alphabet"),
                                   id_set(rs.required("destinations"), "sources[].destinations")});
            rs.finish();
        }
        for (const auto& w : array(r.required("eavesdroppers"), "eavesdroppers")) {
            Reader rw(w, "eavesdroppers[]");
            out.eavesdroppers.push_back({str(rw.required("id"), "eavesdroppers[].id"),
                                         id_set(rw.required("tapped_edges"), "eavesdroppers[].tapped_edges"),
                                         id_set(rw.required("target_sources"), "eavesdroppers[].target_sources")});
            rw.finish();
        }
        if (const Json* n = r.optional("block_size_n")) {
            const std::uint64_t v = uint(*n, "block_size_n");
            if (v > std::numeric_limits<std::uint32_t>::max()) fail("block_size_n out of range");
            out.block_size_n = static_cast<std::uint32_t>(v);
        }
        r.finish();
        return out;
    });
}

IndexInstance parse_index_instance(std::string_view text) {
    const Json j = document(text, DocumentKind::index_instance);
    return guarded<IndexInstance>([&] {
        Reader r(j, "index-instance");
        r.required("kind");
        r.required("format_version");
        IndexInstance out;
        for (const auto& m : array(r.required("messages"), "messages")) {
            Reader rm(m, "messages[]");
            out.messages.push_back(
                {str(rm.required("id"), "messages[].id"), alphabet(rm.required("alphabet"), "messages[].alphabet")});
            rm.finish();
        }
        for (const auto& v : array(r.required("receivers"), "receivers")) {
            Reader rr(v, "receivers[]");
            out.receivers.push_back({str(rr.required("id"), "receivers[].id"),
                                     id_set(rr.required("wants"), "receivers[].wants"),
                                     id_set(rr.required("has"), "receivers[].has")});
            rr.finish();
        }
        for (const auto& w : array(r.required("eavesdroppers"), "eavesdroppers")) {
            Reader rw(w, "eavesdroppers[]");
            out.eavesdroppers.push_back({str(rw.required("id"), "eavesdroppers[].id"),
                                         id_set(rw.required("side_info"), "eavesdroppers[].side_info"),
                                         id_set(rw.required("target_messages"), "eavesdroppers[].target_messages")});
            rw.finish();
        }
        out.broadcast_alphabet = alphabet(r.required("broadcast_alphabet"), "broadcast_alphabet");
        if (const Json* n = r.optional("block_size_n")) {
            const std::uint64_t v = uint(*n, "block_size_n");
            if (v > std::numeric_limits<std::uint32_t>::max()) fail("block_size_n out of range");
            out.block_size_n = static_cast<std::uint32_t>(v);
        }
        r.finish();
        return out;
    });
}

NetworkCode parse_network_code(std::string_view text) {
    const Json j = document(text, DocumentKind::network_code);
    return guarded<NetworkCode>([&] {
        Reader r(j, "network-code");
        r.required("kind");
        r.required("format_version");
        NetworkCode out;
        for (const auto& [node, a] : object(r.required("key_alphabets"), "key_alphabets").items())
            out.key_alphabets[node] = alphabet(a, "key_alphabets." + node);
        out.edge_functions = function_map(r.required("edge_functions"), "edge_functions");
        out.node_decoders = function_map(r.required("node_decoders"), "node_decoders");
        r.finish();
        return out;
    });
}

IndexCode parse_index_code(std::string_view text) {
    const Json j = document(text, DocumentKind::index_code);
    return guarded<IndexCode>([&] {
        Reader r(j, "index-code");
        r.required("kind");
        r.required("format_version");
        IndexCode out;
        out.key_alphabet = alphabet(r.required("key_alphabet"), "key_alphabet");
        out.encoder = parse_function(r.required("encoder"), "encoder");
        out.decoders = function_map(r.required("decoders"), "decoders");
        r.finish();
        return out;
    });
}

IndexToNetworkMapping parse_index_to_network_mapping(std::string_view text) {
    const Json j = document(text, DocumentKind::index_to_network_mapping);
    return guarded<IndexToNetworkMapping>([&] {
        Reader r(j, "index-to-network-mapping");
        r.required("kind");
        r.required("format_version");
        IndexToNetworkMapping out;
        for (const auto& [m, node] : object(r.required("node_for_message"), "node_for_message").items())
            out.node_for_message[m] = str(node, "node_for_message." + m);
        for (const auto& [v, node] : object(r.required("receiver_node"), "receiver_node").items())
            out.receiver_node[v] = str(node, "receiver_node." + v);
        const Json& relays = array(r.required("relay_nodes"), "relay_nodes");
        if (relays.size() != 2) fail("relay_nodes: expected two node ids");
        out.relay_nodes = {str(relays[0], "relay_nodes"), str(relays[1], "relay_nodes")};
        for (const auto& [e, role] : object(r.required("edge_roles"), "edge_roles").items())
            out.edge_roles[e] = edge_role_from_string(str(role, "edge_roles." + e));
        r.finish();
        return out;
    });
}

NetworkToIndexMapping parse_network_to_index_mapping(std::string_view text) {
    const Json j = document(text, DocumentKind::network_to_index_mapping);
    return guarded<NetworkToIndexMapping>([&] {
        Reader r(j, "network-to-index-mapping");
        r.required("kind");
        r.required("format_version");
        NetworkToIndexMapping out;
        auto origins = [](const Json& o, const std::string& where) {
            std::map<std::string, OriginRef> m;
            for (const auto& [id, ref] : object(o, where).items()) {
                Reader rr(ref, where + "." + id);
                m[id] = {origin_kind(str(rr.required("kind"), rr.where()), rr.where()), str(rr.required("id"), rr.where())};
                rr.finish();
            }
            return m;
        };
        out.message_origin = origins(r.required("message_origin"), "message_origin");
        out.receiver_origin = origins(r.required("receiver_origin"), "receiver_origin");
        for (const auto& e : array(r.required("broadcast_edges"), "broadcast_edges"))
            out.broadcast_edges.push_back(str(e, "broadcast_edges"));
        r.finish();
        return out;
    });
}

AugmentationRecord parse_augmentation_record(std::string_view text) {
    const Json j = document(text, DocumentKind::augmentation_record);
    return guarded<AugmentationRecord>([&] {
        Reader r(j, "augmentation-record");
        r.required("kind");
        r.required("format_version");
        AugmentationRecord out;
        for (const auto& [node, id] : object(r.required("key_source_ids"), "key_source_ids").items())
            out.key_source_ids[node] = str(id, "key_source_ids." + node);
        for (const auto& [node, a] : object(r.required("key_alphabets"), "key_alphabets").items())
            out.key_alphabets[node] = alphabet(a, "key_alphabets." + node);
        r.finish();
        return out;
    });
}

// ----------------------------------------------------------------- files

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path.string());
    out << text;
    if (!out) throw FormatError("cannot write " + path.string());
}

std::string to_dot(const NetworkInstance& instance) {
    std::set<std::string> tapped;
    for (const auto& r : instance.eavesdroppers) tapped.insert(r.tapped_edges.begin(), r.tapped_edges.end());
    auto q = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '\\';
            out += c;
        }
        return out + '"';
    };
    std::string out = "digraph network {\n";
    for (const auto& n : instance.nodes) {
        std::string label = n;
        for (const Source* s : instance.sources_at(n)) label += "\\n" + s->id;
        out += "  " + q(n) + " [label=" + q(label) + "];\n";
    }
    for (const auto& e : instance.edges) {
        out += "  " + q(e.tail) + " -> " + q(e.head) + " [label=" + q(e.id + " (" + std::to_string(e.alphabet.size) + ")");
        if (tapped.count(e.id)) out += ", style=dashed";
        out += "];\n";
    }
    return out + "}\n";
}

}  // namespace snic::io
