#include "triage/knowledge_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "triage/text.hpp"

namespace triage {

using nlohmann::json;

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::disease: return "disease";
        case NodeKind::symptom: return "symptom";
        case NodeKind::drug: return "drug";
        case NodeKind::procedure: return "procedure";
    }
    return "?";
}

std::string_view to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::disease_symptom: return "disease_symptom";
        case EdgeKind::symptom_symptom: return "symptom_symptom";
        case EdgeKind::disease_drug: return "disease_drug";
        case EdgeKind::disease_procedure: return "disease_procedure";
    }
    return "?";
}

std::string_view to_string(SpecialFlow f) {
    switch (f) {
        case SpecialFlow::none: return "none";
        case SpecialFlow::pain: return "pain";
        case SpecialFlow::fever: return "fever";
        case SpecialFlow::cough: return "cough";
    }
    return "?";
}

std::string_view to_string(TherapyKind k) {
    return k == TherapyKind::drug ? "drug" : "procedure";
}

std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
    for (auto k : {EdgeKind::disease_symptom, EdgeKind::symptom_symptom, EdgeKind::disease_drug,
                   EdgeKind::disease_procedure}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<SpecialFlow> parse_special_flow(std::string_view s) {
    for (auto f : {SpecialFlow::none, SpecialFlow::pain, SpecialFlow::fever, SpecialFlow::cough}) {
        if (s == to_string(f)) return f;
    }
    return std::nullopt;
}

NodeKind source_kind(EdgeKind k) {
    return k == EdgeKind::symptom_symptom ? NodeKind::symptom : NodeKind::disease;
}

NodeKind target_kind(EdgeKind k) {
    switch (k) {
        case EdgeKind::disease_symptom:
        case EdgeKind::symptom_symptom: return NodeKind::symptom;
        case EdgeKind::disease_drug: return NodeKind::drug;
        case EdgeKind::disease_procedure: return NodeKind::procedure;
    }
    return NodeKind::symptom;
}

namespace {

std::string edge_label(std::size_t i, const Edge& e) {
    std::ostringstream os;
    os << "edges[" << i << "] (" << to_string(e.kind) << ' ' << e.from << " -> " << e.to << ')';
    return os.str();
}

// Shortest round-trip representation, widened to at least six significant digits.
std::string format_decimal(double v) {
    char buf[64];
    for (int precision = 6; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%#.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

std::string quoted(std::string_view s) { return json(std::string(s)).dump(); }

}  // namespace

KnowledgeGraph KnowledgeGraph::build(GraphDocument doc) {
    KnowledgeGraph g;

    std::set<std::string, std::less<>> registry;
    for (const auto& label : doc.specialties) {
        if (label.empty()) throw GraphError("specialties: empty specialty label");
        if (!registry.insert(label).second) {
            throw GraphError("specialties: duplicate specialty '" + label + "'");
        }
    }

    auto add_node = [&](const std::string& id, const std::string& name, NodeKind kind, std::size_t i) {
        const std::string where = std::string(to_string(kind)) + "s[" + std::to_string(i) + "]";
        if (id.empty()) throw GraphError(where + ": empty id");
        if (name.empty()) throw GraphError(where + " '" + id + "': empty name");
        if (!g.index_.emplace(id, NodeRef{kind, i}).second) {
            throw GraphError(where + ": duplicate id '" + id + "'");
        }
    };

    for (std::size_t i = 0; i < doc.diseases.size(); ++i) {
        auto& d = doc.diseases[i];
        add_node(d.id, d.name, NodeKind::disease, i);
        if (d.parent_term.empty()) d.parent_term = d.id;
        if (!(d.prior > 0.0 && d.prior <= 1.0) || !std::isfinite(d.prior)) {
            throw GraphError("disease '" + d.id + "': prior " + format_decimal(d.prior) + " outside (0,1]");
        }
        if (!registry.contains(d.specialty)) {
            throw GraphError("disease '" + d.id + "': specialty '" + d.specialty + "' not in specialty registry");
        }
    }
    for (std::size_t i = 0; i < doc.symptoms.size(); ++i) {
        add_node(doc.symptoms[i].id, doc.symptoms[i].name, NodeKind::symptom, i);
    }
    for (std::size_t i = 0; i < doc.drugs.size(); ++i) {
        if (doc.drugs[i].kind != TherapyKind::drug) {
            throw GraphError("drugs[" + std::to_string(i) + "] '" + doc.drugs[i].id + "': kind is not drug");
        }
        add_node(doc.drugs[i].id, doc.drugs[i].name, NodeKind::drug, i);
    }
    for (std::size_t i = 0; i < doc.procedures.size(); ++i) {
        if (doc.procedures[i].kind != TherapyKind::procedure) {
            throw GraphError("procedures[" + std::to_string(i) + "] '" + doc.procedures[i].id +
                             "': kind is not procedure");
        }
        add_node(doc.procedures[i].id, doc.procedures[i].name, NodeKind::procedure, i);
    }

    auto collection_size = [&](NodeKind k) {
        switch (k) {
            case NodeKind::disease: return doc.diseases.size();
            case NodeKind::symptom: return doc.symptoms.size();
            case NodeKind::drug: return doc.drugs.size();
            case NodeKind::procedure: return doc.procedures.size();
        }
        return std::size_t{0};
    };
    for (int k = 0; k < 4; ++k) {
        g.adjacency_[k].resize(collection_size(source_kind(static_cast<EdgeKind>(k))));
    }
    g.symptom_diseases_.resize(doc.symptoms.size());

    std::set<std::tuple<int, std::string, std::string>> seen;
    for (std::size_t i = 0; i < doc.edges.size(); ++i) {
        const Edge& e = doc.edges[i];
        const auto from = g.index_.find(e.from);
        const auto to = g.index_.find(e.to);
        if (from == g.index_.end()) throw GraphError(edge_label(i, e) + ": dangling endpoint '" + e.from + "'");
        if (to == g.index_.end()) throw GraphError(edge_label(i, e) + ": dangling endpoint '" + e.to + "'");
        if (from->second.kind != source_kind(e.kind) || to->second.kind != target_kind(e.kind)) {
            throw GraphError(edge_label(i, e) + ": endpoint kinds do not match edge kind");
        }
        if (e.from == e.to) throw GraphError(edge_label(i, e) + ": self loop");
        if (!(e.weight > 0.0 && e.weight <= 1.0) || !std::isfinite(e.weight)) {
            throw GraphError(edge_label(i, e) + ": weight " + format_decimal(e.weight) + " outside (0,1]");
        }
        if (!seen.emplace(static_cast<int>(e.kind), e.from, e.to).second) {
            throw GraphError(edge_label(i, e) + ": duplicate edge");
        }
        const auto target = static_cast<std::uint32_t>(to->second.index);
        g.adjacency_[static_cast<int>(e.kind)][from->second.index].push_back({target, e.weight});
        if (e.kind == EdgeKind::disease_symptom) {
            g.symptom_diseases_[to->second.index].push_back(
                {static_cast<std::uint32_t>(from->second.index), e.weight});
        }
    }

    for (std::size_t d = 0; d < doc.diseases.size(); ++d) {
        if (g.adjacency_[static_cast<int>(EdgeKind::disease_symptom)][d].empty()) {
            throw GraphError("disease '" + doc.diseases[d].id + "': disease without symptom edge");
        }
    }

    g.doc_ = std::move(doc);
    for (int k = 0; k < 4; ++k) {
        const NodeKind tk = target_kind(static_cast<EdgeKind>(k));
        for (auto& list : g.adjacency_[k]) {
            std::sort(list.begin(), list.end(), [&](const Link& a, const Link& b) {
                if (a.weight != b.weight) return a.weight > b.weight;
                return g.node_id(tk, a.target) < g.node_id(tk, b.target);
            });
        }
    }
    for (auto& list : g.symptom_diseases_) {
        std::sort(list.begin(), list.end(), [](const Link& a, const Link& b) { return a.target < b.target; });
    }
    return g;
}

std::optional<NodeRef> KnowledgeGraph::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> KnowledgeGraph::disease_index(std::string_view id) const {
    auto ref = find(id);
    if (!ref || ref->kind != NodeKind::disease) return std::nullopt;
    return ref->index;
}

std::optional<std::size_t> KnowledgeGraph::symptom_index(std::string_view id) const {
    auto ref = find(id);
    if (!ref || ref->kind != NodeKind::symptom) return std::nullopt;
    return ref->index;
}

const std::string& KnowledgeGraph::node_id(NodeKind kind, std::size_t index) const {
    switch (kind) {
        case NodeKind::disease: return doc_.diseases.at(index).id;
        case NodeKind::symptom: return doc_.symptoms.at(index).id;
        case NodeKind::drug: return doc_.drugs.at(index).id;
        case NodeKind::procedure: return doc_.procedures.at(index).id;
    }
    throw GraphError("bad node kind");
}

const std::string& KnowledgeGraph::node_name(NodeKind kind, std::size_t index) const {
    switch (kind) {
        case NodeKind::disease: return doc_.diseases.at(index).name;
        case NodeKind::symptom: return doc_.symptoms.at(index).name;
        case NodeKind::drug: return doc_.drugs.at(index).name;
        case NodeKind::procedure: return doc_.procedures.at(index).name;
    }
    throw GraphError("bad node kind");
}

std::span<const Link> KnowledgeGraph::links(EdgeKind kind, std::size_t from_index) const {
    return adjacency_[static_cast<int>(kind)].at(from_index);
}

std::span<const Link> KnowledgeGraph::diseases_of_symptom(std::size_t symptom_index) const {
    return symptom_diseases_.at(symptom_index);
}

std::optional<double> KnowledgeGraph::symptom_weight(std::size_t disease_index, std::size_t symptom_index) const {
    const auto& list = symptom_diseases_.at(symptom_index);
    auto it = std::lower_bound(list.begin(), list.end(), disease_index,
                               [](const Link& l, std::size_t d) { return l.target < d; });
    if (it == list.end() || it->target != disease_index) return std::nullopt;
    return it->weight;
}

// ---------------------------------------------------------------------------
// Document I/O

namespace {

template <typename T>
T required(const json& obj, const char* field, const std::string& where) {
    auto it = obj.find(field);
    if (it == obj.end()) throw GraphError(where + ": missing field '" + field + "'");
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw GraphError(where + ": field '" + field + "' has wrong type");
    }
}

template <typename T>
T optional_field(const json& obj, const char* field, T fallback, const std::string& where) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw GraphError(where + ": field '" + field + "' has wrong type");
    }
}

const json& array_at(const json& root, const char* key) {
    static const json empty = json::array();
    auto it = root.find(key);
    if (it == root.end()) return empty;
    if (!it->is_array()) throw GraphError(std::string("top-level '") + key + "' is not an array");
    return *it;
}

std::vector<TherapyNode> parse_therapies(const json& root, const char* key, TherapyKind expected) {
    std::vector<TherapyNode> out;
    const json& arr = array_at(root, key);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
        if (!arr[i].is_object()) throw GraphError(where + ": not an object");
        TherapyNode t;
        t.id = required<std::string>(arr[i], "id", where);
        t.name = required<std::string>(arr[i], "name", where);
        const std::string kind = optional_field<std::string>(arr[i], "kind", std::string(to_string(expected)), where);
        if (kind == "drug") {
            t.kind = TherapyKind::drug;
        } else if (kind == "procedure") {
            t.kind = TherapyKind::procedure;
        } else {
            throw GraphError(where + " '" + t.id + "': unknown therapy kind '" + kind + "'");
        }
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

KnowledgeGraph load_graph(std::istream& in) {
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw GraphError(std::string("malformed graph document: ") + e.what());
    }
    if (!root.is_object()) throw GraphError("malformed graph document: top level is not an object");

    GraphDocument doc;
    if (auto meta = root.find("meta"); meta != root.end()) {
        if (!meta->is_object()) throw GraphError("malformed graph document: 'meta' is not an object");
        doc.meta.name = optional_field<std::string>(*meta, "name", "", "meta");
        doc.meta.version = optional_field<std::string>(*meta, "version", "", "meta");
    }

    const json& diseases = array_at(root, "diseases");
    for (std::size_t i = 0; i < diseases.size(); ++i) {
        const std::string where = "diseases[" + std::to_string(i) + "]";
        if (!diseases[i].is_object()) throw GraphError(where + ": not an object");
        DiseaseNode d;
        d.id = required<std::string>(diseases[i], "id", where);
        d.name = required<std::string>(diseases[i], "name", where);
        d.parent_term = optional_field<std::string>(diseases[i], "parent_term", "", where);
        d.specialty = required<std::string>(diseases[i], "specialty", where);
        d.prior = optional_field<double>(diseases[i], "prior", 1.0, where);
        d.excluded_flag = optional_field<bool>(diseases[i], "excluded_flag", false, where);
        doc.diseases.push_back(std::move(d));
    }

    if (root.contains("specialties")) {
        const json& specs = array_at(root, "specialties");
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (!specs[i].is_string()) throw GraphError("specialties[" + std::to_string(i) + "]: not a string");
            doc.specialties.push_back(specs[i].get<std::string>());
        }
    } else {
        // No explicit registry: first-appearance order over diseases.
        for (const auto& d : doc.diseases) {
            if (std::find(doc.specialties.begin(), doc.specialties.end(), d.specialty) == doc.specialties.end()) {
                doc.specialties.push_back(d.specialty);
            }
        }
    }

    const json& symptoms = array_at(root, "symptoms");
    for (std::size_t i = 0; i < symptoms.size(); ++i) {
        const std::string where = "symptoms[" + std::to_string(i) + "]";
        if (!symptoms[i].is_object()) throw GraphError(where + ": not an object");
        SymptomNode s;
        s.id = required<std::string>(symptoms[i], "id", where);
        s.name = required<std::string>(symptoms[i], "name", where);
        const std::string flow = optional_field<std::string>(symptoms[i], "special_flow", "none", where);
        auto parsed = parse_special_flow(flow);
        if (!parsed) throw GraphError(where + " '" + s.id + "': unknown special_flow '" + flow + "'");
        s.special_flow = *parsed;
        s.common_flag = optional_field<bool>(symptoms[i], "common_flag", false, where);
        doc.symptoms.push_back(std::move(s));
    }

    doc.drugs = parse_therapies(root, "drugs", TherapyKind::drug);
    doc.procedures = parse_therapies(root, "procedures", TherapyKind::procedure);

    const json& edges = array_at(root, "edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        if (!edges[i].is_object()) throw GraphError(where + ": not an object");
        Edge e;
        const std::string kind = required<std::string>(edges[i], "kind", where);
        auto parsed = parse_edge_kind(kind);
        if (!parsed) throw GraphError(where + ": unknown edge kind '" + kind + "'");
        e.kind = *parsed;
        e.from = required<std::string>(edges[i], "from", where);
        e.to = required<std::string>(edges[i], "to", where);
        e.weight = required<double>(edges[i], "weight", where);
        doc.edges.push_back(std::move(e));
    }

    return KnowledgeGraph::build(std::move(doc));
}

KnowledgeGraph load_graph_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphError("cannot open graph document '" + path.string() + "'");
    return load_graph(in);
}

std::string serialize_graph(const KnowledgeGraph& g) {
    std::ostringstream os;
    const auto& doc = g.document();
    os << "{\n  \"meta\": {\"name\": " << quoted(doc.meta.name) << ", \"version\": " << quoted(doc.meta.version)
       << "},\n";

    os << "  \"specialties\": [";
    for (std::size_t i = 0; i < doc.specialties.size(); ++i) {
        os << (i ? ", " : "") << quoted(doc.specialties[i]);
    }
    os << "],\n";

    auto list = [&os](const char* key, std::size_t n, auto&& write_item, bool last = false) {
        os << "  \"" << key << "\": [";
        for (std::size_t i = 0; i < n; ++i) {
            os << (i ? ",\n    " : "\n    ");
            write_item(i);
        }
        os << (n ? "\n  ]" : "]") << (last ? "\n" : ",\n");
    };

    list("diseases", doc.diseases.size(), [&](std::size_t i) {
        const auto& d = doc.diseases[i];
        os << "{\"id\": " << quoted(d.id) << ", \"name\": " << quoted(d.name)
           << ", \"parent_term\": " << quoted(d.parent_term) << ", \"specialty\": " << quoted(d.specialty)
           << ", \"prior\": " << format_decimal(d.prior)
           << ", \"excluded_flag\": " << (d.excluded_flag ? "true" : "false") << '}';
    });
    list("symptoms", doc.symptoms.size(), [&](std::size_t i) {
        const auto& s = doc.symptoms[i];
        os << "{\"id\": " << quoted(s.id) << ", \"name\": " << quoted(s.name)
           << ", \"special_flow\": " << quoted(to_string(s.special_flow))
           << ", \"common_flag\": " << (s.common_flag ? "true" : "false") << '}';
    });
    auto therapy = [&](const TherapyNode& t) {
        os << "{\"id\": " << quoted(t.id) << ", \"name\": " << quoted(t.name)
           << ", \"kind\": " << quoted(to_string(t.kind)) << '}';
    };
    list("drugs", doc.drugs.size(), [&](std::size_t i) { therapy(doc.drugs[i]); });
    list("procedures", doc.procedures.size(), [&](std::size_t i) { therapy(doc.procedures[i]); });
    list(
        "edges", doc.edges.size(),
        [&](std::size_t i) {
            const auto& e = doc.edges[i];
            os << "{\"kind\": " << quoted(to_string(e.kind)) << ", \"from\": " << quoted(e.from)
               << ", \"to\": " << quoted(e.to) << ", \"weight\": " << format_decimal(e.weight) << '}';
        },
        true);
    os << "}\n";
    return os.str();
}

std::vector<EdgeTarget> query_edges(const KnowledgeGraph& g, EdgeKind kind, std::string_view from) {
    auto ref = g.find(from);
    if (!ref) throw GraphError("unknown node id '" + std::string(from) + "'");
    if (ref->kind != source_kind(kind)) {
        throw GraphError("node '" + std::string(from) + "' is a " + std::string(to_string(ref->kind)) +
                         ", edge kind " + std::string(to_string(kind)) + " starts at a " +
                         std::string(to_string(source_kind(kind))));
    }
    std::vector<EdgeTarget> out;
    const NodeKind tk = target_kind(kind);
    for (const Link& l : g.links(kind, ref->index)) {
        out.push_back({g.node_id(tk, l.target), l.weight});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation and statistics

std::size_t ValidationReport::count(Severity s) const {
    return static_cast<std::size_t>(
        std::count_if(issues.begin(), issues.end(), [s](const ValidationIssue& i) { return i.severity == s; }));
}

ValidationReport validate_graph(const KnowledgeGraph& g, const ValidationPolicy& policy) {
    ValidationReport report;
    std::set<std::string> excluded;
    for (const auto& label : policy.excluded_specialties) excluded.insert(text::normalize(label));

    double prior_sum = 0.0;
    for (std::size_t d = 0; d < g.diseases().size(); ++d) {
        const auto& disease = g.diseases()[d];
        prior_sum += disease.prior;
        if (excluded.contains(text::normalize(disease.specialty)) && !disease.excluded_flag) {
            report.issues.push_back({Severity::violation, "excluded_specialty_unflagged", disease.id,
                                     "disease '" + disease.name + "' belongs to excluded specialty '" +
                                         disease.specialty + "' but excluded_flag is false"});
        }
        const std::size_t n = g.links(EdgeKind::disease_symptom, d).size();
        if (n < policy.min_symptoms || n > policy.max_symptoms) {
            report.issues.push_back({Severity::warning, "symptom_count_out_of_bounds", disease.id,
                                     "disease '" + disease.name + "' has " + std::to_string(n) +
                                         " symptoms, expected [" + std::to_string(policy.min_symptoms) + ", " +
                                         std::to_string(policy.max_symptoms) + "]"});
        }
    }
    if (!g.diseases().empty() && !(prior_sum > 0.0 && std::isfinite(prior_sum))) {
        report.issues.push_back(
            {Severity::violation, "priors_not_normalizable", "diseases", "disease priors do not sum to a positive finite value"});
    }
    return report;
}

std::size_t GraphStats::total_edges() const {
    return edges_by_kind[0] + edges_by_kind[1] + edges_by_kind[2] + edges_by_kind[3];
}

GraphStats graph_stats(const KnowledgeGraph& g) {
    GraphStats st;
    st.diseases = g.diseases().size();
    st.symptoms = g.symptoms().size();
    st.drugs = g.drugs().size();
    st.procedures = g.procedures().size();
    for (const auto& e : g.edges()) ++st.edges_by_kind[static_cast<int>(e.kind)];

    if (st.diseases > 0) {
        std::size_t total = 0;
        st.min_symptoms_per_disease = SIZE_MAX;
        for (std::size_t d = 0; d < st.diseases; ++d) {
            const std::size_t n = g.links(EdgeKind::disease_symptom, d).size();
            total += n;
            st.min_symptoms_per_disease = std::min(st.min_symptoms_per_disease, n);
            st.max_symptoms_per_disease = std::max(st.max_symptoms_per_disease, n);
        }
        st.mean_symptoms_per_disease = static_cast<double>(total) / static_cast<double>(st.diseases);
    }

    for (std::size_t s = 0; s < st.symptoms; ++s) {
        const auto& node = g.symptoms()[s];
        st.symptom_occurrences.push_back({node.id, node.name, g.diseases_of_symptom(s).size()});
    }
    std::sort(st.symptom_occurrences.begin(), st.symptom_occurrences.end(),
              [](const SymptomOccurrence& a, const SymptomOccurrence& b) {
                  if (a.diseases != b.diseases) return a.diseases > b.diseases;
                  return a.id < b.id;
              });
    return st;
}

}  // namespace triage
