#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace triage {

enum class NodeKind { disease, symptom, drug, procedure };
enum class EdgeKind { disease_symptom, symptom_symptom, disease_drug, disease_procedure };
enum class SpecialFlow { none, pain, fever, cough };
enum class TherapyKind { drug, procedure };

std::string_view to_string(NodeKind k);
std::string_view to_string(EdgeKind k);
std::string_view to_string(SpecialFlow f);
std::string_view to_string(TherapyKind k);
std::optional<EdgeKind> parse_edge_kind(std::string_view s);
std::optional<SpecialFlow> parse_special_flow(std::string_view s);

NodeKind source_kind(EdgeKind k);
NodeKind target_kind(EdgeKind k);

struct DiseaseNode {
    std::string id;
    std::string name;
    std::string parent_term;  // defaults to id
    std::string specialty;
    double prior = 1.0;
    bool excluded_flag = false;

    bool operator==(const DiseaseNode&) const = default;
};

struct SymptomNode {
    std::string id;
    std::string name;
    SpecialFlow special_flow = SpecialFlow::none;
    bool common_flag = false;

    bool operator==(const SymptomNode&) const = default;
};

struct TherapyNode {
    std::string id;
    std::string name;
    TherapyKind kind = TherapyKind::drug;

    bool operator==(const TherapyNode&) const = default;
};

struct Edge {
    EdgeKind kind = EdgeKind::disease_symptom;
    std::string from;
    std::string to;
    double weight = 0.0;

    bool operator==(const Edge&) const = default;
};

struct GraphMeta {
    std::string name;
    std::string version;

    bool operator==(const GraphMeta&) const = default;
};

/// Unvalidated contents of a graph document.
struct GraphDocument {
    GraphMeta meta;
    std::vector<std::string> specialties;
    std::vector<DiseaseNode> diseases;
    std::vector<SymptomNode> symptoms;
    std::vector<TherapyNode> drugs;
    std::vector<TherapyNode> procedures;
    std::vector<Edge> edges;

    bool operator==(const GraphDocument&) const = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EdgeTarget {
    std::string id;
    double weight = 0.0;

    bool operator==(const EdgeTarget&) const = default;
};

/// Index-level adjacency entry; `target` indexes the node collection of the
/// edge kind's target node kind.
struct Link {
    std::uint32_t target = 0;
    double weight = 0.0;
};

struct NodeRef {
    NodeKind kind;
    std::size_t index;
};

/// Immutable weighted multigraph over diseases, symptoms, drugs and
/// procedures. Adjacency lists are pre-sorted by descending weight with
/// ascending target id as tie-break.
class KnowledgeGraph {
public:
    /// Validates structural invariants; throws GraphError naming the record.
    static KnowledgeGraph build(GraphDocument doc);

    const GraphMeta& meta() const { return doc_.meta; }
    const std::vector<std::string>& specialties() const { return doc_.specialties; }
    const std::vector<DiseaseNode>& diseases() const { return doc_.diseases; }
    const std::vector<SymptomNode>& symptoms() const { return doc_.symptoms; }
    const std::vector<TherapyNode>& drugs() const { return doc_.drugs; }
    const std::vector<TherapyNode>& procedures() const { return doc_.procedures; }
    const std::vector<Edge>& edges() const { return doc_.edges; }
    const GraphDocument& document() const { return doc_; }

    std::optional<NodeRef> find(std::string_view id) const;
    std::optional<std::size_t> disease_index(std::string_view id) const;
    std::optional<std::size_t> symptom_index(std::string_view id) const;
    const std::string& node_id(NodeKind kind, std::size_t index) const;
    const std::string& node_name(NodeKind kind, std::size_t index) const;

    std::span<const Link> links(EdgeKind kind, std::size_t from_index) const;

    /// Diseases linked to a symptom, ascending by disease index.
    std::span<const Link> diseases_of_symptom(std::size_t symptom_index) const;

    /// w(d, s) when the disease_symptom edge exists.
    std::optional<double> symptom_weight(std::size_t disease_index,
                                         std::size_t symptom_index) const;

private:
    KnowledgeGraph() = default;

    GraphDocument doc_;
    std::unordered_map<std::string, NodeRef> index_;
    // adjacency_[edge kind][source index]
    std::vector<std::vector<Link>> adjacency_[4];
    std::vector<std::vector<Link>> symptom_diseases_;
};

KnowledgeGraph load_graph(std::istream& in);
KnowledgeGraph load_graph_file(const std::filesystem::path& path);

/// Canonical graph document text; load_graph(serialize_graph(g)) == g.
std::string serialize_graph(const KnowledgeGraph& g);

/// Ordered neighbours of `from` over edges of `kind`. Throws GraphError for
/// an unknown id or when `from` is not of the edge kind's source kind.
std::vector<EdgeTarget> query_edges(const KnowledgeGraph& g, EdgeKind kind, std::string_view from);

enum class Severity { warning, violation };

struct ValidationIssue {
    Severity severity;
    std::string code;
    std::string record;
    std::string message;
};

struct ValidationPolicy {
    std::vector<std::string> excluded_specialties = {
        "Neonatology", "Oncology", "Neoplasms", "Surgical emergencies", "Acute conditions", "Psychiatry"};
    std::size_t min_symptoms = 6;
    std::size_t max_symptoms = 37;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;

    std::size_t count(Severity s) const;
    bool clean() const { return issues.empty(); }
};

ValidationReport validate_graph(const KnowledgeGraph& g, const ValidationPolicy& policy = {});

struct SymptomOccurrence {
    std::string id;
    std::string name;
    std::size_t diseases = 0;
};

struct GraphStats {
    std::size_t diseases = 0;
    std::size_t symptoms = 0;
    std::size_t drugs = 0;
    std::size_t procedures = 0;
    std::size_t edges_by_kind[4] = {0, 0, 0, 0};
    double mean_symptoms_per_disease = 0.0;
    std::size_t min_symptoms_per_disease = 0;
    std::size_t max_symptoms_per_disease = 0;
    /// Descending by occurrence count, ascending id tie-break.
    std::vector<SymptomOccurrence> symptom_occurrences;

    std::size_t total_edges() const;
};

GraphStats graph_stats(const KnowledgeGraph& g);

}  // namespace triage
