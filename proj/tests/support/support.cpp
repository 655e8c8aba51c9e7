#include "support.hpp"

#include <algorithm>
#include <cmath>

namespace triage::testing {

GraphBuilder& GraphBuilder::specialty(const std::string& label) {
    if (std::find(doc_.specialties.begin(), doc_.specialties.end(), label) == doc_.specialties.end()) {
        doc_.specialties.push_back(label);
    }
    return *this;
}

GraphBuilder& GraphBuilder::disease(const std::string& id, const std::string& specialty_label, double prior,
                                    const std::string& parent, const std::string& name) {
    specialty(specialty_label);
    doc_.diseases.push_back({id, name.empty() ? id : name, parent, specialty_label, prior, false});
    return *this;
}

GraphBuilder& GraphBuilder::symptom(const std::string& id, SpecialFlow flow, bool common, const std::string& name) {
    doc_.symptoms.push_back({id, name.empty() ? id : name, flow, common});
    return *this;
}

GraphBuilder& GraphBuilder::link(const std::string& disease, const std::string& symptom, double weight) {
    doc_.edges.push_back({EdgeKind::disease_symptom, disease, symptom, weight});
    return *this;
}

GraphBuilder& GraphBuilder::related(const std::string& from, const std::string& to, double weight) {
    doc_.edges.push_back({EdgeKind::symptom_symptom, from, to, weight});
    return *this;
}

GraphBuilder& GraphBuilder::drug(const std::string& disease, const std::string& id, const std::string& name,
                                 double weight) {
    if (std::none_of(doc_.drugs.begin(), doc_.drugs.end(), [&](const TherapyNode& t) { return t.id == id; })) {
        doc_.drugs.push_back({id, name, TherapyKind::drug});
    }
    doc_.edges.push_back({EdgeKind::disease_drug, disease, id, weight});
    return *this;
}

GraphBuilder& GraphBuilder::procedure(const std::string& disease, const std::string& id, const std::string& name,
                                      double weight) {
    if (std::none_of(doc_.procedures.begin(), doc_.procedures.end(), [&](const TherapyNode& t) { return t.id == id; })) {
        doc_.procedures.push_back({id, name, TherapyKind::procedure});
    }
    doc_.edges.push_back({EdgeKind::disease_procedure, disease, id, weight});
    return *this;
}

std::shared_ptr<const KnowledgeGraph> GraphBuilder::shared() const {
    return std::make_shared<const KnowledgeGraph>(KnowledgeGraph::build(doc_));
}

GraphDocument random_graph(Rng& rng, std::size_t max_diseases, std::size_t max_symptoms) {
    static const std::vector<std::string> specialties = {"Cardiology", "Nephrology", "ENT", "Dermatology"};
    GraphDocument doc;
    doc.meta = {"random", "1"};
    doc.specialties = specialties;
    const std::size_t nd = 1 + rng.index(max_diseases);
    const std::size_t ns = 1 + rng.index(max_symptoms);
    for (std::size_t s = 0; s < ns; ++s) {
        const auto id = "S" + std::to_string(s);
        doc.symptoms.push_back({id, "symptom " + std::to_string(s), SpecialFlow::none, rng.chance(0.3)});
    }
    for (std::size_t d = 0; d < nd; ++d) {
        const auto id = "D" + std::to_string(d);
        doc.diseases.push_back({id, "disease " + std::to_string(d), id, rng.pick(specialties),
                                rng.uniform(1e-4, 0.01), false});
        std::vector<std::size_t> order(ns);
        for (std::size_t s = 0; s < ns; ++s) order[s] = s;
        std::shuffle(order.begin(), order.end(), rng.engine());
        const std::size_t k = 1 + rng.index(ns);
        for (std::size_t i = 0; i < k; ++i) {
            // Occasional weight 1.0 exercises the leak cap.
            const double w = rng.chance(0.1) ? 1.0 : rng.uniform(0.01, 1.0);
            doc.edges.push_back({EdgeKind::disease_symptom, id, "S" + std::to_string(order[i]), w});
        }
    }
    return doc;
}

std::vector<Evidence> random_evidence(Rng& rng, const GraphDocument& doc) {
    std::vector<Evidence> out;
    for (const auto& s : doc.symptoms) {
        if (!rng.chance(0.6)) continue;
        const int p = rng.integer(0, 2);
        out.push_back({s.id, p == 0 ? Polarity::present : p == 1 ? Polarity::absent : Polarity::unknown, {},
                       EvidenceSource::asked});
    }
    std::shuffle(out.begin(), out.end(), rng.engine());
    return out;
}

std::vector<double> enumerate_posterior(const GraphDocument& doc, const std::vector<Evidence>& evidence, double leak) {
    std::vector<double> joint;
    for (const auto& d : doc.diseases) {
        double p = d.prior;
        for (const auto& e : evidence) {
            if (e.polarity == Polarity::unknown) continue;
            double l = leak;
            for (const auto& edge : doc.edges) {
                if (edge.kind == EdgeKind::disease_symptom && edge.from == d.id && edge.to == e.symptom_id) {
                    l = edge.weight > 1.0 - leak ? 1.0 - leak : edge.weight;
                }
            }
            p *= e.polarity == Polarity::present ? l : 1.0 - l;
        }
        joint.push_back(p);
    }
    double total = 0.0;
    for (double v : joint) total += v;
    for (double& v : joint) v /= total;
    return joint;
}

double mutual_information(const std::vector<double>& posterior, const std::vector<double>& likelihoods) {
    double yes = 0.0;
    for (std::size_t d = 0; d < posterior.size(); ++d) yes += posterior[d] * likelihoods[d];
    const double no = 1.0 - yes;
    double mi = 0.0;
    for (std::size_t d = 0; d < posterior.size(); ++d) {
        const double a = posterior[d] * likelihoods[d];
        const double b = posterior[d] * (1.0 - likelihoods[d]);
        if (a > 0.0) mi += a * std::log2(likelihoods[d] / yes);
        if (b > 0.0) mi += b * std::log2((1.0 - likelihoods[d]) / no);
    }
    return mi;
}

std::size_t naive_levenshtein(const std::u32string& a, const std::u32string& b) {
    if (a.empty()) return b.size();
    if (b.empty()) return a.size();
    const std::u32string ta = a.substr(1), tb = b.substr(1);
    if (a[0] == b[0]) return naive_levenshtein(ta, tb);
    return 1 + std::min({naive_levenshtein(ta, b), naive_levenshtein(a, tb), naive_levenshtein(ta, tb)});
}

std::string data_path(const std::string& name) { return std::string(TRIAGE_DATA_DIR) + "/" + name; }
std::string fixture_path(const std::string& name) { return std::string(TRIAGE_FIXTURE_DIR) + "/" + name; }

std::shared_ptr<const KnowledgeGraph> demo_graph() {
    static const auto g = std::make_shared<const KnowledgeGraph>(load_graph_file(data_path("demo_graph.json")));
    return g;
}

std::shared_ptr<const SymptomLexicon> demo_lexicon() {
    static const auto l =
        std::make_shared<const SymptomLexicon>(load_lexicon_file(data_path("demo_lexicon.tsv"), *demo_graph()));
    return l;
}

}  // namespace triage::testing
