#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "triage/inference.hpp"
#include "triage/knowledge_graph.hpp"
#include "triage/lexicon.hpp"

namespace triage::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
    bool chance(double p) { return uniform(0.0, 1.0) < p; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[index(v.size())]; }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Small graph documents for hand-checked cases.
class GraphBuilder {
public:
    GraphBuilder& specialty(const std::string& label);
    GraphBuilder& disease(const std::string& id, const std::string& specialty, double prior = 0.5,
                          const std::string& parent = {}, const std::string& name = {});
    GraphBuilder& symptom(const std::string& id, SpecialFlow flow = SpecialFlow::none, bool common = false,
                          const std::string& name = {});
    GraphBuilder& link(const std::string& disease, const std::string& symptom, double weight);
    GraphBuilder& related(const std::string& from, const std::string& to, double weight);
    GraphBuilder& drug(const std::string& disease, const std::string& id, const std::string& name, double weight);
    GraphBuilder& procedure(const std::string& disease, const std::string& id, const std::string& name, double weight);

    GraphDocument document() const { return doc_; }
    KnowledgeGraph graph() const { return KnowledgeGraph::build(doc_); }
    std::shared_ptr<const KnowledgeGraph> shared() const;

private:
    GraphDocument doc_;
};

/// Up to `max_diseases` diseases and `max_symptoms` symptoms; every disease
/// has at least one symptom edge. Priors lie in (0, 0.01] so that scaling by
/// up to 100 stays a valid prior.
GraphDocument random_graph(Rng& rng, std::size_t max_diseases = 6, std::size_t max_symptoms = 10);

/// Random polarity for a random subset of symptoms.
std::vector<Evidence> random_evidence(Rng& rng, const GraphDocument& doc);

// Oracles. These work from the raw document, not the indexed graph.

/// Prior times the product of per-evidence factors, normalized.
std::vector<double> enumerate_posterior(const GraphDocument& doc, const std::vector<Evidence>& evidence, double leak);

/// Mutual information between the disease and a yes/no symptom, in bits.
double mutual_information(const std::vector<double>& posterior, const std::vector<double>& likelihoods);

/// Plain recursive edit distance; use only on short strings.
std::size_t naive_levenshtein(const std::u32string& a, const std::u32string& b);

std::string data_path(const std::string& name);
std::string fixture_path(const std::string& name);

std::shared_ptr<const KnowledgeGraph> demo_graph();
std::shared_ptr<const SymptomLexicon> demo_lexicon();

}  // namespace triage::testing
