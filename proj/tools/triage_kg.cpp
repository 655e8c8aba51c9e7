#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "triage/eval.hpp"
#include "triage/knowledge_graph.hpp"
#include "triage/lexicon.hpp"
#include "triage/service.hpp"

using namespace triage;

namespace {

HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int graph_validate(const std::string& path) {
    const auto g = load_graph_file(path);
    const auto report = validate_graph(g);
    for (const auto& issue : report.issues) {
        std::cout << (issue.severity == Severity::violation ? "violation" : "warning") << '\t' << issue.code << '\t'
                  << issue.record << '\t' << issue.message << '\n';
    }
    std::cout << "violations " << report.count(Severity::violation) << ", warnings " << report.count(Severity::warning)
              << '\n';
    return report.count(Severity::violation) == 0 ? 0 : 1;
}

int graph_stats_cmd(const std::string& path, std::size_t top) {
    const auto g = load_graph_file(path);
    const auto s = graph_stats(g);
    std::printf("graph %s %s\n", g.meta().name.c_str(), g.meta().version.c_str());
    std::printf("specialties %zu\ndiseases %zu\nsymptoms %zu\ndrugs %zu\nprocedures %zu\n", g.specialties().size(),
                s.diseases, s.symptoms, s.drugs, s.procedures);
    for (auto kind : {EdgeKind::disease_symptom, EdgeKind::symptom_symptom, EdgeKind::disease_drug,
                      EdgeKind::disease_procedure}) {
        std::printf("edges %s %zu\n", std::string(to_string(kind)).c_str(),
                    s.edges_by_kind[static_cast<int>(kind)]);
    }
    std::printf("symptoms per disease mean %.2f min %zu max %zu\n", s.mean_symptoms_per_disease,
                s.min_symptoms_per_disease, s.max_symptoms_per_disease);
    std::printf("most frequent symptoms:\n");
    for (std::size_t i = 0; i < top && i < s.symptom_occurrences.size(); ++i) {
        const auto& o = s.symptom_occurrences[i];
        std::printf("  %s\t%s\t%zu\n", o.id.c_str(), o.name.c_str(), o.diseases);
    }
    return 0;
}

int graph_query(const std::string& path, const std::string& kind_name, const std::string& from) {
    const auto g = load_graph_file(path);
    auto kind = parse_edge_kind(kind_name);
    if (!kind) throw std::runtime_error("unknown edge kind '" + kind_name + "'");
    for (const auto& t : query_edges(g, *kind, from)) std::printf("%s\t%g\n", t.id.c_str(), t.weight);
    return 0;
}

std::optional<Locale> locale_option(const std::string& name) {
    if (name.empty()) return std::nullopt;
    auto l = parse_locale(name);
    if (!l) throw std::runtime_error("unknown locale '" + name + "'");
    return l;
}

int lexicon_match(const std::string& graph_path, const std::string& lex_path, const std::string& locale,
                  const std::vector<std::string>& terms) {
    const auto g = load_graph_file(graph_path);
    const auto lex = load_lexicon_file(lex_path, g);
    const auto hint = locale_option(locale);
    int unmatched = 0;
    for (const auto& t : terms) {
        const auto m = lex.normalize_term(t, hint);
        std::printf("%s\t%s\t%s\t%.3f\n", t.c_str(), m.symptom_id ? m.symptom_id->c_str() : "-",
                    std::string(to_string(m.method)).c_str(), m.score);
        unmatched += !m.symptom_id;
    }
    return unmatched == 0 ? 0 : 1;
}

int lexicon_coverage(const std::string& graph_path, const std::string& lex_path) {
    const auto g = load_graph_file(graph_path);
    const auto lex = load_lexicon_file(lex_path, g);
    const auto c = lex.coverage();
    for (const auto& [locale, n] : c.variants_by_locale) {
        std::printf("variants %s %zu\n", std::string(to_string(locale)).c_str(), n);
    }
    std::printf("bengali variants %zu\n", c.bengali_variants);
    std::printf("symptoms with bengali variant %zu of %zu\n", c.symptoms_with_bengali, c.symptoms);
    return 0;
}

struct ServeArgs {
    std::string graph, lexicon, store, host = "0.0.0.0", static_dir, templates;
    int port = 8080;
};

int serve(const ServeArgs& a) {
    auto graph = std::make_shared<const KnowledgeGraph>(load_graph_file(a.graph));
    auto lex = std::make_shared<const SymptomLexicon>(load_lexicon_file(a.lexicon, *graph));
    auto templates = a.templates.empty() ? QuestionTemplates::defaults() : QuestionTemplates::from_json(read_file(a.templates));
    SessionStore store(a.store);
    ServiceOptions options;
    if (const char* t = std::getenv("TRIAGE_PATIENT_TOKEN")) options.patient_token = t;
    if (const char* t = std::getenv("TRIAGE_CLINICIAN_TOKEN")) options.clinician_token = t;
    TriageService service(graph, lex, std::move(templates), IntentRules::defaults(), store, options);
    HttpServer server(service, a.static_dir);
    const int port = server.bind(a.host, a.port);
    if (port < 0) throw std::runtime_error("cannot bind " + a.host + ":" + std::to_string(a.port));
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::fprintf(stderr, "listening on %s:%d (%zu stored sessions)\n", a.host.c_str(), port, store.size());
    server.listen();
    g_server = nullptr;
    return 0;
}

struct EvalArgs {
    std::string graph, lexicon, vignettes, panel, out;
    unsigned threads = 1;
};

int run_eval(const EvalArgs& a) {
    auto graph = std::make_shared<const KnowledgeGraph>(load_graph_file(a.graph));
    const auto lex = load_lexicon_file(a.lexicon, *graph);
    const auto vignettes = eval::load_vignettes_file(a.vignettes);
    for (const auto& v : vignettes) {
        for (const auto& s : eval::unresolved_symptoms(v, lex)) {
            std::fprintf(stderr, "warning: %s: unresolved symptom '%s'\n", v.patient_id.c_str(), s.c_str());
        }
    }
    const auto results = eval::simulate_all(vignettes, graph, lex, {}, a.threads);
    const auto parents = eval::ParentMap::from_graph(*graph);
    auto report = eval::compute_metrics(results, vignettes, parents);
    if (!a.panel.empty()) eval::concordance_analysis(report, results, eval::load_panel_file(a.panel), vignettes, parents);
    eval::emit_report(report, a.out);
    std::cout << eval::render_summary(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knowledge-graph triage engine tools"};
    app.require_subcommand(1);

    std::string graph_path, lex_path, locale, kind, from;
    std::size_t top = 10;
    std::vector<std::string> terms;
    int rc = 0;

    auto* graph = app.add_subcommand("graph", "Inspect a knowledge graph document");
    graph->require_subcommand(1);
    auto* validate = graph->add_subcommand("validate", "Check data rules; exit 1 on violations");
    validate->add_option("--graph", graph_path)->required()->envname("TRIAGE_GRAPH");
    auto* stats = graph->add_subcommand("stats", "Print counts and symptom frequencies");
    stats->add_option("--graph", graph_path)->required()->envname("TRIAGE_GRAPH");
    stats->add_option("--top", top, "Symptoms to list")->capture_default_str();
    auto* query = graph->add_subcommand("query", "List ordered neighbours over one edge kind");
    query->add_option("--graph", graph_path)->required()->envname("TRIAGE_GRAPH");
    query->add_option("--kind", kind)->required();
    query->add_option("--from", from)->required();

    auto* lexicon = app.add_subcommand("lexicon", "Symptom lexicon tools");
    lexicon->require_subcommand(1);
    auto* match = lexicon->add_subcommand("match", "Map surface strings to symptoms");
    match->add_option("--graph", graph_path)->required()->envname("TRIAGE_GRAPH");
    match->add_option("--lexicon", lex_path)->required()->envname("TRIAGE_LEXICON");
    match->add_option("--locale", locale, "Locale hint");
    match->add_option("terms", terms)->required();
    auto* coverage = lexicon->add_subcommand("coverage", "Variant counts per locale");
    coverage->add_option("--graph", graph_path)->required()->envname("TRIAGE_GRAPH");
    coverage->add_option("--lexicon", lex_path)->required()->envname("TRIAGE_LEXICON");

    ServeArgs sa;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP session service");
    serve_cmd->add_option("--graph", sa.graph)->required()->envname("TRIAGE_GRAPH");
    serve_cmd->add_option("--lexicon", sa.lexicon)->required()->envname("TRIAGE_LEXICON");
    serve_cmd->add_option("--port", sa.port)->capture_default_str()->envname("TRIAGE_PORT");
    serve_cmd->add_option("--host", sa.host)->capture_default_str()->envname("TRIAGE_HOST");
    serve_cmd->add_option("--store", sa.store, "Session journal file")->required()->envname("TRIAGE_STORE");
    serve_cmd->add_option("--static", sa.static_dir, "Directory served at /")->envname("TRIAGE_STATIC");
    serve_cmd->add_option("--templates", sa.templates, "Question template document")->envname("TRIAGE_TEMPLATES");

    EvalArgs ea;
    auto* eval_cmd = app.add_subcommand("eval", "Run the vignette benchmark");
    eval_cmd->add_option("--graph", ea.graph)->required()->envname("TRIAGE_GRAPH");
    eval_cmd->add_option("--lexicon", ea.lexicon)->required()->envname("TRIAGE_LEXICON");
    eval_cmd->add_option("--vignettes", ea.vignettes)->required();
    eval_cmd->add_option("--panel", ea.panel);
    eval_cmd->add_option("--out", ea.out)->required();
    eval_cmd->add_option("--threads", ea.threads)->capture_default_str()->check(CLI::Range(1u, 256u));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) rc = graph_validate(graph_path);
        else if (*stats) rc = graph_stats_cmd(graph_path, top);
        else if (*query) rc = graph_query(graph_path, kind, from);
        else if (*match) rc = lexicon_match(graph_path, lex_path, locale, terms);
        else if (*coverage) rc = lexicon_coverage(graph_path, lex_path);
        else if (*serve_cmd) rc = serve(sa);
        else if (*eval_cmd) rc = run_eval(ea);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return rc;
}
