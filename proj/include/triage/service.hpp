#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "triage/inference.hpp"
#include "triage/intent.hpp"
#include "triage/lexicon.hpp"
#include "triage/question_text.hpp"
#include "triage/session_store.hpp"

namespace triage {

enum class Scope { patient, clinician };

struct HttpRequest {
    std::string method;
    std::string path;
    std::string authorization;  // raw header value
    std::string body;
    std::map<std::string, std::string> query;
};

struct HttpResponse {
    int status = 200;
    std::string body;
};

struct ServiceOptions {
    EngineConfig engine;
    std::string patient_token = "patient";
    std::string clinician_token = "clinician";
    std::size_t suggestions = 5;
    std::size_t diagnoses = 3;
    std::size_t plan_items = 3;
};

/// Request handler for the session API. Transport-independent; see
/// HttpServer for the socket binding.
///
///   POST /v1/sessions                     create, returns suggestions and first question
///   POST /v1/sessions/{id}/suggestions    accept suggested symptoms
///   POST /v1/sessions/{id}/answers        answer the outstanding question
///   POST /v1/sessions/{id}/evidence       clinician evidence update
///   POST /v1/sessions/{id}/terminate
///   GET  /v1/sessions/{id}/recommendation diagnoses only for clinician scope
///   GET  /v1/sessions/{id}/soap           clinician scope
///   POST /v1/intent
///   GET  /v1/symptoms?prefix=&locale=&n=  autocomplete
class TriageService {
public:
    TriageService(std::shared_ptr<const KnowledgeGraph> graph, std::shared_ptr<const SymptomLexicon> lexicon,
                  QuestionTemplates templates, IntentRules intents, SessionStore& store, ServiceOptions options = {});

    HttpResponse handle(const HttpRequest& request);

private:
    struct Slot {
        std::mutex mu;
        std::optional<AssessmentSession> session;
        Locale locale = Locale::en;
    };

    std::shared_ptr<Slot> find_slot(const std::string& id);
    void persist(const std::string& id, const Slot& slot);

    HttpResponse create_session(const std::string& body);
    HttpResponse with_session(const std::string& id, const std::string& action, const HttpRequest& request,
                              Scope scope);

    std::shared_ptr<const KnowledgeGraph> graph_;
    std::shared_ptr<const SymptomLexicon> lexicon_;
    QuestionTemplates templates_;
    IntentRules intents_;
    SessionStore& store_;
    ServiceOptions options_;

    std::mutex registry_mu_;
    std::map<std::string, std::shared_ptr<Slot>> slots_;
};

/// Binds a TriageService to HTTP/1.1, optionally serving static files.
class HttpServer {
public:
    explicit HttpServer(TriageService& service, std::filesystem::path static_dir = {});
    ~HttpServer();

    /// Port 0 picks a free port. Returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    void stop();
    /// Waits until listen() accepts connections.
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace triage
