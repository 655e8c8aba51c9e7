#include "triage/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "triage/recommender.hpp"
#include "triage/text.hpp"

namespace triage::eval {

namespace {

constexpr const char* kVignetteColumns[] = {
    "patient_id",         "sex",          "age",         "family_history",   "medical_history",
    "current_medication", "allergies",    "remarks",     "primary_complaints", "additional_symptoms",
    "gold_diagnoses",     "gold_medications", "gold_tests", "advice",         "gold_specialization"};
constexpr const char* kPanelColumns[] = {"physician_id", "patient_id", "diagnoses",
                                         "specialization", "advice",   "rationale"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> multi(std::string_view cell) {
    std::vector<std::string> out;
    for (auto& part : split(cell, '|')) {
        auto t = trim(part);
        if (!t.empty() && t != "-") out.push_back(std::move(t));
    }
    return out;
}

template <std::size_t N>
std::vector<std::vector<std::string>> read_table(std::istream& in, const char* const (&columns)[N], const char* what,
                                                 std::vector<std::size_t>& line_numbers) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<std::string>> rows;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto cells = split(line, '\t');
        if (!header) {
            for (std::size_t i = 0; i < N; ++i) {
                if (cells.size() != N || trim(cells[i]) != columns[i]) {
                    throw EvalError(std::string(what) + " line " + std::to_string(line_no) +
                                    ": header must list the columns " + columns[0] + " ... " + columns[N - 1] +
                                    " in order");
                }
            }
            header = true;
            continue;
        }
        if (cells.size() != N) {
            throw EvalError(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                            std::to_string(N) + " columns, found " + std::to_string(cells.size()));
        }
        rows.push_back(std::move(cells));
        line_numbers.push_back(line_no);
    }
    if (!header) throw EvalError(std::string(what) + ": missing header row");
    return rows;
}

std::string key(std::string_view s) { return text::normalize(s); }

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace

std::vector<Vignette> load_vignettes(std::istream& in) {
    std::vector<std::size_t> lines;
    const auto rows = read_table(in, kVignetteColumns, "vignettes", lines);
    std::vector<Vignette> out;
    std::set<std::string> ids;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& c = rows[r];
        auto fail = [&](const std::string& msg) {
            throw EvalError("vignettes line " + std::to_string(lines[r]) + ": " + msg);
        };
        Vignette v;
        v.patient_id = trim(c[0]);
        if (v.patient_id.empty()) fail("empty patient_id");
        if (!ids.insert(v.patient_id).second) fail("duplicate patient_id '" + v.patient_id + "'");
        auto sex = parse_sex(trim(c[1]));
        if (!sex) fail("unknown sex '" + c[1] + "'");
        v.sex = *sex;
        try {
            std::size_t used = 0;
            const auto age = trim(c[2]);
            v.age = std::stoi(age, &used);
            if (used != age.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            fail("age '" + c[2] + "' is not an integer");
        }
        if (v.age < 0 || v.age > 130) fail("age out of range");
        v.family_history = multi(c[3]);
        v.medical_history = multi(c[4]);
        v.current_medication = multi(c[5]);
        v.allergies = multi(c[6]);
        v.remarks = trim(c[7]);
        v.primary_complaints = multi(c[8]);
        v.additional_symptoms = multi(c[9]);
        v.gold_diagnoses = multi(c[10]);
        v.gold_medications = multi(c[11]);
        v.gold_tests = multi(c[12]);
        v.advice = trim(c[13]);
        v.gold_specialization = multi(c[14]);
        if (v.primary_complaints.empty()) fail("no primary complaints");
        if (v.gold_diagnoses.empty() || v.gold_diagnoses.size() > 3) fail("gold_diagnoses must hold 1 to 3 terms");
        if (v.gold_medications.size() > 3) fail("more than 3 gold medications");
        if (v.gold_tests.size() > 3) fail("more than 3 gold tests");
        if (v.gold_specialization.empty()) fail("empty gold_specialization");
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Vignette> load_vignettes_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EvalError("cannot open " + path.string());
    return load_vignettes(in);
}

std::vector<PanelAnswer> load_panel(std::istream& in) {
    std::vector<std::size_t> lines;
    const auto rows = read_table(in, kPanelColumns, "panel", lines);
    std::vector<PanelAnswer> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& c = rows[r];
        auto fail = [&](const std::string& msg) {
            throw EvalError("panel line " + std::to_string(lines[r]) + ": " + msg);
        };
        PanelAnswer a{trim(c[0]), trim(c[1]), multi(c[2]), trim(c[3]), trim(c[4]), trim(c[5])};
        if (a.physician_id.empty() || a.patient_id.empty()) fail("empty physician_id or patient_id");
        if (a.diagnoses.empty()) fail("missing top-1 diagnosis");
        if (a.diagnoses.size() > 3) fail("more than 3 diagnoses");
        if (!seen.emplace(a.physician_id, a.patient_id).second) {
            fail("duplicate answer from '" + a.physician_id + "' for '" + a.patient_id + "'");
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<PanelAnswer> load_panel_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EvalError("cannot open " + path.string());
    return load_panel(in);
}

std::vector<std::string> unresolved_symptoms(const Vignette& v, const SymptomLexicon& lexicon) {
    std::vector<std::string> out;
    for (const auto* list : {&v.primary_complaints, &v.additional_symptoms}) {
        for (const auto& s : *list) {
            if (!lexicon.normalize_term(s).symptom_id) out.push_back(s);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

EngineResult simulate_patient(const Vignette& v, const std::shared_ptr<const KnowledgeGraph>& graph,
                              const SymptomLexicon& lexicon, const EngineConfig& config) {
    EngineResult r;
    r.patient_id = v.patient_id;

    std::vector<std::string> complaints;
    for (const auto& c : v.primary_complaints) {
        const auto m = lexicon.normalize_term(c);
        if (!m.symptom_id) {
            r.skipped = true;
            r.skip_reason = "unresolved complaint '" + c + "'";
            return r;
        }
        if (std::find(complaints.begin(), complaints.end(), *m.symptom_id) == complaints.end()) {
            complaints.push_back(*m.symptom_id);
        }
    }
    std::set<std::string> reported(complaints.begin(), complaints.end());
    for (const auto& s : v.additional_symptoms) {
        if (auto m = lexicon.normalize_term(s); m.symptom_id) reported.insert(*m.symptom_id);
    }

    PatientContext patient{v.age, v.sex, v.medical_history, v.family_history, v.current_medication, v.allergies,
                           v.remarks};
    try {
        auto session = AssessmentSession::start(graph, std::move(patient), complaints, config);
        const auto& flows = config.subflows.flows;
        while (true) {
            const NextStep step = session.next_question();
            if (const auto* done = std::get_if<Done>(&step)) {
                r.stop_reason = done->reason;
                break;
            }
            const auto& q = std::get<Question>(step);
            TranscriptEntry entry{q.id, q.symptom_id, q.kind, q.attribute_name, {}};
            if (q.kind == QuestionKind::presence) {
                const Polarity p = reported.contains(q.symptom_id) ? Polarity::present : Polarity::absent;
                entry.answer = std::string(to_string(p));
                session.record_answer(q.id, p);
                ++r.presence_questions;
            } else {
                const auto flow = graph->symptoms()[*graph->symptom_index(q.symptom_id)].special_flow;
                std::string value = "unknown";
                for (const auto& prompt : flows.at(flow)) {
                    if (prompt.name == q.attribute_name) value = prompt.default_answer;
                }
                entry.answer = value;
                session.record_answer(q.id, value);
            }
            r.transcript.push_back(std::move(entry));
        }
        for (const auto& d : diagnose(session, 3).diagnoses) {
            r.diagnoses.push_back(d.name);
            r.confidences.push_back(d.confidence);
        }
        const auto specialties = rank_specialties(session);
        for (std::size_t i = 0; i < specialties.size() && i < 3; ++i) r.specialties.push_back(specialties[i].label);
        r.specialty_confidence = specialties.front().confidence;
    } catch (const SessionError& e) {
        r = EngineResult{};
        r.patient_id = v.patient_id;
        r.skipped = true;
        r.skip_reason = e.what();
    }
    return r;
}

std::vector<EngineResult> simulate_all(const std::vector<Vignette>& vignettes,
                                       const std::shared_ptr<const KnowledgeGraph>& graph,
                                       const SymptomLexicon& lexicon, const EngineConfig& config, unsigned threads) {
    std::vector<EngineResult> results(vignettes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < vignettes.size();) {
            results[i] = simulate_patient(vignettes[i], graph, lexicon, config);
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

// ---------------------------------------------------------------------------

ParentMap ParentMap::from_graph(const KnowledgeGraph& g) {
    ParentMap m;
    for (const auto& d : g.diseases()) {
        const std::string& parent = d.parent_term == d.id ? d.name : d.parent_term;
        m.add(d.id, parent);
        m.add(d.name, parent);
    }
    return m;
}

void ParentMap::add(const std::string& term, const std::string& parent) { parents_[key(term)] = parent; }

std::string ParentMap::parent(const std::string& term) const { return key(display(term)); }

std::string ParentMap::display(const std::string& term) const {
    auto it = parents_.find(key(term));
    return it == parents_.end() ? term : it->second;
}

double percent(std::size_t matches, std::size_t n) {
    if (n == 0) return 0.0;
    return std::round(10000.0 * static_cast<double>(matches) / static_cast<double>(n)) / 100.0;
}

std::string agreement_label(const TermAgreement& t, std::size_t panel_size) {
    return t.term + " " + std::to_string(t.physicians) + "/" + std::to_string(panel_size);
}

namespace {

bool label_in(const std::string& label, const std::vector<std::string>& options) {
    const auto k = key(label);
    return std::any_of(options.begin(), options.end(), [&](const std::string& o) { return key(o) == k; });
}

std::map<std::string, const EngineResult*> index_results(const std::vector<EngineResult>& results,
                                                         const std::vector<Vignette>& vignettes) {
    std::map<std::string, const EngineResult*> by_id;
    for (const auto& r : results) {
        if (!by_id.emplace(r.patient_id, &r).second) throw EvalError("duplicate result for '" + r.patient_id + "'");
    }
    if (results.size() != vignettes.size()) {
        throw EvalError("result/vignette count mismatch: " + std::to_string(results.size()) + " results for " +
                        std::to_string(vignettes.size()) + " vignettes");
    }
    for (const auto& v : vignettes) {
        if (!by_id.contains(v.patient_id)) throw EvalError("no result for vignette '" + v.patient_id + "'");
    }
    return by_id;
}

}  // namespace

EvalReport compute_metrics(const std::vector<EngineResult>& results, const std::vector<Vignette>& vignettes,
                           const ParentMap& parents) {
    if (vignettes.empty() || results.empty()) throw EvalError("no results");
    const auto by_id = index_results(results, vignettes);

    EvalReport report;
    report.engine.n = vignettes.size();
    for (const auto& v : vignettes) {
        const EngineResult& r = *by_id.at(v.patient_id);
        CaseOutcome c{v.patient_id, r.skipped};
        if (!r.skipped) {
            const auto& gold = v.gold_diagnoses.front();
            for (std::size_t i = 0; i < r.diagnoses.size() && i < 3; ++i) {
                if (parents.same(r.diagnoses[i], gold)) {
                    c.m3 = true;
                    if (i == 0) c.m1 = true;
                }
            }
            for (std::size_t i = 0; i < r.specialties.size() && i < 3; ++i) {
                if (label_in(r.specialties[i], v.gold_specialization)) {
                    c.specialty_m3 = true;
                    if (i == 0) c.specialty_m1 = true;
                }
            }
        }
        report.engine.m1 += c.m1;
        report.engine.m3 += c.m3;
        report.engine.specialty_m1 += c.specialty_m1;
        report.engine.specialty_m3 += c.specialty_m3;
        report.skipped += c.skipped;
        switch (v.sex) {
        case Sex::male: ++report.demographics.male; break;
        case Sex::female: ++report.demographics.female; break;
        case Sex::other: ++report.demographics.other; break;
        }
        report.cases.push_back(c);
    }
    return report;
}

void concordance_analysis(EvalReport& report, const std::vector<EngineResult>& results,
                          const std::vector<PanelAnswer>& panel, const std::vector<Vignette>& vignettes,
                          const ParentMap& parents) {
    const auto by_id = index_results(results, vignettes);
    std::set<std::string> physician_ids;
    std::map<std::pair<std::string, std::string>, const PanelAnswer*> answers;  // (physician, patient)
    for (const auto& a : panel) {
        physician_ids.insert(a.physician_id);
        answers[{a.physician_id, a.patient_id}] = &a;
    }
    if (physician_ids.empty()) throw EvalError("concordance analysis needs at least one physician");
    report.panel_size = physician_ids.size();
    report.physicians.clear();
    report.diagnosis_failures.clear();
    report.specialty_failures.clear();

    for (const auto& pid : physician_ids) {
        PhysicianScore score{pid, {}};
        score.counts.n = vignettes.size();
        for (const auto& v : vignettes) {
            auto it = answers.find({pid, v.patient_id});
            if (it == answers.end()) continue;
            const auto& a = *it->second;
            const auto& gold = v.gold_diagnoses.front();
            if (parents.same(a.diagnoses.front(), gold)) ++score.counts.m1;
            if (std::any_of(a.diagnoses.begin(), a.diagnoses.end(),
                            [&](const std::string& d) { return parents.same(d, gold); })) {
                ++score.counts.m3;
            }
            if (!a.specialization.empty() && label_in(a.specialization, v.gold_specialization)) {
                ++score.counts.specialty_m1;
                ++score.counts.specialty_m3;
            }
        }
        report.physicians.push_back(score);
    }

    for (std::size_t i = 0; i < vignettes.size(); ++i) {
        const auto& v = vignettes[i];
        const auto& r = *by_id.at(v.patient_id);
        const CaseOutcome& c = report.cases.at(i);
        std::vector<const PanelAnswer*> row_answers;
        for (const auto& pid : physician_ids) {
            auto it = answers.find({pid, v.patient_id});
            row_answers.push_back(it == answers.end() ? nullptr : it->second);
        }

        if (!c.m3) {
            ConcordanceRow row;
            row.patient_id = v.patient_id;
            row.gold = v.gold_diagnoses.front();
            for (const auto* a : row_answers) row.physician_answers.push_back(a ? a->diagnoses : std::vector<std::string>{});
            for (std::size_t t = 0; t < r.diagnoses.size() && t < 3; ++t) {
                const auto& term = r.diagnoses[t];
                TermAgreement agreement{parents.display(term), 0};
                for (const auto* a : row_answers) {
                    if (!a) continue;
                    if (std::any_of(a->diagnoses.begin(), a->diagnoses.end(),
                                    [&](const std::string& d) { return parents.same(d, term); })) {
                        ++agreement.physicians;
                    }
                    if (parents.same(a->diagnoses.front(), term)) row.physician_match = true;
                }
                row.strong_consensus = row.strong_consensus || agreement.physicians >= 3;
                row.engine.push_back(std::move(agreement));
            }
            row.m1 = c.m1;
            row.m3 = c.m3;
            report.diagnosis_failures.push_back(std::move(row));
        }

        if (!c.specialty_m3) {
            ConcordanceRow row;
            row.patient_id = v.patient_id;
            for (const auto& g : v.gold_specialization) row.gold += (row.gold.empty() ? "" : " | ") + g;
            for (const auto* a : row_answers) {
                row.physician_answers.push_back(a && !a->specialization.empty()
                                                    ? std::vector<std::string>{a->specialization}
                                                    : std::vector<std::string>{});
            }
            for (std::size_t t = 0; t < r.specialties.size() && t < 3; ++t) {
                TermAgreement agreement{r.specialties[t], 0};
                for (const auto* a : row_answers) {
                    if (a && !a->specialization.empty() && key(a->specialization) == key(agreement.term)) {
                        ++agreement.physicians;
                        row.physician_match = true;
                    }
                }
                row.strong_consensus = row.strong_consensus || agreement.physicians >= 3;
                row.engine.push_back(std::move(agreement));
            }
            row.m1 = c.specialty_m1;
            row.m3 = c.specialty_m3;
            report.specialty_failures.push_back(std::move(row));
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

struct MeanScores {
    double m1 = 0, m3 = 0, specialty_m1 = 0;
};

MeanScores physician_means(const EvalReport& r) {
    MeanScores m;
    if (r.physicians.empty()) return m;
    for (const auto& p : r.physicians) {
        const double n = static_cast<double>(p.counts.n);
        m.m1 += 100.0 * static_cast<double>(p.counts.m1) / n;
        m.m3 += 100.0 * static_cast<double>(p.counts.m3) / n;
        m.specialty_m1 += 100.0 * static_cast<double>(p.counts.specialty_m1) / n;
    }
    const double k = static_cast<double>(r.physicians.size());
    auto round2 = [](double v) { return std::round(v * 100.0) / 100.0; };
    return {round2(m.m1 / k), round2(m.m3 / k), round2(m.specialty_m1 / k)};
}

const char* flag(bool ok) { return ok ? "success" : "failure"; }

std::size_t count_if_rows(const std::vector<ConcordanceRow>& rows, bool ConcordanceRow::*field) {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [&](const ConcordanceRow& r) { return r.*field; }));
}

void require_results(const EvalReport& r) {
    if (r.cases.empty()) throw EvalError("no results");
}

}  // namespace

std::string render_summary(const EvalReport& r) {
    require_results(r);
    const auto& e = r.engine;
    std::ostringstream os;
    os << "vignettes " << e.n << " (male " << fixed2(percent(r.demographics.male, e.n)) << "%, female "
       << fixed2(percent(r.demographics.female, e.n)) << "%)\n";
    os << "skipped " << r.skipped << "\n";
    os << "\n";
    const bool panel = !r.physicians.empty();
    const auto means = physician_means(r);
    os << "engine M1 " << fixed2(percent(e.m1, e.n));
    if (panel) os << " / physicians mean M1 " << fixed2(means.m1);
    os << "\nengine M3 " << fixed2(percent(e.m3, e.n));
    if (panel) os << " / physicians mean M3 " << fixed2(means.m3);
    os << "\nengine specialty M1 " << fixed2(percent(e.specialty_m1, e.n));
    if (panel) os << " / physicians mean specialty M1 " << fixed2(means.specialty_m1);
    os << "\nengine specialty M3 " << fixed2(percent(e.specialty_m3, e.n))
       << " (reported alongside specialty M1; physicians give a single specialty)\n";
    os << "\n";
    os << "diagnosis M3 failures " << (e.n - e.m3) << "\n";
    os << "specialty M3 failures " << (e.n - e.specialty_m3) << "\n";
    if (panel) {
        os << "diagnosis failures with physician match " << count_if_rows(r.diagnosis_failures, &ConcordanceRow::physician_match)
           << " of " << r.diagnosis_failures.size() << "\n";
        os << "diagnosis failures with strong consensus "
           << count_if_rows(r.diagnosis_failures, &ConcordanceRow::strong_consensus) << " of "
           << r.diagnosis_failures.size() << "\n";
        os << "specialty failures with physician match "
           << count_if_rows(r.specialty_failures, &ConcordanceRow::physician_match) << " of "
           << r.specialty_failures.size() << "\n";
        os << "\n";
        os << "source            M1      M3      specialty_M1\n";
        auto line = [&](const std::string& name, double m1, double m3, double s1) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%-16s  %6.2f  %6.2f  %6.2f\n", name.c_str(), m1, m3, s1);
            os << buf;
        };
        line("engine", percent(e.m1, e.n), percent(e.m3, e.n), percent(e.specialty_m1, e.n));
        for (const auto& p : r.physicians) {
            line(p.physician_id, percent(p.counts.m1, p.counts.n), percent(p.counts.m3, p.counts.n),
                 percent(p.counts.specialty_m1, p.counts.n));
        }
        line("physicians mean", means.m1, means.m3, means.specialty_m1);
    }
    return os.str();
}

std::string render_metrics_tsv(const EvalReport& r) {
    require_results(r);
    std::ostringstream os;
    os << "source\tn\tm1\tm3\tspecialty_m1\tspecialty_m3\tm1_pct\tm3_pct\tspecialty_m1_pct\tspecialty_m3_pct\n";
    auto line = [&](const std::string& name, const MetricCounts& c) {
        os << name << '\t' << c.n << '\t' << c.m1 << '\t' << c.m3 << '\t' << c.specialty_m1 << '\t'
           << c.specialty_m3 << '\t' << fixed2(percent(c.m1, c.n)) << '\t' << fixed2(percent(c.m3, c.n)) << '\t'
           << fixed2(percent(c.specialty_m1, c.n)) << '\t' << fixed2(percent(c.specialty_m3, c.n)) << '\n';
    };
    line("engine", r.engine);
    for (const auto& p : r.physicians) line(p.physician_id, p.counts);
    return os.str();
}

std::string render_failures_tsv(const EvalReport& r) {
    require_results(r);
    std::ostringstream os;
    os << "table\tpatient_id\tgold";
    for (const auto& p : r.physicians) os << '\t' << p.physician_id;
    os << "\tengine\tm1\tm3\tphysician_match\tstrong_consensus\n";
    auto rows = [&](const char* table, const std::vector<ConcordanceRow>& list) {
        for (const auto& row : list) {
            os << table << '\t' << row.patient_id << '\t' << row.gold;
            for (const auto& answers : row.physician_answers) {
                std::string cell;
                for (const auto& a : answers) cell += (cell.empty() ? "" : "|") + a;
                os << '\t' << (cell.empty() ? "-" : cell);
            }
            std::string engine;
            for (const auto& t : row.engine) engine += (engine.empty() ? "" : "|") + agreement_label(t, r.panel_size);
            os << '\t' << (engine.empty() ? "-" : engine) << '\t' << flag(row.m1) << '\t' << flag(row.m3) << '\t'
               << flag(row.physician_match) << '\t' << flag(row.strong_consensus) << '\n';
        }
    };
    rows("diagnosis", r.diagnosis_failures);
    rows("specialty", r.specialty_failures);
    return os.str();
}

std::string render_report_json(const EvalReport& r) {
    require_results(r);
    using nlohmann::ordered_json;
    auto counts = [](const MetricCounts& c) {
        return ordered_json{{"n", c.n},
                            {"m1", c.m1},
                            {"m3", c.m3},
                            {"specialty_m1", c.specialty_m1},
                            {"specialty_m3", c.specialty_m3},
                            {"m1_pct", fixed2(percent(c.m1, c.n))},
                            {"m3_pct", fixed2(percent(c.m3, c.n))},
                            {"specialty_m1_pct", fixed2(percent(c.specialty_m1, c.n))},
                            {"specialty_m3_pct", fixed2(percent(c.specialty_m3, c.n))}};
    };
    auto rows = [&](const std::vector<ConcordanceRow>& list) {
        ordered_json arr = ordered_json::array();
        for (const auto& row : list) {
            ordered_json engine = ordered_json::array();
            for (const auto& t : row.engine) {
                engine.push_back({{"term", t.term}, {"physicians", t.physicians},
                                  {"label", agreement_label(t, r.panel_size)}});
            }
            arr.push_back({{"patient_id", row.patient_id},
                           {"gold", row.gold},
                           {"physician_answers", row.physician_answers},
                           {"engine", std::move(engine)},
                           {"m1", flag(row.m1)},
                           {"m3", flag(row.m3)},
                           {"physician_match", flag(row.physician_match)},
                           {"strong_consensus", flag(row.strong_consensus)}});
        }
        return arr;
    };
    ordered_json physicians = ordered_json::array();
    for (const auto& p : r.physicians) physicians.push_back({{"physician_id", p.physician_id}, {"counts", counts(p.counts)}});
    ordered_json cases = ordered_json::array();
    for (const auto& c : r.cases) {
        cases.push_back({{"patient_id", c.patient_id},
                         {"skipped", c.skipped},
                         {"m1", c.m1},
                         {"m3", c.m3},
                         {"specialty_m1", c.specialty_m1},
                         {"specialty_m3", c.specialty_m3}});
    }
    const auto means = physician_means(r);
    ordered_json doc = {
        {"engine", counts(r.engine)},
        {"skipped", r.skipped},
        {"demographics", {{"male", r.demographics.male}, {"female", r.demographics.female}, {"other", r.demographics.other}}},
        {"panel_size", r.panel_size},
        {"physicians", std::move(physicians)},
        {"physicians_mean",
         r.physicians.empty() ? ordered_json(nullptr)
                              : ordered_json{{"m1_pct", fixed2(means.m1)},
                                             {"m3_pct", fixed2(means.m3)},
                                             {"specialty_m1_pct", fixed2(means.specialty_m1)}}},
        {"diagnosis_failures", rows(r.diagnosis_failures)},
        {"specialty_failures", rows(r.specialty_failures)},
        {"cases", std::move(cases)},
    };
    return doc.dump(2) + "\n";
}

void emit_report(const EvalReport& report, const std::filesystem::path& dir) {
    require_results(report);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw EvalError("cannot create " + dir.string() + ": " + ec.message());
    const std::pair<const char*, std::string> files[] = {
        {"report.json", render_report_json(report)},
        {"metrics.tsv", render_metrics_tsv(report)},
        {"failures.tsv", render_failures_tsv(report)},
        {"summary.txt", render_summary(report)},
    };
    for (const auto& [name, content] : files) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        out << content;
        if (!out.flush()) throw EvalError("cannot write " + (dir / name).string());
    }
}

}  // namespace triage::eval
