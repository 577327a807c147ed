#pragma once

#include <atomic>
#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "fusys/catalog.hpp"
#include "fusys/cohomology.hpp"
#include "fusys/control.hpp"
#include "fusys/fusion.hpp"

namespace fusys {

inline constexpr const char* kVersion = "fusys 0.1.0";

inline const std::set<std::string>& known_checks() {
    static const std::set<std::string> k{"saturation", "control", "mislin",
                                         "dims",       "strata",  "remark14"};
    return k;
}

// One requested verification run: a group, a prime, optionally an explicit
// p-subgroup P (default Sylow) and an intermediate group P <= H <= G that
// realizes the subsystem F_P(H) inside F_P(G).
struct Scenario {
    std::string id;
    std::string group;
    unsigned p = 2;
    std::optional<std::vector<std::vector<unsigned>>> subgroup_gens;
    std::optional<std::vector<std::vector<unsigned>>> ambient_sub_gens;
    unsigned max_degree = 4;
    std::vector<std::string> checks;
    bool allow_unsaturated = false;
};

inline Scenario scenario_from_json(const Json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": scenario must be an object");
    Scenario s;
    if (!j.contains("id") || !j["id"].is_string())
        throw InputError(where + ": missing string field 'id'");
    s.id = j["id"].get<std::string>();
    if (!j.contains("group") || !j["group"].is_string())
        throw InputError(where + ": missing string field 'group'");
    s.group = j["group"].get<std::string>();
    if (!j.contains("p") || !j["p"].is_number_unsigned())
        throw InputError(where + ": missing integer field 'p'");
    s.p = j["p"].get<unsigned>();
    auto read_gens = [&](const char* field) -> std::optional<std::vector<std::vector<unsigned>>> {
        if (!j.contains(field)) return std::nullopt;
        if (!j[field].is_array())
            throw InputError(where + ": '" + field + "' must be an array of image arrays");
        std::vector<std::vector<unsigned>> gens;
        for (const auto& g : j[field]) {
            if (!g.is_array()) throw InputError(where + ": '" + field + "' entries must be arrays");
            std::vector<unsigned> images;
            for (const auto& v : g) {
                if (!v.is_number_unsigned())
                    throw InputError(where + ": '" + field + "' image entries must be integers");
                images.push_back(v.get<unsigned>());
            }
            gens.push_back(std::move(images));
        }
        return gens;
    };
    s.subgroup_gens = read_gens("subgroup_gens");
    s.ambient_sub_gens = read_gens("ambient_sub_gens");
    if (j.contains("max_degree")) {
        if (!j["max_degree"].is_number_unsigned())
            throw InputError(where + ": 'max_degree' must be a non-negative integer");
        s.max_degree = j["max_degree"].get<unsigned>();
    }
    if (!j.contains("checks") || !j["checks"].is_array() || j["checks"].empty())
        throw InputError(where + ": missing non-empty 'checks' array");
    for (const auto& c : j["checks"]) {
        if (!c.is_string() || !known_checks().count(c.get<std::string>()))
            throw InputError(where + ": unknown check '" + c.dump() + "'");
        s.checks.push_back(c.get<std::string>());
    }
    if (j.contains("allow_unsaturated")) s.allow_unsaturated = j["allow_unsaturated"].get<bool>();
    return s;
}

inline Json scenario_to_json(const Scenario& s) {
    Json j;
    j["id"] = s.id;
    j["group"] = s.group;
    j["p"] = s.p;
    if (s.subgroup_gens) j["subgroup_gens"] = *s.subgroup_gens;
    if (s.ambient_sub_gens) j["ambient_sub_gens"] = *s.ambient_sub_gens;
    j["max_degree"] = s.max_degree;
    j["checks"] = s.checks;
    if (s.allow_unsaturated) j["allow_unsaturated"] = true;
    return j;
}

inline std::vector<Scenario> scenarios_from_json(const Json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("format"))
        throw InputError(origin + ": missing 'format' header");
    if (j["format"] != kCatalogFormatVersion)
        throw InputError(origin + ": unsupported format version");
    if (!j.contains("scenarios") || !j["scenarios"].is_array())
        throw InputError(origin + ": missing 'scenarios' array");
    std::vector<Scenario> out;
    std::set<std::string> ids;
    std::size_t i = 0;
    for (const auto& sj : j["scenarios"]) {
        Scenario s = scenario_from_json(sj, origin + ": scenarios[" + std::to_string(i++) + "]");
        if (!ids.insert(s.id).second)
            throw InputError(origin + ": duplicate scenario id '" + s.id + "'");
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<Scenario> load_scenarios(const std::string& path) {
    return scenarios_from_json(parse_json_file(path), path);
}

// Concatenation of several scenario files; ids must stay unique overall.
inline std::vector<Scenario> load_scenarios(const std::vector<std::string>& paths) {
    std::vector<Scenario> out;
    std::set<std::string> ids;
    for (const std::string& path : paths) {
        for (Scenario& s : load_scenarios(path)) {
            if (!ids.insert(s.id).second)
                throw InputError(path + ": scenario id '" + s.id +
                                 "' already used by an earlier file");
            out.push_back(std::move(s));
        }
    }
    return out;
}

// --- Execution ---------------------------------------------------------------

struct RunOptions {
    std::size_t element_cap = kDefaultElementCap;
    std::size_t subgroup_order_cap = kDefaultSubgroupOrderCap;
    CohomConfig cohom;
    unsigned jobs = 1;
    bool timings = false; // off by default so reports are byte-reproducible
};

struct CheckResult {
    std::string name;
    std::string status = "ok"; // ok | cap_exceeded | error
    bool inconsistent = false; // an empirical law was violated
    Json data = Json::object();
    long long millis = 0;
};

struct ScenarioResult {
    std::string id;
    std::string status = "ok"; // ok | input_error
    std::string error;
    Json header = Json::object();
    std::vector<CheckResult> checks;

    bool any_inconsistency() const {
        for (const auto& c : checks)
            if (c.inconsistent) return true;
        return false;
    }
};

namespace detail {

inline Json subgroup_json(const Subgroup& s) {
    Json j;
    j["order"] = s.order();
    Json elems = Json::array();
    for (const Perm& e : s.elements()) elems.push_back(e.str());
    j["elements"] = elems;
    return j;
}

inline std::string subgroup_brief(const Subgroup& s) {
    std::string out = "order " + std::to_string(s.order()) + ": {";
    bool first = true;
    for (const Perm& e : s.elements()) {
        if (e.is_identity()) continue;
        if (!first) out += ", ";
        out += e.str();
        first = false;
        if (out.size() > 120) { out += ", ..."; break; }
    }
    return out + "}";
}

inline Json hom_json(const GroupHom& h) {
    Json j;
    j["domain_order"] = h.domain().order();
    j["codomain_order"] = h.codomain().order();
    Json maps = Json::array();
    const auto& d = h.domain().elements();
    for (std::size_t i = 0; i < d.size(); ++i)
        maps.push_back(d[i].str() + " -> " + h.images()[i].str());
    j["table"] = maps;
    return j;
}

} // namespace detail

class ScenarioRunner {
public:
    ScenarioRunner(const Scenario& sc, const Catalog& cat, const RunOptions& opt)
        : sc_(sc), opt_(opt) {
        group_ = cat.group(sc.group, opt.element_cap);
        if (!is_prime(sc.p))
            throw InputError("scenario '" + sc.id + "': p = " + std::to_string(sc.p) +
                             " is not prime");
        if (sc.subgroup_gens) {
            p_sub_ = Subgroup::generated(group_, parse_gens(*sc.subgroup_gens, "subgroup_gens"),
                                         opt.element_cap);
            if (!p_sub_->is_p_group(sc.p))
                throw InputError("scenario '" + sc.id + "': explicit P is not a p-group");
        } else {
            p_sub_ = sylow(group_, sc.p);
        }
        if (sc.ambient_sub_gens) {
            h_sub_ = Subgroup::generated(group_, parse_gens(*sc.ambient_sub_gens, "ambient_sub_gens"),
                                         opt.element_cap);
            if (!h_sub_->contains_subgroup(*p_sub_))
                throw InputError("scenario '" + sc.id + "': H does not contain P");
        } else {
            h_sub_ = Subgroup::full(group_);
        }
        fsys_.emplace(sc.p, Subgroup::full(group_), *p_sub_, opt.subgroup_order_cap);
        gsys_.emplace(sc.p, *h_sub_, *p_sub_, opt.subgroup_order_cap);
    }

    ScenarioResult run() {
        ScenarioResult res;
        res.id = sc_.id;
        res.header["group"] = sc_.group;
        res.header["p"] = sc_.p;
        res.header["group_order"] = group_->order();
        res.header["subgroup_order"] = p_sub_->order();
        res.header["ambient_sub_order"] = h_sub_->order();
        res.header["p_is_sylow_in_ambient_sub"] =
            p_part(h_sub_->order(), sc_.p) == p_sub_->order();
        for (const std::string& name : sc_.checks) {
            CheckResult cr;
            cr.name = name;
            auto t0 = std::chrono::steady_clock::now();
            try {
                if (name == "saturation") run_saturation(cr);
                else if (name == "control") run_control(cr);
                else if (name == "mislin") run_mislin(cr);
                else if (name == "dims") run_dims(cr);
                else if (name == "strata") run_strata(cr);
                else if (name == "remark14") run_remark14(cr);
            } catch (const CapError& e) {
                cr.status = "cap_exceeded";
                cr.data["message"] = e.what();
            } catch (const Error& e) {
                cr.status = "error";
                cr.data["message"] = e.what();
            }
            auto t1 = std::chrono::steady_clock::now();
            if (opt_.timings)
                cr.millis =
                    std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
            res.checks.push_back(std::move(cr));
        }
        return res;
    }

private:
    std::vector<Perm> parse_gens(const std::vector<std::vector<unsigned>>& arrays,
                                 const char* field) const {
        std::vector<Perm> gens;
        for (const auto& images : arrays) {
            if (images.size() != group_->degree())
                throw InputError("scenario '" + sc_.id + "': " + field +
                                 " degree does not match group degree");
            gens.emplace_back(images);
        }
        return gens;
    }

    bool has_sub() const { return h_sub_->order() != group_->order(); }

    // subsystem under study is F_P(H); the ambient system is F_P(G)
    void run_saturation(CheckResult& cr) {
        SaturationReport rep = is_saturated(*gsys_);
        cr.data["saturated"] = rep.saturated;
        Json classes = Json::array();
        for (const auto& cls : rep.classes) {
            Json c;
            c["representative"] = detail::subgroup_brief(cls.representative);
            c["order"] = cls.representative.order();
            c["has_witness"] = cls.witness.has_value();
            c["fully_automized_member"] =
                cls.fully_automized_member
                    ? Json(detail::subgroup_brief(*cls.fully_automized_member))
                    : Json(nullptr);
            c["receptive_member"] = cls.receptive_member
                                        ? Json(detail::subgroup_brief(*cls.receptive_member))
                                        : Json(nullptr);
            c["aut_sub_order"] = aut_s(*gsys_, cls.representative).size();
            c["aut_fusion_order"] = gsys_->homs(cls.representative, cls.representative).size();
            classes.push_back(std::move(c));
        }
        cr.data["classes"] = classes;
        // realized with P Sylow in H => saturated; a failure there breaks the law
        bool p_sylow = p_part(h_sub_->order(), sc_.p) == p_sub_->order();
        if (p_sylow && !rep.saturated) cr.inconsistent = true;
        cr.data["law_applicable"] = p_sylow;
    }

    void run_control(CheckResult& cr) {
        ControlVerdict v = controls_elementary_fusion(*gsys_, *fsys_);
        cr.data["controls_elem"] = v.controls;
        if (v.witness) {
            Json w;
            w["e1"] = detail::subgroup_json(v.witness->e1);
            w["e2"] = detail::subgroup_json(v.witness->e2);
            w["missing_morphism"] = detail::hom_json(v.witness->missing);
            cr.data["witness"] = w;
        } else {
            cr.data["witness"] = nullptr;
        }
        if (v.controls) {
            TransportVerdict t = transport_classes(*gsys_, *fsys_);
            cr.data["transport_classes"] = t.holds;
            if (!t.holds) cr.inconsistent = true; // proof-step property must hold
        }
    }

    void run_mislin(CheckResult& cr) {
        MislinVerdict v = mislin_verdict(*gsys_, *fsys_, !sc_.allow_unsaturated);
        cr.data["p"] = v.p;
        cr.data["controls_elem"] = v.controls_elem;
        cr.data["systems_equal"] = v.systems_equal;
        cr.data["consistent_with_theorem"] = v.consistent_with_theorem;
        cr.data["odd_p_law_asserted"] = v.p % 2 == 1;
        if (v.witness) {
            Json w;
            w["e1"] = detail::subgroup_json(v.witness->e1);
            w["e2"] = detail::subgroup_json(v.witness->e2);
            w["missing_morphism"] = detail::hom_json(v.witness->missing);
            cr.data["witness"] = w;
        } else {
            cr.data["witness"] = nullptr;
        }
        if (v.systems_equal && !v.controls_elem) cr.inconsistent = true;
        if (v.p % 2 == 1 && !v.consistent_with_theorem) cr.inconsistent = true;
    }

    void run_dims(CheckResult& cr) {
        CohomologyContext ctx(sc_.p, opt_.cohom);
        const unsigned nmax = sc_.max_degree;
        std::vector<std::size_t> full_dims, sub_dims;
        std::vector<StableSubspace> full_spaces, sub_spaces;
        for (unsigned n = 0; n <= nmax; ++n) {
            full_spaces.push_back(ctx.stable_subspace(*fsys_, n));
            full_dims.push_back(full_spaces.back().dim());
        }
        cr.data["full"] = full_dims;
        if (has_sub()) {
            for (unsigned n = 0; n <= nmax; ++n) {
                sub_spaces.push_back(ctx.stable_subspace(*gsys_, n));
                sub_dims.push_back(sub_spaces.back().dim());
            }
            cr.data["sub"] = sub_dims;
            std::optional<unsigned> first_div;
            for (unsigned n = 0; n <= nmax; ++n)
                if (full_dims[n] != sub_dims[n]) { first_div = n; break; }
            cr.data["first_divergence"] = first_div ? Json(*first_div) : Json(nullptr);
            // H^*(F) must sit inside H^*(G) as subspaces of H^*(S)
            bool monotone = true;
            for (unsigned n = 0; n <= nmax; ++n)
                if (!sub_spaces[n].contains_subspace(full_spaces[n])) { monotone = false; break; }
            cr.data["monotone_inclusion"] = monotone;
            if (!monotone) cr.inconsistent = true;
            bool equal = systems_equal(*gsys_, *fsys_);
            cr.data["systems_equal"] = equal;
            if (equal && first_div)
                cr.inconsistent = true; // equal systems with different dims: impossible
            if (!equal && sc_.p % 2 == 1 && nmax >= 4 && !first_div)
                cr.inconsistent = true; // odd-p detection law expected by degree 4
        }
    }

    void run_strata(CheckResult& cr) {
        ElementaryClassTable table = strata_skeleton(*gsys_);
        Json rows = Json::array();
        for (const auto& row : table) {
            Json r;
            r["rank"] = row.rank;
            r["order"] = row.representative.order();
            r["representative"] = detail::subgroup_brief(row.representative);
            r["class_size"] = row.members.size();
            r["automizer_order"] = row.automizer_order;
            rows.push_back(std::move(r));
        }
        cr.data["rows"] = rows;
        std::size_t covered = 0;
        for (const auto& row : table) covered += row.members.size();
        cr.data["elementary_abelian_count"] = covered;
        if (covered != elementary_abelians(*gsys_).size())
            cr.inconsistent = true; // partition property broken
    }

    void run_remark14(CheckResult& cr) {
        bool all_equal = true;
        Json rows = Json::array();
        for (const Subgroup& e : elementary_abelians(*gsys_)) {
            GroupPtr via_norm = aut_via_normalizer(*h_sub_, e);
            GroupPtr via_fusion = aut_f(*gsys_, e);
            bool eq = via_norm->elements() == via_fusion->elements();
            all_equal &= eq;
            Json r;
            r["subgroup"] = detail::subgroup_brief(e);
            r["rank"] = e.rank(sc_.p);
            r["aut_order"] = via_fusion->order();
            r["normalizer_route_equal"] = eq;
            rows.push_back(std::move(r));
        }
        cr.data["rows"] = rows;
        cr.data["all_equal"] = all_equal;
        if (!all_equal) cr.inconsistent = true; // automizer identity is a law
    }

    const Scenario& sc_;
    const RunOptions& opt_;
    GroupPtr group_;
    std::optional<Subgroup> p_sub_, h_sub_;
    std::optional<FusionSystem> fsys_, gsys_;
};

inline ScenarioResult run_scenario(const Scenario& sc, const Catalog& cat,
                                   const RunOptions& opt = {}) {
    try {
        ScenarioRunner runner(sc, cat, opt);
        return runner.run();
    } catch (const Error& e) {
        ScenarioResult res;
        res.id = sc.id;
        res.status = "input_error";
        res.error = e.what();
        return res;
    }
}

// --- Reports -----------------------------------------------------------------

struct BatchResult {
    Json report;
    std::string csv;
    int exit_code = 0; // 0 consistent, 1 theorem-inconsistency, 2 input error
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    return out + "\"";
}

inline std::string check_verdict(const CheckResult& c) {
    if (c.status != "ok") return c.status;
    if (c.inconsistent) return "inconsistent";
    if (c.name == "saturation")
        return c.data.value("saturated", false) ? "saturated" : "not_saturated";
    if (c.name == "control")
        return c.data.value("controls_elem", false) ? "controls" : "no_control";
    if (c.name == "mislin") {
        bool eq = c.data.value("systems_equal", false);
        bool ctl = c.data.value("controls_elem", false);
        return std::string(ctl ? "controls" : "no_control") + "+" +
               (eq ? "equal" : "unequal");
    }
    if (c.name == "dims") {
        if (!c.data.contains("sub")) return "computed";
        return c.data["first_divergence"].is_null() ? "same_dims" : "dims_differ";
    }
    if (c.name == "strata") return "computed";
    if (c.name == "remark14")
        return c.data.value("all_equal", false) ? "identified" : "mismatch";
    return "done";
}

inline std::string check_detail(const CheckResult& c) {
    if (c.status != "ok") return c.data.value("message", "");
    if (c.name == "mislin")
        return std::string("consistent_with_theorem=") +
               (c.data.value("consistent_with_theorem", false) ? "true" : "false");
    if (c.name == "strata")
        return "classes=" + std::to_string(c.data["rows"].size());
    if (c.name == "saturation") {
        for (const auto& cls : c.data["classes"]) {
            if (!cls.value("has_witness", true))
                return "class without witness: " + cls["representative"].get<std::string>() +
                       " (Aut_S order " + std::to_string(cls["aut_sub_order"].get<std::size_t>()) +
                       ", Aut_F order " +
                       std::to_string(cls["aut_fusion_order"].get<std::size_t>()) + ")";
        }
        return "all classes have witnesses";
    }
    if (c.name == "control" && c.data.contains("witness") && !c.data["witness"].is_null())
        return "missing morphism between elementary abelians";
    return "";
}

inline std::string check_dims(const CheckResult& c) {
    if (c.name != "dims" || c.status != "ok") return "";
    auto join = [](const Json& arr) {
        std::string s;
        for (const auto& v : arr) {
            if (!s.empty()) s += ";";
            s += std::to_string(v.get<std::size_t>());
        }
        return s;
    };
    std::string s = join(c.data["full"]);
    if (c.data.contains("sub")) s += "|" + join(c.data["sub"]);
    return s;
}

} // namespace detail

inline Json scenario_result_to_json(const ScenarioResult& r) {
    Json j;
    j["id"] = r.id;
    j["status"] = r.status;
    if (r.status != "ok") {
        j["error"] = r.error;
        return j;
    }
    for (auto it = r.header.begin(); it != r.header.end(); ++it) j[it.key()] = it.value();
    Json checks = Json::object();
    for (const CheckResult& c : r.checks) {
        Json cj;
        cj["status"] = c.status;
        cj["verdict"] = detail::check_verdict(c);
        cj["inconsistent"] = c.inconsistent;
        cj["millis"] = c.millis;
        cj["data"] = c.data;
        checks[c.name] = std::move(cj);
    }
    j["checks"] = checks;
    return j;
}

inline BatchResult assemble_report(const std::vector<Scenario>& scenarios,
                                   const std::vector<ScenarioResult>& results,
                                   const Catalog& cat) {
    BatchResult out;
    std::size_t inconsistencies = 0, input_errors = 0;
    Json scen_reports = Json::array();
    std::string csv = "scenario_id,check,verdict,detail,dims,millis\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const ScenarioResult& r = results[i];
        scen_reports.push_back(scenario_result_to_json(r));
        if (r.status != "ok") {
            ++input_errors;
            csv += detail::csv_quote(r.id) + ",-,input_error," + detail::csv_quote(r.error) +
                   ",,0\n";
            continue;
        }
        for (const CheckResult& c : r.checks) {
            if (c.inconsistent) ++inconsistencies;
            csv += detail::csv_quote(r.id) + "," + c.name + "," +
                   detail::csv_quote(detail::check_verdict(c)) + "," +
                   detail::csv_quote(detail::check_detail(c)) + "," +
                   detail::check_dims(c) + "," + std::to_string(c.millis) + "\n";
        }
    }
    Json rep;
    rep["version"] = kVersion;
    rep["format"] = kCatalogFormatVersion;
    rep["catalog_hash"] = catalog_hash(cat);
    Json summary;
    summary["scenarios"] = scenarios.size();
    summary["inconsistencies"] = inconsistencies;
    summary["input_errors"] = input_errors;
    rep["summary"] = summary;
    rep["scenarios"] = scen_reports;
    out.report = std::move(rep);
    out.csv = std::move(csv);
    out.exit_code = input_errors ? 2 : (inconsistencies ? 1 : 0);
    return out;
}

// Run all scenarios (optionally in parallel at scenario granularity) and
// aggregate the deterministic report. Result order follows input order
// regardless of completion order.
inline BatchResult run_batch(const std::vector<Scenario>& scenarios, const Catalog& cat,
                             const RunOptions& opt = {}) {
    std::vector<ScenarioResult> results(scenarios.size());
    unsigned jobs = std::max(1u, opt.jobs);
    if (jobs <= 1 || scenarios.size() <= 1) {
        for (std::size_t i = 0; i < scenarios.size(); ++i)
            results[i] = run_scenario(scenarios[i], cat, opt);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= scenarios.size()) return;
                results[i] = run_scenario(scenarios[i], cat, opt);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(jobs, scenarios.size()); ++t)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return assemble_report(scenarios, results, cat);
}

} // namespace fusys
