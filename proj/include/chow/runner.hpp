#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chow/eval.hpp"

namespace chow::dsl {

enum class Status { pass, fail, discrepancy_confirmed };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        default: return "DISCREPANCY_CONFIRMED";
    }
}

struct CheckResult {
    std::string id;
    std::string description;
    std::string computed;
    std::string expected;
    Status status = Status::fail;
    Provenance provenance = Provenance::trivial;
    std::string note;        // carried through for discrepancy checks
    std::string diagnostic;  // evaluation error text, if any
    double ms = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;  // ordered by id
    int pass = 0, fail = 0, discrepancy = 0;
};

namespace detail {

inline std::string value_str(const Value& v, const PresentationPtr& ring) {
    if (std::holds_alternative<Rational>(v)) return std::get<Rational>(v).str();
    if (std::holds_alternative<Polynomial>(v)) {
        Polynomial p = std::get<Polynomial>(v);
        if (ring) p = ring->normal_form(p);
        return p.str();
    }
    if (std::holds_alternative<KClass>(v)) {
        const KClass& k = std::get<KClass>(v);
        return "rank " + std::to_string(k.rank()) + ", c = " + k.total_chern().str();
    }
    const auto& vec = std::get<std::vector<Rational>>(v);
    std::string s = "[";
    for (size_t i = 0; i < vec.size(); ++i) {
        if (i) s += ", ";
        s += vec[i].str();
    }
    return s + "]";
}

/// Exact comparison; polynomial values are compared as normal forms in the
/// check's ring when one is declared.
inline bool values_equal(const Value& a, const Value& b, const PresentationPtr& ring) {
    bool a_polyish = std::holds_alternative<Rational>(a) ||
                     std::holds_alternative<Polynomial>(a);
    bool b_polyish = std::holds_alternative<Rational>(b) ||
                     std::holds_alternative<Polynomial>(b);
    if (a_polyish && b_polyish) {
        if (std::holds_alternative<Rational>(a) && std::holds_alternative<Rational>(b))
            return std::get<Rational>(a) == std::get<Rational>(b);
        Polynomial pa = as_poly(a), pb = as_poly(b);
        if (ring) {
            pa = ring->normal_form(pa);
            pb = ring->normal_form(pb);
        }
        return pa == pb;
    }
    if (std::holds_alternative<KClass>(a) && std::holds_alternative<KClass>(b))
        return std::get<KClass>(a) == std::get<KClass>(b);
    if (std::holds_alternative<std::vector<Rational>>(a) &&
        std::holds_alternative<std::vector<Rational>>(b))
        return std::get<std::vector<Rational>>(a) == std::get<std::vector<Rational>>(b);
    return false;
}

inline CheckResult run_one(const Env& env, const CheckDecl& check) {
    CheckResult r;
    r.id = check.id;
    r.description = check.description;
    r.provenance = check.provenance;
    r.note = check.note;
    auto t0 = std::chrono::steady_clock::now();
    PresentationPtr ring = check.ring.empty() ? nullptr : env.ring(check.ring);
    try {
        Value computed = evaluate(env, check.program, ring);
        r.computed = value_str(computed, ring);
        if (check.mode == CheckMode::exact) {
            Value expected = evaluate(env, check.expect, ring);
            r.expected = value_str(expected, ring);
            r.status = values_equal(computed, expected, ring) ? Status::pass
                                                              : Status::fail;
        } else {
            Value printed = evaluate(env, check.printed, ring);
            r.expected = value_str(printed, ring);
            bool drifted = false;
            if (check.derived) {
                Value derived = evaluate(env, check.derived, ring);
                if (!values_equal(computed, derived, ring)) {
                    drifted = true;
                    r.status = Status::fail;
                    r.diagnostic = "engine value drifted from the frozen derived value " +
                                   value_str(derived, ring);
                }
            }
            if (!drifted) {
                if (values_equal(computed, printed, ring)) {
                    r.status = Status::fail;
                    r.diagnostic = "documented discrepancy did not materialize: computed "
                                   "value equals the published one";
                } else {
                    r.status = Status::discrepancy_confirmed;
                }
            }
        }
    } catch (const std::exception& ex) {
        r.status = Status::fail;
        r.diagnostic = ex.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return r;
}

}  // namespace detail

/// Run the selected checks (all, when filter is empty-optional).  Checks are
/// independent pure computations; with jobs > 1 they run concurrently and the
/// report is still ordered by check id.  An evaluation error marks that check
/// FAIL and never aborts the run.
inline Report run_checks(const Env& env,
                         const std::optional<std::set<std::string>>& filter = {},
                         int jobs = 1, bool timing = true) {
    std::vector<const CheckDecl*> selected;
    for (const CheckDecl& c : env.checks)
        if (!filter || filter->count(c.id)) selected.push_back(&c);

    std::vector<CheckResult> results(selected.size());
    if (jobs <= 1) {
        for (size_t i = 0; i < selected.size(); ++i)
            results[i] = detail::run_one(env, *selected[i]);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= selected.size()) break;
                results[i] = detail::run_one(env, *selected[i]);
            }
        };
        std::vector<std::future<void>> pool;
        for (int j = 0; j < jobs; ++j)
            pool.push_back(std::async(std::launch::async, worker));
        for (auto& f : pool) f.get();
    }

    Report report;
    report.checks = std::move(results);
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    if (!timing)
        for (CheckResult& r : report.checks) r.ms = 0.0;
    for (const CheckResult& r : report.checks) {
        if (r.status == Status::pass) ++report.pass;
        else if (r.status == Status::fail) ++report.fail;
        else ++report.discrepancy;
    }
    return report;
}

inline std::string report_text(const Report& report) {
    std::ostringstream os;
    for (const CheckResult& r : report.checks) {
        os << "[" << to_string(r.status) << "] " << r.id;
        os << "  computed=" << r.computed;
        if (!r.expected.empty()) os << "  expected=" << r.expected;
        if (r.ms > 0.0) os << "  (" << r.ms << " ms)";
        if (!r.description.empty()) os << "  " << r.description;
        if (!r.diagnostic.empty()) os << "\n    ! " << r.diagnostic;
        if (!r.note.empty() && r.status == Status::discrepancy_confirmed)
            os << "\n    note: " << r.note;
        os << "\n";
    }
    os << "summary: pass=" << report.pass << " fail=" << report.fail
       << " discrepancy=" << report.discrepancy << "\n";
    return os.str();
}

inline std::string report_json(const Report& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& r : report.checks) {
        nlohmann::json c{
            {"id", r.id},
            {"description", r.description},
            {"computed", r.computed},
            {"expected", r.expected},
            {"status", to_string(r.status)},
            {"provenance", to_string(r.provenance)},
            {"ms", r.ms},
        };
        if (!r.note.empty()) c["note"] = r.note;
        if (!r.diagnostic.empty()) c["diagnostic"] = r.diagnostic;
        checks.push_back(std::move(c));
    }
    nlohmann::json j{
        {"version", "1"},
        {"checks", std::move(checks)},
        {"summary",
         {{"pass", report.pass}, {"fail", report.fail}, {"discrepancy", report.discrepancy}}},
    };
    return j.dump(2) + "\n";
}

}  // namespace chow::dsl
