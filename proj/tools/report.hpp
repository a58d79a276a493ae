#pragma once

// Run reports for the command-line front end: each requested method is run
// once per query, failures are kept as error records, and the result is
// rendered as JSON, CSV or a text table.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "lnmgf/lnmgf.hpp"

namespace lnmgf::cli {

struct MethodOutcome {
  Method method = Method::zero_entropy;
  std::optional<MgfEstimate> estimate;
  std::string error_kind;
  std::string error_message;
  double millis = 0.0;
  std::optional<double> paper_value;

  bool ok() const { return estimate.has_value(); }
};

struct Delta {
  Method a;
  Method b;
  double abs = 0.0;
  double rel = 0.0;
};

struct RunReport {
  MgfQuery query;
  std::optional<int> table_id;
  std::vector<MethodOutcome> results;

  bool ok() const {
    for (const auto& r : results) {
      if (!r.ok()) return false;
    }
    return true;
  }

  /// |a - b| and |a - b| / max(|a|, |b|) for every pair of successful methods.
  std::vector<Delta> deltas() const {
    std::vector<Delta> out;
    for (std::size_t i = 0; i < results.size(); ++i) {
      for (std::size_t j = i + 1; j < results.size(); ++j) {
        if (!results[i].ok() || !results[j].ok()) continue;
        const double a = results[i].estimate->value;
        const double b = results[j].estimate->value;
        const double d = std::abs(a - b);
        const double scale = std::max(std::abs(a), std::abs(b));
        out.push_back({results[i].method, results[j].method, d, scale > 0.0 ? d / scale : 0.0});
      }
    }
    return out;
  }
};

/// Name of the library error type carried by `e`.
inline std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const NonFiniteIntegrand*>(&e)) return "NonFiniteIntegrand";
  if (dynamic_cast<const DivergenceError*>(&e)) return "DivergenceError";
  if (dynamic_cast<const NegativeRadicand*>(&e)) return "NegativeRadicand";
  if (dynamic_cast<const NegativeVariance*>(&e)) return "NegativeVariance";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const OverflowError*>(&e)) return "OverflowError";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "ConvergenceError";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "InternalError";
}

/// Runs `methods` in the given order. A table pointer attaches the published digits of `column`.
inline RunReport run_report(const MgfQuery& q, std::span<const Method> methods, const MethodSettings& settings,
                            const PaperTable* table = nullptr, std::size_t column = 0) {
  RunReport report;
  report.query = q;
  if (table) report.table_id = table->id;
  for (Method m : methods) {
    MethodOutcome o;
    o.method = m;
    if (table) o.paper_value = table->paper_value(m, column);
    const auto start = std::chrono::steady_clock::now();
    try {
      o.estimate = estimate(m, q, settings);
    } catch (const std::exception& e) {
      o.error_kind = error_kind(e);
      o.error_message = e.what();
    }
    o.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.results.push_back(std::move(o));
  }
  return report;
}

inline std::vector<RunReport> run_table(const PaperTable& table, std::span<const Method> methods,
                                        const MethodSettings& settings) {
  std::vector<RunReport> out;
  for (std::size_t c = 0; c < table.theta.size(); ++c) {
    out.push_back(run_report(MgfQuery(table.mu, table.sigma, table.theta[c]), methods, settings, &table, c));
  }
  return out;
}

inline nlohmann::json to_json(const RunReport& r) {
  using nlohmann::json;
  json j;
  j["query"] = {{"mu", r.query.mu}, {"sigma", r.query.sigma}, {"theta", r.query.theta}};
  if (r.table_id) j["table"] = *r.table_id;
  j["results"] = json::array();
  j["timings"] = json::object();
  for (const auto& o : r.results) {
    json row;
    row["method"] = std::string(to_string(o.method));
    if (o.ok()) {
      row["value"] = o.estimate->value;
      row["diagnostics"] = o.estimate->diagnostics;
    } else {
      row["value"] = nullptr;
      row["error"] = {{"kind", o.error_kind}, {"message", o.error_message}};
    }
    if (o.paper_value) row["paper_value"] = *o.paper_value;
    j["results"].push_back(std::move(row));
    j["timings"][std::string(to_string(o.method))] = o.millis;
  }
  j["deltas"] = json::array();
  for (const auto& d : r.deltas()) {
    j["deltas"].push_back({{"a", std::string(to_string(d.a))},
                           {"b", std::string(to_string(d.b))},
                           {"abs", d.abs},
                           {"rel", d.rel}});
  }
  return j;
}

inline std::string sig9(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string fixed(double x, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline void write_csv(std::ostream& os, std::span<const RunReport> reports) {
  os << "table,mu,sigma,theta,method,value,std_error,paper_value,status\n";
  for (const auto& r : reports) {
    for (const auto& o : r.results) {
      os << (r.table_id ? std::to_string(*r.table_id) : std::string()) << ',' << sig9(r.query.mu) << ','
         << sig9(r.query.sigma) << ',' << sig9(r.query.theta) << ',' << to_string(o.method) << ',';
      if (o.ok()) {
        os << sig9(o.estimate->value) << ',';
        const auto se = o.estimate->diagnostics.find("std_error");
        if (se != o.estimate->diagnostics.end()) os << sig9(se->second);
      } else {
        os << ',';
      }
      os << ',' << (o.paper_value ? sig9(*o.paper_value) : std::string()) << ','
         << (o.ok() ? std::string("ok") : o.error_kind) << '\n';
    }
  }
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

/// One query: a row per method with its value, timing and diagnostics.
inline void write_text(std::ostream& os, const RunReport& r) {
  os << "mu = " << sig9(r.query.mu) << ", sigma = " << sig9(r.query.sigma) << ", theta = " << sig9(r.query.theta)
     << "\n\n";
  for (const auto& o : r.results) {
    os << pad(std::string(to_string(o.method)), 14);
    if (o.ok()) {
      os << pad(fixed(o.estimate->value, 9), 16) << pad(fixed(o.millis, 1) + " ms", 12);
      bool first = true;
      for (const auto& [k, v] : o.estimate->diagnostics) {
        os << (first ? "" : " ") << k << '=' << sig9(v);
        first = false;
      }
    } else {
      os << o.error_kind << ": " << o.error_message;
    }
    os << '\n';
  }
  const auto ds = r.deltas();
  if (!ds.empty()) {
    os << "\nmax pairwise |delta|: ";
    double worst = 0.0;
    for (const auto& d : ds) worst = std::max(worst, d.abs);
    os << sig9(worst) << '\n';
  }
}

/// A whole table: methods as rows, theta as columns, published digits underneath.
inline void write_text_table(std::ostream& os, std::span<const RunReport> reports) {
  if (reports.empty()) return;
  const auto& first = reports.front();
  os << "Table " << (first.table_id ? std::to_string(*first.table_id) : std::string("?"))
     << ": mu = " << sig9(first.query.mu) << ", sigma = " << sig9(first.query.sigma) << "\n\n";
  constexpr std::size_t kLabel = 22, kCol = 13;
  os << pad("theta", kLabel);
  for (const auto& r : reports) os << pad(sig9(r.query.theta), kCol);
  os << '\n';
  for (std::size_t m = 0; m < first.results.size(); ++m) {
    const Method method = first.results[m].method;
    os << pad(std::string(to_string(method)), kLabel);
    for (const auto& r : reports) {
      const auto& o = r.results[m];
      os << pad(o.ok() ? fixed(o.estimate->value, 8) : o.error_kind, kCol);
    }
    os << '\n';
    os << pad("  paper", kLabel);
    for (const auto& r : reports) {
      const auto& o = r.results[m];
      os << pad(o.paper_value ? fixed(*o.paper_value, 6) : std::string("-"), kCol);
    }
    os << '\n';
  }
}

}  // namespace lnmgf::cli
