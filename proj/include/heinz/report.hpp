#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace heinz {

// 17 significant digits round-trip doubles exactly; every number in the
// reports goes through here so reruns with one seed diff byte-for-byte.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

struct FailureRecord {
  int trial = 0;
  std::string relation;
  std::string region;
  std::string norm;
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string error;  // nonempty when the evaluator threw
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  int dim_lo = 0;
  int dim_hi = 0;
  std::vector<std::string> relations;
  std::vector<std::pair<std::string, double>> tolerances;
  long total_checks = 0;
  std::vector<FailureRecord> failures;
  // Measured wall time; serialized as the constant 0 so identical seeds
  // produce identical bytes.  The CLI reports the measured value separately.
  long elapsed_ms = 0;

  std::string to_json() const {
    std::string j;
    j += "{\n";
    j += "  \"suite\": \"" + json_escape(suite) + "\",\n";
    j += "  \"seed\": " + std::to_string(seed) + ",\n";
    j += "  \"trials\": " + std::to_string(trials) + ",\n";
    j += "  \"dims\": [" + std::to_string(dim_lo) + ", " +
         std::to_string(dim_hi) + "],\n";
    j += "  \"relations\": [";
    for (size_t i = 0; i < relations.size(); ++i) {
      if (i) j += ", ";
      j += "\"" + json_escape(relations[i]) + "\"";
    }
    j += "],\n";
    j += "  \"tolerances\": {";
    for (size_t i = 0; i < tolerances.size(); ++i) {
      if (i) j += ", ";
      j += "\"" + json_escape(tolerances[i].first) +
           "\": " + format_double(tolerances[i].second);
    }
    j += "},\n";
    j += "  \"total_checks\": " + std::to_string(total_checks) + ",\n";
    j += "  \"failures\": [";
    for (size_t i = 0; i < failures.size(); ++i) {
      const FailureRecord& f = failures[i];
      j += i ? ",\n    " : "\n    ";
      j += "{\"trial\": " + std::to_string(f.trial);
      j += ", \"relation\": \"" + json_escape(f.relation) + "\"";
      j += ", \"region\": \"" + json_escape(f.region) + "\"";
      j += ", \"norm\": \"" + json_escape(f.norm) + "\"";
      j += ", \"params\": {";
      for (size_t k = 0; k < f.params.size(); ++k) {
        if (k) j += ", ";
        j += "\"" + json_escape(f.params[k].first) +
             "\": " + format_double(f.params[k].second);
      }
      j += "}";
      j += ", \"lhs\": " + format_double(f.lhs);
      j += ", \"rhs\": " + format_double(f.rhs);
      j += ", \"margin\": " + format_double(f.margin);
      j += ", \"error\": \"" + json_escape(f.error) + "\"}";
    }
    j += failures.empty() ? "],\n" : "\n  ],\n";
    j += "  \"elapsed_ms\": 0\n";
    j += "}";
    return j;
  }
};

}  // namespace heinz
