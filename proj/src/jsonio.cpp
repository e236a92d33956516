#include "bnp/jsonio.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace bnp {

namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidData(std::string("malformed JSON: ") + e.what());
  }
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw InvalidData(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex as_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidData(std::string(what) + " must be a [re, im] pair");
  return Complex(as_number(j[0], what), as_number(j[1], what));
}

std::vector<Complex> as_complex_array(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidData(std::string(what) + " must be an array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(as_complex(item, what));
  return out;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok)
      throw InvalidData("unknown key \"" + item.key() + "\" in " + where);
  }
}

}  // namespace

ProblemData parse_problem_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw InvalidData("problem must be a JSON object");
  reject_unknown_keys(j, {"nodes"}, "problem");
  if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty())
    throw InvalidData("problem needs a non-empty \"nodes\" array");
  ProblemData data;
  for (const auto& jn : j["nodes"]) {
    if (!jn.is_object()) throw InvalidData("node must be a JSON object");
    reject_unknown_keys(jn, {"t", "n", "c", "gamma"}, "node");
    if (!jn.contains("t") || !jn.contains("n") || !jn.contains("c"))
      throw InvalidData("node needs \"t\", \"n\" and \"c\"");
    if (!jn["n"].is_number_integer() || jn["n"].get<long long>() < 0)
      throw InvalidData("node order must be a non-negative integer");
    const int n = jn["n"].get<int>();
    std::optional<double> gamma;
    if (jn.contains("gamma")) gamma = as_number(jn["gamma"], "gamma");
    data.nodes.emplace_back(as_complex(jn["t"], "t"), n,
                            as_complex_array(jn["c"], "c"), gamma);
  }
  return data;
}

RationalFunction parse_rational_json(const std::string& text) {
  const json j = parse_text(text);
  if (!j.is_object()) throw InvalidData("rational function must be a JSON object");
  reject_unknown_keys(j, {"num", "den"}, "rational function");
  if (!j.contains("num") || !j.contains("den"))
    throw InvalidData("rational function needs \"num\" and \"den\"");
  return RationalFunction(Polynomial(as_complex_array(j["num"], "num")),
                          Polynomial(as_complex_array(j["den"], "den")));
}

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_complex(Complex z) {
  return "[" + format_number(z.real()) + "," + format_number(z.imag()) + "]";
}

std::string json_polynomial(const Polynomial& p) {
  std::string out = "[";
  for (size_t k = 0; k < p.coeffs().size(); ++k) {
    if (k > 0) out += ",";
    out += json_complex(p.coeffs()[k]);
  }
  return out + "]";
}

std::string json_rational(const RationalFunction& f) {
  return "{\"num\":" + json_polynomial(f.num) + ",\"den\":" + json_polynomial(f.den) +
         "}";
}

std::string json_report(const SolvabilityReport& report) {
  std::string out = "{\"admissible\":";
  out += report.admissible ? "true" : "false";
  out += ",\"psd\":";
  out += report.psd ? "true" : "false";
  out += ",\"rank\":" + std::to_string(report.rank);
  out += ",\"min_eigenvalue\":" + format_number(report.min_eigenvalue);
  out += ",\"stein_residual\":" + format_number(report.stein_residual);
  out += ",\"messages\":[";
  for (size_t i = 0; i < report.messages.size(); ++i) {
    if (i > 0) out += ",";
    out += json_string(report.messages[i]);
  }
  return out + "]}";
}

std::string json_coefficient_matrix(const CoefficientMatrix& cm, double alpha,
                                    double beta) {
  std::string out = "{\"singular\":false";
  out += ",\"alpha\":" + format_number(alpha);
  out += ",\"beta\":" + format_number(beta);
  out += ",\"s0\":" + json_rational(cm.s0);
  out += ",\"s1\":" + json_rational(cm.s1);
  out += ",\"s2\":" + json_rational(cm.s2);
  out += ",\"s\":" + json_rational(cm.s);
  out += ",\"den\":" + json_polynomial(cm.den);
  return out + "}";
}

std::string json_limit(const LimitEstimate& est) {
  std::string out = "{\"value\":";
  if (std::isfinite(est.value))
    out += format_number(est.value);
  else
    out += json_string(std::isnan(est.value) ? "nan" : (est.value > 0 ? "inf" : "-inf"));
  out += ",\"converged\":";
  out += est.converged ? "true" : "false";
  out += ",\"trace\":[";
  for (size_t i = 0; i < est.trace.size(); ++i) {
    if (i > 0) out += ",";
    out += "[" + format_number(est.trace[i].first) + "," +
           format_number(est.trace[i].second) + "]";
  }
  return out + "]}";
}

}  // namespace bnp
