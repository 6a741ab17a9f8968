#ifndef WEYLCALC_REPORT_HPP
#define WEYLCALC_REPORT_HPP

// Structured output of the command-line tool: JSON, CSV and plain text.
// Timing is never part of a rendered report, so a run served from the cache
// renders exactly like a cold run.

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylcalc {

using json = nlohmann::ordered_json;

struct IdentityRecord {
  std::string name;
  json params = json::object();
  bool pass = false;
  std::optional<std::string> witness;  // nonzero normal form on failure

  friend bool operator==(const IdentityRecord&, const IdentityRecord&) = default;
};

struct Report {
  std::string command;
  json params = json::object();
  std::vector<std::size_t> degrees;
  std::vector<std::size_t> dims;
  std::vector<IdentityRecord> identities;
  json details = json::object();

  bool all_pass() const {
    for (const auto& r : identities) {
      if (!r.pass) return false;
    }
    return true;
  }

  friend bool operator==(const Report&, const Report&) = default;
};

inline void to_json(json& j, const IdentityRecord& r) {
  j = json{{"name", r.name}, {"params", r.params}, {"status", r.pass ? "pass" : "fail"}};
  if (r.witness) j["witness"] = *r.witness;
}

inline void from_json(const json& j, IdentityRecord& r) {
  r.name = j.at("name").get<std::string>();
  r.params = j.at("params");
  const auto status = j.at("status").get<std::string>();
  if (status != "pass" && status != "fail") throw std::invalid_argument("bad identity status '" + status + "'");
  r.pass = status == "pass";
  r.witness.reset();
  if (j.contains("witness")) r.witness = j.at("witness").get<std::string>();
}

inline void to_json(json& j, const Report& r) {
  j = json{{"command", r.command},       {"params", r.params},         {"degrees", r.degrees},
           {"dims", r.dims},             {"identities", r.identities}, {"details", r.details}};
}

inline void from_json(const json& j, Report& r) {
  r.command = j.at("command").get<std::string>();
  r.params = j.at("params");
  r.degrees = j.at("degrees").get<std::vector<std::size_t>>();
  r.dims = j.at("dims").get<std::vector<std::size_t>>();
  r.identities = j.at("identities").get<std::vector<IdentityRecord>>();
  r.details = j.value("details", json::object());
}

inline std::string render_json(const Report& r) { return json(r).dump(2) + "\n"; }

inline Report parse_report(const std::string& text) { return json::parse(text).get<Report>(); }

namespace detail {

inline std::string scalar_text(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string params_text(const json& p) {
  std::string out;
  for (auto it = p.begin(); it != p.end(); ++it) {
    if (!out.empty()) out += ' ';
    out += it.key() + "=" + scalar_text(it.value());
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

/// Plain text. Dimension lists print as one space-separated line.
inline std::string render_text(const Report& r) {
  std::ostringstream out;
  if (r.command == "hilbert") {
    for (std::size_t i = 0; i < r.dims.size(); ++i) out << (i ? " " : "") << r.dims[i];
    out << '\n';
    return out.str();
  }
  if (r.command == "cohomology") {
    out << "dim H1 = " << r.details.at("dimension").get<std::size_t>() << '\n';
    for (const auto& b : r.details.at("basis")) out << "  " << b.get<std::string>() << '\n';
    return out.str();
  }
  if (r.command == "conjecture") {
    const auto& d = r.details;
    out << "conjecture " << detail::scalar_text(r.params.at("which")) << " on " << detail::scalar_text(r.params.at("system"))
        << ": " << d.at("left").get<std::string>() << " vs " << d.at("right").get<std::string>() << '\n';
    out << "degree  left  right  agree\n";
    for (const auto& row : d.at("table")) {
      out << row.at("degree").get<std::size_t>() << "  " << row.at("left").get<std::size_t>() << "  "
          << row.at("right").get<std::size_t>() << "  " << (row.at("agree").get<bool>() ? "yes" : "no") << '\n';
    }
    out << "consistent: " << (d.at("consistent").get<bool>() ? "yes" : "no") << '\n';
    return out.str();
  }
  if (r.command == "cache") {
    for (const auto& e : r.details.value("entries", json::array())) {
      out << e.at("file").get<std::string>() << "  type=" << e.at("type").get<std::string>()
          << " rank=" << e.at("rank").get<int>() << " kind=" << e.at("kind").get<std::string>()
          << " degree=" << e.at("degree").get<std::size_t>() << " rows=" << e.at("rows").get<std::size_t>() << '\n';
    }
    for (auto it = r.details.begin(); it != r.details.end(); ++it) {
      if (it.key() != "entries") out << it.key() << ": " << detail::scalar_text(it.value()) << '\n';
    }
    return out.str();
  }
  std::size_t passed = 0;
  for (const auto& id : r.identities) {
    out << (id.pass ? "PASS " : "FAIL ") << id.name;
    std::string p = detail::params_text(id.params);
    if (!p.empty()) out << " [" << p << "]";
    out << '\n';
    if (id.witness) out << "  witness: " << *id.witness << '\n';
    passed += id.pass;
  }
  out << passed << "/" << r.identities.size() << " passed\n";
  return out.str();
}

inline std::string render_csv(const Report& r) {
  std::ostringstream out;
  if (r.command == "hilbert") {
    out << "degree,dim\n";
    for (std::size_t i = 0; i < r.dims.size(); ++i) out << r.degrees[i] << ',' << r.dims[i] << '\n';
  } else if (r.command == "conjecture") {
    out << "degree,left,right,agree\n";
    for (const auto& row : r.details.at("table")) {
      out << row.at("degree").get<std::size_t>() << ',' << row.at("left").get<std::size_t>() << ','
          << row.at("right").get<std::size_t>() << ',' << (row.at("agree").get<bool>() ? "true" : "false") << '\n';
    }
  } else if (r.command == "cohomology") {
    out << "index,form\n";
    std::size_t i = 0;
    for (const auto& b : r.details.at("basis")) out << i++ << ',' << detail::csv_field(b.get<std::string>()) << '\n';
  } else if (r.command == "cache") {
    out << "file,type,rank,kind,degree,rows,bytes\n";
    for (const auto& e : r.details.value("entries", json::array())) {
      out << e.at("file").get<std::string>() << ',' << e.at("type").get<std::string>() << ',' << e.at("rank").get<int>()
          << ',' << e.at("kind").get<std::string>() << ',' << e.at("degree").get<std::size_t>() << ','
          << e.at("rows").get<std::size_t>() << ',' << e.at("bytes").get<std::size_t>() << '\n';
    }
  } else {
    out << "name,params,status,witness\n";
    for (const auto& id : r.identities) {
      out << detail::csv_field(id.name) << ',' << detail::csv_field(detail::params_text(id.params)) << ','
          << (id.pass ? "pass" : "fail") << ',' << detail::csv_field(id.witness.value_or("")) << '\n';
    }
  }
  return out.str();
}

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw std::invalid_argument("unknown format '" + s + "'");
}

inline std::string render(const Report& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return render_json(r);
    case OutputFormat::csv: return render_csv(r);
    case OutputFormat::text: break;
  }
  return render_text(r);
}

}  // namespace weylcalc

#endif  // WEYLCALC_REPORT_HPP
