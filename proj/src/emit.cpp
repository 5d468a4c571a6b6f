#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pqlab/harness.hpp"

namespace pqlab {

namespace {

using nlohmann::json;

std::string fixed_decimal(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.20Le", v);
  return buf;
}

json to_json(const GameReport& r) {
  json j = json::object();
  j["lemma_tag"] = r.lemma_tag;
  j["inputs"] = json::object();
  for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
  j["quantities"] = json::object();
  for (const auto& [k, v] : r.quantities) j["quantities"][k] = to_string(v);
  j["intervals"] = json::object();
  for (const auto& [k, v] : r.intervals) j["intervals"][k] = json::array({fixed_decimal(v.lo), fixed_decimal(v.hi)});
  j["checks"] = json::array();
  for (const auto& c : r.checks)
    j["checks"].push_back(
        {{"description", c.description}, {"left", c.left}, {"relation", c.relation}, {"right", c.right}, {"pass", c.pass}});
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  j["pass"] = r.all_pass();
  return j;
}

long double parse_decimal(const std::string& s) {
  char* end = nullptr;
  long double v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end) throw std::invalid_argument("not a decimal: " + s);
  return v;
}

GameReport from_json(const json& j) {
  GameReport r;
  r.lemma_tag = j.at("lemma_tag").get<std::string>();
  for (const auto& [k, v] : j.at("inputs").items()) r.inputs[k] = v.get<std::string>();
  for (const auto& [k, v] : j.at("quantities").items()) {
    Rational q(v.get<std::string>());
    q.canonicalize();
    r.quantities[k] = q;
  }
  for (const auto& [k, v] : j.at("intervals").items())
    r.intervals[k] = Interval{parse_decimal(v.at(0).get<std::string>()), parse_decimal(v.at(1).get<std::string>())};
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("description").get<std::string>(), c.at("left").get<std::string>(),
                        c.at("relation").get<std::string>(), c.at("right").get<std::string>(),
                        c.at("pass").get<bool>()});
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  return r;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_json(const GameReport& report) { return to_json(report).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<GameReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

std::vector<GameReport> reports_from_json(const std::string& text) {
  json arr = json::parse(text);
  std::vector<GameReport> out;
  if (arr.is_object()) {
    out.push_back(from_json(arr));
    return out;
  }
  for (const auto& j : arr) out.push_back(from_json(j));
  return out;
}

std::string reports_to_csv(const std::vector<GameReport>& reports) {
  std::ostringstream out;
  out << "report,lemma_tag,description,left,relation,right,pass,error\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::string err = r.error ? *r.error : "";
    if (r.checks.empty()) {
      out << i << ',' << csv_field(r.lemma_tag) << ",,,,,false," << csv_field(err) << '\n';
      continue;
    }
    for (const auto& c : r.checks)
      out << i << ',' << csv_field(r.lemma_tag) << ',' << csv_field(c.description) << ',' << csv_field(c.left) << ','
          << csv_field(c.relation) << ',' << csv_field(c.right) << ',' << (c.pass ? "true" : "false") << ','
          << csv_field(err) << '\n';
  }
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::error_code ec;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw IoError("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

bool all_pass(const std::vector<GameReport>& reports) {
  for (const auto& r : reports)
    if (!r.all_pass()) return false;
  return true;
}

}  // namespace pqlab
