#include "margdist/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace margdist {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) fail(errc::parse, std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) fail(errc::parse, std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
  std::string s = field;
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(errc::parse, "CSV line " + std::to_string(line_no) + ": not a number: '" + field + "'");
  return value;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

DiscreteMeasure measure_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(errc::parse, "measure JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer())
    fail(errc::parse, "measure JSON needs an integer 'dim'");
  const int dim = j.at("dim").get<int>();
  if (dim < 1) fail(errc::parse, "'dim' must be positive");
  if (!j.contains("atoms") || !j.at("atoms").is_array())
    fail(errc::parse, "measure JSON needs an 'atoms' array");
  std::vector<std::vector<double>> atoms;
  atoms.reserve(j.at("atoms").size());
  for (const auto& a : j.at("atoms")) {
    auto coords = number_array(a, "each atom");
    if (static_cast<int>(coords.size()) != dim)
      fail(errc::parse, "atom length does not match 'dim'");
    atoms.push_back(std::move(coords));
  }
  if (j.contains("weights") && !j.at("weights").is_null()) {
    auto weights = number_array(j.at("weights"), "'weights'");
    return DiscreteMeasure::make(std::move(atoms), std::move(weights));
  }
  return DiscreteMeasure::uniform(std::move(atoms));
}

DiscreteMeasure measure_from_csv(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!trim(line).empty()) lines.push_back(line);
    }
  }
  if (lines.empty()) fail(errc::parse, "CSV is empty; a header row is required");
  const auto header = split_csv_line(lines.front());
  if (header.empty()) fail(errc::parse, "CSV header row is empty");
  const std::string last = lower(header.back());
  const bool has_weight = last == "weight" || last == "w";
  const std::size_t cols = header.size();
  const std::size_t dim = cols - (has_weight ? 1 : 0);
  if (dim < 1) fail(errc::parse, "CSV needs at least one coordinate column");
  std::vector<std::vector<double>> atoms;
  std::vector<double> weights;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != cols)
      fail(errc::parse, "CSV line " + std::to_string(i + 1) + ": expected " +
                            std::to_string(cols) + " fields, got " + std::to_string(fields.size()));
    std::vector<double> coords(dim);
    for (std::size_t k = 0; k < dim; ++k) coords[k] = parse_double(fields[k], i + 1);
    atoms.push_back(std::move(coords));
    if (has_weight) weights.push_back(parse_double(fields[dim], i + 1));
  }
  if (atoms.empty()) fail(errc::parse, "CSV has a header but no data rows");
  if (has_weight) return DiscreteMeasure::make(std::move(atoms), std::move(weights));
  return DiscreteMeasure::uniform(std::move(atoms));
}

DiscreteMeasure measure_from_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos && lower(path.substr(dot)) == ".csv")
    return measure_from_csv(text);
  return measure_from_json(text);
}

std::string measure_to_json(const DiscreteMeasure& p) {
  json atoms = json::array();
  json weights = json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto a = p.atom(i);
    atoms.push_back(json(std::vector<double>(a.begin(), a.end())));
    weights.push_back(p.weight(i));
  }
  const json j = {{"dim", p.dim()}, {"atoms", std::move(atoms)}, {"weights", std::move(weights)}};
  return j.dump(2);
}

MonotoneStep stepfn_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(errc::parse, "step-function JSON must be an object");
  if (j.contains("identity")) {
    if (!j.at("identity").is_boolean() || !j.at("identity").get<bool>())
      fail(errc::parse, "'identity' must be true when present");
    return MonotoneStep::identity();
  }
  if (!j.contains("breakpoints") || !j.contains("values"))
    fail(errc::parse, "step-function JSON needs 'breakpoints' and 'values'");
  auto breakpoints = number_array(j.at("breakpoints"), "'breakpoints'");
  auto values = number_array(j.at("values"), "'values'");
  return MonotoneStep::make(std::move(breakpoints), std::move(values));
}

MonotoneStep stepfn_from_file(const std::string& path) {
  return stepfn_from_json(read_text_file(path));
}

std::string stepfn_to_json(const MonotoneStep& g) {
  if (g.is_identity()) return json({{"identity", true}}).dump(2);
  const json j = {{"breakpoints", g.breakpoints()}, {"values", g.values()}};
  return j.dump(2);
}

std::string rect_mixture_to_json(const RectMixture& c) {
  json comps = json::array();
  for (const auto& comp : c.components()) {
    comps.push_back(
        {{"lower", comp.lower}, {"upper", comp.upper}, {"weight", comp.weight}});
  }
  const json j = {{"dim", c.dim()}, {"components", std::move(comps)}};
  return j.dump(2);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(errc::io, "read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io, "cannot open file for writing: " + path);
  out << content;
  out.flush();
  if (!out) fail(errc::io, "write failed: " + path);
}

}  // namespace margdist
