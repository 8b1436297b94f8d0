#include "spectral4/coefficient_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "spectral4/errors.hpp"

namespace spectral4 {

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad number in coefficient preset '" + spec + "'");
    }
    if (used != item.size() || !std::isfinite(v)) throw InputError("bad number in coefficient preset '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Complex> sample_on(std::size_t grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> out(grid);
  for (std::size_t i = 0; i < grid; ++i) out[i] = f(static_cast<double>(i) / static_cast<double>(grid - 1));
  return out;
}

std::vector<Complex> read_field(const nlohmann::json& doc, const char* name, std::optional<std::size_t> grid) {
  if (!doc.contains(name)) throw InputError(std::string("coefficient file lacks field '") + name + "'");
  const auto& field = doc.at(name);
  if (field.is_string()) {
    if (!grid) throw InputError("coefficient file needs 'grid' when every field is a preset");
    return sample_on(*grid, field_preset(field.get<std::string>()));
  }
  if (!field.is_array()) throw InputError(std::string("field '") + name + "' must be an array or a preset string");
  std::vector<Complex> out;
  out.reserve(field.size());
  for (const auto& pair : field) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw InputError(std::string("field '") + name + "' must hold [re, im] pairs");
    out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  if (grid && out.size() != *grid)
    throw InputError(std::string("field '") + name + "' has " + std::to_string(out.size()) + " samples, grid is " +
                     std::to_string(*grid));
  return out;
}

}  // namespace

std::function<Complex(double)> field_preset(const std::string& spec) {
  if (spec == "zero") return [](double) { return Complex{}; };
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("unknown coefficient preset '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> v = parse_numbers(spec.substr(colon + 1), spec);
  if (kind == "const" && (v.size() == 1 || v.size() == 2)) {
    const Complex c(v[0], v.size() == 2 ? v[1] : 0.0);
    return [c](double) { return c; };
  }
  if (kind == "linear" && v.size() == 2) {
    const double a = v[0], b = v[1];
    return [a, b](double x) { return Complex(a + b * x); };
  }
  if (kind == "step" && v.size() == 2) {
    const double x0 = v[0], h = v[1];
    return [x0, h](double x) { return Complex(x >= x0 ? h : 0.0); };
  }
  throw InputError("unknown coefficient preset '" + spec + "'");
}

std::vector<std::string> preset_names() { return {"zero", "smooth", "mixed", "dirac"}; }

CoefficientSet named_preset(const std::string& name, std::size_t grid) {
  if (grid < 2) throw InputError("grid must have at least 2 points");
  const auto zero = field_preset("zero");
  if (name == "zero") return CoefficientSet::zero(grid);
  if (name == "smooth")
    return CoefficientSet::sample(
        grid, field_preset("linear:1,1"), field_preset("linear:0,1"), [](double x) { return Complex(x * x); });
  if (name == "mixed")
    return CoefficientSet::sample(grid, field_preset("linear:1,1"), field_preset("const:1"), field_preset("step:0.5,1"));
  if (name == "dirac") return CoefficientSet::sample(grid, zero, zero, field_preset("step:0.5,1"));
  throw InputError("unknown coefficient preset '" + name + "'");
}

CoefficientSet parse_coefficients(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("coefficient file must be a JSON object");
  std::optional<std::size_t> grid;
  if (doc.contains("grid")) {
    if (!doc["grid"].is_number_integer() || doc["grid"].get<long long>() < 2)
      throw InputError("'grid' must be an integer >= 2");
    grid = doc["grid"].get<std::size_t>();
  } else {
    for (const char* name : {"tau2", "tau1", "r0"})
      if (doc.contains(name) && doc[name].is_array()) {
        grid = doc[name].size();
        break;
      }
  }
  CoefficientSet cs;
  cs.tau2 = read_field(doc, "tau2", grid);
  cs.tau1 = read_field(doc, "tau1", grid);
  cs.r0 = read_field(doc, "r0", grid);
  cs.validate();
  return cs;
}

CoefficientSet load_coefficients(const std::string& source, std::size_t grid) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) {
    std::ifstream in(source);
    if (!in) throw InputError("cannot open coefficient file '" + source + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_coefficients(buffer.str());
  }
  for (const auto& name : preset_names())
    if (name == source) return named_preset(source, grid);
  throw InputError("'" + source + "' is neither a readable file nor a coefficient preset");
}

}  // namespace spectral4
