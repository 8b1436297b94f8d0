#include "spectral4/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spectral4/asymptotics.hpp"
#include "spectral4/errors.hpp"
#include "spectral4/selfcheck.hpp"
#include "spectral4/spectral.hpp"

namespace spectral4 {

namespace {

using Json = nlohmann::ordered_json;

struct HelpRequested {
  std::string text;
};

// A table of rows with a fixed column order, written as JSON or CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<Json> row) { rows_.push_back(std::move(row)); }
  void note(const std::string& key, Json value) { summary_[key] = std::move(value); }

  void write(std::ostream& os, OutputFormat format, const Json& header) const {
    if (format == OutputFormat::json) {
      Json doc = header;
      Json rows = Json::array();
      for (const auto& row : rows_) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < columns_.size(); ++c) obj[columns_[c]] = row[c];
        rows.push_back(obj);
      }
      doc["rows"] = rows;
      if (!summary_.empty()) doc["summary"] = summary_;
      os << doc.dump(2) << "\n";
      return;
    }
    for (std::size_t c = 0; c < columns_.size(); ++c) os << (c ? "," : "") << columns_[c];
    os << "\n";
    for (const auto& row : rows_) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell(row[c]);
      os << "\n";
    }
    for (const auto& [key, value] : summary_.items()) os << "# " << key << "," << cell(value) << "\n";
  }

 private:
  static std::string cell(const Json& v) {
    if (v.is_number_float()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<Json>> rows_;
  Json summary_ = Json::object();
};

const char* command_name(Command c) {
  switch (c) {
    case Command::spectrum:
      return "spectrum";
    case Command::weights:
      return "weights";
    case Command::predict:
      return "predict";
    case Command::verify:
      return "verify";
    default:
      return "selfcheck";
  }
}

Json header(const RunConfig& c) {
  Json h = Json::object();
  h["command"] = command_name(c.command);
  h["problem"] = c.problem;
  h["coeffs"] = c.coeffs;
  h["nmax"] = c.nmax;
  h["tol"] = c.tol;
  return h;
}

std::string failing_indices(const std::vector<SpectralDatum>& data) {
  std::string out;
  for (const auto& d : data)
    if (d.status != DatumStatus::ok) out += (out.empty() ? "" : ",") + std::to_string(d.n) + " (" + d.message + ")";
  return out;
}

int emit(const RunConfig& c, const Table& table, std::ostream& out) {
  if (c.out) {
    std::ofstream file(*c.out);
    if (!file) throw InputError("cannot write to '" + *c.out + "'");
    table.write(file, c.format, header(c));
  } else {
    table.write(out, c.format, header(c));
  }
  return kExitOk;
}

int run_spectral(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Primitives p = build_primitives(load_coefficients(c.coeffs, c.grid));
  const ProblemKind kind(c.problem);
  SpectrumOptions opts;
  opts.tol = c.tol;
  auto data = find_eigenvalues(p, kind, c.nmax, opts);
  const bool with_beta = c.command != Command::spectrum;
  if (with_beta) data = weight_numbers(p, kind, data, opts);

  std::vector<std::string> columns{"n", "k", "re_lambda", "im_lambda", "residual"};
  if (c.command == Command::weights) columns.insert(columns.end(), {"re_beta", "im_beta", "method"});
  const AsymptoticConstants ac = make_constants(p);
  if (c.command == Command::verify)
    columns.insert(columns.end(), {"re_lambda_pred", "im_lambda_pred", "re_kappa", "im_kappa", "re_beta", "im_beta",
                                   "re_beta_pred", "im_beta_pred"});
  columns.insert(columns.end(), {"re_rho", "im_rho", "iterations", "multiplicity", "status"});

  std::vector<Complex> numeric, predicted;
  for (const auto& d : data) {
    numeric.push_back(d.lambda);
    predicted.push_back(predict_lambda(c.problem, d.n, ac));
  }
  std::optional<RemainderReport> report;
  if (c.command == Command::verify) report = remainder_analysis(numeric, predicted, 1, data.front().n);

  Table table(columns);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& d = data[i];
    const Complex beta = d.beta.value_or(Complex{});
    std::vector<Json> row{d.n, d.k, d.lambda.real(), d.lambda.imag(), d.residual};
    if (c.command == Command::weights) {
      row.insert(row.end(), {beta.real(), beta.imag(), to_string(d.method)});
    }
    if (c.command == Command::verify) {
      const Complex bp = predict_beta(c.problem, d.n, predicted[i], ac);
      row.insert(row.end(), {predicted[i].real(), predicted[i].imag(), report->kappa[i].real(),
                             report->kappa[i].imag(), beta.real(), beta.imag(), bp.real(), bp.imag()});
    }
    row.insert(row.end(), {d.rho.real(), d.rho.imag(), d.iterations, d.multiplicity,
                           d.status == DatumStatus::ok ? "ok" : "failed"});
    table.add(std::move(row));
  }
  if (report) {
    table.note("l2_consistent", report->l2_consistent);
    table.note("first_half", report->first_half);
    table.note("second_half", report->second_half);
    table.note("tail_max", report->tail_max);
  }
  emit(c, table, out);
  const std::string failed = failing_indices(data);
  if (!failed.empty()) {
    err << "non-convergence at indices: " << failed << "\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int run_predict(const RunConfig& c, std::ostream& out) {
  const Primitives p = build_primitives(load_coefficients(c.coeffs, c.grid));
  const AsymptoticConstants ac = make_constants(p);
  Table table({"n", "k", "re_lambda", "im_lambda", "re_rho", "im_rho", "re_beta", "im_beta"});
  for (int n = 1; n <= c.nmax; ++n) {
    const Complex lambda = predict_lambda(c.problem, n, ac);
    const Complex rho = rho_in_sector(lambda);
    const Complex beta = predict_beta(c.problem, n, lambda, ac);
    table.add({n, c.problem, lambda.real(), lambda.imag(), rho.real(), rho.imag(), beta.real(), beta.imag()});
  }
  return emit(c, table, out);
}

int run_selfcheck(std::ostream& out) {
  bool ok = true;
  for (int id : zero_coefficient_criteria()) {
    const CriterionResult r = run_criterion(id);
    out << format_result(r) << "\n" << std::flush;
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitNonConvergence;
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.problem < 1 || c.problem > 3) throw InputError("--problem must be 1, 2 or 3");
  if (c.nmax < 1) throw InputError("--nmax must be >= 1");
  if (!(c.tol > 0.0 && c.tol <= 1e-4)) throw InputError("--tol must lie in (0, 1e-4]");
  if (c.grid < 2) throw InputError("--grid must be >= 2");
  if (c.command == Command::verify && c.nmax < 5) throw InputError("verify needs --nmax >= 5");
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Spectral data of fourth-order problems with distribution coefficients", "spectral4"};
  std::string command;
  std::string format = "json";
  std::string out_path;
  app.add_option("command", command, "spectrum | weights | predict | verify | selfcheck")
      ->required()
      ->check(CLI::IsMember({"spectrum", "weights", "predict", "verify", "selfcheck"}));
  app.add_option("--problem", c.problem, "boundary conditions k in {1,2,3}");
  app.add_option("--coeffs", c.coeffs, "coefficient file or preset (zero, smooth, mixed, dirac)");
  app.add_option("--nmax", c.nmax, "number of eigenvalues");
  app.add_option("--tol", c.tol, "integration tolerance, in (0, 1e-4]");
  app.add_option("--grid", c.grid, "grid size for presets");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "output file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }
  if (command == "spectrum") c.command = Command::spectrum;
  if (command == "weights") c.command = Command::weights;
  if (command == "predict") c.command = Command::predict;
  if (command == "verify") c.command = Command::verify;
  if (command == "selfcheck") c.command = Command::selfcheck;
  c.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  if (!out_path.empty()) c.out = out_path;
  validate(c);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    switch (config.command) {
      case Command::selfcheck:
        return run_selfcheck(out);
      case Command::predict:
        return run_predict(config, out);
      default:
        return run_spectral(config, out, err);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const InputError& e) {
    err << e.what() << "\n";
    return kExitBadInput;
  }
  return run(config, out, err);
}

}  // namespace spectral4
