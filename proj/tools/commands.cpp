#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "d4walk/cospectrality.hpp"
#include "d4walk/evolution.hpp"
#include "d4walk/params_io.hpp"
#include "d4walk/readout.hpp"
#include "d4walk/spectrum.hpp"
#include "d4walk/verification.hpp"
#include "json_emit.hpp"

namespace d4walk::cli {

namespace {

constexpr const char* kSchemaVersion = "1";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json params_json(const TreeParams& p) {
  Json j;
  j["q"] = p.q;
  j["a"] = p.a;
  return j;
}

Json spectral_value_json(const SpectralValue& v) {
  Json j;
  j["value"] = v.value;
  j["exact"] = v.exact ? Json(v.exact->to_string()) : Json(nullptr);
  return j;
}

Json value_list(const std::vector<SpectralValue>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(spectral_value_json(v));
  return arr;
}

Json document(const std::string& command, Json inputs, Json results) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["results"] = std::move(results);
  return doc;
}

std::pair<Vertex, Vertex> parse_vertices(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--vertices expects X,Y");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("--vertices expects two integers, got '" + text + "'");
  }
}

CospectralPair select_pair(const LabeledTree& tree, const std::string& selector) {
  const auto pairs = classified_pairs(tree);
  if (pairs.empty()) throw UsageError("PairNotCospectral: tree has no strongly cospectral pair");
  if (selector.empty()) return pairs.front();
  const auto colon = selector.find(':');
  const std::string kind = selector.substr(0, colon);
  std::size_t index = 0;
  if (colon != std::string::npos) {
    try {
      index = static_cast<std::size_t>(std::stoul(selector.substr(colon + 1)));
    } catch (const std::exception&) {
      throw UsageError("--pair expects KIND[:INDEX], got '" + selector + "'");
    }
  }
  std::size_t seen = 0;
  for (const auto& p : pairs) {
    if (to_string(p.kind) != kind) continue;
    if (seen++ == index) return p;
  }
  throw UsageError("no pair " + selector + " in this tree");
}

Json record_json(const TransferRecord& r) {
  Json j;
  j["time"] = r.time;
  j["fidelity"] = r.fidelity;
  j["sensitivity"] = r.sensitivity ? Json(*r.sensitivity) : Json(nullptr);
  j["amplitude_re"] = r.amplitude.real();
  j["amplitude_im"] = r.amplitude.imag();
  return j;
}

void write_scan(const ScanOptions& opt, Json inputs, const TransferKernel& kernel,
                std::ostream& out) {
  const auto grid = uniform_grid(opt.t0, opt.t1, opt.steps);
  const auto records = scan(kernel, grid);
  if (opt.format == "csv") {
    out << "time,fidelity,sensitivity\n";
    for (const auto& r : records) {
      out << format_real(r.time) << ',' << format_real(r.fidelity) << ',';
      if (r.sensitivity) out << format_real(*r.sensitivity);
      out << '\n';
    }
    return;
  }
  Json results;
  results["pair"] = {{"x", kernel.x()},
                     {"y", kernel.y()},
                     {"strongly_cospectral", kernel.strongly_cospectral()}};
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  results["records"] = std::move(arr);
  out << emit_json(document("scan", std::move(inputs), std::move(results)));
}

std::int64_t require(const std::optional<long long>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

Json schedule_rows(const ReadoutSchedule& s, Json* csv_rows) {
  const auto kernel = TransferKernel::for_tree(s.params, s.x, s.y);
  Json rows = Json::array();
  for (const auto& r : s.records) {
    const double direct = kernel.fidelity(r.time);
    Json row;
    row["index"] = r.index;
    row["time_symbolic"] = r.time.to_string();
    row["time"] = r.time.to_double();
    row["predicted_fidelity"] = r.predicted_fidelity;
    row["direct_fidelity"] = direct;
    row["discrepancy"] = std::abs(direct - r.predicted_fidelity);
    row["sensitivity"] = kernel.strongly_cospectral() ? Json(kernel.sensitivity(r.time)) : Json(nullptr);
    row["predicted_sensitivity"] =
        r.predicted_sensitivity ? Json(*r.predicted_sensitivity) : Json(nullptr);
    if (r.alternate_fidelity) row["alternate_fidelity"] = *r.alternate_fidelity;
    if (csv_rows) csv_rows->push_back(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

Json schedule_json(const ReadoutSchedule& s, Json* csv_rows) {
  Json j;
  j["family"] = s.family;
  j["params"] = params_json(s.params);
  j["pair"] = {{"x", s.x}, {"y", s.y}};
  j["records"] = schedule_rows(s, csv_rows);
  return j;
}

void write_csv_rows(const Json& rows, std::ostream& out) {
  out << "index,time_symbolic,time,predicted_fidelity,direct_fidelity,discrepancy,sensitivity,"
         "predicted_sensitivity\n";
  for (const auto& row : rows) {
    auto cell = [&](const char* key) {
      if (!row.contains(key) || row[key].is_null()) return std::string();
      if (row[key].is_number_float()) return format_real(row[key].get<double>());
      if (row[key].is_string()) return row[key].get<std::string>();
      return row[key].dump();
    };
    out << cell("index") << ',' << cell("time_symbolic") << ',' << cell("time") << ','
        << cell("predicted_fidelity") << ',' << cell("direct_fidelity") << ','
        << cell("discrepancy") << ',' << cell("sensitivity") << ','
        << cell("predicted_sensitivity") << '\n';
  }
}

}  // namespace

std::vector<int> parse_range(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  try {
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
      const int lo = std::stoi(text.substr(0, dots));
      std::string rest = text.substr(dots + 2);
      int step = 1;
      if (const auto colon = rest.find(':'); colon != std::string::npos) {
        step = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const int hi = std::stoi(rest);
      if (step < 1) throw UsageError("range step must be >= 1");
      for (int v = lo; v <= hi; v += step) out.push_back(v);
      return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("cannot parse range '" + text + "'");
  }
  return out;
}

int run_info(const InfoOptions& opt, std::ostream& out) {
  const TreeParams p = load_params_file(opt.params_file);
  validate_params(p);
  const LabeledTree tree(p);

  Json results;
  results["vertex_count"] = tree.n();
  Json degrees;
  degrees["centre"] = tree.degree(tree.centre());
  Json stem_classes = Json::array();
  for (std::size_t j = 0; j < p.t(); ++j) {
    stem_classes.push_back({{"class", j}, {"stems", p.a[j]}, {"degree", p.q[j] + 1}});
  }
  degrees["stem_classes"] = std::move(stem_classes);
  degrees["leaves"] = tree.leaves().size();
  results["degrees"] = std::move(degrees);

  Json spectrum = Json::array();
  const auto full = full_spectrum(p);
  for (const auto& e : full.entries) {
    Json entry = spectral_value_json(e.value);
    entry["multiplicity"] = e.multiplicity;
    spectrum.push_back(std::move(entry));
  }
  results["spectrum"] = std::move(spectrum);

  Json pairs = Json::array();
  for (const auto& pair : strongly_cospectral_pairs(p)) {
    Json j;
    j["kind"] = to_string(pair.kind);
    j["class"] = pair.cls;
    j["x"] = pair.x;
    j["y"] = pair.y;
    j["sigma_plus"] = value_list(pair.partition.sigma_plus);
    j["sigma_minus"] = value_list(pair.partition.sigma_minus);
    pairs.push_back(std::move(j));
  }
  results["pairs"] = std::move(pairs);

  if (const auto fam = recognize_family(p)) {
    Json f;
    f["name"] = to_string(fam->family);
    f["x"] = fam->x;
    f["y"] = fam->y;
    f["pgst"] = to_string(pgst_obstruction_check(*fam));
    results["family"] = std::move(f);
  } else {
    results["family"] = nullptr;
  }

  out << emit_json(document("info", {{"params", params_json(p)}}, std::move(results)));
  return kOk;
}

int run_scan(const ScanOptions& opt, std::ostream& out) {
  if (opt.format != "csv" && opt.format != "json") throw UsageError("--format must be csv or json");
  if (opt.steps < 0) throw UsageError("--steps must be >= 0");
  Json inputs;
  inputs["t0"] = opt.t0;
  inputs["t1"] = opt.t1;
  inputs["steps"] = opt.steps;

  if (opt.path > 0) {
    const auto lists = path_graph(opt.path);
    Vertex x = 0, y = opt.path - 1;
    if (!opt.vertices.empty()) std::tie(x, y) = parse_vertices(opt.vertices);
    if (x < 0 || y < 0 || x >= opt.path || y >= opt.path) throw UsageError("vertex out of range");
    const auto d = SpectralDecomposition::dense(adjacency_matrix(lists));
    const TransferKernel kernel(d, x, y);
    if (!kernel.strongly_cospectral() && !opt.any_pair) {
      throw UsageError("PairNotCospectral: vertices are not strongly cospectral (use --any-pair)");
    }
    inputs["path"] = opt.path;
    inputs["pair"] = {{"x", x}, {"y", y}};
    write_scan(opt, std::move(inputs), kernel, out);
    return kOk;
  }

  if (opt.params_file.empty()) throw UsageError("scan needs --params or --path");
  const TreeParams p = load_params_file(opt.params_file);
  validate_params(p);
  const LabeledTree tree(p);
  Vertex x = 0, y = 0;
  if (!opt.vertices.empty()) {
    std::tie(x, y) = parse_vertices(opt.vertices);
    if (x < 0 || y < 0 || x >= tree.n() || y >= tree.n()) throw UsageError("vertex out of range");
  } else {
    const auto pair = select_pair(tree, opt.pair);
    x = pair.x;
    y = pair.y;
  }
  const Vertex both[] = {x, y};
  const TransferKernel kernel(SpectralDecomposition::of_tree(tree, both), x, y);
  if (!kernel.strongly_cospectral() && !opt.any_pair) {
    throw UsageError("PairNotCospectral: vertices " + std::to_string(x) + "," + std::to_string(y) +
                     " are not strongly cospectral (use --any-pair)");
  }
  inputs["params"] = params_json(p);
  inputs["pair"] = {{"x", x}, {"y", y}};
  write_scan(opt, std::move(inputs), kernel, out);
  return kOk;
}

int run_schedule(const ScheduleOptions& opt, std::ostream& out) {
  if (opt.format != "csv" && opt.format != "json") throw UsageError("--format must be csv or json");
  ScheduleOptions o = opt;
  if (!o.params_file.empty()) {
    const TreeParams p = load_params_file(o.params_file);
    validate_params(p);
    const auto fam = recognize_family(p);
    if (fam) {
      if (o.family.empty()) o.family = std::string(to_string(fam->family));
      if (fam->family == Family::TypeC && !o.k) o.k = fam->k;
      if (fam->family == Family::T3) {
        if (!o.k2) o.k2 = fam->k2;
        if (!o.k3) o.k3 = fam->k3;
        if (!o.q3) o.q3 = fam->q3;
      }
      if (fam->family == Family::Dist4 && !o.q2) o.q2 = fam->q2;
    } else if (p.t() == 1 && p.a[0] == 2 && !o.q) {
      o.q = p.q[0];
      if (o.family.empty()) o.family = "q_readout";
    }
    if (o.family.empty()) throw Error(ErrorCode::UnknownFamily, "parameters match no family");
  }

  Json inputs;
  inputs["family"] = o.family;
  Json results;
  Json csv_rows = Json::array();
  const bool csv = o.format == "csv";
  Json* rows_sink = csv ? &csv_rows : nullptr;

  if (o.family == "type_c") {
    const auto k = require(o.k, "--k");
    const auto ns = parse_range(o.n_range.empty() ? "1..9:2" : o.n_range);
    inputs["k"] = k;
    inputs["n"] = ns;
    results["schedules"] = Json::array({schedule_json(schedule_type_c(k, ns), rows_sink)});
  } else if (o.family == "t3") {
    const auto k2 = require(o.k2, "--k2");
    const auto k3 = require(o.k3, "--k3");
    const auto ns = parse_range(o.n_range.empty() ? "1..9:2" : o.n_range);
    inputs["k2"] = k2;
    inputs["k3"] = k3;
    inputs["n"] = ns;
    std::vector<T3Family> families;
    if (o.q3) {
      inputs["q3"] = *o.q3;
      families.push_back(make_t3_family(k2, k3, *o.q3));
    } else {
      families = search_t3(k2, k3);
    }
    Json arr = Json::array();
    for (const auto& f : families) arr.push_back(schedule_json(schedule_t3(f, ns), rows_sink));
    results["schedules"] = std::move(arr);
  } else if (o.family == "q_readout") {
    const auto q = require(o.q, "--q");
    const auto ells = parse_range(o.ell_range.empty() ? "0..3" : o.ell_range);
    const int ell_max = ells.empty() ? 0 : *std::max_element(ells.begin(), ells.end());
    inputs["q"] = q;
    inputs["ell"] = ells;
    ReadoutSchedule s = schedule_q_readout(q, ell_max);
    std::erase_if(s.records, [&](const ReadoutRecord& r) {
      return std::find(ells.begin(), ells.end(), r.index) == ells.end();
    });
    results["schedules"] = Json::array({schedule_json(s, rows_sink)});
  } else if (o.family == "p5_leaf") {
    const auto ells = parse_range(o.ell_range.empty() ? "0..3" : o.ell_range);
    const int ell_max = ells.empty() ? 0 : *std::max_element(ells.begin(), ells.end());
    inputs["ell"] = ells;
    ReadoutSchedule s = schedule_p5_leaf(ell_max);
    std::erase_if(s.records, [&](const ReadoutRecord& r) {
      return std::find(ells.begin(), ells.end(), r.index) == ells.end();
    });
    results["schedules"] = Json::array({schedule_json(s, rows_sink)});
  } else if (o.family == "coupled_q2") {
    const auto ns = parse_range(o.n_range.empty() ? "1..3" : o.n_range);
    inputs["n"] = ns;
    Json arr = Json::array();
    for (int n : ns) {
      const CoupledQ2 c = coupled_q2_schedule(n);
      ReadoutSchedule s;
      s.family = "coupled_q2";
      s.params = dist4_params(c.q2);
      const auto fam = recognize_family(s.params);
      s.x = fam->x;
      s.y = fam->y;
      s.records.push_back({n, c.time, c.predicted_fidelity, std::nullopt, std::nullopt});
      Json j = schedule_json(s, rows_sink);
      j["q2"] = c.q2;
      arr.push_back(std::move(j));
    }
    results["schedules"] = std::move(arr);
  } else if (o.family == "dist4") {
    const auto q2 = require(o.q2, "--q2");
    inputs["q2"] = q2;
    inputs["epsilon"] = o.epsilon;
    inputs["r_max"] = o.r_max;
    const Dist4Analysis a = dist4_analyze(q2, o.epsilon);
    Json analysis;
    analysis["a2"] = a.a2;
    analysis["support"] = value_list(a.support);
    analysis["pgst"] = a.pgst;
    analysis["fm_r_bound"] = a.fm_r_bound;
    analysis["fm_time_bound"] = a.fm_time_bound;
    results["analysis"] = analysis;
    const Dist4Readout r = dist4_search_readout(q2, o.epsilon, o.r_max);
    Json best;
    best["r"] = r.r;
    best["time_symbolic"] = r.time.to_string();
    best["time"] = r.time.to_double();
    best["max_phase_error"] = r.max_phase_error;
    best["epsilon_prime"] = r.epsilon_prime;
    best["certified"] = r.certified;
    best["certified_bound"] = r.certified_bound;
    best["target_met"] = r.target_met;
    best["achieved_fidelity"] = r.achieved_fidelity;
    results["readout"] = best;
    if (csv) {
      Json row;
      row["index"] = r.r;
      row["time_symbolic"] = r.time.to_string();
      row["time"] = r.time.to_double();
      row["predicted_fidelity"] = r.certified_bound;
      row["direct_fidelity"] = r.achieved_fidelity;
      csv_rows.push_back(row);
    }
  } else {
    throw UsageError("--family must be one of type_c, t3, q_readout, p5_leaf, coupled_q2, dist4");
  }

  if (csv) {
    write_csv_rows(csv_rows, out);
  } else {
    out << emit_json(document("schedule", std::move(inputs), std::move(results)));
  }
  return kOk;
}

int run_verify(const VerifyOptions& opt, std::ostream& out) {
  VerifyScope scope;
  if (opt.scope == "quick") {
    scope = VerifyScope::Quick;
  } else if (opt.scope == "full") {
    scope = VerifyScope::Full;
  } else {
    throw UsageError("--scope must be quick or full");
  }
  const auto report = run_verification(scope, opt.inject_fault);
  if (opt.format == "json") {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    Json results;
    results["passed"] = report.passed();
    results["checks"] = std::move(checks);
    out << emit_json(document("verify", {{"scope", opt.scope}}, std::move(results)));
  } else {
    for (const auto& c : report.checks) {
      out << (c.passed ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    }
    out << (report.passed() ? "verify: all checks passed\n" : "verify: FAILED\n");
  }
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace d4walk::cli
