// Command-line front end.  Reads a JSON run configuration, then either
// evaluates the pullback metric over a parameter grid (eval-metric), runs the
// seeded property suites (verify), or compares the production code paths
// against the dense oracles (oracle-compare).
//
// Exit codes: 0 success, 1 verification failure, 2 config error,
// 3 regularity/domain error, 4 numerical error.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "jig/jig.hpp"

namespace {

using nlohmann::json;

// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exception taxonomy to exit code.  Shape/element problems are config errors
// (the input file described something structurally invalid); the domain_error
// family covers points outside the smooth domain, positivity and regularity
// failures; everything else is a numerical failure.
int classify(const std::exception& e) {
  if (dynamic_cast<const jig::NumericError*>(&e) != nullptr) return 4;
  if (dynamic_cast<const std::domain_error*>(&e) != nullptr) return 3;
  if (dynamic_cast<const ConfigError*>(&e) != nullptr ||
      dynamic_cast<const json::exception*>(&e) != nullptr ||
      dynamic_cast<const std::invalid_argument*>(&e) != nullptr)
    return 2;
  return 4;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string format_point(const Eigen::VectorXd& m) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m(i);
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// JSON scalar / matrix ingestion.  Complex entries are bare reals or
// [re, im] pairs; matrices are arrays of rows; block elements are arrays of
// matrices, one per block, even for single-block shapes.

jig::Complex parse_complex(const json& v, const std::string& where) {
  if (v.is_number()) return jig::Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return jig::Complex(v[0].get<double>(), v[1].get<double>());
  throw ConfigError(where + ": expected a number or an [re, im] pair");
}

Eigen::VectorXd parse_real_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(where + ": expected real numbers");
    out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
  }
  return out;
}

Eigen::VectorXcd parse_complex_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty array");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = parse_complex(v[i], where);
  return out;
}

jig::Matrix parse_complex_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty() || !v[0].is_array() || v[0].empty())
    throw ConfigError(where + ": expected an array of matrix rows");
  const std::size_t rows = v.size();
  const std::size_t cols = v[0].size();
  jig::Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = v[r];
    if (!row.is_array() || row.size() != cols) throw ConfigError(where + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(row[c], where);
  }
  return m;
}

Eigen::MatrixXd parse_real_matrix(const json& v, const std::string& where) {
  const jig::Matrix m = parse_complex_matrix(v, where);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0) throw ConfigError(where + ": expected a real matrix");
  return m.real();
}

// Shape spec: a bare integer (one full block), an array of block dimensions,
// or {"blocks": [...]}.
jig::AlgebraShape parse_shape(const json& v, const std::string& where) {
  if (v.is_number_integer()) return jig::AlgebraShape::full_matrix(v.get<int>());
  const json* dims = &v;
  if (v.is_object()) {
    if (!v.contains("blocks")) throw ConfigError(where + ": expected a \"blocks\" array");
    dims = &v.at("blocks");
  }
  if (!dims->is_array() || dims->empty())
    throw ConfigError(where + ": expected an array of block dimensions");
  std::vector<int> d;
  d.reserve(dims->size());
  for (const json& e : *dims) {
    if (!e.is_number_integer()) throw ConfigError(where + ": block dimensions must be integers");
    d.push_back(e.get<int>());
  }
  return jig::AlgebraShape(std::move(d));
}

jig::AlgebraElement parse_element(const jig::AlgebraShape& shape, const json& v,
                                  const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != shape.block_count())
    throw ConfigError(where + ": expected one matrix per block of " + shape.to_string());
  std::vector<jig::Matrix> blocks;
  blocks.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    blocks.push_back(parse_complex_matrix(v[k], where + "[" + std::to_string(k) + "]"));
  return jig::AlgebraElement(shape, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Model construction.

// Table-defined model: points and per-axis tangent densities given explicitly
// at a finite set of parameter values, matched exactly at evaluation time.
struct CustomRow {
  Eigen::VectorXd params;
  jig::Functional point;
  std::vector<jig::Functional> tangents;
};

jig::ParametricModel build_custom_model(const jig::AlgebraShape& shape, const json& spec) {
  const json& table = spec.at("table");
  if (!table.is_array() || table.empty())
    throw ConfigError("model.table: expected a non-empty array of rows");

  auto rows = std::make_shared<std::vector<CustomRow>>();
  int k = -1;
  for (std::size_t r = 0; r < table.size(); ++r) {
    const std::string where = "model.table[" + std::to_string(r) + "]";
    const json& row = table[r];
    Eigen::VectorXd params = parse_real_vector(row.at("params"), where + ".params");
    if (k < 0) k = static_cast<int>(params.size());
    if (static_cast<int>(params.size()) != k)
      throw ConfigError(where + ": rows disagree on the parameter dimension");
    jig::Functional point(parse_element(shape, row.at("density"), where + ".density"));
    if (!row.contains("tangents"))
      throw ConfigError(where + ": table rows need tangents (one block list per parameter axis)");
    const json& tg = row.at("tangents");
    if (!tg.is_array() || static_cast<int>(tg.size()) != k)
      throw ConfigError(where + ".tangents: expected one entry per parameter axis");
    std::vector<jig::Functional> tangents;
    tangents.reserve(tg.size());
    for (std::size_t a = 0; a < tg.size(); ++a)
      tangents.emplace_back(parse_element(shape, tg[a], where + ".tangents[" + std::to_string(a) + "]"));
    rows->push_back(CustomRow{std::move(params), std::move(point), std::move(tangents)});
  }

  Eigen::VectorXd lo = rows->front().params;
  Eigen::VectorXd hi = rows->front().params;
  for (const CustomRow& row : *rows) {
    lo = lo.cwiseMin(row.params);
    hi = hi.cwiseMax(row.params);
  }
  jig::Box domain{lo.array() - 1.0, hi.array() + 1.0};

  auto find_row = [rows](const Eigen::VectorXd& m) -> const CustomRow& {
    for (const CustomRow& row : *rows)
      if ((row.params - m).cwiseAbs().maxCoeff() <= 1e-9) return row;
    throw ConfigError("parameter point " + format_point(m) + " is not in the custom table");
  };
  jig::ParametricModel::PointMap point = [find_row](const Eigen::VectorXd& m) {
    return find_row(m).point;
  };
  jig::ParametricModel::TangentMap tangent = [find_row](const Eigen::VectorXd& m,
                                                        const Eigen::VectorXd& dir) {
    const CustomRow& row = find_row(m);
    jig::Functional out = row.tangents[0] * dir(0);
    for (Eigen::Index a = 1; a < dir.size(); ++a)
      out = out + row.tangents[static_cast<std::size_t>(a)] * dir(a);
    return out;
  };
  return jig::ParametricModel(shape, std::move(domain), std::move(point), std::move(tangent));
}

jig::ParametricModel build_classical_model(const json& spec) {
  const std::string family = spec.at("family").get<std::string>();
  if (family == "simplex") {
    const json& outcomes = spec.at("outcomes");
    if (!outcomes.is_number_integer() || outcomes.get<int>() < 1)
      throw ConfigError("model.outcomes: expected a positive integer");
    const int k = outcomes.get<int>();
    return jig::make_classical_model(jig::simplex_family(k), jig::Box::cube(k, -1.0, 2.0));
  }
  if (family == "exponential") {
    Eigen::MatrixXd stats = parse_real_matrix(spec.at("statistics"), "model.statistics");
    const int k = static_cast<int>(stats.cols());
    return jig::make_classical_model(jig::exponential_family(stats), jig::Box::cube(k, -6.0, 6.0));
  }
  throw ConfigError("model.family must be \"simplex\" or \"exponential\"");
}

jig::ParametricModel build_rank_one_model(const json& spec) {
  Eigen::VectorXcd phi = parse_complex_vector(spec.at("phi"), "model.phi");
  const json& gens = spec.at("generators");
  if (!gens.is_array() || gens.empty())
    throw ConfigError("model.generators: expected a non-empty array of matrices");
  std::vector<jig::Matrix> hs;
  hs.reserve(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    hs.push_back(parse_complex_matrix(gens[i], "model.generators[" + std::to_string(i) + "]"));
  return jig::make_rank_one_unitary_model(std::move(phi), std::move(hs));
}

jig::ParametricModel build_model(const json& cfg) {
  const json& spec = cfg.at("model");
  const std::string kind = spec.at("kind").get<std::string>();

  std::optional<jig::ParametricModel> model;
  if (kind == "classical") {
    model = build_classical_model(spec);
  } else if (kind == "bloch") {
    model = jig::make_bloch_model();
  } else if (kind == "rank_one_unitary") {
    model = build_rank_one_model(spec);
  } else if (kind == "custom") {
    const json* shape_spec = spec.contains("shape")      ? &spec.at("shape")
                             : cfg.contains("algebra")   ? &cfg.at("algebra")
                                                         : nullptr;
    if (shape_spec == nullptr)
      throw ConfigError("custom models need a block shape (model.shape or algebra)");
    model = build_custom_model(parse_shape(*shape_spec, "model.shape"), spec);
  } else {
    throw ConfigError("model.kind must be classical, bloch, rank_one_unitary or custom");
  }

  if (cfg.contains("algebra")) {
    const jig::AlgebraShape declared = parse_shape(cfg.at("algebra"), "algebra");
    if (declared != model->shape())
      throw ConfigError("algebra: declared shape " + declared.to_string() +
                        " does not match the model shape " + model->shape().to_string());
  }

  if (cfg.contains("tangents")) {
    const json& t = cfg.at("tangents");
    const std::string mode = t.value("mode", std::string("analytic"));
    if (mode == "analytic") {
      model = model->with_tangent_mode(jig::TangentMode::Analytic);
    } else if (mode == "finite_difference") {
      if (kind == "custom")
        throw ConfigError("custom table models support analytic tangents only");
      model = model->with_tangent_mode(jig::TangentMode::FiniteDifference);
      if (t.contains("step")) model = model->with_fd_step(t.at("step").get<double>());
    } else {
      throw ConfigError("tangents.mode must be \"analytic\" or \"finite_difference\"");
    }
  }
  return *std::move(model);
}

// ---------------------------------------------------------------------------
// Grid evaluation.

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  long steps = 1;
};

std::vector<GridAxis> parse_grid(const json& cfg, const jig::ParametricModel& model) {
  const json& g = cfg.at("grid");
  if (!g.is_array() || g.empty()) throw ConfigError("grid: expected an array of axes");
  if (static_cast<int>(g.size()) != model.param_dim())
    throw ConfigError("grid: expected " + std::to_string(model.param_dim()) + " axes, got " +
                      std::to_string(g.size()));
  std::vector<GridAxis> axes;
  axes.reserve(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) {
    const std::string where = "grid[" + std::to_string(a) + "]";
    const json& ax = g[a];
    GridAxis out;
    out.min = ax.at("min").get<double>();
    out.max = ax.at("max").get<double>();
    if (!ax.at("steps").is_number_integer() || ax.at("steps").get<long>() < 1)
      throw ConfigError(where + ": steps must be a positive integer");
    out.steps = ax.at("steps").get<long>();
    if (out.steps > 1 && !(out.max > out.min))
      throw ConfigError(where + ": max must exceed min when steps > 1");
    const jig::Box& box = model.domain();
    const Eigen::Index i = static_cast<Eigen::Index>(a);
    if (!(out.min > box.lo(i) && out.min < box.hi(i) && out.max > box.lo(i) &&
          out.max < box.hi(i)))
      throw ConfigError(where + ": bounds must lie strictly inside the model domain");
    axes.push_back(out);
  }
  return axes;
}

// Row-major enumeration, axis 0 slowest.
Eigen::VectorXd grid_point(const std::vector<GridAxis>& axes, long index) {
  Eigen::VectorXd m(static_cast<Eigen::Index>(axes.size()));
  long rem = index;
  for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
    const GridAxis& ax = axes[static_cast<std::size_t>(a)];
    const long i = rem % ax.steps;
    rem /= ax.steps;
    m(a) = ax.steps == 1 ? ax.min
                         : ax.min + (ax.max - ax.min) * (static_cast<double>(i) /
                                                         static_cast<double>(ax.steps - 1));
  }
  return m;
}

struct MetricRecord {
  Eigen::VectorXd params;
  std::vector<double> upper;
  bool psd = false;
};

MetricRecord evaluate_point(const jig::ParametricModel& model, const Eigen::VectorXd& m,
                            double regularity_tol, double psd_tol) {
  const jig::MetricMatrix g = jig::metric_tensor(model, m, regularity_tol);
  const int k = model.param_dim();
  MetricRecord rec;
  rec.params = m;
  rec.upper.reserve(static_cast<std::size_t>(k) * (k + 1) / 2);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) rec.upper.push_back(g.entries(i, j));
  rec.psd = g.is_psd(psd_tol);
  return rec;
}

std::string records_to_csv(int k, const std::vector<MetricRecord>& records) {
  std::ostringstream os;
  for (int i = 0; i < k; ++i) os << "m_" << (i + 1) << ",";
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) os << "g_" << (i + 1) << (j + 1) << ",";
  os << "psd\n";
  for (const MetricRecord& r : records) {
    for (Eigen::Index i = 0; i < r.params.size(); ++i) os << fmt17(r.params(i)) << ",";
    for (double v : r.upper) os << fmt17(v) << ",";
    os << (r.psd ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string records_to_json(const std::vector<MetricRecord>& records) {
  json out = json::array();
  for (const MetricRecord& r : records) {
    json rec;
    rec["params"] = std::vector<double>(r.params.data(), r.params.data() + r.params.size());
    rec["metric_upper"] = r.upper;
    rec["psd"] = r.psd;
    out.push_back(std::move(rec));
  }
  return out.dump(2) + "\n";
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output_path);
  if (!f) throw ConfigError("cannot open output file: " + output_path);
  f << text;
  if (!f.good()) throw ConfigError("failed writing output file: " + output_path);
}

struct CommonOpts {
  std::string config;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string output;
  std::string format = "csv";
};

int cmd_eval_metric(const json& cfg, const CommonOpts& opt) {
  const jig::ParametricModel model = build_model(cfg);
  const std::vector<GridAxis> axes = parse_grid(cfg, model);

  double regularity_tol = jig::kStructuralTol;
  double psd_tol = 1e-9;
  if (cfg.contains("tolerances")) {
    const json& t = cfg.at("tolerances");
    regularity_tol = t.value("regularity", regularity_tol);
    psd_tol = t.value("psd", psd_tol);
  }

  long total = 1;
  for (const GridAxis& ax : axes) {
    total *= ax.steps;
    if (total > 20000000L) throw ConfigError("grid has too many points");
  }

  // Workers pick indices off a shared counter; records land by index so the
  // output order (and the first error reported) is independent of scheduling.
  std::vector<std::optional<MetricRecord>> slots(static_cast<std::size_t>(total));
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(total));
  std::atomic<long> cursor{0};
  auto worker = [&]() {
    for (;;) {
      const long i = cursor.fetch_add(1);
      if (i >= total) return;
      try {
        slots[static_cast<std::size_t>(i)] =
            evaluate_point(model, grid_point(axes, i), regularity_tol, psd_tol);
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  const long threads = std::min<long>(std::max(1, opt.jobs), total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (long t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (long i = 0; i < total; ++i) {
    if (!failures[static_cast<std::size_t>(i)]) continue;
    try {
      std::rethrow_exception(failures[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      std::cerr << "eval-metric: failed at grid point " << format_point(grid_point(axes, i))
                << ": " << e.what() << "\n";
      return classify(e);
    }
  }

  std::vector<MetricRecord> records;
  records.reserve(static_cast<std::size_t>(total));
  for (std::optional<MetricRecord>& slot : slots) records.push_back(*std::move(slot));
  emit(opt.format == "json" ? records_to_json(records)
                            : records_to_csv(static_cast<int>(axes.size()), records),
       opt.output);
  return 0;
}

// ---------------------------------------------------------------------------
// Suite registry shared by verify and oracle-compare.

struct SuiteSpec {
  const char* name;
  int trials;  // default; grid-shaped and exhaustive suites ignore overrides
  double tol;
  std::function<jig::OracleReport(std::uint64_t, int, double, const jig::KrausMap*)> run;
};

const std::vector<SuiteSpec>& suite_registry() {
  using jig::KrausMap;
  using jig::OracleReport;
  using jig::TangentMode;
  using Seed = std::uint64_t;
  static const std::vector<SuiteSpec> suites = {
      {"jordan-lie", 1000, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) { return jig::run_jordan_lie_suite(s, n, t); }},
      {"triple-identity", 1000, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_triple_identity_suite(s, n, t);
       }},
      {"triple-symmetry", 1000, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_triple_symmetry_suite(s, n, t);
       }},
      {"round-trip", 1000, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) { return jig::run_round_trip_suite(s, n, t); }},
      {"ac-agreement", 500, 0.0,
       [](Seed s, int n, double, const KrausMap*) { return jig::run_ac_agreement_suite(s, n); }},
      {"lift-agreement", 200, 1e-9,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_lift_agreement_suite(s, n, t);
       }},
      {"unitary-invariance", 500, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_unitary_invariance_suite(s, n, t);
       }},
      {"monotonicity", 1000, 1e-9,
       [](Seed s, int n, double t, const KrausMap* chan) {
         return jig::run_monotonicity_suite(s, n, t, chan);
       }},
      {"kadison-schwarz", 500, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_kadison_schwarz_suite(s, n, t);
       }},
      {"fisher-rao-analytic", 0, 1e-10,
       [](Seed s, int, double t, const KrausMap*) {
         return jig::run_fisher_rao_suite(s, TangentMode::Analytic, t);
       }},
      {"fisher-rao-fd", 0, 1e-6,
       [](Seed s, int, double t, const KrausMap*) {
         return jig::run_fisher_rao_suite(s, TangentMode::FiniteDifference, t);
       }},
      {"bures-helstrom", 500, 1e-9,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_bures_helstrom_suite(s, n, t);
       }},
      {"rank-one", 100, 1e-8,
       [](Seed s, int n, double t, const KrausMap*) { return jig::run_rank_one_suite(s, n, t); }},
      {"fubini-study", 100, 1e-8,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_fubini_study_suite(s, n, t);
       }},
      {"left-invariance", 100, 1e-10,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_left_invariance_suite(s, n, t);
       }},
      {"structure-dims", 0, 0.0,
       [](Seed s, int, double, const KrausMap*) { return jig::run_structure_dimension_suite(s); }},
      {"amari-cencov", 1000, 1e-12,
       [](Seed s, int n, double t, const KrausMap*) {
         return jig::run_amari_cencov_suite(s, n, t);
       }},
  };
  return suites;
}

const SuiteSpec& find_suite(const std::string& name) {
  for (const SuiteSpec& s : suite_registry())
    if (name == s.name) return s;
  throw ConfigError("unknown suite \"" + name + "\"");
}

void check_override_keys(const json& cfg, const char* field) {
  if (!cfg.contains(field)) return;
  const json& m = cfg.at(field);
  if (!m.is_object()) throw ConfigError(std::string(field) + ": expected a name-to-value map");
  for (const auto& item : m.items()) find_suite(item.key());
}

std::optional<jig::KrausMap> parse_channel(const json& cfg) {
  if (!cfg.contains("channel")) return std::nullopt;
  const json& c = cfg.at("channel");
  jig::AlgebraShape dom = parse_shape(c.at("domain"), "channel.domain");
  jig::AlgebraShape cod = parse_shape(c.at("codomain"), "channel.codomain");
  const json& fams = c.at("kraus");
  if (!fams.is_array() || static_cast<int>(fams.size()) != dom.block_count())
    throw ConfigError("channel.kraus: expected one operator family per block");
  std::vector<std::vector<jig::Matrix>> kraus;
  kraus.reserve(fams.size());
  for (std::size_t k = 0; k < fams.size(); ++k) {
    const std::string where = "channel.kraus[" + std::to_string(k) + "]";
    const json& fam = fams[k];
    if (!fam.is_array() || fam.empty())
      throw ConfigError(where + ": expected a non-empty array of matrices");
    std::vector<jig::Matrix> ops;
    ops.reserve(fam.size());
    for (std::size_t i = 0; i < fam.size(); ++i)
      ops.push_back(parse_complex_matrix(fam[i], where + "[" + std::to_string(i) + "]"));
    kraus.push_back(std::move(ops));
  }
  return jig::KrausMap(std::move(dom), std::move(cod), std::move(kraus));
}

std::string reports_to_csv(const std::vector<jig::OracleReport>& reports) {
  std::ostringstream os;
  os << "suite,max_abs_error,sample_count,tolerance,pass\n";
  for (const jig::OracleReport& r : reports)
    os << r.name << "," << fmt17(r.max_abs_error) << "," << r.sample_count << ","
       << fmt17(r.tolerance) << "," << (r.pass ? 1 : 0) << "\n";
  return os.str();
}

std::string reports_to_json(const std::vector<jig::OracleReport>& reports) {
  json out = json::array();
  for (const jig::OracleReport& r : reports) {
    json rec;
    rec["suite"] = r.name;
    rec["max_abs_error"] = r.max_abs_error;
    rec["sample_count"] = r.sample_count;
    rec["tolerance"] = r.tolerance;
    rec["pass"] = r.pass;
    out.push_back(std::move(rec));
  }
  return out.dump(2) + "\n";
}

// Runs the chosen suites (in parallel when asked; every suite seeds its own
// generator, so scheduling cannot change any result), prints one report line
// per suite, and writes the machine-readable report when --output is set.
int run_suites(const std::vector<const SuiteSpec*>& chosen, const json& cfg,
               const jig::KrausMap* channel, const CommonOpts& opt) {
  check_override_keys(cfg, "trials");
  check_override_keys(cfg, "tolerances");
  const json trials = cfg.value("trials", json::object());
  const json tols = cfg.value("tolerances", json::object());

  std::vector<jig::OracleReport> reports(chosen.size());
  auto run_one = [&](std::size_t i) {
    const SuiteSpec& s = *chosen[i];
    const int n = trials.value(s.name, s.trials);
    const double tol = tols.value(s.name, s.tol);
    reports[i] = s.run(opt.seed, n, tol, channel);
  };
  if (opt.jobs > 1 && chosen.size() > 1) {
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= chosen.size()) return;
        run_one(i);
      }
    };
    std::vector<std::thread> pool;
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(opt.jobs),
                                                      chosen.size());
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  } else {
    for (std::size_t i = 0; i < chosen.size(); ++i) run_one(i);
  }

  int passed = 0;
  for (const jig::OracleReport& r : reports) {
    std::cout << jig::format_report_line(r) << "\n";
    if (r.pass) ++passed;
  }
  std::cout << "passed " << passed << "/" << reports.size() << " suites\n";
  if (!opt.output.empty())
    emit(opt.format == "json" ? reports_to_json(reports) : reports_to_csv(reports), opt.output);
  return passed == static_cast<int>(reports.size()) ? 0 : 1;
}

int cmd_verify(const json& cfg, const CommonOpts& opt) {
  std::vector<const SuiteSpec*> chosen;
  if (!cfg.contains("suites") ||
      (cfg.at("suites").is_string() && cfg.at("suites").get<std::string>() == "all")) {
    for (const SuiteSpec& s : suite_registry()) chosen.push_back(&s);
  } else {
    const json& names = cfg.at("suites");
    if (!names.is_array() || names.empty())
      throw ConfigError("suites: expected \"all\" or a non-empty array of suite names");
    for (const json& name : names) {
      if (!name.is_string()) throw ConfigError("suites: names must be strings");
      chosen.push_back(&find_suite(name.get<std::string>()));
    }
  }
  const std::optional<jig::KrausMap> channel = parse_channel(cfg);
  return run_suites(chosen, cfg, channel ? &*channel : nullptr, opt);
}

int cmd_oracle_compare(const json& cfg, const CommonOpts& opt) {
  static const std::vector<std::pair<const char*, std::vector<const char*>>> groups = {
      {"lift", {"lift-agreement"}},
      {"fisher-rao", {"fisher-rao-analytic", "fisher-rao-fd"}},
      {"bures-helstrom", {"bures-helstrom"}},
      {"rank-one", {"rank-one", "fubini-study"}},
  };
  std::vector<std::string> wanted;
  if (!cfg.contains("comparisons") ||
      (cfg.at("comparisons").is_string() && cfg.at("comparisons").get<std::string>() == "all")) {
    for (const auto& g : groups) wanted.push_back(g.first);
  } else {
    const json& names = cfg.at("comparisons");
    if (!names.is_array() || names.empty())
      throw ConfigError("comparisons: expected \"all\" or a non-empty array of names");
    for (const json& name : names) {
      if (!name.is_string()) throw ConfigError("comparisons: names must be strings");
      wanted.push_back(name.get<std::string>());
    }
  }
  std::vector<const SuiteSpec*> chosen;
  for (const std::string& name : wanted) {
    bool found = false;
    for (const auto& g : groups) {
      if (name != g.first) continue;
      for (const char* suite : g.second) chosen.push_back(&find_suite(suite));
      found = true;
      break;
    }
    if (!found)
      throw ConfigError("unknown comparison \"" + name +
                        "\" (expected lift, fisher-rao, bures-helstrom or rank-one)");
  }
  return run_suites(chosen, cfg, nullptr, opt);
}

json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file: " + path);
  return json::parse(f);
}

void add_common_flags(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--config", opt.config, "JSON run configuration")->required();
  cmd->add_option("--seed", opt.seed, "64-bit seed for randomized suites (default 0)");
  cmd->add_option("--jobs", opt.jobs, "worker threads (default 1)")->check(CLI::PositiveNumber);
  cmd->add_option("--output", opt.output, "output path (default: stdout)");
  cmd->add_option("--format", opt.format, "output format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric evaluation and verification for Jordan information geometry"};
  app.require_subcommand(1);
  CommonOpts opt;
  CLI::App* eval = app.add_subcommand("eval-metric",
                                      "evaluate the pullback metric over a parameter grid");
  CLI::App* verify = app.add_subcommand("verify", "run the seeded property suites");
  CLI::App* compare = app.add_subcommand("oracle-compare",
                                         "compare production code paths against dense oracles");
  for (CLI::App* cmd : {eval, verify, compare}) add_common_flags(cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const json cfg = load_config(opt.config);
    if (eval->parsed()) return cmd_eval_metric(cfg, opt);
    if (verify->parsed()) return cmd_verify(cfg, opt);
    return cmd_oracle_compare(cfg, opt);
  } catch (const std::exception& e) {
    std::cerr << "jig: " << e.what() << "\n";
    return classify(e);
  }
}
