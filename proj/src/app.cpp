#include "bmir/app.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>

namespace bmir {

namespace fs = std::filesystem;

namespace {

const std::set<std::string> kTasks = {"build-model",       "compute-ht",          "assemble-I",
                                      "verify-recursion",  "verify-support",      "verify-divisor",
                                      "verify-ht-proposition", "verify-localization", "blowup-matrix",
                                      "gamma-hat"};

template <typename T>
T as(const Json& v, const std::string& where, const char* expected) {
  try {
    return v.get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(where, std::string("expected ") + expected);
  }
}

const Json* find(const Json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(where + "/" + it.key(), "unknown key");
}

Rational rational(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      Rational q(v.get<std::string>());
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
    }
  }
  throw ConfigError(where, "expected an integer or a rational string like \"1/2\"");
}

std::vector<Rational> rationals(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where, "expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], where + "/" + std::to_string(i)));
  return out;
}

IntMatrix int_matrix(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where, "expected a non-empty array of integer rows");
  IntMatrix m;
  for (std::size_t i = 0; i < v.size(); ++i) {
    m.push_back(as<IntRow>(v[i], where + "/" + std::to_string(i), "an array of integers"));
    if (m.back().size() != m.front().size()) throw ConfigError(where + "/" + std::to_string(i), "rows differ in length");
  }
  return m;
}

std::vector<unsigned> one_based(const Json& v, const std::string& where) {
  auto raw = as<std::vector<long>>(v, where, "an array of 1-based indices");
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] < 1) throw ConfigError(where + "/" + std::to_string(i), "indices are 1-based");
    out.push_back(static_cast<unsigned>(raw[i] - 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

long bound(const Json& obj, const std::string& where, const std::string& key, long def, long min) {
  const Json* v = find(obj, key);
  if (!v) return def;
  long x = as<long>(*v, where + "/" + key, "an integer");
  if (x < min) throw ConfigError(where + "/" + key, "must be at least " + std::to_string(min));
  return x;
}

PoleSource pole_source(const Json& v, const std::string& where) {
  std::string s = as<std::string>(v, where, "\"C\" or \"B\"");
  if (s == "C") return PoleSource::C;
  if (s == "B") return PoleSource::B;
  throw ConfigError(where, "expected \"C\" or \"B\"");
}

ModelSpec parse_model(const Json& j) {
  const std::string w = "/model";
  check_keys(j, w, {"matrix", "omega", "base", "lambda", "alpha", "blowup", "L", "im_caps"});
  ModelSpec s;
  if (!find(j, "matrix")) throw ConfigError(w, "missing matrix");
  s.matrix = int_matrix(j["matrix"], w + "/matrix");
  s.omega = find(j, "omega") ? rationals(j["omega"], w + "/omega") : std::vector<Rational>();
  if (find(j, "base")) s.base = as<std::vector<unsigned>>(j["base"], w + "/base", "an array of dimensions");
  if (find(j, "lambda")) s.lambda = as<std::vector<std::string>>(j["lambda"], w + "/lambda", "an array of class strings");
  if (!find(j, "alpha")) throw ConfigError(w, "missing alpha");
  s.alpha = one_based(j["alpha"], w + "/alpha");
  std::string mode = find(j, "blowup") ? as<std::string>(j["blowup"], w + "/blowup", "a string") : "none";
  if (mode == "none")
    s.mode = BlowupMode::None;
  else if (mode == "section")
    s.mode = BlowupMode::AlongSection;
  else if (mode == "divisor")
    s.mode = BlowupMode::AlongDivisor;
  else
    throw ConfigError(w + "/blowup", "expected none, section or divisor");
  if (find(j, "L")) s.L = as<std::vector<std::string>>(j["L"], w + "/L", "an array of class strings");
  if (find(j, "im_caps")) s.im_caps = as<std::vector<unsigned>>(j["im_caps"], w + "/im_caps", "an array of caps");
  try {
    build_model(s);
  } catch (const ParseError& e) {
    throw ConfigError(w, e.what());
  } catch (const ModelError& e) {
    throw ConfigError(w, e.what());
  }
  return s;
}

long gcd_of_coefficients(const std::vector<std::string>& L, const Ring& ring) {
  long g = 0;
  for (const auto& l : L) {
    CohClass cls = parse_class(l, ring);
    for (const auto& [mono, c] : cls.terms())
      if (c.is_constant() && c.constant_value().get_den() == 1) g = std::gcd(g, c.constant_value().get_num().get_si());
  }
  return g == 0 ? 1 : g;
}

std::string rational_text(const Rational& q) { return q.get_str(); }

}  // namespace

FibrationModel build_model(const ModelSpec& s) {
  Ring im;
  if (s.im_caps) im = make_ring(make_ring(s.base)->names, *s.im_caps);
  std::vector<Rational> omega = s.omega;
  if (omega.empty()) omega.assign(s.matrix.size(), Rational(1));
  return make_model(s.matrix, omega, s.base, s.lambda, s.alpha, s.mode, s.L, im);
}

RunConfig parse_config(const std::string& text, const fs::path& base_dir) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  check_keys(root, "", {"name", "model", "truncation", "ht", "gamma", "tasks", "specialize_lambda",
                        "ht_proposition", "divisor", "blowup_matrix", "gamma_hat", "fixtures"});
  RunConfig c;
  if (find(root, "name")) c.name = as<std::string>(root["name"], "/name", "a string");
  if (find(root, "model")) c.model = parse_model(root["model"]);
  const std::size_t rank = c.model ? c.model->base.size() : 0;
  c.Dmax.assign(rank, 0);
  if (const Json* t = find(root, "truncation")) {
    check_keys(*t, "/truncation", {"D_max", "d_max", "dt_max", "k_max"});
    if (find(*t, "D_max")) {
      c.Dmax = as<std::vector<long>>((*t)["D_max"], "/truncation/D_max", "an array of integers");
      if (c.Dmax.size() != rank) throw ConfigError("/truncation/D_max", "needs one entry per base factor");
      for (long v : c.Dmax)
        if (v < 0) throw ConfigError("/truncation/D_max", "entries must be non-negative");
    }
    c.dmax = bound(*t, "/truncation", "d_max", c.dmax, 1);
    c.dtmax = bound(*t, "/truncation", "dt_max", c.dtmax, 0);
    c.kmax = bound(*t, "/truncation", "k_max", c.kmax, 1);
  }
  if (const Json* h = find(root, "ht")) {
    check_keys(*h, "/ht", {"base", "L", "D_max", "sublattice_step", "pole_source", "im_caps"});
    HtSpec s;
    if (c.model) {
      s.base = c.model->base;
      s.L = c.model->L;
      s.im_caps = c.model->im_caps;
    }
    if (find(*h, "base")) s.base = as<std::vector<unsigned>>((*h)["base"], "/ht/base", "an array of dimensions");
    if (find(*h, "L")) s.L = as<std::vector<std::string>>((*h)["L"], "/ht/L", "an array of class strings");
    s.Dmax = find(*h, "D_max") ? as<std::vector<long>>((*h)["D_max"], "/ht/D_max", "an array of integers") : c.Dmax;
    if (s.Dmax.size() != s.base.size()) throw ConfigError("/ht/D_max", "needs one entry per base factor");
    if (find(*h, "im_caps")) s.im_caps = as<std::vector<unsigned>>((*h)["im_caps"], "/ht/im_caps", "an array of caps");
    try {
      s.step = find(*h, "sublattice_step") ? bound(*h, "/ht", "sublattice_step", 1, 1)
                                           : gcd_of_coefficients(s.L, make_ring(s.base));
    } catch (const ParseError& e) {
      throw ConfigError("/ht/L", e.what());
    }
    if (find(*h, "pole_source")) s.source = pole_source((*h)["pole_source"], "/ht/pole_source");
    c.ht = s;
  }
  if (const Json* g = find(root, "gamma")) {
    fs::path p = as<std::string>(*g, "/gamma", "a path string");
    c.gamma_path = p.is_absolute() ? p : base_dir / p;
  }
  if (find(root, "tasks")) c.tasks = as<std::vector<std::string>>(root["tasks"], "/tasks", "an array of task names");
  for (std::size_t i = 0; i < c.tasks.size(); ++i)
    if (!kTasks.count(c.tasks[i])) throw ConfigError("/tasks/" + std::to_string(i), "unknown task " + c.tasks[i]);
  if (find(root, "specialize_lambda"))
    c.specialize_lambda = as<bool>(root["specialize_lambda"], "/specialize_lambda", "a boolean");
  if (const Json* h = find(root, "ht_proposition")) {
    check_keys(*h, "/ht_proposition", {"cases", "D_max", "pole_source"});
    auto cases = as<std::vector<std::vector<long>>>(find(*h, "cases") ? (*h)["cases"] : Json::array(),
                                                   "/ht_proposition/cases", "an array of [n, l] pairs");
    for (std::size_t i = 0; i < cases.size(); ++i) {
      if (cases[i].size() != 2 || cases[i][0] < 1 || cases[i][1] < 1)
        throw ConfigError("/ht_proposition/cases/" + std::to_string(i), "expected [n, l] with n, l >= 1");
      c.ht_cases.emplace_back(static_cast<unsigned>(cases[i][0]), cases[i][1]);
    }
    c.ht_case_Dmax = bound(*h, "/ht_proposition", "D_max", c.ht_case_Dmax, 1);
    if (find(*h, "pole_source")) c.ht_case_source = pole_source((*h)["pole_source"], "/ht_proposition/pole_source");
  }
  if (const Json* d = find(root, "divisor")) {
    check_keys(*d, "/divisor", {"bases", "D_max"});
    if (find(*d, "bases"))
      c.divisor_bases = as<std::vector<std::vector<unsigned>>>((*d)["bases"], "/divisor/bases", "an array of dimension lists");
    c.divisor_Dmax = bound(*d, "/divisor", "D_max", c.divisor_Dmax, 0);
  }
  if (const Json* b = find(root, "blowup_matrix")) {
    check_keys(*b, "/blowup_matrix", {"matrix", "omega", "center", "expected"});
    BlowupSpec s;
    if (!find(*b, "matrix") || !find(*b, "center")) throw ConfigError("/blowup_matrix", "needs matrix and center");
    s.matrix = int_matrix((*b)["matrix"], "/blowup_matrix/matrix");
    s.omega = find(*b, "omega") ? rationals((*b)["omega"], "/blowup_matrix/omega")
                                : std::vector<Rational>(s.matrix.size(), Rational(1));
    s.center = one_based((*b)["center"], "/blowup_matrix/center");
    if (find(*b, "expected")) s.expected = int_matrix((*b)["expected"], "/blowup_matrix/expected");
    c.blowup = s;
  }
  if (const Json* g = find(root, "gamma_hat")) {
    check_keys(*g, "/gamma_hat", {"order"});
    c.gamma_hat_order = static_cast<int>(bound(*g, "/gamma_hat", "order", 3, 1));
  }
  if (const Json* f = find(root, "fixtures")) {
    check_keys(*f, "/fixtures", {"corrupt_support"});
    if (find(*f, "corrupt_support"))
      c.corrupt_support = as<std::string>((*f)["corrupt_support"], "/fixtures/corrupt_support", "a stratum name");
  }
  for (const auto& t : c.tasks) {
    bool needs_model = t == "build-model" || t == "assemble-I" || t == "verify-recursion" || t == "verify-support" ||
                       t == "verify-localization";
    if (needs_model && !c.model) throw ConfigError("/tasks", "task " + t + " needs a model block");
    if (t == "compute-ht" && !c.ht && !(c.model && !c.model->L.empty()))
      throw ConfigError("/tasks", "compute-ht needs an ht block or a model with L");
    if (t == "blowup-matrix" && !c.blowup) throw ConfigError("/tasks", "blowup-matrix needs a blowup_matrix block");
  }
  if (!c.ht && c.model && !c.model->L.empty()) {
    HtSpec s;
    s.base = c.model->base;
    s.L = c.model->L;
    s.Dmax = c.Dmax;
    s.im_caps = c.model->im_caps;
    s.step = gcd_of_coefficients(s.L, make_ring(s.base));
    c.ht = s;
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::string text;
  try {
    text = read_text(path);
  } catch (const IoError& e) {
    throw ConfigError(path.string(), e.what());
  }
  try {
    return parse_config(text, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + (e.location.empty() ? "" : ":" + e.location),
                      std::string(e.what()).substr(e.location.empty() ? 0 : e.location.size() + 2));
  }
}

RunConfig demo_quintic_config() {
  RunConfig c;
  c.name = "demo-quintic";
  HtSpec s;
  s.base = {4};
  s.L = {"5*P"};
  s.Dmax = {20};
  s.step = 5;
  c.ht = s;
  c.tasks = {"compute-ht"};
  return c;
}

RunConfig demo_blowup_matrix_config() {
  RunConfig c;
  c.name = "demo-blowup-matrix";
  const long a1 = 1, a2 = 2, a3 = 3;
  BlowupSpec s;
  s.matrix = {{1, 1, 1, -a1, -a2, -a3}, {0, 0, 0, 1, 1, 1}};
  s.omega = {Rational(a3 + 2), Rational(1)};
  s.center = {0, 3, 4};  // [0,0,1] over A = {z_1 = 0}
  s.expected = IntMatrix{{1, 1, 1, -a1, -a2, -a3, 0}, {0, 0, 0, 1, 1, 1, 0}, {1, 0, 0, 1, 1, 0, -1}};
  c.blowup = s;
  c.tasks = {"blowup-matrix"};
  return c;
}

namespace {

struct Runner {
  const RunConfig& cfg;
  const RunOptions& opts;
  std::ostream& table;
  RunResult res;
  std::optional<FibrationModel> model;
  std::optional<HtTable> ht;
  std::optional<IAssembler> assembler;

  void emit(const std::string& file, const std::string& text) {
    fs::path p = opts.out_dir / file;
    write_text(p, text);
    res.artifacts.push_back(p);
  }
  void row(const std::string& task, bool ok, const std::string& detail) {
    table << std::left << std::setw(24) << task << std::setw(6) << (ok ? "ok" : "FAIL") << detail << "\n";
    if (!ok) {
      res.exit_code = 1;
      res.failures.push_back(task + ": " + detail);
    }
  }

  const FibrationModel& get_model() {
    if (!model) model = build_model(*cfg.model);
    return *model;
  }
  const HtTable& get_ht() {
    if (!ht) {
      const HtSpec& s = *cfg.ht;
      JFunction J = j_projective(s.base, s.Dmax);
      std::vector<CohClass> L;
      for (const auto& l : s.L) L.push_back(parse_class(l, J.ring));
      HtOptions o;
      o.sublattice = multiples_of(s.step);
      o.source = s.source;
      o.im_ring = s.im_caps ? make_ring(J.ring->names, *s.im_caps) : default_im_ring(s.base);
      ht = ht_function(quantum_lefschetz_twist(J, L), o);
    }
    return *ht;
  }
  IFunctionInput i_input(const FibrationModel& m) {
    IFunctionInput in{j_projective(m.base_dims, cfg.Dmax), 0, {}};
    if (m.mode == BlowupMode::AlongDivisor) {
      auto it = get_ht().ht.find(cfg.Dmax);
      in.ht = it == get_ht().ht.end() ? 0 : it->second;
      if (cfg.gamma_path) {
        Json g;
        try {
          g = Json::parse(read_text(*cfg.gamma_path));
        } catch (const Json::parse_error& e) {
          throw ConfigError(cfg.gamma_path->string(), e.what());
        } catch (const IoError& e) {
          throw ConfigError("/gamma", e.what());
        }
        try {
          in.gamma = gamma_from_json(g, m.base_ring);
        } catch (const ConfigError& e) {
          std::string what = e.what();
          if (!e.location.empty()) what = what.substr(e.location.size() + 2);
          throw ConfigError(cfg.gamma_path->string() + ":" + e.location, what);
        }
      }
    }
    return in;
  }
  const IAssembler& get_assembler() {
    if (!assembler) assembler.emplace(get_model(), i_input(get_model()));
    return *assembler;
  }
  SeriesBounds bounds() const { return SeriesBounds{cfg.Dmax, cfg.dmax, cfg.dtmax}; }

  void build_model_task() {
    const IAssembler& I = get_assembler();
    emit("model.json", dump_json(model_json(I)));
    row("build-model", true, std::to_string(I.strata().size()) + " strata, " + std::to_string(I.edges().size()) + " edges");
  }

  void compute_ht_task() {
    const HtTable& t = get_ht();
    emit("ht.json", dump_json(ht_json(t)));
    std::string values;
    for (const auto& D : t.order)
      if (t.ht.count(D)) values += (values.empty() ? "" : " ") + degree_key(D) + ":" + std::to_string(t.ht.at(D));
    row("compute-ht", true, values);
  }

  void assemble_task() {
    const IAssembler& I = get_assembler();
    Json out = Json::object();
    std::size_t terms = 0;
    for (std::size_t s = 0; s < I.strata().size(); ++s) {
      NovikovSeries ser = I.pullback(s, bounds());
      terms += ser.terms().size();
      out[I.strata()[s].name()] = {{"extension_truncated", ser.extension_truncated}, {"terms", series_json(ser)}};
    }
    emit("ifunction.json", dump_json(out));
    row("assemble-I", true, std::to_string(terms) + " terms over " + std::to_string(I.strata().size()) + " strata");
  }

  void recursion_task() {
    bool specialize = opts.specialize_lambda || cfg.specialize_lambda;
    std::vector<RecursionCheckReport> reports;
    std::optional<std::vector<Rational>> point;
    for (std::size_t attempt = 0;; ++attempt) {
      std::optional<IAssembler> local;
      const IAssembler* I = nullptr;
      if (specialize) {
        point = prime_point(static_cast<std::size_t>(get_model().N), attempt);
        FibrationModel m = specialize_model(get_model(), *point);
        local.emplace(m, i_input(m));
        I = &*local;
      } else {
        I = &get_assembler();
      }
      std::vector<std::pair<std::size_t, long>> jobs;
      for (std::size_t e = 0; e < I->edges().size(); ++e)
        for (long k = 1; k <= cfg.kmax; ++k) jobs.emplace_back(e, k);
      reports.assign(jobs.size(), {});
      parallel_for(jobs.size(), opts.jobs, [&](std::size_t i) {
        reports[i] = check_recursion(*I, I->edges()[jobs[i].first], jobs[i].second, bounds());
      });
      std::size_t degenerate = 0;
      for (const auto& r : reports) degenerate += r.degenerate;
      // a vanishing denominator at a specialized point: retry with other primes
      if (!specialize || degenerate == 0 || attempt == 4) break;
    }
    Json list = Json::array();
    std::size_t verdicts = 0, degenerate = 0, failed = 0;
    for (const auto& r : reports) {
      list.push_back(recursion_json(r));
      verdicts += r.verdicts.size();
      degenerate += r.degenerate;
      failed += !r.pass;
    }
    Json lam = nullptr;
    if (point) {
      lam = Json::array();
      for (const auto& q : *point) lam.push_back(rational_text(q));
    }
    emit("recursion.json", dump_json(Json{{"lambda_point", lam}, {"reports", list}}));
    row("verify-recursion", failed == 0,
        std::to_string(reports.size()) + " edge checks, " + std::to_string(verdicts) + " degrees, " +
            std::to_string(failed) + " failed, " + std::to_string(degenerate) + " degenerate" +
            (point ? ", specialized" : ""));
  }

  void support_task() {
    const IAssembler& I = get_assembler();
    Json list = Json::array();
    std::vector<std::string> bad;
    bool found = !cfg.corrupt_support;
    for (std::size_t s = 0; s < I.strata().size(); ++s) {
      NovikovSeries ser = I.pullback(s, bounds());
      if (cfg.corrupt_support && *cfg.corrupt_support == I.strata()[s].name()) {
        // an effective-looking term far outside the cone
        Degree g{cfg.Dmax, std::vector<long>(I.model().K, -cfg.dmax), cfg.dtmax};
        ser.set(g, ZRat::z_power(ser.ring(), 1));
        found = true;
      }
      SupportReport rep = check_support(I, s, ser);
      if (!rep.pass) bad.push_back(I.strata()[s].name());
      list.push_back(support_json(rep));
    }
    if (!found) throw ConfigError("/fixtures/corrupt_support", "no stratum named " + *cfg.corrupt_support);
    emit("support.json", dump_json(list));
    std::string detail = std::to_string(I.strata().size()) + " strata";
    for (const auto& b : bad) detail += ", outside the cone on " + b;
    row("verify-support", bad.empty(), detail);
  }

  void divisor_task() {
    std::vector<std::vector<unsigned>> bases = cfg.divisor_bases;
    if (bases.empty() && cfg.model) bases.push_back(cfg.model->base);
    if (bases.empty() && cfg.ht) bases.push_back(cfg.ht->base);
    Json list = Json::array();
    bool ok = true;
    for (const auto& dims : bases) {
      JFunction J = j_projective(dims, std::vector<long>(dims.size(), cfg.divisor_Dmax));
      auto rep = check_string_divisor(J);
      ok = ok && rep.pass;
      list.push_back(string_divisor_json(rep, dims, cfg.divisor_Dmax));
    }
    emit("divisor.json", dump_json(list));
    row("verify-divisor", ok, std::to_string(bases.size()) + " bases up to D=" + std::to_string(cfg.divisor_Dmax));
  }

  void ht_proposition_task() {
    Json list = Json::array();
    bool ok = true;
    std::string detail;
    for (const auto& [n, l] : cfg.ht_cases) {
      auto rep = check_ht_proposition(n, l, cfg.ht_case_Dmax, cfg.ht_case_source);
      ok = ok && rep.status != "fail";
      list.push_back(ht_proposition_json(rep));
      detail += (detail.empty() ? "" : " ") + std::string("(") + std::to_string(n) + "," + std::to_string(l) + "):" + rep.status;
    }
    emit("ht_proposition.json", dump_json(list));
    row("verify-ht-proposition", ok, detail);
  }

  void localization_task() {
    const IAssembler& I = get_assembler();
    const FibrationModel& m = I.model();
    long dim = total_dimension(m);
    Json list = Json::array();
    bool ok_all = true;
    auto record = [&](const LocalizationReport& rep, const std::optional<Scalar>& expected) {
      Json contrib = Json::object(), table_contrib = Json::object();
      for (const auto& [n, v] : rep.contributions) contrib[n] = v.to_string();
      for (const auto& [n, v] : rep.table_contributions) table_contrib[n] = v.to_string();
      bool ok = !expected || rep.total == *expected;
      ok_all = ok_all && ok;
      Json j = {{"integrand", rep.description}, {"total", rep.total.to_string()}, {"polynomial", rep.polynomial},
                {"contributions", contrib}, {"table_total", rep.table_total.to_string()},
                {"table_contributions", table_contrib}, {"pass", ok}};
      if (expected) j["expected"] = expected->to_string();
      list.push_back(j);
    };
    auto one = atiyah_bott_integrate(I, [](const Stratum& st, const Restriction&, bool) {
      return CohClass(st.ring, Scalar(1));
    }, "1");
    record(one, dim > 0 ? std::optional<Scalar>(Scalar(0)) : std::nullopt);
    // fixed points of a generic fiber: blowing up a point of a toric r-fold adds r - 1
    long fiber_points = static_cast<long>(fixed_points(m).size());
    if (m.mode == BlowupMode::AlongSection) fiber_points += m.N - m.K - 1;
    auto euler = atiyah_bott_integrate(I, [&](const Stratum& st, const Restriction& r, bool) {
      CohClass pt(st.ring, Scalar(1));
      for (unsigned i = 0; i < m.base_rank(); ++i) pt = pt * CohClass::gen(st.ring, i).pow(m.base_dims[i]);
      return r.euler_geometric * pt;
    }, "normal-euler-times-base-point");
    record(euler, Scalar(fiber_points));

    // every monomial of degree <= dim in the divisor classes U_j, P~ and the base generators
    std::vector<LinearClass> gens;
    std::vector<std::string> names;
    for (long j = 0; j < m.N; ++j) {
      gens.push_back(U_class(m, static_cast<unsigned>(j)));
      names.push_back("U" + std::to_string(j + 1));
    }
    if (m.mode != BlowupMode::None) {
      LinearClass pt;
      pt.p.assign(m.K, Rational(0));
      pt.pt = 1;
      pt.base = CohClass(m.base_ring);
      gens.push_back(pt);
      names.push_back("Pt");
    }
    for (unsigned i = 0; i < m.base_rank(); ++i) {
      LinearClass h;
      h.p.assign(m.K, Rational(0));
      h.base = CohClass::gen(m.base_ring, i);
      gens.push_back(h);
      names.push_back(m.base_ring->names[i]);
    }
    std::size_t count = 0;
    std::vector<std::string> bad;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, long)> rec = [&](std::size_t start, long left) {
      if (left == 0) {
        ++count;
        auto rep = atiyah_bott_integrate(I, [&](const Stratum& st, const Restriction& r, bool geometric) {
          Restriction g = r;
          if (geometric) g.Pt = r.Pt_geometric;
          CohClass v(st.ring, Scalar(1));
          for (std::size_t idx : cur) v = v * gens[idx].restrict_to(g, st.ring);
          return v;
        }, "monomial");
        bool ok = rep.polynomial && rep.total.is_constant() &&
                  (static_cast<long>(cur.size()) == dim || rep.total.is_zero());
        if (!ok) {
          std::string t;
          for (std::size_t idx : cur) t += (t.empty() ? "" : "*") + names[idx];
          bad.push_back((t.empty() ? "1" : t) + " = " + rep.total.to_string());
        }
        return;
      }
      for (std::size_t g = start; g < gens.size(); ++g) {
        cur.push_back(g);
        rec(g, left - 1);
        cur.pop_back();
      }
    };
    for (long d = 0; d <= dim; ++d) rec(0, d);
    ok_all = ok_all && bad.empty();
    list.push_back({{"integrand", "monomials up to the top degree"}, {"count", count}, {"pass", bad.empty()}, {"failures", bad}});
    emit("localization.json", dump_json(list));
    row("verify-localization", ok_all,
        "1 -> " + one.total.to_string() + ", euler*pt -> " + euler.total.to_string() + ", " + std::to_string(count) +
            " monomials");
  }

  void blowup_task() {
    const BlowupSpec& s = *cfg.blowup;
    IntMatrix out;
    try {
      out = blowup_matrix(s.matrix, s.omega, s.center);
    } catch (const ModelError& e) {
      throw ConfigError("/blowup_matrix", e.what());
    }
    auto c1 = c1_row_sums(out), c1X = c1_row_sums(s.matrix);
    bool pullback = std::equal(c1X.begin(), c1X.end(), c1.begin()) &&
                    c1.back() == static_cast<long>(s.center.size()) - 1;
    std::vector<unsigned> center1;
    for (unsigned j : s.center) center1.push_back(j + 1);
    Json j = {{"input", s.matrix}, {"center", center1}, {"matrix", out}, {"c1", c1}, {"c1_input", c1X},
              {"c1_is_pullback_plus_multiple_of_new_class", pullback}};
    bool ok = pullback;
    if (s.expected) {
      bool same = same_row_lattice(out, *s.expected);
      j["expected"] = *s.expected;
      j["matches_expected"] = same;
      ok = ok && same;
    }
    emit("blowup_matrix.json", dump_json(j));
    std::string rows;
    for (const auto& r : out) {
      rows += "[";
      for (std::size_t i = 0; i < r.size(); ++i) rows += (i ? " " : "") + std::to_string(r[i]);
      rows += "]";
    }
    row("blowup-matrix", ok, rows + " c1 last = " + std::to_string(c1.back()));
  }

  void gamma_hat_task() {
    auto t = gamma_hat_log_tail(cfg.gamma_hat_order);
    Json coeffs = Json::array();
    for (const auto& q : t.coefficients) coeffs.push_back(rational_text(q));
    emit("gamma_hat.json", dump_json(Json{{"order", t.order}, {"coefficients", coeffs}}));
    std::string d;
    for (const auto& q : t.coefficients) d += (d.empty() ? "" : " ") + rational_text(q);
    row("gamma-hat", true, d);
  }
};

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts, std::ostream& table) {
  Runner r{cfg, opts, table, {}, {}, {}, {}};
  for (const auto& t : cfg.tasks) {
    try {
      if (t == "build-model") r.build_model_task();
      else if (t == "compute-ht") r.compute_ht_task();
      else if (t == "assemble-I") r.assemble_task();
      else if (t == "verify-recursion") r.recursion_task();
      else if (t == "verify-support") r.support_task();
      else if (t == "verify-divisor") r.divisor_task();
      else if (t == "verify-ht-proposition") r.ht_proposition_task();
      else if (t == "verify-localization") r.localization_task();
      else if (t == "blowup-matrix") r.blowup_task();
      else if (t == "gamma-hat") r.gamma_hat_task();
    } catch (const ModelError& e) {
      throw ConfigError("/model", e.what());
    } catch (const ParseError& e) {
      throw ConfigError(t, e.what());
    }
  }
  return r.res;
}

}  // namespace bmir
