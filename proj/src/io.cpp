#include "bmir/io.hpp"

#include <fstream>
#include <sstream>

namespace bmir {

Json degree_json(const Degree& g) { return Json::array({g.D, g.d, g.dt}); }

Degree degree_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("degree", "expected [D, d, dt]");
  Degree g;
  g.D = j[0].get<std::vector<long>>();
  g.d = j[1].get<std::vector<long>>();
  g.dt = j[2].get<long>();
  return g;
}

Json series_json(const NovikovSeries& s) {
  Json out = Json::array();
  for (const auto& [g, v] : s.terms()) out.push_back({{"degree", degree_json(g)}, {"value", v.to_string()}});
  return out;
}

std::map<BaseDegree, ZRat> gamma_from_json(const Json& j, const Ring& ring) {
  if (!j.is_array()) throw ConfigError("", "expected a list of {degree, value}");
  std::map<BaseDegree, ZRat> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string where = "/" + std::to_string(i);
    try {
      Degree g = degree_from_json(j[i].at("degree"));
      for (long v : g.d)
        if (v != 0) throw ConfigError(where, "gamma terms carry base degrees only");
      if (g.dt != 0) throw ConfigError(where, "gamma terms carry base degrees only");
      out[g.D] += parse_zrat(j[i].at("value").get<std::string>(), ring);
    } catch (const Json::exception& e) {
      throw ConfigError(where, e.what());
    } catch (const ParseError& e) {
      throw ConfigError(where + "/value", e.what());
    }
  }
  return out;
}

std::string degree_key(const BaseDegree& D) {
  std::string s;
  for (std::size_t i = 0; i < D.size(); ++i) s += (i ? "," : "") + std::to_string(D[i]);
  return s;
}

OrderedJson ht_json(const HtTable& t) {
  OrderedJson out = OrderedJson::object();
  std::vector<BaseDegree> keys;
  for (const auto& [D, v] : t.ht) keys.push_back(D);
  std::sort(keys.begin(), keys.end());
  for (const auto& D : keys) out[degree_key(D)] = t.ht.at(D);
  return out;
}

Json model_json(const IAssembler& I) {
  Json strata = Json::array();
  for (std::size_t s = 0; s < I.strata().size(); ++s) {
    const Stratum& st = I.strata()[s];
    const Restriction& r = I.restrictions()[s];
    Json P = Json::array(), U = Json::array(), support = Json::array();
    for (const auto& p : r.P) P.push_back(p.to_string());
    for (const auto& u : r.U) U.push_back(u.to_string());
    for (const auto& q : mori_support(I.model(), st)) support.push_back(q.to_string());
    strata.push_back({{"name", st.name()},
                      {"over_A", st.over_A()},
                      {"P", P},
                      {"Pt", r.Pt.to_string()},
                      {"U", U},
                      {"euler", r.euler.to_string()},
                      {"component", r.component},
                      {"euler_geometric", r.euler_geometric.to_string()},
                      {"support", support}});
  }
  Json edges = Json::array();
  for (const auto& e : I.edges())
    edges.push_back({{"from", I.strata()[e.from].name()},
                     {"to", I.strata()[e.to].name()},
                     {"family", family_tag(e.family)},
                     {"chi", e.chi.to_string()},
                     {"d", e.d},
                     {"dt", e.dt}});
  return {{"dimension", total_dimension(I.model())}, {"strata", strata}, {"edges", edges}};
}

Json recursion_json(const RecursionCheckReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json j = {{"degree", degree_json(v.degree)}, {"equal", v.equal}, {"degenerate", v.degenerate}};
    if (!v.degenerate) {
      j["lhs"] = v.lhs;
      j["rhs"] = v.rhs;
    }
    if (!v.note.empty()) j["note"] = v.note;
    verdicts.push_back(j);
  }
  return {{"from", r.from}, {"to", r.to},           {"family", r.family},        {"k", r.k},
          {"pass", r.pass}, {"degenerate", r.degenerate}, {"verdicts", verdicts}};
}

Json support_json(const SupportReport& r) {
  return {{"stratum", r.stratum}, {"pass", r.pass}, {"extension", r.extension}, {"violations", r.violations}};
}

Json string_divisor_json(const StringDivisorReport& r, const std::vector<unsigned>& dims, long Dmax) {
  return {{"base", dims}, {"D_max", Dmax}, {"pass", r.pass}, {"failures", r.failures}};
}

Json ht_proposition_json(const HtPropositionReport& r) {
  Json computed = Json::object(), expected = Json::object();
  for (const auto& [D, v] : r.computed) computed[std::to_string(D)] = v;
  for (const auto& [D, v] : r.expected) expected[std::to_string(D)] = v;
  Json j = {{"n", r.n}, {"l", r.l}, {"status", r.status}, {"computed", computed}, {"expected", expected}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }
std::string dump_json(const OrderedJson& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bmir
