#include "liminf/report.hpp"

#include <sstream>

#include <json.hpp>

namespace liminf {

using nlohmann::ordered_json;

namespace {

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return to_string(v); }

Integer to_integer(const ordered_json& j) {
  Integer v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw Error("malformed integer in report");
  return v;
}

Rational to_rat(const ordered_json& j) { return parse_rational(j.get<std::string>()); }

Enclosure enclosure(const ordered_json& lo, const ordered_json& hi) {
  return {DirectedReal::parse(lo.get<std::string>(), Rounding::down),
          DirectedReal::parse(hi.get<std::string>(), Rounding::up)};
}

ordered_json enc(const Enclosure& e) { return {{"lo", e.lo().to_string()}, {"hi", e.hi().to_string()}}; }
Enclosure enc(const ordered_json& j) { return enclosure(j.at("lo"), j.at("hi")); }

template <class T, class F>
ordered_json list(const std::vector<T>& xs, F f) {
  ordered_json out = ordered_json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

template <class T, class F>
std::vector<T> unlist(const ordered_json& j, F f) {
  std::vector<T> out;
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

auto integer_str = [](const Integer& v) { return ordered_json(str(v)); };
auto rational_str = [](const Rational& v) { return ordered_json(str(v)); };

ordered_json to_json(const ConfigEcho& c) {
  return {{"name", c.name},
          {"sequence", c.sequence},
          {"tau", str(c.tau)},
          {"theta", list(c.theta, rational_str)},
          {"d", c.d},
          {"depth", c.depth},
          {"precision", c.prec},
          {"tasks", c.tasks}};
}

ConfigEcho config_from(const ordered_json& j) {
  ConfigEcho c;
  c.name = j.at("name").get<std::string>();
  c.sequence = j.at("sequence").get<std::string>();
  c.tau = to_rat(j.at("tau"));
  c.theta = unlist<Rational>(j.at("theta"), to_rat);
  c.d = j.at("d").get<std::size_t>();
  c.depth = j.at("depth").get<std::size_t>();
  c.prec = j.at("precision").get<unsigned>();
  c.tasks = j.at("tasks").get<std::vector<std::string>>();
  return c;
}

ordered_json to_json(const AnalyzeSection& a) {
  ordered_json j{{"terms", list(a.terms, integer_str)},
                 {"h_list", list(a.h_list, [](const Enclosure& e) { return enc(e); })},
                 {"alpha_list", list(a.alpha_list, [](const Enclosure& e) { return enc(e); })}};
  j["h_prefix"] = a.h_prefix ? enc(*a.h_prefix) : ordered_json(nullptr);
  j["alpha_last"] = a.alpha_last ? enc(*a.alpha_last) : ordered_json(nullptr);
  j["regime"] = a.regime;
  j["regime_index"] = a.regime_index;
  return j;
}

AnalyzeSection analyze_from(const ordered_json& j) {
  AnalyzeSection a;
  a.terms = unlist<Integer>(j.at("terms"), to_integer);
  a.h_list = unlist<Enclosure>(j.at("h_list"), [](const ordered_json& x) { return enc(x); });
  a.alpha_list = unlist<Enclosure>(j.at("alpha_list"), [](const ordered_json& x) { return enc(x); });
  if (!j.at("h_prefix").is_null()) a.h_prefix = enc(j.at("h_prefix"));
  if (!j.at("alpha_last").is_null()) a.alpha_last = enc(j.at("alpha_last"));
  a.regime = j.at("regime").get<std::string>();
  a.regime_index = j.at("regime_index").get<std::size_t>();
  return a;
}

ordered_json to_json(const EnumerateSection& e) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < e.levels.size(); ++i) {
    const auto& l = e.levels[i];
    rows.push_back({{"level", l.level},
                    {"q", str(e.q.at(i))},
                    {"count_min", str(l.count_min)},
                    {"count_max", str(l.count_max)},
                    {"max_len", str(l.max_len)},
                    {"min_gap", str(l.min_gap)}});
  }
  return {{"levels", rows}};
}

EnumerateSection enumerate_from(const ordered_json& j) {
  EnumerateSection e;
  for (const auto& row : j.at("levels")) {
    e.q.push_back(to_integer(row.at("q")));
    e.levels.push_back({row.at("level").get<std::size_t>(), to_integer(row.at("count_min")),
                        to_integer(row.at("count_max")), to_rat(row.at("max_len")),
                        to_rat(row.at("min_gap"))});
  }
  return e;
}

ordered_json to_json(const DimensionSection& d) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : d.rows) {
    ordered_json row{{"J", r.J},
                     {"N_min", str(r.N_min)},
                     {"N_max", str(r.N_max)},
                     {"side_lo", r.side.lo().to_string()},
                     {"side_hi", r.side.hi().to_string()},
                     {"dim_lo", r.upper.lo().to_string()},
                     {"dim_hi", r.upper.hi().to_string()}};
    row["M"] = r.M ? ordered_json(str(*r.M)) : ordered_json(nullptr);
    row["s_hat_lo"] = r.lower ? ordered_json(r.lower->lo().to_string()) : ordered_json(nullptr);
    row["s_hat_hi"] = r.lower ? ordered_json(r.lower->hi().to_string()) : ordered_json(nullptr);
    row["theory_lo"] = r.theory ? ordered_json(r.theory->lo().to_string()) : ordered_json(nullptr);
    row["theory_hi"] = r.theory ? ordered_json(r.theory->hi().to_string()) : ordered_json(nullptr);
    row["regime_ok"] = r.regime_ok;
    rows.push_back(std::move(row));
  }
  ordered_json j{{"rows", rows}};
  j["theoretical"] = d.theoretical ? enc(*d.theoretical) : ordered_json(nullptr);
  j["clamped"] = d.clamped;
  return j;
}

DimensionSection dimension_from(const ordered_json& j) {
  DimensionSection d;
  for (const auto& row : j.at("rows")) {
    DimensionRow r;
    r.J = row.at("J").get<std::size_t>();
    r.N_min = to_integer(row.at("N_min"));
    r.N_max = to_integer(row.at("N_max"));
    r.side = enclosure(row.at("side_lo"), row.at("side_hi"));
    r.upper = enclosure(row.at("dim_lo"), row.at("dim_hi"));
    if (!row.at("M").is_null()) r.M = to_integer(row.at("M"));
    if (!row.at("s_hat_lo").is_null()) r.lower = enclosure(row.at("s_hat_lo"), row.at("s_hat_hi"));
    if (!row.at("theory_lo").is_null()) r.theory = enclosure(row.at("theory_lo"), row.at("theory_hi"));
    r.regime_ok = row.at("regime_ok").get<bool>();
    d.rows.push_back(std::move(r));
  }
  if (!j.at("theoretical").is_null()) d.theoretical = enc(j.at("theoretical"));
  d.clamped = j.at("clamped").get<bool>();
  return d;
}

ordered_json to_json(const CantorSection& c) {
  return {{"depth", c.depth},
          {"branching", list(c.branching, integer_str)},
          {"explicit_depth", c.explicit_depth},
          {"min_separation", list(c.min_separation, rational_str)},
          {"certificate",
           {{"s", str(c.s)},
            {"n", c.n},
            {"seed", c.seed},
            {"max_ratio", enc(c.max_ratio)},
            {"worst_ball",
             {{"center", list(c.worst_center, rational_str)}, {"radius", enc(c.worst_radius)}}}}}};
}

CantorSection cantor_from(const ordered_json& j) {
  CantorSection c;
  c.depth = j.at("depth").get<std::size_t>();
  c.branching = unlist<Integer>(j.at("branching"), to_integer);
  c.explicit_depth = j.at("explicit_depth").get<std::size_t>();
  c.min_separation = unlist<Rational>(j.at("min_separation"), to_rat);
  const auto& cert = j.at("certificate");
  c.s = to_rat(cert.at("s"));
  c.n = cert.at("n").get<std::size_t>();
  c.seed = cert.at("seed").get<std::uint64_t>();
  c.max_ratio = enc(cert.at("max_ratio"));
  c.worst_center = unlist<Rational>(cert.at("worst_ball").at("center"), to_rat);
  c.worst_radius = enc(cert.at("worst_ball").at("radius"));
  return c;
}

ordered_json to_json(const MultiplicativeSection& m) {
  ordered_json squares = ordered_json::array();
  for (const auto& s : m.squares) squares.push_back({s.x, s.y, s.side});
  return {{"lower", enc(m.lower)},
          {"upper", enc(m.upper)},
          {"clamped", m.clamped},
          {"critical_s", str(m.critical_s)},
          {"cover",
           {{"K", m.K}, {"s", str(m.s)}, {"s_cost", enc(m.s_cost)}, {"unit_exponent", m.K}, {"squares", squares}}}};
}

MultiplicativeSection multiplicative_from(const ordered_json& j) {
  MultiplicativeSection m;
  m.lower = enc(j.at("lower"));
  m.upper = enc(j.at("upper"));
  m.clamped = j.at("clamped").get<bool>();
  m.critical_s = to_rat(j.at("critical_s"));
  const auto& cover = j.at("cover");
  m.K = cover.at("K").get<unsigned>();
  m.s = to_rat(cover.at("s"));
  m.s_cost = enc(cover.at("s_cost"));
  for (const auto& s : cover.at("squares")) {
    m.squares.push_back({s.at(0).get<std::uint64_t>(), s.at(1).get<std::uint64_t>(),
                         s.at(2).get<std::uint64_t>()});
  }
  return m;
}

}  // namespace

std::string report_to_json(const Report& r, int indent) {
  ordered_json j;
  j["version"] = r.version;
  j["status"] = r.status;
  j["config"] = to_json(r.config);
  if (r.analyze) j["analyze"] = to_json(*r.analyze);
  if (r.enumerate) j["enumerate"] = to_json(*r.enumerate);
  if (r.dimension) j["dimension"] = to_json(*r.dimension);
  if (r.cantor) j["cantor"] = to_json(*r.cantor);
  if (r.multiplicative) j["multiplicative"] = to_json(*r.multiplicative);
  j["warnings"] = r.warnings;
  if (r.timing_ms) {
    ordered_json t = ordered_json::object();
    for (const auto& [k, v] : *r.timing_ms) t[k] = v;
    j["timing_ms"] = t;
  }
  return j.dump(indent) + "\n";
}

Report report_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
    Report r;
    r.version = j.at("version").get<int>();
    r.status = j.at("status").get<std::string>();
    r.config = config_from(j.at("config"));
    if (j.contains("analyze")) r.analyze = analyze_from(j["analyze"]);
    if (j.contains("enumerate")) r.enumerate = enumerate_from(j["enumerate"]);
    if (j.contains("dimension")) r.dimension = dimension_from(j["dimension"]);
    if (j.contains("cantor")) r.cantor = cantor_from(j["cantor"]);
    if (j.contains("multiplicative")) r.multiplicative = multiplicative_from(j["multiplicative"]);
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<std::map<std::string, double>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
}

std::string levels_csv(const Report& r) {
  if (!r.enumerate) return {};
  std::ostringstream out;
  out << "level,count_min,count_max,max_len,min_gap\n";
  for (const auto& l : r.enumerate->levels) {
    out << l.level << ',' << l.count_min << ',' << l.count_max << ',' << str(l.max_len) << ','
        << str(l.min_gap) << '\n';
  }
  return out.str();
}

std::string dimension_csv(const Report& r) {
  if (!r.dimension) return {};
  auto down = [](const DirectedReal& v) { return directed_decimal(v.to_rational(), 12, Rounding::down); };
  auto up = [](const DirectedReal& v) { return directed_decimal(v.to_rational(), 12, Rounding::up); };
  std::ostringstream out;
  out << "J,N_min,N_max,side_lo,side_hi,dim_lo,dim_hi,M,s_hat_lo,s_hat_hi\n";
  for (const auto& row : r.dimension->rows) {
    out << row.J << ',' << row.N_min << ',' << row.N_max << ',' << down(row.side.lo()) << ','
        << up(row.side.hi()) << ',' << down(row.upper.lo()) << ',' << up(row.upper.hi()) << ','
        << (row.M ? str(*row.M) : "") << ',' << (row.lower ? down(row.lower->lo()) : "") << ','
        << (row.lower ? up(row.lower->hi()) : "") << '\n';
  }
  return out.str();
}

std::string cover_csv(const Report& r) {
  if (!r.multiplicative) return {};
  std::ostringstream out;
  out << "x,y,side\n";
  const Integer scale = Integer(1) << r.multiplicative->K;
  for (const auto& s : r.multiplicative->squares) {
    auto at = [&](std::uint64_t v) { return str(Rational(Integer(static_cast<unsigned long>(v)), scale)); };
    out << at(s.x) << ',' << at(s.y) << ',' << at(s.side) << '\n';
  }
  return out.str();
}

}  // namespace liminf
