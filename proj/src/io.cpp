#include "covnum/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "covnum/errors.hpp"

namespace covnum {
namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  fail(ErrorKind::ValidationError, field + ": " + why);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  const std::string field = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) invalid(path.empty() ? "<root>" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) invalid(field, "missing");
  return *it;
}

double number(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number()) invalid(path + "." + key, "expected a number");
  return v.get<double>();
}

// Rounded to 12 significant digits so that dumps carry no sub-contract noise.
json num(double v) {
  if (!std::isfinite(v)) return json(nullptr);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return json(std::strtod(buf, nullptr));
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

KernelSpec kernel_from_json(const json& j) {
  const json& mf = member(j, "", "manifold");
  const json& cls = member(mf, "manifold", "class");
  if (!cls.is_string()) invalid("manifold.class", "expected a string");
  const json& dj = member(mf, "manifold", "d");
  if (!dj.is_number_integer()) invalid("manifold.d", "expected an integer");
  SpaceClass sc;
  try {
    sc = space_class_from_string(cls.get<std::string>());
  } catch (const Error&) {
    invalid("manifold.class", "unknown class '" + cls.get<std::string>() + "'");
  }
  const ManifoldSpec manifold = make_manifold(sc, dj.get<int>());

  const json& model = member(j, "", "model");
  const json& type = member(model, "model", "type");
  if (!type.is_string()) invalid("model.type", "expected a string");
  const std::string t = type.get<std::string>();
  CoefficientModel cm;
  if (t == "geometric") {
    cm = Geometric{number(model, "model", "a0"), number(model, "model", "ratio")};
  } else if (t == "power_law") {
    cm = PowerLaw{number(model, "model", "c"), number(model, "model", "p"), number(model, "model", "a0")};
  } else if (t == "gaussian_sphere") {
    cm = GaussianSphere{number(model, "model", "rho")};
  } else if (t == "gaussian_type") {
    cm = GaussianType{number(model, "model", "delta")};
  } else if (t == "explicit") {
    const json& list = member(model, "model", "coefficients");
    if (!list.is_array()) invalid("model.coefficients", "expected an array");
    Explicit e;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_number()) invalid("model.coefficients[" + std::to_string(i) + "]", "expected a number");
      e.coefficients.push_back(list[i].get<double>());
    }
    cm = std::move(e);
  } else {
    invalid("model.type", "unknown model '" + t + "'");
  }
  return make_kernel(manifold, std::move(cm));
}

KernelSpec parse_kernel_spec(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::ValidationError, std::string("<root>: malformed JSON (") + e.what() + ")");
  }
  return kernel_from_json(j);
}

json kernel_to_json(const KernelSpec& spec) {
  json model = std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Geometric>) return {{"type", "geometric"}, {"a0", m.a0}, {"ratio", m.ratio}};
        else if constexpr (std::is_same_v<T, PowerLaw>)
          return {{"type", "power_law"}, {"c", m.c}, {"p", m.p}, {"a0", m.a0}};
        else if constexpr (std::is_same_v<T, GaussianSphere>) return {{"type", "gaussian_sphere"}, {"rho", m.rho}};
        else if constexpr (std::is_same_v<T, GaussianType>) return {{"type", "gaussian_type"}, {"delta", m.delta}};
        else return {{"type", "explicit"}, {"coefficients", m.coefficients}};
      },
      spec.model);
  return {{"manifold", {{"class", std::string(to_string(spec.manifold.space_class))}, {"d", spec.manifold.d}}},
          {"model", model}};
}

std::string bound_curve_csv(const BoundCurve& curve) {
  std::ostringstream out;
  out << kBoundCsvHeader << '\n';
  for (const BoundPoint& p : curve.points) {
    out << format_number(p.eps) << ',' << format_number(p.ln_upper) << ',' << p.m_upper << ','
        << format_number(p.ln_lower) << ',' << p.m_lower << '\n';
  }
  return out.str();
}

std::vector<BoundPoint> parse_bound_curve_csv(std::string_view text) {
  std::vector<BoundPoint> points;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kBoundCsvHeader) invalid("csv.header", "expected '" + std::string(kBoundCsvHeader) + "'");
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 5) invalid("csv.row" + std::to_string(row), "expected 5 columns");
    try {
      points.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stoull(cells[2]), std::stod(cells[3]),
                        std::stoull(cells[4])});
    } catch (const std::exception&) {
      invalid("csv.row" + std::to_string(row), "unparseable value");
    }
  }
  return points;
}

json bound_curve_json(const BoundCurve& curve) {
  json pts = json::array();
  for (const BoundPoint& p : curve.points) {
    pts.push_back({{"eps", num(p.eps)},
                   {"ln_upper", num(p.ln_upper)},
                   {"m_upper", p.m_upper},
                   {"ln_lower", num(p.ln_lower)},
                   {"m_lower", p.m_lower}});
  }
  return {{"kernel", kernel_to_json(curve.kernel)}, {"points", pts}};
}

json packing_json(const PackingEstimate& e) {
  return {{"eps", num(e.eps)},
          {"count", e.count},
          {"plan",
           {{"ambient_points", e.plan.ambient_points},
            {"ball_draws", e.plan.ball_draws},
            {"m", e.plan.m},
            {"seed", e.plan.seed}}}};
}

json report_json(const AsymptoticReport& r) {
  json params = json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) params[key] = num(*v);
  };
  put("theta", r.params.theta);
  put("delta", r.params.delta);
  put("gamma", r.params.gamma);
  put("c1", r.params.c1);
  put("rho", r.params.rho);
  put("c2", r.params.c2);
  return {{"regime", std::string(to_string(r.regime))},
          {"constant", num(r.constant)},
          {"rate", {{"inv_eps_exponent", num(r.inv_eps_exponent)}, {"log_inv_eps_exponent", num(r.log_exponent)}}},
          {"additive_offset", num(r.additive_offset)},
          {"requires_rescaling", r.requires_rescaling},
          {"params", params}};
}

}  // namespace covnum
