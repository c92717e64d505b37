#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "covnum/cli.hpp"
#include "covnum/io.hpp"

using namespace covnum;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Unsupported;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

// Scratch directory removed at scope exit.
struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("covnum_test_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kGeometricS2 = R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "geometric", "a0": 1, "ratio": 0.5}})";

cli::RunConfig config(const std::string& command, const std::string& kernel) {
  cli::RunConfig c;
  c.command = command;
  c.kernel_path = kernel;
  return c;
}

int run_quiet(const cli::RunConfig& c, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(c, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("kernel specs parse and round-trip") {
    const KernelSpec k = parse_kernel_spec(kGeometricS2);
    CHECK(k.manifold.space_class == SpaceClass::Sphere);
    CHECK(k.manifold.d == 2);
    CHECK(std::get<Geometric>(k.model).ratio == 0.5);
    for (const char* text :
         {kGeometricS2,
          R"({"manifold": {"class": "cayley", "d": 16}, "model": {"type": "power_law", "c": 2, "p": 20, "a0": 1}})",
          R"({"manifold": {"class": "sphere", "d": 3}, "model": {"type": "gaussian_sphere", "rho": 2.5}})",
          R"({"manifold": {"class": "sphere", "d": 1}, "model": {"type": "gaussian_type", "delta": 0.25}})",
          R"({"manifold": {"class": "real_projective", "d": 3}, "model": {"type": "explicit", "coefficients": [1, 0, 0.5]}})"}) {
      const KernelSpec a = parse_kernel_spec(text);
      CHECK(kernel_to_json(kernel_from_json(kernel_to_json(a))) == kernel_to_json(a));
    }
  }

  TEST_CASE("parse errors name the field") {
    CHECK(kind_of([] { parse_kernel_spec("{not json"); }) == ErrorKind::ValidationError);
    CHECK(message_of([] { parse_kernel_spec("{not json"); }).starts_with("ValidationError: <root>"));
    auto msg = [](const char* text) { return message_of([&] { parse_kernel_spec(text); }); };
    CHECK(msg(R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "geometric", "a0": 1}})").starts_with("ValidationError: model.ratio"));
    CHECK(msg(R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "geometric", "a0": 1, "ratio": "x"}})")
              .starts_with("ValidationError: model.ratio"));
    CHECK(msg(R"({"manifold": {"class": "torus", "d": 2}, "model": {"type": "geometric", "a0": 1, "ratio": 0.5}})")
              .starts_with("ValidationError: manifold.class"));
    CHECK(msg(R"({"manifold": {"class": "sphere", "d": 2.5}, "model": {"type": "geometric", "a0": 1, "ratio": 0.5}})")
              .starts_with("ValidationError: manifold.d"));
    CHECK(msg(R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "spline"}})").starts_with("ValidationError: model.type"));
    CHECK(msg(R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "explicit", "coefficients": [1, "a"]}})")
              .starts_with("ValidationError: model.coefficients[1]"));
    CHECK(msg(R"({"model": {"type": "geometric", "a0": 1, "ratio": 0.5}})").starts_with("ValidationError: manifold"));
  }

  TEST_CASE("bound curve CSV round-trip") {
    const KernelSpec k = parse_kernel_spec(kGeometricS2);
    const std::vector<double> grid = log_grid(1e-5, 0.4, 9);
    const BoundCurve curve = bound_curve(k, grid);
    const std::string csv = bound_curve_csv(curve);
    CHECK(csv.starts_with("eps,ln_upper,m_upper,ln_lower,m_lower\n"));
    const std::vector<BoundPoint> back = parse_bound_curve_csv(csv);
    REQUIRE(back.size() == curve.points.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].eps == doctest::Approx(curve.points[i].eps).epsilon(1e-11));
      CHECK(back[i].ln_upper == doctest::Approx(curve.points[i].ln_upper).epsilon(1e-11));
      CHECK(back[i].m_upper == curve.points[i].m_upper);
      CHECK(back[i].ln_lower == doctest::Approx(curve.points[i].ln_lower).epsilon(1e-11));
      CHECK(back[i].m_lower == curve.points[i].m_lower);
    }
    CHECK(bound_curve_csv({k, back}) == csv);
    CHECK(kind_of([] { parse_bound_curve_csv("eps,upper\n"); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { parse_bound_curve_csv("eps,ln_upper,m_upper,ln_lower,m_lower\n0.1,2,x,1,1\n"); }) ==
          ErrorKind::ValidationError);
    const nlohmann::json j = bound_curve_json(curve);
    CHECK(j["points"].size() == grid.size());
    CHECK(j["kernel"]["model"]["type"] == "geometric");
  }

  TEST_CASE("report JSON shape") {
    const nlohmann::json r = report_json(asymptotic_constant(parse_kernel_spec(kGeometricS2), Regime::GeometricUpper));
    CHECK(r["regime"] == "geometric_upper");
    CHECK(r["constant"].get<double>() == doctest::Approx(16.6509518).epsilon(1e-8));
    CHECK(r["rate"]["log_inv_eps_exponent"] == 3.0);
    CHECK(r["requires_rescaling"] == false);
  }

  TEST_CASE("exit codes") {
    Scratch s;
    const std::string good = s.write("good.json", kGeometricS2);
    const std::string bad = s.write("bad.json", "{\"manifold\": ");
    const std::string mismatch = s.write(
        "mismatch.json", R"({"manifold": {"class": "complex_projective", "d": 4}, "model": {"type": "gaussian_type", "delta": 0.1}})");

    cli::RunConfig c = config("norms", bad);
    c.out_path = s.path("never.csv");
    std::string err;
    CHECK(run_quiet(c, nullptr, &err) == cli::kExitValidation);
    CHECK(err.find("<root>") != std::string::npos);
    CHECK_FALSE(fs::exists(*c.out_path));

    CHECK(run_quiet(config("norms", s.path("missing.json"))) == cli::kExitIo);
    CHECK(run_quiet(config("norms", mismatch)) == cli::kExitValidation);
    CHECK(run_quiet(config("explode", good)) == cli::kExitValidation);

    cli::RunConfig numeric = config("constants", good);
    numeric.regime = "power_upper";
    CHECK(run_quiet(numeric) == cli::kExitNumeric);

    cli::RunConfig unwritable = config("norms", good);
    unwritable.out_path = s.path("no/such/dir/out.csv");
    CHECK(run_quiet(unwritable) == cli::kExitIo);

    cli::RunConfig dims;
    dims.command = "dims";
    dims.manifold_class = "complex_projective";
    dims.d = 5;
    CHECK(run_quiet(dims) == cli::kExitValidation);
  }

  TEST_CASE("dims output") {
    cli::RunConfig c;
    c.command = "dims";
    c.manifold_class = "sphere";
    c.d = 2;
    c.k_max = 3;
    CHECK(cli::render(c) == "k,tau_k,dim_V_k\n0,1,1\n1,3,4\n2,5,9\n3,7,16\n");
    c.manifold_class = "cayley";
    c.d = 16;
    c.k_max = 1;
    CHECK(cli::render(c) == "k,tau_k,dim_V_k\n0,1,1\n1,26,27\n");
  }

  TEST_CASE("repeated runs write identical bytes") {
    Scratch s;
    const std::string good = s.write("good.json", kGeometricS2);
    for (const char* command : {"coeffs", "norms", "bounds", "constants", "empirical"}) {
      cli::RunConfig c = config(command, good);
      c.eps_grid = {0.05, 0.4, 4};
      c.ball_draws = 200;
      c.ambient_points = 64;
      c.out_path = s.path("one.out");
      REQUIRE(run_quiet(c) == cli::kExitOk);
      c.out_path = s.path("two.out");
      REQUIRE(run_quiet(c) == cli::kExitOk);
      const std::string one = slurp(s.path("one.out"));
      CHECK(!one.empty());
      CHECK(one == slurp(s.path("two.out")));
    }
  }

  TEST_CASE("constants for the Gaussian kernel") {
    Scratch s;
    const std::string path =
        s.write("g.json", R"({"manifold": {"class": "sphere", "d": 2}, "model": {"type": "gaussian_sphere", "rho": 2}})");
    const std::string text = cli::render(config("constants", path));
    CHECK(text.find("16.6509518") != std::string::npos);
    const nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc["reports"][0]["regime"] == "geometric_upper");
    CHECK(doc["reports"][1].contains("error"));

    const std::string g = cli::render(config("gaussian", path));
    const nlohmann::json gd = nlohmann::json::parse(g);
    CHECK(gd["upper_constant"].get<double>() == doctest::Approx(16.6509518).epsilon(1e-8));
    CHECK(gd["levels"][0]["lambda"].get<double>() > 0.0);
  }

  TEST_CASE("bounds command keeps the sandwich") {
    Scratch s;
    const std::string path = s.write("g.json", kGeometricS2);
    cli::RunConfig c = config("bounds", path);
    c.eps_grid = {1e-6, 0.5, 40};
    const std::vector<BoundPoint> pts = parse_bound_curve_csv(cli::render(c));
    REQUIRE(pts.size() == 40);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].ln_lower <= pts[i].ln_upper);
      if (i > 0) CHECK(pts[i].ln_upper <= pts[i - 1].ln_upper);
    }
    c.eps_grid = {0.5, 0.1, 4};
    CHECK(run_quiet(c) == cli::kExitValidation);
  }

  TEST_CASE("report command columns") {
    Scratch s;
    const std::string path = s.write("g.json", kGeometricS2);
    cli::RunConfig c = config("report", path);
    c.eps_grid = {0.1, 0.4, 3};
    c.ball_draws = 200;
    c.ambient_points = 64;
    const std::string text = cli::render(c);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "eps,ln_upper,ln_lower,upper_ratio,lower_ratio,packing_ln");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      CHECK(std::count(line.begin(), line.end(), ',') == 5);
      CHECK(line.back() != ',');  // packing column filled on S^2
    }
    CHECK(rows == 3);
  }
}
