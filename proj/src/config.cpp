#include "fraclaw/harness.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace fraclaw {

using nlohmann::json;

namespace {

json riemann(double left, double right, std::optional<double> center = std::nullopt)
{
  json j{{"kind", "riemann"}, {"left", left}, {"right", right}, {"x0", 0.0}};
  if (center) { j["center"] = *center; }
  return j;
}

json base(std::string const &name, std::string const &scheme, json flux, json alpha, double a, double b, double h, double dt,
          double T, std::string const &bc, json initial)
{
  return json{{"name", name},
              {"scheme", scheme},
              {"limiter", "minmod"},
              {"flux", std::move(flux)},
              {"alpha", std::move(alpha)},
              {"grid", {{"x_left", a}, {"x_right", b}, {"h", h}}},
              {"dt", dt},
              {"T", T},
              {"boundary", bc},
              {"initial", std::move(initial)},
              {"sweep_tol", 1e-12},
              {"sweep_max", 100}};
}

json const advection = {{"kind", "linear_advection"}, {"a", 1.0}};
json const burgers_flux = {{"kind", "burgers"}};

std::map<std::string, json> const &catalog()
{
  static std::map<std::string, json> const presets = [] {
    std::map<std::string, json> p;
    // First-order explicit stability run, alpha = 0.9 (converging member of the published pair).
    p["advection-riemann"] = base("advection-riemann", "explicit1", advection, 0.9, -2, 2, 0.01, 0.005, 0.2, "outflow", riemann(2, 1));
    // MUSCL stability run, alpha = 0.9.
    p["advection-riemann-muscl"] =
      base("advection-riemann-muscl", "muscl", advection, 0.9, -2, 2, 0.01, 0.002, 0.2, "outflow", riemann(2, 1));
    // Base configs for the spatial convergence studies (sweep the dx axis).
    p["convergence-explicit1"] =
      base("convergence-explicit1", "explicit1", advection, 0.8, -2, 2, 0.01, 1e-4, 0.2, "outflow", riemann(2, 1));
    p["convergence-muscl"] = base("convergence-muscl", "muscl", advection, 0.8, -2, 2, 0.01, 1e-4, 0.2, "outflow",
                                  json{{"kind", "gaussian"}, {"amplitude", 1.0}, {"width", 10.0}, {"offset", 1.0}});
    // Implicit upwind, alpha = 0.2: stability in dt and convergence in dx.
    p["implicit-advection"] =
      base("implicit-advection", "implicit", advection, 0.2, -2, 2, 0.01, 0.01, 0.2, "outflow", riemann(2, 1));
    p["burgers-sine"] = base("burgers-sine", "implicit", burgers_flux, 0.5, -1, 1, 0.01, 0.01, 0.5, "periodic", json{{"kind", "sine"}});
    // Profiles at T = 0.2 for a family of alpha (sweep the alpha axis).
    p["alpha-family-advection"] =
      base("alpha-family-advection", "implicit", advection, 0.5, -2, 2, 0.01, 0.01, 0.2, "outflow", riemann(2, 1));
    p["alpha-family-burgers"] =
      base("alpha-family-burgers", "implicit", burgers_flux, 0.5, -1, 1, 0.01, 0.01, 0.2, "periodic", json{{"kind", "sine"}});
    // Inhomogeneous memory for advection of a cosine bump.
    for (auto const &[tag, lam] : {std::pair{"0.5", 0.5}, std::pair{"2.4", 2.4}, std::pair{"5.3", 5.3}}) {
      std::string const name = std::string("variable-alpha-advection-") + tag;
      p[name] = base(name, "implicit", advection, json{{"kind", "gaussian_dip"}, {"lambda", lam}, {"variant", "printed"}}, -2, 2, 0.01,
                     0.01, 1.0, "outflow", json{{"kind", "cosine_bump"}});
    }
    p["burgers-variable-alpha"] = base("burgers-variable-alpha", "implicit", burgers_flux, json{{"kind", "burgers_dip"}}, -1, 1, 0.01,
                                       0.01, 0.5, "periodic", json{{"kind", "sine"}});
    p["burgers-classical"] =
      base("burgers-classical", "implicit", burgers_flux, 1.0, -1, 1, 0.01, 0.01, 0.5, "periodic", json{{"kind", "sine"}});
    p["burgers-riemann-nonuniqueness"] = base("burgers-riemann-nonuniqueness", "implicit", burgers_flux, 0.8, -0.5, 0.5, 0.001, 0.0002,
                                              0.02, "outflow", riemann(-1, 1, 0.0));
    return p;
  }();
  return presets;
}

double number(json const &j, char const *key)
{
  if (!j.contains(key) || !j.at(key).is_number()) { throw ConfigError(std::string("missing numeric key '") + key + "'"); }
  return j.at(key).get<double>();
}

double number_or(json const &j, char const *key, double fallback)
{
  if (!j.contains(key)) { return fallback; }
  if (!j.at(key).is_number()) { throw ConfigError(std::string("key '") + key + "' must be numeric"); }
  return j.at(key).get<double>();
}

std::string text(json const &j, char const *key)
{
  if (!j.contains(key) || !j.at(key).is_string()) { throw ConfigError(std::string("missing string key '") + key + "'"); }
  return j.at(key).get<std::string>();
}

FluxModel parse_flux(json const &j)
{
  auto const kind = text(j, "kind");
  if (kind == "linear_advection") { return linear_advection(number_or(j, "a", 1.0)); }
  if (kind == "burgers") { return burgers(); }
  throw ConfigError("unknown flux kind '" + kind + "'");
}

AlphaField parse_alpha(json const &j)
{
  if (j.is_number()) { return AlphaField(j.get<double>()); }
  if (!j.is_object()) { throw ConfigError("alpha must be a number or an object"); }
  auto const kind = text(j, "kind");
  if (kind == "constant") { return AlphaField(number(j, "value")); }
  if (kind == "gaussian_dip") {
    double const lam = number(j, "lambda");
    std::string const variant = j.value("variant", "printed");
    if (variant == "printed") {
      return AlphaField([lam](double x, double) { return 1.0 - lam * std::exp(-30.0 * x * x - 7000.0 * std::pow(0.5, 12)); },
                        "1 - " + std::to_string(lam) + " exp(-30 x^2 - 7000 (0.5)^12)");
    }
    if (variant == "time_dependent") {
      return AlphaField([lam](double x, double t) { return 1.0 - lam * std::exp(-30.0 * x * x - 7000.0 * std::pow(t - 0.5, 12)); },
                        "1 - " + std::to_string(lam) + " exp(-30 x^2 - 7000 (t-0.5)^12)");
    }
    throw ConfigError("unknown gaussian_dip variant '" + variant + "'");
  }
  if (kind == "burgers_dip") {
    double const depth = number_or(j, "depth", 0.9);
    return AlphaField([depth](double x, double t) { return 1.0 - depth * std::exp(-8.0 * std::abs(x) - 7000.0 * std::pow(t - 0.8, 12)); },
                      "1 - " + std::to_string(depth) + " exp(-8|x| - 7000 (t-0.8)^12)");
  }
  throw ConfigError("unknown alpha kind '" + kind + "'");
}

std::function<double(double)> parse_initial(json const &j)
{
  auto const kind = text(j, "kind");
  if (kind == "riemann") {
    double const l = number(j, "left"), r = number(j, "right"), x0 = number_or(j, "x0", 0.0);
    double const c = number_or(j, "center", r);
    return [=](double x) { return x < x0 ? l : (x == x0 ? c : r); };
  }
  if (kind == "gaussian") {
    double const amp = number_or(j, "amplitude", 1.0), w = number_or(j, "width", 10.0), off = number_or(j, "offset", 1.0);
    return [=](double x) { return amp * std::exp(-w * x * x) + off; };
  }
  if (kind == "sine") {
    return [](double x) { return -std::sin(std::numbers::pi * x); };
  }
  if (kind == "cosine_bump") {
    return [](double x) { return (x >= -1.5 && x <= -0.5) ? 0.5 * std::cos(std::numbers::pi * (2.0 * x + 4.0)) + 0.5 : 0.0; };
  }
  if (kind == "constant") {
    double const v = number(j, "value");
    return [v](double) { return v; };
  }
  throw ConfigError("unknown initial condition '" + kind + "'");
}

} // namespace

std::vector<std::string> preset_names()
{
  std::vector<std::string> names;
  for (auto const &[k, v] : catalog()) {
    names.push_back(k);
  }
  return names;
}

json preset(std::string const &name)
{
  auto const &c = catalog();
  auto const it = c.find(name);
  if (it == c.end()) { throw ConfigError("unknown preset '" + name + "'"); }
  return it->second;
}

std::string RunConfig::name() const { return spec.value("name", std::string("run")); }

RunConfig make_config(json const &document)
{
  if (!document.is_object()) { throw ConfigError("config must be a JSON object"); }
  json spec = json::object();
  if (document.contains("preset")) { spec = preset(text(document, "preset")); }
  json patch = document;
  patch.erase("preset");
  spec.merge_patch(patch);

  RunConfig cfg;
  cfg.out_dir = spec.value("out", std::string());
  cfg.strict_cfl = spec.value("strict_cfl", false);
  cfg.record_every = spec.value("record_every", Index(0));
  spec.erase("out");
  spec.erase("strict_cfl");
  spec.erase("record_every");
  cfg.spec = std::move(spec);
  build_setup(cfg); // validation
  return cfg;
}

RunSetup build_setup(RunConfig const &config)
{
  json const &s = config.spec;
  try {
    RunSetup setup;
    json const &g = s.at("grid");
    double const a = number(g, "x_left"), b = number(g, "x_right");
    if (g.contains("nodes")) {
      setup.grid = GridSpec(a, b, g.at("nodes").get<Index>());
    } else {
      setup.grid = GridSpec::with_spacing(a, b, number(g, "h"));
    }

    SchemeConfig &sc = setup.scheme;
    sc.scheme = scheme_from_string(text(s, "scheme"));
    sc.limiter = limiter_from_string(s.value("limiter", std::string("minmod")));
    sc.dt = number(s, "dt");
    sc.flux = parse_flux(s.at("flux"));
    sc.alpha = parse_alpha(s.at("alpha"));
    sc.bc.kind = boundary_from_string(s.value("boundary", std::string("outflow")));
    sc.sweep_tol = number_or(s, "sweep_tol", 1e-12);
    sc.sweep_max = Index(number_or(s, "sweep_max", 100));
    sc.validate();

    setup.initial = sample_initial(setup.grid, parse_initial(s.at("initial")));
    if (s.contains("steps")) {
      setup.steps = s.at("steps").get<Index>();
    } else {
      double const T = number(s, "T");
      if (!(T > 0.0)) { throw ConfigError("final time T must be positive"); }
      double const ratio = T / sc.dt;
      double const rounded = std::round(ratio);
      setup.steps = std::abs(ratio - rounded) < 1e-9 * std::max(1.0, rounded) ? Index(rounded) : Index(std::ceil(ratio));
    }
    if (setup.steps < 1) { throw ConfigError("run needs at least one step"); }
    // Evaluate the alpha field once over the whole run so a bad field fails before any work.
    if (!sc.alpha.is_constant()) {
      for (Index n = 1; n <= setup.steps; ++n) {
        sc.alpha.sample(setup.grid, double(n) * sc.dt);
      }
    }
    return setup;
  } catch (json::exception const &e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

} // namespace fraclaw
