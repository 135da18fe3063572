#include "griffiths/json_io.hpp"

#include <fstream>
#include <sstream>

#include "griffiths/error.hpp"

namespace griffiths::json {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t positive(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) fail(std::string("'") + key + "' must be a positive integer");
  return v.get<std::size_t>();
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::vector<Matrix> decode_matrices(const json& j) {
  if (!j.is_array()) fail("expected an array of matrices");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(decode_matrix(m));
  return out;
}

json encode_matrices(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(encode(m));
  return out;
}

json encode_grid(const std::vector<std::vector<UnivariatePoly>>& h) {
  json out = json::array();
  for (const auto& row : h) {
    json r = json::array();
    for (const auto& poly : row) r.push_back(encode(poly));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<UnivariatePoly>> decode_grid(const json& j) {
  if (!j.is_array()) fail("'h' must be an array of rows");
  std::vector<std::vector<UnivariatePoly>> out;
  for (const auto& row : j) {
    if (!row.is_array()) fail("'h' rows must be arrays");
    std::vector<UnivariatePoly> r;
    for (const auto& poly : row) r.push_back(decode_poly(poly));
    out.push_back(std::move(r));
  }
  return out;
}

template <class F>
auto wrap(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    fail(e.what());
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

}  // namespace

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(std::span<const Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(encode(z));
  return out;
}

json encode(const Matrix& m) {
  json data = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) data.push_back(encode(m.row(i)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

json encode(const AbelianElement& e) {
  return {{"p", e.p()}, {"q", e.q()}, {"basis", encode_matrices(e.basis())}};
}

json encode(const DistinguishedBasis& d) { return {{"p", d.p}, {"q", d.q}, {"A", encode_matrices(d.a)}}; }

json encode(const UnivariatePoly& poly) { return encode(std::span<const Complex>(poly.coefficients())); }

json encode(const GeneratingSystem& s) {
  json out = {{"p", s.p()}, {"q", s.q()}};
  auto put_inner = [&](const std::variant<QuadraticFamily, SeparableFamily>& inner) {
    std::visit(Overloaded{[&](const QuadraticFamily& f) { out["A"] = encode_matrices(f.a); },
                          [&](const SeparableFamily& f) { out["h"] = encode_grid(f.h); }},
               inner);
  };
  std::visit(Overloaded{[&](const QuadraticFamily& f) {
                          out["family"] = "quadratic";
                          out["A"] = encode_matrices(f.a);
                        },
                        [&](const SeparableFamily& f) {
                          out["family"] = "separable";
                          out["h"] = encode_grid(f.h);
                        },
                        [&](const ConjugatedFamily& f) {
                          out["family"] = "conjugated";
                          put_inner(f.inner);
                          out["C"] = encode(f.c);
                        }},
             s.family());
  return out;
}

json encode(const GroupElement& g) {
  return {{"p", g.p()}, {"q", g.q()}, {"X", encode(g.x())}, {"Y", encode(g.y())}, {"Z", encode(g.z())}};
}

json encode(const DiscreteCurve& c) {
  json points = json::array();
  for (const auto& g : c.points()) points.push_back(encode(g));
  return {{"t", c.t()}, {"points", std::move(points)}};
}

json encode(const VerificationReport& r) {
  json out = {{"samples", r.samples},
              {"seed", r.seed},
              {"max_omega_residual", r.max_omega_residual},
              {"max_commutator_residual", r.max_commutator_residual},
              {"max_membership_residual", r.max_membership_residual},
              {"tangent_match_residual", r.tangent_match_residual},
              {"path_independence_residual", r.path_independence_residual},
              {"tolerances",
               {{"omega", r.tolerances.omega},
                {"commutator", r.tolerances.commutator},
                {"membership", r.tolerances.membership},
                {"path_independence", r.tolerances.path_independence},
                {"tangent_match", r.tolerances.tangent_match},
                {"fd_step", r.tolerances.fd_step}}},
              {"z_gauge", "straight segment from the origin, Z_jk(0) = 0"},
              {"pass", r.pass}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json encode(const Dimensions& d) {
  return {{"dimU", d.dim_u}, {"dimE", d.dim_e}, {"codim", d.codim}, {"maxIntegralDim", d.max_integral_dim}};
}

Complex decode_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Vector decode_vector(const json& j) {
  if (!j.is_array()) fail("expected an array of complex numbers");
  Vector out;
  for (const auto& z : j) out.push_back(decode_complex(z));
  return out;
}

Matrix decode_matrix(const json& j) {
  return wrap([&] {
    const std::size_t rows = positive(j, "rows");
    const std::size_t cols = positive(j, "cols");
    const auto& data = field(j, "data");
    if (!data.is_array() || data.size() != rows) fail("matrix 'data' must have one array per row");
    std::vector<Complex> entries;
    entries.reserve(rows * cols);
    for (const auto& row : data) {
      if (!row.is_array() || row.size() != cols) fail("matrix row has the wrong length");
      for (const auto& z : row) entries.push_back(decode_complex(z));
    }
    return Matrix(rows, cols, std::move(entries));
  });
}

AbelianElement decode_element(const json& j) {
  return wrap([&] { return AbelianElement(positive(j, "p"), positive(j, "q"), decode_matrices(field(j, "basis"))); });
}

DistinguishedBasis decode_distinguished(const json& j) {
  return wrap([&] {
    DistinguishedBasis d{positive(j, "p"), positive(j, "q"), decode_matrices(field(j, "A"))};
    if (d.a.size() != d.p - 1) fail("'A' must list p - 1 matrices");
    for (const auto& m : d.a)
      if (m.rows() != d.q || m.cols() != d.q) fail("'A' matrices must be q x q");
    return d;
  });
}

UnivariatePoly decode_poly(const json& j) { return wrap([&] { return UnivariatePoly(decode_vector(j)); }); }

GeneratingSystem decode_system(const json& j) {
  return wrap([&] {
    const std::size_t p = positive(j, "p");
    const std::size_t q = positive(j, "q");
    const auto& kind = field(j, "family");
    if (!kind.is_string()) fail("'family' must be a string");
    const std::string family = kind.get<std::string>();
    auto inner = [&]() -> std::variant<QuadraticFamily, SeparableFamily> {
      if (j.contains("A")) return QuadraticFamily{decode_matrices(j.at("A"))};
      if (j.contains("h")) return SeparableFamily{decode_grid(j.at("h"))};
      fail("system needs 'A' or 'h'");
    };
    if (family == "quadratic") {
      return GeneratingSystem::unchecked(p, q, QuadraticFamily{decode_matrices(field(j, "A"))});
    }
    if (family == "separable") return GeneratingSystem::unchecked(p, q, SeparableFamily{decode_grid(field(j, "h"))});
    if (family == "conjugated") {
      return GeneratingSystem::unchecked(p, q, ConjugatedFamily{inner(), decode_matrix(field(j, "C"))});
    }
    fail("unknown family '" + family + "'");
  });
}

GroupElement decode_group_element(const json& j) {
  return wrap([&] {
    GroupElement g(decode_matrix(field(j, "X")), decode_matrix(field(j, "Y")), decode_matrix(field(j, "Z")));
    if (g.p() != positive(j, "p") || g.q() != positive(j, "q")) fail("block shapes disagree with p, q");
    return g;
  });
}

DiscreteCurve decode_curve(const json& j) {
  return wrap([&] {
    const auto& t = field(j, "t");
    const auto& points = field(j, "points");
    if (!t.is_array() || !points.is_array()) fail("'t' and 'points' must be arrays");
    std::vector<double> params;
    for (const auto& v : t) {
      if (!v.is_number()) fail("'t' entries must be numbers");
      params.push_back(v.get<double>());
    }
    std::vector<GroupElement> gs;
    for (const auto& g : points) gs.push_back(decode_group_element(g));
    return DiscreteCurve(std::move(params), std::move(gs));
  });
}

VerificationReport decode_report(const json& j) {
  return wrap([&] {
    if (!is_valid_report(j)) fail("report does not match the schema");
    VerificationReport r;
    r.samples = j.at("samples").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.max_omega_residual = number(j, "max_omega_residual");
    r.max_commutator_residual = number(j, "max_commutator_residual");
    r.max_membership_residual = number(j, "max_membership_residual");
    r.tangent_match_residual = number(j, "tangent_match_residual");
    r.path_independence_residual = number(j, "path_independence_residual");
    const auto& t = j.at("tolerances");
    r.tolerances = {number(t, "omega"),         number(t, "commutator"),    number(t, "membership"),
                    number(t, "path_independence"), number(t, "tangent_match"), number(t, "fd_step")};
    r.pass = j.at("pass").get<bool>();
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
  });
}

bool is_valid_report(const json& j) {
  if (!j.is_object()) return false;
  if (!j.contains("samples") || !j["samples"].is_number_integer()) return false;
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) return false;
  for (const char* key : {"max_omega_residual", "max_commutator_residual", "max_membership_residual",
                          "tangent_match_residual", "path_independence_residual"}) {
    if (!j.contains(key) || !j[key].is_number() || j[key].get<double>() < 0.0) return false;
  }
  if (!j.contains("tolerances") || !j["tolerances"].is_object()) return false;
  for (const char* key : {"omega", "commutator", "membership", "path_independence", "tangent_match", "fd_step"}) {
    if (!j["tolerances"].contains(key) || !j["tolerances"][key].is_number()) return false;
  }
  return j.contains("pass") && j["pass"].is_boolean();
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("'" + path + "': " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace griffiths::json
