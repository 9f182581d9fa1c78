#include "nichols_forge/io.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "nichols_forge/errors.hpp"

namespace nf {

namespace {

Rational parse_rational(const std::string& s) {
  static const std::regex re(R"(\s*([+-]?\d+)(\s*/\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("not a rational number: '" + s + "'");
  Rational num(m[1].str(), 10);
  if (!m[3].matched) return num;
  mpz_class den(m[3].str(), 10);
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(num.get_num(), den);
  q.canonicalize();
  return q;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long as_long(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<long>();
}

std::size_t as_index(const json& j, std::size_t bound, const char* what) {
  long v = as_long(j, what);
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    throw ParseError(std::string(what) + " out of range: " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

const json& array_of(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  return j;
}

std::vector<long> long_vector(const json& j, const char* what) {
  std::vector<long> out;
  for (const auto& x : array_of(j, what)) out.push_back(as_long(x, what));
  return out;
}

std::vector<Scalar> scalar_vector(const json& j, const char* what) {
  std::vector<Scalar> out;
  for (const auto& x : array_of(j, what)) out.push_back(scalar_from_json(x));
  return out;
}

std::vector<std::vector<Scalar>> scalar_square(const json& j, const char* what) {
  std::vector<std::vector<Scalar>> q;
  for (const auto& row : array_of(j, what)) q.push_back(scalar_vector(row, what));
  for (const auto& row : q)
    if (row.size() != q.size()) throw ParseError(std::string(what) + " must be a square matrix");
  return q;
}

json scalar_list(const std::vector<Scalar>& v) {
  json a = json::array();
  for (const auto& s : v) a.push_back(scalar_to_json(s));
  return a;
}

// Appends prefix + [row, col, value] for every nonzero entry.
void sparse_entries(json& out, const std::vector<long>& prefix, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& e : m.row(r)) {
      json item = json::array();
      for (long p : prefix) item.push_back(p);
      item.push_back(r);
      item.push_back(e.col);
      item.push_back(scalar_to_json(e.val));
      out.push_back(std::move(item));
    }
}

void check_entry(const json& item, std::size_t len, const char* what) {
  if (!item.is_array() || item.size() != len)
    throw ParseError(std::string(what) + " entries must be arrays of length " + std::to_string(len));
}

void put(Matrix& m, const json& row, const json& col, const json& val, const char* what) {
  std::size_t r = as_index(row, m.rows(), what);
  std::size_t c = as_index(col, m.cols(), what);
  if (!m.get(r, c).is_zero()) throw ParseError(std::string("duplicate ") + what + " entry");
  m.set(r, c, scalar_from_json(val));
}

json label_json(const Label& l) { return json(l); }

}  // namespace

json scalar_to_json(const Scalar& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(c.get_str());
  return {{"conductor", s.conductor()}, {"coeffs", coeffs}};
}

Scalar parse_scalar(const std::string& text) {
  static const std::regex zeta(R"(\s*(-?)\s*zeta\(\s*(\d+)\s*\)(\s*\^\s*(-?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, zeta)) {
    int n = std::stoi(m[2].str());
    if (n < 1) throw ParseError("root of unity of order zero: '" + text + "'");
    long k = m[4].matched ? std::stol(m[4].str()) : 1;
    Scalar z = Scalar::root_of_unity(n, k);
    return m[1].str().empty() ? z : -z;
  }
  return Scalar(parse_rational(text));
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (!j.is_object()) throw ParseError("scalar must be an object, a string or an integer");
  long n = as_long(field(j, "conductor"), "conductor");
  if (n < 1 || n > 100000) throw ParseError("conductor out of range");
  std::vector<Rational> coeffs;
  for (const auto& c : array_of(field(j, "coeffs"), "coeffs")) {
    if (c.is_number_integer()) coeffs.emplace_back(c.get<long>());
    else if (c.is_string()) coeffs.push_back(parse_rational(c.get<std::string>()));
    else throw ParseError("coefficients must be strings");
  }
  return Scalar::make(static_cast<int>(n), std::move(coeffs));
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  sparse_entries(entries, {}, m);
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  long r = as_long(field(j, "rows"), "rows"), c = as_long(field(j, "cols"), "cols");
  if (r < 0 || c < 0) throw ParseError("negative matrix shape");
  Matrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (const auto& e : array_of(field(j, "entries"), "entries")) {
    check_entry(e, 3, "matrix");
    put(m, e[0], e[1], e[2], "matrix");
  }
  return m;
}

json braiding_to_json(const DiagonalBraiding& b) {
  json q = json::array();
  for (const auto& row : b.matrix()) q.push_back(scalar_list(row));
  return {{"type", "diagonal"}, {"q", q}};
}

json braiding_to_json(const YDDatum& d) {
  json points = json::array();
  for (const auto& p : d.points) points.push_back({{"g", p.g}, {"chi", scalar_list(p.chi)}});
  return {{"type", "yetter-drinfeld-abelian"}, {"group", d.group}, {"points", points}};
}

BraidingInput braiding_from_json(const json& j) {
  const json& type = field(j, "type");
  if (!type.is_string()) throw ParseError("braiding type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "diagonal") {
    auto q = scalar_square(field(j, "q"), "q");
    if (q.empty()) throw ParseError("empty braiding matrix");
    for (const auto& row : q)
      for (const auto& x : row)
        if (x.is_zero()) throw ParseError("braiding entries must be nonzero");
    return {DiagonalBraiding(std::move(q)), std::nullopt};
  }
  if (t == "yetter-drinfeld-abelian") {
    YDDatum d;
    for (long x : long_vector(field(j, "group"), "group")) {
      if (x < 1 || x > 1000) throw ParseError("cyclic factor out of range");
      d.group.push_back(static_cast<int>(x));
    }
    for (const auto& p : array_of(field(j, "points"), "points"))
      d.points.push_back({long_vector(field(p, "g"), "g"), scalar_vector(field(p, "chi"), "chi")});
    if (d.points.empty()) throw ParseError("no points");
    try {
      validate(d);
    } catch (const Error& e) {
      throw ParseError(std::string("invalid Yetter-Drinfeld datum: ") + e.what());
    }
    return {yd_to_braiding(d), d};
  }
  throw ParseError("unknown braiding type '" + t + "'");
}

json hopf_to_json(const HopfStructure& t) {
  const DecomposedObject& obj = t.object;
  const LineCategory& cat = obj.category();
  json pairing = json::array();
  for (const auto& row : cat.pairing()) pairing.push_back(scalar_list(row));
  json isotypes = json::array();
  for (const auto& iso : obj.isotypes()) isotypes.push_back({{"label", label_json(iso.label)}, {"dim", iso.dim}});

  json mul = json::array(), comul = json::array(), unit = json::array(), counit = json::array(),
       antipode = json::array();
  const long n = static_cast<long>(obj.count());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      long k = obj.product(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (k < 0) continue;
      sparse_entries(mul, {i, j, k}, t.mul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      long k = obj.product(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (k < 0) continue;
      sparse_entries(comul, {i, j, k}, t.comul[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  for (std::size_t r = 0; r < t.unit.rows(); ++r)
    for (const auto& e : t.unit.row(r)) unit.push_back({r, scalar_to_json(e.val)});
  for (const auto& e : t.counit.row(0)) counit.push_back({e.col, scalar_to_json(e.val)});
  for (long i = 0; i < n; ++i) sparse_entries(antipode, {i}, t.antipode[static_cast<std::size_t>(i)]);

  json out = {{"format", "nichols-forge/hopf"},
              {"version", 1},
              {"category", {{"moduli", cat.moduli()}, {"pairing", pairing}}},
              {"isotypes", isotypes},
              {"mul", mul},
              {"comul", comul},
              {"unit", unit},
              {"counit", counit},
              {"antipode", antipode}};
  out["grading"] = t.grading ? json(*t.grading) : json(nullptr);
  return out;
}

HopfStructure hopf_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("structure file must be an object");
  if (j.contains("format") && j.at("format") != "nichols-forge/hopf") throw ParseError("not a Hopf structure file");
  const json& c = field(j, "category");
  std::vector<int> moduli;
  for (long m : long_vector(field(c, "moduli"), "moduli")) {
    if (m < 0) throw ParseError("negative modulus");
    moduli.push_back(static_cast<int>(m));
  }
  std::vector<std::vector<Scalar>> pairing;
  for (const auto& row : array_of(field(c, "pairing"), "pairing")) pairing.push_back(scalar_vector(row, "pairing"));
  if (pairing.size() != moduli.size()) throw ParseError("pairing size does not match moduli");
  for (const auto& row : pairing)
    if (row.size() != moduli.size()) throw ParseError("pairing must be square");
  LineCategory cat;
  std::vector<Isotype> iso;
  try {
    cat = LineCategory(moduli, pairing);
    for (const auto& x : array_of(field(j, "isotypes"), "isotypes")) {
      Label l = long_vector(field(x, "label"), "label");
      if (l.size() != moduli.size()) throw ParseError("label length does not match the category");
      if (cat.normalize(l) != l) throw ParseError("label is not reduced");
      long d = as_long(field(x, "dim"), "dim");
      if (d < 1) throw ParseError("isotype dimensions must be positive");
      iso.push_back({l, static_cast<std::size_t>(d)});
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  for (std::size_t i = 1; i < iso.size(); ++i)
    if (!(iso[i - 1].label < iso[i].label)) throw ParseError("isotype labels must be distinct and sorted");
  DecomposedObject obj(cat, iso);
  if (obj.unit_index() < 0) throw ParseError("the unit isotype is missing");
  HopfStructure t = HopfStructure::zeros(obj);
  const std::size_t n = obj.count();

  auto blocks = [&](const char* name, std::vector<std::vector<Matrix>>& target) {
    for (const auto& e : array_of(field(j, name), name)) {
      check_entry(e, 6, name);
      std::size_t a = as_index(e[0], n, name), b = as_index(e[1], n, name);
      long k = as_long(e[2], name);
      if (k != obj.product(a, b)) throw ParseError(std::string(name) + " entry has the wrong target isotype");
      put(target[a][b], e[3], e[4], e[5], name);
    }
  };
  blocks("mul", t.mul);
  blocks("comul", t.comul);
  for (const auto& e : array_of(field(j, "unit"), "unit")) {
    check_entry(e, 2, "unit");
    put(t.unit, e[0], json(0), e[1], "unit");
  }
  for (const auto& e : array_of(field(j, "counit"), "counit")) {
    check_entry(e, 2, "counit");
    put(t.counit, json(0), e[0], e[1], "counit");
  }
  for (const auto& e : array_of(field(j, "antipode"), "antipode")) {
    check_entry(e, 4, "antipode");
    std::size_t i = as_index(e[0], n, "antipode");
    put(t.antipode[i], e[1], e[2], e[3], "antipode");
  }
  if (j.contains("grading") && !j.at("grading").is_null()) {
    std::vector<int> g;
    for (long d : long_vector(j.at("grading"), "grading")) g.push_back(static_cast<int>(d));
    if (g.size() != obj.total_dim()) throw ParseError("grading length does not match the dimension");
    t.grading = std::move(g);
  }
  check_shapes(t);
  return t;
}

json fusion_to_json(const FusionData& f) {
  json fusion = json::array();
  for (int i = 0; i < f.s; ++i)
    for (int j = 0; j < f.s; ++j)
      for (int k = 0; k < f.s; ++k)
        if (f.N(i, j, k) != 0) fusion.push_back({i, j, k, f.N(i, j, k)});
  json alpha = json::array(), sigma = json::array();
  for (const auto& [key, m] : f.alpha) sparse_entries(alpha, std::vector<long>(key.begin(), key.end()), m);
  for (const auto& [key, m] : f.sigma) sparse_entries(sigma, std::vector<long>(key.begin(), key.end()), m);
  json out = {{"format", "nichols-forge/fusion"},
              {"version", 1},
              {"simples", f.s},
              {"fusion", fusion},
              {"alpha", alpha},
              {"sigma", sigma},
              {"l", scalar_list(f.l)},
              {"r", scalar_list(f.r)},
              {"dual", f.dual},
              {"ev", scalar_list(f.ev)},
              {"coev", scalar_list(f.coev)}};
  if (!f.labels.empty()) out["labels"] = f.labels;
  return out;
}

FusionData fusion_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("fusion file must be an object");
  if (j.contains("format") && j.at("format") != "nichols-forge/fusion") throw ParseError("not a fusion data file");
  FusionData f;
  long s = as_long(field(j, "simples"), "simples");
  if (s < 1 || s > 4096) throw ParseError("number of simples out of range");
  f.s = static_cast<int>(s);
  const std::size_t S = static_cast<std::size_t>(s);
  f.fusion.assign(S * S * S, 0);
  for (const auto& e : array_of(field(j, "fusion"), "fusion")) {
    check_entry(e, 4, "fusion");
    std::size_t a = as_index(e[0], S, "fusion"), b = as_index(e[1], S, "fusion"), c = as_index(e[2], S, "fusion");
    long n = as_long(e[3], "fusion");
    if (n < 0 || n > 64) throw ParseError("fusion coefficient out of range");
    f.fusion[(a * S + b) * S + c] = static_cast<int>(n);
  }
  for (const auto& e : array_of(field(j, "alpha"), "alpha")) {
    check_entry(e, 9, "alpha");
    std::array<int, 6> key{};
    for (std::size_t x = 0; x < 6; ++x) key[x] = static_cast<int>(as_index(e[x], S, "alpha"));
    auto it = f.alpha.find(key);
    if (it == f.alpha.end()) {
      auto [i, jj, k, a, b, c] = key;
      it = f.alpha.emplace(key, f.alpha_block(i, jj, k, a, b, c)).first;
    }
    put(it->second, e[6], e[7], e[8], "alpha");
  }
  for (const auto& e : array_of(field(j, "sigma"), "sigma")) {
    check_entry(e, 6, "sigma");
    std::array<int, 3> key{};
    for (std::size_t x = 0; x < 3; ++x) key[x] = static_cast<int>(as_index(e[x], S, "sigma"));
    auto it = f.sigma.find(key);
    if (it == f.sigma.end()) it = f.sigma.emplace(key, f.sigma_block(key[0], key[1], key[2])).first;
    put(it->second, e[3], e[4], e[5], "sigma");
  }
  auto list = [&](const char* name) {
    std::vector<Scalar> v = scalar_vector(field(j, name), name);
    if (v.size() != S) throw ParseError(std::string(name) + " must have one entry per simple");
    return v;
  };
  f.l = list("l");
  f.r = list("r");
  f.ev = list("ev");
  f.coev = list("coev");
  for (long d : long_vector(field(j, "dual"), "dual")) f.dual.push_back(static_cast<int>(as_index(json(d), S, "dual")));
  if (f.dual.size() != S) throw ParseError("dual must have one entry per simple");
  if (j.contains("labels"))
    for (const auto& l : array_of(j.at("labels"), "labels")) f.labels.push_back(long_vector(l, "labels"));
  if (!f.labels.empty() && f.labels.size() != S) throw ParseError("labels must have one entry per simple");
  return f;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace nf
