#include "subsum/io.hpp"

#include <fstream>
#include <sstream>

#include "subsum/error.hpp"

namespace subsum {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& field, const std::string& what) {
  fail(ErrorKind::ParseError, origin + ": field '" + field + "': " + what);
}

Json parse_json(std::string_view text, const std::string& origin) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::ParseError, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

const Json& member(const Json& j, const char* key, const std::string& origin) {
  if (!j.is_object()) parse_fail(origin, "<root>", "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(origin, key, "missing");
  return *it;
}

Rational rational_field(const Json& j, const std::string& origin, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
  } catch (const Error&) {
    parse_fail(origin, field, "not a rational: " + j.dump());
  }
  parse_fail(origin, field, "expected a rational as string or integer, got " + j.dump());
}

Integer integer_field(const Json& j, const std::string& origin, const std::string& field) {
  Rational q = rational_field(j, origin, field);
  if (q.get_den() != 1) parse_fail(origin, field, "expected an integer, got " + j.dump());
  return q.get_num();
}

BasisPtr parse_basis(const Json& arr, const std::string& origin) {
  if (!arr.is_array() || arr.empty()) parse_fail(origin, "basis", "expected a nonempty array");
  std::vector<BasisElement> els;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string f = "basis[" + std::to_string(i) + "]";
    const Json& e = arr[i];
    if (!e.is_object() || !e.contains("name") || !e["name"].is_string()) parse_fail(origin, f, "needs name, approx, error");
    els.push_back({e["name"].get<std::string>(), rational_field(member(e, "approx", origin), origin, f + ".approx"),
                   rational_field(member(e, "error", origin), origin, f + ".error")});
  }
  try {
    return Basis::make(std::move(els));
  } catch (const Error& e) {
    parse_fail(origin, "basis", e.what());
  }
}

Scalar formal_element(const Json& coords, const BasisPtr& basis, const std::string& origin, const std::string& field) {
  if (!coords.is_array() || coords.size() != basis->dimension())
    parse_fail(origin, field, "expected " + std::to_string(basis->dimension()) + " coordinates");
  std::vector<Rational> c;
  for (std::size_t k = 0; k < coords.size(); ++k) c.push_back(rational_field(coords[k], origin, field + "[" + std::to_string(k) + "]"));
  return Scalar(basis, std::move(c));
}

Json basis_to_json(const Basis& b) {
  Json arr = Json::array();
  for (const auto& e : b.irrationals())
    arr.push_back({{"name", e.name}, {"approx", to_string(e.approx)}, {"error", to_string(e.error)}});
  return arr;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedSet parse_set_text(std::string_view text, const std::string& origin) {
  Json j = parse_json(text, origin);
  const Json& dom = member(j, "domain", origin);
  if (!dom.is_string()) parse_fail(origin, "domain", "expected a string");
  const std::string domain = dom.get<std::string>();
  const Json& elems = member(j, "elements", origin);
  if (!elems.is_array()) parse_fail(origin, "elements", "expected an array");

  if (domain == "rational") {
    std::vector<Scalar> xs;
    for (std::size_t i = 0; i < elems.size(); ++i)
      xs.emplace_back(rational_field(elems[i], origin, "elements[" + std::to_string(i) + "]"));
    return ScalarSet(Basis::rational(), std::move(xs));
  }
  if (domain == "formal") {
    BasisPtr basis = parse_basis(member(j, "basis", origin), origin);
    std::vector<Scalar> xs;
    for (std::size_t i = 0; i < elems.size(); ++i)
      xs.push_back(formal_element(elems[i], basis, origin, "elements[" + std::to_string(i) + "]"));
    return ScalarSet(basis, std::move(xs));
  }
  if (domain == "integer-vector") {
    const Json& dim = member(j, "dim", origin);
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) parse_fail(origin, "dim", "expected a positive integer");
    const std::size_t d = dim.get<std::size_t>();
    std::vector<LatticePoint> pts;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const std::string f = "elements[" + std::to_string(i) + "]";
      if (!elems[i].is_array() || elems[i].size() != d) parse_fail(origin, f, "expected " + std::to_string(d) + " coordinates");
      std::vector<Integer> c;
      for (std::size_t k = 0; k < d; ++k) c.push_back(integer_field(elems[i][k], origin, f + "[" + std::to_string(k) + "]"));
      pts.emplace_back(std::move(c));
    }
    return PointSet(d, std::move(pts));
  }
  parse_fail(origin, "domain", "unknown domain '" + domain + "'");
}

ParsedSet parse_input(const std::filesystem::path& path) { return parse_set_text(read_file(path), path.string()); }

Json scalar_to_json(const Scalar& x) {
  if (x.basis().is_rational()) return to_string(x.rational_part());
  Json arr = Json::array();
  for (const auto& c : x.coords()) arr.push_back(to_string(c));
  return arr;
}

Json scalars_to_json(const ScalarSet& s) {
  Json arr = Json::array();
  for (const auto& x : s) arr.push_back(scalar_to_json(x));
  return arr;
}

Json point_to_json(const LatticePoint& p) {
  Json arr = Json::array();
  for (const auto& c : p.coords()) {
    if (c.fits_slong_p()) arr.push_back(c.get_si());
    else arr.push_back(c.get_str());
  }
  return arr;
}

Json set_to_json(const ScalarSet& s) {
  Json j;
  if (s.basis().is_rational()) {
    j["domain"] = "rational";
  } else {
    j["domain"] = "formal";
    j["basis"] = basis_to_json(s.basis());
  }
  j["elements"] = scalars_to_json(s);
  return j;
}

Json set_to_json(const PointSet& s) {
  Json j;
  j["domain"] = "integer-vector";
  j["dim"] = s.dim();
  Json arr = Json::array();
  for (const auto& p : s) arr.push_back(point_to_json(p));
  j["elements"] = arr;
  return j;
}

std::string emit_set(const ParsedSet& s) {
  return std::visit([](const auto& v) { return set_to_json(v).dump(); }, s);
}

SymmetricGAP parse_gap_text(std::string_view text, const std::string& origin) {
  Json j = parse_json(text, origin);
  const Json& diffs = member(j, "diffs", origin);
  const Json& sides = member(j, "half_sides", origin);
  if (!diffs.is_array() || !sides.is_array() || diffs.size() != sides.size() || diffs.empty())
    parse_fail(origin, "diffs", "diffs and half_sides must be nonempty arrays of equal length");
  BasisPtr basis = j.contains("basis") ? parse_basis(j["basis"], origin) : Basis::rational();
  std::vector<Scalar> t;
  std::vector<std::int64_t> s;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    const std::string f = "diffs[" + std::to_string(i) + "]";
    if (basis->is_rational()) t.emplace_back(rational_field(diffs[i], origin, f));
    else t.push_back(formal_element(diffs[i], basis, origin, f));
    Integer h = integer_field(sides[i], origin, "half_sides[" + std::to_string(i) + "]");
    if (h <= 0 || !h.fits_slong_p()) parse_fail(origin, "half_sides[" + std::to_string(i) + "]", "expected a positive integer");
    s.push_back(h.get_si());
  }
  try {
    return make_gap(std::move(t), std::move(s));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidArgument) parse_fail(origin, "diffs", e.what());
    throw;
  }
}

Json gap_to_json(const SymmetricGAP& g) {
  Json j;
  BasisPtr basis = Basis::rational();
  for (const auto& t : g.diffs) basis = common_basis(basis, t.basis_ptr());
  if (!basis->is_rational()) j["basis"] = basis_to_json(*basis);
  Json d = Json::array();
  for (const auto& t : g.diffs) d.push_back(scalar_to_json(t.promoted(basis)));
  j["diffs"] = d;
  j["half_sides"] = g.half_sides;
  j["proper"] = g.proper;
  j["size"] = g.box_size().get_str();
  return j;
}

Json fd_record_to_json(const FdRecord& r) {
  Json w = Json::array();
  for (const auto& p : r.witness) w.push_back(point_to_json(p));
  return Json{{"d", r.d},
              {"n", r.n},
              {"m", r.m},
              {"grid", r.grid_radius},
              {"seed", r.seed},
              {"found", r.found},
              {"value", r.best_value},
              {"exhaustive", r.exhaustive},
              {"budget_exceeded", r.budget_exceeded},
              {"evaluated", r.evaluated},
              {"search_space", r.search_space.get_str()},
              {"witness", w}};
}

std::string fd_csv_header() { return "d,n,m,value,exhaustive,witness"; }

std::string fd_csv_row(const FdRecord& r) {
  std::string w;
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) w += " ";
    w += r.witness[i].to_string();
  }
  std::string value = r.found ? std::to_string(r.best_value) : "";
  return std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.m) + "," + value + "," +
         (r.exhaustive ? "true" : "false") + ",\"" + w + "\"";
}

Json decomposition_to_json(const DecompositionReport& r) {
  return Json{{"A1", scalars_to_json(r.a1)},
              {"A2", scalars_to_json(r.a2)},
              {"r", scalar_to_json(r.r)},
              {"r_lemma", scalar_to_json(r.r_lemma)},
              {"normalized_sum", r.normalized_sum.get_str()},
              {"sum_budget", r.sum_budget.get_str()},
              {"a2_budget", r.a2_budget},
              {"fs_size", r.fs_size},
              {"product_rhs", r.product_rhs.get_str()}};
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace subsum
