#include "moi/json_io.hpp"

#include <fstream>
#include <sstream>

#include "moi/error.hpp"

namespace moi {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("instance file: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) bad(std::string("\"") + key + "\" must be a list");
  return a;
}

Json scalar_table_json(const ScalarTable& t) {
  Json out = Json::array();
  for (const auto& z : t.values) out.push_back(moi::to_json(z));
  return out;
}

ScalarTable scalar_table_from_json(const Json& j) {
  if (!j.is_array()) bad("scalar table must be a list of scalars");
  ScalarTable t;
  for (const auto& z : j) t.values.push_back(complex_from_json(z));
  return t;
}

Json vector_table_json(const VectorTable& t) { return moi::to_json(t.values); }

VectorTable vector_table_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) bad("vector table must be a nonempty list of per-atom vectors");
  return VectorTable(matrix_from_json(j));
}

Json matrix_table_json(const MatrixTable& t) {
  Json values = Json::array();
  for (const auto& m : t.values) values.push_back(moi::to_json(m));
  return {{"rows", t.rows}, {"cols", t.cols}, {"values", values}};
}

MatrixTable matrix_table_from_json(const Json& j) {
  MatrixTable t;
  const Json& values = array_field(j, "values");
  for (const auto& m : values) t.values.push_back(matrix_from_json(m));
  if (j.contains("rows")) {
    t.rows = j.at("rows").get<Eigen::Index>();
    t.cols = field(j, "cols").get<Eigen::Index>();
  } else if (!t.values.empty()) {
    t.rows = t.values.front().rows();
    t.cols = t.values.front().cols();
  } else {
    bad("matrix table without atoms needs \"rows\" and \"cols\"");
  }
  t.check_shapes();
  return t;
}

Json label_json(const AtomLabel& a) {
  switch (a.kind) {
    case AtomLabel::Kind::index:
      return {{"index", a.index}};
    case AtomLabel::Kind::root_of_unity:
      return {{"root", {a.index, a.order}}};
    case AtomLabel::Kind::real:
      break;
  }
  return a.real;
}

AtomLabel label_from_json(const Json& j) {
  if (j.is_number()) return AtomLabel::from_real(j.get<double>());
  if (j.is_object() && j.contains("index")) return AtomLabel::from_index(j.at("index").get<std::int64_t>());
  if (j.is_object() && j.contains("root")) {
    const Json& r = j.at("root");
    if (!r.is_array() || r.size() != 2) bad("\"root\" point must be [k, order]");
    return AtomLabel::root(r[0].get<std::int64_t>(), r[1].get<std::int64_t>());
  }
  bad("atom point must be a number, {\"index\": j} or {\"root\": [k, order]}");
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(SchattenExponent p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad("complex scalar must be [re, im] or a number, got " + j.dump());
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("matrix must be a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) bad("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

SchattenExponent exponent_from_json(const Json& j) {
  if (j.is_string()) return SchattenExponent::parse(j.get<std::string>());
  if (j.is_number()) return SchattenExponent(j.get<double>());
  bad("exponent must be a number or \"inf\"");
}

Json to_json(const FiniteSpectralMeasure& e) {
  Json atoms = Json::array();
  for (const auto& a : e.atoms) atoms.push_back({{"point", label_json(a.point)}, {"projection", to_json(a.projection)}});
  return {{"dim", e.dim}, {"atoms", atoms}};
}

FiniteSpectralMeasure measure_from_json(const Json& j) {
  if (j.is_object() && j.contains("hermitian")) {
    const double tol = j.contains("merge_tol") ? j.at("merge_tol").get<double>() : 1e-8;
    return from_hermitian(matrix_from_json(j.at("hermitian")), tol);
  }
  FiniteSpectralMeasure e;
  for (const auto& a : array_field(j, "atoms")) {
    e.atoms.push_back({label_from_json(field(a, "point")), matrix_from_json(field(a, "projection"))});
  }
  // "dim" is optional when there is at least one atom
  if (j.contains("dim")) {
    e.dim = j.at("dim").get<Eigen::Index>();
  } else if (!e.atoms.empty()) {
    e.dim = e.atoms.front().projection.rows();
  } else {
    bad("measure without atoms needs \"dim\"");
  }
  return e;
}

Json to_json(const Integrand& psi) {
  if (const auto* p = std::get_if<ProjectiveRep>(&psi)) {
    Json terms = Json::array();
    for (const auto& term : p->terms) {
      Json t = Json::array();
      for (const auto& phi : term) t.push_back(scalar_table_json(phi));
      terms.push_back(std::move(t));
    }
    return {{"projective", {{"arity", p->arity}, {"terms", terms}}}};
  }
  if (const auto* h = std::get_if<HaagerupChainRep>(&psi)) {
    Json middles = Json::array();
    for (const auto& m : h->middles) middles.push_back(matrix_table_json(m));
    return {{"haagerup", {{"head", vector_table_json(h->head)}, {"middles", middles}, {"tail", vector_table_json(h->tail)}}}};
  }
  const auto& like = std::get<HaagerupLikeRep>(psi);
  Json factors = Json::array();
  for (const auto& f : like.factors) {
    if (const auto* v = std::get_if<VectorTable>(&f)) {
      factors.push_back({{"vector", vector_table_json(*v)}});
    } else {
      factors.push_back({{"matrix", matrix_table_json(std::get<MatrixTable>(f))}});
    }
  }
  return {{"haagerup_like", {{"kind", std::string(to_string(like.kind))}, {"factors", factors}}}};
}

Integrand integrand_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) bad("integrand must be an object with exactly one representation key");
  if (j.contains("projective")) {
    const Json& p = j.at("projective");
    ProjectiveRep rep;
    const Json& terms = array_field(p, "terms");
    if (p.contains("arity")) {
      rep.arity = p.at("arity").get<std::size_t>();
    } else if (!terms.empty() && terms[0].is_array()) {
      rep.arity = terms[0].size();
    } else {
      bad("projective integrand without terms needs \"arity\"");
    }
    for (const auto& term : terms) {
      if (!term.is_array()) bad("projective term must be a list of scalar tables");
      std::vector<ScalarTable> factors;
      for (const auto& phi : term) factors.push_back(scalar_table_from_json(phi));
      rep.terms.push_back(std::move(factors));
    }
    return rep;
  }
  if (j.contains("haagerup")) {
    const Json& h = j.at("haagerup");
    HaagerupChainRep rep;
    rep.head = vector_table_from_json(field(h, "head"));
    for (const auto& m : array_field(h, "middles")) rep.middles.push_back(matrix_table_from_json(m));
    rep.tail = vector_table_from_json(field(h, "tail"));
    return rep;
  }
  if (j.contains("haagerup_like")) {
    const Json& h = j.at("haagerup_like");
    HaagerupLikeRep rep;
    const auto kind = field(h, "kind").get<std::string>();
    if (kind == "first") {
      rep.kind = HaagerupLikeKind::first;
    } else if (kind == "second") {
      rep.kind = HaagerupLikeKind::second;
    } else {
      bad("haagerup_like kind must be \"first\" or \"second\"");
    }
    for (const auto& f : array_field(h, "factors")) {
      if (f.is_object() && f.contains("vector")) {
        rep.factors.emplace_back(vector_table_from_json(f.at("vector")));
      } else if (f.is_object() && f.contains("matrix")) {
        rep.factors.emplace_back(matrix_table_from_json(f.at("matrix")));
      } else {
        bad("haagerup_like factor must be {\"vector\": ...} or {\"matrix\": ...}");
      }
    }
    return rep;
  }
  bad("unknown integrand representation " + j.begin().key());
}

Json to_json(const BoundReport& rep) {
  Json out = {{"tag", std::string(to_string(rep.tag))}};
  out["p"] = rep.exponents.empty() ? Json() : to_json(rep.exponents[0]);
  out["q"] = rep.exponents.size() < 2 ? Json() : to_json(rep.exponents.back());
  out["r"] = to_json(rep.r);
  out["lhs"] = rep.lhs;
  out["rhs"] = rep.rhs;
  out["ratio"] = rep.ratio;
  out["holds"] = rep.holds;
  return out;
}

InstanceFile instance_from_json(const Json& j) {
  try {
    InstanceFile file;
    for (const auto& e : array_field(j, "measures")) file.instance.measures.push_back(measure_from_json(e));
    for (const auto& t : array_field(j, "operators")) file.instance.operators.push_back(matrix_from_json(t));
    file.instance.integrand = integrand_from_json(field(j, "integrand"));
    if (j.contains("exponents")) {
      const Json& ex = j.at("exponents");
      if (ex.contains("p")) file.p = exponent_from_json(ex.at("p"));
      if (ex.contains("q")) file.q = exponent_from_json(ex.at("q"));
    }
    check_instance(file.instance, true);
    return file;
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

Json to_json(const InstanceFile& file) {
  Json measures = Json::array();
  for (const auto& e : file.instance.measures) measures.push_back(to_json(e));
  Json ops = Json::array();
  for (const auto& t : file.instance.operators) ops.push_back(to_json(t));
  Json out = {{"measures", measures}, {"operators", ops}, {"integrand", to_json(file.instance.integrand)}};
  if (file.p || file.q) {
    Json ex = Json::object();
    if (file.p) ex["p"] = to_json(*file.p);
    if (file.q) ex["q"] = to_json(*file.q);
    out["exponents"] = ex;
  }
  return out;
}

InstanceFile read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open instance file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput("instance file " + path + ": " + e.what());
  }
  return instance_from_json(j);
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace moi
