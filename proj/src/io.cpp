#include "tmoment/io.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace tmoment {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// +0.0 for -0.0 so that formatting does not depend on the sign of zero.
double canon(double x) {
  if (!std::isfinite(x)) throw InvalidInput("cannot serialize a non-finite value");
  return x + 0.0;
}

json complex_json(Complex z) { return json::array({canon(z.real()), canon(z.imag())}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Lower triangle and real diagonal define the matrix.
CMatrix hermitian_from_lower(const CMatrix& m) {
  CMatrix h(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    h(r, r) = Complex(m(r, r).real(), 0.0);
    for (Index c = 0; c < r; ++c) {
      h(r, c) = m(r, c);
      h(c, r) = std::conj(m(r, c));
    }
  }
  return h;
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path, std::string("missing field '") + key + "'");
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "non-finite number");
  return v;
}

Complex read_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ParseError(path, "expected a [re, im] pair");
  return {read_number(j[0], path + "[0]"), read_number(j[1], path + "[1]")};
}

CMatrix read_matrix(const json& j, const std::string& path, Index q) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(q))
    throw ParseError(path, "expected " + std::to_string(q) + " rows");
  CMatrix m(q, q);
  for (Index r = 0; r < q; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(q))
      throw ParseError(rp, "expected " + std::to_string(q) + " entries");
    for (Index c = 0; c < q; ++c)
      m(r, c) = read_complex(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

Index read_q(const json& root, const std::string& path) {
  const json& jq = member(root, path, "q");
  if (!jq.is_number_integer() || jq.get<long long>() < 1) throw ParseError(path + ".q", "expected a positive integer");
  return static_cast<Index>(jq.get<long long>());
}

std::vector<CMatrix> read_matrix_list(const json& j, const std::string& path, Index q) {
  if (!j.is_array()) throw ParseError(path, "expected a list of matrices");
  std::vector<CMatrix> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const json& m = j[k];
    // A wrong block size is a dimension error about coefficient k, not a syntax error.
    if (m.is_array() && (m.size() != static_cast<std::size_t>(q) ||
                         std::any_of(m.begin(), m.end(), [q](const json& row) {
                           return row.is_array() && row.size() != static_cast<std::size_t>(q);
                         })))
      throw DimensionError(p + ": coefficient " + std::to_string(k) + " is not " + std::to_string(q) + "x" +
                           std::to_string(q));
    out.push_back(read_matrix(m, p, q));
  }
  return out;
}

json matrix_list_json(const std::vector<CMatrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

json sequence_json(const SequenceDocument& doc) {
  json j;
  j["q"] = doc.q;
  j["kind"] = doc.kind == SeqKind::COVARIANCE ? "covariance" : "gamma";
  j["coeffs"] = matrix_list_json(doc.coeffs);
  j["metadata"] = json::object();
  for (const auto& [k, v] : doc.metadata) j["metadata"][k] = v;
  return j;
}

SequenceDocument sequence_from_json(const json& root, const std::string& path) {
  SequenceDocument doc;
  doc.q = read_q(root, path);
  const json& kind = member(root, path, "kind");
  if (kind == "covariance")
    doc.kind = SeqKind::COVARIANCE;
  else if (kind == "gamma")
    doc.kind = SeqKind::GAMMA;
  else
    throw ParseError(path + ".kind", "expected \"covariance\" or \"gamma\"");
  doc.coeffs = read_matrix_list(member(root, path, "coeffs"), path + ".coeffs", doc.q);
  if (doc.coeffs.empty()) throw ParseError(path + ".coeffs", "at least one coefficient is required");
  if (auto it = root.find("metadata"); it != root.end()) {
    if (!it->is_object()) throw ParseError(path + ".metadata", "expected an object of strings");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw ParseError(path + ".metadata." + k, "expected a string");
      doc.metadata[k] = v.get<std::string>();
    }
  }
  return doc;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("$", std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace

HermSeq covariances(const SequenceDocument& doc) {
  if (doc.kind == SeqKind::GAMMA) return to_covariance(GammaSeq(doc.coeffs));
  return HermSeq(doc.coeffs);
}

SequenceDocument covariance_document(const HermSeq& seq, std::map<std::string, std::string> metadata) {
  return {seq.q(), SeqKind::COVARIANCE, seq.coeffs(), std::move(metadata)};
}

ReportSummary summarize(const RecoveryReport& r) {
  return {r.errors, r.max_error, r.tol, r.pass, r.atom_count, r.atom_bound, r.psd_violations};
}

SequenceDocument parse_sequence(const std::string& text) { return sequence_from_json(parse_text(text), "$"); }

std::string serialize(const SequenceDocument& doc) { return dump(sequence_json(doc)); }

std::string serialize(const MeasureDocument& doc) {
  json j;
  j["q"] = doc.q;
  j["provenance"] = doc.provenance;
  j["atoms"] = json::array();
  for (const auto& a : doc.atoms) {
    double t = std::arg(a.u);
    if (t < 0) t += kTwoPi;
    if (t >= kTwoPi) t = 0.0;
    j["atoms"].push_back({{"angle", canon(t)}, {"u", complex_json(a.u)}, {"weight", matrix_json(hermitian_from_lower(a.w))}});
  }
  j["density_samples"] = json::array();
  for (const auto& s : doc.density_samples)
    j["density_samples"].push_back({{"angle", canon(s.angle)}, {"matrix", matrix_json(s.value)}});
  if (doc.quotient)
    j["quotient"] = {{"a_coeffs", matrix_list_json(doc.quotient->a.coeffs())},
                     {"b_coeffs", matrix_list_json(doc.quotient->b.coeffs())}};
  if (doc.report) {
    const auto& r = *doc.report;
    json errs = json::array();
    for (double e : r.errors) errs.push_back(canon(e));
    j["report"] = {{"errors", errs},
                   {"max_error", canon(r.max_error)},
                   {"tol", canon(r.tol)},
                   {"pass", r.pass},
                   {"atom_count", r.atom_count},
                   {"atom_bound", r.atom_bound},
                   {"psd_violations", r.psd_violations}};
  }
  if (doc.sequence) j["sequence"] = sequence_json(*doc.sequence);
  if (!doc.warnings.empty()) j["warnings"] = doc.warnings;
  return dump(j);
}

MeasureDocument parse_measure(const std::string& text) {
  const json root = parse_text(text);
  MeasureDocument doc;
  doc.q = read_q(root, "$");
  if (auto it = root.find("provenance"); it != root.end()) {
    if (!it->is_string()) throw ParseError("$.provenance", "expected a string");
    doc.provenance = it->get<std::string>();
  }
  const json& atoms = member(root, "$", "atoms");
  if (!atoms.is_array()) throw ParseError("$.atoms", "expected a list");
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const std::string p = "$.atoms[" + std::to_string(k) + "]";
    const double angle = read_number(member(atoms[k], p, "angle"), p + ".angle");
    if (angle < 0 || angle >= kTwoPi) throw ParseError(p + ".angle", "expected a value in [0, 2pi)");
    const Complex u = read_complex(member(atoms[k], p, "u"), p + ".u");
    const CMatrix w = read_matrix(member(atoms[k], p, "weight"), p + ".weight", doc.q);
    doc.atoms.push_back({u, hermitian_from_lower(w)});
  }
  if (auto it = root.find("density_samples"); it != root.end()) {
    if (!it->is_array()) throw ParseError("$.density_samples", "expected a list");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = "$.density_samples[" + std::to_string(k) + "]";
      const json& s = (*it)[k];
      doc.density_samples.push_back({read_number(member(s, p, "angle"), p + ".angle"),
                                     read_matrix(member(s, p, "matrix"), p + ".matrix", doc.q)});
    }
  }
  if (auto it = root.find("quotient"); it != root.end()) {
    auto a = read_matrix_list(member(*it, "$.quotient", "a_coeffs"), "$.quotient.a_coeffs", doc.q);
    auto b = read_matrix_list(member(*it, "$.quotient", "b_coeffs"), "$.quotient.b_coeffs", doc.q);
    if (a.empty() || a.size() != b.size())
      throw ParseError("$.quotient", "a_coeffs and b_coeffs must be non-empty and of equal length");
    const std::size_t n = a.size() - 1;
    doc.quotient = CaratheodoryQuotient{MatPoly(doc.q, std::move(a)), MatPoly(doc.q, std::move(b)), n};
  }
  if (auto it = root.find("report"); it != root.end()) {
    const std::string p = "$.report";
    ReportSummary r;
    const json& errs = member(*it, p, "errors");
    if (!errs.is_array()) throw ParseError(p + ".errors", "expected a list");
    for (std::size_t k = 0; k < errs.size(); ++k)
      r.errors.push_back(read_number(errs[k], p + ".errors[" + std::to_string(k) + "]"));
    r.max_error = read_number(member(*it, p, "max_error"), p + ".max_error");
    r.tol = read_number(member(*it, p, "tol"), p + ".tol");
    const json& pass = member(*it, p, "pass");
    if (!pass.is_boolean()) throw ParseError(p + ".pass", "expected a boolean");
    r.pass = pass.get<bool>();
    const auto count = [&](const char* key) {
      const json& v = member(*it, p, key);
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(p + "." + key, "expected a non-negative integer");
      return v.get<std::size_t>();
    };
    r.atom_count = count("atom_count");
    r.atom_bound = count("atom_bound");
    r.psd_violations = count("psd_violations");
    doc.report = r;
  }
  if (auto it = root.find("sequence"); it != root.end()) doc.sequence = sequence_from_json(*it, "$.sequence");
  if (auto it = root.find("warnings"); it != root.end()) {
    if (!it->is_array()) throw ParseError("$.warnings", "expected a list of strings");
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_string()) throw ParseError("$.warnings[" + std::to_string(k) + "]", "expected a string");
      doc.warnings.push_back((*it)[k].get<std::string>());
    }
  }
  return doc;
}

std::vector<double> half_step_angles(int count) {
  if (count < 0) throw InvalidInput("sample count must be non-negative");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = kTwoPi * (k + 0.5) / count;
  return out;
}

MeasureDocument measure_document(const SpectralMeasure& sm, int samples) {
  MeasureDocument doc;
  doc.q = sm.q;
  doc.provenance = to_string(sm.provenance);
  doc.atoms = sm.atoms;
  for (double t : half_step_angles(samples)) doc.density_samples.push_back({t, density_at(sm, std::polar(1.0, t))});
  doc.quotient = sm.quotient;
  return doc;
}

SpectralMeasure to_measure(const MeasureDocument& doc, const Tolerances& tol) {
  SpectralMeasure sm = atoms_only_measure(doc.q, doc.atoms);
  sm.tol = tol;
  if (doc.quotient) {
    sm.quotient = doc.quotient;
    sm.provenance = Provenance::CENTRAL;
    sm.atom_radius = atom_radii(sm);
  }
  return sm;
}

std::string density_csv(const MeasureDocument& doc) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "angle";
  for (Index r = 0; r < doc.q; ++r)
    for (Index c = 0; c < doc.q; ++c) os << ",re_" << r << c << ",im_" << r << c;
  os << '\n';
  for (const auto& s : doc.density_samples) {
    os << s.angle;
    for (Index r = 0; r < doc.q; ++r)
      for (Index c = 0; c < doc.q; ++c) os << ',' << canon(s.value(r, c).real()) << ',' << canon(s.value(r, c).imag());
    os << '\n';
  }
  return os.str();
}

}  // namespace tmoment
