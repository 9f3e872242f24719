#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tmoment/io.hpp"

namespace tmoment::cli {

namespace {

enum class Level { QUIET, WARN, INFO, DEBUG };

Level log_level() {
  const char* v = std::getenv("TMOMENT_LOG");
  if (!v) return Level::WARN;
  const std::string s(v);
  if (s == "quiet" || s == "0") return Level::QUIET;
  if (s == "info") return Level::INFO;
  if (s == "debug") return Level::DEBUG;
  return Level::WARN;
}

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), level_(log_level()) {}
  void warn(const std::string& m) const { emit(Level::WARN, "warning", m); }
  void info(const std::string& m) const { emit(Level::INFO, "info", m); }
  void debug(const std::string& m) const { emit(Level::DEBUG, "debug", m); }

 private:
  void emit(Level l, const char* tag, const std::string& m) const {
    if (static_cast<int>(l) <= static_cast<int>(level_)) err_ << "tmoment: " << tag << ": " << m << '\n';
  }
  std::ostream& err_;
  Level level_;
};

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string subscript(const std::string& digits) {
  static const char* sub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : digits) out += sub[c - '0'];
  return out;
}

// "T_12" -> "T₁₂" for messages shown to people.
std::string pretty(const std::string& msg) {
  static const std::regex re("\\b([TS])_([0-9]+)");
  std::string out;
  auto it = std::sregex_iterator(msg.begin(), msg.end(), re);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    out += msg.substr(last, static_cast<std::size_t>(it->position()) - last);
    out += (*it)[1].str() + subscript((*it)[2].str());
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  return out + msg.substr(last);
}

std::string read_all(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path == "-") {
    ss << in.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open '" + path + "' for reading");
  ss << f.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, std::ostream& out, const std::string& text) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoFailure("failed writing '" + path + "'");
}

Complex parse_z(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {re, 0.0};
    }
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {re, im};
  } catch (const std::logic_error&) {
    throw InvalidInput("--z expects re,im but got '" + s + "'");
  }
}

struct Options {
  std::string input = "-";
  std::string output = "-";
  Tolerances tol;
  double verify_tol = 1e-6;
  std::size_t length = 0;
  std::size_t order = 0;
  int samples = 720;
  std::string csv;
  std::string sequence_path;
  std::vector<std::string> zs;
};

MeasureDocument spectrum_document(const SpectralMeasure& sm, const HermSeq& seq, const Options& o) {
  MeasureDocument doc = measure_document(sm, o.samples);
  doc.report = summarize(verify_recovery(sm, seq, o.verify_tol));
  doc.sequence = covariance_document(seq);
  return doc;
}

void emit_measure(const MeasureDocument& doc, const Options& o, std::ostream& out) {
  write_all(o.output, out, serialize(doc));
  if (!o.csv.empty()) write_all(o.csv, out, density_csv(doc));
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const SequenceDocument doc = parse_sequence(read_all(o.input, in));
  int status = kOk;
  nlohmann::json j;
  if (doc.kind == SeqKind::GAMMA) {
    const GammaSeq g(doc.coeffs);
    const auto fail = caratheodory_failure(g, o.tol.psd_tol);
    j["caratheodory"] = !fail.has_value();
    if (fail) {
      err << "re S" << subscript(std::to_string(*fail)) << " not nonnegative Hermitian (not a Caratheodory sequence)\n";
      status = kModelError;
    }
  }
  const HermSeq seq = covariances(doc);
  const Classification c = classify(seq, o.tol.psd_tol);
  j["class"] = to_string(c.kind);
  if (c.first_failure) j["first_failure"] = *c.first_failure;
  if (c.kind == SeqClass::NOT_TND) {
    err << "T" << subscript(std::to_string(*c.first_failure)) << " not nonnegative Hermitian\n";
    status = kModelError;
  } else {
    j["caratheodory"] = caratheodory_check(to_gamma(seq), o.tol.psd_tol);
    if (auto k = central_order(seq, o.tol))
      j["central_order"] = *k;
    else
      j["central_order"] = nullptr;
  }
  write_all(o.output, out, j.dump(2) + "\n");
  return status;
}

int cmd_extend(const Options& o, std::istream& in, std::ostream& out) {
  const SequenceDocument doc = parse_sequence(read_all(o.input, in));
  const HermSeq ext = central_extend(covariances(doc), o.length, o.tol);
  write_all(o.output, out, serialize(covariance_document(ext, doc.metadata)));
  return kOk;
}

int cmd_spectrum(const Options& o, std::istream& in, std::ostream& out, const Log& log) {
  const HermSeq seq = covariances(parse_sequence(read_all(o.input, in)));
  const SpectralMeasure sm = central_measure(seq, o.tol);
  log.info("central measure with " + std::to_string(sm.atoms.size()) + " atom(s)");
  if (sm.pd_crosscheck) log.debug("pd cross-check discrepancy " + std::to_string(*sm.pd_crosscheck));
  const MeasureDocument doc = spectrum_document(sm, seq, o);
  if (!doc.report->pass) log.warn("Fourier recovery error " + std::to_string(doc.report->max_error) + " exceeds tolerance");
  emit_measure(doc, o, out);
  return kOk;
}

int cmd_ar_spectrum(const Options& o, std::istream& in, std::ostream& out, const Log& log) {
  const HermSeq seq = covariances(parse_sequence(read_all(o.input, in)));
  const ArSpectrum ar = ar_spectrum(seq, o.order, o.tol);
  for (const auto& w : ar.warnings) log.warn(w);
  MeasureDocument doc = spectrum_document(ar.measure, seq.prefix(o.order + 1), o);
  doc.warnings = ar.warnings;
  emit_measure(doc, o, out);
  return kOk;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const MeasureDocument doc = parse_measure(read_all(o.input, in));
  HermSeq seq = o.sequence_path.empty() ? HermSeq() : covariances(parse_sequence(read_all(o.sequence_path, in)));
  if (o.sequence_path.empty()) {
    if (!doc.sequence) throw InvalidInput("measure has no embedded sequence; pass --sequence");
    seq = covariances(*doc.sequence);
  }
  const RecoveryReport r = verify_recovery(to_measure(doc, o.tol), seq, o.verify_tol);
  const ReportSummary s = summarize(r);
  nlohmann::json j;
  j["pass"] = s.pass;
  j["max_error"] = s.max_error;
  j["tol"] = s.tol;
  j["errors"] = s.errors;
  j["atom_count"] = s.atom_count;
  j["atom_bound"] = s.atom_bound;
  j["psd_violations"] = s.psd_violations;
  write_all(o.output, out, j.dump(2) + "\n");
  if (!s.pass) {
    err << "recovery error " << s.max_error << " exceeds tolerance " << s.tol << '\n';
    return kModelError;
  }
  return kOk;
}

int cmd_eval_phi(const Options& o, std::istream& in, std::ostream& out) {
  const SequenceDocument doc = parse_sequence(read_all(o.input, in));
  const GammaSeq g = doc.kind == SeqKind::GAMMA ? GammaSeq(doc.coeffs) : to_gamma(HermSeq(doc.coeffs));
  const CaratheodoryQuotient cq = build_ab(g, g.last_index(), o.tol);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : o.zs) {
    const Complex z = parse_z(s);
    const CMatrix phi = eval_phi(cq, z);
    nlohmann::json m = nlohmann::json::array();
    for (Index r = 0; r < phi.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Index c = 0; c < phi.cols(); ++c) row.push_back({phi(r, c).real() + 0.0, phi(r, c).imag() + 0.0});
      m.push_back(row);
    }
    arr.push_back({{"z", {z.real(), z.imag()}}, {"phi", m}});
  }
  write_all(o.output, out, arr.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  const Log log(err);
  Options o;
  CLI::App app{"Central solutions of the matricial trigonometric moment problem", "tmoment"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tmoment 0.1.0");

  app.add_option("--psd-tol", o.tol.psd_tol, "relative tolerance for nonnegativity tests")->capture_default_str();
  app.add_option("--root-tol", o.tol.root_tol, "distance from the unit circle for a unimodular root")
      ->capture_default_str();
  app.add_option("--rank-rtol", o.tol.rank_rtol, "relative singular value cutoff in pseudoinverses")
      ->capture_default_str();
  app.add_option("--verify-tol", o.verify_tol, "Fourier recovery tolerance")->capture_default_str();
  app.add_option("-o,--output", o.output, "output path, - for stdout")->capture_default_str();

  const auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->capture_default_str();
    sub->fallthrough();
  };
  auto* check = app.add_subcommand("check", "classify a sequence and test the Caratheodory condition");
  input(check, "sequence document, - for stdin");
  auto* extend = app.add_subcommand("extend", "central extension to a given number of coefficients");
  input(extend, "sequence document, - for stdin");
  extend->add_option("--length", o.length, "number of coefficients in the result")->required();
  auto* spectrum = app.add_subcommand("spectrum", "central spectral measure");
  input(spectrum, "sequence document, - for stdin");
  auto* ar = app.add_subcommand("ar-spectrum", "spectral measure of an autoregressive sequence");
  input(ar, "sequence document, - for stdin");
  ar->add_option("--order", o.order, "autoregressive order")->required();
  for (auto* sub : {spectrum, ar}) {
    sub->add_option("--density-samples", o.samples, "uniform half-step density samples")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--csv", o.csv, "also write density samples as CSV");
  }
  auto* verify = app.add_subcommand("verify", "compare a measure's Fourier coefficients with a sequence");
  input(verify, "measure document, - for stdin");
  verify->add_option("--tol", o.verify_tol, "recovery tolerance (same as --verify-tol)");
  verify->add_option("--sequence", o.sequence_path, "sequence document, defaults to the embedded one");
  auto* phi = app.add_subcommand("eval-phi", "evaluate the central Caratheodory function");
  input(phi, "sequence document, - for stdin");
  phi->add_option("--z", o.zs, "point re,im inside the unit disk (repeatable)")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }

  try {
    if (*check) return cmd_check(o, in, out, err);
    if (*extend) return cmd_extend(o, in, out);
    if (*spectrum) return cmd_spectrum(o, in, out, log);
    if (*ar) return cmd_ar_spectrum(o, in, out, log);
    if (*verify) return cmd_verify(o, in, out, err);
    if (*phi) return cmd_eval_phi(o, in, out);
  } catch (const ModelError& e) {
    err << "tmoment: " << pretty(e.what()) << '\n';
    return kModelError;
  } catch (const MultiplicityError& e) {
    err << "tmoment: " << e.what() << '\n';
    return kModelError;
  } catch (const DegenerateZero& e) {
    err << "tmoment: " << e.what() << '\n';
    return kModelError;
  } catch (const NoLimit& e) {
    err << "tmoment: " << e.what() << '\n';
    return kModelError;
  } catch (const IoFailure& e) {
    err << "tmoment: " << e.what() << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "tmoment: " << pretty(e.what()) << '\n';
    return kIoError;
  }
  return kIoError;
}

}  // namespace tmoment::cli
