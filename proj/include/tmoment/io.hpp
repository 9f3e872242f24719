#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmoment/spectral.hpp"

namespace tmoment {

/// Malformed document. The message starts with the JSON path of the offending node.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class SeqKind { COVARIANCE, GAMMA };

struct SequenceDocument {
  Index q = 0;
  SeqKind kind = SeqKind::COVARIANCE;
  std::vector<CMatrix> coeffs;
  std::map<std::string, std::string> metadata;
};

/// Covariances C_0..C_n, converting from Gamma form if needed.
HermSeq covariances(const SequenceDocument& doc);
SequenceDocument covariance_document(const HermSeq& seq, std::map<std::string, std::string> metadata = {});

struct DensitySample {
  double angle = 0.0;
  CMatrix value;
};

struct ReportSummary {
  std::vector<double> errors;
  double max_error = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::size_t atom_count = 0;
  std::size_t atom_bound = 0;
  std::size_t psd_violations = 0;
};

ReportSummary summarize(const RecoveryReport& r);

struct MeasureDocument {
  Index q = 0;
  std::string provenance;
  std::vector<Atom> atoms;
  std::vector<DensitySample> density_samples;
  std::optional<CaratheodoryQuotient> quotient;
  std::optional<ReportSummary> report;
  /// The covariances the measure was built from.
  std::optional<SequenceDocument> sequence;
  std::vector<std::string> warnings;
};

SequenceDocument parse_sequence(const std::string& text);
std::string serialize(const SequenceDocument& doc);

MeasureDocument parse_measure(const std::string& text);
std::string serialize(const MeasureDocument& doc);

/// Angles 2 pi (k + 1/2)/N, k = 0..N-1.
std::vector<double> half_step_angles(int count);

/// Measure document for sm sampled at `samples` half-step angles.
MeasureDocument measure_document(const SpectralMeasure& sm, int samples);

/// Rebuilds enough of a spectral measure to evaluate Fourier coefficients:
/// the quotient when present, otherwise atoms only.
SpectralMeasure to_measure(const MeasureDocument& doc, const Tolerances& tol = {});

/// angle then row-major re/im entries, one line per sample.
std::string density_csv(const MeasureDocument& doc);

}  // namespace tmoment
