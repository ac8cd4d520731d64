#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace slcogarch {

// Forward DFT with the negative-exponent convention, any length, O(n log n)
// (radix-2 with a Bluestein fallback for non powers of two).
std::vector<std::complex<double>> fft(std::vector<std::complex<double>> x,
                                      bool inverse = false);

// DFT ordinates d(zeta_P) = sum_k x_k exp(+i k zeta_P), zeta_P = 2 pi P / n,
// for P = 0..n-1 (positive-exponent convention).  Needs n >= 2.
std::vector<std::complex<double>> dft_ordinates(std::span<const double> x);

// Squared sample coherence between the frequency windows of length m_window
// starting at ordinates p and q (indices wrap modulo n).  Bounded in [0, 1]
// by Cauchy-Schwarz.  Throws std::domain_error when both windows are
// identically zero.
double coherence(std::span<const double> x, int p, int q, int m_window);

// Per-pair significance cutoff 1 - exp(log(alpha) / (m_window - 1)).
double coherence_threshold(double alpha, int m_window);

enum class SeriesClass { unclassified, stationary, periodically_correlated,
                         nonstationary };

struct CoherenceOptions {
  int m_window = 0;
  double alpha = 0.05;
  // Subsampling step for the starting ordinate q along each diagonal of the
  // (p, q) grid; 0 picks the smallest stride keeping the recorded pair count
  // near 4e6.  Every diagonal offset is still evaluated.
  int stride = 0;
  bool center = true;           // subtract the series mean before the DFT
  bool keep_all_values = false; // retain every evaluated pair, not only
                                // exceedances
  int min_spacing = 4;          // smallest admissible diagonal spacing
  double concentration = 0.60;  // required mass on multiples of the spacing
};

struct CoherencePoint {
  int p = 0;
  int q = 0;
  double value = 0.0;
};

struct CoherenceReport {
  int n = 0;
  int m_window = 0;
  double alpha = 0.0;
  double threshold = 0.0;
  int stride_used = 1;
  long evaluated_pairs = 0;
  long offdiag_pairs = 0;
  long offdiag_significant = 0;
  std::vector<CoherencePoint> significant;
  std::vector<CoherencePoint> values;  // only when keep_all_values
  std::vector<long> histogram;         // significant count per offset p - q
  std::vector<long> diagonal_count;    // evaluated pairs per offset
  std::vector<double> diagonal_value_sum;  // coherence total per offset
  double max_value = 0.0;
  double min_value = 1.0;
  std::optional<int> estimated_period;
  SeriesClass classification = SeriesClass::unclassified;
  CoherenceOptions options;
};

// Evaluates the coherence on the lower triangle q <= p (q stepped by the
// stride, all diagonal offsets covered) and records pairs exceeding the
// alpha-threshold.
CoherenceReport significant_pairs(std::span<const double> x,
                                  const CoherenceOptions& options);

// Diagonal-line rule.  If the off-diagonal exceedances stay within twice
// the alpha-expected false-positive count the series is stationary.
// Otherwise the period is the series length over the diagonal-line spacing,
// located by two routes: first the exceedance-count route (smallest
// prominent spacing whose multiples, within one bin, carry the required
// share of all significant pairs), then a line-detection route on the
// per-diagonal mean coherence profile (diagonals whose value stands well
// above the local background are lines; the smallest line whose multiples
// and their mirror images explain the required share of all lines is the
// spacing).  The second route is what survives large smoothing windows,
// where per-pair exceedances saturate far above alpha.  If neither route
// finds a spacing the series is non-stationary.  Sets the report's
// classification and period.
std::optional<int> estimate_period(CoherenceReport& report);

// Biased sample autocorrelation, lag 0 = 1.  Throws std::domain_error for a
// constant series.
std::vector<double> sample_acf(std::span<const double> x, int max_lag);

const char* to_string(SeriesClass c);

}  // namespace slcogarch
