#pragma once

// Power series at x -> 0 and asymptotic series at x -> inf for f, f', f'',
// f_alpha and f_alpha_alpha of the standard symmetric stable density.
// k is the number of summed terms. Zero-side sums start at the lowest power
// present (x^0 for even quantities, x^1 for f'); tail sums start at k = 1.

namespace symstable {

struct SeriesResult {
  double value = 0.0;
  int terms_used = 0;
  double last_term_magnitude = 0.0;  // |final added term|
};

// All functions throw std::domain_error for alpha outside (0, 2], k < 1, or
// (zero side) x < 0, (tail side) x <= 0.

SeriesResult f_series_zero(double x, double alpha, int k);
SeriesResult f_series_tail(double x, double alpha, int k);

SeriesResult fp_series_zero(double x, double alpha, int k);
SeriesResult fp_series_tail(double x, double alpha, int k);

SeriesResult fpp_series_zero(double x, double alpha, int k);
SeriesResult fpp_series_tail(double x, double alpha, int k);

SeriesResult fa_series_zero(double x, double alpha, int k);
SeriesResult fa_series_tail(double x, double alpha, int k);

SeriesResult faa_series_zero(double x, double alpha, int k);
SeriesResult faa_series_tail(double x, double alpha, int k);

}  // namespace symstable
