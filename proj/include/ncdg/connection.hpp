#pragma once

#include "ncdg/metric.hpp"

namespace ncdg {

struct ChiralCoefficients {
  SeriesArray ups;  // ups(i, j, k) = Upsilon_{ijk}

  static ChiralCoefficients zero(int n, int truncation) { return {SeriesArray(n, 3, truncation)}; }
};

struct ConnectionCoefficients {
  SeriesArray lower;        // (i, j, k) -> Gamma_{ijk}
  SeriesArray lower_tilde;  // (i, j, k) -> Gamma~_{ijk}
  SeriesArray upper;        // (i, j, k) -> Gamma^k_{ij}
  SeriesArray upper_tilde;  // (i, j, k) -> Gamma~^k_{ij}
};

// Throws AsymmetricChiral unless Upsilon_{ijk} = Upsilon_{jik}.
void validate_chiral(const ChiralCoefficients& ups);

// Throws AsymmetricChiral, or IncompatibleChiral when
// d_k(g_ij - g_ji) != Upsilon_kij - Upsilon_kji, in which case no compatible
// torsion-free pair exists. Also asserts the raise/lower round trip.
ConnectionCoefficients canonical_connection(const NCMetric& g, const InverseMetric& ginv,
                                            const ChiralCoefficients& ups);

// Raises Gamma_{ijm} * g^{ml} and g^{mk} * Gamma~_{ijk}.
ConnectionCoefficients connection_from_lowered(SeriesArray lower, SeriesArray lower_tilde,
                                               const InverseMetric& ginv, const StarProduct& s);
// Lowers Gamma^l_{ij} * g_{lk} and g_{kl} * Gamma~^l_{ij}.
ConnectionCoefficients connection_from_raised(SeriesArray upper, SeriesArray upper_tilde,
                                              const NCMetric& g);

CheckResult check_compatibility(const NCMetric& g, const ConnectionCoefficients& conn);
CheckResult check_chirality_and_torsion(const ConnectionCoefficients& conn,
                                        const ChiralCoefficients& ups);
CheckResult check_metric_parallel(const NCMetric& g, const InverseMetric& ginv,
                                  const ConnectionCoefficients& conn);
CheckResult check_raised_lowered(const NCMetric& g, const ConnectionCoefficients& conn);
// Upsilon[2q] = 0.
CheckResult check_chiral_parity(const ChiralCoefficients& ups);
// Gamma[q] = (-1)^q Gamma~[q] on its own, without hypotheses.
CheckResult connection_parity_relation(const ConnectionCoefficients& conn);
// The relation above, reported as skipped when g or Upsilon violate the
// parity hypotheses; the relation outcome is still recorded.
CheckResult check_connection_parity(const NCMetric& g, const ChiralCoefficients& ups,
                                    const ConnectionCoefficients& conn);

}  // namespace ncdg
