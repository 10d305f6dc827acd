#ifndef KWC_FORCING_HPP
#define KWC_FORCING_HPP

#include <string>
#include <vector>

#include "kwc/coefficients.hpp"
#include "kwc/constants.hpp"
#include "kwc/grid.hpp"

namespace kwc {

/// Time-only forcing waveform. Step values are the exact cell averages
/// (1/tau) * integral over [t_{i-1}, t_i], so the sinusoid integrates in
/// closed form. "tabulated" supplies the per-step averages directly.
struct Waveform {
  enum class Kind { constant, sinusoid, tabulated };
  Kind kind = Kind::constant;
  double value = 0.0;      // constant
  double amplitude = 0.0;  // sinusoid: A sin(2 pi t / T + phase)
  double phase = 0.0;
  std::vector<double> samples;  // tabulated, one per step

  double step_average(int i, int m, double T) const;
  double sup(int m, double T) const;

  static Waveform constant(double c);
  static Waveform sinusoid(double amplitude, double phase = 0.0);
  static Waveform tabulated(std::vector<double> samples);
};

/// Discretized forcing pair [u_i, v_i], i = 1..m, with the sup-norm radius
/// R0 it was admitted under and the Z(R0) membership flag.
struct ForcingSchedule {
  std::vector<ScalarField> u_steps, v_steps;
  double R0 = 0.0;
  bool in_class_Z = false;

  int steps() const { return static_cast<int>(u_steps.size()); }

  /// Builds the schedule from waveforms, computes R0 from the continuous
  /// sup-norms (extra_sup covers initial data), and evaluates Z(R0).
  static ForcingSchedule from_waveforms(const Grid& grid, const Waveform& u,
                                        const Waveform& v,
                                        const SchemeParams& s,
                                        const ModelParams& p,
                                        double extra_sup = 0.0);

  /// Wraps explicit per-step fields under a given radius.
  static ForcingSchedule from_fields(std::vector<ScalarField> u,
                                     std::vector<ScalarField> v, double R0,
                                     const ModelParams& p);
};

/// The four admissibility bullets of the class Z(R0).
bool in_Z(double u_sup, double v_sup, double R0, const ModelParams& p);

}  // namespace kwc

#endif
