#include "kwc/forcing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kwc {

Waveform Waveform::constant(double c) {
  Waveform w;
  w.kind = Kind::constant;
  w.value = c;
  return w;
}

Waveform Waveform::sinusoid(double amplitude, double phase) {
  Waveform w;
  w.kind = Kind::sinusoid;
  w.amplitude = amplitude;
  w.phase = phase;
  return w;
}

Waveform Waveform::tabulated(std::vector<double> samples) {
  Waveform w;
  w.kind = Kind::tabulated;
  w.samples = std::move(samples);
  return w;
}

double Waveform::step_average(int i, int m, double T) const {
  switch (kind) {
    case Kind::constant:
      return value;
    case Kind::sinusoid: {
      const double omega = 2.0 * std::numbers::pi / T;
      const double tau = T / m;
      const double t0 = (i - 1) * tau, t1 = i * tau;
      // (1/tau) * int A sin(omega t + phase) dt
      return amplitude / (omega * tau) *
             (std::cos(omega * t0 + phase) - std::cos(omega * t1 + phase));
    }
    case Kind::tabulated:
      if (i < 1 || i > static_cast<int>(samples.size()))
        throw std::invalid_argument("Waveform: tabulated step out of range");
      return samples[static_cast<std::size_t>(i - 1)];
  }
  return 0.0;
}

double Waveform::sup(int m, double T) const {
  switch (kind) {
    case Kind::constant:
      return std::abs(value);
    case Kind::sinusoid:
      return std::abs(amplitude);
    case Kind::tabulated: {
      double s = 0.0;
      for (double v : samples) s = std::max(s, std::abs(v));
      (void)m;
      (void)T;
      return s;
    }
  }
  return 0.0;
}

bool in_Z(double u_sup, double v_sup, double R0, const ModelParams& p) {
  return std::max(u_sup, v_sup) <= R0 && p.g(-R0) <= -u_sup &&
         u_sup <= p.g(R0) && p.M0 * R0 >= v_sup;
}

ForcingSchedule ForcingSchedule::from_waveforms(const Grid& grid,
                                                const Waveform& u,
                                                const Waveform& v,
                                                const SchemeParams& s,
                                                const ModelParams& p,
                                                double extra_sup) {
  ForcingSchedule f;
  const double u_sup = u.sup(s.m, s.T);
  const double v_sup = v.sup(s.m, s.T);
  f.R0 = compute_R0(u_sup, v_sup, extra_sup, p);
  f.u_steps.reserve(s.m);
  f.v_steps.reserve(s.m);
  double u_step_sup = 0.0, v_step_sup = 0.0;
  for (int i = 1; i <= s.m; ++i) {
    const double ui = u.step_average(i, s.m, s.T);
    const double vi = v.step_average(i, s.m, s.T);
    u_step_sup = std::max(u_step_sup, std::abs(ui));
    v_step_sup = std::max(v_step_sup, std::abs(vi));
    f.u_steps.emplace_back(grid, ui);
    f.v_steps.emplace_back(grid, vi);
  }
  f.in_class_Z = in_Z(u_step_sup, v_step_sup, f.R0, p);
  return f;
}

ForcingSchedule ForcingSchedule::from_fields(std::vector<ScalarField> u,
                                             std::vector<ScalarField> v,
                                             double R0, const ModelParams& p) {
  if (u.size() != v.size())
    throw std::invalid_argument("ForcingSchedule: step count mismatch");
  double u_sup = 0.0, v_sup = 0.0;
  for (const auto& f : u) {
    if (!f.all_finite())
      throw std::invalid_argument("ForcingSchedule: non-finite forcing");
    u_sup = std::max(u_sup, f.linf());
  }
  for (const auto& f : v) {
    if (!f.all_finite())
      throw std::invalid_argument("ForcingSchedule: non-finite forcing");
    v_sup = std::max(v_sup, f.linf());
  }
  ForcingSchedule out;
  out.u_steps = std::move(u);
  out.v_steps = std::move(v);
  out.R0 = R0;
  out.in_class_Z = in_Z(u_sup, v_sup, R0, p);
  return out;
}

}  // namespace kwc
