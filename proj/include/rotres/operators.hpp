// Rotated-frame bilinear operators B, B_R, B_NR, the bar/osc splitting and
// numerical checks of the resonant cancellations.
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rotres/helical.hpp"
#include "rotres/resonance.hpp"

namespace rotres {

/// Tolerance on the relative divergence defect accepted by the operators.
inline constexpr double kOperatorDivTol = 1e-10;

/// B(theta; a, b) = L(-theta) P F[(L(theta)a . grad) L(theta)b], alias-free,
/// with the mean mode of the result set to zero.
SpectralField bilinear_full(double theta, const SpectralField& a, const SpectralField& b);

/// B_R compiled into a flat list of helical interaction coefficients
///   g = i (e^{s1}(k) . m) (e^{s2}(m) | e^{s3}(n)),
/// grouped by output slot (n, s3) in the triad order of the resonant set.
class ResonantInteractions {
 public:
  /// R must be an all-omega-zero cube enumeration with R.L >= trunc.
  ResonantInteractions(const ResonantSet& R, int trunc);

  int trunc() const { return trunc_; }
  std::size_t term_count() const { return terms_.size(); }
  std::size_t triad_count() const { return triad_count_; }

  /// Groups are summed independently across threads; each group sums in list order.
  HelicalField apply(const HelicalField& a, const HelicalField& b) const;
  HelicalField apply_serial(const HelicalField& a, const HelicalField& b) const;

 private:
  struct Term {
    std::uint32_t k, m;
    std::uint8_t s1, s2;
    cplx g;
  };
  struct Group {
    std::uint32_t out;
    std::uint8_t s3;
    std::size_t begin, end;
  };
  int trunc_ = 0;
  std::size_t triad_count_ = 0;
  std::vector<Term> terms_;
  std::vector<Group> groups_;

  void accumulate(const Group& g, const HelicalField& a, const HelicalField& b, HelicalField& out) const;
};

/// All-omega-zero cube set at truncation N, compiled once per N per process.
std::shared_ptr<const ResonantInteractions> resonant_interactions(int trunc);

SpectralField bilinear_resonant(const SpectralField& a, const SpectralField& b, const ResonantInteractions& R);
SpectralField bilinear_resonant(const SpectralField& a, const SpectralField& b, const ResonantSet& R);
SpectralField bilinear_resonant_serial(const SpectralField& a, const SpectralField& b, const ResonantInteractions& R);

/// bilinear_full(theta, a, b) - bilinear_resonant(a, b).
SpectralField bilinear_nonresonant(double theta, const SpectralField& a, const SpectralField& b,
                                   const ResonantInteractions& R);
SpectralField bilinear_nonresonant(double theta, const SpectralField& a, const SpectralField& b,
                                   const ResonantSet& R);

// ---------------------------------------------------------------------------

/// bar: modes with n3 = 0 (2D-3C); osc: the rest.
struct SplitField {
  int trunc = 0;
  std::array<PlaneField, 2> bar_h;
  PlaneField bar_3;
  SpectralField osc;
};

SplitField split_bar_osc(const SpectralField& f);
SpectralField reassemble(const SplitField& s);

/// The two parts as 3D fields on the original box.
SpectralField bar_part(const SpectralField& f);
SpectralField osc_part(const SpectralField& f);

struct CancellationReport {
  static constexpr std::array<const char*, 4> kNames = {
      "bar(B_R(a_osc,a_osc))",
      "<B_R(a_bar,b_osc),b_osc>_Hs",
      "<B_R(b_osc,b_bar),b_osc>_Hs",
      "<B_R(a_osc,b_osc),b_osc>_L2",
  };
  std::array<double, 4> values{};  // absolute values (L2 norm for the first)
  std::array<double, 4> scales{};  // Cauchy-Schwarz bound of each quantity
  double tolerance = 1e-11;        // relative to scales
  bool applicable = true;          // false when a or b is not real-valued
  bool pass = false;
};

CancellationReport verify_cancellations(const SpectralField& a, const SpectralField& b, double s,
                                        const ResonantInteractions& R);

/// |<B_R(a_osc,a_osc), a_osc>_H1| / (|a_osc|_H1^2 |a_osc|_H^{3/2+eps}); nullopt for 0/0.
std::optional<double> trilinear_ratio(const SpectralField& a, double eps, const ResonantInteractions& R);

/// |<B_NR(theta;v,v), w>_H1| / (|v|_H1 |v|_H^{7/4} |w|_H^{7/4}); nullopt when the denominator vanishes.
std::optional<double> nonresonant_ratio(double theta, const SpectralField& v, const SpectralField& w,
                                        const ResonantInteractions& R);

}  // namespace rotres
