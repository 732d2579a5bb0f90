#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvedepth/curve.hpp"

namespace curvedepth {

struct SchemeSpec {
  std::string name;      // see scheme_names()
  std::size_t n = 100;   // sample size; base sample size for the outlier scenarios
  std::size_t vertices = 0;  // 0: scheme default
  bool with_mean = false;    // append the process mean curve (claeskens, cuevas, s-letters)
  double sigma_shift = 0.3;  // s-letters
  double sigma_angle = 0.2;
  double sigma_trim = 0.3;
};

const std::vector<std::string>& scheme_names();

std::vector<Curve> generate(const SchemeSpec& spec, std::uint64_t seed);

Curve circle_curve(double r, std::size_t vertices = 256, std::string id = "circle");
Curve star_segment(double theta, std::string id = "star");
Curve parallel_segment_curve(double y, std::string id = "segment");

enum class MeanRange { central, full };
/// Mean of the Claeskens process (A1 = A2 = 0.025). `central` spans the mean
/// endpoints [pi/3, 5pi/3]; `full` spans the support [0, 2pi].
Curve claeskens_mean(MeanRange range = MeanRange::central, std::size_t vertices = 500);
Curve cuevas_mean(std::size_t vertices = 200);
/// The ideal S shape on [t0, t1] within [0, 2pi].
Curve s_letter(double t0 = 0.0, double t1 = 6.283185307179586, std::size_t vertices = 200);

}  // namespace curvedepth
