#include "nslit/gallery.hpp"

#include <string>

#include "nslit/error.hpp"
#include "nslit/superpose.hpp"

namespace nslit {

XorShift64Star::XorShift64Star(std::uint64_t seed) : state_(seed) {
  if (seed == 0) throw Error(ErrorCode::NonPositiveInput, "xorshift64* seed must be non-zero");
}

std::uint64_t XorShift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

double XorShift64Star::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

ScenarioConfig base(std::string name, GridSpec grid) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.grid = grid;
  c.outputs = {Product::Density, Product::Entangling, Product::Trajectories};
  return c;
}

std::vector<SlitSpec> row_of_slits(std::size_t n, double spacing, double sigma0) {
  std::vector<SlitSpec> s(n);
  const double first = -0.5 * spacing * static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    s[i].center = first + spacing * static_cast<double>(i);
    s[i].sigma0 = sigma0;
  }
  return s;
}

}  // namespace

std::vector<ScenarioConfig> gallery_scenarios() {
  std::vector<ScenarioConfig> out;

  // Two channels approaching each other and passing through.
  ScenarioConfig fig1 = base("fig1_double_slit", {-25.0, 25.0, 601, 5.0, 200});
  fig1.slits = symmetric_double_slit(5.0, -2.0, 2.0);
  out.push_back(fig1);

  ScenarioConfig fig2 = base("fig2_wide_dispersion", {-40.0, 40.0, 801, 3.0, 200});
  fig2.slits = symmetric_double_slit(2.0, 0.0, 0.5);
  out.push_back(fig2);

  ScenarioConfig fig3 = fig2;
  fig3.name = "fig3_phase_shift";
  fig3.slits[1].phase_offset = 1.5707963267948966;  // pi/2 on the left slit
  out.push_back(fig3);

  ScenarioConfig fig4a = base("fig4a_three_slit", {-31.0, 31.0, 621, 3.0, 200});
  fig4a.slits = row_of_slits(3, 4.0, 0.7);
  out.push_back(fig4a);

  ScenarioConfig fig4b = base("fig4b_talbot_detail", {-23.0, 23.0, 921, 1.25, 400});
  fig4b.slits = row_of_slits(4, 2.0, 0.4);
  out.push_back(fig4b);

  ScenarioConfig fig5a = base("fig5a_nine_slit_graded", {-35.0, 35.0, 701, 1.3, 200});
  fig5a.slits = row_of_slits(9, 2.0, 0.3);
  for (std::size_t i = 0; i < 9; ++i) fig5a.slits[i].weight = 1.0 - 0.1 * static_cast<double>(i);
  out.push_back(fig5a);

  ScenarioConfig fig5b = fig5a;
  fig5b.name = "fig5b_nine_slit_random";
  XorShift64Star rng(kRandomWeightSeed);
  for (SlitSpec& s : fig5b.slits) s.weight = 0.1 + 0.9 * rng.uniform();
  out.push_back(fig5b);

  ScenarioConfig fig6a = base("fig6a_squeezer", {-33.0, 33.0, 661, 1.3, 200});
  fig6a.slits = row_of_slits(7, 2.0, 0.3);
  fig6a.slits.front().weight = 10.0;
  fig6a.slits.back().weight = 10.0;
  out.push_back(fig6a);

  ScenarioConfig fig6b = fig6a;
  fig6b.name = "fig6b_sweeper";
  for (SlitSpec& s : fig6b.slits) s.weight = 1.0;
  fig6b.slits[3].weight = 10.0;
  out.push_back(fig6b);

  for (ScenarioConfig& c : out) c = validate_scenario(c);
  return out;
}

}  // namespace nslit
