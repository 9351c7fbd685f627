#include "oscillint/bumps.hpp"

#include <cmath>
#include <numbers>

namespace oscillint {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitSphereTol = 1e-12;

void check_unit(std::span<const double> zeta, int dim, const char* who) {
  if (static_cast<int>(zeta.size()) != dim)
    throw ValidationError(std::string(who) + ": wrong vector dimension");
  double n2 = 0.0;
  for (const double z : zeta) n2 += z * z;
  if (std::abs(std::sqrt(n2) - 1.0) > kUnitSphereTol)
    throw ValidationError(std::string(who) + ": input is not a unit vector");
}
}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

SmoothBump::SmoothBump(double support_lo, double plateau_lo, double plateau_hi,
                       double support_hi, double height)
    : a_(support_lo), c_(plateau_lo), d_(plateau_hi), b_(support_hi), height_(height) {
  if (!(a_ < c_ && c_ <= d_ && d_ < b_))
    throw ValidationError("SmoothBump: need support_lo < plateau_lo <= plateau_hi < support_hi");
  if (!(height_ > 0.0) || !std::isfinite(height_))
    throw ValidationError("SmoothBump: height must be positive and finite");
  plateau_floor_ = height_;
  const int samples = 4096;
  for (int i = 0; i <= samples; ++i) {
    const double t = c_ + (d_ - c_) * i / samples;
    plateau_floor_ = std::min(plateau_floor_, (*this)(t));
  }
}

double SmoothBump::operator()(double t) const {
  if (t <= a_ || t >= b_) return 0.0;
  double v = height_;
  if (t < c_)
    v *= smooth_step((t - a_) / (c_ - a_));
  else if (t > d_)
    v *= smooth_step((b_ - t) / (b_ - d_));
  return v;
}

nlohmann::json SmoothBump::to_json() const {
  return {{"support_lo", a_}, {"plateau_lo", c_},  {"plateau_hi", d_},
          {"support_hi", b_}, {"height", height_}};
}

SmoothBump SmoothBump::from_json(const nlohmann::json& j) {
  return SmoothBump(j.at("support_lo").get<double>(), j.at("plateau_lo").get<double>(),
                    j.at("plateau_hi").get<double>(), j.at("support_hi").get<double>(),
                    j.value("height", 1.0));
}

double PrefixIntegralTable::operator()(double t) const {
  if (values_.empty() || t <= lo_) return 0.0;
  if (t >= hi_) return values_.back();
  const double u = (t - lo_) / dt_;
  auto cell = static_cast<std::size_t>(u);
  if (cell >= values_.size() - 1) cell = values_.size() - 2;
  const double x = u - static_cast<double>(cell);
  // Cubic Hermite on the cell; the slopes are the integrand itself.
  const double v0 = values_[cell], v1 = values_[cell + 1];
  const double m0 = slopes_[cell] * dt_, m1 = slopes_[cell + 1] * dt_;
  const double x2 = x * x, x3 = x2 * x;
  return (2 * x3 - 3 * x2 + 1) * v0 + (x3 - 2 * x2 + x) * m0 +
         (-2 * x3 + 3 * x2) * v1 + (x3 - x2) * m1;
}

PeriodicPhase::PeriodicPhase() {
  const double pi = std::numbers::pi;
  keep_ = std::make_shared<SmoothBump>(-1.2, -1.0, 1.0, 1.2, 1.0);
  back_ = std::make_shared<SmoothBump>(1.02, 1.25, pi - 0.35, pi - 0.05, 1.0);
  const SmoothBump& keep = *keep_;
  const SmoothBump& back = *back_;
  keep_tail_ = PrefixIntegralTable([&](double t) { return keep(t); }, 1.0, 1.2, 2048);
  back_tail_ =
      PrefixIntegralTable([&](double t) { return back(t); }, 1.02, pi - 0.05, 8192);
  // One period of the derivative must integrate to zero.
  balance_ = (1.0 + keep_tail_.total()) / back_tail_.total();
  slope_bound_ = kTwoPi * std::max(1.0, balance_);
}

double PeriodicPhase::operator()(double theta) const {
  const double u = std::remainder(theta, kTwoPi);
  const double t = std::abs(u);
  if (t <= 1.0) return kTwoPi * u;
  const double v = 1.0 + keep_tail_(t) - balance_ * back_tail_(t);
  return std::copysign(kTwoPi * v, u);
}

double PeriodicPhase::period() const { return kTwoPi; }
double PeriodicPhase::linear_slope() const { return kTwoPi; }

SphericalPhase::SphericalPhase(int dim) : dim_(dim) {
  if (dim_ < 2) throw ValidationError("SphericalPhase: dimension must be >= 2");
}

double SphericalPhase::operator()(std::span<const double> zeta) const {
  check_unit(zeta, dim_, "SphericalPhase");
  return 2.0 - 2.0 * zeta[0];
}

SphereCutoff::SphereCutoff(int dim, double angular_radius)
    : dim_(dim), eps_(angular_radius) {
  if (dim_ < 2) throw ValidationError("SphereCutoff: dimension must be >= 2");
  if (!(eps_ > 0.0 && eps_ < std::numbers::pi / 2))
    throw ValidationError("SphereCutoff: angular radius must lie in (0, pi/2)");
  w_eps_ = 2.0 * (1.0 - std::cos(eps_));
}

double SphereCutoff::operator()(std::span<const double> zeta) const {
  check_unit(zeta, dim_, "SphereCutoff");
  // Squared chordal distance to the cap center (1, 0, ..., 0); smooth in zeta.
  const double w = 2.0 * (1.0 - zeta[0]);
  const double u = w / w_eps_;
  if (u >= 1.0) return 0.0;
  if (u <= 0.0) return 1.0;
  return std::exp(-u / (1.0 - u));
}

std::shared_ptr<const BumpSet> BumpSet::standard() {
  return from_json(nlohmann::json::object());
}

std::shared_ptr<const BumpSet> BumpSet::from_json(const nlohmann::json& j) {
  const auto bump_or = [&](const char* key, SmoothBump fallback) {
    return j.contains(key) ? SmoothBump::from_json(j.at(key)) : fallback;
  };
  SmoothBump phi = bump_or("phi", SmoothBump(0.5, 2.0 / 3.0, 4.0 / 3.0, 1.5));
  SmoothBump chi = bump_or("chi", SmoothBump(-0.5, -1.0 / 3.0, 1.0 / 3.0, 0.5));
  SmoothBump phi_tilde = bump_or("phi_tilde", SmoothBump(0.5, 2.0 / 3.0, 4.0 / 3.0, 1.5));
  // Cap radius: wide enough that the transverse stationary-phase regime is
  // active from lambda = 8 (the amplitude window must cover several Fresnel
  // zones), while the cap center stays deep inside for every admissible
  // evaluation direction.
  const double eps = j.value("cap_epsilon", 0.45);
  auto set = std::make_shared<BumpSet>(BumpSet{std::move(phi), std::move(chi),
                                               std::move(phi_tilde), PeriodicPhase(),
                                               SphereCutoff(3, eps)});
  if (set->chi.height() > 1.0)
    throw ValidationError("BumpSet: the angular window must not exceed one");
  return set;
}

nlohmann::json BumpSet::to_json() const {
  return {{"phi", phi.to_json()},
          {"chi", chi.to_json()},
          {"phi_tilde", phi_tilde.to_json()},
          {"cap_epsilon", cap3.angular_radius()}};
}

}  // namespace oscillint
