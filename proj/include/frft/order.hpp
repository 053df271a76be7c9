#ifndef FRFT_ORDER_HPP
#define FRFT_ORDER_HPP

namespace frft {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Transform order stored as the canonical angle in [0, 2*pi).
/// Two orders compare equal when their canonical representatives agree to
/// 1e-12, with wraparound across the 0 / 2*pi seam.
class FrftOrder {
 public:
  explicit FrftOrder(double radians);

  double radians() const { return radians_; }

  /// Wraparound distance between the canonical angle and `angle`.
  double distance_to(double angle) const;

  friend FrftOrder operator+(FrftOrder a, FrftOrder b) {
    return FrftOrder(a.radians_ + b.radians_);
  }
  friend bool operator==(FrftOrder a, FrftOrder b) {
    return a.distance_to(b.radians_) <= 1e-12;
  }
  friend bool operator!=(FrftOrder a, FrftOrder b) { return !(a == b); }

 private:
  double radians_;
};

}  // namespace frft

#endif
