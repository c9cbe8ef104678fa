#pragma once

#include "shaketab/lti/transfer_function.hpp"

namespace shaketab::lti {

/// Identified servo-valve-voltage to table-displacement model of the
/// hydraulic shake table. Shares its numerator with the acceleration model;
/// the two trailing zero denominator coefficients are a double pole at the
/// origin, so the acceleration model is exactly s^2 times this one.
inline TransferFunctiond shake_table_displacement_tf() {
  Polyd num(6);
  num << 719.0, 3.13e6, 6.73e9, 7.83e13, 3.95e15, 0.0;
  Polyd den(9);
  den << 1.0, 309.0, 1.67e5, 3.2e7, 6.77e9, 7.5e11, 5.98e13, 0.0, 0.0;
  return TransferFunctiond(num, den);
}

/// Identified servo-valve-voltage to table-acceleration model.
inline TransferFunctiond shake_table_acceleration_tf() {
  Polyd num(6);
  num << 719.0, 3.13e6, 6.73e9, 7.83e13, 3.95e15, 0.0;
  Polyd den(7);
  den << 1.0, 309.0, 1.67e5, 3.2e7, 6.77e9, 7.5e11, 5.98e13;
  return TransferFunctiond(num, den);
}

}  // namespace shaketab::lti
