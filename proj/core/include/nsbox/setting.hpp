#pragma once

#include <cstddef>
#include <string>

#include "nsbox/errors.hpp"

namespace nsbox {

/// Scenario signature: number of inputs and outputs per party.
///
/// In-memory indices for inputs x, y and outputs a, b are 0-based; file
/// formats and CLI output use the 1-based labels of the usual alphabets.
struct Setting {
  int m_a = 1;  ///< Alice input count
  int m_b = 1;  ///< Bob input count
  int d_a = 1;  ///< Alice output count
  int d_b = 1;  ///< Bob output count

  Setting() = default;
  Setting(int ma, int mb, int da, int db) : m_a(ma), m_b(mb), d_a(da), d_b(db) {
    if (m_a < 1 || m_b < 1 || d_a < 1 || d_b < 1)
      throw Error(ErrorCode::bad_setting, "all four counts must be >= 1, got " + str());
  }

  std::size_t table_size() const {
    return static_cast<std::size_t>(d_a) * d_b * m_a * m_b;
  }

  /// Canonical dense index: (x,y) blocks are contiguous, `a` major inside.
  std::size_t index(int a, int b, int x, int y) const {
    return ((static_cast<std::size_t>(x) * m_b + y) * d_a + a) * d_b + b;
  }

  bool operator==(const Setting&) const = default;

  std::string str() const {
    return std::to_string(m_a) + "," + std::to_string(m_b) + "," +
           std::to_string(d_a) + "," + std::to_string(d_b);
  }
};

}  // namespace nsbox
