#pragma once

#include <string>

namespace robocache {

/// The routing decision a robot acts on for one barcode.
struct DecisionPayload {
  std::string destination_terminal;
  std::string service_type;
  bool exception_flag = false;

  friend bool operator==(const DecisionPayload&,
                         const DecisionPayload&) = default;
};

}  // namespace robocache
