#pragma once

#include <string_view>

#include "mel/util.hpp"

namespace mel::test {

// true iff f() throws mel::error whose message contains needle
template <class F>
bool throws_containing(F&& f, std::string_view needle) {
  try {
    f();
  } catch (const mel::error& e) {
    return std::string_view(e.what()).find(needle) != std::string_view::npos;
  }
  return false;
}

}  // namespace mel::test
