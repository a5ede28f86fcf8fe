#include "phiid/parallel.hpp"

namespace phiid {

unsigned default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace phiid
