// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/environment.hpp"

namespace leomarket::harness {

using qlearn::AgentAction;

void SpectrumEnvironment::reset() {
  cell_.price.level = cell_.initial_price_level;
  cell_.power.level = cell_.initial_power_level;
  cell_.outcome = market::round_revenue(cell_.price.price(), cell_.users, cell_.power.limit(),
                                        max_leases_);
}

qlearn::MdpState SpectrumEnvironment::observe() const {
  return {cell_.price.price() / cell_.price_scale,
          realized_revenue(cell_, visibility_) / cell_.utility_scale};
}

qlearn::Transition SpectrumEnvironment::step(AgentAction action) {
  const double before = realized_revenue(cell_, visibility_);
  switch (action) {
    case AgentAction::price_down: cell_.price.move(-1); break;
    case AgentAction::price_up: cell_.price.move(+1); break;
    case AgentAction::power_down: cell_.power.move(-1); break;
    case AgentAction::power_up: cell_.power.move(+1); break;
  }
  cell_.outcome = market::round_revenue(cell_.price.price(), cell_.users, cell_.power.limit(),
                                        max_leases_);
  const double after = realized_revenue(cell_, visibility_);
  return {observe(), qlearn::reward(after, before)};
}

qlearn::EnvReport SpectrumEnvironment::report() const {
  return {cell_.price.price(), realized_revenue(cell_, visibility_)};
}

}  // namespace leomarket::harness
