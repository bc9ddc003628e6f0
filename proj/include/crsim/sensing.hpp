// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 the crsim authors

#ifndef CRSIM_SENSING_HPP
#define CRSIM_SENSING_HPP

#include "crsim/model.hpp"
#include "crsim/rng.hpp"

namespace crsim {

// One frame's primary-user truth and the sensor's decision. The true state
// is constant across the frame's blocks and redrawn independently per frame;
// fading is a property of the channel and is never reset by framing.
struct FrameState {
  Hypothesis true_state = Hypothesis::idle;
  Decision decision = Decision::idle;
};

// Consumes exactly two uniforms so that substream alignment is stable.
inline FrameState draw_frame_state(const SensingModel& s, RandomStream& rng) {
  const bool busy = rng.next_double() < s.prior_busy;
  const double detect_prob = busy ? s.p_d : s.p_f;
  const bool decided_busy = rng.next_double() < detect_prob;
  return {busy ? Hypothesis::busy : Hypothesis::idle,
          decided_busy ? Decision::busy : Decision::idle};
}

}  // namespace crsim

#endif  // CRSIM_SENSING_HPP
