#pragma once

#include <cstddef>

#include "tempofilt/rng.hpp"
#include "tempofilt/temporal_graph.hpp"

namespace tempofilt {

// Randomized reference models. Every function takes its random stream by
// value, so a call site's draws never depend on what a sibling consumed;
// identical (graph, parameters, stream) always produces an identical result.

// Shifts the timestamps of ceil(fraction * |E|) uniformly chosen contacts by
// a draw from (-epsilon, epsilon) \ {0}. The aggregate graph is untouched.
TemporalGraph tp_perturb(const TemporalGraph& g, double fraction, double epsilon,
                         Rng rng);

// Repeatedly swaps the whole label sets of two aggregate edges that carry the
// same number of contacts, chosen uniformly over all such pairs. Throws
// ValueError when no two aggregate edges share a label count.
TemporalGraph ewlss_shuffle(const TemporalGraph& g, std::size_t steps, Rng rng);

// One pass over the aggregate edges. Each edge draws a uniform partner and a
// fair coin selects one of the two degree-preserving endpoint exchanges
// ((u,v),(x,y) -> (u,y),(x,v) or -> (u,x),(v,y)); exchanges that would create
// a self loop or a duplicate vertex pair are skipped, not resampled. Label
// sets stay attached to their (rewired) edge.
TemporalGraph re_shuffle(const TemporalGraph& g, Rng rng);

// Same exchange move, applied until `steps` exchanges have been accepted
// (an attempt budget of 50 * steps + 100 guards graphs with few legal moves).
// This is the "loose copy" generator for class populations: small step counts
// keep the result close to the input.
TemporalGraph re_exchange_steps(const TemporalGraph& g, std::size_t steps, Rng rng);

// Configuration-model style rewire: redraws the aggregate as a uniform simple
// stub matching of the original degree sequence (conflicting pairs are
// resampled in place; a stalled attempt restarts, up to max_retries attempts),
// permutes the label sets onto the new edges, then shuffles all timestamps
// globally while keeping per-edge contact counts.
TemporalGraph cm_rewire(const TemporalGraph& g, Rng rng, int max_retries = 100);

}  // namespace tempofilt
