#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hylls {

// Lazy linear-context threading. Resources are identified by ids; a
// subderivation receives every available id and reports the ids it left
// over plus a slack flag (set below a top or zero leaf, meaning "could have
// consumed any of the leftovers too").
using ResourceIds = std::vector<std::uint32_t>;  // sorted, unique

struct Threaded {
  ResourceIds leftover;
  bool slack = false;
};

ResourceIds ids_minus(const ResourceIds& a, const ResourceIds& b);
ResourceIds ids_union(const ResourceIds& a, const ResourceIds& b);
ResourceIds ids_intersect(const ResourceIds& a, const ResourceIds& b);
bool ids_subset(const ResourceIds& a, const ResourceIds& b);
ResourceIds ids_insert(ResourceIds a, std::uint32_t id);
ResourceIds ids_erase(ResourceIds a, std::uint32_t id);

// Multiplicative premises run in sequence: the second receives the first's
// leftovers. The combined slack is either premise's.
Threaded thread_multiplicative(const Threaded& first, const Threaded& second);

// Additive premises both receive the same input. Then
//   neither slack  -> leftovers must coincide
//   one slack      -> the slack side may absorb what the other consumed
//   both slack     -> the intersection remains, still slack.
// `absorbed_*` receive the ids each premise must additionally consume.
std::optional<Threaded> thread_additive(const Threaded& a, const Threaded& b, ResourceIds& absorbed_a,
                                        ResourceIds& absorbed_b);

// Leaving the scope that introduced `local`: local leftovers are only
// allowed under slack, and are then absorbed. Returns false on a linearity
// violation; otherwise removes them from `t` and reports them.
bool close_scope(const ResourceIds& local, Threaded& t, ResourceIds& absorbed);

// Explicit split witness for a multiplicative rule: what the first premise
// consumed given its final extra absorption.
ResourceIds first_premise_share(const ResourceIds& consumed_first, const ResourceIds& absorbed_first);

}  // namespace hylls
