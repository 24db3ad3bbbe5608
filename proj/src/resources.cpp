#include "hylls/resources.hpp"

#include <algorithm>
#include <iterator>

namespace hylls {

ResourceIds ids_minus(const ResourceIds& a, const ResourceIds& b) {
  ResourceIds out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ResourceIds ids_union(const ResourceIds& a, const ResourceIds& b) {
  ResourceIds out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ResourceIds ids_intersect(const ResourceIds& a, const ResourceIds& b) {
  ResourceIds out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool ids_subset(const ResourceIds& a, const ResourceIds& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

ResourceIds ids_insert(ResourceIds a, std::uint32_t id) {
  a.insert(std::lower_bound(a.begin(), a.end(), id), id);
  return a;
}

ResourceIds ids_erase(ResourceIds a, std::uint32_t id) {
  auto it = std::lower_bound(a.begin(), a.end(), id);
  if (it != a.end() && *it == id) a.erase(it);
  return a;
}

Threaded thread_multiplicative(const Threaded& first, const Threaded& second) {
  return {second.leftover, first.slack || second.slack};
}

std::optional<Threaded> thread_additive(const Threaded& a, const Threaded& b, ResourceIds& absorbed_a,
                                        ResourceIds& absorbed_b) {
  absorbed_a.clear();
  absorbed_b.clear();
  if (!a.slack && !b.slack) {
    if (a.leftover != b.leftover) return std::nullopt;
    return Threaded{a.leftover, false};
  }
  if (a.slack && !b.slack) {
    if (!ids_subset(b.leftover, a.leftover)) return std::nullopt;
    absorbed_a = ids_minus(a.leftover, b.leftover);
    return Threaded{b.leftover, false};
  }
  if (!a.slack && b.slack) {
    if (!ids_subset(a.leftover, b.leftover)) return std::nullopt;
    absorbed_b = ids_minus(b.leftover, a.leftover);
    return Threaded{a.leftover, false};
  }
  auto common = ids_intersect(a.leftover, b.leftover);
  absorbed_a = ids_minus(a.leftover, common);
  absorbed_b = ids_minus(b.leftover, common);
  return Threaded{std::move(common), true};
}

bool close_scope(const ResourceIds& local, Threaded& t, ResourceIds& absorbed) {
  absorbed = ids_intersect(t.leftover, local);
  if (!absorbed.empty() && !t.slack) return false;
  if (!absorbed.empty()) t.leftover = ids_minus(t.leftover, absorbed);
  return true;
}

ResourceIds first_premise_share(const ResourceIds& consumed_first, const ResourceIds& absorbed_first) {
  return ids_union(consumed_first, absorbed_first);
}

}  // namespace hylls
