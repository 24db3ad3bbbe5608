#pragma once

// Shared by the focused and naive searches.

#include <chrono>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hylls/prover.hpp"

namespace hylls::detail {

template <class Sig>
class FnRef;

// Non-owning callable reference; continuations are always called while the
// referenced lambda is alive.
template <class R, class... A>
class FnRef<R(A...)> {
 public:
  template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FnRef>>>
  FnRef(F&& f)  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* o, A... a) -> R { return (*static_cast<std::remove_reference_t<F>*>(o))(std::forward<A>(a)...); }) {}
  R operator()(A... a) const { return call_(obj_, std::forward<A>(a)...); }

 private:
  void* obj_;
  R (*call_)(void*, A...);
};

struct Timeout {};

class Clock {
 public:
  explicit Clock(std::optional<double> seconds) {
    if (seconds) deadline_ = std::chrono::steady_clock::now() + std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(*seconds));
  }
  void tick() {
    if (deadline_ && (++count_ & 255) == 0 && std::chrono::steady_clock::now() > *deadline_) throw Timeout{};
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  unsigned count_ = 0;
};

// All judgments that make up the current sequent, for witness and
// freshness computations.
using JudgmentRefs = std::vector<const Judgment*>;

std::string fresh_name(const std::string& prefix, const JudgmentRefs& ctx);
std::vector<Term> term_candidates(const JudgmentRefs& ctx);
// Witnesses for the world binder of `quantified` (a forall/exists world
// formula true at `here`): unifiers of the worlds its body's atoms and
// annotations live at against those of ctx, the free world names of ctx,
// the context worlds, then the enumerated constants.
std::vector<WorldExpr> world_candidates(const ConstraintDomain& d, const Formula& quantified, const WorldExpr& here,
                                        const JudgmentRefs& ctx, unsigned bound);
// Worlds at which the atoms of f@here are asserted, following at, down and
// delay. Worlds depending on an inner world quantifier are left out.
void atom_worlds(const ConstraintDomain& d, const Formula& f, const WorldExpr& here, std::vector<WorldExpr>& out);

}  // namespace hylls::detail
