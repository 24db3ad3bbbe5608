#include "hylls/sell.hpp"

namespace hylls {

std::string world_label(const ConstraintDomain& d, const WorldExpr& w) {
  if (!w.is_ground() || w.has_bound()) throw EncodeError("world '" + print_world(d, w) + "' is not ground");
  return print_world(d, w);
}

SellFormula lower_hyll(const ConstraintDomain& d, const Formula& f, const WorldExpr& w) {
  using S = SellFormula;
  switch (f.kind()) {
    case Connective::Atom:
      return S::bang(world_label(d, w), S::atom(f.pred(), f.args()));
    case Connective::One:
      return S::one();
    case Connective::Top:
      return S::top();
    case Connective::Zero:
      return S::zero();
    case Connective::Tensor:
      return S::tensor(lower_hyll(d, f.left(), w), lower_hyll(d, f.right(), w));
    case Connective::With:
      return S::with(lower_hyll(d, f.left(), w), lower_hyll(d, f.right(), w));
    case Connective::Plus:
      return S::plus(lower_hyll(d, f.left(), w), lower_hyll(d, f.right(), w));
    case Connective::Limp:
      return S::par(dual(lower_hyll(d, f.left(), w)), lower_hyll(d, f.right(), w));
    case Connective::Delay:
      return lower_hyll(d, f.body(), compose(d, w, f.world()));
    case Connective::At:
      return lower_hyll(d, f.body(), f.world());
    case Connective::Down:
      return lower_hyll(d, f.instantiate_world(d, w), w);
    default:
      throw EncodeError("'" + print_formula(d, f) + "' is outside the encodable fragment");
  }
}

SellFormula encode_hyll_judgment(const SubexpSignature& sig, const ConstraintDomain& d, const Judgment& j,
                                 bool classical) {
  std::string w = world_label(d, j.world);
  SellFormula lowered = lower_hyll(d, j.formula, j.world);
  std::set<std::string> used{w};
  lowered.collect_labels(used);
  if (classical) used.insert(kCopyLabel);
  for (const auto& l : used)
    if (!sig.has(l)) throw EncodeError("world label '" + l + "' is absent from the signature");
  SellFormula body = lowered.kind() == SellKind::Bang && lowered.label() == w ? dual(lowered.body()) : dual(lowered);
  SellFormula out = SellFormula::quest(w, body);
  return classical ? SellFormula::quest(kCopyLabel, out) : out;
}

}  // namespace hylls
