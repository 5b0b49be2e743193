// Walks through the library on the quadric cone K[u,v,x,y]/(ux - vy).

#include <iostream>

#include "akg.hpp"

int main() {
  using namespace akg;

  MonoidSpec m = segre_monoid(2, 2);
  FacetSystem f = facet_valuations(m);
  ClassGroupData cg = divisor_class_group(f);
  std::cout << "facets: " << f.count() << "\n";
  for (const auto& nu : f.normals) std::cout << "  " << to_string(nu) << "\n";
  std::cout << "DKG = " << cg.dkg.to_string() << ", AKG = " << cg.akg.to_string() << "\n";

  auto labels = segre_facet_labels(2, 2, m, f);
  auto label = [&](std::size_t i) {
    return std::string(labels[i].sort == SegreSort::Row ? "p" : "q") + std::to_string(labels[i].index);
  };
  for (std::size_t i = 0; i < f.count(); ++i) {
    auto r = support_realizable(m, f, {i});
    std::cout << "V(" << label(i) << ") has affine complement: " << (r.realizable ? "yes" : "no") << "\n";
  }
  for (std::size_t i = 0; i < f.count(); ++i)
    for (std::size_t j = i + 1; j < f.count(); ++j) {
      auto r = support_realizable(m, f, {i, j});
      std::cout << "V(" << label(i) << ") u V(" << label(j) << "): " << (r.realizable ? "affine" : "not affine")
                << "\n";
    }

  using namespace akg::bounds;
  KnowledgeBase kb = KnowledgeBase{}.with_flag(Flag::ring_local).with_flag(Flag::ideal_maximal);
  kb = assert_fact(kb, Invariant::dim_ring, Relation::eq, 3);
  PropagationResult r = propagate(kb);
  const auto& p = std::get<Propagated>(r);
  for (std::size_t i = 0; i < kInvariantCount; ++i) {
    auto inv = static_cast<Invariant>(i);
    std::cout << name(inv) << " in " << p.kb.interval(inv).to_string() << "\n";
  }
}
