#pragma once

#include <vector>

#include "chargelab/epset.hpp"

namespace chargelab {

/// The Boolean subalgebra generated by a short list of EPSets, fully
/// materialized. Elements are exactly the unions of the nonempty atoms of
/// the generated partition.
class FiniteSubalgebra {
  public:
    static constexpr std::size_t kMaxGenerators = 4;

    explicit FiniteSubalgebra(std::vector<EPSet> generators);

    const std::vector<EPSet>& generators() const { return generators_; }
    const std::vector<EPSet>& atoms() const { return atoms_; }
    const std::vector<EPSet>& elements() const { return elements_; }
    Universe universe() const { return universe_; }

    bool contains(const EPSet& x) const;

  private:
    Universe universe_;
    std::vector<EPSet> generators_;
    std::vector<EPSet> atoms_;
    std::vector<EPSet> elements_;  // sorted, deterministic order
};

inline FiniteSubalgebra generate_subalgebra(std::vector<EPSet> gens) {
    return FiniteSubalgebra(std::move(gens));
}

}  // namespace chargelab
