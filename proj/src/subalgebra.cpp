#include "chargelab/subalgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace chargelab {

FiniteSubalgebra::FiniteSubalgebra(std::vector<EPSet> generators)
    : generators_(std::move(generators)) {
    if (generators_.size() > kMaxGenerators) {
        throw std::invalid_argument("too many generators: " +
                                    std::to_string(generators_.size()) +
                                    " (bound is " + std::to_string(kMaxGenerators) + ")");
    }
    universe_ = generators_.empty() ? Universe::naturals() : generators_[0].universe();
    for (const auto& g : generators_) {
        if (!(g.universe() == universe_)) {
            throw std::invalid_argument("generators must share a universe");
        }
    }

    // atoms of the partition generated by the generators
    const std::size_t g = generators_.size();
    for (std::size_t mask = 0; mask < (1u << g); ++mask) {
        EPSet atom = EPSet::full(universe_);
        for (std::size_t i = 0; i < g; ++i) {
            atom = (mask >> i) & 1 ? meet(atom, generators_[i])
                                   : meet(atom, generators_[i].complement());
        }
        if (!atom.is_empty()) atoms_.push_back(atom);
    }
    std::sort(atoms_.begin(), atoms_.end());

    const std::size_t a = atoms_.size();
    elements_.reserve(std::size_t(1) << a);
    for (std::size_t mask = 0; mask < (std::size_t(1) << a); ++mask) {
        EPSet e = EPSet::empty(universe_);
        for (std::size_t i = 0; i < a; ++i) {
            if ((mask >> i) & 1) e = join(e, atoms_[i]);
        }
        elements_.push_back(e);
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool FiniteSubalgebra::contains(const EPSet& x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

}  // namespace chargelab
