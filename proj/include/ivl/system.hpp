// The controlled system Sigma: finite control alphabet, state space with a
// metric, and one step map per control symbol. Solutions compose as
// phi(k, x, w) = F_{w_{k-1}} o ... o F_{w_0}(x).
//
// All operations are pure; values are immutable after construction.

#pragma once

#include "ivl/piecewise.hpp"
#include "ivl/scalar.hpp"
#include "ivl/schedule.hpp"
#include "ivl/symbolic.hpp"

#include <variant>
#include <vector>

namespace ivl {

// Step maps on the shift space; exactly the shapes the examples use.
struct SymbolicMap {
    enum class Kind { ShiftPower, ConstPoint, FirstSymbolSelect };

    Kind kind = Kind::ShiftPower;
    std::size_t power = 0;        // ShiftPower
    SymbolicPoint target;         // ConstPoint; FirstSymbolSelect match arm
    char match = 0;               // FirstSymbolSelect
    SymbolicPoint otherwise;      // FirstSymbolSelect else arm

    static SymbolicMap shift_power(std::size_t p);
    static SymbolicMap const_point(SymbolicPoint p);
    static SymbolicMap first_symbol_select(char match, SymbolicPoint then, SymbolicPoint otherwise);

    SymbolicPoint apply(const SymbolicPoint& x) const;
    std::string describe() const;
};

using StatePoint = std::variant<Scalar, SymbolicPoint>;

std::string state_to_string(const StatePoint& x);

struct NumericPolicy {
    unsigned cbrt_prec = 64;          // cube-root enclosure width 2^-64
    std::size_t max_exact_bits = 256; // past this, demote to a dyadic interval
    unsigned demote_prec = 120;
};

class ControlSystem {
public:
    ControlSystem(std::string name, std::vector<PiecewiseMap> maps, NumericPolicy policy = {});
    ControlSystem(std::string name, std::string alphabet, std::vector<SymbolicMap> maps);

    bool is_interval() const { return !interval_maps_.empty(); }
    std::size_t alphabet_size() const;
    const std::string& name() const { return name_; }
    const NumericPolicy& policy() const { return policy_; }
    const std::string& symbol_alphabet() const { return symbol_alphabet_; }

    const PiecewiseMap& interval_map(std::uint8_t u) const { return interval_maps_.at(u); }
    const SymbolicMap& symbolic_map(std::uint8_t u) const { return symbolic_maps_.at(u); }

    // F_u(x); checks x lies in the state space and the image stays in it.
    StatePoint step(const StatePoint& x, std::uint8_t u) const;

    // [x, phi(1,x,w), ..., phi(n,x,w)]; w must be indexable up to n-1.
    std::vector<StatePoint> trajectory(const StatePoint& x, const Schedule& w, std::size_t n) const;

    // Exact hull of F_u([lo, hi]); the basis for trap certificates.
    Scalar interval_image(std::uint8_t u, const Rat& lo, const Rat& hi) const;

private:
    void check_in_space(const StatePoint& x) const;

    std::string name_;
    NumericPolicy policy_;
    std::vector<PiecewiseMap> interval_maps_;
    std::vector<SymbolicMap> symbolic_maps_;
    std::string symbol_alphabet_;
};

}  // namespace ivl
