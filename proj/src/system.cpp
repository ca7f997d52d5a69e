#include "ivl/system.hpp"

#include <sstream>

namespace ivl {

SymbolicMap SymbolicMap::shift_power(std::size_t p) {
    SymbolicMap m;
    m.kind = Kind::ShiftPower;
    m.power = p;
    return m;
}

SymbolicMap SymbolicMap::const_point(SymbolicPoint p) {
    SymbolicMap m;
    m.kind = Kind::ConstPoint;
    m.target = std::move(p);
    return m;
}

SymbolicMap SymbolicMap::first_symbol_select(char match, SymbolicPoint then,
                                             SymbolicPoint otherwise) {
    SymbolicMap m;
    m.kind = Kind::FirstSymbolSelect;
    m.match = match;
    m.target = std::move(then);
    m.otherwise = std::move(otherwise);
    return m;
}

SymbolicPoint SymbolicMap::apply(const SymbolicPoint& x) const {
    switch (kind) {
        case Kind::ShiftPower: return x.shifted(power);
        case Kind::ConstPoint: return target;
        case Kind::FirstSymbolSelect: return x.at(0) == match ? target : otherwise;
    }
    throw std::logic_error("unreachable");
}

std::string SymbolicMap::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::ShiftPower: os << "sigma^" << power; break;
        case Kind::ConstPoint: os << "const " << target.to_string(); break;
        case Kind::FirstSymbolSelect:
            os << "x0==" << match << " ? " << target.to_string() << " : "
               << otherwise.to_string();
            break;
    }
    return os.str();
}

std::string state_to_string(const StatePoint& x) {
    if (std::holds_alternative<Scalar>(x)) return std::get<Scalar>(x).to_string();
    return std::get<SymbolicPoint>(x).to_string();
}

ControlSystem::ControlSystem(std::string name, std::vector<PiecewiseMap> maps,
                             NumericPolicy policy)
    : name_(std::move(name)), policy_(policy), interval_maps_(std::move(maps)) {
    if (interval_maps_.empty()) throw DomainError("system needs at least one control");
}

ControlSystem::ControlSystem(std::string name, std::string alphabet,
                             std::vector<SymbolicMap> maps)
    : name_(std::move(name)), symbolic_maps_(std::move(maps)),
      symbol_alphabet_(std::move(alphabet)) {
    if (symbolic_maps_.empty()) throw DomainError("system needs at least one control");
}

std::size_t ControlSystem::alphabet_size() const {
    return is_interval() ? interval_maps_.size() : symbolic_maps_.size();
}

void ControlSystem::check_in_space(const StatePoint& x) const {
    if (is_interval()) {
        if (!std::holds_alternative<Scalar>(x))
            throw DomainError("symbolic point fed to an interval system");
        const Scalar& s = std::get<Scalar>(x);
        if (s.lo() < 0 || s.hi() > 1)
            throw DomainError("state outside [0,1]: " + s.to_string());
    } else {
        if (!std::holds_alternative<SymbolicPoint>(x))
            throw DomainError("scalar point fed to a shift system");
        const SymbolicPoint& p = std::get<SymbolicPoint>(x);
        for (char ch : p.prefix() + p.cycle()) {
            if (symbol_alphabet_.find(ch) == std::string::npos)
                throw DomainError(std::string("symbol outside alphabet: ") + ch);
        }
    }
}

StatePoint ControlSystem::step(const StatePoint& x, std::uint8_t u) const {
    if (u >= alphabet_size()) throw DomainError("control symbol outside alphabet");
    check_in_space(x);
    if (is_interval()) {
        Scalar next = interval_maps_[u].eval(std::get<Scalar>(x), policy_.cbrt_prec);
        next = next.demoted(policy_.max_exact_bits, policy_.demote_prec);
        if (next.lo() < 0 || next.hi() > 1)
            throw DomainError("map image left [0,1]: " + next.to_string());
        return next;
    }
    return symbolic_maps_[u].apply(std::get<SymbolicPoint>(x));
}

std::vector<StatePoint> ControlSystem::trajectory(const StatePoint& x, const Schedule& w,
                                                  std::size_t n) const {
    if (n > 0 && !w.indexable(n - 1))
        throw std::out_of_range("schedule too short for requested horizon");
    std::vector<StatePoint> out;
    out.reserve(n + 1);
    out.push_back(x);
    for (std::size_t k = 0; k < n; ++k) out.push_back(step(out.back(), w.at(k)));
    return out;
}

Scalar ControlSystem::interval_image(std::uint8_t u, const Rat& lo, const Rat& hi) const {
    if (!is_interval()) throw DomainError("interval_image on a shift system");
    return interval_maps_.at(u).image(lo, hi, policy_.cbrt_prec);
}

}  // namespace ivl
