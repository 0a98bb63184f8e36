#include "uekit/semantics.hpp"

#include "uekit/error.hpp"

namespace uekit {

namespace {

template <typename M>
void check_width(const M& m, const StateSet& x) {
    if (x.width() != m.size()) {
        throw SemanticError{"state set of width " + std::to_string(x.width()) + " used with a model of " +
                            std::to_string(m.size()) + " states"};
    }
}

template <typename M, typename Pred>
StateSet collect(const M& m, const StateSet& x, Pred&& pred) {
    check_width(m, x);
    StateSet out = StateSet::empty(m.size());
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (pred(s)) {
            out.insert(s);
        }
    }
    return out;
}

} // namespace

bool in_m_box(const KripkeModel& m, std::size_t s, const StateSet& x) { return m.successors(s).subset_of(x); }

bool in_m_nabla(const KripkeModel& m, std::size_t s, const StateSet& x) {
    const StateSet& succ = m.successors(s);
    return !(succ & x).none() && !(succ - x).none();
}

bool in_m_delta(const KripkeModel& m, std::size_t s, const StateSet& x) {
    const StateSet& succ = m.successors(s);
    return succ.subset_of(x) || (succ & x).none();
}

bool in_m_n(const NeighborhoodModel& m, std::size_t s, const StateSet& x) { return m.neighborhood(s).contains(x); }

bool in_m_c(const NeighborhoodModel& m, std::size_t s, const StateSet& x) {
    return m.neighborhood(s).contains(x) || m.neighborhood(s).contains(~x);
}

StateSet m_box(const KripkeModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return in_m_box(m, s, x); });
}

StateSet m_diamond(const KripkeModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return !(m.successors(s) & x).none(); });
}

StateSet m_nabla(const KripkeModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return in_m_nabla(m, s, x); });
}

StateSet m_delta(const KripkeModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return in_m_delta(m, s, x); });
}

StateSet m_n(const NeighborhoodModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return in_m_n(m, s, x); });
}

StateSet m_c(const NeighborhoodModel& m, const StateSet& x) {
    return collect(m, x, [&](std::size_t s) { return in_m_c(m, s, x); });
}

namespace {

// Shared boolean skeleton; the modal clause is supplied by the model kind.
template <typename M, typename Modal>
StateSet evaluate(const M& m, const Formula& f, Modal&& modal) {
    const std::size_t n = m.size();
    switch (f.op()) {
    case Op::atom:
        return m.truth_set(f.name());
    case Op::top:
        return StateSet::full(n);
    case Op::bot:
        return StateSet::empty(n);
    case Op::neg:
        return ~evaluate(m, f.arg(), modal);
    case Op::conj:
        return evaluate(m, f.lhs(), modal) & evaluate(m, f.rhs(), modal);
    case Op::disj:
        return evaluate(m, f.lhs(), modal) | evaluate(m, f.rhs(), modal);
    case Op::implies:
        return ~evaluate(m, f.lhs(), modal) | evaluate(m, f.rhs(), modal);
    default:
        return modal(f.op(), evaluate(m, f.arg(), modal));
    }
}

} // namespace

StateSet extension(const KripkeModel& m, const Formula& f) {
    return evaluate(m, f, [&](Op op, const StateSet& inner) {
        switch (op) {
        case Op::box: return m_box(m, inner);
        case Op::diamond: return m_diamond(m, inner);
        case Op::nabla: return m_nabla(m, inner);
        default: return m_delta(m, inner);
        }
    });
}

StateSet extension(const NeighborhoodModel& m, const Formula& f) {
    return evaluate(m, f, [&](Op op, const StateSet& inner) {
        switch (op) {
        case Op::box: return m_n(m, inner);
        case Op::delta: return m_c(m, inner);
        case Op::nabla: return ~m_c(m, inner);
        default:
            throw SemanticError{"operator '<>' has no neighborhood semantics; rewrite it as ~[]~"};
        }
    });
}

StateSet extension(const Model& m, const Formula& f) {
    return std::visit([&](const auto& x) { return extension(x, f); }, m);
}

namespace {

template <typename M>
bool point_query(const M& m, std::size_t state, const Formula& f) {
    if (state >= m.size()) {
        throw SemanticError{"state index " + std::to_string(state) + " out of range"};
    }
    return extension(m, f).contains(state);
}

} // namespace

bool satisfies(const KripkeModel& m, std::size_t state, const Formula& f) { return point_query(m, state, f); }
bool satisfies(const NeighborhoodModel& m, std::size_t state, const Formula& f) { return point_query(m, state, f); }

bool satisfies(const Model& m, std::size_t state, const Formula& f) {
    return std::visit([&](const auto& x) { return satisfies(x, state, f); }, m);
}

bool satisfies(const Model& m, std::string_view state, const Formula& f) {
    return satisfies(m, require_state(m, state), f);
}

} // namespace uekit
