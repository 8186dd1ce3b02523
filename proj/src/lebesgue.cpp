#include "chainnorm/lebesgue.hpp"

#include "chainnorm/forms.hpp"
#include "chainnorm/shapes.hpp"

#include <cmath>
#include <stdexcept>

namespace chainnorm {

SimplicialChain chain_from_step_function(const StepFunction& f) {
    SimplicialChain out(2, 2);
    for (const auto& piece : f.pieces) {
        if (!(piece.b > piece.a))
            throw std::invalid_argument("step function piece with empty interval");
        if (piece.value == 0.0) continue;
        if (piece.value > 0.0)
            out.add_chain(rect_chain(piece.a, piece.b, 0.0, piece.value, 1.0));
        else
            out.add_chain(rect_chain(piece.a, piece.b, piece.value, 0.0, -1.0));
    }
    return out;
}

LebesgueTriple lebesgue_consistency(const StepFunction& f) {
    LebesgueTriple out{0.0, 0.0, 0.0};
    for (const auto& piece : f.pieces) out.closed_form += piece.value * (piece.b - piece.a);

    SimplicialChain region = chain_from_step_function(f);
    if (region.empty()) return out;

    PolynomialForm area_form(2, 2);
    area_form.add_component({0, 1}, Polynomial::constant(2, 1.0));
    out.area_integral = integrate(area_form, region);

    // -y dx is a primitive of dx^dy; on the counterclockwise boundary it
    // equals the graph integral of y dx taken left to right.
    PolynomialForm graph_form(1, 2);
    graph_form.add_component({0}, Polynomial::variable(2, 1) * -1.0);
    out.boundary_integral = integrate(graph_form, boundary(region));
    return out;
}

}  // namespace chainnorm
