#ifndef SPECPOLY_APPROXIMANT_HPP
#define SPECPOLY_APPROXIMANT_HPP

#include <variant>

#include <json.hpp>

#include "specpoly/chebyshev.hpp"
#include "specpoly/newton.hpp"
#include "specpoly/ortho.hpp"

namespace specpoly {

/// A polynomial approximant in one of the three representations built by
/// this library: truncated Chebyshev series, Newton-form interpolant, or
/// orthogonal-polynomial expansion over a discrete measure.
using PolyApproximant = std::variant<ChebySeries, NewtonInterp, OrthoExpansion>;

inline std::size_t degree(const PolyApproximant& p)
{
    return std::visit([](const auto& r) { return r.degree(); }, p);
}

inline double eval_scalar(const PolyApproximant& p, double z)
{
    if (const auto* c = std::get_if<ChebySeries>(&p)) return cheby_eval(*c, z);
    if (const auto* nw = std::get_if<NewtonInterp>(&p)) return newton_eval(*nw, z);
    return ortho_eval(std::get<OrthoExpansion>(p), z);
}

/// p(A)b through the representation's own recurrence; always exactly
/// degree(p) matvecs.
template <typename Op>
Vector apply_to_matrix(const PolyApproximant& p, const Op& a, const Vector& b)
{
    if (const auto* c = std::get_if<ChebySeries>(&p)) return cheby_apply(*c, a, b);
    if (const auto* nw = std::get_if<NewtonInterp>(&p)) return newton_apply(*nw, a, b);
    return ortho_apply(std::get<OrthoExpansion>(p), a, b);
}

inline nlohmann::json to_json(const PolyApproximant& p)
{
    nlohmann::json j;
    if (const auto* c = std::get_if<ChebySeries>(&p)) {
        j["type"] = "chebyshev";
        j["interval"] = {c->interval.lo, c->interval.hi};
        j["coeffs"] = c->coeffs;
    } else if (const auto* nw = std::get_if<NewtonInterp>(&p)) {
        j["type"] = "newton";
        j["nodes"] = nw->nodes;
        j["coeffs"] = nw->coeffs;
    } else {
        const auto& ex = std::get<OrthoExpansion>(p);
        j["type"] = "ortho";
        j["alpha"] = ex.alpha;
        j["beta"] = ex.beta;
        j["gamma"] = ex.gamma;
    }
    return j;
}

inline PolyApproximant approximant_from_json(const nlohmann::json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "chebyshev") {
        ChebySeries c;
        c.interval = {j.at("interval").at(0).get<double>(), j.at("interval").at(1).get<double>()};
        c.interval.validate();
        c.coeffs = j.at("coeffs").get<Vector>();
        if (c.coeffs.empty()) throw std::invalid_argument("approximant: empty coefficients");
        return c;
    }
    if (type == "newton") {
        NewtonInterp nw;
        nw.nodes = j.at("nodes").get<Vector>();
        nw.coeffs = j.at("coeffs").get<Vector>();
        if (nw.nodes.size() != nw.coeffs.size() || nw.nodes.empty())
            throw std::invalid_argument("approximant: inconsistent newton arrays");
        return nw;
    }
    if (type == "ortho") {
        OrthoExpansion ex;
        ex.alpha = j.at("alpha").get<Vector>();
        ex.beta = j.at("beta").get<Vector>();
        ex.gamma = j.at("gamma").get<Vector>();
        if (ex.gamma.size() != ex.alpha.size() + 1 || ex.alpha.size() != ex.beta.size())
            throw std::invalid_argument("approximant: inconsistent ortho arrays");
        return ex;
    }
    throw std::invalid_argument("approximant: unknown type tag '" + type + "'");
}

} // namespace specpoly

#endif
