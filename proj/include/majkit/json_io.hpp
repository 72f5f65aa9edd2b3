// JSON input and output for the library's value types. Parsing is delegated
// to nlohmann::json; serialization is a small hand-rolled writer so that key
// order is fixed and every double is printed with 17 significant digits,
// making output byte-for-byte reproducible across runs.
#pragma once

#include <nlohmann/json.hpp>

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "majkit/discretize.hpp"
#include "majkit/functionals.hpp"
#include "majkit/kernels.hpp"
#include "majkit/majorize.hpp"
#include "majkit/measure.hpp"
#include "majkit/numeric.hpp"

namespace majkit {

using nlohmann::json;

// ---- parsing ----

inline std::vector<double> parse_number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw std::invalid_argument(what + " must be an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw std::invalid_argument(what + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// {"weights": [...], "values": [[...], ...]}; omitting weights means the
// counting measure.
inline VectorStepFunction parse_function(const json& j) {
    if (!j.is_object() || !j.contains("values")) {
        throw std::invalid_argument("function JSON needs a \"values\" field");
    }
    const json& vals = j.at("values");
    if (!vals.is_array() || vals.empty()) {
        throw std::invalid_argument("\"values\" must be a nonempty array of rows");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(vals.size());
    for (const auto& row : vals) rows.push_back(parse_number_array(row, "values row"));
    std::vector<double> weights;
    if (j.contains("weights") && !j.at("weights").is_null()) {
        weights = parse_number_array(j.at("weights"), "weights");
    } else {
        weights.assign(rows.size(), 1.0);
    }
    return VectorStepFunction(FiniteMeasureSpace(std::move(weights)), std::move(rows));
}

inline StochasticKernel parse_kernel(const json& j) {
    if (!j.is_object() || !j.contains("domain_weights") || !j.contains("codomain_weights") ||
        !j.contains("table")) {
        throw std::invalid_argument(
            "kernel JSON needs \"domain_weights\", \"codomain_weights\" and \"table\"");
    }
    FiniteMeasureSpace domain(parse_number_array(j.at("domain_weights"), "domain_weights"));
    FiniteMeasureSpace codomain(
        parse_number_array(j.at("codomain_weights"), "codomain_weights"));
    const json& tj = j.at("table");
    if (!tj.is_array()) throw std::invalid_argument("\"table\" must be an array of rows");
    std::vector<std::vector<double>> table;
    table.reserve(tj.size());
    for (const auto& row : tj) table.push_back(parse_number_array(row, "table row"));
    return StochasticKernel(std::move(domain), std::move(codomain), std::move(table));
}

inline Partition parse_partition(const json& j, const FiniteMeasureSpace& space) {
    if (!j.is_object() || !j.contains("blocks")) {
        throw std::invalid_argument("partition JSON needs a \"blocks\" field");
    }
    const json& bj = j.at("blocks");
    if (!bj.is_array()) throw std::invalid_argument("\"blocks\" must be an array");
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& block : bj) {
        if (!block.is_array()) throw std::invalid_argument("each block must be an array");
        std::vector<std::size_t> atoms;
        for (const auto& a : block) {
            if (!a.is_number_unsigned()) {
                throw std::invalid_argument("block entries must be atom indices");
            }
            atoms.push_back(a.get<std::size_t>());
        }
        blocks.push_back(std::move(atoms));
    }
    return Partition(space, std::move(blocks));
}

// {"pieces": [...]} where each piece is either a plain coefficient array
// (a linear piece) or {"slope": [...], "intercept": b}. Sublinear functionals
// accept only the plain form; convex functionals accept both, reading a plain
// array as an affine piece with zero intercept.
inline SublinearFunctional parse_sublinear(const json& j) {
    if (!j.is_object() || !j.contains("pieces")) {
        throw std::invalid_argument("functional JSON needs a \"pieces\" field");
    }
    const json& pj = j.at("pieces");
    if (!pj.is_array() || pj.empty()) {
        throw std::invalid_argument("\"pieces\" must be a nonempty array");
    }
    std::vector<std::vector<double>> pieces;
    for (const auto& p : pj) {
        if (!p.is_array()) {
            throw std::invalid_argument(
                "sublinear pieces must be plain coefficient arrays");
        }
        pieces.push_back(parse_number_array(p, "piece"));
    }
    return SublinearFunctional(std::move(pieces));
}

inline ConvexFunctional parse_convex(const json& j) {
    if (!j.is_object() || !j.contains("pieces")) {
        throw std::invalid_argument("functional JSON needs a \"pieces\" field");
    }
    const json& pj = j.at("pieces");
    if (!pj.is_array() || pj.empty()) {
        throw std::invalid_argument("\"pieces\" must be a nonempty array");
    }
    std::vector<AffinePiece> pieces;
    for (const auto& p : pj) {
        AffinePiece piece;
        if (p.is_array()) {
            piece.slope = parse_number_array(p, "piece");
        } else if (p.is_object() && p.contains("slope")) {
            piece.slope = parse_number_array(p.at("slope"), "slope");
            if (p.contains("intercept")) {
                if (!p.at("intercept").is_number()) {
                    throw std::invalid_argument("\"intercept\" must be a number");
                }
                piece.intercept = p.at("intercept").get<double>();
            }
        } else {
            throw std::invalid_argument(
                "each piece must be an array or {\"slope\", \"intercept\"}");
        }
        pieces.push_back(std::move(piece));
    }
    return ConvexFunctional(std::move(pieces));
}

// ---- serialization ----

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string dump_array(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    out += "]";
    return out;
}

inline std::string dump_table(const std::vector<std::vector<double>>& t) {
    std::string out = "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += dump_array(t[i]);
    }
    out += "]";
    return out;
}

inline std::string dump_function(const VectorStepFunction& f) {
    return "{\"weights\":" + dump_array(f.space().weights()) +
           ",\"values\":" + dump_table(f.values()) + "}";
}

inline std::string dump_kernel(const StochasticKernel& k) {
    return "{\"domain_weights\":" + dump_array(k.domain().weights()) +
           ",\"codomain_weights\":" + dump_array(k.codomain().weights()) +
           ",\"table\":" + dump_table(k.table()) + "}";
}

inline std::string dump_sublinear(const SublinearFunctional& phi) {
    return "{\"pieces\":" + dump_table(phi.pieces()) + "}";
}

inline std::string dump_convex(const ConvexFunctional& phi) {
    std::string out = "{\"pieces\":[";
    const auto& pieces = phi.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (i) out += ",";
        out += "{\"slope\":" + dump_array(pieces[i].slope) +
               ",\"intercept\":" + fmt_double(pieces[i].intercept) + "}";
    }
    out += "]}";
    return out;
}

inline std::string dump_rearranged(const RearrangedStep& r) {
    return "{\"breakpoints\":" + dump_array(r.breakpoints()) +
           ",\"levels\":" + dump_array(r.levels()) + "}";
}

inline std::string dump_verdict(const MajorizationVerdict& v) {
    std::string out = "{\"holds\":";
    out += v.holds ? "true" : "false";
    out += ",\"witness\":";
    out += v.witness ? dump_kernel(*v.witness) : "null";
    out += ",\"certificate\":";
    out += v.certificate ? dump_sublinear(*v.certificate) : "null";
    out += ",\"margin\":";
    out += v.margin ? fmt_double(*v.margin) : "null";
    out += "}";
    return out;
}

inline std::string dump_approximation(const std::vector<ApproximationRow>& rows) {
    std::string out = "{\"rows\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) out += ",";
        out += "{\"level\":" + std::to_string(rows[i].level) +
               ",\"basis_index\":" + std::to_string(rows[i].basis_index) +
               ",\"l1_error\":" + fmt_double(rows[i].l1_error) + "}";
    }
    out += "]}";
    return out;
}

inline std::string dump_scalar_report(const ScalarEquivalenceReport& r) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    return std::string("{\"matrix_feasible\":") + b(r.matrix_feasible) +
           ",\"hinge_inequalities\":" + b(r.hinge_inequalities) +
           ",\"multivariate_feasible\":" + b(r.multivariate_feasible) +
           ",\"agree\":" + b(r.agree) + "}";
}

}  // namespace majkit
