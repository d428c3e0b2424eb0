#pragma once

#include "coxfano/enumerate.hpp"

#include <string>

namespace coxfano {

/// Relations as text, e.g. "T1*T2^3 + T3^4 + T4^2"; later relations carry
/// their free coefficient as l1, l2, ...
std::string relations_text(const RingData& d);

/// Relations in LaTeX, coefficients as \lambda_i.
std::string relations_latex(const RingData& d);

/// Degree matrix: free parts, then one row per torsion factor.
std::string grading_text(const RingData& d);
std::string grading_latex(const RingData& d);

std::string class_group_latex(const AbGroup& g);

/// Plain-text table with columns No., R(X), Cl(X), grading, d_X, iota.
std::string render_table(const ClassifyResult& res);

/// A longtable with the same columns.
std::string render_latex(const ClassifyResult& res);

} // namespace coxfano
