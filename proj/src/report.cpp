#include "coxfano/report.hpp"

#include <algorithm>
#include <sstream>

namespace coxfano {

namespace {

struct MonomialStyle {
    std::string (*variable)(std::size_t index);
    std::string (*power)(Int exponent);
    std::string separator;
};

std::string text_var(std::size_t i) { return "T" + std::to_string(i); }
std::string text_pow(Int e) { return e == 1 ? "" : "^" + std::to_string(e); }
std::string latex_var(std::size_t i) { return "T_{" + std::to_string(i) + "}"; }
std::string latex_pow(Int e) { return e == 1 ? "" : "^{" + std::to_string(e) + "}"; }

std::vector<std::string> monomials(const RingData& d, const MonomialStyle& style)
{
    std::vector<std::string> out;
    std::size_t flat = 0;
    for (const auto& b : d.blocks) {
        std::string mono;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (j > 0) mono += style.separator;
            mono += style.variable(++flat) + style.power(b.exponents[j]);
        }
        out.push_back(mono);
    }
    return out;
}

std::string relations(const RingData& d, const MonomialStyle& style, std::string (*coeff)(int),
                      const std::string& join)
{
    if (d.r < 2) return "-";
    const auto mono = monomials(d, style);
    std::string out;
    for (int i = 0; i + 2 <= d.r; ++i) {
        if (i > 0) out += join;
        const auto k = static_cast<std::size_t>(i);
        out += (i == 0 ? "" : coeff(i)) + mono[k] + " + " + mono[k + 1] + " + " + mono[k + 2];
    }
    return out;
}

std::string text_coeff(int i) { return "l" + std::to_string(i) + "*"; }
std::string latex_coeff(int i) { return "\\lambda_{" + std::to_string(i) + "}"; }

std::vector<std::vector<std::string>> degree_rows(const RingData& d)
{
    const auto degs = d.degrees();
    std::vector<std::vector<std::string>> rows(1 + d.group().torsion.size());
    for (const auto& g : degs) {
        rows[0].push_back(std::to_string(g.free.at(0)));
        for (std::size_t t = 0; t < g.tors.size(); ++t) rows[t + 1].push_back(std::to_string(g.tors[t]));
    }
    return rows;
}

std::string latex_escape_underscore(std::string s)
{
    std::string out;
    for (char c : s) out += c == '_' ? std::string("\\_") : std::string(1, c);
    return out;
}

std::string pad(const std::string& s, std::size_t width) { return s + std::string(width - std::min(width, s.size()), ' '); }

void text_section(std::ostringstream& os, const std::vector<ClassifiedVariety>& vs, const std::string& title)
{
    std::vector<std::vector<std::string>> rows = {{"No.", "R(X)", "Cl(X)", "grading", "d_X", "iota"}};
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& v = vs[i];
        rows.push_back({std::to_string(i + 1), relations_text(v.data), v.data.group().to_string(), grading_text(v.data),
                        v.invariants.degree.to_display(), std::to_string(v.invariants.gorenstein_index)});
    }
    std::vector<std::size_t> widths(rows[0].size(), 0);
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
    os << title << " (" << vs.size() << ")\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        std::string line;
        for (std::size_t c = 0; c < rows[k].size(); ++c) line += (c ? " | " : "") + pad(rows[k][c], widths[c]);
        while (!line.empty() && line.back() == ' ') line.pop_back();
        os << line << "\n";
        if (k == 0) {
            std::string rule;
            for (std::size_t c = 0; c < widths.size(); ++c) rule += (c ? "-+-" : "") + std::string(widths[c], '-');
            os << rule << "\n";
        }
    }
}

void latex_section(std::ostringstream& os, const std::vector<ClassifiedVariety>& vs)
{
    os << "\\begin{longtable}{cllccc}\n";
    os << "No. & $\\mathcal{R}(X)$ & $\\operatorname{Cl}(X)$ & grading & $d_X$ & $\\iota(X)$ \\\\\n\\hline\n\\endhead\n";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto& v = vs[i];
        const Rational& deg = v.invariants.degree;
        const std::string d_x =
            deg.den() == 1 ? std::to_string(deg.num()) : "\\frac{" + std::to_string(deg.num()) + "}{" + std::to_string(deg.den()) + "}";
        os << (i + 1) << " & $" << relations_latex(v.data) << "$ & $" << class_group_latex(v.data.group()) << "$ & $"
           << grading_latex(v.data) << "$ & $" << d_x << "$ & $" << v.invariants.gorenstein_index << "$ \\\\\n";
    }
    os << "\\end{longtable}\n";
}

} // namespace

std::string relations_text(const RingData& d)
{
    return relations(d, MonomialStyle{text_var, text_pow, "*"}, text_coeff, ", ");
}

std::string relations_latex(const RingData& d)
{
    return relations(d, MonomialStyle{latex_var, latex_pow, ""}, latex_coeff, ",\\ ");
}

std::string grading_text(const RingData& d)
{
    std::string out = "[";
    const auto rows = degree_rows(d);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k) out += "; ";
        for (std::size_t c = 0; c < rows[k].size(); ++c) out += (c ? " " : "") + rows[k][c];
    }
    return out + "]";
}

std::string grading_latex(const RingData& d)
{
    std::string out = "\\left[\\begin{smallmatrix}";
    const auto rows = degree_rows(d);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k) out += " \\\\ ";
        for (std::size_t c = 0; c < rows[k].size(); ++c) {
            if (c) out += " & ";
            out += k == 0 ? rows[k][c] : "\\bar{" + rows[k][c] + "}";
        }
    }
    return out + "\\end{smallmatrix}\\right]";
}

std::string class_group_latex(const AbGroup& g)
{
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < g.free_rank; ++i) parts.push_back("\\mathbb{Z}");
    for (Int t : g.torsion) parts.push_back("\\mathbb{Z}/" + std::to_string(t) + "\\mathbb{Z}");
    if (parts.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " \\oplus " : "") + parts[i];
    return out;
}

std::string render_table(const ClassifyResult& res)
{
    std::ostringstream os;
    text_section(os, res.varieties, "varieties");
    if (!res.toric.empty()) {
        os << "\n";
        text_section(os, res.toric, "toric");
    }
    for (const auto& w : res.warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string render_latex(const ClassifyResult& res)
{
    std::ostringstream os;
    latex_section(os, res.varieties);
    if (!res.toric.empty()) latex_section(os, res.toric);
    for (const auto& w : res.warnings) os << "% warning: " << latex_escape_underscore(w) << "\n";
    return os.str();
}

} // namespace coxfano
