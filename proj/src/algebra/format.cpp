#include "twistfold/format.hpp"

namespace twistfold {

bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (depth == 0 && k > 0 && (c == '+' || c == '-')) {
            char prev = s[k - 1];
            if (prev != '*' && prev != '/' && prev != '^' && prev != '(') return true;
        }
    }
    return false;
}

std::string coef_times(const std::string& coef, const std::string& atom) {
    if (atom.empty()) return coef;
    if (coef == "1") return atom;
    if (coef == "-1") return "-" + atom;
    if (has_top_level_sum(coef)) return "(" + coef + ")*" + atom;
    return coef + "*" + atom;
}

std::string join_terms(const std::vector<std::pair<std::string, std::string>>& parts, bool compact) {
    if (parts.empty()) return "0";
    std::string out;
    for (const auto& [c, a] : parts) {
        std::string t = coef_times(c, a);
        if (out.empty())
            out = t;
        else if (t[0] == '-' && !has_top_level_sum(t))
            out += (compact ? "-" : " - ") + t.substr(1);
        else
            out += (compact ? "+" : " + ") + t;
    }
    return out;
}

}  // namespace twistfold
