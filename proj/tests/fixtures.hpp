#ifndef L2CHI_TESTS_FIXTURES_HPP
#define L2CHI_TESTS_FIXTURES_HPP

#include "l2chi/parse.hpp"

#include <string>

namespace fixtures {

inline std::string path(const std::string& name) {
    return std::string(L2CHI_FIXTURE_DIR) + "/" + name + ".grp";
}

inline l2chi::InputFile load(const std::string& name) {
    return l2chi::parse_input_file(path(name));
}

// Transposed second differential of the Borromean-rings presentation complex, in the
// factored form the complex was published with; entry (j,i) must equal the Fox
// derivative of relator i by generator j.
inline const char* borromean_d2t[3][2] = {
    {"C*B*c*(1-a*C*A*(1-b*(1-a*c*A)))", "B*(1-a*b*C*B*c*A)"},
    {"-C*B*(1-c*a*C*A)", "-B*(1-a*(1-b*C*B*(1-c*A*C)))"},
    {"-C*(1-B*(1-c*a*C*(1-A*b*a)))", "-B*a*b*C*(1-B*(1-c*A*C*(1-b)))"},
};

// Factored second differential of the l10n14 presentation complex.
inline const char* l10n14_d2[2] = {
    "1-a*b*A*(1+B^2*A*(1+b*A*(1+B^2*A*(1-b*(1+a*(1+a*(1-a*b*A*(1+B^2*A*(1+b*A*(1-B*(1+a*b^2*"
    "(1+a*B*(1+a*b^2*(1-a*B*A*(1+A*(1+A*(1-B*(1+a*b^2))))))))))))))))))",
    "a*(1-b*A*B*(1+B*(1-A*(1-b*A*B*(1+B*(1-A*(1+b*a^3*(1-b*A*B*(1+B*(1-A*(1-b*A*B*(1-a*(1+b*"
    "(1-b*a*B*(1-a*(1+b*(1-b*a*B*(1+A^3*B*(1-a*(1+b*(1-b*a*B)))))))))))))))))))))",
};

} // namespace fixtures

#endif
