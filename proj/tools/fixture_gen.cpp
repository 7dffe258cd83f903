// Regenerates the canonical fixture files under fixtures/ from their factored source
// forms. The unit tests check both directions: the shipped files parse back to these
// objects, and the Fox-calculus entries match the factored transcriptions.

#include "l2chi/free_by_cyclic.hpp"
#include "l2chi/parse.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace l2chi;

namespace {

Word parse_word(const std::string& s, int ngens, const std::map<char, GRE>* defines = nullptr) {
    GRE e = parse_expression(s, ngens, defines);
    auto u = e.as_unit();
    if (!u || u->second != 1) throw input_error("not a single word: " + s);
    return u->first;
}

void write_file(const std::filesystem::path& dir, const std::string& name, const InputFile& f) {
    std::filesystem::path p = dir / (name + ".grp");
    std::ofstream out(p);
    out << serialize_input(f);
    std::cout << "wrote " << p.string() << "\n";
}

InputFile borromean() {
    InputFile f;
    f.name = "borromean";
    f.presentation = Presentation(3, {
        parse_word("C*B*c*a*C*A*b*a*c*A", 3),
        parse_word("B*a*b*C*B*c*A*C*b*c", 3),
    });
    f.complex_kind = ComplexKind::fox;
    f.complex = presentation_complex(f.presentation);
    return f;
}

InputFile l10n14() {
    InputFile f;
    f.name = "l10n14";
    f.presentation = Presentation(2, {
        parse_word("a*(b*A*B^2*A)^2*b*a^3*b*A*B^2*A*b*A*B*(a*b^2*a*B)^2*A^3*B*a*b^2*a*B", 2),
    });
    f.complex_kind = ComplexKind::fox;
    f.complex = presentation_complex(f.presentation);
    return f;
}

InputFile v1539() {
    InputFile f;
    f.name = "v1539_5_1";
    f.presentation = Presentation(2, {
        parse_word("B^4*a^2*(B*A)^3*B*a^2*b^5*a^2*B*A^3*b^4", 2),
        parse_word("(b*A^2*b*a^3)^2*b*A^2*B^5", 2),
    });
    f.complex_kind = ComplexKind::explicit_matrices;
    f.complex.dims = {1, 2, 2, 1};
    GrMat d1(2, 1), d2(2, 2), d3(1, 2);
    d1.at(0, 0) = parse_expression("1-a", 2);
    d1.at(1, 0) = parse_expression("1-b", 2);
    d2.at(0, 0) = parse_expression(
        "B^4*(1+a*(1-a*B*A*(1+B*A*(1+B*A*(1-B*(1+a*(1+a*b^5*(1+a*(1-a*B*A*(1+A*(1+A)))))))))))", 2);
    d2.at(0, 1) = parse_expression(
        "-B*(1+B*(1+B*(1+B*(1+a^2*B*(1+A*B*(1+A*B*(1+A*B*(1-a^2*(1+b*(1+b*(1+b*(1+b*(1-b*a^2*B*"
        "(1-A^3*(1+b*(1+b*(1+b)))))))))))))))))",
        2);
    d2.at(1, 0) = parse_expression(
        "-b*A*(1+A*(1-b*(1+a*(1+a*(1-a*b*A*(1+A*(1-b*(1+a*(1+a*(1-a*b*A*(1+A)))))))))))", 2);
    d2.at(1, 1) = parse_expression(
        "1+b*A^2*(1+b*a^3*(1+b*A^2*(1+b*a^3*(1-b*A^2*B*(1+B*(1+B*(1+B*(1+B))))))))", 2);
    d3.at(0, 0) = parse_expression("b*A^2*b^4-b*a*b*A^2*b^4", 2);
    d3.at(0, 1) = parse_expression(
        "(A*B)^2*a^2*b^5*(a^2*B*A^3*B^5*(A^2*b*a^3*b)^2*A^2-((a^2*B*A^3*B)^2*a^2*b^4)^2)*B^5", 2);
    f.complex.boundaries = {d1, d2, d3};
    return f;
}

InputFile v1539_matrix_a() {
    InputFile f;
    f.name = "v1539_matrix_a";
    std::map<char, GRE> defs;
    defs['X'] = parse_expression("a^2*C^5*B^3", 3);
    f.presentation = Presentation(3, {
        parse_word("(a^2*C^5*B^3)^4*a^2*b^2", 3),
        parse_word("a^2*C^5*B^2*c", 3),
        parse_word("c^9*A^3*b^3*C^3", 3),
    });
    f.complex_kind = ComplexKind::explicit_matrices;
    f.complex.dims = {3, 3};
    GrMat a(3, 3);
    a.at(0, 0) = parse_expression("(1+X+X^2+X^3+X^4)*(1+a)", 3, &defs);
    a.at(0, 1) = parse_expression("-(X+X^2+X^3+X^4)*(1+b+b^2)+X^4*a^2*(1+b)", 3, &defs);
    a.at(0, 2) = parse_expression("-(1+X+X^2+X^3)*a^2*C^5*(1+c+c^2+c^3+c^4)", 3, &defs);
    a.at(1, 0) = parse_expression("1+a", 3, &defs);
    a.at(1, 1) = parse_expression("-X*(b+b^2)", 3, &defs);
    a.at(1, 2) = parse_expression("a^2*C^5*(B^2-1-c-c^2-c^3-c^4)", 3, &defs);
    a.at(2, 0) = parse_expression("-c^9*A^3*(1+a+a^2)", 3, &defs);
    a.at(2, 1) = parse_expression("c^9*A^3*(1+b+b^2)", 3, &defs);
    a.at(2, 2) = parse_expression("(1+c^3+c^6-c^9*A^3*b^3*C^3)*(1+c+c^2)", 3, &defs);
    f.complex.boundaries = {a};
    return f;
}

InputFile fbc_example_1() {
    std::vector<ElementaryAut> word = {
        {'e', 1, 0}, {'s', 0, 2}, {'e', 1, 0}, {'e', 2, 1}, {'e', 2, 0}};
    Presentation pres = free_by_cyclic(3, word);
    InputFile f;
    f.name = "fbc_example_1";
    f.presentation = pres;
    f.complex_kind = ComplexKind::fox;
    f.complex = presentation_complex(pres);
    return f;
}

// Integer chain complex with planted boundary ranks (1, 5, 4) on dimensions
// (1, 6, 10, 4): b = (0, 0, 1, 0) exactly.
InputFile fiber_shape() {
    InputFile f;
    f.name = "fiber_shape_planted";
    f.presentation = Presentation(1, {});
    f.complex_kind = ComplexKind::explicit_matrices;
    f.complex.dims = {1, 6, 10, 4};
    GrMat b1(6, 1), b2(10, 6), b3(4, 10);
    for (int i = 0; i < 6; ++i) b1.at(i, 0) = GRE(Int(1));
    auto diff = [&](int row, int i, int j) {
        b2.at(row, i) = GRE(Int(1));
        b2.at(row, j) = GRE(Int(-1));
    };
    diff(0, 0, 1);
    diff(1, 1, 2);
    diff(2, 2, 3);
    diff(3, 3, 4);
    diff(4, 4, 5);
    diff(5, 0, 2);
    diff(6, 1, 3);
    diff(7, 2, 4);
    diff(8, 3, 5);
    diff(9, 0, 5);
    // rows of b3 are relations among the rows of b2: r_k + r_{k+1} - r_{k+5}
    int rel[4][3] = {{0, 1, 5}, {1, 2, 6}, {2, 3, 7}, {3, 4, 8}};
    for (int r = 0; r < 4; ++r) {
        b3.at(r, rel[r][0]) = GRE(Int(1));
        b3.at(r, rel[r][1]) = GRE(Int(1));
        b3.at(r, rel[r][2]) = GRE(Int(-1));
    }
    f.complex.boundaries = {b1, b2, b3};
    return f;
}

} // namespace

int main(int argc, char** argv) {
    std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(dir);
    try {
        write_file(dir, "borromean", borromean());
        write_file(dir, "l10n14", l10n14());
        write_file(dir, "v1539", v1539());
        write_file(dir, "v1539_matrix_a", v1539_matrix_a());
        write_file(dir, "fbc_example_1", fbc_example_1());
        write_file(dir, "fiber_shape", fiber_shape());
    } catch (const std::exception& e) {
        std::cerr << "fixture generation failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
