#ifndef L2CHI_PARSE_HPP
#define L2CHI_PARSE_HPP

#include "l2chi/chain.hpp"
#include "l2chi/group_ring.hpp"
#include "l2chi/presentation.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace l2chi {

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := int ['*' factor ('*' factor)*] | [int ['*']] factor ('*' factor)*
//   factor := atom | '(' expr ')' ['^' int]
//   atom   := letter ['^' int]
// Lowercase letters are generators in declaration order; X^-1 and uppercase X both
// invert; '^' with a negative exponent needs the base to reduce to +/- a single word.
// An uppercase letter whose lowercase is not a declared generator may be bound with a
// `define` line and is substituted during parsing.
class ExprParser {
public:
    ExprParser(const std::string& src, int ngens, const std::map<char, GRE>* defines, int line)
        : src_(src), ngens_(ngens), defines_(defines), line_(line) {}

    GRE parse() {
        GRE r = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;
    int ngens_;
    const std::map<char, GRE>* defines_;
    int line_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw input_error("line " + std::to_string(line_) + ", column " +
                          std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    bool eat(char c) {
        if (peek(c)) { ++pos_; return true; }
        return false;
    }

    bool at_factor_start() {
        skip_ws();
        if (pos_ >= src_.size()) return false;
        char c = src_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    bool at_digit() {
        skip_ws();
        return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
    }

    Int parse_uint() {
        skip_ws();
        if (!at_digit()) fail("expected an integer");
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            digits += src_[pos_++];
        return Int(digits);
    }

    std::int64_t parse_exponent() {
        skip_ws();
        bool neg = eat('-');
        if (!neg) eat('+');
        Int v = parse_uint();
        if (v > Int(1000000)) fail("exponent too large");
        std::int64_t e = static_cast<std::int64_t>(v);
        return neg ? -e : e;
    }

    GRE gre_pow(const GRE& base, std::int64_t e) {
        if (e == 0) return GRE(Int(1));
        if (e > 0) {
            GRE r = base;
            for (std::int64_t i = 1; i < e; ++i) r = ring_mul(r, base);
            return r;
        }
        auto u = base.as_unit();
        if (!u) fail("negative power of an expression that is not +/- a single word");
        Word w = word_pow(u->first, e);
        Int c = u->second == 1 ? Int(1) : (e % 2 == 0 ? Int(1) : Int(-1));
        return GRE(w, c);
    }

    GRE parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("expected a generator letter");
        char c = src_[pos_];
        if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected a generator letter");
        ++pos_;
        GRE base;
        if (std::islower(static_cast<unsigned char>(c))) {
            int g = c - 'a';
            if (g >= ngens_) fail(std::string("undeclared generator '") + c + "'");
            base = GRE(Word::generator(g));
        } else {
            if (defines_) {
                auto it = defines_->find(c);
                if (it != defines_->end()) {
                    base = it->second;
                    if (eat('^')) return gre_pow(base, parse_exponent());
                    return base;
                }
            }
            int g = c - 'A';
            if (g >= ngens_) fail(std::string("undeclared generator '") + c + "'");
            base = GRE(Word::generator(g, -1));
        }
        if (eat('^')) {
            // for a letter, the exponent applies to the underlying generator
            std::int64_t e = parse_exponent();
            auto u = base.as_unit();
            Word w = word_pow(u->first, e);
            return GRE(w, Int(1));
        }
        return base;
    }

    GRE parse_factor() {
        if (eat('(')) {
            GRE inner = parse_expr();
            if (!eat(')')) fail("missing ')'");
            if (eat('^')) return gre_pow(inner, parse_exponent());
            return inner;
        }
        return parse_atom();
    }

    GRE parse_term() {
        GRE coeff(Int(1));
        bool have_coeff = false;
        if (at_digit()) {
            coeff = GRE(parse_uint());
            have_coeff = true;
            if (eat('*')) {
                GRE r = parse_factor();
                while (eat('*')) r = ring_mul(r, parse_factor());
                return ring_mul(coeff, r);
            }
            if (!at_factor_start()) return coeff; // bare integer term
        }
        if (!at_factor_start()) fail("expected a factor");
        GRE r = parse_factor();
        while (eat('*')) r = ring_mul(r, parse_factor());
        return have_coeff ? ring_mul(coeff, r) : r;
    }

    GRE parse_expr() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        GRE r = parse_term();
        if (neg) r = -r;
        while (true) {
            skip_ws();
            if (eat('+')) {
                r = r + parse_term();
            } else if (eat('-')) {
                r = r - parse_term();
            } else {
                break;
            }
        }
        return r;
    }
};

inline GRE parse_expression(const std::string& src, int ngens,
                            const std::map<char, GRE>* defines = nullptr, int line = 1) {
    return ExprParser(src, ngens, defines, line).parse();
}

enum class ComplexKind { none, fox, explicit_matrices };

struct InputFile {
    std::string name;
    Presentation presentation;
    ComplexKind complex_kind = ComplexKind::none;
    ChainComplex complex;
    std::map<char, GRE> defines;
};

namespace parsedetail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace parsedetail

inline InputFile parse_input(std::istream& in) {
    using parsedetail::split_ws;
    using parsedetail::strip_comment;
    InputFile f;
    int ngens = -1;
    std::vector<Word> relators;
    std::vector<std::string> lines;
    {
        std::string l;
        while (std::getline(in, l)) lines.push_back(l);
    }

    auto need_gens = [&](int line) {
        if (ngens < 0)
            throw input_error("line " + std::to_string(line) + ": generators must be declared first");
    };

    std::size_t i = 0;
    auto next_content_line = [&]() -> int {
        while (i < lines.size()) {
            std::string body = strip_comment(lines[i]);
            bool blank = body.find_first_not_of(" \t\r") == std::string::npos;
            if (!blank) return static_cast<int>(i);
            ++i;
        }
        return -1;
    };

    while (true) {
        int li = next_content_line();
        if (li < 0) break;
        std::string body = strip_comment(lines[i]);
        ++i;
        int lineno = li + 1;
        std::istringstream is(body);
        std::string kw;
        is >> kw;
        std::string rest;
        std::getline(is, rest);

        if (kw == "name") {
            auto toks = split_ws(rest);
            if (toks.size() != 1) throw input_error("line " + std::to_string(lineno) + ": name wants one token");
            f.name = toks[0];
        } else if (kw == "generators") {
            auto toks = split_ws(rest);
            if (toks.empty()) throw input_error("line " + std::to_string(lineno) + ": no generators listed");
            for (std::size_t g = 0; g < toks.size(); ++g) {
                if (toks[g].size() != 1 || toks[g][0] != static_cast<char>('a' + g))
                    throw input_error("line " + std::to_string(lineno) +
                                      ": generators must be consecutive letters starting at 'a'");
            }
            ngens = static_cast<int>(toks.size());
        } else if (kw == "define") {
            need_gens(lineno);
            auto toks = split_ws(rest);
            if (toks.size() < 2) throw input_error("line " + std::to_string(lineno) + ": define wants a letter and an expression");
            if (toks[0].size() != 1 || !std::isupper(static_cast<unsigned char>(toks[0][0])))
                throw input_error("line " + std::to_string(lineno) + ": define symbol must be one uppercase letter");
            char sym = toks[0][0];
            if (sym - 'A' < ngens)
                throw input_error("line " + std::to_string(lineno) +
                                  ": define symbol collides with a generator inverse");
            std::string expr = rest;
            auto p = expr.find(toks[0]);
            expr = expr.substr(p + 1);
            f.defines[sym] = parse_expression(expr, ngens, &f.defines, lineno);
        } else if (kw == "relator") {
            need_gens(lineno);
            GRE e = parse_expression(rest, ngens, &f.defines, lineno);
            auto u = e.as_unit();
            if (!u || u->second != 1)
                throw input_error("line " + std::to_string(lineno) + ": relator must be a single word");
            relators.push_back(u->first);
        } else if (kw == "complex") {
            need_gens(lineno);
            auto toks = split_ws(rest);
            if (toks.size() == 1 && toks[0] == "fox") {
                f.complex_kind = ComplexKind::fox;
            } else {
                if (toks.empty()) throw input_error("line " + std::to_string(lineno) + ": complex wants 'fox' or dims");
                std::vector<int> dims;
                for (auto& t : toks) {
                    try {
                        dims.push_back(std::stoi(t));
                    } catch (...) {
                        throw input_error("line " + std::to_string(lineno) + ": bad dimension '" + t + "'");
                    }
                    if (dims.back() < 1) throw input_error("line " + std::to_string(lineno) + ": dims must be positive");
                }
                f.complex_kind = ComplexKind::explicit_matrices;
                f.complex.dims = dims;
                for (std::size_t b = 1; b < dims.size(); ++b) {
                    int hli = next_content_line();
                    if (hli < 0) throw input_error("missing 'boundary " + std::to_string(b) + "' block");
                    std::string hbody = strip_comment(lines[i]);
                    ++i;
                    auto htoks = split_ws(hbody);
                    if (htoks.size() != 2 || htoks[0] != "boundary" || htoks[1] != std::to_string(b))
                        throw input_error("line " + std::to_string(hli + 1) + ": expected 'boundary " +
                                          std::to_string(b) + "'");
                    GrMat m(dims[b], dims[b - 1]);
                    for (int r = 0; r < dims[b]; ++r) {
                        int rli = next_content_line();
                        if (rli < 0) throw input_error("boundary " + std::to_string(b) + ": missing row " +
                                                       std::to_string(r + 1));
                        std::string row = strip_comment(lines[i]);
                        ++i;
                        // split on ';'
                        std::vector<std::string> cells;
                        std::string cur;
                        for (char ch : row) {
                            if (ch == ';') {
                                cells.push_back(cur);
                                cur.clear();
                            } else {
                                cur += ch;
                            }
                        }
                        cells.push_back(cur);
                        if (static_cast<int>(cells.size()) != dims[b - 1])
                            throw input_error("line " + std::to_string(rli + 1) + ": expected " +
                                              std::to_string(dims[b - 1]) + " entries separated by ';'");
                        for (int c = 0; c < dims[b - 1]; ++c)
                            m.at(r, c) = parse_expression(cells[static_cast<std::size_t>(c)], ngens,
                                                          &f.defines, rli + 1);
                    }
                    f.complex.boundaries.push_back(std::move(m));
                }
            }
        } else {
            throw input_error("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }

    if (ngens < 0) throw input_error("no generators declared");
    f.presentation = Presentation(ngens, relators);
    if (f.complex_kind == ComplexKind::fox) {
        f.complex = presentation_complex(f.presentation);
    } else if (f.complex_kind == ComplexKind::explicit_matrices) {
        f.complex.check_shapes();
    }
    return f;
}

inline InputFile parse_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open input file " + path);
    try {
        return parse_input(in);
    } catch (input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline std::string serialize_input(const InputFile& f) {
    std::ostringstream os;
    if (!f.name.empty()) os << "name " << f.name << "\n";
    os << "generators";
    for (int g = 0; g < f.presentation.ngens; ++g) os << " " << gen_name(g);
    os << "\n";
    for (auto& r : f.presentation.relators) os << "relator " << word_str(r) << "\n";
    if (f.complex_kind == ComplexKind::fox) {
        os << "complex fox\n";
    } else if (f.complex_kind == ComplexKind::explicit_matrices) {
        os << "complex";
        for (auto d : f.complex.dims) os << " " << d;
        os << "\n";
        for (std::size_t b = 0; b < f.complex.boundaries.size(); ++b) {
            os << "boundary " << b + 1 << "\n";
            const GrMat& m = f.complex.boundaries[b];
            for (int r = 0; r < m.rows; ++r) {
                for (int c = 0; c < m.cols; ++c) {
                    if (c) os << " ; ";
                    os << gre_str(m.at(r, c));
                }
                os << "\n";
            }
        }
    }
    return os.str();
}

} // namespace l2chi

#endif
