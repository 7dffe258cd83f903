#ifndef L2CHI_CLI_HPP
#define L2CHI_CLI_HPP

#include "l2chi/free_by_cyclic.hpp"
#include "l2chi/normball.hpp"
#include "l2chi/parse.hpp"
#include "l2chi/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace l2chi {

using Json = nlohmann::ordered_json;

namespace clidetail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::int64_t parse_i64(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw input_error("bad " + what + ": '" + s + "'");
    }
}

// accepts 123, 10^7, 2e6
inline std::uint64_t parse_budget(const std::string& s) {
    auto caret = s.find('^');
    if (caret != std::string::npos) {
        std::int64_t base = parse_i64(s.substr(0, caret), "budget base");
        std::int64_t exp = parse_i64(s.substr(caret + 1), "budget exponent");
        std::uint64_t r = 1;
        for (std::int64_t i = 0; i < exp; ++i) r *= static_cast<std::uint64_t>(base);
        return r;
    }
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        std::int64_t base = parse_i64(s.substr(0, e), "budget base");
        std::int64_t exp = parse_i64(s.substr(e + 1), "budget exponent");
        std::uint64_t r = static_cast<std::uint64_t>(base);
        for (std::int64_t i = 0; i < exp; ++i) r *= 10;
        return r;
    }
    return static_cast<std::uint64_t>(parse_i64(s, "budget"));
}

inline std::vector<std::int64_t> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<std::int64_t> out;
    for (auto& tok : split(s, ',')) out.push_back(parse_i64(tok, what));
    return out;
}

// "a=0,b=0,c=1"
inline std::vector<std::int64_t> parse_phi_images(const std::string& s, int ngens) {
    std::vector<std::int64_t> images(static_cast<std::size_t>(ngens), 0);
    std::vector<bool> seen(static_cast<std::size_t>(ngens), false);
    for (auto& tok : split(s, ',')) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw input_error("bad --phi entry '" + tok + "' (want g=value)");
        std::string g = tok.substr(0, eq);
        if (g.size() != 1 || g[0] < 'a' || g[0] >= 'a' + ngens)
            throw input_error("bad generator '" + g + "' in --phi");
        int idx = g[0] - 'a';
        images[static_cast<std::size_t>(idx)] = parse_i64(tok.substr(eq + 1), "--phi value");
        seen[static_cast<std::size_t>(idx)] = true;
    }
    return images;
}

// one permutation per generator in cycle notation, e.g. "(1 2)(3 4)"; "id" or "()"
// for the identity; points are 1-based
inline std::vector<QElem> parse_perm_file(const std::string& path, int ngens) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open permutation file " + path);
    std::vector<std::vector<std::vector<int>>> cyclists; // per line, list of cycles
    std::string line;
    int maxpt = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) continue;
        std::vector<std::vector<int>> cycles;
        std::istringstream is(line);
        std::string word;
        std::string flat;
        while (is >> word) flat += word + " ";
        std::size_t p = 0;
        auto skipws = [&] { while (p < flat.size() && flat[p] == ' ') ++p; };
        skipws();
        if (flat.substr(p, 2) == "id") {
            cyclists.push_back({});
            continue;
        }
        while (p < flat.size()) {
            skipws();
            if (p >= flat.size()) break;
            if (flat[p] != '(') throw input_error(path + ": expected '(' in cycle notation");
            ++p;
            std::vector<int> cyc;
            while (true) {
                skipws();
                if (p < flat.size() && flat[p] == ')') { ++p; break; }
                std::string num;
                while (p < flat.size() && std::isdigit(static_cast<unsigned char>(flat[p]))) num += flat[p++];
                if (num.empty()) throw input_error(path + ": expected a point number");
                int pt = std::stoi(num);
                if (pt < 1) throw input_error(path + ": points are 1-based");
                maxpt = std::max(maxpt, pt);
                cyc.push_back(pt - 1);
            }
            if (cyc.size() > 1) cycles.push_back(cyc);
        }
        cyclists.push_back(cycles);
    }
    if (static_cast<int>(cyclists.size()) != ngens)
        throw input_error(path + ": expected one permutation line per generator (" +
                          std::to_string(ngens) + ")");
    int npoints = std::max(maxpt, 1);
    std::vector<QElem> perms;
    for (auto& cycles : cyclists) {
        QElem perm(static_cast<std::size_t>(npoints));
        for (int i = 0; i < npoints; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (auto& cyc : cycles)
            for (std::size_t i = 0; i < cyc.size(); ++i)
                perm[static_cast<std::size_t>(cyc[i])] =
                    static_cast<std::int32_t>(cyc[(i + 1) % cyc.size()]);
        perms.push_back(std::move(perm));
    }
    return perms;
}

// trivial | abelian:7^2,2^1 | perm:FILE | search:deg=5,budget=10^7
inline FiniteQuotient parse_quotient_spec(const std::string& spec, const Presentation& pres) {
    if (spec == "trivial" || spec.empty()) return trivial_quotient(pres);
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "abelian") {
        if (rest.empty()) throw input_error("abelian quotient needs prime powers, e.g. abelian:7^2");
        std::vector<Int> pps;
        for (auto& tok : split(rest, ',')) {
            auto caret = tok.find('^');
            Int p, c = 1;
            if (caret == std::string::npos) {
                p = Int(parse_i64(tok, "prime"));
            } else {
                p = Int(parse_i64(tok.substr(0, caret), "prime"));
                c = Int(parse_i64(tok.substr(caret + 1), "exponent"));
            }
            if (p < 2) throw input_error("prime must be >= 2");
            Int pp = 1;
            for (Int i = 0; i < c; ++i) pp *= p;
            pps.push_back(pp);
        }
        return abelian_quotient(pres, pps);
    }
    if (kind == "perm") {
        return perm_quotient(pres, parse_perm_file(rest, pres.ngens));
    }
    if (kind == "search") {
        int deg = 3;
        std::uint64_t budget = 10000000ull;
        for (auto& tok : split(rest, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw input_error("bad search parameter '" + tok + "'");
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "deg")
                deg = static_cast<int>(parse_i64(val, "search degree"));
            else if (key == "budget")
                budget = parse_budget(val);
            else
                throw input_error("unknown search parameter '" + key + "'");
        }
        SearchResult sr = search_quotient(pres, deg, budget);
        return sr.quotients.front(); // largest image (the trivial quotient when nothing found)
    }
    throw input_error("unknown quotient spec '" + spec + "'");
}

inline Character character_from_flags(const InputFile& f, const std::string& phi_flag,
                                      const std::string& v_flag) {
    if (!phi_flag.empty() && !v_flag.empty()) throw input_error("give --phi or --v, not both");
    if (!phi_flag.empty())
        return make_character_from_images(f.presentation,
                                          parse_phi_images(phi_flag, f.presentation.ngens));
    if (!v_flag.empty()) {
        AbelianStructure ab = abelianize(f.presentation);
        return make_character_from_coords(f.presentation, ab, parse_int_list(v_flag, "--v entry"));
    }
    throw input_error("a character is required (--phi or --v)");
}

struct OutputSink {
    std::ostream* out;
    bool json = false;
    std::string log_path;

    void emit(const Json& j, const std::string& human) const {
        if (json)
            (*out) << j.dump() << "\n";
        else
            (*out) << human;
        if (!log_path.empty()) {
            std::ofstream log(log_path, std::ios::app);
            log << j.dump() << "\n";
        }
    }
};

inline Json chi_report_json(const ChiReport& rep, std::uint64_t seed, bool timing, bool round) {
    Json j;
    Json degs = Json::array();
    for (std::size_t n = 0; n < rep.degrees.size(); ++n) {
        const auto& d = rep.degrees[n];
        Json e;
        e["n"] = n;
        e["v"] = rat_str(d.v);
        e["N"] = d.shift;
        e["delta"] = rat_str(d.delta);
        e["L_order"] = d.subgroup_order.str();
        e["mu"] = d.mu;
        e["seconds"] = timing ? d.seconds : 0.0;
        degs.push_back(e);
    }
    j["degrees"] = degs;
    j["chi"] = rat_str(rep.chi);
    j["minus_chi"] = rat_str(-rep.chi);
    j["d"] = rep.d.str();
    j["quotient"] = rep.quotient;
    j["phi"] = rep.phi_images;
    j["seed"] = seed;
    if (round) {
        double x = rat_double(-rep.chi);
        long long nearest = std::llround(x);
        j["minus_chi_rounded"] = nearest;
        j["distance_to_integer"] = std::abs(x - static_cast<double>(nearest));
    }
    if (rep.zero_character) j["warning"] = "zero character: chi = 0 by definition";
    return j;
}

} // namespace clidetail

// Argument-level entry point; exit codes: 0 success, 2 input error, 3 computational abort.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace clidetail;
    CLI::App app{"twisted L2-Euler characteristics of group chain complexes"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool json = false, timing = false;
    std::string log_path;
    app.add_option("--seed", seed, "seed for all randomness");
    app.add_flag("--json", json, "one JSON object per report line");
    app.add_flag("--timing", timing, "include wall-clock seconds in reports");
    app.add_option("--log", log_path, "append JSON report lines to this file");

    // ---- chi ----
    auto* chi = app.add_subcommand("chi", "twisted L2-Euler characteristic");
    std::string chi_in, chi_phi, chi_v, chi_mu = "1", chi_quot = "trivial";
    bool chi_no_shrink = false, chi_exact = false, chi_round = false;
    int chi_probes = 3;
    std::size_t chi_limit = kDefaultClosureLimit;
    chi->add_option("-i,--input", chi_in, "input file")->required();
    chi->add_option("--phi", chi_phi, "character by images, e.g. a=0,b=0,c=1");
    chi->add_option("--v", chi_v, "character in free Smith coordinates, e.g. 0,1");
    chi->add_option("--mu", chi_mu, "expansion parameter (one value or one per degree)");
    chi->add_option("--quotient", chi_quot, "trivial | abelian:p^c,... | perm:FILE | search:deg=..,budget=..");
    chi->add_flag("--no-shrink", chi_no_shrink, "skip the unit-pivot shrink pass");
    chi->add_flag("--exact", chi_exact, "certified ranks by fraction-free elimination");
    chi->add_flag("--round", chi_round, "report nearest integer and distance");
    chi->add_option("--probes", chi_probes, "number of probe primes");
    chi->add_option("--closure-limit", chi_limit, "abort above this subgroup size");

    // ---- betti ----
    auto* betti = app.add_subcommand("betti", "untwisted L2-Betti numbers via rank-nullity");
    std::string betti_in, betti_quot = "trivial";
    bool betti_exact = false;
    int betti_probes = 3;
    std::size_t betti_limit = kDefaultClosureLimit;
    betti->add_option("-i,--input", betti_in, "input file")->required();
    betti->add_option("--quotient", betti_quot, "quotient spec");
    betti->add_flag("--exact", betti_exact, "certified ranks");
    betti->add_option("--probes", betti_probes, "number of probe primes");
    betti->add_option("--closure-limit", betti_limit, "abort above this subgroup size");

    // ---- alexander ----
    auto* alex = app.add_subcommand("alexander", "Alexander polynomial norm of a 2-generator presentation");
    std::string alex_in, alex_phi, alex_v;
    alex->add_option("-i,--input", alex_in, "input file")->required();
    alex->add_option("--phi", alex_phi, "character by images");
    alex->add_option("--v", alex_v, "character in free Smith coordinates");

    // ---- normball ----
    auto* ball = app.add_subcommand("normball", "reconstruct and certify a seminorm unit ball");
    std::string ball_in, ball_svg_path;
    int ball_dim = 0;
    ball->add_option("-i,--input", ball_in, "CSV sample file: v1,v2[,v3],value")->required();
    ball->add_option("--dim", ball_dim, "ambient dimension (1-3)")->required();
    ball->add_option("--svg", ball_svg_path, "write an SVG sketch (dim 2 only)");

    // ---- bound ----
    auto* bound = app.add_subcommand("bound", "quantitative approximation error bound");
    double bound_n = 1, bound_k = 2, bound_d = 2;
    bound->add_option("--n", bound_n, "matrix size")->required();
    bound->add_option("--k", bound_k, "step index (>= 2)")->required();
    bound->add_option("--d", bound_d, "operator norm bound (> 1)")->required();

    // ---- fbc ----
    auto* fbc = app.add_subcommand("fbc", "emit a free-by-cyclic presentation file");
    int fbc_rank = 0;
    std::string fbc_word, fbc_out, fbc_name;
    fbc->add_option("--rank", fbc_rank, "free group rank")->required();
    fbc->add_option("--word", fbc_word, "composition, e.g. eta21,sig13,tau2 (leftmost applied first)")
        ->required();
    fbc->add_option("-o,--output", fbc_out, "output path")->required();
    fbc->add_option("--name", fbc_name, "name field for the file");

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    OutputSink sink{&out, json, log_path};

    try {
        if (chi->parsed()) {
            InputFile f = parse_input_file(chi_in);
            if (f.complex_kind == ComplexKind::none)
                throw input_error("input file declares no chain complex");
            Character phi = character_from_flags(f, chi_phi, chi_v);
            if (phi.zero) {
                ChiReport rep;
                rep.zero_character = true;
                rep.chi = 0;
                rep.d = 0;
                rep.quotient = "unused";
                Json j = chi_report_json(rep, seed, timing, chi_round);
                sink.emit(j, "chi = 0 (zero character)\nwarning: the zero character is degenerate\n");
                return 0;
            }
            FiniteQuotient q = parse_quotient_spec(chi_quot, f.presentation);
            ChiOptions opt;
            for (auto m : parse_int_list(chi_mu, "--mu entry")) opt.mu.push_back(m);
            opt.shrink = !chi_no_shrink;
            opt.policy.exact = chi_exact;
            opt.policy.probes = chi_probes;
            opt.policy.seed = seed;
            opt.closure_limit = chi_limit;
            ChiReport rep = chi_twisted(f.complex, phi, q, opt);
            Json j = chi_report_json(rep, seed, timing, chi_round);
            std::ostringstream human;
            human << "quotient: " << rep.quotient << "   d = " << rep.d.str() << "\n";
            for (std::size_t n = 0; n < rep.degrees.size(); ++n) {
                const auto& d = rep.degrees[n];
                human << "  degree " << n << ": v = " << rat_str(d.v) << "  N = " << d.shift
                      << "  delta = " << rat_str(d.delta) << "  |L| = " << d.subgroup_order.str()
                      << "  mu = " << d.mu << "\n";
            }
            human << "chi = " << rat_str(rep.chi) << "   -chi = " << rat_str(-rep.chi) << "\n";
            if (chi_round) {
                double x = rat_double(-rep.chi);
                long long nearest = std::llround(x);
                human << "-chi rounds to " << nearest << " (distance "
                      << std::abs(x - static_cast<double>(nearest)) << ")\n";
            }
            sink.emit(j, human.str());
            return 0;
        }

        if (betti->parsed()) {
            InputFile f = parse_input_file(betti_in);
            if (f.complex_kind == ComplexKind::none)
                throw input_error("input file declares no chain complex");
            FiniteQuotient q = parse_quotient_spec(betti_quot, f.presentation);
            RankPolicy policy;
            policy.exact = betti_exact;
            policy.probes = betti_probes;
            policy.seed = seed;
            BettiReport rep = betti_untwisted(f.complex, q, policy, betti_limit);
            Json j;
            j["dims"] = f.complex.dims;
            Json ranks = Json::array(), bi = Json::array(), lords = Json::array();
            for (auto& r : rep.ranks) ranks.push_back(rat_str(r));
            for (auto& b : rep.betti) bi.push_back(rat_str(b));
            for (auto& l : rep.subgroup_orders) lords.push_back(l.str());
            j["ranks"] = ranks;
            j["betti"] = bi;
            j["L_orders"] = lords;
            j["quotient"] = rep.quotient;
            j["seed"] = seed;
            std::ostringstream human;
            human << "quotient: " << rep.quotient << "\n";
            for (std::size_t i = 0; i < rep.ranks.size(); ++i)
                human << "  rk(d" << i + 1 << ") = " << rat_str(rep.ranks[i]) << "  (|L| = "
                      << rep.subgroup_orders[i].str() << ")\n";
            human << "betti:";
            for (auto& b : rep.betti) human << " " << rat_str(b);
            human << "\n";
            sink.emit(j, human.str());
            return 0;
        }

        if (alex->parsed()) {
            InputFile f = parse_input_file(alex_in);
            Character phi = character_from_flags(f, alex_phi, alex_v);
            Laurent2 poly = alexander_polynomial(f.presentation);
            std::int64_t norm = alexander_norm_2g1r(f.presentation, phi);
            Json j;
            j["alexander"] = l2_str(poly);
            j["norm"] = norm;
            j["phi"] = phi.images;
            j["d"] = phi.d.str();
            j["seed"] = seed;
            std::ostringstream human;
            human << "alexander polynomial: " << l2_str(poly) << "\n";
            human << "norm along phi: " << norm << "\n";
            sink.emit(j, human.str());
            return 0;
        }

        if (ball->parsed()) {
            std::ifstream in(ball_in);
            if (!in) throw input_error("cannot open sample file " + ball_in);
            SampleSet samples = parse_samples_csv(in, ball_dim);
            BallCertificate cert = reconstruct_ball(samples);
            if (!ball_svg_path.empty()) {
                std::ofstream svg(ball_svg_path);
                svg << ball_svg(cert, samples);
            }
            Json j;
            j["dim"] = cert.dim;
            j["certified"] = cert.certified;
            j["spans_everything"] = cert.spans_everything;
            Json verts = Json::array();
            for (auto& v : cert.vertices_lift) {
                Json vv = Json::array();
                for (auto& x : v) vv.push_back(rat_str(x));
                verts.push_back(vv);
            }
            j["vertices"] = verts;
            Json facets = Json::array();
            for (auto& fc : cert.facets) {
                Json fj;
                Json nn = Json::array();
                for (auto& x : fc.normal) nn.push_back(x.str());
                fj["normal"] = nn;
                fj["offset"] = rat_str(fc.offset);
                fj["certified"] = fc.certified;
                fj["witness"] = fc.witness;
                facets.push_back(fj);
            }
            j["facets"] = facets;
            Json lin = Json::array();
            for (auto& v : cert.lineality) {
                Json vv = Json::array();
                for (auto& x : v) vv.push_back(rat_str(x));
                lin.push_back(vv);
            }
            j["lineality"] = lin;
            j["seed"] = seed;
            std::ostringstream human;
            human << (cert.certified ? "certified" : "NOT certified") << ", " << cert.vertices.size()
                  << " vertices, " << cert.facets.size() << " facets\n";
            sink.emit(j, human.str());
            return 0;
        }

        if (bound->parsed()) {
            double b = luck_error_bound(bound_n, bound_k, bound_d);
            Json j;
            j["n"] = bound_n;
            j["k"] = bound_k;
            j["d"] = bound_d;
            j["bound"] = b;
            j["seed"] = seed;
            std::ostringstream human;
            human << "bound = " << b << "\n";
            sink.emit(j, human.str());
            return 0;
        }

        if (fbc->parsed()) {
            std::vector<ElementaryAut> gens;
            for (auto& tok : split(fbc_word, ',')) {
                if (tok.size() < 4) throw input_error("bad automorphism token '" + tok + "'");
                std::string kind = tok.substr(0, 3);
                std::string digits = tok.substr(3);
                ElementaryAut e;
                if (kind == "tau") {
                    if (digits.size() != 1) throw input_error("tau wants one index: '" + tok + "'");
                    e.kind = 't';
                    e.i = digits[0] - '1';
                } else if (kind == "sig" || kind == "eta") {
                    if (digits.size() != 2) throw input_error(kind + " wants two indices: '" + tok + "'");
                    e.kind = kind == "sig" ? 's' : 'e';
                    e.i = digits[0] - '1';
                    e.j = digits[1] - '1';
                } else {
                    throw input_error("unknown automorphism '" + tok + "' (tau/sig/eta)");
                }
                gens.push_back(e);
            }
            Presentation pres = free_by_cyclic(fbc_rank, gens);
            InputFile f;
            f.name = fbc_name;
            f.presentation = pres;
            f.complex_kind = ComplexKind::fox;
            f.complex = presentation_complex(pres);
            std::ofstream o(fbc_out);
            if (!o) throw input_error("cannot write " + fbc_out);
            o << serialize_input(f);
            AbelianStructure ab = abelianize(pres);
            Json j;
            j["written"] = fbc_out;
            j["ngens"] = pres.ngens;
            j["relators"] = pres.relators.size();
            j["free_rank"] = ab.free_rank;
            Json tor = Json::array();
            for (auto& t : ab.torsion) tor.push_back(t.str());
            j["torsion"] = tor;
            j["seed"] = seed;
            std::ostringstream human;
            human << "wrote " << fbc_out << " (" << pres.ngens << " generators, "
                  << pres.relators.size() << " relators, free rank " << ab.free_rank << ")\n";
            sink.emit(j, human.str());
            return 0;
        }
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const compute_error& e) {
        err << "computation aborted: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

inline int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return run(args, out, err);
}

} // namespace l2chi

#endif
