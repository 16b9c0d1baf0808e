#include "CLI11.hpp"
#include "json.hpp"

#include "hecke/report.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace hecke;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json invariants_json(const FareyAnalysis& a) {
    json j;
    j["q"] = a.symbol.q;
    j["d"] = a.invariants.d;
    j["v2"] = a.invariants.v2;
    j["vq"] = a.invariants.vq;
    j["v_inf"] = a.invariants.v_inf;
    j["r"] = a.invariants.r;
    j["genus"] = a.invariants.genus;
    j["cusp_widths"] = a.cusps.widths;
    j["geometric_width"] = a.cusps.geometric_width;
    return j;
}

int run_verify(const std::string& name, std::vector<std::string> only, const std::string& data,
               bool as_json) {
    if (name != "all") only.push_back(name);
    VerificationReport rep = run_all(data_directory(data), only);
    std::cout << (as_json ? rep.to_json() : rep.to_text());
    return rep.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic and verification for Hecke groups"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string data_dir;
    app.add_option("--data", data_dir, "catalog/golden data directory (default: built-in)");

    // verify
    auto* verify = app.add_subcommand("verify", "run named checks or the whole suite");
    std::string verify_name = "all";
    std::vector<std::string> verify_only;
    bool verify_json = false, verify_text = false;
    verify->add_option("name", verify_name, "check name or 'all'");
    verify->add_option("--only", verify_only, "restrict to these checks")->delimiter(',');
    verify->add_flag("--json", verify_json, "JSON report");
    verify->add_flag("--text", verify_text, "plain-text report (default)");

    // explain
    auto* explain_cmd = app.add_subcommand("explain", "show a check's anchor and witnesses");
    std::string explain_name;
    explain_cmd->add_option("name", explain_name, "check name")->required();

    // hfs
    auto* hfs = app.add_subcommand("hfs", "Hecke-Farey symbol operations");
    hfs->require_subcommand(1);
    std::string hfs_file;
    bool hfs_json = false;
    auto* hfs_validate = hfs->add_subcommand("validate", "parse and validate a symbol file");
    hfs_validate->add_option("file", hfs_file)->required();
    auto* hfs_invariants = hfs->add_subcommand("invariants", "index, elliptic counts, cusps, genus");
    hfs_invariants->add_option("file", hfs_file)->required();
    hfs_invariants->add_flag("--json", hfs_json);
    auto* hfs_generators = hfs->add_subcommand("generators", "independent side-pairing generators");
    hfs_generators->add_option("file", hfs_file)->required();

    // fp
    auto* fp = app.add_subcommand("fp", "finitely presented group machinery");
    fp->require_subcommand(1);
    auto* fp_index = fp->add_subcommand("index", "coset enumeration index of a subgroup");
    std::string words_file;
    int fp_q = 5;
    fp_index->add_option("--subgroup-words", words_file, "file with one word per line (S/T/t or x/X/y/Y)")
        ->required();
    fp_index->add_option("--q", fp_q, "Hecke parameter q (default 5)");
    auto* fp_low = fp->add_subcommand("low-index", "subgroups up to conjugacy, up to an index bound");
    int fp_max = 5;
    bool fp_json = false;
    fp_low->add_option("--max", fp_max, "maximal index")->required();
    fp_low->add_option("--q", fp_q, "Hecke parameter q (default 5)");
    fp_low->add_flag("--json", fp_json);

    // quotient
    auto* quotient = app.add_subcommand("quotient", "finite congruence quotients");
    quotient->require_subcommand(1);
    auto* q_order = quotient->add_subcommand("order", "order of the image of G_q modulo an element");
    std::string modulus;
    int quot_q = 5;
    q_order->add_option("--modulus", modulus, "ring element, e.g. 5 or 2+1L")->required();
    q_order->add_option("--q", quot_q, "Hecke parameter q (default 5)");

    // decompose
    auto* dec = app.add_subcommand("decompose", "write a matrix as a word in S and T");
    std::string matrix_literal;
    int dec_q = 5;
    dec->add_option("--matrix", matrix_literal, "matrix literal [[a,b],[c,d]]")->required();
    dec->add_option("--q", dec_q, "Hecke parameter q (default 5)");

    // prop52
    auto* prop = app.add_subcommand("prop52", "the non-congruence verdict pipeline");
    bool prop_json = false;
    prop->add_flag("--json", prop_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return run_verify(verify_name, verify_only, data_dir, verify_json && !verify_text);
        if (*explain_cmd) {
            std::cout << explain(explain_name, data_directory(data_dir));
            return 0;
        }
        if (*hfs_validate) {
            HeckeFareySymbol f = parse_hfs(slurp(hfs_file));
            std::cout << "valid symbol: q=" << f.q << ", " << f.vertices.size() << " vertices, "
                      << f.edges() << " edges\n";
            return 0;
        }
        if (*hfs_invariants) {
            FareyAnalysis a = analyze(parse_hfs(slurp(hfs_file)));
            if (hfs_json) {
                std::cout << invariants_json(a).dump(2) << "\n";
            } else {
                std::cout << "d=" << a.invariants.d << " v2=" << a.invariants.v2 << " vq=" << a.invariants.vq
                          << " v_inf=" << a.invariants.v_inf << " r=" << a.invariants.r
                          << " g=" << a.invariants.genus << "\n";
                std::cout << "cusp widths:";
                for (long long w : a.cusps.widths) std::cout << " " << w;
                std::cout << " (geometric width " << a.cusps.geometric_width << ")\n";
            }
            return 0;
        }
        if (*hfs_generators) {
            FareyAnalysis a = analyze(parse_hfs(slurp(hfs_file)));
            for (const SidePairing& sp : a.generators) {
                const char* kind = sp.kind == PairingKind::Even ? "even"
                                   : sp.kind == PairingKind::Odd ? "odd"
                                                                 : "free";
                std::cout << kind << " edge " << sp.edge_from;
                if (sp.edge_from != sp.edge_to) std::cout << "->" << sp.edge_to;
                std::cout << ": " << sp.generator.to_string() << "  word "
                          << decompose(sp.generator).word->to_string() << "\n";
            }
            return 0;
        }
        if (*fp_index) {
            std::vector<XYWord> words;
            std::istringstream in(slurp(words_file));
            std::string line;
            while (std::getline(in, line)) {
                std::string t;
                for (char c : line)
                    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
                if (t.empty() || t[0] == '#') continue;
                if (t.find_first_of("xXyY") != std::string::npos)
                    words.push_back(parse_xy(t));
                else
                    words.push_back(translate_to_xy(Word::parse(t)));
            }
            std::cout << todd_coxeter(fp_q, words).index() << "\n";
            return 0;
        }
        if (*fp_low) {
            auto subs = low_index_subgroups(fp_q, fp_max);
            if (fp_json) {
                json j = json::array();
                for (const auto& s : subs) {
                    json e;
                    e["index"] = s.table.index();
                    e["normal"] = s.normal;
                    json rows = json::array();
                    for (const auto& r : s.table.row) rows.push_back({r[0], r[1], r[2], r[3]});
                    e["table"] = rows;
                    j.push_back(e);
                }
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& s : subs)
                    std::cout << "index " << s.table.index() << (s.normal ? " (normal)" : "") << "\n";
            }
            return 0;
        }
        if (*q_order) {
            const MinPoly& p = MinPoly::get(quot_q);
            FiniteRing R(RingElement::parse(p, modulus));
            FiniteMatrixGroup g = image_group({GroupElement::gen_S(quot_q), GroupElement::gen_T(quot_q)}, R);
            std::cout << g.order() << "\n";
            return 0;
        }
        if (*dec) {
            const MinPoly& p = MinPoly::get(dec_q);
            GroupElement g = GroupElement::parse(p, matrix_literal);
            DecomposeResult r = decompose(g);
            if (!r.ok()) {
                std::cerr << "not in the group: " << r.diagnostic << "\n";
                return 1;
            }
            std::cout << (r.word->empty() ? "(identity)" : r.word->to_string()) << "\n";
            return 0;
        }
        if (*prop) {
            Prop52Report rep = prop52_pipeline();
            if (prop_json) {
                json j;
                j["checks"] = json::array();
                for (const auto& leg : rep.legs) {
                    json e;
                    e["check"] = leg.check;
                    e["status"] = leg.status;
                    e["details"] = json{{"summary", leg.details}};
                    j["checks"].push_back(e);
                }
                j["verdict"] = rep.verdict;
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& leg : rep.legs)
                    std::cout << "[" << leg.status << "] " << leg.check << ": " << leg.details << "\n";
                std::cout << "verdict: " << rep.verdict << "\n";
            }
            return rep.ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
