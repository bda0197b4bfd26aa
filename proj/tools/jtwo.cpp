#include "jtwo/chart.hpp"
#include "jtwo/verify.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

std::string default_data_path()
{
    if (const char* env = std::getenv("JTWO_DATA"))
        return env;
#ifdef JTWO_DATA_DIR
    return std::string(JTWO_DATA_DIR) + "/tmf3.dat";
#else
    return "data/tmf3.dat";
#endif
}

void write_out(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + out_path);
    out << text;
}

struct Common {
    int max_degree = 600;
    std::string data = default_data_path();
    std::string format = "tsv";
    std::string out;
    bool strict = false;
};

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--max-degree", c.max_degree, "degree bound for the computation");
    app->add_option("--data", c.data, "path to the tmf data file");
    app->add_option("--format", c.format, "svg, tsv or md")->check(CLI::IsMember({"svg", "tsv", "md"}));
    app->add_option("--out", c.out, "output path (stdout when absent)");
    app->add_flag("--strict", c.strict, "treat warnings as failures");
}

std::string render_chart(const jtwo::ChartDoc& doc, const std::string& format)
{
    if (format == "svg")
        return jtwo::to_svg(doc);
    return jtwo::to_tsv(doc);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"homotopy of the height-2 connective image-of-J spectrum at p = 3"};
    app.require_subcommand(1);

    Common c;

    auto* compute = app.add_subcommand("compute", "compute a model and emit its chart rows");
    compute->require_subcommand(1);
    auto* c_tmf = compute->add_subcommand("tmf", "the tmf model");
    auto* c_psi = compute->add_subcommand("tmf-psi", "homotopy of the equalizer");
    auto* c_j2 = compute->add_subcommand("j2", "the assembled j2 model");
    auto* c_q = compute->add_subcommand("quotient", "a quotient model X/3^r or X/(3,v1^j)");
    std::string ideal = "3", model_name = "tmf";
    c_q->add_option("--ideal", ideal, "3, 9, 27 or 3,v1^j");
    c_q->add_option("--model", model_name, "tmf or j2")->check(CLI::IsMember({"tmf", "j2"}));
    for (auto* s : {c_tmf, c_psi, c_j2, c_q})
        add_common(s, c);

    auto* check = app.add_subcommand("check", "run one family of checks");
    auto* k_hur = check->add_subcommand("hurewicz", "Theorem A detection records");
    auto* k_prod = check->add_subcommand("products", "product verdicts");
    std::string products_input;
    k_prod->add_option("--input", products_input, "file of product words with expected verdicts");
    auto* k_per = check->add_subcommand("periodicity", "Delta^6-periodicity of the detectors");
    for (auto* s : {k_hur, k_prod, k_per})
        add_common(s, c);
    check->require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    auto* v_paper = verify->add_subcommand("paper", "the full acceptance run");
    add_common(v_paper, c);
    verify->require_subcommand(1);

    auto* emitc = app.add_subcommand("emit", "emit a chart document");
    auto* e_chart = emitc->add_subcommand("chart", "chart of a degree window");
    int win_lo = 0, win_hi = 40;
    std::string chart_model = "j2", chart_mode = "provenance";
    e_chart->add_option("--from", win_lo, "window start");
    e_chart->add_option("--to", win_hi, "window end");
    e_chart->add_option("--model", chart_model, "j2, tmf, tmf-mod3")
        ->check(CLI::IsMember({"j2", "tmf", "tmf-mod3"}));
    e_chart->add_option("--mode", chart_mode, "provenance or hurewicz")
        ->check(CLI::IsMember({"provenance", "hurewicz"}));
    add_common(e_chart, c);
    emitc->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        jtwo::TmfData data = jtwo::parse_tmf_data(c.data);
        jtwo::TmfTable table(data, c.max_degree + 8);

        if (c_tmf->parsed()) {
            write_out(render_chart(jtwo::chart_of_tmf(table, 0, c.max_degree), c.format), c.out);
            return 0;
        }
        if (c_psi->parsed()) {
            jtwo::TmfPsiResult psi = jtwo::compute_tmf_psi(table, c.max_degree);
            jtwo::PolicyOutcome pol = jtwo::apply_extension_policy(
                psi.group, psi.problems, {{27, 72, jtwo::Resolution::split, "dimension count"}});
            if (c.strict && !pol.warned_degrees.empty()) {
                std::cerr << "unmatched extension degrees under --strict\n";
                return 2;
            }
            jtwo::ChartDoc doc;
            doc.lo = 0;
            doc.hi = c.max_degree;
            for (const auto& [d, ss] : pol.group.degrees)
                for (const auto& s : ss)
                    if (d >= 0)
                        doc.rows.push_back(
                            {d, s.filtration, s.label, s.is_free ? "free" : std::to_string(jtwo::pow3ll(s.torsion_exp)),
                             s.prov == jtwo::Prov::boundary ? "red" : "blue"});
            write_out(render_chart(doc, c.format), c.out);
            return 0;
        }

        jtwo::SphereTable sphere = jtwo::sphere_from_data(data);

        if (c_j2->parsed()) {
            jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree);
            if (c.strict && !m.policy_warnings.empty()) {
                std::cerr << "extension policy warnings under --strict\n";
                return 2;
            }
            write_out(render_chart(jtwo::chart_of_j2(m, 0, c.max_degree, jtwo::ChartMode::provenance), c.format),
                      c.out);
            return 0;
        }
        if (c_q->parsed()) {
            jtwo::QuotientModel q;
            if (ideal == "3" || ideal == "9" || ideal == "27") {
                int r = ideal == "3" ? 1 : ideal == "9" ? 2 : 3;
                if (model_name == "tmf")
                    q = jtwo::mod3r(table.graded_group(c.max_degree), r, c.max_degree);
                else
                    q = jtwo::mod3r(jtwo::assemble_j2(table, sphere, c.max_degree).g, r, c.max_degree);
            } else if (ideal.rfind("3,v1^", 0) == 0) {
                int j = std::stoi(ideal.substr(5));
                if (model_name == "tmf") {
                    jtwo::Mod3Tmf m3(table, c.max_degree + 4);
                    q = jtwo::mod_v1j(m3, j, c.max_degree);
                } else {
                    jtwo::Mod3Tmf m3(table, c.max_degree + 8);
                    jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree + 8);
                    jtwo::Mod3J2 j3(m.g, m3, c.max_degree + 4);
                    /* the boundary description of v1 applies above the splice */
                    q = jtwo::mod_v1j(j3, j, c.max_degree, 27 + 4 * j);
                }
            } else {
                std::cerr << "unrecognized ideal " << ideal << "\n";
                return 1;
            }
            write_out(render_chart(jtwo::chart_of_quotient(q, 0, c.max_degree), c.format), c.out);
            return 0;
        }

        if (k_hur->parsed()) {
            jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree);
            auto records = jtwo::hurewicz_image(m, c.max_degree);
            write_out(jtwo::report_markdown(records), c.out);
            for (const auto& r : records)
                if (r.verdict == "missing")
                    return 2;
            return 0;
        }
        if (k_prod->parsed()) {
            jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree);
            std::ostringstream out;
            bool ok = true;
            if (!products_input.empty()) {
                std::ifstream in(products_input);
                if (!in) {
                    std::cerr << "cannot open " << products_input << "\n";
                    return 1;
                }
                std::string line;
                out << "| product | expected | verdict | witness |\n|---|---|---|---|\n";
                while (std::getline(in, line)) {
                    auto hash = line.find('#');
                    if (hash != std::string::npos)
                        line = line.substr(0, hash);
                    std::istringstream ls(line);
                    std::string word, expect;
                    if (!(ls >> word >> expect))
                        continue;
                    jtwo::ProductVerdict v = jtwo::check_product(word, m);
                    ok = ok && v.verdict == expect;
                    out << "| " << word << " | " << expect << " | " << v.verdict << " | " << v.label << " |\n";
                }
            } else {
                jtwo::SuiteReport rep = jtwo::theorem_b_suite(m, c.max_degree);
                ok = rep.failures == 0;
                out << jtwo::suite_markdown(rep, "product nonvanishing");
            }
            write_out(out.str(), c.out);
            return ok ? 0 : 2;
        }
        if (k_per->parsed()) {
            jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree);
            auto rows = jtwo::periodicity_check(m, std::max(0, (c.max_degree - 200) / 144));
            std::ostringstream out;
            bool ok = true;
            out << "| family | t | lhs | rhs | pass |\n|---|---|---|---|---|\n";
            for (const auto& r : rows) {
                ok = ok && r.pass;
                out << "| " << r.family << " | " << r.t << " | " << r.lhs << " | " << r.rhs << " | "
                    << (r.pass ? "yes" : "NO") << " |\n";
            }
            write_out(out.str(), c.out);
            return ok ? 0 : 2;
        }

        if (v_paper->parsed()) {
            jtwo::VerifyOptions opt;
            opt.max_degree = c.max_degree;
            opt.product_degree = std::max(c.max_degree, 900);
            opt.strict = c.strict;
            auto cs = jtwo::run_acceptance(c.data, opt);
            write_out(jtwo::render_criteria(cs), c.out);
            return jtwo::all_pass(cs) ? 0 : 2;
        }

        if (e_chart->parsed()) {
            if (chart_model == "tmf") {
                write_out(render_chart(jtwo::chart_of_tmf(table, win_lo, win_hi), c.format), c.out);
                return 0;
            }
            if (chart_model == "tmf-mod3") {
                jtwo::Mod3Tmf m3(table, win_hi + 8);
                write_out(render_chart(jtwo::chart_of_mod3_tmf(m3, win_lo, win_hi), c.format), c.out);
                return 0;
            }
            jtwo::J2Model m = jtwo::assemble_j2(table, sphere, c.max_degree);
            jtwo::ChartMode mode =
                chart_mode == "hurewicz" ? jtwo::ChartMode::hurewicz : jtwo::ChartMode::provenance;
            write_out(render_chart(jtwo::chart_of_j2(m, win_lo, win_hi, mode), c.format), c.out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
