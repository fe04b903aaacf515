#include "nokequal/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nokequal/cohomology.hpp"
#include "nokequal/error.hpp"
#include "nokequal/invariants.hpp"
#include "nokequal/oracle.hpp"
#include "nokequal/planner.hpp"
#include "nokequal/tensor.hpp"

namespace nokequal::cli {

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

IntRange parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            const int v = std::stoi(text);
            return {v, v};
        }
        return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
    } catch (const std::exception&) {
        throw InputError("malformed range \"" + text + "\", expected a..b");
    }
}

/// A JSON argument is a file path when such a file exists, inline JSON otherwise.
json load_json(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        return json::parse(in);
    }
    return json::parse(arg);
}

Configuration to_configuration(const json& j)
{
    if (!j.is_array())
        throw InputError("configuration must be a JSON array of numbers");
    Configuration x(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number())
            throw InputError("configuration must be a JSON array of numbers");
        x[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return x;
}

SimplicialComplex to_complex(const json& j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("facets"))
        throw InputError("complex must be {\"n\": int, \"facets\": [[...], ...]}");
    const int n = j.at("n").get<int>();
    std::vector<Mask> facets;
    for (const auto& f : j.at("facets")) {
        Mask m = 0;
        for (const auto& e : f) {
            const int v = e.get<int>();
            if (v < 1 || v > n)
                throw InputError("facet vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
            m |= element_bit(v);
        }
        facets.push_back(m);
    }
    return SimplicialComplex(n, std::move(facets));
}

json to_json(const Configuration& x)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        a.push_back(x[i]);
    return a;
}

std::string join(const std::vector<std::size_t>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void print_table(const std::vector<InvariantReport>& reports, std::ostream& out)
{
    out << std::left << std::setw(4) << "k" << std::setw(4) << "n" << std::setw(4) << "s" << std::setw(5) << "cat"
        << std::setw(6) << "hdim" << std::setw(4) << "tc" << std::setw(5) << "tcs" << std::setw(24) << "betti"
        << "certificates\n";
    for (const auto& r : reports) {
        std::string certs;
        for (const auto& c : r.certificates)
            certs += (certs.empty() ? "" : " ") + c.name + "=" + std::string(to_string(c.status));
        out << std::setw(4) << r.k << std::setw(4) << r.n << std::setw(4) << r.s << std::setw(5) << r.cat << std::setw(6)
            << r.hdim << std::setw(4) << r.tc << std::setw(5) << r.tcs << std::setw(24) << join(r.betti) << certs << '\n';
    }
}

int exit_code_for(ErrorCode code) { return code == ErrorCode::TooLarge ? TooLarge : BadInput; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mod-2 cohomology of no-k-equal configuration spaces", "nokequal"};
    app.require_subcommand(1);

    int k = 0;
    int n = 0;
    std::optional<int> d;
    int i = 0;
    int s = 2;
    int samples = 1024;
    std::string p_text;
    std::string q_text;

    auto* betti_cmd = app.add_subcommand("betti", "Ranks of the cohomology groups");
    betti_cmd->add_option("--k", k)->required();
    betti_cmd->add_option("--n", n)->required();
    betti_cmd->add_option("--d", d, "block count (all degrees when omitted)");

    auto* normalize_cmd = app.add_subcommand("normalize", "Rewrite an admissible preorder in the basic basis");
    normalize_cmd->add_option("--k", k)->required();
    normalize_cmd->add_option("--n", n)->required();
    normalize_cmd->add_option("preorder", p_text)->required();

    auto* cup_cmd = app.add_subcommand("cup", "Cup product of two classes");
    cup_cmd->add_option("--k", k)->required();
    cup_cmd->add_option("--n", n)->required();
    cup_cmd->add_option("a", p_text)->required();
    cup_cmd->add_option("b", q_text)->required();

    auto* witness_cmd = app.add_subcommand("witness", "Expanded zero-divisor witness product");
    witness_cmd->add_option("--k", k)->required();
    witness_cmd->add_option("--n", n)->required();
    witness_cmd->add_option("--i", i)->required();
    witness_cmd->add_option("--s", s)->capture_default_str();

    auto* zcl_cmd = app.add_subcommand("zcl", "Certified zero-divisor cup-length lower bound");
    zcl_cmd->add_option("--k", k)->required();
    zcl_cmd->add_option("--n", n)->required();
    zcl_cmd->add_option("--s", s)->capture_default_str();

    std::string k_range = "3..3";
    std::string n_range = "3..3";
    std::string s_range = "2..2";
    bool as_json = false;
    bool as_csv = false;
    auto* table_cmd = app.add_subcommand("table", "Closed forms against computed certificates over a grid");
    table_cmd->add_option("--k-range", k_range)->required();
    table_cmd->add_option("--n-range", n_range)->required();
    table_cmd->add_option("--s-range", s_range)->capture_default_str();
    auto* json_flag = table_cmd->add_flag("--json", as_json);
    table_cmd->add_flag("--csv", as_csv)->excludes(json_flag);

    std::string pair_arg;
    auto* plan_cmd = app.add_subcommand("plan", "Motion plan in Conf_3(R,3)");
    plan_cmd->add_option("--pair", pair_arg, "{\"x\": [..], \"y\": [..]} or [[..], [..]], inline or a file")->required();
    plan_cmd->add_option("--samples", samples)->capture_default_str();

    std::string config_arg;
    std::optional<int> check_k;
    std::string complex_arg;
    auto* check_cmd = app.add_subcommand("check", "Membership of a configuration");
    check_cmd->add_option("--config", config_arg)->required();
    auto* k_opt = check_cmd->add_option("--k", check_k);
    check_cmd->add_option("--complex", complex_arg, "{\"n\": .., \"facets\": [[..]]}, inline or a file")->excludes(k_opt);

    auto* oracle_cmd = app.add_subcommand("oracle", "Audit normalize against Gaussian elimination");
    oracle_cmd->add_option("--k", k)->required();
    oracle_cmd->add_option("--n", n)->required();
    oracle_cmd->add_option("--d", d)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        if (betti_cmd->parsed()) {
            if (d) {
                out << betti(k, n, *d) << '\n';
            } else {
                std::vector<std::size_t> all;
                for (int dd = 0; dd <= n / k; ++dd)
                    all.push_back(betti(k, n, dd));
                out << join(all) << '\n';
            }
        } else if (normalize_cmd->parsed()) {
            out << normalize(parse_preorder(p_text, n), k, n) << '\n';
        } else if (cup_cmd->parsed()) {
            const Ring ring(k, n);
            out << ring.cup(parse_class(p_text, k, n), parse_class(q_text, k, n)) << '\n';
        } else if (witness_cmd->parsed()) {
            const Ring ring(k, n);
            const auto w = witness_product(ring, i, s);
            out << "factors: " << witness_factor_count(i, s) << '\n';
            out << "nonzero: " << (w.is_zero() ? "false" : "true") << '\n';
            out << "terms: " << w.terms().size() << '\n';
            out << "class: " << w << '\n';
            if (s == 2 && i * k + 1 <= n) {
                const TensorTerm t{x_monomial(k, n, i, 1), x_monomial(k, n, i, 2)};
                out << "coefficient " << t[0] << "⊗" << t[1] << ": " << w.coefficient(t) << '\n';
            }
            if (s == 2 && i >= 2 && i * k == n) {
                const auto p1 = *p_witness(ring, i, 1).terms().begin();
                const auto p2 = *p_witness(ring, i, 2).terms().begin();
                out << "coefficient p1⊗p2 " << p1 << "⊗" << p2 << ": " << w.coefficient({p1, p2}) << '\n';
                out << "coefficient p2⊗p1 " << p2 << "⊗" << p1 << ": " << w.coefficient({p2, p1}) << '\n';
            }
        } else if (zcl_cmd->parsed()) {
            const auto cert = zcl_certificate(k, n, s);
            out << cert.value << '\n';
            if (!cert.witness.empty())
                out << "witness: " << cert.witness << '\n';
        } else if (table_cmd->parsed()) {
            const auto reports = verify_range(parse_range(k_range), parse_range(n_range), parse_range(s_range));
            if (as_json)
                out << to_json(reports) << '\n';
            else if (as_csv)
                out << to_csv(reports);
            else
                print_table(reports, out);
        } else if (plan_cmd->parsed()) {
            const auto pair = load_json(pair_arg);
            Configuration x;
            Configuration y;
            if (pair.is_object() && pair.contains("x") && pair.contains("y")) {
                x = to_configuration(pair.at("x"));
                y = to_configuration(pair.at("y"));
            } else if (pair.is_array() && pair.size() == 2) {
                x = to_configuration(pair[0]);
                y = to_configuration(pair[1]);
            } else {
                throw InputError("pair must be {\"x\": [..], \"y\": [..]} or [[..], [..]]");
            }
            const auto plan = plan_conf3_3(x, y);
            nlohmann::ordered_json j;
            j["domain"] = plan.domain;
            json breakpoints = json::array();
            for (const auto& b : plan.path.breakpoints)
                breakpoints.push_back(to_json(b));
            j["breakpoints"] = breakpoints;
            j["valid_exact"] = validate_path_exact(plan.path, 3);
            j["valid_sampled"] = validate_path(plan.path, 3, samples);
            out << j.dump(2) << '\n';
        } else if (check_cmd->parsed()) {
            const auto x = to_configuration(load_json(config_arg));
            bool inside = false;
            if (!complex_arg.empty())
                inside = in_conf_complex(x, to_complex(load_json(complex_arg)));
            else if (check_k)
                inside = in_conf_k(x, *check_k);
            else
                throw InputError("check needs --k or --complex");
            out << (inside ? "true" : "false") << '\n';
        } else if (oracle_cmd->parsed()) {
            const auto oracle = oracle_normal_form(k, n, *d);
            const Ring ring(k, n);
            std::size_t disagreements = 0;
            if (oracle.basis_matches_basic())
                for (const auto& p : oracle.admissibles())
                    if (!(ring.normalize(p) == oracle.image(p)))
                        ++disagreements;
            out << "admissible: " << oracle.admissible_count() << '\n';
            out << "relation rows: " << oracle.relation_rows() << '\n';
            out << "rank: " << oracle.rank() << '\n';
            out << "quotient: " << oracle.basis().size() << '\n';
            out << "betti: " << betti(k, n, *d) << '\n';
            out << "basis is basic: " << (oracle.basis_matches_basic() ? "true" : "false") << '\n';
            out << "normalize disagreements: "
                << (oracle.basis_matches_basic() ? std::to_string(disagreements) : std::string("n/a")) << '\n';
            if (!oracle.basis_matches_basic() || disagreements != 0)
                return BadInput;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return BadInput;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << '\n';
        return BadInput;
    }
    return Ok;
}

}  // namespace nokequal::cli
