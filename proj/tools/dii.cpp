// Command-line front end: one command per process, results written to
// stdout as JSON, TSV or text, with an optional content-addressed cache.

#include <openssl/sha.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dii/congr.hpp"
#include "dii/error.hpp"
#include "dii/forms1.hpp"
#include "dii/halfint.hpp"
#include "dii/lift.hpp"
#include "dii/msym.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace dii;
using exactnum::Integer;

namespace {

constexpr const char* kSchema = "dii.cli/1";

// exit statuses
int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::precondition: return 2;
    case ErrorKind::unsupported: return 3;
    case ErrorKind::resource: return 4;
    case ErrorKind::search_exhausted: return 5;
    case ErrorKind::insufficient_precision: return 6;
    case ErrorKind::match_ambiguous: return 7;
    case ErrorKind::regression: return 8;
    }
    return 1;
}

using Table = std::vector<std::vector<std::string>>;

struct Output {
    json data;
    Table table; // first row is the header
};

struct RunConfig {
    std::string command;
    int n = 2;
    int k = 10;
    int weight = 32;
    int lambda = 16;
    long prime = 211;
    long prec = 0;
    long bits = 256;
    long det_bound = 40;
    std::string l_range = "18..18";
    long D = 1;
    long D_bound = 1;
    int m_min = 0;
    int m_max = 0;
    long which = 0;
    long count = 10;
    std::string cache_dir;
    std::string format = "json";

    // parameters the command reads, in a fixed order
    json params() const {
        json p;
        if (command == "eigenforms") p = {{"weight", weight}, {"prec", prec}, {"count", count}};
        else if (command == "plus-space") p = {{"lambda", lambda}, {"count", count}};
        else if (command == "lift-coeffs") p = {{"n", n}, {"k", k}, {"det_bound", det_bound}, {"which", which}};
        else if (command == "lvalues") p = {{"weight", weight}, {"l_range", l_range}, {"D", D}};
        else if (command == "congruence")
            p = {{"n", n}, {"k", k}, {"prime", prime}, {"bits", bits}, {"D_bound", D_bound}, {"m_min", m_min},
                 {"m_max", m_max}, {"which", which}};
        else if (command == "example") p = {{"bits", bits}};
        return p;
    }
};

std::string sha256_hex(const std::string& s) {
    unsigned char h[SHA256_DIGEST_LENGTH];
    SHA256(reinterpret_cast<const unsigned char*>(s.data()), s.size(), h);
    std::string out;
    char buf[3];
    for (unsigned char c : h) {
        std::snprintf(buf, sizeof buf, "%02x", c);
        out += buf;
    }
    return out;
}

std::string render(const RunConfig& cfg, const Output& out) {
    std::ostringstream os;
    if (cfg.format == "json") {
        json doc;
        doc["schema"] = kSchema;
        doc["command"] = cfg.command;
        doc["config"] = cfg.params();
        doc["result"] = out.data;
        os << doc.dump(2) << '\n';
    } else if (cfg.format == "tsv") {
        os << "# " << kSchema << ' ' << cfg.command << ' ' << cfg.params().dump() << '\n';
        for (auto& row : out.table) {
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
            os << '\n';
        }
    } else {
        os << cfg.command << ' ' << cfg.params().dump() << '\n';
        std::vector<size_t> w;
        for (auto& row : out.table)
            for (size_t i = 0; i < row.size(); ++i) {
                if (w.size() <= i) w.push_back(0);
                w[i] = std::max(w[i], row[i].size());
            }
        for (auto& row : out.table) {
            for (size_t i = 0; i < row.size(); ++i) {
                os << row[i];
                if (i + 1 < row.size()) os << std::string(w[i] - row[i].size() + 2, ' ');
            }
            os << '\n';
        }
    }
    return os.str();
}

// Cached output: <dir>/<h[0:2]>/<h>.out, with the key text next to it.
class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }

    bool load(const std::string& key, std::string& out) const {
        if (!enabled()) return false;
        std::ifstream in(path(key, ".out"), std::ios::binary);
        if (!in) return false;
        std::ostringstream ss;
        ss << in.rdbuf();
        out = ss.str();
        return true;
    }

    void store(const std::string& key, const std::string& text) const {
        if (!enabled()) return;
        fs::create_directories(path(key, "").parent_path());
        write_atomic(path(key, ".key"), key + "\n");
        write_atomic(path(key, ".out"), text);
    }

private:
    fs::path path(const std::string& key, const std::string& ext) const {
        std::string h = sha256_hex(key);
        return fs::path(dir_) / h.substr(0, 2) / (h + ext);
    }

    static void write_atomic(const fs::path& p, const std::string& text) {
        fs::path tmp = p;
        tmp += ".tmp." + std::to_string(::getpid());
        {
            std::ofstream o(tmp, std::ios::binary);
            if (!o) fail(ErrorKind::resource, "cannot write cache file " + tmp.string());
            o << text;
        }
        fs::rename(tmp, p);
    }

    std::string dir_;
};

std::string coeff_string(const exactnum::NFElem& x) { return exactnum::serialize(x); }

std::string minpoly_string(const exactnum::FieldPtr& K) {
    std::string s;
    const auto& c = K->minpoly().coeffs();
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + exactnum::to_string(c[i]);
    return "[" + s + "]";
}

Output cmd_eigenforms(const RunConfig& cfg) {
    require(cfg.weight >= 12 && cfg.weight % 2 == 0, "eigenforms: weight must be even and at least 12");
    require(cfg.count >= 1, "eigenforms: count must be positive");
    auto fs = forms1::eigenforms(cfg.weight, static_cast<size_t>(cfg.prec));
    Output out;
    out.data["weight"] = cfg.weight;
    out.data["dim_cusp"] = forms1::dim_cusp(cfg.weight);
    out.data["forms"] = json::array();
    out.table.push_back({"form", "field_degree", "minpoly", "n", "a(n)"});
    for (size_t i = 0; i < fs.size(); ++i) {
        json f;
        f["index"] = i;
        f["field_degree"] = fs[i].hecke_field->degree();
        f["minpoly"] = minpoly_string(fs[i].hecke_field);
        json cs = json::array();
        for (size_t n = 1; n <= static_cast<size_t>(cfg.count) && n < fs[i].precision(); ++n) {
            cs.push_back(coeff_string(fs[i].coeff(n)));
            out.table.push_back({std::to_string(i), std::to_string(fs[i].hecke_field->degree()),
                                 minpoly_string(fs[i].hecke_field), std::to_string(n), coeff_string(fs[i].coeff(n))});
        }
        f["coefficients"] = cs;
        out.data["forms"].push_back(f);
    }
    return out;
}

Output cmd_plus_space(const RunConfig& cfg) {
    require(cfg.lambda >= 6, "plus-space: lambda must be at least 6");
    auto S = halfint::plus_space(cfg.lambda);
    Output out;
    out.data["lambda"] = cfg.lambda;
    out.data["dim_plus"] = S.modular.size();
    out.data["dim_plus_cusp"] = S.cusp.size();
    out.data["eigenforms"] = json::array();
    out.table.push_back({"form", "e", "c(e)"});
    if (S.cusp.empty()) return out;
    auto gs = halfint::shimura_match(cfg.lambda, static_cast<size_t>(cfg.count) + 1);
    for (size_t i = 0; i < gs.size(); ++i) {
        json g;
        g["index"] = i;
        g["normalizing_index"] = gs[i].normalizing_index;
        g["scaling"] = gs[i].scaling;
        json ev;
        for (long p : {3L, 5L, 7L}) ev[std::to_string(p)] = coeff_string(gs[i].matched.coeff(static_cast<size_t>(p)));
        g["hecke_p2_eigenvalues"] = ev;
        json cs = json::array();
        for (size_t e = 0; e <= static_cast<size_t>(cfg.count) && e < gs[i].form.precision(); ++e) {
            cs.push_back(coeff_string(gs[i].form.coeff(e)));
            out.table.push_back({std::to_string(i), std::to_string(e), coeff_string(gs[i].form.coeff(e))});
        }
        g["coefficients"] = cs;
        out.data["eigenforms"].push_back(g);
    }
    return out;
}

Output cmd_lift_coeffs(const RunConfig& cfg) {
    require(cfg.det_bound >= 3 && cfg.det_bound <= 2000, "lift-coeffs: det bound must lie in [3, 2000]");
    require(cfg.n == 2 || cfg.n == 4, "lift-coeffs: n must be 2 or 4");
    auto spec = lift::make_lift(cfg.n, cfg.k, static_cast<size_t>(cfg.which));
    Output out;
    out.data["n"] = cfg.n;
    out.data["k"] = cfg.k;
    out.data["entries"] = json::array();
    if (cfg.n == 2) {
        auto lt = lift::lift_table(*spec, cfg.det_bound);
        auto mt = lift::maass_table(*spec, cfg.det_bound);
        out.table.push_back({"2T", "det2T", "content", "lift", "maass"});
        for (auto& [T, v] : lt.c) {
            auto m = mt.at(T);
            if (m != v) fail(ErrorKind::regression, "lift-coeffs: lift and Maass coefficients differ at " + T.serialize());
            out.table.push_back({T.serialize(), exactnum::to_string(T.det2()), exactnum::to_string(T.content()),
                                 coeff_string(v), coeff_string(m)});
            out.data["entries"].push_back({{"T", T.serialize()}, {"lift", coeff_string(v)}, {"maass", coeff_string(m)}});
        }
        out.data["agrees_with_maass"] = true;
    } else {
        out.table.push_back({"2T", "det2T", "lift"});
        for (auto& T : qforms::enumerate_pd(4, cfg.det_bound)) {
            std::string v;
            try {
                v = coeff_string(lift::lift_coefficient(*spec, T));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::unsupported) throw;
                v = "unsupported";
            }
            out.table.push_back({T.serialize(), exactnum::to_string(T.det2()), v});
            out.data["entries"].push_back({{"T", T.serialize()}, {"lift", v}});
        }
    }
    return out;
}

std::pair<int, int> parse_range(const std::string& s) {
    auto pos = s.find("..");
    try {
        if (pos == std::string::npos) return {std::stoi(s), std::stoi(s)};
        return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
    } catch (const std::exception&) {
        fail(ErrorKind::precondition, "range must look like 18 or 14..20");
    }
}

Output cmd_lvalues(const RunConfig& cfg) {
    require(cfg.weight >= 12 && cfg.weight % 2 == 0, "lvalues: weight must be even and at least 12");
    auto [lo, hi] = parse_range(cfg.l_range);
    require(lo >= 1 && hi <= cfg.weight - 1 && lo <= hi, "lvalues: l range must lie in [1, weight-1]");
    auto S = msym::build_space(cfg.weight);
    auto fs = forms1::eigenforms(cfg.weight);
    Output out;
    out.data["weight"] = cfg.weight;
    out.data["values"] = json::array();
    out.table.push_back({"form", "l", "D", "sign", "value", "norm", "norm_factorization"});
    for (size_t i = 0; i < fs.size(); ++i) {
        auto pd = msym::periods(S, fs[i]);
        for (int l = lo; l <= hi; ++l) {
            auto cv = msym::critical_Lvalue(S, pd, l, cfg.D);
            std::string nf = cv.is_zero() ? "0" : lift::factor_label_norm(cv.norm());
            std::string nm = cv.is_zero() ? "0" : exactnum::to_string(cv.norm());
            out.table.push_back({std::to_string(i), std::to_string(l), std::to_string(cfg.D), std::to_string(cv.sign),
                                 coeff_string(cv.raw), nm, nf});
            out.data["values"].push_back({{"form", i}, {"l", l}, {"D", cfg.D}, {"sign", cv.sign},
                                          {"value", coeff_string(cv.raw)}, {"norm", nm}, {"norm_factorization", nf}});
        }
    }
    return out;
}

void append_report_rows(Table& t, const json& r) {
    std::string prime = r["context"]["prime"];
    for (auto& c : r["conditions"]) {
        const json& cond = c.contains("witness") ? c["witness"] : c;
        std::string name = c["name"];
        if (!cond.contains("factors")) continue;
        for (auto& f : cond["factors"])
            t.push_back({prime, name, f["label"], std::to_string(f["exponent"].get<int>()),
                         std::to_string(f["ord_P"].get<int>()),
                         f["norm_factorization"].is_null() ? "" : f["norm_factorization"].get<std::string>()});
    }
    t.push_back({prime, "verdict", r["verdict"], "", "", ""});
}

Output cmd_congruence(const RunConfig& cfg) {
    require(cfg.prime >= 5 && exactnum::is_probable_prime(Integer(cfg.prime)), "congruence: prime must be >= 5");
    auto spec = lift::make_lift(cfg.n, cfg.k, static_cast<size_t>(cfg.which));
    lift::LValueData data(cfg.n, cfg.k, spec->f(), cfg.bits);
    congr::Theorem47Options opt;
    opt.m_min = cfg.m_min;
    opt.m_max = cfg.m_max;
    opt.D_bound = cfg.D_bound;
    Output out;
    out.data["reports"] = json::array();
    out.table.push_back({"prime", "condition", "factor", "exponent", "ord_P", "norm"});
    for (auto& P : exactnum::prime_split(spec->field(), Integer(cfg.prime))) {
        auto j = json::parse(congr::to_json(congr::theorem47_check(*spec, data, P, opt)));
        append_report_rows(out.table, j);
        out.data["reports"].push_back(j);
    }
    return out;
}

Output cmd_example(const RunConfig& cfg) {
    auto ex = congr::example_section4(cfg.bits);
    Output out;
    out.data = json::parse(congr::to_json(ex));
    out.table.push_back({"item", "computed", "expected_away_from_6", "matches"});
    out.table.push_back({"[Q(f):Q]", std::to_string(ex.field_degree), "2", ex.field_degree == 2 ? "yes" : "no"});
    out.table.push_back({"dim lift space", std::to_string(ex.lift_space_dimension), "2",
                         ex.lift_space_dimension == 2 ? "yes" : "no"});
    out.table.push_back({"211 splits", ex.splits_211 ? "yes" : "no", "yes", ex.splits_211 ? "yes" : "no"});
    for (auto& l : ex.factorizations) out.table.push_back({l.label, l.computed, l.expected, l.matches ? "yes" : "no"});
    for (auto& r : ex.reports) out.table.push_back({"verdict " + r.prime, r.verdict, "", ""});
    out.table.push_back({"conclusion", ex.conclusion, "", ""});
    return out;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("DII_CACHE_DIR")) cfg.cache_dir = env;

    CLI::App app{"Ikeda lifts, L-values and congruence primes"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $DII_CACHE_DIR, empty disables)");
    app.add_option("--out", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv", "text"}));

    auto* eig = app.add_subcommand("eigenforms", "Normalized eigenforms of level one");
    eig->add_option("--weight", cfg.weight)->required();
    eig->add_option("--prec", cfg.prec, "q-expansion precision (0: default)");
    eig->add_option("--count", cfg.count, "Coefficients listed");

    auto* plus = app.add_subcommand("plus-space", "Kohnen plus space and Shimura matching");
    plus->add_option("--lambda", cfg.lambda, "Weight lambda + 1/2")->required();
    plus->add_option("--count", cfg.count, "Coefficients listed");

    auto* lc = app.add_subcommand("lift-coeffs", "Fourier coefficients of the lift");
    lc->add_option("--n", cfg.n)->required();
    lc->add_option("--k", cfg.k)->required();
    lc->add_option("--det-bound", cfg.det_bound);
    lc->add_option("--which", cfg.which, "Plus eigenform index");

    auto* lv = app.add_subcommand("lvalues", "Critical L-values relative to the symbol lattice");
    lv->add_option("--weight", cfg.weight)->required();
    lv->add_option("--l-range", cfg.l_range, "Critical points, e.g. 14..20");
    lv->add_option("--D", cfg.D, "Fundamental discriminant of the twist");

    auto* cg = app.add_subcommand("congruence", "Three-condition congruence test at the primes above p");
    cg->add_option("--n", cfg.n)->required();
    cg->add_option("--k", cfg.k)->required();
    cg->add_option("--prime", cfg.prime)->required();
    cg->add_option("--bits", cfg.bits, "Working precision for adjoint values");
    cg->add_option("--D-bound", cfg.D_bound, "Largest |D| tried");
    cg->add_option("--m-min", cfg.m_min);
    cg->add_option("--m-max", cfg.m_max);
    cg->add_option("--which", cfg.which, "Plus eigenform index");

    auto* exm = app.add_subcommand("example", "Degree 4, weight 18 worked example");
    exm->add_option("--bits", cfg.bits, "Working precision for adjoint values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code(ErrorKind::precondition);
    }
    cfg.command = app.get_subcommands().at(0)->get_name();

    try {
        Cache cache(cfg.cache_dir);
        std::string key = std::string(kSchema) + "|" + cfg.command + "|" + cfg.format + "|" + cfg.params().dump();
        std::string text;
        if (!cache.load(key, text)) {
            Output out;
            if (cfg.command == "eigenforms") out = cmd_eigenforms(cfg);
            else if (cfg.command == "plus-space") out = cmd_plus_space(cfg);
            else if (cfg.command == "lift-coeffs") out = cmd_lift_coeffs(cfg);
            else if (cfg.command == "lvalues") out = cmd_lvalues(cfg);
            else if (cfg.command == "congruence") out = cmd_congruence(cfg);
            else out = cmd_example(cfg);
            text = render(cfg, out);
            cache.store(key, text);
        }
        std::cout << text;
        return 0;
    } catch (const Error& e) {
        std::cerr << "dii: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "dii: " << e.what() << '\n';
        return 1;
    }
}
