#include "fourman/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fourman/error.hpp"
#include "fourman/json_io.hpp"

namespace fourman {

namespace {

LatticeVector parse_vec(const std::string& s) {
    LatticeVector v;
    if (s.empty()) return v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            size_t pos = 0;
            long long x = std::stoll(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            v.push_back(x);
        } catch (const std::exception&) {
            throw input_error("bad integer '" + item + "' in vector '" + s + "'");
        }
    }
    return v;
}

// key=value pairs separated by commas; vectors use colons: c1=1:0:3,p1=-6
std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> kv;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error("expected key=value in '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

SpinCStructure parse_spinc(const std::string& s) {
    auto kv = parse_kv(s);
    auto it = kv.find("c1");
    if (it == kv.end()) throw input_error("--spinc needs c1=...");
    SpinCStructure out;
    out.c1 = parse_vec(it->second);
    return out;
}

SpinUStructure parse_spinu(const std::string& s) {
    auto kv = parse_kv(s);
    SpinUStructure out;
    auto c1 = kv.find("c1");
    auto p1 = kv.find("p1");
    if (c1 == kv.end() || p1 == kv.end()) throw input_error("--spinu needs c1=... and p1=...");
    out.c1 = parse_vec(c1->second);
    try {
        out.p1 = std::stoll(p1->second);
    } catch (const std::exception&) {
        throw input_error("bad p1 value '" + p1->second + "'");
    }
    auto w2 = kv.find("w2");
    out.w = (w2 == kv.end()) ? LatticeVector(out.c1.size(), 0) : parse_vec(w2->second);
    return out;
}

std::optional<long long> effective_bound(const std::optional<long long>& flag) {
    if (flag) return flag;
    if (const char* env = std::getenv("FOURMAN_SEARCH_BOUND")) {
        try {
            return std::stoll(env);
        } catch (const std::exception&) {
            throw input_error("bad FOURMAN_SEARCH_BOUND value");
        }
    }
    return std::nullopt;
}

const IntegerLattice& need_gram(const ManifoldRecord& rec) {
    if (!rec.X.gram) throw input_error("record has no gram matrix");
    return *rec.X.gram;
}

// Records store the cup table one-indexed; ring models are zero-indexed.
std::vector<std::pair<std::pair<int, int>, LatticeVector>> cup_rows(const ManifoldRecord& rec) {
    std::vector<std::pair<std::pair<int, int>, LatticeVector>> rows;
    rows.reserve(rec.oneCupOne.size());
    for (const auto& [ij, row] : rec.oneCupOne)
        rows.push_back({{ij.first - 1, ij.second - 1}, row});
    return rows;
}

std::vector<SWDatum> sw_data(const ManifoldRecord& rec, std::optional<long long> defaultSw) {
    std::vector<SWDatum> data = rec.basicClasses;
    for (auto& d : data)
        if (!d.swValue && defaultSw) d.swValue = defaultSw;
    return data;
}

struct Emitter {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::string outFile;

    int finish(int code) const {
        Json rep;
        rep["command"] = command;
        rep["digest"] = digest_string(inputs);
        rep["results"] = results;
        rep["status"] = code == 0 ? "ok" : (code == 2 ? "unknown" : "invalid");
        const std::string text = rep.dump(2) + "\n";
        if (outFile.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(outFile);
            if (!out) throw input_error("cannot write " + outFile);
            out << text;
        }
        return code;
    }
};

void put_record_summary(Emitter& em, const ManifoldRecord& rec) {
    const auto cn = characteristic_numbers(rec.X);
    em.results["record"] = record_to_json(rec);
    em.results["chi"] = cn.chi;
    em.results["sigma"] = cn.sigma;
    em.results["c"] = cn.c;
    em.results["b2plus"] = rec.X.b2plus;
    em.results["b2minus"] = rec.X.b2minus;
}

Json verdict_to_json(const AbundanceVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["lemma"] = to_string(v.lemma);
    if (v.searchBound) j["search_bound"] = *v.searchBound;
    if (v.certificate) {
        Json c;
        c["e"] = vector_to_json(v.certificate->e);
        c["f"] = vector_to_json(v.certificate->f);
        j["certificate"] = std::move(c);
    }
    return j;
}

struct CommonOpts {
    std::string input;
    std::string output;
    std::string klass;
    std::optional<long long> bound;
    int threads = 1;
};

int run_abundance(const CommonOpts& o) {
    Emitter em;
    em.command = "fourman abundance";
    em.outFile = o.output;
    Json recJson = load_json(o.input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"class", o.klass}};
    auto bound = effective_bound(o.bound);
    if (bound) em.inputs["bound"] = *bound;
    try {
        ManifoldRecord rec = record_from_json(recJson);
        // Blow-ups of abundant records are decided by closure; no generator needed
        // (their class set {K±e} is not a multiple family).
        LatticeVector K;
        if (!o.klass.empty())
            K = parse_vec(o.klass);
        else if (rec.blowupOfAbundant)
            K.assign(rec.X.gram ? rec.X.gram->rank : 0, 0);
        else
            K = basic_class_generator(rec);
        AbundanceVerdict v = abundance_decide(rec, K, bound, o.threads);
        em.results["kappa"] = vector_to_json(K);
        em.results["verdict"] = verdict_to_json(v);
        bool proved = v.status == AbundanceStatus::ProvenByLemma ||
                      v.status == AbundanceStatus::CertifiedBySearch;
        return em.finish(proved ? 0 : 2);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_lattice_search(const CommonOpts& o) {
    Emitter em;
    em.command = "fourman lattice-search";
    em.outFile = o.output;
    Json recJson = load_json(o.input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"class", o.klass}};
    auto bound = effective_bound(o.bound);
    if (!bound) throw input_error("lattice-search needs --bound or FOURMAN_SEARCH_BOUND");
    em.inputs["bound"] = *bound;
    try {
        ManifoldRecord rec = record_from_json(recJson);
        const IntegerLattice& L = need_gram(rec);
        LatticeVector K = o.klass.empty() ? basic_class_generator(rec) : parse_vec(o.klass);
        auto cert = search_hyperbolic_pair(L, K, *bound, o.threads);
        em.results["kappa"] = vector_to_json(K);
        em.results["bound"] = *bound;
        em.results["found"] = cert.has_value();
        if (cert) {
            Json c;
            c["e"] = vector_to_json(cert->e);
            c["f"] = vector_to_json(cert->f);
            em.results["certificate"] = std::move(c);
            return em.finish(0);
        }
        return em.finish(2);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_dims(const std::string& input, const std::string& output, const std::string& spinc) {
    Emitter em;
    em.command = "fourman dims";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"spinc", spinc}};
    try {
        ManifoldRecord rec = record_from_json(recJson);
        SpinCStructure s = parse_spinc(spinc);
        const auto cn = characteristic_numbers(rec.X);
        em.results["d_s"] = sw_dimension(s, rec.X);
        em.results["c1_square"] = to_ll(inner_product(need_gram(rec), s.c1, s.c1));
        em.results["chi"] = cn.chi;
        em.results["sigma"] = cn.sigma;
        em.results["c"] = cn.c;
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_indices(const std::string& input, const std::string& output, const std::string& spinu,
                const std::string& spinc, long long level) {
    Emitter em;
    em.command = "fourman indices";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command},
                 {"record", recJson},
                 {"spinu", spinu},
                 {"spinc", spinc},
                 {"level", level}};
    try {
        ManifoldRecord rec = record_from_json(recJson);
        SpinUStructure t = parse_spinu(spinu);
        if (level != 0) t = level_shift(t, level);
        auto violations = validate_spinu(t, rec.X);
        if (!violations.empty()) {
            em.results["violations"] = violations;
            em.results["error_code"] = "validation";
            return em.finish(1);
        }
        ASDIndices a = asd_indices(t, rec.X);
        em.results["d_a"] = a.dA;
        em.results["n_a"] = a.nA;
        em.results["dim"] = a.dim;
        if (!rec.X.sphericalClassPairings.empty())
            em.results["flatness_excluded"] = morgan_mrowka_flatness_excluded(rec.X, t.w);
        if (!spinc.empty()) {
            SpinCStructure s = parse_spinc(spinc);
            ReductionIndices r = reduction_indices(t, s, rec.X);
            em.results["ns_prime"] = r.nsPrime;
            em.results["ns_double_prime"] = r.nsDoublePrime;
            em.results["ns"] = r.ns;
            em.results["c1L"] = vector_to_json(r.c1L);
            em.results["d_s"] = sw_dimension(s, rec.X);
        }
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_chern_normal(const std::string& input, const std::string& output,
                     const std::string& spinu, const std::string& spinc,
                     std::optional<int> capOpt, const std::string& rxi, const std::string& mode) {
    Emitter em;
    em.command = "fourman chern-normal";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"spinu", spinu},
                 {"spinc", spinc},        {"rxi", rxi},        {"mode", mode}};
    try {
        if (mode != "direct" && mode != "pipeline" && mode != "both")
            throw input_error("--mode must be direct, pipeline or both");
        ManifoldRecord rec = record_from_json(recJson);
        SpinUStructure t = parse_spinu(spinu);
        SpinCStructure s = parse_spinc(spinc);
        Rational rXi = rat_parse(rxi);
        // The classes live on the SW moduli space, so the cap defaults to its
        // dimension (clamped to keep the model cap positive).
        const int cap =
            capOpt ? *capOpt
                   : static_cast<int>(std::max<long long>(sw_dimension(s, rec.X), 1));
        em.inputs["cap"] = cap;
        CohomologyModel model =
            make_model(rec.X.b1, need_gram(rec).gram, cup_rows(rec), cap);
        auto [nsp, nsd] = ns_indices(model, s.c1, t.c1);
        em.results["ns_prime"] = nsp;
        em.results["ns_double_prime"] = nsd;
        std::optional<BigradedClass> pipeline, direct;
        if (mode != "direct") pipeline = ch_normal_pipeline(model, s.c1, t.c1, rXi);
        if (mode != "pipeline") direct = ch_normal_direct(model, s.c1, t.c1, rXi);
        if (pipeline) em.results["pipeline"] = class_to_json(*pipeline);
        if (direct) em.results["direct"] = class_to_json(*direct);
        if (pipeline && direct) {
            em.results["equal"] = (*pipeline == *direct);
            em.results["gamma_free_equal"] =
                (gamma_free_part(*pipeline) == gamma_free_part(*direct));
        }
        const BigradedClass& ch = direct ? *direct : *pipeline;
        BigradedClass rank = complex_degree_part(ch, 0);
        Rational r0;
        if (!rank.terms.empty()) r0 = rank.terms.begin()->second;
        em.results["rank"] = rat_str(r0);
        em.results["chern"] = class_to_json(chern_from_character(model, ch, r0));
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_series_sw(const std::string& input, const std::string& output, const std::string& wStr,
                  std::optional<int> degree, std::optional<long long> defaultSw) {
    Emitter em;
    em.command = "fourman series-sw";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"w", wStr}};
    try {
        ManifoldRecord rec = record_from_json(recJson);
        const IntegerLattice& L = need_gram(rec);
        const auto cn = characteristic_numbers(rec.X);
        int cap = degree ? *degree : static_cast<int>(std::max<long long>(cn.c, 1));
        em.inputs["degree"] = cap;
        LatticeVector w = wStr.empty() ? LatticeVector(L.rank, 0) : parse_vec(wStr);
        SeriesContext ctx =
            make_series_context(L.gram, w, sw_data(rec, defaultSw), cap, cn.c);
        em.results["c"] = cn.c;
        em.results["series"] = series_to_json(sw_series(ctx));
        em.results["witten_rhs"] = series_to_json(witten_rhs(ctx));
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_witten_check(const std::string& input, const std::string& output, const std::string& wStr,
                     std::optional<int> degree, const std::string& donaldsonFile,
                     std::optional<long long> defaultSw) {
    Emitter em;
    em.command = "fourman witten-check";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command}, {"record", recJson}, {"w", wStr}};
    try {
        ManifoldRecord rec = record_from_json(recJson);
        const IntegerLattice& L = need_gram(rec);
        const auto cn = characteristic_numbers(rec.X);
        int cap = degree ? *degree : static_cast<int>(std::max<long long>(cn.c + 1, 2));
        em.inputs["degree"] = cap;
        LatticeVector w = wStr.empty() ? LatticeVector(L.rank, 0) : parse_vec(wStr);
        SeriesContext ctx =
            make_series_context(L.gram, w, sw_data(rec, defaultSw), cap, cn.c);
        TruncatedSeries d;
        if (donaldsonFile.empty()) {
            d = witten_rhs(ctx);
            em.results["donaldson_source"] = "witten_rhs";
        } else {
            Json dj = load_json(donaldsonFile);
            em.inputs["donaldson"] = dj;
            d = series_from_json(dj);
            em.results["donaldson_source"] = donaldsonFile;
        }
        BlowupSuiteReport rep = blowup_congruence_suite(ctx, d);
        em.results["suite"] = suite_to_json(rep);
        return em.finish(rep.pass ? 0 : 1);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_blowup(const std::string& input, const std::string& output) {
    Emitter em;
    em.command = "fourman blowup";
    em.outFile = output;
    Json recJson = load_json(input);
    em.inputs = {{"command", em.command}, {"record", recJson}};
    try {
        ManifoldRecord parent = record_from_json(recJson);
        const std::string parentDigest =
            digest_string(record_to_json(parent));
        ManifoldRecord rec = blowup_record(parent);
        if (!rec.familyParams.empty()) rec.familyParams += ",";
        rec.familyParams += "parent_digest=" + parentDigest;
        put_record_summary(em, rec);
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_numtheory(const std::string& output, const std::string& op, long long k) {
    Emitter em;
    em.command = "fourman numtheory";
    em.outFile = output;
    em.inputs = {{"command", em.command}, {"op", op}, {"k", k}};
    try {
        em.results["k"] = k;
        if (op == "four-odd-squares") {
            auto t = four_odd_squares(k);
            em.results["exists"] = t.has_value();
            if (t) em.results["tuple"] = Json::array({(*t)[0], (*t)[1], (*t)[2], (*t)[3]});
        } else if (op == "three-squares") {
            auto t = three_squares(k);
            em.results["exists"] = t.has_value();
            em.results["obstructed"] = three_squares_obstructed(k);
            if (t) em.results["tuple"] = Json::array({(*t)[0], (*t)[1], (*t)[2]});
        } else {
            throw input_error("numtheory op must be four-odd-squares or three-squares");
        }
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_catalog_elliptic(const std::string& output, int n, int p, int q) {
    Emitter em;
    em.command = "fourman catalog elliptic";
    em.outFile = output;
    em.inputs = {{"command", em.command}, {"n", n}, {"p", p}, {"q", q}};
    try {
        put_record_summary(em, elliptic_surface(n, p, q));
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

int run_catalog_general_type(const std::string& output, long long chi, long long sigma,
                             bool even) {
    Emitter em;
    em.command = "fourman catalog general-type";
    em.outFile = output;
    em.inputs = {{"command", em.command}, {"chi", chi}, {"sigma", sigma}, {"even", even}};
    try {
        put_record_summary(em, general_type_surface(chi, sigma, even));
        return em.finish(0);
    } catch (const CalcError& e) {
        em.results["violations"] = Json::array({e.what()});
        em.results["error_code"] = e.code();
        return em.finish(1);
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Exact four-manifold abundance, index and series calculator"};
    app.require_subcommand(1);

    // abundance
    CommonOpts abOpts;
    auto* ab = app.add_subcommand("abundance", "Decide the hyperbolic-pair property");
    ab->add_option("--input", abOpts.input, "ManifoldRecord JSON ('-' for stdin)")->required();
    ab->add_option("--class", abOpts.klass, "Hypothesis class k1:k2:...");
    long long abBound = 0;
    auto* abBoundOpt = ab->add_option("--bound", abBound, "Search box bound");
    ab->add_option("--threads", abOpts.threads, "Worker threads");
    ab->add_option("-o,--output", abOpts.output, "Write the report to a file");

    // lattice-search
    CommonOpts lsOpts;
    auto* ls = app.add_subcommand("lattice-search", "Bounded hyperbolic-pair search");
    ls->add_option("--input", lsOpts.input, "ManifoldRecord JSON")->required();
    ls->add_option("--class", lsOpts.klass, "Orthogonality class k1:k2:...");
    long long lsBound = 0;
    auto* lsBoundOpt = ls->add_option("--bound", lsBound, "Search box bound");
    ls->add_option("--threads", lsOpts.threads, "Worker threads");
    ls->add_option("-o,--output", lsOpts.output, "Write the report to a file");

    // dims
    std::string dimsInput, dimsOutput, dimsSpinc;
    auto* dims = app.add_subcommand("dims", "Seiberg-Witten dimension for a spin-c structure");
    dims->add_option("--input", dimsInput, "ManifoldRecord JSON")->required();
    dims->add_option("--spinc", dimsSpinc, "c1=a:b:...")->required();
    dims->add_option("-o,--output", dimsOutput, "Write the report to a file");

    // indices
    std::string idxInput, idxOutput, idxSpinu, idxSpinc;
    long long idxLevel = 0;
    auto* idx = app.add_subcommand("indices", "ASD and reduction indices");
    idx->add_option("--input", idxInput, "ManifoldRecord JSON")->required();
    idx->add_option("--spinu", idxSpinu, "c1=a:b:...,p1=n,w2=a:b:...")->required();
    idx->add_option("--spinc", idxSpinc, "c1=a:b:... (adds reduction indices)");
    idx->add_option("--level", idxLevel, "Index level shift");
    idx->add_option("-o,--output", idxOutput, "Write the report to a file");

    // chern-normal
    std::string cnInput, cnOutput, cnSpinu, cnSpinc, cnRxi = "0/1", cnMode = "both";
    int cnCap = 0;
    auto* cn = app.add_subcommand("chern-normal", "Chern character of the reducible normal bundle");
    cn->add_option("--input", cnInput, "ManifoldRecord JSON")->required();
    cn->add_option("--spinu", cnSpinu, "c1=a:b:...,p1=n,w2=a:b:...")->required();
    cn->add_option("--spinc", cnSpinc, "c1=a:b:...")->required();
    auto* cnCapOpt = cn->add_option("--cap", cnCap, "Truncation cap (complex degree)");
    cn->add_option("--rxi", cnRxi, "Rank correction r(Xi), rational");
    cn->add_option("--mode", cnMode, "direct | pipeline | both");
    cn->add_option("-o,--output", cnOutput, "Write the report to a file");

    // series-sw
    std::string swInput, swOutput, swW;
    int swDegree = -1;
    long long swDefault = 0;
    auto* ssw = app.add_subcommand("series-sw", "Truncated SW series of a record");
    ssw->add_option("--input", swInput, "ManifoldRecord JSON")->required();
    ssw->add_option("--w", swW, "Integral lift w as a:b:...");
    auto* swDegOpt = ssw->add_option("--degree", swDegree, "Truncation degree");
    auto* swDefOpt = ssw->add_option("--default-sw", swDefault, "SW value for classes without one");
    ssw->add_option("-o,--output", swOutput, "Write the report to a file");

    // witten-check
    std::string wcInput, wcOutput, wcW, wcDonaldson;
    int wcDegree = -1;
    long long wcDefault = 0;
    auto* wc = app.add_subcommand("witten-check", "Blow-up congruence suite");
    wc->add_option("--input", wcInput, "ManifoldRecord JSON")->required();
    wc->add_option("--w", wcW, "Integral lift w as a:b:...");
    auto* wcDegOpt = wc->add_option("--degree", wcDegree, "Truncation degree");
    wc->add_option("--donaldson", wcDonaldson, "Donaldson series JSON file");
    auto* wcDefOpt = wc->add_option("--default-sw", wcDefault, "SW value for classes without one");
    wc->add_option("-o,--output", wcOutput, "Write the report to a file");

    // blowup
    std::string buInput, buOutput;
    auto* bu = app.add_subcommand("blowup", "Blow up a record once");
    bu->add_option("--input", buInput, "ManifoldRecord JSON")->required();
    bu->add_option("-o,--output", buOutput, "Write the report to a file");

    // numtheory
    std::string ntOutput, ntOp;
    long long ntK = 0;
    auto* nt = app.add_subcommand("numtheory", "Square representation queries");
    nt->add_option("op", ntOp, "four-odd-squares | three-squares")->required();
    nt->add_option("k", ntK, "Target integer")->required();
    nt->add_option("-o,--output", ntOutput, "Write the report to a file");

    // catalog
    auto* cat = app.add_subcommand("catalog", "Generate family records");
    cat->require_subcommand(1);
    std::string ceOutput;
    int ceN = 2, ceP = 1, ceQ = 1;
    auto* ce = cat->add_subcommand("elliptic", "Simply connected elliptic surfaces");
    ce->add_option("--n", ceN, "Euler-number parameter")->required();
    ce->add_option("--p", ceP, "First multiplicity");
    ce->add_option("--q", ceQ, "Second multiplicity");
    ce->add_option("-o,--output", ceOutput, "Write the report to a file");
    std::string cgOutput;
    long long cgChi = 0, cgSigma = 0;
    bool cgEven = false;
    auto* cg = cat->add_subcommand("general-type", "Simply connected general-type models");
    cg->add_option("--chi", cgChi, "Euler characteristic")->required();
    cg->add_option("--sigma", cgSigma, "Signature")->required();
    cg->add_flag("--even", cgEven, "Even intersection form");
    cg->add_option("-o,--output", cgOutput, "Write the report to a file");
    std::string cbInput, cbOutput;
    auto* cb = cat->add_subcommand("blowup", "Blow up a parent record");
    cb->add_option("--input", cbInput, "Parent ManifoldRecord JSON")->required();
    cb->add_option("-o,--output", cbOutput, "Write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 64;
    }

    try {
        if (ab->parsed()) {
            if (abBoundOpt->count()) abOpts.bound = abBound;
            return run_abundance(abOpts);
        }
        if (ls->parsed()) {
            if (lsBoundOpt->count()) lsOpts.bound = lsBound;
            return run_lattice_search(lsOpts);
        }
        if (dims->parsed()) return run_dims(dimsInput, dimsOutput, dimsSpinc);
        if (idx->parsed()) return run_indices(idxInput, idxOutput, idxSpinu, idxSpinc, idxLevel);
        if (cn->parsed())
            return run_chern_normal(cnInput, cnOutput, cnSpinu, cnSpinc,
                                    cnCapOpt->count() ? std::optional<int>(cnCap) : std::nullopt,
                                    cnRxi, cnMode);
        if (ssw->parsed())
            return run_series_sw(swInput, swOutput, swW,
                                 swDegOpt->count() ? std::optional<int>(swDegree) : std::nullopt,
                                 swDefOpt->count() ? std::optional<long long>(swDefault)
                                                   : std::nullopt);
        if (wc->parsed())
            return run_witten_check(wcInput, wcOutput, wcW,
                                    wcDegOpt->count() ? std::optional<int>(wcDegree) : std::nullopt,
                                    wcDonaldson,
                                    wcDefOpt->count() ? std::optional<long long>(wcDefault)
                                                      : std::nullopt);
        if (bu->parsed()) return run_blowup(buInput, buOutput);
        if (nt->parsed()) return run_numtheory(ntOutput, ntOp, ntK);
        if (cat->parsed()) {
            if (ce->parsed()) return run_catalog_elliptic(ceOutput, ceN, ceP, ceQ);
            if (cg->parsed()) return run_catalog_general_type(cgOutput, cgChi, cgSigma, cgEven);
            if (cb->parsed()) return run_blowup(cbInput, cbOutput);
        }
        std::cerr << "no subcommand\n";
        return 64;
    } catch (const CalcError& e) {
        // Errors outside a subcommand's own reporting (bad files, bad flags).
        std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
        return 1;
    } catch (const Json::exception& e) {
        std::cerr << "bad JSON input: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fourman
