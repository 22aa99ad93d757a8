#include "fourman/json_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fourman/error.hpp"

namespace fourman {

namespace {

bool looks_like_integer(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// familyParams is stored as "k=v,k=v"; reports expose it as an object.
Json params_to_json(const std::string& s) {
    Json obj = Json::object();
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            obj[item] = true;
            continue;
        }
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        if (looks_like_integer(val))
            obj[key] = static_cast<long long>(std::stoll(val));
        else
            obj[key] = val;
    }
    return obj;
}

std::string params_from_json(const Json& obj) {
    std::ostringstream os;
    bool first = true;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!first) os << ',';
        first = false;
        os << it.key() << '=';
        if (it.value().is_string())
            os << it.value().get<std::string>();
        else if (it.value().is_boolean())
            os << (it.value().get<bool>() ? "true" : "false");
        else
            os << it.value().dump();
    }
    return os.str();
}

const Json& need(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(std::string("record is missing \"") + key + "\"");
    return *it;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_string(const Json& inputs) {
    std::uint64_t h = fnv1a64(inputs.dump());
    std::ostringstream os;
    os << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

Json load_json(const std::string& path) {
    Json j;
    if (path == "-") {
        std::cin >> j;
    } else {
        std::ifstream in(path);
        if (!in) throw input_error("cannot open " + path);
        in >> j;
    }
    if (j.is_object() && j.contains("results") && j["results"].is_object() &&
        j["results"].contains("record"))
        return j["results"]["record"];
    return j;
}

Json vector_to_json(const LatticeVector& v) {
    Json a = Json::array();
    for (long long x : v) a.push_back(x);
    return a;
}

LatticeVector vector_from_json(const Json& j) {
    if (!j.is_array()) throw input_error("expected an integer array");
    LatticeVector v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw input_error("expected an integer array");
        v.push_back(x.get<long long>());
    }
    return v;
}

Json gram_to_json(const GramMatrix& g) {
    Json a = Json::array();
    for (const auto& row : g) a.push_back(vector_to_json(row));
    return a;
}

GramMatrix gram_from_json(const Json& j) {
    if (!j.is_array()) throw input_error("gram must be an array of rows");
    GramMatrix g;
    g.reserve(j.size());
    for (const auto& row : j) g.push_back(vector_from_json(row));
    return g;
}

ManifoldRecord record_from_json(const Json& j) {
    if (!j.is_object()) throw input_error("record must be a JSON object");
    ManifoldRecord rec;
    FourManifold X;
    X.name = j.value("name", std::string());
    X.b1 = need(j, "b1").get<int>();
    X.b2plus = need(j, "b2plus").get<int>();
    X.b2minus = need(j, "b2minus").get<int>();
    const std::string parity = need(j, "parity").get<std::string>();
    if (parity != "even" && parity != "odd") throw input_error("parity must be even or odd");
    X.oddForm = (parity == "odd");
    X.spin = need(j, "spin").get<bool>();
    X.simplyConnected = need(j, "simply_connected").get<bool>();
    if (j.contains("gram") && !j["gram"].is_null()) X.gram = make_lattice(gram_from_json(j["gram"]));
    if (j.contains("spherical_pairings"))
        for (const auto& sp : j["spherical_pairings"])
            X.sphericalClassPairings.push_back(vector_from_json(sp));
    rec.X = make_manifold(std::move(X));
    if (j.contains("basic_classes")) {
        for (const auto& bc : j["basic_classes"]) {
            SWDatum d;
            d.basicClass = vector_from_json(need(bc, "K"));
            if (bc.contains("sw") && !bc["sw"].is_null()) d.swValue = bc["sw"].get<long long>();
            if (bc.contains("convention") && !bc["convention"].is_null())
                d.convention = bc["convention"].get<std::string>();
            rec.basicClasses.push_back(std::move(d));
        }
    }
    if (j.contains("provenance") && j["provenance"].is_object()) {
        const Json& p = j["provenance"];
        rec.family = p.value("family", std::string());
        if (p.contains("params") && p["params"].is_object())
            rec.familyParams = params_from_json(p["params"]);
        rec.blowupOfAbundant = p.value("blowup_of_abundant", false);
    }
    if (j.contains("effective") && !j["effective"].is_null())
        rec.effective = j["effective"].get<bool>();
    if (j.contains("one_cup_one")) {
        for (const auto& row : j["one_cup_one"]) {
            int i = need(row, "i").get<int>();
            int jj = need(row, "j").get<int>();
            rec.oneCupOne.push_back({{i, jj}, vector_from_json(need(row, "row"))});
        }
    }
    return rec;
}

Json record_to_json(const ManifoldRecord& rec) {
    Json j;
    j["name"] = rec.X.name;
    j["b1"] = rec.X.b1;
    j["b2plus"] = rec.X.b2plus;
    j["b2minus"] = rec.X.b2minus;
    j["parity"] = rec.X.oddForm ? "odd" : "even";
    j["spin"] = rec.X.spin;
    j["simply_connected"] = rec.X.simplyConnected;
    if (rec.X.gram) j["gram"] = gram_to_json(rec.X.gram->gram);
    if (!rec.basicClasses.empty()) {
        Json arr = Json::array();
        for (const auto& bc : rec.basicClasses) {
            Json d;
            d["K"] = vector_to_json(bc.basicClass);
            if (bc.swValue) d["sw"] = *bc.swValue;
            if (bc.convention) d["convention"] = *bc.convention;
            arr.push_back(std::move(d));
        }
        j["basic_classes"] = std::move(arr);
    }
    if (!rec.X.sphericalClassPairings.empty()) {
        Json arr = Json::array();
        for (const auto& sp : rec.X.sphericalClassPairings) arr.push_back(vector_to_json(sp));
        j["spherical_pairings"] = std::move(arr);
    }
    if (!rec.family.empty() || rec.blowupOfAbundant) {
        Json p;
        p["family"] = rec.family;
        p["params"] = params_to_json(rec.familyParams);
        p["blowup_of_abundant"] = rec.blowupOfAbundant;
        j["provenance"] = std::move(p);
    }
    if (rec.effective) j["effective"] = *rec.effective;
    if (!rec.oneCupOne.empty()) {
        Json arr = Json::array();
        for (const auto& [ij, row] : rec.oneCupOne) {
            Json r;
            r["i"] = ij.first;
            r["j"] = ij.second;
            r["row"] = vector_to_json(row);
            arr.push_back(std::move(r));
        }
        j["one_cup_one"] = std::move(arr);
    }
    return j;
}

TruncatedSeries series_from_json(const Json& j) {
    TruncatedSeries s;
    for (const auto& v : need(j, "vars")) s.vars.push_back(v.get<std::string>());
    s.cap = need(j, "cap").get<int>();
    if (s.cap < 0) throw input_error("negative degree cap");
    for (const auto& t : need(j, "terms")) {
        const Json& idx = need(t, "index");
        std::vector<int> key;
        int deg = 0;
        for (const auto& e : idx) {
            int v = e.get<int>();
            if (v < 0) throw input_error("negative exponent in series term");
            deg += v;
            key.push_back(v);
        }
        if (key.size() != s.vars.size()) throw input_error("series index length mismatch");
        if (deg > s.cap) throw input_error("series term exceeds its cap");
        Rational c = rat_parse(need(t, "coeff").get<std::string>());
        if (c != 0) s.terms[key] = c;
    }
    return s;
}

Json series_to_json(const TruncatedSeries& s) {
    Json j;
    j["vars"] = s.vars;
    j["cap"] = s.cap;
    Json arr = Json::array();
    for (const auto& [idx, coeff] : serialize_series(s)) {
        Json t;
        t["index"] = idx;
        t["coeff"] = coeff;
        arr.push_back(std::move(t));
    }
    j["terms"] = std::move(arr);
    return j;
}

Json class_to_json(const BigradedClass& c) {
    Json arr = Json::array();
    for (const auto& [mono, coeff] : serialize_class(c)) {
        Json t;
        t["monomial"] = mono;
        t["coeff"] = coeff;
        arr.push_back(std::move(t));
    }
    return arr;
}

Json congruence_to_json(const CongruenceOutcome& c) {
    Json j;
    j["ok"] = c.ok;
    if (!c.ok) {
        j["index"] = c.index;
        j["lhs"] = rat_str(c.lhs);
        j["rhs"] = rat_str(c.rhs);
    }
    return j;
}

Json suite_to_json(const BlowupSuiteReport& rep) {
    Json j;
    j["precondition"] = congruence_to_json(rep.precondition);
    j["suite_run"] = rep.suiteRun;
    if (rep.suiteRun) {
        j["donaldson_vanishing"] = congruence_to_json(rep.donaldsonVanishing);
        j["sw_vanishing"] = congruence_to_json(rep.swVanishing);
        j["blowup_congruence"] = congruence_to_json(rep.blowupCongruence);
        if (rep.donaldsonOrder) j["donaldson_order"] = *rep.donaldsonOrder;
        if (rep.swOrder) j["sw_order"] = *rep.swOrder;
    }
    j["pass"] = rep.pass;
    return j;
}

}  // namespace fourman
