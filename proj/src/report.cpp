#include "ascurves/report.hpp"

#include <sstream>

#include "ascurves/iso.hpp"
#include "json.hpp"

namespace ascurves {

namespace {

using Json = nlohmann::ordered_json;

Json stratum_json(const StratumDescriptor& st) {
    Json j;
    j["g"] = st.g;
    j["p"] = st.p;
    j["s"] = st.s;
    j["E"] = st.partition;
    j["dim"] = st.dimension;
    return j;
}

Json transcript_json(const IsomorphismRecord& r) {
    Json j;
    j["lambda"] = r.lambda.to_string();
    j["M"] = Json::array({Json::array({r.mobius.alpha().to_string(), r.mobius.beta().to_string()}),
                          Json::array({r.mobius.gamma().to_string(), r.mobius.delta().to_string()})});
    j["h"] = r.shift.to_string();
    return j;
}

Json standard_form_json(const StandardizeResult& sr) {
    Json j;
    j["shape"] = sr.form.shape_name();
    j["field"] = sr.form.curve.field()->description();
    j["f"] = sr.form.curve.f().to_string();
    Json coeffs = Json::object();
    for (const auto& [n, v] : sr.form.coefficients) coeffs[n] = v.to_string();
    j["coefficients"] = coeffs;
    j["transcript"] = transcript_json(sr.transcript);
    return j;
}

Json invariants_json(const InvariantVector& v) {
    Json j = Json::object();
    for (const auto& [n, e] : v.values) j[n] = e.to_string();
    return j;
}

Json exceptional_json(const ExceptionalClass& e) {
    Json j;
    switch (e.kind) {
        case ExceptionalClass::Kind::TypeA:
            j["kind"] = "TypeA";
            j["a"] = e.a.to_string();
            break;
        case ExceptionalClass::Kind::TypeB:
            j["kind"] = "TypeB";
            j["lambda"] = e.lambda;
            break;
        default:
            j["kind"] = "none";
    }
    return j;
}

std::string coefficients_text(const StandardFormCurve& s) {
    if (s.coefficients.empty()) return "(none)";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, v] : s.coefficients) {
        if (!first) os << " ";
        first = false;
        os << n << "=" << v.to_string();
    }
    return os.str();
}

std::string invariants_text(const InvariantVector& v) {
    if (v.values.empty()) return "(empty set)";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, e] : v.values) {
        if (!first) os << " ";
        first = false;
        os << n << "=" << e.to_string();
    }
    return os.str();
}

std::string tuple_text(const std::vector<FieldElement>& tuple) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ",";
        os << tuple[i].to_string();
    }
    os << ")";
    return os.str();
}

}  // namespace

std::string report_strata(int g, std::int64_t p, bool json) {
    auto rows = enumerate_strata(g, p);
    if (json) {
        Json j;
        j["command"] = "strata";
        j["g"] = g;
        j["p"] = p;
        Json arr = Json::array();
        for (const auto& st : rows) arr.push_back(stratum_json(st));
        j["strata"] = arr;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    if (rows.empty()) {
        os << "g=" << g << " p=" << p << "\n";
        os << "no strata (2g/(p-1) is not a positive integer)\n";
        return os.str();
    }
    int D = 0;
    for (int e : rows[0].partition) D += e;
    D -= 2;
    os << "g=" << g << " p=" << p << " D=" << D << "\n";
    for (const auto& st : rows)
        os << "s=" << st.s << " E=" << st.partition_string() << " dim=" << st.dimension << "\n";
    return os.str();
}

std::string report_classify(const CurveSpec& spec, bool json) {
    ArtinSchreierCurve c = spec.curve();
    StandardizeResult sr = standardize(c);
    ExceptionalClass exc = classify_exceptional(c);
    bool tabulated = is_reference_stratum(sr.form.stratum);
    InvariantVector inv;
    if (tabulated) inv = invariants_of(sr.form);

    if (json) {
        Json j;
        j["command"] = "classify";
        j["curve"] = spec.to_string();
        j["genus"] = c.genus();
        j["p_rank"] = c.p_rank();
        j["stratum"] = stratum_json(sr.form.stratum);
        j["standard_form"] = standard_form_json(sr);
        j["invariants"] = tabulated ? invariants_json(inv) : Json();
        j["exceptional"] = exceptional_json(exc);
        j["diagnostics"] = tabulated
                               ? Json::array()
                               : Json::array({"stratum outside the tabulated genus 3/4 range"});
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: classify\n";
    os << "curve: " << spec.to_string() << "\n";
    os << "stratum: " << sr.form.stratum.to_string() << "\n";
    os << "standard form: " << sr.form.shape_name() << " over " << sr.form.curve.field()->description()
       << "\n";
    os << "coefficients: " << coefficients_text(sr.form) << "\n";
    os << "transcript: " << sr.transcript.to_string() << "\n";
    if (tabulated)
        os << "invariants: " << invariants_text(inv) << "\n";
    else
        os << "invariants: (stratum outside the tabulated genus 3/4 range)\n";
    os << "exceptional: " << exc.to_string() << "\n";
    return os.str();
}

std::string report_invariants(const CurveSpec& spec, bool json) {
    ArtinSchreierCurve c = spec.curve();
    StandardizeResult sr = standardize(c);
    InvariantVector inv = invariants_of(sr.form);  // throws outside the table
    if (json) {
        Json j;
        j["command"] = "invariants";
        j["curve"] = spec.to_string();
        j["stratum"] = stratum_json(sr.form.stratum);
        j["invariants"] = invariants_json(inv);
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: invariants\n";
    os << "curve: " << spec.to_string() << "\n";
    os << "stratum: " << sr.form.stratum.to_string() << "\n";
    os << "invariants: " << invariants_text(inv) << "\n";
    return os.str();
}

std::string report_isomorphic(const CurveSpec& a, const CurveSpec& b, bool json) {
    ArtinSchreierCurve ca = a.curve();
    ArtinSchreierCurve cb = b.curve();
    auto w = are_isomorphic(ca, cb);
    if (json) {
        Json j;
        j["command"] = "isomorphic";
        j["curve1"] = a.to_string();
        j["curve2"] = b.to_string();
        j["isomorphic"] = w.has_value();
        j["witness"] = w ? transcript_json(*w) : Json();
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: isomorphic\n";
    os << "curve1: " << a.to_string() << "\n";
    os << "curve2: " << b.to_string() << "\n";
    os << "isomorphic: " << (w ? "yes" : "no") << "\n";
    if (w) os << "witness: " << w->to_string() << "\n";
    return os.str();
}

std::string report_orbit(const CurveSpec& spec, bool json) {
    ArtinSchreierCurve c = spec.curve();
    StandardizeResult sr = standardize(c);
    auto orb = orbit(sr.form);
    bool reduced = sr.form.stratum == make_stratum(3, std::vector<int>{6});
    if (json) {
        Json j;
        j["command"] = "orbit";
        j["curve"] = spec.to_string();
        j["stratum"] = stratum_json(sr.form.stratum);
        j["coordinates"] = reduced ? "reduced" : "standard";
        Json arr = Json::array();
        for (const auto& t : orb) {
            Json row = Json::array();
            for (const auto& e : t) row.push_back(e.to_string());
            arr.push_back(row);
        }
        j["orbit"] = arr;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: orbit\n";
    os << "curve: " << spec.to_string() << "\n";
    os << "stratum: " << sr.form.stratum.to_string() << "\n";
    if (reduced) os << "coordinates: reduced\n";
    os << "orbit size: " << orb.size() << "\n";
    for (const auto& t : orb) os << "  " << tuple_text(t) << "\n";
    return os.str();
}

std::string report_census(std::int64_t p, int g, int s, const std::string& partition_csv,
                          std::uint64_t q, std::uint64_t budget, bool json) {
    // identify the stratum by (g, p, s) or by an explicit partition
    StratumDescriptor st;
    if (!partition_csv.empty()) {
        std::vector<int> parts;
        std::stringstream ss(partition_csv);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(std::stoi(item));
        st = make_stratum(p, parts);
        if (st.g != g && g != 0)
            throw Error(ErrorKind::Validation, "partition does not match the requested genus");
    } else {
        bool found = false;
        for (const auto& cand : enumerate_strata(g, p)) {
            if (cand.s == s) {
                if (found) throw Error(ErrorKind::Validation,
                                       "ambiguous stratum; pass --E to disambiguate");
                st = cand;
                found = true;
            }
        }
        if (!found) throw UnsupportedStratumError("no stratum with this (g, p, s)");
    }
    CensusReport rep = census(st, q, budget);
    if (json) {
        Json j;
        j["command"] = "census";
        j["stratum"] = stratum_json(rep.stratum);
        j["q"] = rep.q;
        j["class_count"] = rep.class_count;
        Json reps = Json::array();
        for (const auto& t : rep.representatives) {
            Json row = Json::array();
            for (const auto& e : t) row.push_back(e.to_string());
            reps.push_back(row);
        }
        j["representatives"] = reps;
        j["invariant_classes"] = rep.invariant_classes;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << "command: census\n";
    os << "stratum: " << rep.stratum.to_string() << "\n";
    os << "q: " << rep.q << "\n";
    os << "class count: " << rep.class_count << "\n";
    os << "invariant classes: " << rep.invariant_classes << "\n";
    os << "representatives:\n";
    for (const auto& t : rep.representatives) os << "  " << tuple_text(t) << "\n";
    return os.str();
}

}  // namespace ascurves
