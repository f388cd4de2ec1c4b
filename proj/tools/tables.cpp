#include "tables.hpp"

#include "borel/singularity.hpp"
#include "borel/spectrum.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace borel::tables {

namespace {

// Reference rows, transcribed verbatim.

struct GRef {
    const char* g;
    const char* alpha;
    const char* lambda;
    const char* L30;
    const char* E_best;
    const char* err_percent;
};
const GRef g_rows[] = {
    {"0.05783", "1.6398", "2.9266", "1.0397406", "1.0397505", "0.00095"},
    {"0.13458", "2.4250", "7.6353", "1.0846489", "1.0846523", "0.00031"},
    {"0.23702", "2.8159", "10.4624", "1.1359213", "1.1359237", "0.00021"},
    {"0.37556", "2.8160", "9.9602", "1.1952265", "1.1952286", "0.00017"},
    {"0.56672", "2.8160", "9.6275", "1.2649090", "1.2649111", "0.00017"},
    {"0.83794", "2.8159", "9.3800", "1.3483970", "1.3483997", "0.00020"},
    {"1.23759", "2.8160", "9.1841", "1.4509422", "1.4509525", "0.00071"},
    {"1.85793", "2.8160", "9.0197", "1.5810649", "1.5811388", "0.00467"},
    {"2.89469", "2.8160", "8.8769", "1.7536476", "1.7541160", "0.02671"},
    {"4.83194", "2.8160", "8.7472", "1.9974138", "2.0000000", "0.12948"},
    {"9.19266", "2.8160", "8.6252", "2.3766424", "2.3904572", "0.58127"},
    {"23.50256", "2.8160", "8.5039", "3.0767794", "3.1622777", "2.77882"},
    {"206.09853", "2.8160", "8.3641", "5.1098167", "6.3245553", "23.77265"},
};

struct HRef {
    const char* hbar;
    const char* alpha;
    const char* lambda;
    const char* b2;
    const char* g_est;
    const char* g_best;
    const char* err;  // units of 1e-4 percent
};
const HRef h_rows[] = {
    {"0.05", "1.5190", "3.5078", "1.0289799", "0.0578315", "0.0578320", "8.85"},
    {"0.10", "2.2473", "8.4878", "1.0546589", "0.1345810", "0.1345815", "3.68"},
    {"0.15", "2.5696", "11.0496", "1.0780575", "0.2370176", "0.2370183", "2.69"},
    {"0.20", "2.7754", "12.7628", "1.0997450", "0.3755562", "0.3755570", "2.20"},
    {"0.25", "2.8514", "13.2331", "1.1200769", "0.5667191", "0.5667201", "1.83"},
    {"0.30", "2.8555", "13.0189", "1.1392958", "0.8379415", "0.8379430", "1.71"},
    {"0.35", "2.8557", "12.8266", "1.1575774", "1.2375925", "1.2375945", "1.66"},
    {"0.40", "2.8557", "12.6736", "1.1750540", "1.8579236", "1.8579267", "1.65"},
    {"0.45", "2.8557", "12.5499", "1.1918288", "2.8946853", "2.8946902", "1.70"},
    {"0.50", "2.8557", "12.4457", "1.2079838", "4.8319353", "4.8319442", "1.83"},
    {"0.55", "2.8557", "12.3584", "1.2235859", "9.1926365", "9.1926555", "2.07"},
    {"0.60", "2.8557", "12.2820", "1.2386905", "23.5024991", "23.5025564", "2.44"},
    {"0.65", "2.8557", "12.2158", "1.2533439", "206.0979166", "206.0985278", "2.97"},
};

struct EinfRef {
    int q;
    const char* alpha;
    const char* lambda;
    const char* b3_est;
    const char* b3_best;
    const char* err_percent;
};
const EinfRef einf_rows[] = {
    {1, "3.3554", "17.9902", "-1.722251", "-1.722249", "0.0001"},
    {2, "3.2057", "15.4576", "-4.020691", "-4.020850", "0.0040"},
    {3, "3.1254", "13.8688", "-6.654020", "-6.654572", "0.0083"},
    {4, "3.0734", "12.7075", "-9.555955", "-9.557404", "0.0152"},
    {5, "3.0341", "11.7759", "-12.681877", "-12.686239", "0.0344"},
    {6, "3.0046", "11.0209", "-16.000874", "-16.012209", "0.0708"},
    {7, "2.9831", "10.4064", "-19.489826", "-19.514237", "0.1251"},
    {8, "2.9675", "9.8993", "-23.130233", "-23.176133", "0.1980"},
    {9, "2.9560", "9.4721", "-26.906049", "-26.984993", "0.2926"},
    {10, "2.9473", "9.1068", "-30.803510", "-30.930247", "0.4098"},
};

struct ShiftedRef {
    const char* hbar;
    const char* alpha;
    const char* lambda;
    const char* b2;
    const char* g_est;
    const char* g_exact;
    const char* err_percent;
};
const ShiftedRef shifted_rows[] = {
    {"0.05", "1.0000", "0.5166", "1.0289943", "0.0578329", "0.0578320", "0.002"},
    {"0.10", "1.0040", "0.5631", "1.0545995", "0.1345734", "0.1345815", "0.006"},
    {"0.15", "1.0627", "0.7669", "1.0791362", "0.2372547", "0.2370183", "0.100"},
    {"0.20", "1.0971", "0.9049", "1.1021792", "0.3763874", "0.3755570", "0.221"},
    {"0.25", "1.1303", "1.0487", "1.1244110", "0.5689119", "0.5667201", "0.387"},
    {"0.30", "1.1569", "1.1569", "1.1457268", "0.8426714", "0.8379430", "0.564"},
    {"0.35", "1.1832", "1.3033", "1.1665395", "1.2471800", "1.2375945", "0.775"},
    {"0.40", "1.2060", "1.4223", "1.1866922", "1.8763800", "1.8579267", "0.993"},
    {"0.45", "1.2264", "1.5340", "1.2062905", "2.9298231", "2.8946902", "1.214"},
    {"0.50", "1.2435", "1.6317", "1.2252384", "4.9010160", "4.8319442", "1.429"},
    {"0.55", "1.2625", "1.7442", "1.2441147", "9.3469363", "9.1926555", "1.678"},
    {"0.60", "1.2777", "1.8371", "1.2622842", "23.9503681", "23.5025564", "1.905"},
    {"0.65", "1.2941", "1.9401", "1.2803813", "210.5377762", "206.0985278", "2.154"},
};

struct ErrorRef {
    const char* hbar;
    const char* g_best;
    const char* alpha_T;
    const char* g_corr;
    const char* resum_err;
    const char* corrected_err;
    const char* relative;
};
const ErrorRef error_rows[] = {
    {"0.05", "0.057832", "1.0000", "0.057833", "0.00165", "0.00002", "90"},
    {"0.10", "0.134581", "1.0040", "0.134613", "0.00600", "0.00023", "26"},
    {"0.15", "0.237018", "1.0627", "0.237378", "0.09976", "0.00152", "66"},
    {"0.20", "0.375557", "1.0971", "0.376543", "0.22112", "0.00263", "84"},
    {"0.25", "0.566720", "1.1303", "0.568924", "0.38674", "0.00389", "99"},
    {"0.30", "0.837943", "1.1569", "0.842246", "0.56430", "0.00514", "110"},
    {"0.35", "1.237595", "1.1832", "1.243168", "0.77452", "0.00450", "172"},
    {"0.40", "1.857927", "1.2060", "1.866679", "0.99322", "0.00471", "211"},
    {"0.45", "2.894690", "1.2264", "2.908286", "1.21370", "0.00470", "258"},
    {"0.50", "4.831944", "1.2435", "4.864863", "1.42948", "0.00681", "210"},
    {"0.55", "9.192656", "1.2625", "9.237419", "1.67830", "0.00487", "345"},
    {"0.60", "23.502556", "1.2777", "23.666373", "1.90537", "0.00697", "273"},
    {"0.65", "206.098528", "1.2941", "207.519940", "2.15394", "0.00690", "312"},
};

BigReal R(const char* s) { return BigReal(s); }

std::string full(const BigReal& x) { return to_string(x, 20); }
std::string shown(const BigReal& x, int digits) { return to_string(x, digits); }

BigReal percent_error(const BigReal& x, const BigReal& ref) { return abs(x - ref) / abs(ref) * 100; }

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

bool has_warning(const resum::ResumResult& r, const std::string& text) {
    for (const auto& w : r.warnings)
        if (w.find(text) != std::string::npos) return true;
    return false;
}

}  // namespace

bool Table::all_pass() const {
    for (const auto& r : rows)
        if (!r.pass) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

bool matches_figures(const BigReal& x, const BigReal& ref, int figures) {
    if (ref == 0) return x == 0;
    const BigReal exponent = floor(log10(abs(ref)));
    const BigReal half_unit = pow(BigReal(10), exponent - figures + 1) / 2;
    // Transcribed references are themselves rounded; allow for the decimal
    // representation by a hair.
    return abs(x - ref) <= half_unit * (1 + BigReal("1e-9"));
}

const std::vector<std::string>& table_names() {
    static const std::vector<std::string> names{"g", "h", "einf", "hshifted", "error"};
    return names;
}

Table run_table(const std::string& name, const resum::ResumConfig& cfg) {
    if (name == "g") return table_g(cfg);
    if (name == "h") return table_h(cfg);
    if (name == "einf") return table_einf(cfg);
    if (name == "hshifted") return table_hshifted(cfg);
    if (name == "error") return table_error(cfg);
    throw std::invalid_argument("unknown table '" + name + "'");
}

Table table_g(const resum::ResumConfig& cfg) {
    Table t;
    t.name = "g";
    t.header = {"g", "alpha_M", "lambda_M", "L_N", "L_N_display", "L30_ref", "E_best", "error_percent",
                "error_percent_ref", "flat_region_warning", "pass"};
    const std::size_t n = std::size(g_rows);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& ref = g_rows[i];
        Row row;
        try {
            const auto res = spectrum::bender_wu_energy(R(ref.g), cfg);
            const auto& r = *res.resum;
            const BigReal err = percent_error(r.value, R(ref.E_best));
            const bool warned = has_warning(r, "no flat region");
            row.cells = {ref.g, shown(r.alpha_used, 6), shown(r.lambda_used, 6), full(r.value), shown(r.value, 8),
                         ref.L30, ref.E_best, shown(err, 6), ref.err_percent, warned ? "yes" : "no"};
            if (i < 7) {
                row.pass = matches_figures(r.value, R(ref.L30), 5);
                if (!row.pass) row.note = "L_N differs from the reference value in the first five figures";
            } else if (i + 3 >= n) {
                row.pass = warned && err > BigReal("0.5");
                if (!row.pass) row.note = "expected the flat-region warning and an error above 0.5%";
            } else {
                row.note = "reported only";
            }
            if (!r.warnings.empty()) row.note += (row.note.empty() ? "" : "; ") + join(r.warnings);
        } catch (const std::exception& e) {
            row.cells = {ref.g};
            row.pass = false;
            row.note = e.what();
        }
        row.cells.push_back(row.pass ? "PASS" : "FAIL");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table table_h(const resum::ResumConfig& cfg) {
    Table t;
    t.name = "h";
    t.header = {"hbar", "alpha_M", "lambda_M", "b2", "g_est", "g_est_display", "g_est_ref", "g_best",
                "error_1e-4_percent", "error_ref", "pass"};
    for (const auto& ref : h_rows) {
        Row row;
        try {
            const auto p = spectrum::semiclassical_point(R(ref.hbar), cfg);
            const BigReal err = percent_error(p.g, R(ref.g_best)) * 10000;
            row.cells = {ref.hbar,     shown(p.resum.alpha_used, 6), shown(p.resum.lambda_used, 6),
                         full(p.b2),   full(p.g),                    shown(p.g, 8),
                         ref.g_est,    ref.g_best,                   shown(err, 4),
                         ref.err};
            const bool figures = matches_figures(p.g, R(ref.g_est), 6);
            const bool close = err <= 5;  // 5e-6 relative
            row.pass = figures && close;
            if (!figures) row.note = "g_est differs from the reference value in the first six figures";
            if (!close) row.note += std::string(row.note.empty() ? "" : "; ") + "error vs g_best above 5e-6";
            if (!p.resum.warnings.empty()) row.note += (row.note.empty() ? "" : "; ") + join(p.resum.warnings);
        } catch (const std::exception& e) {
            row.cells = {ref.hbar};
            row.pass = false;
            row.note = e.what();
        }
        row.cells.push_back(row.pass ? "PASS" : "FAIL");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table table_einf(const resum::ResumConfig& cfg) {
    Table t;
    t.name = "einf";
    t.header = {"q", "alpha_M", "lambda_M", "b3_est", "b3_display", "b3_est_ref", "b3_best", "error_percent",
                "error_ref", "E_q_inf", "pass"};
    std::optional<BigReal> e_inf;
    std::vector<BigReal> errors;
    bool all_rows = true;
    for (const auto& ref : einf_rows) {
        Row row;
        try {
            if (!e_inf) e_inf = spectrum::infinite_coupling(cfg).E_inf;
            const auto x = spectrum::excited_infinite(ref.q, cfg, e_inf);
            const BigReal err = percent_error(x.b3, R(ref.b3_best));
            errors.push_back(err);
            row.cells = {std::to_string(ref.q), shown(x.resum.alpha_used, 6), shown(x.resum.lambda_used, 6),
                         full(x.b3),            shown(x.b3, 8),                ref.b3_est,
                         ref.b3_best,           shown(err, 4),                 ref.err_percent,
                         full(x.E_q_inf)};
            row.pass = matches_figures(x.b3, R(ref.b3_est), 5);
            if (!row.pass) row.note = "b3 differs from the reference value in the first five figures";
            if (!x.resum.warnings.empty()) row.note += (row.note.empty() ? "" : "; ") + join(x.resum.warnings);
        } catch (const std::exception& e) {
            row.cells = {std::to_string(ref.q)};
            row.pass = false;
            row.note = e.what();
            all_rows = false;
        }
        row.cells.push_back(row.pass ? "PASS" : "FAIL");
        t.rows.push_back(std::move(row));
    }
    Check mono{"error grows with q", all_rows, ""};
    for (std::size_t i = 1; i < errors.size(); ++i)
        if (!(errors[i] > errors[i - 1])) {
            mono.pass = false;
            mono.detail = "error at q = " + std::to_string(i + 1) + " does not exceed q = " + std::to_string(i);
        }
    if (!all_rows) mono.detail = "not every row was computed";
    t.checks.push_back(mono);
    return t;
}

Table table_hshifted(const resum::ResumConfig& cfg) {
    Table t;
    t.name = "hshifted";
    t.header = {"hbar", "alpha_M", "lambda_M", "b2", "g_est", "g_est_display", "g_est_ref", "g_exact",
                "error_percent", "error_ref", "pass"};
    for (const auto& ref : shifted_rows) {
        Row row;
        try {
            const auto p = spectrum::semiclassical_point(R(ref.hbar), cfg, true);
            const BigReal err = percent_error(p.g, R(ref.g_exact));
            row.cells = {ref.hbar,   shown(p.resum.alpha_used, 6), shown(p.resum.lambda_used, 6),
                         full(p.b2), full(p.g),                    shown(p.g, 8),
                         ref.g_est,  ref.g_exact,                  shown(err, 4),
                         ref.err_percent};
            const bool figures = matches_figures(p.g, R(ref.g_est), 5);
            const bool bounded = err <= R(ref.err_percent) * BigReal("1.3");
            row.pass = figures && bounded;
            if (!figures) row.note = "g_est differs from the reference value in the first five figures";
            if (!bounded) row.note += std::string(row.note.empty() ? "" : "; ") + "error above 1.3x the reference error";
            if (!p.resum.warnings.empty()) row.note += (row.note.empty() ? "" : "; ") + join(p.resum.warnings);
        } catch (const std::exception& e) {
            row.cells = {ref.hbar};
            row.pass = false;
            row.note = e.what();
        }
        row.cells.push_back(row.pass ? "PASS" : "FAIL");
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table table_error(const resum::ResumConfig& cfg) {
    Table t;
    t.name = "error";
    t.header = {"g_best", "alpha_T", "g_corr", "g_corr_display", "g_corr_ref", "resum_err_percent",
                "corrected_err_percent", "corrected_err_ref", "relative", "relative_ref", "pass"};
    for (const auto& ref : error_rows) {
        Row row;
        try {
            const auto c = spectrum::corrected_semiclassical_point(R(ref.hbar), cfg);
            // The reference g_best is rounded to six decimals; compare with the exact coupling.
            const BigReal g_exact = R(h_rows[&ref - error_rows].g_best);
            const BigReal raw_err = percent_error(c.raw.g, g_exact);
            const BigReal corr_err = percent_error(c.g_corr, g_exact);
            const BigReal relative = raw_err / corr_err;
            row.cells = {ref.g_best,          shown(c.pole.alpha_T, 6), full(c.g_corr), shown(c.g_corr, 8),
                         ref.g_corr,          shown(raw_err, 5),        shown(corr_err, 5), ref.corrected_err,
                         shown(relative, 4), ref.relative};
            const bool bounded = corr_err <= 2 * R(ref.corrected_err);
            const bool improved = relative >= 50;
            row.pass = bounded && improved;
            if (!bounded) row.note = "corrected error above 2x the reference value";
            if (!improved) row.note += std::string(row.note.empty() ? "" : "; ") + "improvement factor below 50";
        } catch (const std::exception& e) {
            row.cells = {ref.g_best};
            row.pass = false;
            row.note = e.what();
        }
        row.cells.push_back(row.pass ? "PASS" : "FAIL");
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << ",note\n";
    for (const auto& r : t.rows) {
        // Short rows (failed computations) are padded so columns stay aligned.
        for (std::size_t i = 0; i + 1 < t.header.size(); ++i) os << (i < r.cells.size() - 1 ? r.cells[i] : "") << ",";
        os << r.cells.back() << ",\"" << r.note << "\"\n";
    }
    for (const auto& c : t.checks) os << "# check," << c.name << "," << (c.pass ? "PASS" : "FAIL") << "," << c.detail << "\n";
    return os.str();
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["table"] = t.name;
    j["pass"] = t.all_pass();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        for (std::size_t i = 0; i + 1 < r.cells.size(); ++i) row[t.header[i]] = r.cells[i];
        row["pass"] = r.pass;
        if (!r.note.empty()) row["note"] = r.note;
        j["rows"].push_back(row);
    }
    for (const auto& c : t.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j.dump(2);
}

}  // namespace borel::tables
