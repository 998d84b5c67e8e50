#include "guesswork/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace guesswork {

namespace {

using nlohmann::json;

std::string join_doubles(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += fmt17(v[i]);
    }
    out += ']';
    return out;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    out += ']';
    return out;
}

std::string pmf_json(const Pmf& p) { return join_doubles(p.masses()); }

std::vector<double> double_list(const json& j, const char* field) {
    if (!j.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number()) {
            throw std::invalid_argument(std::string(field) + " entries must be numbers");
        }
        out.push_back(e.get<double>());
    }
    return out;
}

Pmf pmf_field(const json& j, const char* field) {
    if (!j.contains(field)) {
        throw std::invalid_argument(std::string("missing field: ") + field);
    }
    return Pmf(double_list(j.at(field), field));
}

json parsed(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("source spec is not valid JSON");
    if (!j.is_object()) throw std::invalid_argument("source spec must be a JSON object");
    return j;
}

}  // namespace

std::string fmt17(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::invalid_argument("value does not render");
    return std::string(buf, ptr);
}

std::string to_json(const SourceSpec& src) {
    return std::visit(
        [&](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            std::string out;
            if constexpr (std::is_same_v<S, IidSource>) {
                out = R"({"variant":"iid","p1":)" + pmf_json(s.p1) + "}";
            } else if constexpr (std::is_same_v<S, MarkovSource>) {
                out = R"({"variant":"markov","transition":[)";
                for (std::size_t i = 0; i < s.rows.size(); ++i) {
                    if (i) out += ',';
                    out += pmf_json(s.rows[i]);
                }
                out += R"(],"initial":)" + pmf_json(s.initial) + "}";
            } else if constexpr (std::is_same_v<S, UnifilarSource>) {
                out = R"({"variant":"unifilar","emission":[)";
                for (std::size_t i = 0; i < s.emission.size(); ++i) {
                    if (i) out += ',';
                    out += pmf_json(s.emission[i]);
                }
                out += R"(],"next_state":[)";
                for (std::size_t i = 0; i < s.next_state.size(); ++i) {
                    if (i) out += ',';
                    out += join_ints(s.next_state[i]);
                }
                out += R"(],"initial_state":)" + std::to_string(s.initial_state) + "}";
            } else {
                out = R"({"variant":"mixture","weight":)" + fmt17(s.weight) +
                      R"(,"components":[{"variant":"iid","p1":)" + pmf_json(s.first) +
                      R"(},{"variant":"iid","p1":)" + pmf_json(s.second) + "}]}";
            }
            return out;
        },
        src.value());
}

SourceSpec source_from_json_text(const std::string& text) {
    const json j = parsed(text);
    if (!j.contains("variant") || !j.at("variant").is_string()) {
        throw std::invalid_argument("source spec needs a string \"variant\" field");
    }
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "iid") {
        return SourceSpec::iid(pmf_field(j, "p1"));
    }
    if (variant == "markov") {
        if (!j.contains("transition") || !j.at("transition").is_array()) {
            throw std::invalid_argument("markov spec needs a \"transition\" array of rows");
        }
        std::vector<Pmf> rows;
        for (const auto& row : j.at("transition")) rows.emplace_back(double_list(row, "transition row"));
        return SourceSpec::markov(std::move(rows), pmf_field(j, "initial"));
    }
    if (variant == "unifilar") {
        if (!j.contains("emission") || !j.at("emission").is_array() || !j.contains("next_state") ||
            !j.at("next_state").is_array() || !j.contains("initial_state") ||
            !j.at("initial_state").is_number_integer()) {
            throw std::invalid_argument(
                "unifilar spec needs \"emission\", \"next_state\" and \"initial_state\"");
        }
        std::vector<Pmf> emission;
        for (const auto& row : j.at("emission")) emission.emplace_back(double_list(row, "emission row"));
        std::vector<std::vector<int>> next_state;
        for (const auto& row : j.at("next_state")) {
            if (!row.is_array()) throw std::invalid_argument("next_state rows must be arrays");
            std::vector<int> r;
            for (const auto& e : row) {
                if (!e.is_number_integer()) {
                    throw std::invalid_argument("next_state entries must be integers");
                }
                r.push_back(e.get<int>());
            }
            next_state.push_back(std::move(r));
        }
        return SourceSpec::unifilar(std::move(emission), std::move(next_state),
                                    j.at("initial_state").get<int>());
    }
    if (variant == "mixture") {
        if (!j.contains("weight") || !j.at("weight").is_number() || !j.contains("components") ||
            !j.at("components").is_array() || j.at("components").size() != 2) {
            throw std::invalid_argument(
                "mixture spec needs \"weight\" and a two-entry \"components\" array");
        }
        std::vector<Pmf> comps;
        for (const auto& comp : j.at("components")) {
            if (!comp.is_object() || !comp.contains("variant") ||
                comp.at("variant").get<std::string>() != "iid") {
                throw std::invalid_argument("mixture components must be iid specs");
            }
            comps.push_back(pmf_field(comp, "p1"));
        }
        return SourceSpec::mixture(j.at("weight").get<double>(), std::move(comps[0]),
                                   std::move(comps[1]));
    }
    throw std::invalid_argument("unknown source variant: " + variant);
}

SourceSpec load_source_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open source spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return source_from_json_text(buf.str());
}

std::string to_json(const ExponentReport& r) {
    return std::string("{\"rho\":") + fmt17(r.rho) + ",\"alpha\":" + fmt17(r.alpha) +
           ",\"beta\":" + fmt17(r.beta) + ",\"exponent\":" + fmt17(r.e_rho) + ",\"method\":\"" +
           std::string(to_string(r.method)) + "\"}";
}

std::string to_json(const CodingReport& r) {
    return std::string("{\"lengths\":") + join_ints(r.lengths) + ",\"cost\":" + fmt17(r.cost) +
           ",\"exponent_bits\":" + fmt17(r.exponent_bits) + "}";
}

std::string to_json(const InequalityCheck& c) {
    return std::string("{\"id\":\"") + c.id + "\",\"lhs\":" + fmt17(c.lhs) +
           ",\"rhs\":" + fmt17(c.rhs) + ",\"margin\":" + fmt17(c.margin) +
           ",\"pass\":" + (c.pass ? "true" : "false") + "}";
}

std::string to_json(const SandwichReport& r) {
    std::string out = "{\"cost\":" + fmt17(r.cost) + ",\"moment_induced\":" + fmt17(r.moment_gl) +
                      ",\"moment_optimal\":" + fmt17(r.moment_opt) +
                      ",\"lower\":" + fmt17(r.lower) + ",\"checks\":[";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        if (i) out += ',';
        out += to_json(r.checks[i]);
    }
    out += std::string("],\"all_pass\":") + (r.all_pass ? "true" : "false") + "}";
    return out;
}

std::string to_json(const InclusionReport& r) {
    std::string out = "{\"long_codewords\":" + join_ints(r.long_codewords) +
                      ",\"late_guesses\":" + join_ints(r.late_guesses) +
                      ",\"at_least_b\":" + join_ints(r.at_least_b) + ",\"checks\":[";
    for (std::size_t i = 0; i < r.checks.size(); ++i) {
        if (i) out += ',';
        out += to_json(r.checks[i]);
    }
    out += std::string("],\"all_pass\":") + (r.all_pass ? "true" : "false") + "}";
    return out;
}

std::string to_json(const SpectrumDistribution& s) {
    std::string out = "{\"n\":" + std::to_string(s.n) + ",\"atoms\":[";
    for (std::size_t i = 0; i < s.atoms.size(); ++i) {
        if (i) out += ',';
        out += "{\"t\":" + fmt17(s.atoms[i].t) + ",\"mass\":" + fmt17(s.atoms[i].mass) + "}";
    }
    out += "]}";
    return out;
}

}  // namespace guesswork
