#include "spinlift/runconfig.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace spinlift {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw std::runtime_error(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& s) {
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "not a number: '" + s + "'");
    }
}

int parse_int(const std::string& origin, int line, const std::string& s) {
    try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "not an integer: '" + s + "'");
    }
}

bool parse_bool(const std::string& origin, int line, const std::string& s) {
    if (s == "true") return true;
    if (s == "false") return false;
    fail(origin, line, "expected true|false, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::vector<int> parse_int_list(const std::string& origin, int line, const std::string& s) {
    std::vector<int> out;
    for (const std::string& item : split(s, ',')) out.push_back(parse_int(origin, line, item));
    return out;
}

// complex list: "re/im, re/im, ..."
std::vector<cd> parse_complex_list(const std::string& origin, int line, const std::string& s) {
    std::vector<cd> out;
    for (const std::string& item : split(s, ',')) {
        const auto parts = split(item, '/');
        if (parts.size() != 2) fail(origin, line, "complex values are re/im pairs, got '" + item + "'");
        out.emplace_back(parse_double(origin, line, parts[0]), parse_double(origin, line, parts[1]));
    }
    return out;
}

struct Entry {
    std::string value;
    int line;
};

}  // namespace

BetheConfig RunConfig::bethe_config() const {
    BetheConfig cfg;
    cfg.chain = chain();
    const int K = model.num_bases() - 1;
    cfg.rapidities.assign(K, {});
    for (int k = 1; k <= K; ++k) {
        const int pk = (k - 1 < static_cast<int>(bethe.magnon_counts.size()))
                           ? bethe.magnon_counts[k - 1]
                           : 0;
        if (k - 1 < static_cast<int>(bethe.seeds.size()))
            cfg.rapidities[k - 1] = bethe.seeds[k - 1];
        else
            cfg.rapidities[k - 1].assign(pk, cd(0, 0));
        if (static_cast<int>(cfg.rapidities[k - 1].size()) != pk)
            throw std::runtime_error("bethe: seeds_level" + std::to_string(k) + " must list p_" +
                                     std::to_string(k) + " = " + std::to_string(pk) + " rapidities");
    }
    cfg.final_branch = bethe.final_branch;
    return cfg;
}

RunConfig parse_run_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::map<std::string, Entry>> sections;
    {
        std::stringstream ss(text);
        std::string raw;
        std::string section;
        int line = 0;
        while (std::getline(ss, raw)) {
            ++line;
            std::string s = trim(raw);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(origin, line, "malformed section header");
                section = trim(s.substr(1, s.size() - 2));
                if (sections.count(section)) fail(origin, line, "duplicate section [" + section + "]");
                sections[section];
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(origin, line, "expected key = value");
            if (section.empty()) fail(origin, line, "key outside any section");
            const std::string key = trim(s.substr(0, eq));
            if (sections[section].count(key))
                fail(origin, line, "duplicate key '" + key + "' in [" + section + "]");
            sections[section][key] = {trim(s.substr(eq + 1)), line};
        }
    }

    static const std::map<std::string, std::set<std::string>> known = {
        {"model", {"m", "n", "multiplicities", "q_re", "q_im", "lift_convention"}},
        {"chain", {"p0", "homogeneous", "inhomogeneities"}},
        {"bethe", {"magnon_counts", "final_branch", "max_iter", "tol",
                   "seeds_level1", "seeds_level2", "seeds_level3", "seeds_level4",
                   "seeds_level5", "seeds_level6", "seeds_level7", "seeds_level8"}},
        {"spectrum", {"operator", "mu_re", "mu_im"}},
        {"output", {"path", "format"}},
    };
    for (const auto& [sec, entries] : sections) {
        const auto it = known.find(sec);
        if (it == known.end()) throw std::runtime_error(origin + ": unknown section [" + sec + "]");
        for (const auto& [key, entry] : entries)
            if (!it->second.count(key))
                fail(origin, entry.line, "unknown key '" + key + "' in [" + sec + "]");
    }

    auto require_section = [&](const std::string& sec) -> const std::map<std::string, Entry>& {
        const auto it = sections.find(sec);
        if (it == sections.end()) throw std::runtime_error(origin + ": missing section [" + sec + "]");
        return it->second;
    };
    auto get = [&](const std::map<std::string, Entry>& sec, const std::string& secname,
                   const std::string& key) -> const Entry& {
        const auto it = sec.find(key);
        if (it == sec.end())
            throw std::runtime_error(origin + ": missing key '" + key + "' in [" + secname + "]");
        return it->second;
    };

    RunConfig cfg;
    {
        const auto& sec = require_section("model");
        cfg.model.m = parse_int(origin, get(sec, "model", "m").line, get(sec, "model", "m").value);
        cfg.model.n = parse_int(origin, get(sec, "model", "n").line, get(sec, "model", "n").value);
        const auto& mult = get(sec, "model", "multiplicities");
        cfg.model.multiplicities = parse_int_list(origin, mult.line, mult.value);
        const auto& qre = get(sec, "model", "q_re");
        const auto& qim = get(sec, "model", "q_im");
        cfg.model.q = cd(parse_double(origin, qre.line, qre.value),
                         parse_double(origin, qim.line, qim.value));
        const auto& conv = get(sec, "model", "lift_convention");
        if (conv.value == "exchange")
            cfg.model.lift = LiftConvention::Exchange;
        else if (conv.value == "diagonal")
            cfg.model.lift = LiftConvention::Diagonal;
        else
            fail(origin, conv.line, "lift_convention must be exchange|diagonal");
        cfg.model.validate();
    }
    {
        const auto& sec = require_section("chain");
        cfg.p0 = parse_int(origin, get(sec, "chain", "p0").line, get(sec, "chain", "p0").value);
        const auto& hom = get(sec, "chain", "homogeneous");
        cfg.homogeneous = parse_bool(origin, hom.line, hom.value);
        if (cfg.homogeneous) {
            if (sec.count("inhomogeneities"))
                fail(origin, sec.at("inhomogeneities").line,
                     "homogeneous chains take no inhomogeneities");
            cfg.inhomogeneities.assign(cfg.p0, cd(0, 0));
        } else {
            const auto& in = get(sec, "chain", "inhomogeneities");
            cfg.inhomogeneities = parse_complex_list(origin, in.line, in.value);
        }
        cfg.chain().validate();
    }
    if (sections.count("bethe")) {
        const auto& sec = sections.at("bethe");
        cfg.bethe.present = true;
        const auto& counts = get(sec, "bethe", "magnon_counts");
        cfg.bethe.magnon_counts = parse_int_list(origin, counts.line, counts.value);
        const int K = cfg.model.num_bases() - 1;
        if (static_cast<int>(cfg.bethe.magnon_counts.size()) != K)
            fail(origin, counts.line,
                 "magnon_counts must list p_1..p_K (K = " + std::to_string(K) + ")");
        for (int pk : cfg.bethe.magnon_counts)
            if (pk < 0) fail(origin, counts.line, "magnon counts must be nonnegative");
        cfg.bethe.seeds.assign(K, {});
        for (int k = 1; k <= K; ++k) {
            const std::string key = "seeds_level" + std::to_string(k);
            if (sec.count(key)) {
                const auto& e = sec.at(key);
                cfg.bethe.seeds[k - 1] = parse_complex_list(origin, e.line, e.value);
                if (static_cast<int>(cfg.bethe.seeds[k - 1].size()) != cfg.bethe.magnon_counts[k - 1])
                    fail(origin, e.line, key + " must list exactly p_" + std::to_string(k) +
                                             " seed rapidities");
            } else {
                cfg.bethe.seeds[k - 1].assign(cfg.bethe.magnon_counts[k - 1], cd(0, 0));
            }
        }
        if (sec.count("final_branch"))
            cfg.bethe.final_branch = parse_int(origin, sec.at("final_branch").line,
                                               sec.at("final_branch").value);
        if (sec.count("max_iter"))
            cfg.bethe.max_iter = parse_int(origin, sec.at("max_iter").line, sec.at("max_iter").value);
        if (cfg.bethe.max_iter < 1) throw std::runtime_error(origin + ": bethe max_iter must be >= 1");
        if (sec.count("tol"))
            cfg.bethe.tol = parse_double(origin, sec.at("tol").line, sec.at("tol").value);
        if (cfg.bethe.tol <= 0) throw std::runtime_error(origin + ": bethe tol must be positive");
    }
    if (sections.count("spectrum")) {
        const auto& sec = sections.at("spectrum");
        cfg.spectrum.present = true;
        const auto& op = get(sec, "spectrum", "operator");
        if (op.value != "hamiltonian" && op.value != "transfer")
            fail(origin, op.line, "operator must be hamiltonian|transfer");
        cfg.spectrum.op = op.value;
        if (sec.count("mu_re") != sec.count("mu_im"))
            throw std::runtime_error(origin + ": mu_re and mu_im must appear together");
        if (sec.count("mu_re"))
            cfg.spectrum.mu = cd(parse_double(origin, sec.at("mu_re").line, sec.at("mu_re").value),
                                 parse_double(origin, sec.at("mu_im").line, sec.at("mu_im").value));
        if (cfg.spectrum.op == "transfer" && !cfg.spectrum.mu)
            throw std::runtime_error(origin + ": transfer spectra need mu_re/mu_im");
    }
    if (sections.count("output")) {
        const auto& sec = sections.at("output");
        if (sec.count("path")) cfg.output.path = sec.at("path").value;
        if (sec.count("format")) {
            if (sec.at("format").value != "json")
                fail(origin, sec.at("format").line, "format must be json");
            cfg.output.format = sec.at("format").value;
        }
    }
    return cfg;
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config_text(ss.str(), path);
}

}  // namespace spinlift
