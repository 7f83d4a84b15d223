// Plain-text run configuration: flat key-value sections, complex numbers as
// re/im pairs.  Unknown sections or keys are hard errors.

#pragma once

#include "spinlift/bethe.hpp"

#include <optional>
#include <string>

namespace spinlift {

struct RunConfig {
    ModelSpec model;
    int p0 = 1;
    bool homogeneous = true;
    std::vector<cd> inhomogeneities;  // filled with zeros when homogeneous

    struct Bethe {
        bool present = false;
        std::vector<int> magnon_counts;        // p_1 .. p_K
        std::vector<std::vector<cd>> seeds;    // one list per level with p_k > 0
        int final_branch = 0;
        int max_iter = 200;
        double tol = 1e-10;
    } bethe;

    struct Spectrum {
        bool present = false;
        std::string op = "hamiltonian";  // "hamiltonian" | "transfer"
        std::optional<cd> mu;
    } spectrum;

    struct Output {
        std::string path = "out.json";
        std::string format = "json";
    } output;

    ChainSpec chain() const {
        ChainSpec c;
        c.model = model;
        c.p0 = p0;
        c.inhomogeneities = inhomogeneities;
        return c;
    }

    BetheConfig bethe_config() const;
};

// Parses and validates; throws std::runtime_error with a line-tagged message.
RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text, const std::string& origin = "<memory>");

}  // namespace spinlift
