/*
   Copyright 2026 The pgconic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Lazily built objects for one q and the verification suites run on them.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "blk.hpp"
#include "check.hpp"
#include "chr.hpp"
#include "grp.hpp"
#include "inc.hpp"
#include "pg.hpp"

namespace pgconic {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

/// Largest q for which the group-based suites are run.
inline constexpr std::uint64_t kMaxGroupQ = 27;

/// Reason q is unusable, or nullopt when q is an odd prime power >= 3.
inline std::optional<std::string> invalid_q_reason(std::uint64_t q) {
    const auto pe = Field::prime_power(q);
    if (!pe) return "q = " + std::to_string(q) + " is not a prime power";
    if (pe->first == 2) return "q = " + std::to_string(q) + " is even; an odd prime power is required";
    return std::nullopt;
}

struct SuiteConfig {
    unsigned threads = 1;
    /// Largest q for the |H| x |H| block-ideal eliminations.
    std::uint64_t max_heavy_q = 13;
    /// Largest q for the exhaustive pair enumerations of the group suite.
    std::uint64_t max_parity_q = 17;
    /// Equivariance is exhaustive up to this q and sampled above it.
    std::uint64_t exhaustive_q = 7;
    std::size_t equivariance_samples = 100;
    std::size_t projector_samples = 20;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"geometry", "group", "incidence", "blocks", "characters"};
    return names;
}

struct SuiteOutcome {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;  // skipped parts and similar
    double seconds = 0.0;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
    }
};

class Workspace {
  public:
    Workspace(std::uint64_t q, SuiteConfig cfg = {}) : q_(q), cfg_(cfg), plane_(make_plane(q)) {}

    std::uint64_t q() const { return q_; }
    const SuiteConfig& config() const { return cfg_; }
    const Plane& plane() const { return *plane_; }
    const PlanePtr& plane_ptr() const { return plane_; }
    FieldPtr binfield() {
        if (!bin_) bin_ = binfield_for(q_);
        return bin_;
    }

    Group& H() {
        if (!H_) H_ = Group::build_H(plane_);
        return *H_;
    }
    Group& G() {
        if (!G_) G_ = Group::build_G(plane_);
        return *G_;
    }
    const ClassPartition& partition() {
        if (!part_) part_ = classify_by_t(H());
        return *part_;
    }
    const IncidenceSystem& incidence() {
        if (!inc_) inc_.emplace(plane_);
        return *inc_;
    }
    const ClassAlgebra& algebra() {
        if (!alg_) {
            if (!H().has_multiplication_table()) H().build_multiplication_table();
            alg_.emplace(H(), partition(), binfield());
        }
        return *alg_;
    }
    /// Block idempotents; the log records the idempotent and count checks.
    const std::vector<BlockIdempotent>& blocks() {
        if (!blocks_) {
            block_log_ = CheckResult("block idempotents");
            BlockOptions opt;
            opt.max_heavy_q = cfg_.max_heavy_q;
            blocks_ = compute_blocks(algebra(), H(), partition(), block_log_, opt);
        }
        return *blocks_;
    }
    const CheckResult& block_log() {
        blocks();
        return block_log_;
    }
    const CharTable& char_table() {
        if (!table_) table_.emplace(q_, partition());
        return *table_;
    }

    /// Every element for q <= exhaustive_q, else a fixed pseudo-random sample.
    std::vector<std::uint32_t> equivariance_elements() {
        if (q_ <= cfg_.exhaustive_q) return all_elements(H());
        return sample_elements(cfg_.equivariance_samples);
    }
    std::vector<std::uint32_t> sample_elements(std::size_t n) {
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ q_);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(H().size() - 1));
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(pick(rng));
        return out;
    }

    // Reports kept from the last suite runs, for serialization.
    std::optional<ParityReport> parity;
    std::optional<PatternReport> patterns;
    std::optional<ModuleReport> module;
    std::optional<DecompositionReport> decomposition;

  private:
    std::uint64_t q_;
    SuiteConfig cfg_;
    PlanePtr plane_;
    FieldPtr bin_;
    std::optional<Group> H_, G_;
    std::optional<ClassPartition> part_;
    std::optional<IncidenceSystem> inc_;
    std::optional<ClassAlgebra> alg_;
    std::optional<std::vector<BlockIdempotent>> blocks_;
    CheckResult block_log_;
    std::optional<CharTable> table_;
};

inline SuiteOutcome run_suite(Workspace& ws, const std::string& name) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteOutcome out;
    out.suite = name;
    const std::uint64_t q = ws.q();
    if (name == "geometry") {
        out.checks.push_back(check_geometry_census(ws.plane()));
        out.checks.push_back(check_polarity(ws.plane()));
        out.checks.push_back(check_meet_types(ws.plane()));
    } else if (name == "group") {
        out.checks.push_back(check_shifted_squares(ws.plane().field()));
        out.checks.push_back(check_conjugacy_classes(ws.H(), ws.partition()));
        out.checks.push_back(check_stabilizer_fixture(ws.G()));
        out.checks.push_back(check_transitivity(ws.H(), ws.G(), q <= 9));
        out.checks.push_back(check_stabilizer_class_counts(ws.H(), ws.partition()));
        out.checks.push_back(check_even_intersections(ws.plane()));
        if (q <= ws.config().max_parity_q) {
            ws.parity = parity_analysis(ws.H(), ws.partition(), ws.config().threads);
            out.checks.push_back(ws.parity->polar_parity);
            out.checks.push_back(ws.parity->neighbor_parity);
            out.checks.push_back(ws.parity->invariance);
        } else {
            out.notes.push_back("parity enumeration skipped above q = " + std::to_string(ws.config().max_parity_q));
        }
    } else if (name == "incidence") {
        const auto& sys = ws.incidence();
        out.checks.push_back(check_incidence_structure(sys));
        out.checks.push_back(verify_a_cubed(sys));
        out.checks.push_back(equivariance_check(sys, ws.H(), ws.equivariance_elements()));
        out.checks.push_back(check_fitting_split(sys));
        out.checks.push_back(kernel_image_check(sys));
        if (q % 4 == 3) out.checks.push_back(separate_check(sys));
        out.checks.push_back(check_null_dimension(sys));
    } else if (name == "blocks") {
        out.checks.push_back(ws.algebra().check(ws.H(), ws.partition()));
        const auto& blocks = ws.blocks();
        out.checks.push_back(ws.block_log());
        if (q > ws.config().max_heavy_q) {
            out.notes.push_back("block-ideal dimensions skipped above q = " + std::to_string(ws.config().max_heavy_q) +
                                "; blocks labeled by coefficient fingerprint");
        }
        ws.patterns = verify_expression_patterns(ws.algebra(), ws.partition(), blocks, q);
        out.checks.push_back(ws.patterns->check);
        ws.module = block_module_analysis(ws.incidence(), ws.H(), ws.partition(), ws.algebra(), blocks,
                                          ws.sample_elements(ws.config().projector_samples));
        out.checks.push_back(ws.module->check);
    } else if (name == "characters") {
        out.checks.push_back(check_char_table(ws.char_table()));
        ws.decomposition = decomposition_check(ws.H(), ws.partition(), ws.char_table());
        out.checks.push_back(ws.decomposition->check);
    } else {
        throw std::invalid_argument("unknown suite " + name);
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace pgconic
