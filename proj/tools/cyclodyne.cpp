// Command-line front end: constructs the two generalized cyclotomic
// sequence classes of period pq, measures their exact 2-adic complexity,
// and machine-checks the closed-form determinant and partition identities
// against independent oracles.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parameter error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyclodyne/cyclodyne.hpp"
#include "cyclodyne/json_export.hpp"

namespace {

using namespace cyclodyne;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    uint64_t p = 0;
    uint64_t q = 0;
    int cls = 1;
    std::optional<uint64_t> g_override;
    std::size_t primes = 5;
    uint64_t seed = 0;
    uint64_t max_p = 31;
    std::size_t bits = 0;
    std::string format;
    std::string input;
    std::string output;
};

SequenceClass class_of(int cls) { return cls == 2 ? SequenceClass::DH2 : SequenceClass::DH1; }

PeriodParams params_from(const RunConfig& cfg) { return make_params(cfg.p, cfg.q, cfg.g_override); }

BinarySequence generate(const Partition& part, int cls) {
    return cls == 2 ? generate_dh2(part) : generate_dh1(part);
}

BinarySequence read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_params("cannot open input file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return sequence_from_bits(buf.str());
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output);
    if (!out) throw invalid_params("cannot open output file: " + cfg.output);
    out << text;
}

int cmd_params(const RunConfig& cfg) {
    const PeriodParams pr = params_from(cfg);
    if (cfg.format == "json") {
        emit(cfg, partition_json(build_partition(pr)).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "p=" << pr.p << " q=" << pr.q << " N=" << pr.N << " e=" << pr.e << " g=" << pr.g
           << " x=" << pr.x << "\n";
        emit(cfg, os.str());
    }
    return kExitOk;
}

int cmd_gen(const RunConfig& cfg) {
    const PeriodParams pr = params_from(cfg);
    const Partition part = build_partition(pr);
    const BinarySequence seq = generate(part, cfg.cls);
    if (cfg.format == "hex")
        emit(cfg, to_hex_string(seq) + "\n");
    else if (cfg.format == "json")
        emit(cfg, sequence_json(seq, &pr).dump(2) + "\n");
    else
        emit(cfg, to_bit_string(seq) + "\n");
    return kExitOk;
}

const char* kCsvHeader = "p,q,N,class,weight,gcd,phi2,lc\n";

std::string csv_row(const BinarySequence& seq, const ComplexityReport& rep, uint64_t lc,
                    const PeriodParams* pr) {
    std::ostringstream os;
    if (pr)
        os << pr->p << "," << pr->q << ",";
    else
        os << ",,";
    os << seq.period << "," << to_string(seq.tag) << "," << weight(seq) << ","
       << to_decimal(rep.g_common) << "," << rep.phi2 << "," << lc << "\n";
    return os.str();
}

int cmd_analyze(const RunConfig& cfg) {
    BinarySequence seq;
    std::optional<PeriodParams> pr;
    if (!cfg.input.empty()) {
        seq = read_sequence_file(cfg.input);
    } else {
        pr = params_from(cfg);
        seq = generate(build_partition(*pr), cfg.cls);
    }
    const ComplexityReport rep = two_adic_complexity(seq);
    const uint64_t lc = linear_complexity(seq);
    if (cfg.format == "csv")
        emit(cfg, kCsvHeader + csv_row(seq, rep, lc, pr ? &*pr : nullptr));
    else
        emit(cfg, analysis_json(seq, rep, lc, pr ? &*pr : nullptr).dump(2) + "\n");
    return kExitOk;
}

int cmd_raa(const RunConfig& cfg) {
    std::vector<uint8_t> bits;
    if (!cfg.input.empty()) {
        const BinarySequence seq = read_sequence_file(cfg.input);
        bits = seq.bits;
        if (cfg.bits > 0 && cfg.bits < bits.size()) bits.resize(cfg.bits);
    } else {
        const PeriodParams pr = params_from(cfg);
        const BinarySequence seq = generate(build_partition(pr), cfg.cls);
        const std::size_t count = cfg.bits > 0 ? cfg.bits : 2 * pr.N + 4;
        bits.reserve(count);
        for (std::size_t i = 0; i < count; ++i) bits.push_back(seq.bits[i % seq.period]);
    }
    const DyadicRational r = raa_synthesize(bits);
    ordered_json j;
    j["bits"] = bits.size();
    j["f"] = to_decimal(r.f);
    j["g"] = to_decimal(r.g);
    j["phi"] = bit_length(r.g) == 0 ? 0 : bit_length(r.g) - 1;
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify_det(const RunConfig& cfg) {
    const PeriodParams pr = params_from(cfg);
    try {
        const DetVerification v = verify_det(pr, class_of(cfg.cls), cfg.primes, cfg.seed);
        const FactorAudit audit = coprimality_audit(pr, class_of(cfg.cls));
        emit(cfg, det_verification_json(v, audit).dump(2) + "\n");
    } catch (const theorem_violation& e) {
        std::cerr << "[FAIL] " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

struct CheckLog {
    bool all_pass = true;
    std::ostringstream out;

    void record(const std::string& name, bool pass, const std::string& detail = "") {
        all_pass = all_pass && pass;
        out << (pass ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) out << ": " << detail;
        out << "\n";
    }
};

int cmd_verify_lemmas(const RunConfig& cfg) {
    const PeriodParams pr = params_from(cfg);
    const Partition part = build_partition(pr);
    CheckLog log;

    // Multiplicative action of every residue (sampled above the brute-force cap).
    {
        bool pass = true;
        uint64_t checked = 0;
        std::string detail;
        auto run = [&](uint64_t a) {
            const CosetActionReport rep = coset_action_check(part, a);
            if (!rep.pass && pass) {
                pass = false;
                detail = "a=" + std::to_string(a) + " " + rep.violations.front();
            }
            ++checked;
        };
        if (pr.N <= 2000) {
            for (uint64_t a = 0; a < pr.N; ++a) run(a);
        } else {
            std::mt19937_64 rng(cfg.seed);
            for (int i = 0; i < 100; ++i) run(rng() % pr.N);
        }
        log.record("lemma 1 coset action (" + std::to_string(checked) + " residues)", pass, detail);
    }

    try {
        const ResidueClass c = minus_one_class(part);
        log.record("lemma 2 class of -1", true, to_string(c));
    } catch (const lemma_violation& e) {
        log.record("lemma 2 class of -1", false, e.what());
    }

    log.record("lemma 3 cyclotomic numbers mod q",
               cyclotomic_q_closed(pr.q) == cyclotomic_q_bruteforce(pr.q));
    log.record("lemma 4 cyclotomic numbers mod N",
               cyclotomic_N_closed(pr) == cyclotomic_N_bruteforce(part));

    // Shifted intersections across P u Q (Lemma 5); the op itself throws
    // on any closed-form mismatch.
    {
        bool pass = true;
        std::string detail;
        std::vector<uint64_t> shifts;
        if (pr.N <= 5000) {
            shifts.insert(shifts.end(), part.pset.begin(), part.pset.end());
            shifts.insert(shifts.end(), part.qset.begin(), part.qset.end());
        } else {
            std::mt19937_64 rng(cfg.seed);
            for (int i = 0; i < 50; ++i) {
                const auto& src = (rng() % 2 == 0) ? part.pset : part.qset;
                shifts.push_back(src[rng() % src.size()]);
            }
        }
        try {
            for (uint64_t w : shifts)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) shifted_intersection(part, i, j, w);
        } catch (const lemma_violation& e) {
            pass = false;
            detail = e.what();
        }
        log.record("lemma 5 shifted intersections (" + std::to_string(shifts.size()) + " shifts)",
                   pass, detail);
    }

    // Character-sum identities, numeric and exact.
    {
        const GaussPeriodReport gq = gauss_periods_numeric(ModulusTag::Q, part);
        const GaussPeriodReport gn = gauss_periods_numeric(ModulusTag::N, part);
        const double tol_q = 1e-9 * static_cast<double>(pr.q);
        const double tol_n = 1e-9 * static_cast<double>(pr.N);
        log.record("lemma 7 gauss period sums (numeric)",
                   gq.eta_sum_residual < tol_q && gn.eta_sum_residual < tol_n &&
                       gn.p_sum_residual < tol_n && gn.q_sum_residual < tol_n);

        const int64_t want = (pr.q % 4 == 1) ? -static_cast<int64_t>((pr.q - 1) / 4)
                                             : static_cast<int64_t>((pr.q + 1) / 4);
        bool pass = true;
        std::string detail;
        try {
            const int64_t got_q = eta_product_exact(ModulusTag::Q, part);
            const int64_t got_n = eta_product_exact(ModulusTag::N, part);
            pass = got_q == want && got_n == want;
            detail = "eta0*eta1 = " + std::to_string(got_q) + " (mod q), " +
                     std::to_string(got_n) + " (mod N), expected " + std::to_string(want);
        } catch (const not_reducible& e) {
            pass = false;
            detail = e.what();
        }
        log.record("gauss period product (exact)", pass, detail);
    }

    // det(A) nonzero divisibility chain: gcd(S(2), 2^N-1) | gcd(det, 2^N-1).
    for (int cls : {1, 2}) {
        const BinarySequence seq = generate(part, cls);
        const ComplexityReport rep = two_adic_complexity(seq);
        const DetFactorization formula =
            (cls == 2) ? det_formula_dh2(pr) : det_formula_dh1(pr);
        const BigInt det_gcd = big_gcd(formula.value(), rep.modulus);
        const bool pass = rep.g_common != 0 && det_gcd % rep.g_common == 0;
        log.record("lemma 6(2) divisibility, class " + std::to_string(cls), pass,
                   "gcd(S(2),2^N-1)=" + to_decimal(rep.g_common) +
                       " gcd(det,2^N-1)=" + to_decimal(det_gcd));
    }

    emit(cfg, log.out.str());
    return log.all_pass ? kExitOk : kExitViolation;
}

int cmd_verify_twin(const RunConfig& cfg) {
    struct Row {
        PeriodParams pr;
        int cls;
        BinarySequence seq;
        ComplexityReport rep;
        bool pass;
    };
    std::vector<Row> rows;
    bool all_pass = true;
    for (uint64_t p = 3; p <= cfg.max_p; ++p) {
        if (!is_prime(p) || !is_prime(p + 2)) continue;
        const PeriodParams pr = make_params(p, p + 2);
        const Partition part = build_partition(pr);
        for (int cls : {1, 2}) {
            Row row{pr, cls, generate(part, cls), {}, false};
            row.rep = two_adic_complexity(row.seq);
            row.pass = row.rep.g_common == 1 && row.rep.phi2 == pr.N - 1;
            all_pass = all_pass && row.pass;
            rows.push_back(std::move(row));
        }
    }

    std::ostringstream os;
    if (cfg.format == "csv") {
        os << kCsvHeader;
        for (const Row& row : rows)
            os << csv_row(row.seq, row.rep, linear_complexity(row.seq), &row.pr);
    } else {
        for (const Row& row : rows) {
            os << (row.pass ? "[PASS] " : "[FAIL] ") << "p=" << row.pr.p << " q=" << row.pr.q
               << " class=" << row.cls << " gcd=" << to_decimal(row.rep.g_common)
               << " phi2=" << row.rep.phi2 << " (N-1=" << row.pr.N - 1 << ")\n";
        }
        os << (all_pass ? "[PASS] " : "[FAIL] ") << rows.size() / 2 << " twin pairs, "
           << rows.size() << " sequences\n";
    }
    emit(cfg, os.str());
    if (rows.empty()) std::cerr << "warning: no twin pairs with p <= " << cfg.max_p << "\n";
    return all_pass ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized cyclotomic sequences of period p*q: generation, exact 2-adic "
                 "complexity, and oracle verification"};
    app.require_subcommand(1);

    RunConfig cfg;
    auto add_pq = [&cfg](CLI::App* sub, bool with_class) {
        sub->add_option("--p", cfg.p, "smaller odd prime");
        sub->add_option("--q", cfg.q, "larger odd prime, gcd(p-1,q-1)=2");
        sub->add_option("--g", cfg.g_override, "override the common primitive root");
        if (with_class)
            sub->add_option("--class", cfg.cls, "sequence class (1 or 2)")->check(CLI::Range(1, 2));
    };

    CLI::App* sc_params = app.add_subcommand("params", "derived parameters and the class partition");
    add_pq(sc_params, false);
    sc_params->add_option("--format", cfg.format, "text|json");
    sc_params->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_gen = app.add_subcommand("gen", "emit one period of a sequence");
    add_pq(sc_gen, true);
    sc_gen->add_option("--format", cfg.format,
                       "bits: '0'/'1' line, index 0 first; hex: bits packed LSB-first into "
                       "nibbles, zero-padded at the top; json: support list");
    sc_gen->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_analyze = app.add_subcommand("analyze", "2-adic complexity report");
    add_pq(sc_analyze, true);
    sc_analyze->add_option("--input", cfg.input, "analyze a sequence file instead (one period)");
    sc_analyze->add_option("--format", cfg.format, "json|csv");
    sc_analyze->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_lemmas = app.add_subcommand("verify-lemmas", "check partition identities");
    add_pq(sc_lemmas, false);
    sc_lemmas->add_option("--seed", cfg.seed, "seed for sampled checks above the exhaustive cap");
    sc_lemmas->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_det = app.add_subcommand("verify-det", "closed-form determinant vs circulant oracle");
    add_pq(sc_det, true);
    sc_det->add_option("--primes", cfg.primes, "number of trial primes (default 5)");
    sc_det->add_option("--seed", cfg.seed, "trial prime seed (default 0)");
    sc_det->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_twin = app.add_subcommand("verify-twin",
                                           "sweep twin pairs: gcd(S(2),2^N-1)=1 and phi2=N-1");
    sc_twin->add_option("--max-p", cfg.max_p, "largest p to try (pairs (p,p+2))");
    sc_twin->add_option("--format", cfg.format, "text|csv");
    sc_twin->add_option("--output", cfg.output, "write to file instead of stdout");

    CLI::App* sc_raa = app.add_subcommand("raa", "rational approximation of a bit stream");
    add_pq(sc_raa, true);
    sc_raa->add_option("--input", cfg.input, "bit stream file");
    sc_raa->add_option("--bits", cfg.bits, "bits to consume (default 2N+4 for generated streams)");
    sc_raa->add_option("--output", cfg.output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    if (const char* env_seed = std::getenv("CYCLODYNE_SEED")) {
        try {
            cfg.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            std::cerr << "invalid CYCLODYNE_SEED: " << env_seed << "\n";
            return kExitUsage;
        }
    }

    try {
        if (sc_params->parsed()) return cmd_params(cfg);
        if (sc_gen->parsed()) return cmd_gen(cfg);
        if (sc_analyze->parsed()) return cmd_analyze(cfg);
        if (sc_lemmas->parsed()) return cmd_verify_lemmas(cfg);
        if (sc_det->parsed()) return cmd_verify_det(cfg);
        if (sc_twin->parsed()) return cmd_verify_twin(cfg);
        if (sc_raa->parsed()) return cmd_raa(cfg);
    } catch (const invalid_params& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lemma_violation& e) {
        std::cerr << "[FAIL] " << e.what() << "\n";
        return kExitViolation;
    } catch (const theorem_violation& e) {
        std::cerr << "[FAIL] " << e.what() << "\n";
        return kExitViolation;
    } catch (const not_reducible& e) {
        std::cerr << "[FAIL] " << e.what() << "\n";
        return kExitViolation;
    }
    return kExitUsage;
}
