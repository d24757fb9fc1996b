// Copyright 2026 The cvcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cvcz/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvcz/checks.h"
#include "cvcz/protocol.h"
#include "cvcz/simulation.h"

namespace cvcz {

namespace {

// Validation failure tied to a command-line flag.
struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GateFlags {
    double kappa0 = 0;
    double kappa = 1;
    double r = 0;
    double eta = 0;
    std::optional<double> s;
    std::optional<double> s_db;
    double s_probe_db = 0;

    void add_to(CLI::App *cmd, bool with_kappa0) {
        if (with_kappa0) {
            cmd->add_option("--kappa0", kappa0, "spin-squeezing coupling");
        }
        cmd->add_option("--kappa", kappa, "gate coupling")->capture_default_str();
        cmd->add_option("--r", r, "wall reflection coefficient per crossing");
        cmd->add_option("--eta", eta, "integrated atomic decay per pass");
        cmd->add_option("--s", s, "light squeezing parameter");
        cmd->add_option("--s-db", s_db, "light squeezing in dB");
        cmd->add_option("--s-probe-db", s_probe_db, "probe squeezing in dB used for spin squeezing");
    }

    double s_light() const {
        if (s && s_db) {
            throw FlagError("--s and --s-db are mutually exclusive");
        }
        if (s_db) {
            return db_to_s(*s_db);
        }
        return s.value_or(0.0);
    }

    GateParams params() const {
        auto finite = [](double v, const char *flag) {
            if (!std::isfinite(v)) {
                throw FlagError(std::string(flag) + " must be finite");
            }
        };
        finite(kappa0, "--kappa0");
        finite(kappa, "--kappa");
        finite(r, "--r");
        finite(eta, "--eta");
        finite(s_probe_db, "--s-probe-db");
        if (kappa0 < 0) {
            throw FlagError("--kappa0 must be >= 0");
        }
        if (r < 0 || r >= 1.0 / 3.0) {
            throw FlagError("--r must lie in [0, 1/3)");
        }
        if (eta < 0) {
            throw FlagError("--eta must be >= 0");
        }
        GateParams p;
        p.kappa0 = kappa0;
        p.kappa = kappa;
        p.r = r;
        p.eta = eta;
        p.s_light = s_light();
        finite(p.s_light, s_db ? "--s-db" : "--s");
        p.s_probe = db_to_s(s_probe_db);
        return p;
    }
};

void check_slices(size_t k, const char *flag = "--slices") {
    if (k == 0) {
        throw FlagError(std::string(flag) + " must be >= 1");
    }
}

void check_format(const std::string &format) {
    if (format != "csv" && format != "json") {
        throw FlagError("--format must be csv or json");
    }
}

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    f << content;
    f.close();
    if (!f) {
        throw IoError("failed writing " + path.string());
    }
}

void emit(const std::string &content, const std::string &out_path, std::ostream &out) {
    if (out_path.empty()) {
        out << content;
    } else {
        write_file(out_path, content);
    }
}

std::string render(const Table &t, const std::string &format) {
    return format == "json" ? to_json(t) : to_csv(t);
}

double ideal_fidelity(const GateParams &p) {
    if (p.kappa == 1.0) {
        return closed_form_fidelity(effective_coupling(p.kappa0, p.s_probe), p.s_light);
    }
    return fidelity(target_state(p.s_light), ideal_gate_output(p));
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.6g", v);
    return buf;
}

std::string to_csv(const Table &table) {
    std::string s;
    for (size_t i = 0; i < table.columns.size(); i++) {
        s += (i ? "," : "") + table.columns[i];
    }
    s += '\n';
    for (const auto &row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            s += (i ? "," : "") + format_number(row[i]);
        }
        s += '\n';
    }
    return s;
}

std::string to_json(const Table &table) {
    nlohmann::ordered_json j;
    j["name"] = table.name;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    return j.dump(2) + "\n";
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Gaussian simulator for a double-pass atomic-ensemble controlled-Z gate", "cvcz"};
    app.require_subcommand(1);

    // fidelity
    auto *fid = app.add_subcommand("fidelity", "gate fidelity at one parameter point");
    GateFlags fid_gate;
    fid_gate.add_to(fid, true);
    bool fid_ideal = false;
    bool fid_noisy = false;
    size_t fid_slices = DEFAULT_FIGURE_SLICES;
    std::string fid_format = "csv";
    std::string fid_out;
    auto *ideal_flag = fid->add_flag("--ideal", fid_ideal, "lossless closed-form branch (default)");
    fid->add_flag("--noisy", fid_noisy, "sliced simulation with losses")->excludes(ideal_flag);
    fid->add_option("--slices", fid_slices, "slice count for --noisy")->capture_default_str();
    fid->add_option("--format", fid_format, "csv (plain number) or json");
    fid->add_option("--out", fid_out, "output file (default stdout)");

    // reproduce
    auto *rep = app.add_subcommand("reproduce", "write figure tables");
    std::string figure = "all";
    std::string rep_out = ".";
    std::string rep_format = "csv";
    FigureOptions rep_opts;
    rep->add_option("figure", figure, "fig2, fig3a, fig3b or all")->capture_default_str();
    rep->add_option("--out", rep_out, "output directory")->capture_default_str();
    rep->add_option("--slices", rep_opts.figure_slices, "slice count for plotted noisy curves")->capture_default_str();
    rep->add_option("--format", rep_format, "csv or json");

    // optimize
    auto *opt = app.add_subcommand("optimize", "maximize the noisy fidelity over kappa0");
    GateFlags opt_gate;
    opt_gate.add_to(opt, false);
    OptimizeOptions opt_opts;
    std::string opt_format = "json";
    std::string opt_out;
    opt->add_option("--slices", opt_opts.slices, "slice count")->capture_default_str();
    opt->add_option("--kappa0-min", opt_opts.kappa0_lo, "lower scan bound")->capture_default_str();
    opt->add_option("--kappa0-max", opt_opts.kappa0_hi, "upper scan bound")->capture_default_str();
    opt->add_option("--format", opt_format, "json or csv");
    opt->add_option("--out", opt_out, "output file (default stdout)");

    // convergence
    auto *conv = app.add_subcommand("convergence", "fidelity error vs slice count");
    GateFlags conv_gate;
    conv_gate.add_to(conv, true);
    std::vector<size_t> conv_slices{16, 64, 256, 1024};
    size_t ref_slices = 8192;
    std::string conv_format = "csv";
    std::string conv_out;
    conv->add_option("--slices", conv_slices, "ascending slice counts, comma separated")->delimiter(',');
    conv->add_option("--ref-slices", ref_slices, "reference slice count for lossy runs")->capture_default_str();
    conv->add_option("--format", conv_format, "csv or json");
    conv->add_option("--out", conv_out, "output file (default stdout)");

    // check
    auto *chk = app.add_subcommand("check", "run the physics property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return EXIT_OK;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return EXIT_BAD_FLAGS;
    }

    try {
        if (fid->parsed()) {
            check_format(fid_format);
            check_slices(fid_slices);
            GateParams p = fid_gate.params();
            double f;
            if (fid_noisy) {
                f = noisy_gate_fidelity(p, fid_slices);
            } else {
                if (p.r != 0 || p.eta != 0) {
                    throw FlagError("--r and --eta need --noisy");
                }
                f = ideal_fidelity(p);
            }
            std::string text;
            if (fid_format == "json") {
                nlohmann::ordered_json j;
                j["fidelity"] = f;
                text = j.dump() + "\n";
            } else {
                text = format_number(f) + "\n";
            }
            emit(text, fid_out, out);
        } else if (rep->parsed()) {
            check_format(rep_format);
            check_slices(rep_opts.figure_slices);
            if (figure != "fig2" && figure != "fig3a" && figure != "fig3b" && figure != "all") {
                throw FlagError("figure must be fig2, fig3a, fig3b or all");
            }
            std::filesystem::path dir(rep_out);
            if (!std::filesystem::is_directory(dir)) {
                throw IoError("output directory " + rep_out + " does not exist");
            }
            std::vector<Table> tables;
            if (figure == "fig2" || figure == "all") {
                tables.push_back(fig2_table());
            }
            if (figure == "fig3a" || figure == "all") {
                tables.push_back(fig3a_table(rep_opts));
            }
            if (figure == "fig3b" || figure == "all") {
                tables.push_back(fig3b_table(rep_opts));
            }
            for (const Table &t : tables) {
                auto path = dir / (t.name + "." + rep_format);
                write_file(path, render(t, rep_format));
                out << path.string() << "\n";
            }
        } else if (opt->parsed()) {
            check_format(opt_format);
            check_slices(opt_opts.slices);
            GateParams p = opt_gate.params();
            if (!(opt_opts.kappa0_lo > 0 && opt_opts.kappa0_hi > opt_opts.kappa0_lo)) {
                throw FlagError("--kappa0-min and --kappa0-max must satisfy 0 < min < max");
            }
            opt_opts.kappa = p.kappa;
            opt_opts.s_probe = p.s_probe;
            OptimizationResult res = optimize_kappa0(p.r, p.eta, p.s_light, opt_opts);
            std::string text;
            if (opt_format == "json") {
                nlohmann::ordered_json j;
                j["kappa0_opt"] = res.kappa0_opt;
                j["fidelity_opt"] = res.fidelity_opt;
                j["evaluations"] = res.evaluations;
                j["monotone"] = res.monotone;
                j["bracket_lo"] = res.bracket.first;
                j["bracket_hi"] = res.bracket.second;
                j["r"] = p.r;
                j["eta"] = p.eta;
                j["s"] = p.s_light;
                j["slices"] = opt_opts.slices;
                text = j.dump(2) + "\n";
            } else {
                Table t{"optimize", {"r", "eta", "s", "kappa0_opt", "fidelity_opt", "evaluations", "monotone"}, {}};
                t.rows.push_back({p.r, p.eta, p.s_light, res.kappa0_opt, res.fidelity_opt, double(res.evaluations),
                                  res.monotone ? 1.0 : 0.0});
                text = to_csv(t);
            }
            emit(text, opt_out, out);
        } else if (conv->parsed()) {
            check_format(conv_format);
            check_slices(ref_slices, "--ref-slices");
            if (conv_slices.empty()) {
                throw FlagError("--slices needs at least one value");
            }
            for (size_t i = 0; i < conv_slices.size(); i++) {
                check_slices(conv_slices[i]);
                if (i > 0 && conv_slices[i] <= conv_slices[i - 1]) {
                    throw FlagError("--slices must be strictly ascending");
                }
            }
            GateParams p = conv_gate.params();
            bool ideal = p.r == 0 && p.eta == 0;
            double reference = ideal && p.kappa == 1.0
                                   ? closed_form_fidelity(effective_coupling(p.kappa0, p.s_probe), p.s_light)
                                   : noisy_gate_fidelity(p, ref_slices);
            Table t{"convergence", {"slices", "fidelity", "error"}, {}};
            for (size_t k : conv_slices) {
                double f = noisy_gate_fidelity(p, k);
                t.rows.push_back({double(k), f, std::abs(f - reference)});
            }
            emit(render(t, conv_format), conv_out, out);
        } else if (chk->parsed()) {
            bool all = true;
            for (const CheckResult &c : run_property_checks()) {
                out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
                all = all && c.passed;
            }
            return all ? EXIT_OK : EXIT_CHECK_FAILED;
        }
    } catch (const FlagError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_FLAGS;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_IO;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_FLAGS;
    }
    return EXIT_OK;
}

}  // namespace cvcz
