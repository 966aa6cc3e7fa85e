#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strategem/render.hpp"

namespace strategem {

namespace detail {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Player parse_player(const std::string& text) {
    if (text == "B") return Player::B;
    if (text == "R") return Player::R;
    throw UsageError("player must be B or R, got '" + text + "'");
}

inline Criterion parse_criterion(const std::string& text) {
    if (text == "winning") return Criterion::Winning;
    if (text == "nonlosing") return Criterion::NonLosing;
    throw UsageError("criterion must be winning or nonlosing, got '" + text + "'");
}

/// STRATEGEM_DEPTH_LIMIT overrides the engine ply limit for every command.
inline EngineOptions options_from_env() {
    EngineOptions opt;
    if (const char* raw = std::getenv("STRATEGEM_DEPTH_LIMIT")) {
        const std::string text(raw);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0)
            throw UsageError("STRATEGEM_DEPTH_LIMIT must be a positive integer");
        opt.depth_limit = value;
    }
    return opt;
}

inline std::string bool_text(bool v) { return v ? "true" : "false"; }

template <RenderableRules G>
std::string emit_solve(const std::string& game_name, const std::string& position_echo,
                       Player mover, const typename G::Config& c, const G& rules,
                       const EngineOptions& opt, const std::string& format) {
    ValuationCache<typename G::Key> cache;
    const bool rebecca_wins = wins_for(Player::R, mover, c, rules, cache, opt);
    const bool benny_nonlosing = nonlosing_for(Player::B, mover, c, rules, cache, opt);
    const Outcome value = game_value(mover, c, rules, cache, opt);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["game"] = game_name;
        j["position"] = position_echo;
        j["mover"] = std::string(1, player_char(mover));
        j["rebecca_wins"] = rebecca_wins;
        j["benny_nonlosing"] = benny_nonlosing;
        j["value"] = outcome_name(value);
        return j.dump(2) + "\n";
    }
    std::string out;
    out += "game: " + game_name + "\n";
    out += "position: " + position_echo + "\n";
    out += std::string("mover: ") + player_char(mover) + "\n";
    out += "rebecca_wins: " + bool_text(rebecca_wins) + "\n";
    out += "benny_nonlosing: " + bool_text(benny_nonlosing) + "\n";
    out += std::string("value: ") + outcome_name(value) + "\n";
    return out;
}

template <RenderableRules G>
std::string emit_strategy(Player target, Criterion criterion, Player mover,
                          const typename G::Config& c, const G& rules, const EngineOptions& opt) {
    const auto tree = extract_strategy(target, criterion, mover, c, rules, opt);
    if (!tree) return "no strategy\n";
    return render_dot(*tree, rules);
}

template <GameRules G>
std::string emit_count(const std::string& game_name, const std::string& position_echo,
                       Player target, Criterion criterion, Player mover,
                       const typename G::Config& c, const G& rules, std::int64_t cap,
                       const EngineOptions& opt, const std::string& format) {
    const std::int64_t count = count_strategies(target, criterion, mover, c, rules, cap, opt);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["game"] = game_name;
        j["position"] = position_echo;
        j["mover"] = std::string(1, player_char(mover));
        j["target"] = std::string(1, player_char(target));
        j["criterion"] = criterion == Criterion::Winning ? "winning" : "nonlosing";
        j["cap"] = cap;
        j["count"] = count;
        return j.dump(2) + "\n";
    }
    return std::to_string(count) + "\n";
}

inline std::string emit_report_text(const Report& report) {
    std::string out;
    int failed = 0;
    for (const CheckResult& check : report.checks) {
        if (check.passed) {
            out += "PASS " + check.name + " (" + check.detail + ")\n";
        } else {
            out += "FAIL " + check.name + ": " + check.detail + "\n";
            ++failed;
        }
    }
    out += failed == 0 ? "all checks passed\n" : std::to_string(failed) + " check(s) failed\n";
    return out;
}

inline std::string emit_report_json(const Report& report, std::int64_t max_size, int board_max) {
    nlohmann::ordered_json j;
    j["max"] = max_size;
    j["board_max"] = board_max;
    j["all_passed"] = report.all_passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& check : report.checks) {
        nlohmann::ordered_json entry;
        entry["name"] = check.name;
        entry["passed"] = check.passed;
        entry["detail"] = check.detail;
        j["checks"].push_back(entry);
    }
    return j.dump(2) + "\n";
}

}  // namespace detail

/// Runs one CLI invocation. argv-style arguments without the program name.
/// Exit codes: 0 success, 1 failed verify checks or a computation error,
/// 2 usage or parse errors.
inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact solver and strategy extractor for two-player token and colouring games"};
    app.name("strategem");
    app.require_subcommand(1);

    std::string game, position, mover_text, target_text = "R", criterion_text = "winning";
    std::string format, output;
    int board_size = 0;
    int board_max = 3;
    std::int64_t max_size = -1;
    std::int64_t cap = 1'000'000;
    bool allow_large = false;
    bool check_formulas = false;

    const auto add_game_options = [&](CLI::App* cmd, bool with_target) {
        cmd->add_option("--game", game, "game to play: heaps or board")->required();
        cmd->add_option("--position", position, "heaps position, two integers such as \"2 5\"");
        cmd->add_option("--size", board_size, "board side length (board game starts empty)");
        cmd->add_option("--mover", mover_text, "player to move: B or R (default: first mover)");
        if (with_target) {
            cmd->add_option("--target", target_text, "whose strategy: B or R (default R)");
            cmd->add_option("--criterion", criterion_text, "winning or nonlosing (default winning)");
        }
        cmd->add_flag("--allow-large", allow_large, "permit board sizes above 4");
        cmd->add_option("--output,-o", output, "write the result to this file instead of stdout");
    };

    CLI::App* solve = app.add_subcommand("solve", "valuations and value of one position");
    add_game_options(solve, false);
    solve->add_option("--format", format, "text or json (default text)");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "solve the whole (k, n) start grid");
    sweep_cmd->add_option("--max", max_size, "largest heap size (default 100)");
    sweep_cmd->add_option("--format", format, "csv or pgm (default csv)");
    sweep_cmd->add_option("--output,-o", output, "write the result to this file instead of stdout");

    CLI::App* sequences = app.add_subcommand("sequences", "per-column winning band edges a_n, b_n");
    sequences->add_option("--max", max_size, "largest heap size swept (default 60)");
    sequences->add_flag("--check", check_formulas, "also print the golden-ratio bounds and a match flag");
    sequences->add_option("--output,-o", output, "write the result to this file instead of stdout");

    CLI::App* strategy = app.add_subcommand("strategy", "extract one strategy subtree as DOT");
    add_game_options(strategy, true);
    strategy->add_option("--format", format, "dot (default)");

    CLI::App* count_cmd = app.add_subcommand("count-strategies", "count distinct strategy subtrees");
    add_game_options(count_cmd, true);
    count_cmd->add_option("--cap", cap, "saturate the count here (default 1000000)");
    count_cmd->add_option("--format", format, "text or json (default text)");

    CLI::App* verify = app.add_subcommand("verify", "run the whole verification battery");
    verify->add_option("--max", max_size, "largest heap size (default 60)");
    verify->add_option("--board-max", board_max, "largest board size (default 3)");
    verify->add_flag("--allow-large", allow_large, "permit board sizes above 4");
    verify->add_option("--format", format, "text or json (default text)");
    verify->add_option("--output,-o", output, "write the result to this file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    int exit_code = 0;
    std::string out;
    try {
        const EngineOptions opt = detail::options_from_env();

        const auto check_format = [&](std::initializer_list<const char*> allowed,
                                      const char* fallback) {
            if (format.empty()) format = fallback;
            for (const char* ok : allowed)
                if (format == ok) return;
            throw detail::UsageError("unsupported format '" + format + "' for this subcommand");
        };
        const auto heaps_selected = [&](const CLI::App* cmd) {
            if (game != "heaps" && game != "board")
                throw detail::UsageError("--game must be heaps or board, got '" + game + "'");
            const bool heaps = game == "heaps";
            if (heaps && cmd->count("--position") == 0)
                throw detail::UsageError("the heaps game needs --position");
            if (heaps && cmd->count("--size") > 0)
                throw detail::UsageError("--size only applies to the board game");
            if (!heaps && cmd->count("--size") == 0)
                throw detail::UsageError("the board game needs --size");
            if (!heaps && cmd->count("--position") > 0)
                throw detail::UsageError("--position only applies to the heaps game");
            if (!heaps && (board_size < 1 || board_size > BoardGame::kMaxSize))
                throw detail::UsageError("board size must be between 1 and 8");
            if (!heaps && board_size > 4 && !allow_large)
                throw detail::UsageError("board sizes above 4 can take long; pass --allow-large");
            return heaps;
        };
        const auto resolved_mover = [&](bool heaps) {
            if (mover_text.empty()) return heaps ? Player::R : Player::B;  // first mover
            return detail::parse_player(mover_text);
        };

        if (solve->parsed()) {
            check_format({"text", "json"}, "text");
            if (heaps_selected(solve)) {
                const HeapsGame rules;
                const HeapsConfig c = parse_heaps_position(position);
                out = detail::emit_solve("heaps", rules.config_text(c), resolved_mover(true), c,
                                         rules, opt, format);
            } else {
                const BoardGame rules(board_size);
                out = detail::emit_solve("board", std::to_string(board_size), resolved_mover(false),
                                         BoardConfig{}, rules, opt, format);
            }
        } else if (sweep_cmd->parsed()) {
            check_format({"csv", "pgm"}, "csv");
            if (max_size < 0) max_size = 100;
            const SweepGrid grid = sweep(max_size, opt);
            out = format == "pgm" ? render_pgm(grid) : render_csv(grid);
        } else if (sequences->parsed()) {
            check_format({"csv"}, "csv");
            if (max_size < 0) max_size = 60;
            const SequencePair seq = extract_sequences(sweep(max_size, opt));
            out = check_formulas ? "n,a,b,phi_a,phi_b,match\n" : "n,a,b\n";
            for (std::size_t n = 0; n < seq.b.size(); ++n) {
                out += std::to_string(n) + ',' + std::to_string(seq.a[n]) + ',' +
                       std::to_string(seq.b[n]);
                if (check_formulas) {
                    const PhiBounds pb = phi_bounds(static_cast<std::int64_t>(n));
                    const bool match = pb.a == seq.a[n] && pb.b == seq.b[n];
                    out += ',' + std::to_string(pb.a) + ',' + std::to_string(pb.b) + ',' +
                           (match ? '1' : '0');
                }
                out += '\n';
            }
        } else if (strategy->parsed()) {
            check_format({"dot"}, "dot");
            const Player target = detail::parse_player(target_text);
            const Criterion criterion = detail::parse_criterion(criterion_text);
            if (heaps_selected(strategy)) {
                const HeapsGame rules;
                const HeapsConfig c = parse_heaps_position(position);
                out = detail::emit_strategy(target, criterion, resolved_mover(true), c, rules, opt);
            } else {
                const BoardGame rules(board_size);
                out = detail::emit_strategy(target, criterion, resolved_mover(false), BoardConfig{},
                                            rules, opt);
            }
        } else if (count_cmd->parsed()) {
            check_format({"text", "json"}, "text");
            if (cap < 1) throw detail::UsageError("--cap must be at least 1");
            const Player target = detail::parse_player(target_text);
            const Criterion criterion = detail::parse_criterion(criterion_text);
            if (heaps_selected(count_cmd)) {
                const HeapsGame rules;
                const HeapsConfig c = parse_heaps_position(position);
                out = detail::emit_count("heaps", rules.config_text(c), target, criterion,
                                         resolved_mover(true), c, rules, cap, opt, format);
            } else {
                const BoardGame rules(board_size);
                out = detail::emit_count("board", std::to_string(board_size), target, criterion,
                                         resolved_mover(false), BoardConfig{}, rules, cap, opt,
                                         format);
            }
        } else if (verify->parsed()) {
            check_format({"text", "json"}, "text");
            if (max_size < 0) max_size = 60;
            if (max_size < 1) throw detail::UsageError("--max must be at least 1");
            if (board_max < 1 || board_max > BoardGame::kMaxSize)
                throw detail::UsageError("--board-max must be between 1 and 8");
            if (board_max > 4 && !allow_large)
                throw detail::UsageError("board sizes above 4 can take long; pass --allow-large");
            const Report report = verify_all(max_size, board_max, opt);
            out = format == "json" ? detail::emit_report_json(report, max_size, board_max)
                                   : detail::emit_report_text(report);
            if (!report.all_passed()) exit_code = 1;
        }
    } catch (const detail::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    if (output.empty()) {
        std::cout << out;
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << output << "'\n";
            return 2;
        }
        file << out;
    }
    return exit_code;
}

}  // namespace strategem
