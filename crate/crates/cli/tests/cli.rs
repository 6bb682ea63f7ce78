use mbcolour_cli::{run, SolveOutput, TransformOutput, EXIT_NEGATIVE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use mbcolour::{Player, Status};

struct Ran {
    code: i32,
    out: String,
    err: String,
}

fn mbcolour(args: &str, input: &str) -> Ran {
    let argv = std::iter::once("mbcolour").chain(args.split_whitespace());
    let mut stdin = input.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin, &mut out, &mut err);
    Ran { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

#[test]
fn solve_fig3_with_four_colours() {
    let r = mbcolour("solve --family fig3 --variant vertex --colours 4", "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.trim(), "MakerWin");
}

#[test]
fn breaker_win_exits_one() {
    let r = mbcolour("solve --family complete:3 --variant vertex --colours 2 --pv", "");
    assert_eq!(r.code, EXIT_NEGATIVE);
    assert!(r.out.starts_with("BreakerWin"));
    assert!(r.out.contains("pv: "));
}

#[test]
fn json_solve_round_trips_and_matches_human_output() {
    let r = mbcolour("solve --family fig4 --variant cmarking --bound 2 --json --pv", "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let parsed: SolveOutput = serde_json::from_str(&r.out).unwrap();
    assert_eq!(parsed.winner, Player::Maker);
    assert_eq!(parsed.status, Status::MakerWin);
    assert_eq!(serde_json::from_str::<SolveOutput>(&serde_json::to_string(&parsed).unwrap()).unwrap(), parsed);
    let human = mbcolour("solve --family fig4 --variant cmarking --bound 2", "");
    assert_eq!(human.out.trim(), parsed.status.to_string());
}

#[test]
fn graph_inputs_from_stdin() {
    let r = mbcolour("solve --graph - --variant arboricity --colours 1", "3 3\n1 2\n2 3\n1 3\n");
    assert_eq!((r.code, r.out.trim()), (EXIT_NEGATIVE, "BreakerWin"));
    let r = mbcolour("solve --graph6 - --variant vertex --colours 3", "Bw\n");
    assert_eq!((r.code, r.out.trim()), (EXIT_OK, "MakerWin"));
    let r = mbcolour("emit --family complete:3 --format edges", "");
    assert_eq!(r.out, "3 3\n1 2\n1 3\n2 3\n");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        "solve --family fig3 --variant vertex",
        "solve --family fig3 --variant marking --colours 3",
        "solve --family fig3 --variant nonsense --colours 3",
        "solve --family nope --variant vertex --colours 3",
        "solve --family fig3 --family fig4 --variant vertex --colours 3",
        "solve --family fig3 --variant vertex --colours 3 --order 1,2,3",
        "solve --graph - --variant vertex --colours 2",
        "search --n 9 --predicate chi-g-lt-chi-cg",
        "search --n 4 --predicate bogus",
        "frobnicate",
    ] {
        let r = mbcolour(args, "2 1\n1 3\n");
        assert_eq!(r.code, EXIT_USAGE, "{args}: {}", r.out);
        assert!(!r.err.is_empty(), "{args}");
    }
    let disconnected = mbcolour("solve --family edgeless:3 --variant cvertex --colours 2", "");
    assert_eq!(disconnected.code, EXIT_USAGE);
}

#[test]
fn exhausted_budget_exits_three() {
    let r = mbcolour("solve --family complete:6 --variant arboricity --colours 3 --budget-ms 1", "");
    assert_eq!(r.code, EXIT_RESOURCE);
    assert!(r.err.contains("deadline"));
}

#[test]
fn ordered_profile_reports_the_drop() {
    let r = mbcolour("profile --family h_r:1 --variant overtex --k-min 3 --k-max 4", "");
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.lines().take(2).collect::<Vec<_>>(), ["3 MakerWin", "4 BreakerWin"]);
    assert!(r.out.contains("non-monotone"));
    let explicit = mbcolour("profile --family h_r:1 --variant overtex --k-min 3 --k-max 4 --order 1,2,3,4,5,6,7,8,9", "");
    assert_eq!(explicit.out, r.out);
}

#[test]
fn report_lists_parameters() {
    let r = mbcolour("report --family fig3 --k-max 6", "");
    assert_eq!(r.code, EXIT_OK);
    let line = |name: &str| r.out.lines().find(|l| l.starts_with(name)).unwrap().split_whitespace().nth(1).unwrap().to_string();
    assert_eq!(line("chi_g "), "4");
    assert_eq!(line("chi_cg "), "5");
}

#[test]
fn verify_paper_subset() {
    let r = mbcolour("verify-paper --only T1,T2,T5", "");
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.starts_with("PASS")));
    assert_eq!(mbcolour("verify-paper --only T99", "").code, EXIT_USAGE);
}

#[test]
fn transform_complete_five() {
    let r = mbcolour("transform --family complete:5 --colours 1 --trace", "");
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.lines().any(|l| l.contains("containment ok")));
    assert!(!r.out.contains("FAILED"));
    let j = mbcolour("transform --family complete:5 --colours 1 --json", "");
    let parsed: TransformOutput = serde_json::from_str(&j.out).unwrap();
    assert!(parsed.agent_wins && parsed.invariant_checks > 0);
    let losing = mbcolour("transform --family path:3 --colours 1", "");
    assert_eq!(losing.code, EXIT_NEGATIVE);
}

#[test]
fn search_finds_fig3_in_a_stream() {
    let input = format!("C~\n{}\nDhc\n", mbcolour::families::fig3_graph().to_graph6());
    let r = mbcolour("search --graph6 - --predicate chi-g-lt-chi-cg --jobs 2", &input);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert_eq!(r.out.lines().count(), 1);
    assert!(r.out.contains("chi_g=4 chi_cg=5"));
    let none = mbcolour("search --n 4 --predicate non-monotone:arboricity", "");
    assert_eq!(none.code, EXIT_NEGATIVE);
    assert!(none.err.contains("0 hits"));
}

fn session(args: &str, moves: &[&str], rounds: usize) -> Ran {
    let mut input = String::new();
    for _ in 0..rounds {
        for m in moves {
            input.push_str(m);
            input.push('\n');
        }
    }
    mbcolour(args, &input)
}

fn all_vertex_moves(n: usize, k: usize) -> Vec<String> {
    (1..=n).flat_map(|v| (1..=k).map(move |c| format!("{v} {c}"))).collect()
}

#[test]
fn human_maker_wins_k3_with_three_colours() {
    let moves = all_vertex_moves(3, 3);
    for start in 0..moves.len() {
        let rotated: Vec<&str> = moves[start..].iter().chain(&moves[..start]).map(String::as_str).collect();
        let r = session("play --family complete:3 --variant vertex --colours 3 --human maker", &rotated, 3);
        assert_eq!(r.code, EXIT_OK);
        assert_eq!(r.out.lines().last(), Some("MakerWin"), "{}", r.out);
    }
}

#[test]
fn solver_breaker_beats_human_on_k3_with_two_colours() {
    let moves = all_vertex_moves(3, 2);
    for start in 0..moves.len() {
        let rotated: Vec<&str> = moves[start..].iter().chain(&moves[..start]).map(String::as_str).collect();
        let r = session("play --family complete:3 --variant vertex --colours 2", &rotated, 3);
        assert_eq!(r.out.lines().last(), Some("BreakerWin"), "{}", r.out);
    }
}

#[test]
fn solver_maker_beats_human_breaker_on_h1() {
    for order in [["1", "2", "3"], ["3", "2", "1"], ["2", "3", "1"]] {
        let r = session("play --family h_r:1 --variant overtex --colours 3 --human breaker", &order, 10);
        assert_eq!(r.out.lines().last(), Some("MakerWin"), "{}", r.out);
    }
}

#[test]
fn play_aborts_on_eof() {
    let r = mbcolour("play --family complete:3 --variant vertex --colours 3", "bogus\n");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("session aborted"));
}

#[test]
fn help_goes_to_stdout() {
    let r = mbcolour("--help", "");
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("verify-paper"));
}
