use std::fs;
use std::path::PathBuf;

use marginal_independence::cli::{run, Outcome};

const CASES: &[(&str, &[&str], i32)] = &[
    (
        "closure_mixing",
        &["closure", "--gens", "1|23,2|3", "-n", "3"],
        0,
    ),
    ("closure_empty", &["closure", "--gens", "", "-n", "3"], 0),
    (
        "closure_single",
        &["closure", "--gens", "1|234", "-n", "4"],
        0,
    ),
    (
        "member_derived",
        &[
            "member",
            "--gens",
            "3|4,2|34,1|234",
            "--query",
            "1|2|3|4",
            "-n",
            "4",
        ],
        0,
    ),
    (
        "member_generator",
        &[
            "member",
            "--gens",
            "3|4,2|34,1|234",
            "--query",
            "2|34",
            "-n",
            "4",
        ],
        0,
    ),
    (
        "member_absent",
        &["member", "--gens", "1|2", "--query", "1|23", "-n", "3"],
        1,
    ),
    (
        "member_bad_query",
        &["member", "--gens", "1|2", "--query", "1|5", "-n", "4"],
        2,
    ),
    (
        "generators_chain",
        &[
            "generators",
            "--gens",
            "1|2|34",
            "-n",
            "4",
            "--states",
            "2,2,2,2",
        ],
        0,
    ),
    (
        "matrix_csv",
        &[
            "matrix", "--gens", "1|2|34", "-n", "4", "--states", "2,2,2,2", "--format", "csv",
        ],
        0,
    ),
    (
        "geometry_full",
        &["geometry", "--gens", "1|2|3|4", "-n", "4"],
        0,
    ),
    (
        "geometry_pair",
        &["geometry", "--gens", "12|34", "-n", "4", "--format", "text"],
        0,
    ),
    (
        "graph_cycle",
        &["graph", "-n", "4", "--edges", "1-2,2-3,3-4,1-4"],
        0,
    ),
    (
        "simplicial_triangle",
        &["simplicial", "-n", "3", "--faces", "12,13,23"],
        0,
    ),
    (
        "census_general_3",
        &["census", "-n", "3", "--class", "general"],
        0,
    ),
    (
        "census_orbits_3",
        &[
            "census",
            "-n",
            "3",
            "--class",
            "general",
            "--up-to-symmetry",
        ],
        0,
    ),
    (
        "census_table2_3",
        &["census", "-n", "3", "--emit", "table2", "--format", "csv"],
        0,
    ),
    (
        "verify_chain",
        &[
            "verify", "--gens", "1|2|34", "-n", "4", "--states", "2,2,2,2", "--seed", "7",
            "--draws", "3",
        ],
        0,
    ),
];

fn invoke(args: &[&str], threads: Option<&str>) -> Outcome {
    let mut argv = vec!["margind".to_string()];
    if let Some(t) = threads {
        argv.push("--threads".into());
        argv.push(t.into());
    }
    argv.extend(args.iter().map(|s| s.to_string()));
    run(argv)
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

fn render(out: &Outcome) -> String {
    if out.code == 2 {
        format!("exit {}\n", out.code)
    } else {
        format!("exit {}\n{}", out.code, out.stdout)
    }
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args, code) in CASES {
        let out = invoke(args, None);
        assert_eq!(out.code, *code, "{name}: {}", out.stderr);
        let text = render(&out);
        let path = golden_path(name);
        if update {
            fs::write(&path, &text).unwrap();
        } else {
            let want =
                fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            assert_eq!(text, want, "{name}");
        }
    }
}

#[test]
fn usage_errors_carry_a_message() {
    let out = invoke(
        &["member", "--gens", "1|2", "--query", "1|5", "-n", "4"],
        None,
    );
    assert!(!out.stderr.is_empty());
    let out = invoke(
        &["closure", "--gens", "1|2", "--input", "x.json", "-n", "3"],
        None,
    );
    assert_eq!(out.code, 2);
}

#[test]
fn output_is_independent_of_thread_count() {
    for args in [
        &["census", "-n", "3", "--emit", "table2", "--format", "json"][..],
        &["census", "-n", "3", "--up-to-symmetry"][..],
        &[
            "geometry", "--gens", "1|2,3|4", "-n", "4", "--format", "json",
        ][..],
    ] {
        let one = invoke(args, Some("1"));
        let four = invoke(args, Some("4"));
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(one.code, four.code);
    }
}
