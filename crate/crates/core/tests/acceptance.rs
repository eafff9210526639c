//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jetfol::cli::main_with_args;
use jetfol::io;
use jetfol::jetcore::{JetDiffeo, Rational};
use jetfol::random::DEFAULT_SEED;
use jetfol::selftest::{self, Check, CheckResult};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn jetfol(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("jetfol").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    let mut text = String::from_utf8(out).expect("utf-8 output");
    text.push_str(&String::from_utf8(err).expect("utf-8 errors"));
    (code, text)
}

fn timed(check: Check, seed: u64, n: usize, budget: Option<Duration>) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let summary = check(&mut rng, n)?;
    let spent = start.elapsed();
    match budget {
        Some(b) if spent > b => Err(format!("{summary}, but took {spent:.2?} (budget {b:?})")),
        _ => Ok(format!("{summary} in {spent:.2?}")),
    }
}

fn cli_contract(dir: &Path) -> CheckResult {
    let f = data("jet_f.json");
    let f = f.to_str().unwrap();
    // Inverting twice must give back the canonical text of the input.
    let (code, inv) = jetfol(&["invert", f]);
    if code != 0 {
        return Err(format!("invert exited {code}: {inv}"));
    }
    let inv_path = dir.join("inv.json");
    std::fs::write(&inv_path, &inv).map_err(|e| e.to_string())?;
    let (_, back) = jetfol(&["invert", inv_path.to_str().unwrap()]);
    let original: JetDiffeo<Rational> =
        io::diffeo_from_json(&io::read_json(Path::new(f)).map_err(|e| e.to_string())?, "").map_err(|e| e.to_string())?;
    if back != io::to_text(&io::jet_to_json(original.map())) {
        return Err("double inversion is not bit exact".into());
    }
    let (_, again) = jetfol(&["invert", inv_path.to_str().unwrap()]);
    if again != back {
        return Err("output is not deterministic".into());
    }

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"l\": 1, \"k\": 2, \"components\": [[{\"exps\": [1], \"coeff\": \"x\"}]]}")
        .map_err(|e| e.to_string())?;
    let heis = data("heis_eta.json");
    let q1 = data("torus_q1.json");
    let cases: [(&[&str], i32); 5] = [
        (&["mc-check", "--model", "heisenberg", "--mc", heis.to_str().unwrap()], 0),
        (&["lift", "--rep", q1.to_str().unwrap()], 1),
        (&["lift", "--rep", q1.to_str().unwrap(), "--expect-liftable", "false"], 0),
        (&["invert", bad.to_str().unwrap()], 2),
        (&["invert", "/nonexistent/jet.json"], 2),
    ];
    for (args, want) in cases {
        let (code, text) = jetfol(args);
        if code != want {
            return Err(format!("{args:?} exited {code}, expected {want}: {text}"));
        }
    }
    let (_, text) = jetfol(&["lift", "--rep", q1.to_str().unwrap()]);
    if !text.contains("\"not liftable\"") {
        return Err("lift report lacks the verdict".into());
    }

    let (code, text) = jetfol(&["selftest"]);
    if code != 0 {
        return Err(format!("selftest exited {code}:\n{text}"));
    }
    let rt = timed(selftest::round_trip, DEFAULT_SEED, 100, None)?;
    Ok(format!("round trip ({rt}), exit codes 0/1/2, selftest green under seed {DEFAULT_SEED}"))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temporary directory");
    let s = DEFAULT_SEED;
    let criteria: Vec<(&str, CheckResult)> = vec![
        ("jet-group axioms", timed(selftest::group_axioms, s, 200, Some(Duration::from_secs(10)))),
        ("chart laws", timed(selftest::chart_laws, s + 1, 100, None)),
        ("exp/log", timed(selftest::exp_log, s + 2, 100, None)),
        ("Heisenberg class", timed(selftest::heisenberg_class, s, 1, Some(Duration::from_secs(1)))),
        ("surface quadric cross-oracle", timed(selftest::surface_quadric_oracle, s + 4, 200, None)),
        ("cocycle suite", timed(selftest::cocycle, s + 5, 100, None)),
        ("equivariance", timed(selftest::equivariance, s + 6, 50, None)),
        ("twisted H1 table", timed(selftest::h1_table, s, 1, None)),
        ("extension space", timed(selftest::extension_space, s, 1, None)),
        ("codimension-2 pattern", timed(selftest::codimension_two, s, 1, None)),
        ("classification", timed(selftest::classification, s + 10, 1000, None)),
        ("dilation homotopy", timed(selftest::dilation, s + 11, 100, None)),
        ("command line", cli_contract(dir.path())),
    ];
    let mut failed = 0;
    for (i, (name, result)) in criteria.iter().enumerate() {
        match result {
            Ok(msg) => println!("criterion {:>2}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
