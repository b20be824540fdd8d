//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use latcanon::{apply_affinity, Affinity, Int, IntMatrix, PointSet};
use latcanon_cli::input::{parse_document, Document};
use latcanon_cli::selftest::{
    frame_bound, frames_suite, hnf_suite, invariance_suite, laurent_suite, oracle_suite, Tally,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn from_tallies(tallies: &[&Tally]) -> Outcome {
    let pass = tallies.iter().all(|t| t.passed());
    let detail = tallies
        .iter()
        .map(|t| {
            format!(
                "{}: {}/{} ok",
                t.name,
                t.trials - t.failures.len(),
                t.trials
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    let ran = tallies.iter().map(|t| t.elapsed).max().unwrap_or_default();
    let detail = format!("{detail}, suite ran {ran:.1?}");
    let first = tallies.iter().flat_map(|t| t.failures.first()).next();
    outcome(
        pass,
        first.map_or(detail.clone(), |f| format!("{detail}; first failure {f}")),
    )
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latcanon"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("spawn latcanon")
}

/// Parses the `A:` / `b:` block that follows `EQUIVALENT`.
fn parse_witness(text: &str) -> Option<Affinity> {
    let mut lines = text.lines();
    if lines.next()? != "EQUIVALENT" || lines.next()? != "A:" {
        return None;
    }
    let row = |l: &str| {
        l.split(' ')
            .map(|t| t.parse::<Int>().ok())
            .collect::<Option<Vec<_>>>()
    };
    let mut a = Vec::new();
    for l in lines.by_ref() {
        if l == "b:" {
            break;
        }
        a.push(row(l)?);
    }
    let b = row(lines.next()?)?;
    Affinity::new(IntMatrix::from_rows(a).ok()?, b).ok()
}

fn points(path: &PathBuf) -> PointSet {
    match parse_document(&std::fs::read_to_string(path).unwrap()).unwrap() {
        Document::Points(s) => s,
        Document::Weighted(_) => panic!("expected plain points"),
    }
}

fn golden_case() -> Outcome {
    let start = Instant::now();
    let (first, second) = (data("fig1_first.txt"), data("fig1_second.txt"));
    let c1 = run(binary().arg("canon").arg(&first));
    let c2 = run(binary().arg("canon").arg(&second));
    let same_form = c1.status.success() && c2.status.success() && c1.stdout == c2.stdout;

    let eq = run(binary()
        .args(["equiv", "--witness"])
        .arg(&first)
        .arg(&second));
    let (s1, s2) = (points(&first), points(&second));
    let witness = parse_witness(&String::from_utf8_lossy(&eq.stdout));
    let verified = eq.status.code() == Some(0)
        && witness.is_some_and(|w| apply_affinity(&w, &s1).as_ref() == Ok(&s2));

    let stated = Affinity::new(
        IntMatrix::from_i64(&[&[-1, -1], &[0, 1]]),
        vec![13.into(), 0.into()],
    )
    .unwrap();
    let transcribed = apply_affinity(&stated, &s1).as_ref() == Ok(&s2);

    let elapsed = start.elapsed();
    outcome(
        same_form && verified && transcribed && elapsed < Duration::from_secs(1),
        format!(
            "identical forms {same_form}, verified witness {verified}, stated affinity maps sets {transcribed}, {elapsed:.2?} (< 1 s)"
        ),
    )
}

fn scaling() -> Outcome {
    let sizes = "1000,2000,4000,8000,10000,16000";
    let out = run(binary().args([
        "bench",
        "--d",
        "2",
        "--bits",
        "32",
        "--instances",
        "4",
        "--n",
        sizes,
    ]));
    if !out.status.success() {
        return outcome(false, format!("bench exited with {}", out.status));
    }
    let csv = String::from_utf8_lossy(&out.stdout);
    print!(
        "{}",
        csv.lines()
            .map(|l| format!("    {l}\n"))
            .collect::<String>()
    );
    let rows: Vec<(usize, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[4].parse().unwrap())
        })
        .collect();
    let ms = |n: usize| rows.iter().find(|r| r.0 == n).map(|r| r.1).unwrap();
    let ratios: Vec<f64> = [1000, 2000, 4000, 8000]
        .iter()
        .map(|&n| ms(2 * n) / ms(n))
        .collect();
    let ten = ms(10_000);
    let pass = ratios.iter().all(|&r| r <= 3.0) && ten < 10_000.0;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.2}")).collect();
    outcome(
        pass,
        format!(
            "doubling ratios [{}] (<= 3), n=10000 in {:.2} s (< 10 s)",
            shown.join(", "),
            ten / 1000.0
        ),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, &str, Outcome, Duration)> = Vec::new();
    let mut record = |k: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let elapsed = start.elapsed();
        println!(
            "{} {k:>2} {name}: {} [{elapsed:.1?}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((k, name, o, elapsed));
    };

    record(1, "golden case", &mut golden_case);

    let inv = invariance_suite(&[1, 2, 3, 4], 250, 64, SEED, false);
    record(2, "invariance", &mut || from_tallies(&[&inv.invariance]));
    record(3, "witness validity", &mut || from_tallies(&[&inv.witness]));
    record(4, "oracle agreement", &mut || {
        from_tallies(&[&oracle_suite(200, SEED)])
    });
    record(5, "idempotence", &mut || from_tallies(&[&inv.idempotence]));
    record(6, "frame-set bound", &mut || {
        let seen: Vec<String> = inv
            .max_frameset
            .iter()
            .map(|(d, m)| format!("d={d}: {m} (<= {})", frame_bound(*d)))
            .collect();
        let pass =
            inv.frame_bound.passed() && inv.max_frameset.iter().all(|(d, m)| *m <= frame_bound(*d));
        outcome(pass, format!("max |FrameSet| {}", seen.join(", ")))
    });
    record(7, "frame equivariance", &mut || {
        let t = frames_suite(&[1, 2, 3], 200, SEED);
        from_tallies(&t.iter().collect::<Vec<_>>())
    });
    record(8, "laurent invariance", &mut || {
        from_tallies(&[&laurent_suite(&[1, 2, 3], 500, SEED)])
    });
    record(9, "hnf contract", &mut || {
        from_tallies(&[&hnf_suite(1000, SEED)])
    });
    record(10, "scaling", &mut scaling);

    let failed = results.iter().filter(|r| !r.2.pass).count();
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
