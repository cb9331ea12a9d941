//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::time::Instant;

use fillcurve::classify::classes;
use fillcurve::forms::hd_dimension;
use fillcurve::smooth::ScanFields;
use fillcurve::verify::*;
use fillcurve::{Field, Result};

type Outcome = Result<Option<String>>;
type Criterion = (&'static str, fn() -> Outcome);

/// Runs `check` for each q and reports the first witness.
fn over(qs: &[u64], check: impl Fn(u64) -> Outcome) -> Outcome {
    for &q in qs {
        if let Some(w) = check(q)? {
            return Ok(Some(format!("q={q}: {w}")));
        }
    }
    Ok(None)
}

fn fields(q: u64, degrees: &[usize]) -> Result<ScanFields> {
    ScanFields::new(&Field::with_order(q)?, degrees)
}

fn criterion_vs_scan() -> Outcome {
    over(&[2, 3, 4, 5], |q| {
        let f = Field::with_order(q)?;
        let full = fields(q, &[1, 2, 3, 6])?;
        if let Some(w) = check_criterion_vs_scan(&f, &full) {
            return Ok(Some(w));
        }
        let conj = if q <= 3 { full } else { fields(q, &[1, 2, 3])? };
        Ok(check_criterion_conjugates(&f, &conj, 50))
    })
}

fn min_degree() -> Outcome {
    over(&[2, 3, 4, 5], |q| Ok(check_min_degree(&Field::with_order(q)?, &fields(q, &[1, 2, 3])?)))
}

fn ideal_generation() -> Outcome {
    let f2 = Field::with_order(2)?;
    for (d, expect) in [(2, 0), (3, 3), (4, 8)] {
        let got = hd_dimension(2, d, &f2);
        if got != (expect, expect) {
            return Ok(Some(format!("q=2, d={d}: {got:?}, expected {expect}")));
        }
    }
    over(&[2, 3], |q| Ok(check_ideal_generation(&*Field::with_order(q)?)))
}

fn covariance() -> Outcome {
    over(&[2, 3, 4, 5], |q| Ok(check_covariance(&*Field::with_order(q)?)))
}

fn aut_orders() -> Outcome {
    over(&[2, 3, 4, 5], |q| Ok(check_aut_orders(&*Field::with_order(q)?)))
}

fn aut_structure() -> Outcome {
    over(&[2, 3, 4, 5], |q| {
        let f = Field::with_order(q)?;
        Ok(check_aut_structure(&f).or_else(|| if q <= 4 { check_pi(&f) } else { None }))
    })
}

fn fixed_points() -> Outcome {
    over(&[2, 3], |q| Ok(check_fixed_points(&Field::with_order(q)?)))
}

fn classification() -> Outcome {
    let expected: [(u64, &[usize]); 4] = [(2, &[2]), (3, &[2, 6]), (4, &[4, 4, 12]), (5, &[20, 20])];
    for (q, sizes) in expected {
        let f = Field::with_order(q)?;
        let got: Vec<usize> = classes(&f).classes.iter().map(|c| c.members.len()).collect();
        if got != sizes {
            return Ok(Some(format!("q={q}: class sizes {got:?}, expected {sizes:?}")));
        }
        let w = check_classes(&f)
            .or_else(|| check_pure_cubic_separation(&f))
            .or_else(|| check_harmonic_single_orbit(&f))
            .or_else(|| if q <= 3 { check_curves_equivalent(&f) } else { None });
        if let Some(w) = w {
            return Ok(Some(format!("q={q}: {w}")));
        }
    }
    Ok(check_harmonic_single_orbit(&*Field::with_order(9)?).map(|w| format!("q=9: {w}")))
}

fn identities() -> Outcome {
    over(&[2, 3, 4], |q| Ok(check_identities(&Field::with_order(q)?)))
}

fn centralizers() -> Outcome {
    over(&[2, 3, 4, 5], |q| {
        let f = Field::with_order(q)?;
        Ok(check_centralizers(&f, 2).or_else(|| check_centralizers(&f, 3)))
    })
}

fn determinism() -> Outcome {
    let run =
        || Command::new(env!("CARGO_BIN_EXE_fillcurve")).args(["verify", "--q", "2,3"]).output().expect("binary runs");
    let (a, b) = (run(), run());
    if a.status.code() != Some(0) {
        return Ok(Some(format!("exit status {:?}", a.status.code())));
    }
    if serde_json::from_slice::<serde_json::Value>(&a.stdout).is_err() {
        return Ok(Some("stdout is not JSON".into()));
    }
    Ok((a.stdout != b.stdout).then(|| "outputs differ".into()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (
            "smoothness criterion agrees with the singular-point scan over F_q^m, m in {1,2,3,6}, q=2..5",
            criterion_vs_scan,
        ),
        ("minimum degree certificate, q=2..5", min_degree),
        ("ideal of P^2(F_q) generated by U,V,W in degrees 1..q+4, q=2,3", ideal_generation),
        ("U,V,W pull back by the cofactor matrix: all of GL(3,2), 100 random B for q=3,4,5", covariance),
        ("automorphism orders 7, 39, 63, 31 (with GL scan for q=2,3)", aut_orders),
        ("automorphism group structure for every irreducible cubic, q=2..5", aut_structure),
        ("fixed points of powers of the Singer generator are the eigen-points, q=2,3", fixed_points),
        ("classification of irreducible cubics, q=2..5 (and q=9 single harmonic orbit)", classification),
        ("local expansion identities and determinant, q=2,3,4", identities),
        ("centralizers for every irreducible polynomial of degree 2 and 3, q=2..5", centralizers),
        ("verify --q 2,3 is byte-deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(None) => println!("PASS [{:>2}] {name} ({secs:.1}s)", i + 1),
            Ok(Some(w)) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({secs:.1}s): {w}", i + 1);
            }
            Err(e) => {
                failed += 1;
                println!("FAIL [{:>2}] {name} ({secs:.1}s): error: {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
